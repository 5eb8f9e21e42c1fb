//! The single-valued polylogarithm L_n, the lifted polylogarithms ℒ̂_n on the
//! four-component cover Ĉ_signs, their cut-jump tables and period lattices,
//! and the exact comparison between ℜ_n∘ℒ̂_n and L_n.

mod li;

pub use li::{li_principal, log_side, zeta_int, Side, ZETA3};

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

use crate::exact::{bernoulli, rat, rat_int, Rational};
use crate::{Error, Result};

/// A point ⟨z; p, q⟩_{ε₁ε₂} of Ĉ_signs: complex z ∉ {0,1} (with a side flag
/// when z is real), branch integers p, q and the component signs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtendedPoint {
    pub sign1: i8,
    pub sign2: i8,
    pub z: Complex64,
    pub side: Side,
    pub p: i64,
    pub q: i64,
}

/// One of the three real cut intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interval {
    /// (−∞, 0)
    NegAxis,
    /// (0, 1)
    UnitInterval,
    /// (1, ∞)
    OneInf,
}

impl ExtendedPoint {
    pub fn new(sign1: i8, sign2: i8, z: Complex64, side: Side, p: i64, q: i64) -> Result<Self> {
        assert!(sign1 == 1 || sign1 == -1);
        assert!(sign2 == 1 || sign2 == -1);
        if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
            return Err(Error::DomainError(format!("z = {z} is a branch point")));
        }
        Ok(ExtendedPoint { sign1, sign2, z, side, p, q })
    }

    fn scaled_side(&self, scale: i8) -> Side {
        if scale == 1 {
            self.side
        } else {
            self.side.flip()
        }
    }

    /// Side flag of 1 − z (conjugation flips the side).
    fn side_one_minus(&self) -> Side {
        self.side.flip()
    }

    /// The (u, v) coordinates: u = Log(ε₁z) + 2pπi, v = Log(ε₂(1−z)) + 2qπi.
    pub fn to_uv(&self) -> (Complex64, Complex64) {
        let e1 = self.sign1 as f64;
        let e2 = self.sign2 as f64;
        let u = log_side(e1 * self.z, self.scaled_side(self.sign1))
            + Complex64::new(0.0, 2.0 * PI * self.p as f64);
        let one_minus = Complex64::new(1.0, 0.0) - self.z;
        let side2 = if self.sign2 == 1 { self.side_one_minus() } else { self.side_one_minus().flip() };
        let v = log_side(e2 * one_minus, side2) + Complex64::new(0.0, 2.0 * PI * self.q as f64);
        (u, v)
    }

    /// Recover the point from (u, v) on the declared component.
    ///
    /// Verifies the component identity ε₁eᵘ + ε₂eᵛ = 1 and the reconstruction
    /// residual; real z picks the side flag matching (u, v).
    pub fn from_uv(u: Complex64, v: Complex64, sign1: i8, sign2: i8) -> Result<Self> {
        let e1 = sign1 as f64;
        let e2 = sign2 as f64;
        let z = e1 * u.exp();
        let target = e2 * (Complex64::new(1.0, 0.0) - z);
        let ev = v.exp();
        if (target - ev).norm() > 1e-9 * ev.norm().max(1.0) {
            return Err(Error::ComponentMismatch {
                term: 0,
                detail: format!("e2(1-z) = {target} but exp(v) = {ev}"),
            });
        }
        let sides: &[Side] =
            if z.im == 0.0 { &[Side::Above, Side::Below] } else { &[Side::None] };
        for &side in sides {
            let mut pt = ExtendedPoint { sign1, sign2, z, side, p: 0, q: 0 };
            let (u0, v0) = pt.to_uv();
            let pf = (u - u0).im / (2.0 * PI);
            let qf = (v - v0).im / (2.0 * PI);
            if (pf - pf.round()).abs() < 1e-6 && (qf - qf.round()).abs() < 1e-6 {
                pt.p = pf.round() as i64;
                pt.q = qf.round() as i64;
                let (u1, v1) = pt.to_uv();
                if (u1 - u).norm() < 1e-9 * u.norm().max(1.0)
                    && (v1 - v).norm() < 1e-9 * v.norm().max(1.0)
                {
                    return Ok(pt);
                }
            }
        }
        Err(Error::ComponentMismatch {
            term: 0,
            detail: format!("no (p,q,side) reconstructs (u,v) = ({u}, {v})"),
        })
    }

    fn interval(&self) -> Option<Interval> {
        if self.z.im != 0.0 {
            return None;
        }
        let x = self.z.re;
        Some(if x < 0.0 {
            Interval::NegAxis
        } else if x < 1.0 {
            Interval::UnitInterval
        } else {
            Interval::OneInf
        })
    }
}

/// A rank-1 period lattice in ℂ spanned by `base`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LatticeModulus {
    pub base_re: f64,
    pub base_im: f64,
}

impl LatticeModulus {
    pub fn new(base: Complex64) -> Self {
        assert!(base.norm() > 0.0, "lattice base must be nonzero");
        LatticeModulus { base_re: base.re, base_im: base.im }
    }

    pub fn base(&self) -> Complex64 {
        Complex64::new(self.base_re, self.base_im)
    }
}

/// true iff x − y = k·base + e with integer k and |e| ≤ tol; returns k.
pub fn congruent_mod(
    x: Complex64,
    y: Complex64,
    m: LatticeModulus,
    tol: f64,
) -> (bool, i64) {
    let ratio = (x - y) / m.base();
    let k = ratio.re.round();
    let e = (x - y) - k * m.base();
    (e.norm() <= tol, k as i64)
}

/// Reduce x modulo the lattice: x − round(Re(x/base))·base.
pub fn reduce_mod(x: Complex64, m: LatticeModulus) -> Complex64 {
    let k = (x / m.base()).re.round();
    x - k * m.base()
}

/// κ_n of the period theorem: 2^{2−n} for even n, 2^{3+ν₂(n−1)−n} for odd n.
pub fn kappa(n: i32) -> Rational {
    assert!(n >= 2);
    let e = if n % 2 == 0 {
        2 - n
    } else {
        let mut m = n - 1;
        let mut nu = 0;
        while m % 2 == 0 {
            nu += 1;
            m /= 2;
        }
        3 + nu - n
    };
    rat(2, 1).pow(e)
}

/// (2πi)^n / (n−1)! as a complex number.
pub fn two_pi_i_pow_over_fact(n: i32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        acc *= Complex64::new(0.0, 2.0 * PI);
    }
    acc / factorial((n - 1) as u32)
}

/// The period lattice of ω_n on the given component: (2πi)ⁿ/(n−1)! on Ĉ₊₊
/// and Ĉ₊₋, scaled by κ_n on Ĉ₋₊ and Ĉ₋₋.
pub fn period_modulus(n: i32, sign1: i8, sign2: i8) -> LatticeModulus {
    assert!(n >= 2);
    let _ = sign2;
    let mut base = two_pi_i_pow_over_fact(n);
    if sign1 == -1 {
        base *= kappa(n).to_f64().unwrap();
    }
    LatticeModulus::new(base)
}

/// δ(x, n) = (−1)ⁿ((x−1)^{n−1} − x^{n−1}), exact over ℚ (x may be a half
/// integer).
pub fn delta_rational(x: &Rational, n: i32) -> Rational {
    let xm1 = x - rat_int(1);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    rat_int(sign) * (xm1.pow(n - 1) - x.pow(n - 1))
}

/// Exact cut-jump Δ^I_{ε₁ε₂}(p, q) of the precursor L̂_n across a real cut
/// interval, in units (2πi)ⁿ/(n−1)!.
pub fn cut_jump(n: i32, interval: Interval, sign1: i8, sign2: i8, p: i64, q: i64) -> Rational {
    let p = rat_int(p);
    let q = rat_int(q);
    let half = rat(1, 2);
    match (sign1, sign2) {
        (1, 1) => match interval {
            Interval::NegAxis => q * delta_rational(&(&p + rat_int(1)), n),
            _ => Rational::zero(),
        },
        (-1, 1) => match interval {
            Interval::NegAxis => q * delta_rational(&(&p + &half), n),
            _ => Rational::zero(),
        },
        (1, -1) => match interval {
            Interval::NegAxis => {
                (-&p - rat_int(1)).pow(n - 1) + q * delta_rational(&(&p + rat_int(1)), n)
            }
            _ => (-&p).pow(n - 1),
        },
        (-1, -1) => match interval {
            Interval::NegAxis => {
                (-&p - &half).pow(n - 1) + q * delta_rational(&(&p + &half), n)
            }
            _ => (&half - &p).pow(n - 1),
        },
        _ => unreachable!("signs must be ±1"),
    }
}

/// Gluing shift (Δp, Δq) when crossing the interval from above to below:
/// ⟨z+0i; p, q⟩ ∼ ⟨z−0i; p+Δp, q+Δq⟩.
pub fn gluing_shift(interval: Interval, sign1: i8, sign2: i8) -> (i64, i64) {
    // u-log cut: ε₁z < 0 on the interval; v-log cut: ε₂(1−z) < 0.
    let u_cut = match interval {
        Interval::NegAxis => sign1 == 1,
        _ => sign1 == -1,
    };
    let v_cut = match interval {
        Interval::OneInf => sign2 == 1,
        _ => sign2 == -1,
    };
    (if u_cut { sign1 as i64 } else { 0 }, if v_cut { -(sign2 as i64) } else { 0 })
}

/// The exact monodromy combination of cut jumps along the commutator loop
/// (counterclockwise around 0, clockwise around 1), in units (2πi)ⁿ/(n−1)!.
pub fn monodromy_combination(n: i32, sign1: i8, sign2: i8, p: i64, q: i64) -> Rational {
    let d = |i: Interval, pp: i64, qq: i64| cut_jump(n, i, sign1, sign2, pp, qq);
    -d(Interval::NegAxis, p, q) + d(Interval::UnitInterval, p + 1, q)
        - d(Interval::OneInf, p + 1, q)
        + d(Interval::NegAxis, p, q - 1)
        - d(Interval::UnitInterval, p, q - 1)
        + d(Interval::OneInf, p, q)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// L̂i_k(z; q) = Li_k(z) − 2qπi/(k−1)! · Log(z)^{k−1}.
fn li_shifted(k: i32, z: Complex64, side: Side, q: i64) -> Result<Complex64> {
    let mut acc = li_principal(k, z, side)?;
    if q != 0 {
        let lz = log_side(z, side);
        acc -= Complex64::new(0.0, 2.0 * PI * q as f64) / factorial((k - 1) as u32)
            * lz.powu((k - 1) as u32);
    }
    Ok(acc)
}

/// The precursor L̂_n of eq-level bookkeeping: holomorphic on each component
/// only modulo (πi)ⁿ/(n−1)!. Exposed for cut-jump verification; use [`lhat`]
/// for the corrected representative.
pub fn lhat_precursor(n: i32, pt: &ExtendedPoint) -> Result<Complex64> {
    assert!(n >= 2, "lhat requires n >= 2");
    if pt.z.im == 0.0 && pt.side == Side::None {
        // determine whether the representative actually jumps here
        let iv = pt.interval().unwrap();
        let (dp, dq) = gluing_shift(iv, pt.sign1, pt.sign2);
        let jump = cut_jump(n, iv, pt.sign1, pt.sign2, pt.p, pt.q);
        if dp != 0 || dq != 0 || !jump.is_zero() {
            return Err(Error::RequiresSideFlag(match iv {
                Interval::NegAxis => "(-inf,0)",
                Interval::UnitInterval => "(0,1)",
                Interval::OneInf => "(1,inf)",
            }));
        }
    }
    let side = if pt.z.im == 0.0 && pt.side == Side::None { Side::Above } else { pt.side };
    let pt = ExtendedPoint { side, ..*pt };
    let (u, v) = pt.to_uv();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut ur = Complex64::new(1.0, 0.0);
    let mut rfact = 1.0;
    let mut sign = 1.0;
    for r in 0..n {
        acc += sign / rfact * li_shifted(n - r, pt.z, pt.side, pt.q)? * ur;
        ur *= u;
        rfact *= (r + 1) as f64;
        sign = -sign;
    }
    let nsign = if n % 2 == 0 { 1.0 } else { -1.0 };
    acc -= nsign / factorial(n as u32) * u.powu((n - 1) as u32) * v;
    Ok(acc)
}

/// The lifted polylogarithm ℒ̂_n at an extended point: the precursor plus the
/// Ĉ₋₋ correction, giving a deterministic representative of the value class
/// modulo the component's period lattice.
pub fn lhat(n: i32, pt: &ExtendedPoint) -> Result<Complex64> {
    let mut val = lhat_precursor(n, pt)?;
    if pt.sign1 == -1 && pt.sign2 == -1 {
        let unit = two_pi_i_pow_over_fact(n);
        let half = rat(1, 2);
        let upper = pt.z.im > 0.0 || (pt.z.im == 0.0 && pt.side == Side::Above);
        let corr = if upper {
            let base = -rat_int(pt.p) - &half;
            -base.pow(n - 1) + (-&half).pow(n - 1)
        } else {
            (-&half).pow(n - 1)
        };
        val += unit * corr.to_f64().unwrap();
    }
    Ok(val)
}

/// ℒ̂_n at explicit (u, v) coordinates on the declared component.
pub fn lhat_uv(n: i32, u: Complex64, v: Complex64, sign1: i8, sign2: i8) -> Result<Complex64> {
    lhat(n, &ExtendedPoint::from_uv(u, v, sign1, sign2)?)
}

/// ℜ_n: real part for odd n, imaginary part for even n.
pub fn re_n(n: i32, x: Complex64) -> f64 {
    if n % 2 == 1 {
        x.re
    } else {
        x.im
    }
}

/// Zagier's single-valued polylogarithm
/// L_n(z) = ℜ_n(Σ_{r=0}^{n−1} (2^r B_r / r!) Li_{n−r}(z) log^r|z|),
/// continuous on ℂP¹; `None` encodes z = ∞ (value 0).
pub fn zagier_l(n: i32, z: Option<Complex64>) -> f64 {
    assert!(n >= 2);
    let Some(z) = z else { return 0.0 };
    if z.norm() == 0.0 {
        return 0.0;
    }
    if z == Complex64::new(1.0, 0.0) {
        // continuity: log|z| = 0 kills every r > 0 term; Li_n(1) = ζ(n)
        return if n % 2 == 1 { zeta_int(n) } else { 0.0 };
    }
    let side = if z.im == 0.0 && z.re > 1.0 { Side::Above } else { Side::None };
    let lz = z.norm().ln();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut lr = 1.0f64;
    for r in 0..n {
        let beta = li::BERNOULLI_F64[r as usize] * 2f64.powi(r) / factorial(r as u32);
        acc += beta * li_principal(n - r, z, side).expect("off the branch points") * lr;
        lr *= lz;
    }
    re_n(n, acc)
}

/// The exact comparison coefficients of the ℜ_n∘ℒ̂_n vs L_n theorem:
/// c_{i,j} = c_i η_j / j! and d_{i,j} = (−1)^{(i+2)/2} ε_n Σ_{r≤i} c_r/(i+j+2−r)!,
/// with c_i = (1 − 2^{1−i}) 2^i B_i / i!; zero for odd i.
#[derive(Clone, Debug)]
pub struct ComparisonTable {
    pub n: i32,
    /// c_{i,j} for 1 ≤ i+j ≤ n−2
    pub c: Vec<((u32, u32), Rational)>,
    /// d_{i,j} for i+j = n−2
    pub d: Vec<((u32, u32), Rational)>,
}

fn beta_rational(r: u32) -> Rational {
    bernoulli(r) * rat_int(2).pow(r as i32) / Rational::from_integer(factorial_big(r))
}

fn c_small(i: u32) -> Rational {
    (rat_int(1) - rat(2, 1).pow(1 - i as i32)) * beta_rational(i)
}

fn eta_sign(j: u32, n: i32) -> Rational {
    let e = if n % 2 == 0 { j * j.wrapping_sub(1) / 2 } else { j * (j + 1) / 2 };
    rat_int(if e % 2 == 0 { 1 } else { -1 })
}

fn eps_sign(j: i32) -> Rational {
    let e = if j % 2 == 0 { j / 2 } else { (j + 1) / 2 };
    rat_int(if e % 2 == 0 { 1 } else { -1 })
}

fn factorial_big(n: u32) -> num_bigint::BigInt {
    use num_traits::One;
    (1..=n as u64).map(num_bigint::BigInt::from).product::<num_bigint::BigInt>().max(
        num_bigint::BigInt::one(),
    )
}

pub fn comparison_c(i: u32, j: u32, n: i32) -> Rational {
    if i % 2 == 1 {
        return Rational::zero();
    }
    c_small(i) / Rational::from_integer(factorial_big(j)) * eta_sign(j, n)
}

pub fn comparison_d(i: u32, j: u32, n: i32) -> Rational {
    if i % 2 == 1 {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    for r in 0..=i {
        acc += c_small(r) / Rational::from_integer(factorial_big(i + j + 2 - r));
    }
    let sign = rat_int(if (i / 2 + 1) % 2 == 0 { 1 } else { -1 });
    sign * eps_sign(n) * acc
}

pub fn comparison_table(n: i32) -> ComparisonTable {
    assert!((2..=12).contains(&n));
    let mut c = Vec::new();
    for s in 1..=(n - 2) as u32 {
        for i in 0..=s {
            c.push(((i, s - i), comparison_c(i, s - i, n)));
        }
    }
    let mut d = Vec::new();
    for i in 0..=(n - 2) as u32 {
        d.push(((i, (n - 2) as u32 - i), comparison_d(i, (n - 2) as u32 - i, n)));
    }
    ComparisonTable { n, c, d }
}

/// |LHS − RHS| of the comparison identity at the given point.
pub fn comparison_residual(n: i32, pt: &ExtendedPoint) -> Result<f64> {
    assert!((2..=12).contains(&n));
    let (u, v) = pt.to_uv();
    let z = Complex64::new(pt.sign1 as f64, 0.0) * u.exp();
    let lhs = re_n(n, lhat(n, pt)?) - zagier_l(n, Some(z));
    let mut rhs = 0.0;
    for s in 1..=(n - 2) as u32 {
        let low = re_n(n - s as i32, lhat(n - s as i32, pt)?);
        let mut coef = 0.0;
        for i in 0..=s {
            coef += comparison_c(i, s - i, n).to_f64().unwrap()
                * u.re.powi(i as i32)
                * u.im.powi((s - i) as i32);
        }
        rhs += low * coef;
    }
    let det = u.re * v.im - u.im * v.re;
    let mut dcoef = 0.0;
    for i in 0..=(n - 2) as u32 {
        dcoef += comparison_d(i, (n - 2) as u32 - i, n).to_f64().unwrap()
            * u.re.powi(i as i32)
            * u.im.powi(n - 2 - i as i32);
    }
    rhs += det * dcoef;
    Ok((lhs - rhs).abs())
}
