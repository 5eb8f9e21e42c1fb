//! Exact arithmetic substrate: arbitrary-precision rationals, Bernoulli
//! numbers, multivariate Laurent polynomials over ℤ, and exact rational
//! nullspace computation.

mod laurent;
mod matrix;

pub use laurent::LaurentPoly;
pub use matrix::{rational_nullspace, RatMatrix};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

/// Rational from a pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Binomial coefficient C(n, k) over big integers.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The Bernoulli number B_r with the convention B₁ = −1/2.
///
/// Computed from the defining recurrence Σ_{j=0}^{r} C(r+1, j) B_j = 0.
pub fn bernoulli(r: u32) -> Rational {
    let mut bs: Vec<Rational> = Vec::with_capacity(r as usize + 1);
    bs.push(Rational::one());
    for m in 1..=(r as u64) {
        let mut acc = Rational::zero();
        for (j, b) in bs.iter().enumerate() {
            acc += Rational::from_integer(binomial(m + 1, j as u64)) * b;
        }
        bs.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    bs.pop().unwrap()
}

/// The positive generator of the subgroup of ℚ generated by a set of
/// rationals, i.e. their gcd: gcd(a/b, c/d) = gcd(ad, cb)/(bd) reduced.
pub fn rational_gcd(xs: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        if acc.is_zero() {
            acc = x.abs();
        } else {
            let num = acc.numer() * x.denom();
            let num2 = x.numer() * acc.denom();
            let den = acc.denom() * x.denom();
            acc = Rational::new(num.gcd(&num2), den);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), rat_int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat_int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_to_40() {
        // Σ_{j=0}^{r} C(r+1,j) B_j = 0 for r ≥ 1, asserted independently of
        // the generating code path by re-summing.
        for r in 1..=40u64 {
            let mut acc = Rational::zero();
            for j in 0..=r {
                acc += Rational::from_integer(binomial(r + 1, j)) * bernoulli(j as u32);
            }
            assert!(acc.is_zero(), "recurrence failed at r = {r}");
        }
    }

    #[test]
    fn beta_lemma_identities() {
        // β_r = 2^r B_r / r!, c_i = (1 − 2^{1−i}) β_i.
        let beta = |r: u32| {
            bernoulli(r) * Rational::from_integer(BigInt::from(2u32).pow(r))
                / Rational::from_integer(factorial(r))
        };
        let c = |i: u32| (rat_int(1) - rat(2, 1).pow(1 - i as i32)) * beta(i);
        // First identity: Σ_{i=0}^{k} c_i/(k−i)! = (−1)^{k−1} β_k.
        for k in 0..=20u32 {
            let mut acc = Rational::zero();
            for i in 0..=k {
                acc += c(i) / Rational::from_integer(factorial(k - i));
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            assert_eq!(acc, rat_int(sign) * beta(k), "first identity at k = {k}");
        }
        // Second identity: for odd l ≥ 3, Σ_{i=0}^{l−1} (l−1−i)/(l−i)! c_i = −β_{l−1}.
        for l in (3..=21u32).step_by(2) {
            let mut acc = Rational::zero();
            for i in 0..l {
                acc += rat_int((l - 1 - i) as i64) / Rational::from_integer(factorial(l - i))
                    * c(i);
            }
            assert_eq!(acc, -beta(l - 1), "second identity at l = {l}");
        }
    }

    #[test]
    fn binom_lemma() {
        // Σ_{j=0}^{l} (−1)^j C(l,j)/(s+l−j) = (−1)^l / (s C(l+s,l)).
        for s in 1..=15u64 {
            for l in 1..=15u64 {
                let mut acc = Rational::zero();
                for j in 0..=l {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    acc += rat_int(sign) * Rational::from_integer(binomial(l, j))
                        / rat_int((s + l - j) as i64);
                }
                let sign = if l % 2 == 0 { 1 } else { -1 };
                let rhs = rat_int(sign)
                    / (rat_int(s as i64) * Rational::from_integer(binomial(l + s, l)));
                assert_eq!(acc, rhs, "binom lemma at s = {s}, l = {l}");
            }
        }
    }

    #[test]
    fn rational_gcd_generates_subgroup() {
        let xs = [rat(1, 2), rat(3, 4)];
        assert_eq!(rational_gcd(&xs), rat(1, 4));
        assert_eq!(rational_gcd(&[rat(6, 1), rat(10, 1)]), rat(2, 1));
        assert_eq!(rational_gcd(&[Rational::zero()]), Rational::zero());
    }

    fn factorial(n: u32) -> BigInt {
        (1..=n as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one())
    }
}
