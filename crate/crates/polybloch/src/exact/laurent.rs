//! Sparse multivariate Laurent polynomials over ℤ.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::Rational;

/// A Laurent polynomial in a fixed number of variables, stored as a sparse
/// map from integer exponent vectors to nonzero big-integer coefficients.
///
/// The BTreeMap keeps terms in a canonical exponent order, so structural
/// equality is semantic equality and the type can be used as a hash key.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], BigInt::one());
        LaurentPoly { nvars, terms }
    }

    /// The variable x_i.
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        LaurentPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Self {
        let mut p = LaurentPoly::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiply by the monomial with the given exponent vector.
    pub fn mul_monomial(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    /// Evaluate at a rational point (all coordinates nonzero if negative
    /// exponents occur).
    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e.iter()) {
                t *= x.pow(k);
            }
            acc += t;
        }
        acc
    }

    /// Exact Laurent division: returns q with q · den = self.
    ///
    /// Shifts both operands into the ordinary polynomial range, then divides
    /// greedily by the graded-lex leading term; a nonzero remainder or a
    /// non-integral leading quotient signals `NonDivisible`.
    pub fn divide_exact(&self, den: &Self) -> Result<Self> {
        assert_eq!(self.nvars, den.nvars);
        assert!(!den.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let n = self.nvars;
        // shift so both numerator and denominator are true polynomials
        let mut shift = vec![0i32; n];
        for e in self.terms.keys().chain(den.terms.keys()) {
            for (s, &x) in shift.iter_mut().zip(e) {
                *s = (*s).min(x);
            }
        }
        let neg_shift: Vec<i32> = shift.iter().map(|x| -x).collect();
        let num = self.mul_monomial(&neg_shift);
        let den_shifted = den.mul_monomial(&neg_shift);
        // denominator's own minimal shift (denominator must itself be monic-free polynomial)
        let mut dshift = vec![i32::MAX; n];
        for e in den_shifted.terms.keys() {
            for (s, &x) in dshift.iter_mut().zip(e) {
                *s = (*s).min(x);
            }
        }
        let neg_dshift: Vec<i32> = dshift.iter().map(|x| -x).collect();
        let den_poly = den_shifted.mul_monomial(&neg_dshift);
        // the quotient absorbs dshift back at the end
        let grlex = |e: &Vec<i32>| {
            let deg: i64 = e.iter().map(|&x| x as i64).sum();
            (deg, e.clone())
        };
        let (lt_den, c_den) = den_poly
            .terms
            .iter()
            .max_by_key(|(e, _)| grlex(e))
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut rem = num.terms.clone();
        let mut quo: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        while !rem.is_empty() {
            let (lt, c) = rem
                .iter()
                .max_by_key(|(e, _)| grlex(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .unwrap();
            let e: Vec<i32> = lt.iter().zip(&lt_den).map(|(x, y)| x - y).collect();
            if e.iter().any(|&x| x < 0) || (&c % &c_den) != BigInt::zero() {
                return Err(Error::NonDivisible);
            }
            let q = &c / &c_den;
            for (ed, cd) in &den_poly.terms {
                let key: Vec<i32> = e.iter().zip(ed).map(|(x, y)| x + y).collect();
                let entry = rem.entry(key).or_insert_with(BigInt::zero);
                *entry -= &q * cd;
                if entry.is_zero() {
                    let key: Vec<i32> = e.iter().zip(ed).map(|(x, y)| x + y).collect();
                    rem.remove(&key);
                }
            }
            quo.insert(e, q);
        }
        let q = LaurentPoly { nvars: n, terms: quo };
        Ok(q.mul_monomial(&neg_dshift))
    }

    /// Render with variable names x1..xm, for dumps and debugging.
    pub fn to_display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut s = String::new();
            if c.abs() != BigInt::one() || e.iter().all(|&x| x == 0) {
                s.push_str(&c.abs().to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&format!("x{}", i + 1));
                    if k != 1 {
                        s.push_str(&format!("^{k}"));
                    }
                }
            }
            let sign = if c.is_negative() { " - " } else { " + " };
            parts.push((sign, s));
        }
        let mut out = String::new();
        for (i, (sign, s)) in parts.iter().enumerate() {
            if i == 0 {
                if *sign == " - " {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            out.push_str(s);
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display())
    }
}
