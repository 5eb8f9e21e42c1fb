//! Rational matrices and exact nullspace computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Rational;

/// A dense matrix of rationals.
#[derive(Clone, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::from_integer(BigInt::from(1));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for c in 0..self.cols {
                    if !self.at(r, c).is_zero() && !v[c].is_zero() {
                        acc += self.at(r, c) * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        echelon(self).1.len()
    }
}

/// Fraction-free Gaussian elimination (Bareiss) to row echelon form over big
/// integers. Returns the echelon matrix (integer rows) and the pivot columns.
fn echelon(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    // clear denominators row by row
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let lcm = (0..m.cols)
                .map(|c| m.at(r, c).denom().clone())
                .fold(BigInt::from(1), |acc, d| acc.lcm(&d));
            (0..m.cols).map(|c| m.at(r, c).numer() * (&lcm / m.at(r, c).denom())).collect()
        })
        .collect();
    let rows = a.len();
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    let mut prev_pivot = BigInt::from(1);
    for pc in 0..cols {
        let Some(sel) = (pr..rows).find(|&r| !a[r][pc].is_zero()) else {
            continue;
        };
        a.swap(pr, sel);
        for r in (pr + 1)..rows {
            for c in (pc + 1)..cols {
                let t = &a[pr][pc] * &a[r][c] - &a[r][pc] * &a[pr][c];
                a[r][c] = &t / &prev_pivot;
            }
            a[r][pc] = BigInt::zero();
        }
        prev_pivot = a[pr][pc].clone();
        pivots.push(pc);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    a.truncate(pr);
    (a, pivots)
}

/// Basis of the right nullspace over ℚ.
///
/// Fraction-free elimination over big integers followed by rational back
/// substitution. Each basis vector is scaled to coprime integer entries with
/// positive leading entry; output order follows ascending free columns.
pub fn rational_nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (ech, pivots) = echelon(m);
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![Rational::zero(); cols];
        v[fc] = Rational::from_integer(BigInt::from(1));
        // back substitution over the echelon rows
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::zero();
            for c in (pc + 1)..cols {
                if !ech[i][c].is_zero() && !v[c].is_zero() {
                    acc += Rational::from_integer(ech[i][c].clone()) * &v[c];
                }
            }
            v[pc] = -acc / Rational::from_integer(ech[i][pc].clone());
        }
        basis.push(normalize_int(v));
    }
    basis
}

/// Scale a rational vector to coprime integer entries with positive leading
/// (first nonzero) entry.
pub fn normalize_int(v: Vec<Rational>) -> Vec<Rational> {
    let mut lcm = BigInt::from(1);
    for x in &v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints.into_iter().map(Rational::from_integer).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(rational_nullspace(&RatMatrix::identity(3)).is_empty());
    }

    #[test]
    fn ones_row_kernel() {
        let m = RatMatrix::from_rows(vec![vec![rat_int(1), rat_int(1), rat_int(1)]]);
        let basis = rational_nullspace(&m);
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], vec![rat_int(1), rat_int(-1), rat_int(0)]);
        assert_eq!(basis[1], vec![rat_int(1), rat_int(0), rat_int(-1)]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), rat_int(2), rat_int(0)],
            vec![rat_int(1), rat_int(-1), rat_int(0), rat(5, 7)],
        ]);
        let basis = rational_nullspace(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    proptest! {
        #[test]
        fn nullspace_dimension_and_exactness(
            entries in proptest::collection::vec(-5i64..6, 12),
        ) {
            let m = RatMatrix::from_rows(
                entries.chunks(4).map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect(),
            );
            let basis = rational_nullspace(&m);
            prop_assert_eq!(basis.len(), 4 - m.rank());
            for v in &basis {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            // returned vectors are linearly independent: stack them and check rank
            if !basis.is_empty() {
                let bm = RatMatrix::from_rows(basis.clone());
                prop_assert_eq!(bm.rank(), basis.len());
            }
        }
    }
}
