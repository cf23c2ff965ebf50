//! Matrices over `Q[c]`: rank defects of one-parameter pencils, and integer
//! eigenvalue detection.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::poly::Poly;
use super::rational::{ceil, Rational};
use crate::error::{Error, Result};

/// Matrix with polynomial entries in a single indeterminate `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} polynomial matrix",
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    /// The pencil `constant + c * linear`.
    pub fn pencil(constant: &ExactMatrix, linear: &ExactMatrix) -> Result<Self> {
        if (constant.rows(), constant.cols()) != (linear.rows(), linear.cols()) {
            return Err(Error::DimensionMismatch("pencil terms of different shapes".into()));
        }
        let entries = constant
            .entries()
            .iter()
            .zip(linear.entries())
            .map(|(a, b)| Poly::new(vec![a.clone(), b.clone()]))
            .collect();
        Ok(PolyMatrix { rows: constant.rows(), cols: constant.cols(), entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn eval(&self, c: &Rational) -> ExactMatrix {
        ExactMatrix::new(self.rows, self.cols, self.entries.iter().map(|p| p.eval(c)).collect())
            .expect("shape preserved")
    }
}

/// Outcome of [`pencil_full_rank`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilRank {
    pub full_for_all_c: bool,
    /// Monic gcd of all maximal minors; zero if they all vanish identically.
    pub defect_poly: Poly,
}

/// Decides whether a tall polynomial matrix has full column rank at every
/// complex value of `c`.
///
/// The gcd of the maximal minors is invariant under unimodular row
/// operations over `Q[c]`, so the matrix is brought to upper-triangular
/// Hermite shape with Euclidean row reduction; afterwards the only nonzero
/// maximal minor is the product of the diagonal.
pub fn pencil_full_rank(m: &PolyMatrix) -> Result<PencilRank> {
    if m.rows < m.cols {
        return Err(Error::DimensionMismatch(format!(
            "pencil rank needs rows >= cols, got {}x{}",
            m.rows, m.cols
        )));
    }
    let mut a: Vec<Vec<Poly>> =
        (0..m.rows).map(|r| (0..m.cols).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut defect = Poly::one();
    for col in 0..m.cols {
        loop {
            // Row of least degree in this column becomes the pivot.
            let pivot = (col..m.rows)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| a[r][col].degree().unwrap());
            let Some(p) = pivot else {
                return Ok(PencilRank { full_for_all_c: false, defect_poly: Poly::zero() });
            };
            a.swap(col, p);
            let mut done = true;
            for r in col + 1..m.rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let (q, rem) = a[r][col].div_rem(&a[col][col]);
                for k in col..m.cols {
                    let t = &q * &a[col][k];
                    a[r][k] = &a[r][k] - &t;
                }
                debug_assert_eq!(a[r][col], rem);
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        defect = &defect * &a[col][col];
    }
    let defect = defect.monic();
    Ok(PencilRank { full_for_all_c: defect.is_unit(), defect_poly: defect })
}

/// Nonzero integers `m` that are eigenvalues of `a + shift * Id`.
///
/// Candidates are integer roots of the characteristic polynomial; they
/// divide its constant term (after removing powers of the indeterminate)
/// and are bounded by the absolute entry sum. Each hit is confirmed by a
/// rank drop.
pub fn integer_spectrum_hits(a: &ExactMatrix, shift: &Rational) -> Result<Vec<BigInt>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("spectrum of a non-square matrix".into()));
    }
    let b = a.shifted(shift);
    let n = b.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let ints = b.charpoly().primitive_integer_coeffs();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    let trimmed = &ints[low..];
    let constant = trimmed[0].abs();
    let entry_bound = b.entries().iter().fold(Rational::zero(), |acc, e| acc + e.abs());
    let bound = ceil(&entry_bound) + BigInt::one();
    let bound = bound.min(constant.clone());
    let mut hits = Vec::new();
    let mut m = BigInt::one();
    while m <= bound {
        if (&constant % &m).is_zero() {
            for cand in [-m.clone(), m.clone()] {
                if eval_int(trimmed, &cand).is_zero()
                    && b.shifted(&-Rational::from_integer(cand.clone())).rank() < n
                {
                    hits.push(cand);
                }
            }
        }
        m += 1;
    }
    hits.sort();
    Ok(hits)
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    fn c_poly(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn pencil_examples() {
        let one = PolyMatrix::new(1, 1, vec![Poly::one()]).unwrap();
        assert_eq!(
            pencil_full_rank(&one).unwrap(),
            PencilRank { full_for_all_c: true, defect_poly: Poly::one() }
        );
        let c = PolyMatrix::new(1, 1, vec![Poly::x()]).unwrap();
        assert_eq!(
            pencil_full_rank(&c).unwrap(),
            PencilRank { full_for_all_c: false, defect_poly: Poly::x() }
        );
        let m = PolyMatrix::new(2, 2, vec![Poly::x(), Poly::one(), Poly::one(), Poly::x()]).unwrap();
        let r = pencil_full_rank(&m).unwrap();
        assert!(!r.full_for_all_c);
        assert_eq!(r.defect_poly, c_poly(&[-1, 0, 1]));
        assert_eq!(r.defect_poly.rational_roots(), vec![int(-1), int(1)]);
    }

    #[test]
    fn identically_singular_pencil() {
        let m = PolyMatrix::new(2, 2, vec![Poly::x(), Poly::x(), Poly::x(), Poly::x()]).unwrap();
        let r = pencil_full_rank(&m).unwrap();
        assert!(!r.full_for_all_c);
        assert!(r.defect_poly.is_zero());
    }

    #[test]
    fn wide_pencil_is_rejected() {
        let m = PolyMatrix::new(1, 2, vec![Poly::one(), Poly::x()]).unwrap();
        assert!(pencil_full_rank(&m).is_err());
    }

    #[test]
    fn spectrum_examples() {
        assert!(integer_spectrum_hits(&ExactMatrix::zeros(3, 3), &int(0)).unwrap().is_empty());
        let d = ExactMatrix::diagonal(&[int(3), frac(1, 2)]);
        assert_eq!(integer_spectrum_hits(&d, &int(0)).unwrap(), vec![BigInt::from(3)]);
        let rot = ExactMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert!(integer_spectrum_hits(&rot, &int(0)).unwrap().is_empty());
        let d = ExactMatrix::diagonal(&[int(-2), frac(1, 2)]);
        assert_eq!(
            integer_spectrum_hits(&d, &frac(1, 2)).unwrap(),
            vec![BigInt::from(1)]
        );
    }
}
