//! Subspaces of `Q^n` in canonical echelon form, kernels, and quotients.

use num_traits::Zero;

use super::matrix::{rref, ExactMatrix};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Column span of a matrix, stored as a reduced echelon basis.
///
/// The basis vectors are the nonzero rows of the reduced row-echelon form of
/// any spanning set, so two subspaces are equal as values exactly when they
/// are equal as spans.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    vectors: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, &ExactMatrix::identity(ambient_dim).row_vecs())
            .expect("identity rows have the ambient length")
    }

    /// Span of the given vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {ambient_dim}",
                v.len()
            )));
        }
        let ech = rref(vectors.to_vec(), ambient_dim);
        Ok(Subspace { ambient_dim, vectors: ech.rows, pivots: ech.pivots })
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &ExactMatrix) -> Self {
        Self::span(m.rows(), &m.transpose().row_vecs()).expect("columns have the row count")
    }

    /// Span of the unit vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vectors: Vec<Vec<Rational>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = num_traits::One::one();
                v
            })
            .collect();
        Self::span(ambient_dim, &vectors).expect("unit vectors have the ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis vectors (reduced echelon, leading entries 1).
    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// Coordinates at which the canonical basis has its leading ones.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; these index the canonical complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// Basis as the columns of an `ambient_dim x dim` matrix.
    pub fn basis(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.ambient_dim, &self.vectors)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        // Reduce against the pivots; membership means nothing is left over.
        let mut r = v.to_vec();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let mut vs = self.vectors.clone();
        vs.extend(other.vectors.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Intersection, computed as the kernel of the two stacked quotient maps.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let (p1, _) = quotient_map(self.ambient_dim, self)?;
        let (p2, _) = quotient_map(other.ambient_dim, other)?;
        Ok(kernel(&ExactMatrix::vstack(&[&p1, &p2])?))
    }

    /// Image of the subspace under `m`.
    pub fn image_under(&self, m: &ExactMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch("map does not act on this space".into()));
        }
        let imgs: Vec<Vec<Rational>> = self.vectors.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), &imgs)
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

/// `{v : m v = 0}`.
pub fn kernel(m: &ExactMatrix) -> Subspace {
    let ech = m.echelon();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Rational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = num_traits::One::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors).expect("kernel vectors have the column count")
}

/// Projection `Q^n -> Q^n / S` in the coordinates of the canonical complement
/// (the non-pivot coordinates of `S`). Returns the `(n - dim S) x n` matrix and
/// the quotient dimension.
pub fn quotient_map(ambient_dim: usize, s: &Subspace) -> Result<(ExactMatrix, usize)> {
    if s.ambient_dim != ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "subspace of Q^{} in Q^{ambient_dim}",
            s.ambient_dim
        )));
    }
    let free = s.non_pivots();
    let mut proj = ExactMatrix::zeros(free.len(), ambient_dim);
    for (row, &f) in free.iter().enumerate() {
        proj.set(row, f, num_traits::One::one());
        for (b, &p) in s.vectors.iter().zip(&s.pivots) {
            if !b[f].is_zero() {
                proj.set(row, p, -b[f].clone());
            }
        }
    }
    Ok((proj, free.len()))
}

/// The `n x (n - dim S)` inclusion of the canonical complement; a right
/// inverse of the quotient projection.
pub fn complement_section(s: &Subspace) -> ExactMatrix {
    let free = s.non_pivots();
    let mut sec = ExactMatrix::zeros(s.ambient_dim, free.len());
    for (col, &f) in free.iter().enumerate() {
        sec.set(f, col, num_traits::One::one());
    }
    sec
}

/// Matrix of the endomorphism induced by `a` on `Q^n / S`, in complement
/// coordinates. Fails with a witness column when `a S` is not inside `S`.
pub fn induced_on_quotient(a: &ExactMatrix, s: &Subspace) -> Result<ExactMatrix> {
    induced_on_quotient_named(a, s, "matrix")
}

pub(crate) fn induced_on_quotient_named(
    a: &ExactMatrix,
    s: &Subspace,
    name: &str,
) -> Result<ExactMatrix> {
    if !a.is_square() || a.rows() != s.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix on Q^{}",
            a.rows(),
            a.cols(),
            s.ambient_dim
        )));
    }
    induced_map_named(a, s, s, name)
}

/// Map `Q^m / S -> Q^n / T` induced by `phi: Q^m -> Q^n`, in complement
/// coordinates on both sides. Requires `phi S` inside `T`.
pub fn induced_map(phi: &ExactMatrix, source: &Subspace, target: &Subspace) -> Result<ExactMatrix> {
    induced_map_named(phi, source, target, "map")
}

pub(crate) fn induced_map_named(
    phi: &ExactMatrix,
    source: &Subspace,
    target: &Subspace,
    name: &str,
) -> Result<ExactMatrix> {
    if phi.cols() != source.ambient_dim || phi.rows() != target.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map between Q^{} and Q^{}",
            phi.rows(),
            phi.cols(),
            source.ambient_dim,
            target.ambient_dim
        )));
    }
    for (column, v) in source.vectors.iter().enumerate() {
        if !target.contains(&phi.mul_vec(v)) {
            return Err(Error::InvarianceViolation { generator: name.to_string(), column });
        }
    }
    let (proj, _) = quotient_map(target.ambient_dim, target)?;
    let sec = complement_section(source);
    Ok(&(&proj * phi) * &sec)
}
