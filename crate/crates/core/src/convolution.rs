//! Additive convolution and middle convolution, both for tuples of matrices
//! (Dettweiler-Reiter) and for logarithmic Pfaffian systems along a line
//! (Haraoka), plus the comparison maps between convolutions.
//!
//! Vectors of a convolved space are laid out block by block: coordinate
//! `block * d + k` is component `k` of the copy of `V` attached to the
//! `block`-th generator.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arrangement::{codim2_flats, is_parallel, y_closure, Line};
use crate::error::{Error, Result};
use crate::exact::subspace::induced_on_quotient_named;
use crate::exact::{complement_section, kernel, quotient_map, ExactMatrix, Rational, Subspace};
use crate::holonomy::{check_integrability, require_integrable, zero_extend, PfaffianSystem};

fn check_tuple(a: &[ExactMatrix]) -> Result<usize> {
    let first = a.first().ok_or_else(|| Error::InvalidInput("empty matrix tuple".into()))?;
    let d = first.rows();
    for (i, m) in a.iter().enumerate() {
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "matrix {} is {}x{}, expected {d}x{d}",
                i + 1,
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(d)
}

/// `C_i` has block row `i` equal to `(A_1, ..., A_i + lambda, ..., A_n)` and
/// zeros elsewhere.
pub fn dr_convolution(a: &[ExactMatrix], lambda: &Rational) -> Result<Vec<ExactMatrix>> {
    let d = check_tuple(a)?;
    let n = a.len();
    Ok((0..n)
        .map(|i| {
            let mut c = ExactMatrix::zeros(n * d, n * d);
            for (j, aj) in a.iter().enumerate() {
                let block = if i == j { aj.shifted(lambda) } else { aj.clone() };
                c.set_block(i * d, j * d, &block);
            }
            c
        })
        .collect())
}

/// `Ker A_i` placed in block `i`, for every `i`.
fn block_kernels(a: &[ExactMatrix], d: usize) -> Result<Subspace> {
    let n = a.len();
    let mut vectors = Vec::new();
    for (i, ai) in a.iter().enumerate() {
        for v in kernel(ai).vectors() {
            let mut w = vec![Rational::zero(); n * d];
            w[i * d..(i + 1) * d].clone_from_slice(v);
            vectors.push(w);
        }
    }
    Subspace::span(n * d, &vectors)
}

fn joint_kernel(ms: &[&ExactMatrix], dim: usize) -> Result<Subspace> {
    if ms.is_empty() {
        return Ok(Subspace::full(dim));
    }
    Ok(kernel(&ExactMatrix::vstack(ms)?))
}

/// The subspaces `k` (block kernels) and `l` (joint kernel of the convolved
/// matrices).
pub fn dr_k_l(a: &[ExactMatrix], lambda: &Rational) -> Result<(Subspace, Subspace)> {
    let d = check_tuple(a)?;
    let c = dr_convolution(a, lambda)?;
    let k = block_kernels(a, d)?;
    let l = joint_kernel(&c.iter().collect::<Vec<_>>(), a.len() * d)?;
    if lambda.is_zero() {
        let alt = kernel(&phi_zero(a)?);
        if alt != l {
            return Err(Error::Internal(
                "joint kernel at lambda = 0 differs from the kernel of sum A_i v_i".into(),
            ));
        }
    }
    Ok((k, l))
}

/// Result of quotienting a tuple of endomorphisms by `k + l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub k_space: Subspace,
    pub l_space: Subspace,
    /// Whether `k` and `l` meet only in zero.
    pub direct_sum: bool,
    /// Projection onto the quotient, in complement coordinates.
    pub projection: ExactMatrix,
    /// Inclusion of the canonical complement, a right inverse of `projection`.
    pub section: ExactMatrix,
    pub dim: usize,
}

fn quotient_by<'a>(
    ambient: usize,
    mats: impl IntoIterator<Item = (String, &'a ExactMatrix)>,
    k: Subspace,
    l: Subspace,
) -> Result<(Quotient, Vec<ExactMatrix>)> {
    let mats: Vec<(String, &ExactMatrix)> = mats.into_iter().collect();
    for (name, m) in &mats {
        induced_on_quotient_named(m, &k, name)?;
        induced_on_quotient_named(m, &l, name)?;
    }
    let sum = k.sum(&l)?;
    let direct_sum = sum.dim() == k.dim() + l.dim();
    let (projection, dim) = quotient_map(ambient, &sum)?;
    let induced = mats
        .iter()
        .map(|(name, m)| induced_on_quotient_named(m, &sum, name))
        .collect::<Result<Vec<_>>>()?;
    let section = complement_section(&sum);
    Ok((Quotient { k_space: k, l_space: l, direct_sum, projection, section, dim }, induced))
}

/// Dettweiler-Reiter middle convolution of a matrix tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrMiddleConvolution {
    pub lambda: Rational,
    pub convolved: Vec<ExactMatrix>,
    pub quotient: Quotient,
    /// Induced matrices on `c_lambda(V) / (k + l)`.
    pub matrices: Vec<ExactMatrix>,
}

impl DrMiddleConvolution {
    pub fn dim(&self) -> usize {
        self.quotient.dim
    }
}

pub fn dr_middle_convolution(a: &[ExactMatrix], lambda: &Rational) -> Result<DrMiddleConvolution> {
    let d = check_tuple(a)?;
    let convolved = dr_convolution(a, lambda)?;
    let (k, l) = dr_k_l(a, lambda)?;
    let named = convolved.iter().enumerate().map(|(i, c)| (format!("C{}", i + 1), c));
    let (quotient, matrices) = quotient_by(a.len() * d, named, k, l)?;
    Ok(DrMiddleConvolution { lambda: lambda.clone(), convolved, quotient, matrices })
}

/// Haraoka convolution of a Pfaffian system along a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolvedSystem {
    /// Input system, zero-extended to the closure.
    pub base: PfaffianSystem,
    pub line: Line,
    pub lambda: Rational,
    /// Transverse hyperplane ids, fixing the block order.
    pub order: Vec<String>,
    /// Rank `n * d` system over the Y-closure.
    pub system: PfaffianSystem,
}

impl ConvolvedSystem {
    pub fn closure(&self) -> &crate::arrangement::Arrangement {
        self.system.arrangement()
    }
}

pub fn haraoka_convolution(s: &PfaffianSystem, y: &Line, lambda: &Rational) -> Result<ConvolvedSystem> {
    require_integrable(s)?;
    let closure = y_closure(s.arrangement(), y)?;
    let base = zero_extend(s, &closure)?;
    let d = base.rank();
    let order: Vec<String> = closure
        .hyperplanes()
        .iter()
        .filter(|h| !is_parallel(h, y))
        .map(|h| h.id().to_string())
        .collect();
    let n = order.len();
    if n == 0 {
        return Err(Error::Precondition("no hyperplane is transverse to the line".into()));
    }
    let transverse: Vec<&ExactMatrix> =
        order.iter().map(|id| base.residue(id)).collect::<Result<_>>()?;
    let owned: Vec<ExactMatrix> = transverse.iter().map(|m| (*m).clone()).collect();
    let dr = dr_convolution(&owned, lambda)?;
    let flats = codim2_flats(&closure);
    let mut residues = BTreeMap::new();
    for (id, c) in order.iter().zip(dr) {
        residues.insert(id.clone(), c);
    }
    for h in closure.hyperplanes().iter().filter(|h| is_parallel(h, y)) {
        let a_h = base.residue(h.id())?;
        let mut c = ExactMatrix::zeros(n * d, n * d);
        for (j, hj) in order.iter().enumerate() {
            let family = flats
                .iter()
                .find(|f| f.family.contains(&h.id().to_string()) && f.family.contains(hj))
                .map(|f| &f.family)
                .ok_or_else(|| Error::Internal(format!("`{}` and `{hj}` share no flat", h.id())))?;
            let mut diag = a_h.clone();
            for (m, hm) in order.iter().enumerate() {
                if m != j && family.contains(hm) {
                    diag = &diag + transverse[m];
                    c.set_block(m * d, j * d, &-transverse[j]);
                }
            }
            c.set_block(j * d, j * d, &diag);
        }
        residues.insert(h.id().to_string(), c);
    }
    let system = PfaffianSystem::new(closure, n * d, residues)?;
    let report = check_integrability(&system);
    if !report.is_ok() {
        return Err(Error::Internal(format!(
            "convolution is not integrable ({} violation(s))",
            report.violations.len()
        )));
    }
    Ok(ConvolvedSystem { base, line: y.clone(), lambda: lambda.clone(), order, system })
}

/// Haraoka middle convolution: the convolution modulo `K + L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleConvolvedSystem {
    pub conv: ConvolvedSystem,
    pub quotient: Quotient,
    /// Induced system over the closure.
    pub system: PfaffianSystem,
}

impl MiddleConvolvedSystem {
    pub fn dim(&self) -> usize {
        self.quotient.dim
    }
}

pub fn haraoka_middle_convolution(
    s: &PfaffianSystem,
    y: &Line,
    lambda: &Rational,
) -> Result<MiddleConvolvedSystem> {
    let conv = haraoka_convolution(s, y, lambda)?;
    let d = conv.base.rank();
    let total = conv.system.rank();
    let transverse: Vec<ExactMatrix> =
        conv.order.iter().map(|id| conv.base.residue(id).cloned()).collect::<Result<_>>()?;
    let k = block_kernels(&transverse, d)?;
    let convolved: Vec<&ExactMatrix> =
        conv.order.iter().map(|id| conv.system.residue(id)).collect::<Result<_>>()?;
    let l = joint_kernel(&convolved, total)?;
    let ids = conv.system.arrangement().ids();
    let named = ids.iter().map(|id| (id.clone(), &conv.system.residues()[id]));
    let (quotient, matrices) = quotient_by(total, named, k, l)?;
    let system = PfaffianSystem::new(
        conv.system.arrangement().clone(),
        quotient.dim,
        ids.into_iter().zip(matrices).collect(),
    )?;
    let report = check_integrability(&system);
    if !report.is_ok() {
        return Err(Error::Internal(format!(
            "middle convolution is not integrable ({} violation(s))",
            report.violations.len()
        )));
    }
    Ok(MiddleConvolvedSystem { conv, quotient, system })
}

/// The `d x nd` map `(v_1, ..., v_n) -> sum A_i v_i` from `c_0(V)` to `V`.
pub fn phi_zero(a: &[ExactMatrix]) -> Result<ExactMatrix> {
    check_tuple(a)?;
    ExactMatrix::hstack(&a.iter().collect::<Vec<_>>())
}

/// The `nd x n^2 d` map from `c_lambda(c_mu(V))` to `c_{lambda+mu}(V)` sending
/// a vector `w` in outer block `i` to `C_i w`, with `C = c_mu(A)`. It
/// intertwines the double convolution with `c_{lambda+mu}(A)`.
pub fn phi_compose(a: &[ExactMatrix], _lambda: &Rational, mu: &Rational) -> Result<ExactMatrix> {
    let c = dr_convolution(a, mu)?;
    ExactMatrix::hstack(&c.iter().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{Arrangement, Hyperplane};
    use crate::exact::{frac, int};

    fn s(v: i64) -> ExactMatrix {
        ExactMatrix::from_i64(&[&[v]])
    }

    fn r(m: &Rational) -> ExactMatrix {
        ExactMatrix::scalar(1, m)
    }

    #[test]
    fn dr_examples() {
        let c = dr_convolution(&[s(2), s(3)], &int(1)).unwrap();
        assert_eq!(c[0], ExactMatrix::from_i64(&[&[3, 3], &[0, 0]]));
        assert_eq!(c[1], ExactMatrix::from_i64(&[&[0, 0], &[2, 4]]));
        assert_eq!(dr_convolution(&[s(5)], &int(0)).unwrap(), vec![s(5)]);
        assert!(dr_convolution(&[s(1), ExactMatrix::zeros(2, 2)], &int(0)).is_err());
    }

    #[test]
    fn k_l_examples() {
        let (k, l) = dr_k_l(&[s(2), s(3)], &frac(1, 2)).unwrap();
        assert!(k.is_zero() && l.is_zero());
        let (k, l) = dr_k_l(&[s(0), s(0)], &int(0)).unwrap();
        assert!(k.is_full() && l.is_full());
        let (_, l) = dr_k_l(&[s(2), s(3)], &int(-5)).unwrap();
        assert_eq!(l.dim(), 1);
    }

    #[test]
    fn middle_examples() {
        // Oracle: for scalars a, b with a, b, lambda, a+b+lambda nonzero nothing is
        // killed, so the induced matrices are the convolution itself.
        let mc = dr_middle_convolution(&[s(2), s(3)], &frac(1, 2)).unwrap();
        assert_eq!(mc.dim(), 2);
        assert_eq!(mc.matrices, mc.convolved);
        let mc0 = dr_middle_convolution(&[s(2), s(3)], &int(0)).unwrap();
        assert_eq!(mc0.dim(), 1);
        assert!(mc0.quotient.direct_sum);
        let zero = dr_middle_convolution(&[s(0), s(0)], &int(1)).unwrap();
        assert_eq!(zero.dim(), 0);
        // phi_zero = [2 3] induces an invertible 1x1 map on mc_0.
        let phi = phi_zero(&[s(2), s(3)]).unwrap();
        let induced = &phi * &mc0.quotient.section;
        assert!(induced.is_invertible());
    }

    fn three_lines(a: &Rational, b: &Rational, g: &Rational) -> PfaffianSystem {
        let h = |id: &str, n: [i64; 2]| Hyperplane::new(id, vec![int(n[0]), int(n[1])], int(0)).unwrap();
        let arr = Arrangement::new(2, vec![h("y", [0, 1]), h("x-y", [1, -1]), h("x", [1, 0])]).unwrap();
        PfaffianSystem::from_ordered(arr, vec![r(a), r(b), r(g)]).unwrap()
    }

    #[test]
    fn three_line_example() {
        let (a, b, g, l) = (frac(1, 2), frac(1, 3), frac(1, 5), frac(1, 7));
        let sys = three_lines(&a, &b, &g);
        let y = Line::new(vec![int(0), int(1)]).unwrap();
        let conv = haraoka_convolution(&sys, &y, &l).unwrap();
        assert_eq!(conv.order, vec!["y", "x-y"]);
        let m = |rows: [[Rational; 2]; 2]| ExactMatrix::from_rows(rows.map(Vec::from).to_vec()).unwrap();
        let z = Rational::zero();
        assert_eq!(conv.system.residue("y").unwrap(), &m([[&a + &l, b.clone()], [z.clone(), z.clone()]]));
        assert_eq!(conv.system.residue("x-y").unwrap(), &m([[z.clone(), z.clone()], [a.clone(), &b + &l]]));
        assert_eq!(conv.system.residue("x").unwrap(), &m([[&g + &b, -&b], [-&a, &g + &a]]));
        let total = conv.system.residues().values().fold(ExactMatrix::zeros(2, 2), |acc, x| &acc + x);
        assert_eq!(total, ExactMatrix::scalar(2, &(&a + &b + &g + &l)));
        let mc = haraoka_middle_convolution(&sys, &y, &l).unwrap();
        assert_eq!(mc.dim(), 2);
        assert!(mc.quotient.k_space.is_zero() && mc.quotient.l_space.is_zero());
        assert_eq!(mc.system.residues(), conv.system.residues());
    }

    #[test]
    fn three_line_degenerate() {
        let y = Line::new(vec![int(0), int(1)]).unwrap();
        let sys = three_lines(&int(0), &frac(1, 3), &frac(1, 5));
        let mc = haraoka_middle_convolution(&sys, &y, &frac(1, 7)).unwrap();
        assert_eq!(mc.quotient.k_space.dim(), 1);
        assert_eq!(mc.dim(), 1);
        let zero = three_lines(&int(0), &int(0), &int(0));
        let conv = haraoka_convolution(&zero, &y, &int(0)).unwrap();
        assert!(conv.system.residues().values().all(ExactMatrix::is_zero));
    }

    #[test]
    fn points_on_a_line_match_dr() {
        let h = |id: &str, c: i64| Hyperplane::new(id, vec![int(1)], int(-c)).unwrap();
        let arr = Arrangement::new(1, vec![h("p0", 0), h("p1", 1), h("p2", 3)]).unwrap();
        let a = vec![ExactMatrix::from_i64(&[&[1, 2], &[0, 3]]), ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]), ExactMatrix::from_i64(&[&[2, 0], &[5, -1]])];
        let sys = PfaffianSystem::from_ordered(arr, a.clone()).unwrap();
        let conv = haraoka_convolution(&sys, &Line::new(vec![int(1)]).unwrap(), &frac(2, 3)).unwrap();
        let dr = dr_convolution(&a, &frac(2, 3)).unwrap();
        assert_eq!(conv.system.ordered_residues(), dr.iter().collect::<Vec<_>>());
    }

    #[test]
    fn phi_compose_intertwines() {
        let a = vec![ExactMatrix::from_i64(&[&[1, 2], &[0, 3]]), ExactMatrix::from_i64(&[&[0, 1], &[1, 0]])];
        let (lambda, mu) = (frac(1, 2), frac(-1, 3));
        let inner = dr_convolution(&a, &mu).unwrap();
        let outer = dr_convolution(&inner, &lambda).unwrap();
        let target = dr_convolution(&a, &(&lambda + &mu)).unwrap();
        let phi = phi_compose(&a, &lambda, &mu).unwrap();
        for (d, c) in outer.iter().zip(&target) {
            assert_eq!(&phi * d, c * &phi);
        }
        let phi0 = phi_zero(&a).unwrap();
        let c0 = dr_convolution(&a, &int(0)).unwrap();
        for (c, ai) in c0.iter().zip(&a) {
            assert_eq!(&phi0 * c, ai * &phi0);
        }
    }
}
