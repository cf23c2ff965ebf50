//! Structural checks on matrix tuples and Pfaffian systems: conditions (*)
//! and (**), absolute irreducibility, isomorphism search, the composition
//! law for middle convolution, and Riemann-Hilbert hypotheses.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{split_parallel, Line};
use crate::convolution::{dr_middle_convolution, phi_zero};
use crate::error::{Error, Result};
use crate::exact::{
    induced_map, integer_spectrum_hits, kernel, pencil_full_rank, ExactMatrix, Poly, PolyMatrix,
    Rational, Subspace,
};
use crate::holonomy::{residue_sum, PfaffianSystem};

/// Default seed for randomized searches.
pub const DEFAULT_SEED: u64 = 0x6d63_766c_6965;

/// A value of `c` where a condition fails, with a vector showing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarWitness {
    /// 1-based generator index.
    pub generator: usize,
    pub c: Rational,
    /// For (*): a common kernel vector. For (**): a covector vanishing on the sum of images.
    pub vector: Vec<Rational>,
}

/// Defect polynomials of one generator; a nonzero constant means the
/// condition holds for that generator at every `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDefect {
    pub generator: usize,
    pub star: Poly,
    pub dstar: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub holds_star: bool,
    pub holds_dstar: bool,
    pub defects: Vec<GeneratorDefect>,
    pub star_witness: Option<StarWitness>,
    pub dstar_witness: Option<StarWitness>,
}

impl StarReport {
    pub fn holds(&self) -> bool {
        self.holds_star && self.holds_dstar
    }
}

fn tuple_size(a: &[ExactMatrix]) -> Result<usize> {
    let d = a.first().ok_or_else(|| Error::InvalidInput("empty matrix tuple".into()))?.rows();
    if a.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::DimensionMismatch("matrices of different sizes".into()));
    }
    Ok(d)
}

/// The pencil `[A_i - c; A_j (j != i)]`, built from `mats` (already
/// transposed for (**)).
fn stacked_pencil(mats: &[ExactMatrix], i: usize) -> Result<PolyMatrix> {
    let d = mats[0].rows();
    let mut constant: Vec<&ExactMatrix> = vec![&mats[i]];
    constant.extend(mats.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, m)| m));
    let constant = ExactMatrix::vstack(&constant)?;
    let mut linear = ExactMatrix::zeros(constant.rows(), d);
    linear.set_block(0, 0, &ExactMatrix::scalar(d, &-Rational::one()));
    PolyMatrix::pencil(&constant, &linear)
}

fn find_witness(pencil: &PolyMatrix, defect: &Poly, generator: usize) -> Option<StarWitness> {
    let candidates =
        if defect.is_zero() { vec![Rational::zero()] } else { defect.rational_roots() };
    candidates.into_iter().find_map(|c| {
        let k = kernel(&pencil.eval(&c));
        k.vectors().first().map(|v| StarWitness { generator, c, vector: v.clone() })
    })
}

/// Decides (*) `Ker(A_i - c) ∩ ⋂_{j≠i} Ker A_j = 0` and
/// (**) `Im(A_i - c) + Σ_{j≠i} Im A_j = V` for all complex `c` and all `i`.
pub fn check_star_conditions(a: &[ExactMatrix]) -> Result<StarReport> {
    tuple_size(a)?;
    let transposed: Vec<ExactMatrix> = a.iter().map(ExactMatrix::transpose).collect();
    let mut report = StarReport {
        holds_star: true,
        holds_dstar: true,
        defects: Vec::new(),
        star_witness: None,
        dstar_witness: None,
    };
    for i in 0..a.len() {
        let star = stacked_pencil(a, i)?;
        let dstar = stacked_pencil(&transposed, i)?;
        let s = pencil_full_rank(&star)?;
        let ds = pencil_full_rank(&dstar)?;
        if !s.full_for_all_c {
            report.holds_star = false;
            if report.star_witness.is_none() {
                report.star_witness = find_witness(&star, &s.defect_poly, i + 1);
            }
        }
        if !ds.full_for_all_c {
            report.holds_dstar = false;
            if report.dstar_witness.is_none() {
                report.dstar_witness = find_witness(&dstar, &ds.defect_poly, i + 1);
            }
        }
        report.defects.push(GeneratorDefect {
            generator: i + 1,
            star: s.defect_poly,
            dstar: ds.defect_poly,
        });
    }
    Ok(report)
}

/// Row-by-row Gaussian elimination keeping a basis of a growing span.
struct SpanBuilder {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl SpanBuilder {
    /// Adds `v` if it is new; returns whether it was.
    fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        for x in &mut v {
            *x *= &inv;
        }
        self.rows.push((p, v));
        true
    }
}

/// Absolute irreducibility: the unital algebra generated by the matrices is
/// all of `M_d`.
pub fn is_irreducible(a: &[ExactMatrix]) -> Result<bool> {
    let d = tuple_size(a)?;
    if d == 0 {
        return Ok(false);
    }
    let target = d * d;
    let mut span = SpanBuilder { rows: Vec::new() };
    let id = ExactMatrix::identity(d);
    span.insert(id.entries().to_vec());
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in a {
            let p = g * &m;
            if span.insert(p.entries().to_vec()) {
                if span.rows.len() == target {
                    return Ok(true);
                }
                frontier.push(p);
            }
        }
    }
    Ok(span.rows.len() == target)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Isomorphic => "isomorphic",
            Verdict::NotIsomorphic => "not_isomorphic",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoResult {
    pub verdict: Verdict,
    /// Invertible `X` with `A_k X = X B_k` for all `k`, when found.
    pub intertwiner: Option<ExactMatrix>,
}

/// Basis of `{X : A_k X = X B_k for all k}`.
pub fn intertwiner_space(a: &[ExactMatrix], b: &[ExactMatrix]) -> Result<Vec<ExactMatrix>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("tuples of different length".into()));
    }
    let (p, q) = (tuple_size(a)?, tuple_size(b)?);
    let mut rows = Vec::new();
    for (ak, bk) in a.iter().zip(b) {
        for r in 0..p {
            for c in 0..q {
                let mut row = vec![Rational::zero(); p * q];
                for k in 0..p {
                    row[k * q + c] += ak.get(r, k);
                }
                for k in 0..q {
                    row[r * q + k] -= bk.get(k, c);
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        ExactMatrix::zeros(0, p * q)
    } else {
        ExactMatrix::from_rows(rows)?
    };
    kernel(&system)
        .vectors()
        .iter()
        .map(|v| ExactMatrix::new(p, q, v.clone()))
        .collect()
}

fn combination(basis: &[ExactMatrix], coeffs: &[i64]) -> ExactMatrix {
    let (r, c) = (basis[0].rows(), basis[0].cols());
    basis.iter().zip(coeffs).fold(ExactMatrix::zeros(r, c), |acc, (m, &k)| {
        &acc + &m.scale(&Rational::from_integer(k.into()))
    })
}

/// Searches for an invertible intertwiner between two tuples of the same
/// length. Sound in every verdict; complete when the intertwiner space has
/// dimension at most 3.
pub fn are_isomorphic(a: &[ExactMatrix], b: &[ExactMatrix], seed: u64) -> Result<IsoResult> {
    let none = |verdict| Ok(IsoResult { verdict, intertwiner: None });
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("tuples of different length".into()));
    }
    if tuple_size(a)? != tuple_size(b)? {
        return none(Verdict::NotIsomorphic);
    }
    let basis = intertwiner_space(a, b)?;
    if basis.is_empty() {
        return none(Verdict::NotIsomorphic);
    }
    let found = |x: ExactMatrix| Ok(IsoResult { verdict: Verdict::Isomorphic, intertwiner: Some(x) });
    if let Some(x) = basis.iter().find(|x| x.is_invertible()) {
        return found(x.clone());
    }
    let k = basis.len();
    let d = basis[0].rows() as i64;
    if k <= 3 {
        // det of a combination is a polynomial of degree <= d in each
        // coefficient, so it vanishes on the grid {0..d}^k only if it is zero.
        let total = (d + 1).pow(k as u32);
        for idx in 0..total {
            let coeffs: Vec<i64> = (0..k).map(|pos| idx / (d + 1).pow(pos as u32) % (d + 1)).collect();
            let x = combination(&basis, &coeffs);
            if x.is_invertible() {
                return found(x);
            }
        }
        return none(Verdict::NotIsomorphic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(-50..=50)).collect();
        let x = combination(&basis, &coeffs);
        if x.is_invertible() {
            return found(x);
        }
    }
    none(Verdict::Unknown)
}

/// One failed Riemann-Hilbert hypothesis: a nonzero integer eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhOffender {
    /// Hyperplane id, or `"sum"` for the shifted transverse residue sum.
    pub source: String,
    pub eigenvalue: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhReport {
    pub pass: bool,
    pub offenders: Vec<RhOffender>,
}

/// No transverse residue and no `Σ transverse residues + lambda` may have an
/// eigenvalue in `Z \ {0}`.
pub fn rh_hypotheses(s: &PfaffianSystem, y: &Line, lambda: &Rational) -> Result<RhReport> {
    if lambda.is_zero() {
        return Err(Error::Precondition("the Riemann-Hilbert hypotheses need lambda != 0".into()));
    }
    let (_, transverse) = split_parallel(s.arrangement(), y)?;
    let mut offenders = Vec::new();
    for id in transverse.ids() {
        for m in integer_spectrum_hits(s.residue(&id)?, &Rational::zero())? {
            offenders.push(RhOffender { source: id.clone(), eigenvalue: m });
        }
    }
    let sum = residue_sum(s, &transverse.ids())?;
    for m in integer_spectrum_hits(&sum, lambda)? {
        offenders.push(RhOffender { source: "sum".into(), eigenvalue: m });
    }
    Ok(RhReport { pass: offenders.is_empty(), offenders })
}

/// Outcome of [`composition_harness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionReport {
    pub star: StarReport,
    /// `None` when (*) or (**) fails.
    pub result: Option<CompositionResult>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    /// Dimensions of `mc_mu(V)`, `mc_lambda(mc_mu(V))` and `mc_{lambda+mu}(V)`.
    pub dims: [usize; 3],
    /// Map `mc_lambda(mc_mu(V)) -> mc_{lambda+mu}(V)` induced by the
    /// composition map.
    pub intertwiner: ExactMatrix,
    pub isomorphic: bool,
    /// When `lambda + mu = 0`: the map `mc_lambda(mc_mu(V)) -> V`, and
    /// whether it is an invertible intertwiner.
    pub identity_witness: Option<(ExactMatrix, bool)>,
}

fn intertwines(x: &ExactMatrix, source: &[ExactMatrix], target: &[ExactMatrix]) -> bool {
    source.iter().zip(target).all(|(s, t)| &(x * s) == &(t * x))
}

/// Checks `mc_lambda(mc_mu(V)) ≅ mc_{lambda+mu}(V)` with an explicit map
/// when (*) and (**) hold.
pub fn composition_harness(
    a: &[ExactMatrix],
    lambda: &Rational,
    mu: &Rational,
) -> Result<CompositionReport> {
    let star = check_star_conditions(a)?;
    if !star.holds() {
        return Ok(CompositionReport { star, result: None });
    }
    let d = tuple_size(a)?;
    let sum = lambda + mu;
    let first = dr_middle_convolution(a, mu)?;
    let second = dr_middle_convolution(&first.matrices, lambda)?;
    let direct = dr_middle_convolution(a, &sum)?;

    // Outer block i, inner w in complement coordinates of mc_mu  ->  C_i^mu (section w).
    let lifted: Vec<ExactMatrix> =
        first.convolved.iter().map(|c| c * &first.quotient.section).collect();
    let phi = ExactMatrix::hstack(&lifted.iter().collect::<Vec<_>>())?;
    let source = second.quotient.k_space.sum(&second.quotient.l_space)?;
    let target = direct.quotient.k_space.sum(&direct.quotient.l_space)?;
    let psi = induced_map(&phi, &source, &target)?;
    let isomorphic = psi.is_invertible() && intertwines(&psi, &second.matrices, &direct.matrices);

    let identity_witness = if sum.is_zero() {
        let back = induced_map(&phi_zero(a)?, &target, &Subspace::zero(d))?;
        let w = &back * &psi;
        let ok = w.is_invertible() && intertwines(&w, &second.matrices, a);
        Some((w, ok))
    } else {
        None
    };
    Ok(CompositionReport {
        star,
        result: Some(CompositionResult {
            dims: [first.dim(), second.dim(), direct.dim()],
            intertwiner: psi,
            isomorphic,
            identity_witness,
        }),
    })
}
