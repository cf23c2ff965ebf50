//! Kohno presentation of the holonomy Lie algebra of an arrangement
//! complement, and logarithmic Pfaffian systems given by residue matrices.
//!
//! A [`PfaffianSystem`] doubles as a module over the holonomy Lie algebra:
//! hyperplane `H` acts by its residue `A_H`, and the module relations are
//! exactly the integrability conditions.

use std::collections::BTreeMap;

use crate::arrangement::{codim2_flats, Arrangement};
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;

/// Generators and relation families `[H_j, H_1 + ... + H_m] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relation_families: Vec<Vec<String>>,
}

impl Presentation {
    /// Expands the families into individual relations `(member, family)`,
    /// skipping the last member of each family (it is implied by the others).
    pub fn relations(&self) -> Vec<(String, Vec<String>)> {
        self.relation_families
            .iter()
            .flat_map(|fam| fam[..fam.len() - 1].iter().map(move |h| (h.clone(), fam.clone())))
            .collect()
    }
}

pub fn presentation(a: &Arrangement) -> Presentation {
    Presentation {
        generators: a.ids(),
        relation_families: codim2_flats(a).into_iter().map(|f| f.family).collect(),
    }
}

/// Arrangement plus one `rank x rank` residue matrix per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianSystem {
    arrangement: Arrangement,
    rank: usize,
    residues: BTreeMap<String, ExactMatrix>,
}

impl PfaffianSystem {
    pub fn new(
        arrangement: Arrangement,
        rank: usize,
        residues: BTreeMap<String, ExactMatrix>,
    ) -> Result<Self> {
        for id in arrangement.ids() {
            match residues.get(&id) {
                None => return Err(Error::InvalidInput(format!("no residue for hyperplane `{id}`"))),
                Some(m) if m.rows() != rank || m.cols() != rank => {
                    return Err(Error::DimensionMismatch(format!(
                        "residue of `{id}` is {}x{}, expected {rank}x{rank}",
                        m.rows(),
                        m.cols()
                    )))
                }
                Some(_) => {}
            }
        }
        if let Some(extra) = residues.keys().find(|k| arrangement.get(k).is_none()) {
            return Err(Error::UnknownId(extra.clone()));
        }
        Ok(PfaffianSystem { arrangement, rank, residues })
    }

    /// Residues given in arrangement order.
    pub fn from_ordered(arrangement: Arrangement, residues: Vec<ExactMatrix>) -> Result<Self> {
        if residues.len() != arrangement.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} residues for {} hyperplanes",
                residues.len(),
                arrangement.len()
            )));
        }
        let rank = residues.first().map_or(0, ExactMatrix::rows);
        let map = arrangement.ids().into_iter().zip(residues).collect();
        Self::new(arrangement, rank, map)
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn residues(&self) -> &BTreeMap<String, ExactMatrix> {
        &self.residues
    }

    pub fn residue(&self, id: &str) -> Result<&ExactMatrix> {
        self.residues.get(id).ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    /// Residues in arrangement order.
    pub fn ordered_residues(&self) -> Vec<&ExactMatrix> {
        self.arrangement.hyperplanes().iter().map(|h| &self.residues[h.id()]).collect()
    }

    /// Same arrangement, every residue replaced by `p^{-1} A p`.
    pub fn conjugate(&self, p: &ExactMatrix, p_inv: &ExactMatrix) -> Self {
        let residues = self.residues.iter().map(|(k, a)| (k.clone(), &(p_inv * a) * p)).collect();
        PfaffianSystem { arrangement: self.arrangement.clone(), rank: self.rank, residues }
    }
}

/// A nonzero commutator `[A_{member}, sum of the family]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub family: Vec<String>,
    /// Position of the offending member inside `family`.
    pub member: usize,
    pub commutator: ExactMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntegrabilityReport {
    pub violations: Vec<Violation>,
}

impl IntegrabilityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `[A_H, sum_{H' in F} A_{H'}] = 0` for every codimension-2 family `F`
/// and every member `H` (all members, for per-member diagnostics).
pub fn check_integrability(s: &PfaffianSystem) -> IntegrabilityReport {
    let mut violations = Vec::new();
    for family in presentation(&s.arrangement).relation_families {
        let total = family
            .iter()
            .map(|id| &s.residues[id])
            .fold(ExactMatrix::zeros(s.rank, s.rank), |acc, m| &acc + m);
        for (member, id) in family.iter().enumerate() {
            let c = s.residues[id].commutator(&total);
            if !c.is_zero() {
                violations.push(Violation { family: family.clone(), member, commutator: c });
            }
        }
    }
    IntegrabilityReport { violations }
}

pub fn require_integrable(s: &PfaffianSystem) -> Result<()> {
    let report = check_integrability(s);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::NotIntegrable(report.violations.len()))
    }
}

/// Pulls the system back to a larger arrangement: hyperplanes of `target`
/// not in the source get zero residue. Source hyperplanes are matched by
/// locus and keep their residues under the target's ids.
pub fn zero_extend(s: &PfaffianSystem, target: &Arrangement) -> Result<PfaffianSystem> {
    if target.dim() != s.arrangement.dim() {
        return Err(Error::DimensionMismatch("arrangements of different dimension".into()));
    }
    require_integrable(s)?;
    let mut residues = BTreeMap::new();
    for h in s.arrangement.hyperplanes() {
        let t = target.find_locus(h).ok_or_else(|| Error::NotSubarrangement(h.id().to_string()))?;
        residues.insert(t.id().to_string(), s.residues[h.id()].clone());
    }
    for h in target.hyperplanes() {
        residues
            .entry(h.id().to_string())
            .or_insert_with(|| ExactMatrix::zeros(s.rank, s.rank));
    }
    let out = PfaffianSystem::new(target.clone(), s.rank, residues)?;
    let report = check_integrability(&out);
    if !report.is_ok() {
        return Err(Error::Internal(format!(
            "zero extension broke integrability ({} violation(s))",
            report.violations.len()
        )));
    }
    Ok(out)
}

/// Entrywise sum of the residues with the given ids.
pub fn residue_sum(s: &PfaffianSystem, ids: &[String]) -> Result<ExactMatrix> {
    ids.iter().try_fold(ExactMatrix::zeros(s.rank, s.rank), |acc, id| Ok(&acc + s.residue(id)?))
}

/// Operator on `(Q^m)^{tensor k}` exchanging tensor slots `i` and `j`
/// (0-based), in the lexicographic basis.
pub fn slot_swap(m: usize, k: usize, i: usize, j: usize) -> ExactMatrix {
    let size = m.pow(k as u32);
    let mut p = ExactMatrix::zeros(size, size);
    for idx in 0..size {
        let mut digits: Vec<usize> =
            (0..k).map(|pos| idx / m.pow((k - 1 - pos) as u32) % m).collect();
        digits.swap(i, j);
        let target = digits.iter().fold(0, |acc, d| acc * m + d);
        p.set(target, idx, num_traits::One::one());
    }
    p
}

/// Braid arrangement in `Q^k` with the Knizhnik-Zamolodchikov residues
/// `A_{H_ij} = slot swap (i, j)` on `(Q^m)^{tensor k}`.
pub fn kz_system(k: usize, m: usize) -> PfaffianSystem {
    let arr = Arrangement::braid(k);
    let mut residues = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            residues.push(slot_swap(m, k, i, j));
        }
    }
    PfaffianSystem::from_ordered(arr, residues).expect("one residue per braid hyperplane")
}
