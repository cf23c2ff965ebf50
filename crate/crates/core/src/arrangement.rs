//! Affine hyperplane arrangements over `Q^l`: canonical forms, codimension-2
//! flats, the parallel split along a line, and Y-closure.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::rref;
use crate::exact::rational::{format_rational, Rational};

/// Zero set of `normal . x + offset`, scaled so the first nonzero entry of
/// the normal is 1. Equality compares the locus only; the id is a label.
#[derive(Clone, Debug, Eq)]
pub struct Hyperplane {
    id: String,
    normal: Vec<Rational>,
    offset: Rational,
}

impl PartialEq for Hyperplane {
    fn eq(&self, other: &Self) -> bool {
        self.normal == other.normal && self.offset == other.offset
    }
}

/// Scales `(normal, offset)` so the first nonzero normal entry is 1.
pub fn canonicalize(normal: &[Rational], offset: &Rational) -> Result<(Vec<Rational>, Rational)> {
    let lead = normal.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroNormal)?;
    let inv = lead.recip();
    Ok((normal.iter().map(|c| c * &inv).collect(), offset * &inv))
}

impl Hyperplane {
    pub fn new(id: impl Into<String>, normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        let (normal, offset) = canonicalize(&normal, &offset)?;
        Ok(Hyperplane { id: id.into(), normal, offset })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `(normal | offset)` as one row.
    pub fn augmented(&self) -> Vec<Rational> {
        let mut row = self.normal.clone();
        row.push(self.offset.clone());
        row
    }

    pub fn with_id(&self, id: impl Into<String>) -> Self {
        Hyperplane { id: id.into(), ..self.clone() }
    }

    /// Human-readable equation such as `x1 - x2 + 3 = 0`.
    pub fn equation(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format_rational(&mag));
                s.push('*');
            }
            s.push_str(&format!("x{}", i + 1));
        }
        if !self.offset.is_zero() {
            let neg = self.offset < Rational::zero();
            let mag = if neg { -self.offset.clone() } else { self.offset.clone() };
            s.push_str(if neg { " - " } else { " + " });
            s.push_str(&format_rational(&mag));
        }
        s.push_str(" = 0");
        s
    }
}

/// Line through the origin, direction scaled so its first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    direction: Vec<Rational>,
}

impl Line {
    pub fn new(direction: Vec<Rational>) -> Result<Self> {
        let lead = direction
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidInput("line direction must be nonzero".into()))?;
        let inv = lead.recip();
        Ok(Line { direction: direction.iter().map(|c| c * &inv).collect() })
    }

    pub fn direction(&self) -> &[Rational] {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Ordered list of pairwise distinct hyperplanes in `Q^dim` with unique ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let mut seen_ids = std::collections::BTreeSet::new();
        for (k, h) in hyperplanes.iter().enumerate() {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "hyperplane `{}` lives in dimension {}, arrangement in {dim}",
                    h.id,
                    h.dim()
                )));
            }
            if !seen_ids.insert(h.id.clone()) {
                return Err(Error::DuplicateHyperplane(format!("id `{}` used twice", h.id)));
            }
            if let Some(prev) = hyperplanes[..k].iter().find(|p| *p == h) {
                return Err(Error::DuplicateHyperplane(format!(
                    "`{}` and `{}` are the same hyperplane",
                    prev.id, h.id
                )));
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    /// Braid arrangement `{z_i = z_j : i < j}` in `Q^k`, ids `H{i}{j}`.
    pub fn braid(k: usize) -> Self {
        let mut hs = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let mut normal = vec![Rational::zero(); k];
                normal[i] = Rational::one();
                normal[j] = -Rational::one();
                let id = if k <= 9 {
                    format!("H{}{}", i + 1, j + 1)
                } else {
                    format!("H{}_{}", i + 1, j + 1)
                };
                hs.push(Hyperplane::new(id, normal, Rational::zero()).expect("nonzero normal"));
            }
        }
        Arrangement::new(k, hs).expect("braid hyperplanes are distinct")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn ids(&self) -> Vec<String> {
        self.hyperplanes.iter().map(|h| h.id.clone()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Hyperplane> {
        self.hyperplanes.iter().find(|h| h.id == id)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.hyperplanes.iter().position(|h| h.id == id)
    }

    /// Member with the same locus as `h`, if any.
    pub fn find_locus(&self, h: &Hyperplane) -> Option<&Hyperplane> {
        self.hyperplanes.iter().find(|g| *g == h)
    }

    fn check_line(&self, y: &Line) -> Result<()> {
        if y.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "line in dimension {}, arrangement in {}",
                y.dim(),
                self.dim
            )));
        }
        Ok(())
    }
}

/// A codimension-2 flat: canonical equations plus the maximal family of
/// hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat2 {
    /// Two rows `(normal | offset)` in reduced echelon form.
    pub equations: [Vec<Rational>; 2],
    /// Ids of all hyperplanes containing the flat, sorted.
    pub family: Vec<String>,
}

impl Flat2 {
    /// Stable textual key of the equations.
    pub fn key(&self) -> String {
        self.equations
            .iter()
            .map(|row| row.iter().map(format_rational).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("|")
    }

    fn linear(&self, k: usize) -> &[Rational] {
        let row = &self.equations[k];
        &row[..row.len() - 1]
    }

    /// Whether the direction `v` lies in the direction space of the flat.
    pub fn contains_direction(&self, v: &[Rational]) -> bool {
        dot(self.linear(0), v).is_zero() && dot(self.linear(1), v).is_zero()
    }

    /// The hyperplane spanned by the flat and the direction `v`, or `None`
    /// when `v` is already parallel to the flat.
    pub fn join_direction(&self, v: &[Rational]) -> Option<(Vec<Rational>, Rational)> {
        let a = dot(self.linear(0), v);
        let b = dot(self.linear(1), v);
        if a.is_zero() && b.is_zero() {
            return None;
        }
        // (b * row0 - a * row1) has linear part orthogonal to v.
        let row: Vec<Rational> = self.equations[0]
            .iter()
            .zip(&self.equations[1])
            .map(|(r0, r1)| &b * r0 - &a * r1)
            .collect();
        let (offset, normal) = row.split_last().unwrap();
        canonicalize(normal, offset).ok()
    }

    pub fn contains_hyperplane(&self, h: &Hyperplane) -> bool {
        let rows = vec![self.equations[0].clone(), self.equations[1].clone(), h.augmented()];
        rref(rows, h.dim() + 1).pivots.len() == 2
    }
}

/// Every codimension-2 flat of the arrangement, once each, in order of the
/// first pair of hyperplanes cutting it.
pub fn codim2_flats(a: &Arrangement) -> Vec<Flat2> {
    let hs = &a.hyperplanes;
    let mut keys: BTreeMap<Vec<Vec<Rational>>, usize> = BTreeMap::new();
    let mut flats: Vec<Flat2> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let ech = rref(vec![hs[i].augmented(), hs[j].augmented()], a.dim + 1);
            // Independent linear parts means both pivots fall before the offset column;
            // a pivot in the offset column means the pair is parallel and disjoint.
            if ech.pivots.len() != 2 || ech.pivots[1] >= a.dim {
                continue;
            }
            if keys.contains_key(&ech.rows) {
                continue;
            }
            keys.insert(ech.rows.clone(), flats.len());
            let mut rows = ech.rows.into_iter();
            flats.push(Flat2 {
                equations: [rows.next().unwrap(), rows.next().unwrap()],
                family: Vec::new(),
            });
        }
    }
    for flat in &mut flats {
        let mut family: Vec<String> =
            hs.iter().filter(|h| flat.contains_hyperplane(h)).map(|h| h.id.clone()).collect();
        family.sort();
        flat.family = family;
    }
    flats
}

/// Splits into hyperplanes parallel to `y` (normal orthogonal to the
/// direction) and the transverse rest, preserving order.
pub fn split_parallel(a: &Arrangement, y: &Line) -> Result<(Arrangement, Arrangement)> {
    a.check_line(y)?;
    let (par, trans): (Vec<Hyperplane>, Vec<Hyperplane>) =
        a.hyperplanes.iter().cloned().partition(|h| dot(&h.normal, &y.direction).is_zero());
    Ok((Arrangement { dim: a.dim, hyperplanes: par }, Arrangement { dim: a.dim, hyperplanes: trans }))
}

pub fn is_parallel(h: &Hyperplane, y: &Line) -> bool {
    dot(&h.normal, &y.direction).is_zero()
}

/// Whether `X + Y` belongs to the arrangement for every codimension-2 flat `X`.
pub fn is_y_closed(a: &Arrangement, y: &Line) -> Result<bool> {
    a.check_line(y)?;
    Ok(codim2_flats(a).iter().all(|x| match x.join_direction(&y.direction) {
        None => true,
        Some((normal, offset)) => {
            a.hyperplanes.iter().any(|h| h.normal == normal && h.offset == offset)
        }
    }))
}

/// Id given to a hyperplane added by [`y_closure`].
pub fn closure_id(flat: &Flat2) -> String {
    format!("cl:{}", flat.key())
}

/// Smallest Y-closed arrangement containing `a`: the members of `a` followed
/// by every missing `X + Y`, deduplicated, with ids `cl:<flat key>`.
///
/// One pass always suffices; the pass is repeated and a second pass that
/// adds anything is reported as an internal error.
pub fn y_closure(a: &Arrangement, y: &Line) -> Result<Arrangement> {
    a.check_line(y)?;
    let mut current = a.clone();
    for pass in 0.. {
        let mut added = Vec::new();
        for x in codim2_flats(&current) {
            let Some((normal, offset)) = x.join_direction(&y.direction) else { continue };
            let h = Hyperplane { id: closure_id(&x), normal, offset };
            if current.find_locus(&h).is_none() && !added.contains(&h) {
                added.push(h);
            }
        }
        if added.is_empty() {
            break;
        }
        if pass > 0 {
            return Err(Error::Internal(format!(
                "Y-closure did not stabilize after one pass ({} more hyperplane(s) on pass {})",
                added.len(),
                pass + 1
            )));
        }
        let mut hs = current.hyperplanes;
        for h in added {
            if hs.iter().any(|g| g.id == h.id) {
                return Err(Error::Internal(format!("generated id `{}` collides", h.id)));
            }
            hs.push(h);
        }
        current = Arrangement::new(a.dim, hs)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn hp(id: &str, normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane::new(id, normal.iter().map(|&v| int(v)).collect(), int(offset)).unwrap()
    }

    fn line(dir: &[i64]) -> Line {
        Line::new(dir.iter().map(|&v| int(v)).collect()).unwrap()
    }

    fn ids(a: &Arrangement) -> Vec<String> {
        a.ids()
    }

    #[test]
    fn canonicalize_examples() {
        let h = hp("a", &[2, 0], 4);
        assert_eq!((h.normal().to_vec(), h.offset().clone()), (vec![int(1), int(0)], int(2)));
        let h = hp("b", &[1, -1], 0);
        assert_eq!(h.normal(), &[int(1), int(-1)]);
        let h = hp("c", &[0, -3], 6);
        assert_eq!((h.normal().to_vec(), h.offset().clone()), (vec![int(0), int(1)], int(-2)));
        assert_eq!(canonicalize(&[int(0), int(0)], &int(1)), Err(Error::ZeroNormal));
    }

    #[test]
    fn arrangement_rejects_duplicates() {
        let r = Arrangement::new(2, vec![hp("a", &[1, 0], 0), hp("b", &[2, 0], 0)]);
        assert!(matches!(r, Err(Error::DuplicateHyperplane(_))));
        let r = Arrangement::new(2, vec![hp("a", &[1, 0], 0), hp("a", &[0, 1], 0)]);
        assert!(matches!(r, Err(Error::DuplicateHyperplane(_))));
        let r = Arrangement::new(3, vec![hp("a", &[1, 0], 0)]);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn codim2_examples() {
        let single = Arrangement::new(2, vec![hp("a", &[1, 0], 0)]).unwrap();
        assert!(codim2_flats(&single).is_empty());
        let flats = codim2_flats(&Arrangement::braid(3));
        assert_eq!(flats.len(), 1);
        assert_eq!(flats[0].family, vec!["H12", "H13", "H23"]);
        let par = Arrangement::new(2, vec![hp("a", &[1, 0], 0), hp("b", &[1, 0], -1)]).unwrap();
        assert!(codim2_flats(&par).is_empty());
    }

    #[test]
    fn braid4_flats() {
        let flats = codim2_flats(&Arrangement::braid(4));
        let mut sizes: Vec<usize> = flats.iter().map(|f| f.family.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3, 3, 3]);
        assert!(flats.iter().any(|f| f.family == vec!["H12", "H34"]));
    }

    #[test]
    fn split_examples() {
        let (p, t) = split_parallel(&Arrangement::braid(3), &line(&[0, 0, 1])).unwrap();
        assert_eq!(ids(&p), vec!["H12"]);
        assert_eq!(ids(&t), vec!["H13", "H23"]);
        let axes = Arrangement::new(2, vec![hp("x", &[1, 0], 0), hp("y", &[0, 1], 0)]).unwrap();
        let (p, t) = split_parallel(&axes, &line(&[1, 1])).unwrap();
        assert!(p.is_empty());
        assert_eq!(t.len(), 2);
        let three = Arrangement::new(
            2,
            vec![hp("x", &[1, 0], 0), hp("y", &[0, 1], 0), hp("d", &[1, -1], 0)],
        )
        .unwrap();
        let (p, _) = split_parallel(&three, &line(&[0, 1])).unwrap();
        assert_eq!(ids(&p), vec!["x"]);
        assert!(split_parallel(&three, &line(&[1, 0, 0])).is_err());
    }

    #[test]
    fn y_closed_examples() {
        let single = Arrangement::new(2, vec![hp("a", &[1, 2], 3)]).unwrap();
        assert!(is_y_closed(&single, &line(&[1, 1])).unwrap());
        assert!(is_y_closed(&Arrangement::braid(3), &line(&[0, 0, 1])).unwrap());
        let axes = Arrangement::new(2, vec![hp("x", &[1, 0], 0), hp("y", &[0, 1], 0)]).unwrap();
        assert!(!is_y_closed(&axes, &line(&[1, 1])).unwrap());
    }

    #[test]
    fn closure_examples() {
        let axes = Arrangement::new(2, vec![hp("x", &[1, 0], 0), hp("y", &[0, 1], 0)]).unwrap();
        let y = line(&[1, 1]);
        let cl = y_closure(&axes, &y).unwrap();
        assert_eq!(cl.len(), 3);
        assert_eq!(cl.hyperplanes()[2], hp("?", &[1, -1], 0));
        assert_eq!(cl.hyperplanes()[2].id(), "cl:1,0,0|0,1,0");
        assert!(is_y_closed(&cl, &y).unwrap());
        assert_eq!(y_closure(&cl, &y).unwrap(), cl);
        let braid = Arrangement::braid(3);
        assert_eq!(y_closure(&braid, &line(&[0, 0, 1])).unwrap(), braid);
    }
}
