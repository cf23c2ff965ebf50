//! Derivations of the free Lie algebra, the infinitesimal braid action of the
//! Drinfeld-Kohno algebra, and checks of its defining relations.

use std::fmt;

use num_traits::One;

use super::element::{add_term, assoc_add_scaled, AssocPoly, LieElement};
use super::word::{check_caps, lyndon_basis, Word};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// A derivation, determined by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    n: usize,
    images: Vec<LieElement>,
    /// The images expanded in the free associative algebra.
    assoc_images: Vec<AssocPoly>,
}

impl Derivation {
    pub fn new(n: usize, images: Vec<LieElement>) -> Result<Self> {
        if images.len() != n || images.iter().any(|e| e.n_generators() != n) {
            return Err(Error::DimensionMismatch(format!("derivation of L_{n} needs {n} images")));
        }
        Ok(Self::from_images(n, images))
    }

    fn from_images(n: usize, images: Vec<LieElement>) -> Self {
        let assoc_images = images.iter().map(LieElement::to_assoc).collect();
        Derivation { n, images, assoc_images }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_images(n, vec![LieElement::zero(n); n])
    }

    pub fn n_generators(&self) -> usize {
        self.n
    }

    /// Image of `x_k` (1-based).
    pub fn image(&self, k: usize) -> &LieElement {
        &self.images[k - 1]
    }

    /// Extends to the free associative algebra letter by letter: each letter
    /// of each word is replaced in turn by its image.
    pub(crate) fn apply_assoc(&self, p: &AssocPoly) -> AssocPoly {
        let mut out = AssocPoly::new();
        for (w, c) in p {
            for k in 0..w.len() {
                for (u, cu) in &self.assoc_images[w[k] as usize - 1] {
                    let mut word = Vec::with_capacity(w.len() + u.len() - 1);
                    word.extend_from_slice(&w[..k]);
                    word.extend_from_slice(u);
                    word.extend_from_slice(&w[k + 1..]);
                    add_term(&mut out, word, c * cu);
                }
            }
        }
        out
    }

    pub fn apply(&self, e: &LieElement) -> LieElement {
        assert_eq!(e.n_generators(), self.n, "derivation and element on different algebras");
        LieElement::from_assoc(self.n, self.apply_assoc(&e.to_assoc()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_images(self.n, self.images.iter().zip(&other.images).map(|(a, b)| a.add(b)).collect())
    }

    /// `[self, other] = self o other - other o self`, evaluated on generators.
    pub fn commutator(&self, other: &Self) -> Self {
        let images = (1..=self.n)
            .map(|k| self.apply(other.image(k)).sub(&other.apply(self.image(k))))
            .collect();
        Self::from_images(self.n, images)
    }
}

/// `theta(A_{ij})`: `x_i -> [x_i, x_j]`, `x_j -> [x_j, x_i]`, other generators to 0.
pub fn theta(i: usize, j: usize, n: usize) -> Result<Derivation> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange(format!("A_{{{i},{j}}} with n = {n}")));
    }
    let xi = LieElement::generator(n, i)?;
    let xj = LieElement::generator(n, j)?;
    let mut images = vec![LieElement::zero(n); n];
    images[i - 1] = xi.bracket(&xj);
    images[j - 1] = xj.bracket(&xi);
    Ok(Derivation::from_images(n, images))
}

/// Bracket expression in the generators `A_{ij}` of the Drinfeld-Kohno algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DkWord {
    Gen(usize, usize),
    Bracket(Box<DkWord>, Box<DkWord>),
}

impl DkWord {
    pub fn bracket(a: DkWord, b: DkWord) -> Self {
        DkWord::Bracket(Box::new(a), Box::new(b))
    }

    /// Number of generator leaves.
    pub fn degree(&self) -> usize {
        match self {
            DkWord::Gen(..) => 1,
            DkWord::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DkWord::Gen(..) => 0,
            DkWord::Bracket(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn max_index(&self) -> usize {
        match self {
            DkWord::Gen(i, j) => *i.max(j),
            DkWord::Bracket(a, b) => a.max_index().max(b.max_index()),
        }
    }

    /// `theta(sigma)` as nested commutators of derivations.
    pub fn theta(&self, n: usize) -> Result<Derivation> {
        match self {
            DkWord::Gen(i, j) => theta(*i, *j, n),
            DkWord::Bracket(a, b) => Ok(a.theta(n)?.commutator(&b.theta(n)?)),
        }
    }

    /// Parses `A12` or `[A13,[A12,A23]]` (single-digit indices).
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let w = parse_dk(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::InvalidInput(format!("trailing input in `{text}`")));
        }
        Ok(w)
    }
}

fn parse_dk(s: &[char], pos: &mut usize) -> Result<DkWord> {
    let bad = |what: &str| Error::InvalidInput(format!("bad bracket expression: {what}"));
    match s.get(*pos) {
        Some('A') => {
            let digit = |c: Option<&char>| c.and_then(|c| c.to_digit(10)).map(|d| d as usize);
            let i = digit(s.get(*pos + 1)).ok_or_else(|| bad("expected index after A"))?;
            let j = digit(s.get(*pos + 2)).ok_or_else(|| bad("expected two indices after A"))?;
            *pos += 3;
            Ok(DkWord::Gen(i, j))
        }
        Some('[') => {
            *pos += 1;
            let a = parse_dk(s, pos)?;
            if s.get(*pos) != Some(&',') {
                return Err(bad("expected `,`"));
            }
            *pos += 1;
            let b = parse_dk(s, pos)?;
            if s.get(*pos) != Some(&']') {
                return Err(bad("expected `]`"));
            }
            *pos += 1;
            Ok(DkWord::bracket(a, b))
        }
        _ => Err(bad("expected `A` or `[`")),
    }
}

impl fmt::Display for DkWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DkWord::Gen(i, j) => write!(f, "A{i}{j}"),
            DkWord::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// First relation found not to hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidViolation {
    pub relation: String,
    pub element: Word,
    pub value: LieElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidCheck {
    /// Number of (relation, basis element) evaluations performed.
    pub evaluations: usize,
    pub violation: Option<BraidViolation>,
}

impl BraidCheck {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the infinitesimal braid relations for `theta` on every Lyndon basis
/// element of degree `<= max_degree`:
/// `A_ij = A_ji`, `[A_ik, A_ij + A_jk] = 0`, `[A_ij, A_kl] = 0` for disjoint
/// pairs, and `theta(A_ij)(x_1 + ... + x_n) = 0`.
pub fn verify_braid_relations(n: usize, max_degree: usize) -> Result<BraidCheck> {
    if n < 2 {
        return Err(Error::Precondition("braid relations need n >= 2".into()));
    }
    check_caps(n, max_degree)?;
    let mut basis: Vec<(Word, AssocPoly)> = Vec::new();
    for d in 1..=max_degree {
        for w in lyndon_basis(n, d)? {
            let e = LieElement::basis(n, &w)?.to_assoc();
            basis.push((w, e));
        }
    }
    let th: Vec<Vec<Option<Derivation>>> = (1..=n)
        .map(|i| (1..=n).map(|j| if i == j { None } else { theta(i, j, n).ok() }).collect())
        .collect();
    let t = |i: usize, j: usize| th[i - 1][j - 1].as_ref().unwrap();
    let mut evaluations = 0;

    let found = |relation: String, w: &Word, value: AssocPoly| BraidViolation {
        relation,
        element: w.clone(),
        value: LieElement::from_assoc(n, value),
    };

    // Commutator [D1, D2] evaluated directly as D1 o D2 - D2 o D1.
    let commutator_on = |d1: &Derivation, d2: &Derivation, e: &AssocPoly| {
        let mut out = d1.apply_assoc(&d2.apply_assoc(e));
        assoc_add_scaled(&mut out, &d2.apply_assoc(&d1.apply_assoc(e)), &-Rational::one());
        out
    };

    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for (w, e) in &basis {
                evaluations += 1;
                let mut diff = t(i, j).apply_assoc(e);
                assoc_add_scaled(&mut diff, &t(j, i).apply_assoc(e), &-Rational::one());
                if !diff.is_empty() {
                    let v = found(format!("A{i}{j} - A{j}{i}"), w, diff);
                    return Ok(BraidCheck { evaluations, violation: Some(v) });
                }
            }
            let sum: AssocPoly = (1..=n as u8).map(|k| (vec![k], Rational::one())).collect();
            evaluations += 1;
            let img = t(i, j).apply_assoc(&sum);
            if !img.is_empty() {
                let v = found(format!("A{i}{j}(x1 + ... + x{n})"), &vec![], img);
                return Ok(BraidCheck { evaluations, violation: Some(v) });
            }
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                let rhs = t(i, j).add(t(j, k));
                for (w, e) in &basis {
                    evaluations += 1;
                    let v = commutator_on(t(i, k), &rhs, e);
                    if !v.is_empty() {
                        let v = found(format!("[A{i}{k}, A{i}{j} + A{j}{k}]"), w, v);
                        return Ok(BraidCheck { evaluations, violation: Some(v) });
                    }
                }
                for l in k + 1..=n {
                    if l == i || l == j || i > j {
                        continue;
                    }
                    for (w, e) in &basis {
                        evaluations += 1;
                        let v = commutator_on(t(i, j), t(k, l), e);
                        if !v.is_empty() {
                            let v = found(format!("[A{i}{j}, A{k}{l}]"), w, v);
                            return Ok(BraidCheck { evaluations, violation: Some(v) });
                        }
                    }
                }
            }
        }
    }
    Ok(BraidCheck { evaluations, violation: None })
}

/// `v` with `[x_i, v] = theta(sigma)(x_i)`, together with `theta(sigma)`.
///
/// For a generator the witness is read off the definition; for
/// `sigma = [s1, s2]` with witnesses `u`, `w` the Jacobi identity gives
/// `[s1, s2](x_i) = [x_i, [u, w] + theta(s1)(w) - theta(s2)(u)]`.
fn witness_rec(sigma: &DkWord, i: usize, n: usize) -> Result<(LieElement, Derivation)> {
    match sigma {
        DkWord::Gen(a, b) => {
            let d = theta(*a, *b, n)?;
            let v = if i == *a {
                LieElement::generator(n, *b)?
            } else if i == *b {
                LieElement::generator(n, *a)?
            } else {
                LieElement::zero(n)
            };
            Ok((v, d))
        }
        DkWord::Bracket(s1, s2) => {
            let (u, d1) = witness_rec(s1, i, n)?;
            let (w, d2) = witness_rec(s2, i, n)?;
            let v = u.bracket(&w).add(&d1.apply(&w)).sub(&d2.apply(&u));
            Ok((v, d1.commutator(&d2)))
        }
    }
}

/// Finds `v` of degree `deg(sigma)` with `[x_i, v] = theta(sigma)(x_i)`.
/// The result is checked by re-bracketing; a mismatch is an internal error.
pub fn adjoint_witness(sigma: &DkWord, i: usize, n: usize) -> Result<LieElement> {
    if sigma.max_index() > n {
        return Err(Error::IndexOutOfRange(format!("{sigma} with n = {n}")));
    }
    check_caps(n, sigma.degree() + 1)?;
    let xi = LieElement::generator(n, i)?;
    let (v, d) = witness_rec(sigma, i, n)?;
    let target = d.apply(&xi);
    if xi.bracket(&v) != target {
        return Err(Error::Internal(format!("no v with [x{i}, v] = theta({sigma})(x{i})")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::exact::ExactMatrix;
    use num_traits::Zero;

    fn x(n: usize, i: usize) -> LieElement {
        LieElement::generator(n, i).unwrap()
    }

    #[test]
    fn theta_examples() {
        let d = theta(1, 2, 3).unwrap();
        assert_eq!(d.apply(&x(3, 1)), x(3, 1).bracket(&x(3, 2)));
        assert!(d.apply(&x(3, 3)).is_zero());
        let e = x(3, 1).bracket(&x(3, 3));
        assert_eq!(d.apply(&e), x(3, 1).bracket(&x(3, 2)).bracket(&x(3, 3)));
        assert!(theta(1, 1, 3).is_err());
        assert!(theta(1, 4, 3).is_err());
    }

    #[test]
    fn generator_sum_is_killed() {
        let s = x(3, 1).add(&x(3, 2)).add(&x(3, 3));
        assert!(theta(1, 2, 3).unwrap().apply(&s).is_zero());
    }

    #[test]
    fn braid_relations_small() {
        assert!(verify_braid_relations(2, 3).unwrap().is_ok());
        assert!(verify_braid_relations(3, 4).unwrap().is_ok());
        assert!(verify_braid_relations(1, 3).is_err());
    }

    #[test]
    fn witness_examples() {
        let v = adjoint_witness(&DkWord::Gen(1, 2), 1, 3).unwrap();
        assert_eq!(v, x(3, 2));
        assert!(adjoint_witness(&DkWord::Gen(1, 2), 3, 3).unwrap().is_zero());
        let sigma = DkWord::bracket(DkWord::Gen(1, 3), DkWord::Gen(1, 2));
        let v = adjoint_witness(&sigma, 1, 3).unwrap();
        assert_eq!(v.homogeneous_degree(), Some(2));
        assert_eq!(x(3, 1).bracket(&v), sigma.theta(3).unwrap().apply(&x(3, 1)));
    }

    /// Solves `[x_i, v] = target` in Lyndon coordinates of degree `k + 1`.
    fn solve_in_lyndon_coordinates(target: &LieElement, i: usize, n: usize, k: usize) -> Option<LieElement> {
        let xi = x(n, i);
        let unknowns = lyndon_basis(n, k).unwrap();
        let rows = lyndon_basis(n, k + 1).unwrap();
        let columns: Vec<Vec<Rational>> = unknowns
            .iter()
            .map(|u| {
                let img = xi.bracket(&LieElement::basis(n, u).unwrap());
                rows.iter().map(|w| img.coeff(w)).collect()
            })
            .collect();
        let system = ExactMatrix::from_columns(rows.len(), &columns);
        let rhs: Vec<Rational> = rows.iter().map(|w| target.coeff(w)).collect();
        let sol = system.solve(&rhs)?;
        let terms = unknowns.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect();
        Some(LieElement::from_terms(n, terms).unwrap())
    }

    #[test]
    fn witness_matches_linear_solve() {
        for text in ["A12", "[A13,A12]", "[A23,[A12,A13]]", "[[A12,A34],A14]", "[[A12,A23],[A13,A24]]"] {
            let sigma = DkWord::parse(text).unwrap();
            let n = sigma.max_index().max(3);
            for i in 1..=n {
                let v = adjoint_witness(&sigma, i, n).unwrap();
                let target = sigma.theta(n).unwrap().apply(&x(n, i));
                let solved = solve_in_lyndon_coordinates(&target, i, n, sigma.degree()).unwrap();
                assert_eq!(v, solved, "{text}, i = {i}");
            }
        }
    }

    #[test]
    fn dk_word_parsing() {
        let w = DkWord::parse("[A13, [A12,A23]]").unwrap();
        assert_eq!(w.degree(), 3);
        assert_eq!(w.depth(), 2);
        assert_eq!(w.to_string(), "[A13,[A12,A23]]");
        assert!(DkWord::parse("[A13,A12").is_err());
        assert!(DkWord::parse("B12").is_err());
    }

    #[test]
    fn derivation_commutator_is_a_derivation() {
        let d = theta(1, 2, 3).unwrap().commutator(&theta(2, 3, 3).unwrap());
        let a = x(3, 1).bracket(&x(3, 3));
        let b = x(3, 2);
        let lhs = d.apply(&a.bracket(&b));
        let rhs = d.apply(&a).bracket(&b).add(&a.bracket(&d.apply(&b)));
        assert_eq!(lhs, rhs);
        assert_eq!(Derivation::zero(3).apply(&a), LieElement::zero(3));
        let _ = int(0);
    }
}
