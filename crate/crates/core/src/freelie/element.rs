//! Elements of the free Lie algebra in Lyndon coordinates.
//!
//! Products are computed in the free associative algebra: each Lyndon word
//! `w` stands for its standard bracketing `P_w`, whose expansion is `w` plus
//! lexicographically larger words of the same content. A Lie polynomial is
//! therefore rewritten into Lyndon coordinates by repeatedly peeling off its
//! smallest word.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::word::{is_lyndon, standard_factorization, word_to_string, Word};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Noncommutative polynomial.
pub(crate) type AssocPoly = BTreeMap<Word, Rational>;

pub(crate) fn add_term(p: &mut AssocPoly, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn assoc_add_scaled(acc: &mut AssocPoly, p: &AssocPoly, c: &Rational) {
    for (w, v) in p {
        add_term(acc, w.clone(), v * c);
    }
}

pub(crate) fn assoc_mul(a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
    let mut out = AssocPoly::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            add_term(&mut out, w, x * y);
        }
    }
    out
}

pub(crate) fn assoc_commutator(a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
    let mut out = assoc_mul(a, b);
    assoc_add_scaled(&mut out, &assoc_mul(b, a), &-Rational::one());
    out
}

fn expansion_cache() -> &'static RwLock<HashMap<Word, Arc<AssocPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<Word, Arc<AssocPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Associative expansion of the standard bracketing of a Lyndon word.
pub(crate) fn lyndon_expansion(w: &[u8]) -> Arc<AssocPoly> {
    if let Some(p) = expansion_cache().read().unwrap().get(w) {
        return p.clone();
    }
    let p = if w.len() == 1 {
        AssocPoly::from([(w.to_vec(), Rational::one())])
    } else {
        let (u, v) = standard_factorization(w);
        assoc_commutator(&lyndon_expansion(u), &lyndon_expansion(v))
    };
    let p = Arc::new(p);
    expansion_cache().write().unwrap().insert(w.to_vec(), p.clone());
    p
}

/// Lyndon coordinates of a Lie polynomial given in associative form.
pub(crate) fn to_lyndon(mut p: AssocPoly) -> BTreeMap<Word, Rational> {
    let mut coords = BTreeMap::new();
    while let Some((w, c)) = p.pop_first() {
        assert!(
            is_lyndon(&w),
            "smallest word {} of a Lie polynomial must be Lyndon",
            word_to_string(&w)
        );
        let exp = lyndon_expansion(&w);
        let coeff = c / &exp[&w];
        let neg = -coeff.clone();
        for (u, v) in exp.iter().filter(|(u, _)| **u != w) {
            add_term(&mut p, u.clone(), v * &neg);
        }
        coords.insert(w, coeff);
    }
    coords
}

/// Element of the free Lie algebra on `n` generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    n: usize,
    terms: BTreeMap<Word, Rational>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement { n, terms: BTreeMap::new() }
    }

    /// The generator `x_i` (1-based).
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange(format!("generator x{i} with n = {n}")));
        }
        Ok(LieElement { n, terms: BTreeMap::from([(vec![i as u8], Rational::one())]) })
    }

    /// Standard bracketing of a single Lyndon word.
    pub fn basis(n: usize, w: &[u8]) -> Result<Self> {
        Self::from_terms(n, BTreeMap::from([(w.to_vec(), Rational::one())]))
    }

    pub fn from_terms(n: usize, terms: BTreeMap<Word, Rational>) -> Result<Self> {
        for w in terms.keys() {
            if !is_lyndon(w) {
                return Err(Error::InvalidInput(format!("`{}` is not a Lyndon word", word_to_string(w))));
            }
            if w.iter().any(|&l| l == 0 || l as usize > n) {
                return Err(Error::IndexOutOfRange(format!(
                    "word `{}` uses letters outside 1..={n}",
                    word_to_string(w)
                )));
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LieElement { n, terms })
    }

    pub(crate) fn from_assoc(n: usize, p: AssocPoly) -> Self {
        LieElement { n, terms: to_lyndon(p) }
    }

    pub(crate) fn to_assoc(&self) -> AssocPoly {
        let mut out = AssocPoly::new();
        for (w, c) in &self.terms {
            assoc_add_scaled(&mut out, &lyndon_expansion(w), c);
        }
        out
    }

    pub fn n_generators(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn coeff(&self, w: &[u8]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Vec::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Whether every term only involves generators `1..=k`.
    pub fn supported_on_first(&self, k: usize) -> bool {
        self.terms.keys().all(|w| w.iter().all(|&l| l as usize <= k))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        LieElement { n: self.n, terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "elements of different free Lie algebras");
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let e = terms.entry(w.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(w);
            }
        }
        LieElement { n: self.n, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn bracket(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "elements of different free Lie algebras");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n);
        }
        Self::from_assoc(self.n, assoc_commutator(&self.to_assoc(), &other.to_assoc()))
    }
}

impl std::fmt::Display for LieElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}*[{}]", crate::exact::format_rational(c), word_to_string(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
