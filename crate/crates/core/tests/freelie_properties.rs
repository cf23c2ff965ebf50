mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::*;
use mcvlie::freelie::{lyndon_basis, theta, Derivation, DkWord, LieElement};

const N: usize = 3;

fn element(max_degree: usize) -> impl Strategy<Value = LieElement> {
    let words: Vec<Vec<u8>> = (1..=max_degree).flat_map(|d| lyndon_basis(N, d).unwrap()).collect();
    proptest::collection::vec((proptest::sample::select(words), rational()), 1..=3).prop_map(|terms| {
        terms.into_iter().fold(LieElement::zero(N), |acc, (w, c)| {
            acc.add(&LieElement::from_terms(N, BTreeMap::from([(w, c)])).unwrap())
        })
    })
}

fn derivation() -> impl Strategy<Value = Derivation> {
    proptest::collection::vec(element(2), N).prop_map(|images| Derivation::new(N, images).unwrap())
}

fn pair() -> impl Strategy<Value = (usize, usize)> {
    (1..=N, 1..=N).prop_filter("i = j", |(i, j)| i != j)
}

fn dk_word(n: usize) -> impl Strategy<Value = DkWord> {
    let leaf = (1..=n, 1..=n).prop_filter("i = j", |(i, j)| i != j).prop_map(|(i, j)| DkWord::Gen(i, j));
    leaf.prop_recursive(2, 4, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| DkWord::bracket(a, b)))
}

/// Number of Lyndon words of length `d` on `n` letters, by Moebius inversion
/// of `n^d = sum_{e | d} e L(e)`.
fn necklace_count(n: usize, d: usize) -> usize {
    let mut l = vec![0i64; d + 1];
    for e in 1..=d {
        let divisor_sum: i64 = (1..e).filter(|f| e % f == 0).map(|f| f as i64 * l[f]).sum();
        l[e] = ((n as i64).pow(e as u32) - divisor_sum) / e as i64;
    }
    l[d] as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_alternating_and_jacobi(x in element(2), y in element(2), z in element(2)) {
        prop_assert!(x.bracket(&x).is_zero());
        prop_assert_eq!(x.bracket(&y), y.bracket(&x).scale(&mcvlie::exact::int(-1)));
        let jacobi = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn bracket_is_bilinear(x in element(3), y in element(3), z in element(2), c in rational()) {
        let lhs = x.scale(&c).add(&y).bracket(&z);
        let rhs = x.bracket(&z).scale(&c).add(&y.bracket(&z));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_satisfy_leibniz(d in derivation(), x in element(2), y in element(2)) {
        let lhs = d.apply(&x.bracket(&y));
        let rhs = d.apply(&x).bracket(&y).add(&x.bracket(&d.apply(&y)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_is_a_derivation((i, j) in pair(), x in element(2), y in element(2)) {
        let t = theta(i, j, N).unwrap();
        prop_assert_eq!(&t, &theta(j, i, N).unwrap());
        let lhs = t.apply(&x.bracket(&y));
        let rhs = t.apply(&x).bracket(&y).add(&x.bracket(&t.apply(&y)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_of_derivations(d1 in derivation(), d2 in derivation(), x in element(2)) {
        let lhs = d1.commutator(&d2).apply(&x);
        let rhs = d1.apply(&d2.apply(&x)).sub(&d2.apply(&d1.apply(&x)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lower_words_preserve_lower_generators(sigma in dk_word(3), k in 1usize..=3) {
        // A word in the first three indices, acting on four generators, maps
        // the first three generators into the subalgebra they generate.
        let t = sigma.theta(4).unwrap();
        let image = t.apply(&LieElement::generator(4, k).unwrap());
        prop_assert!(image.supported_on_first(3));
        prop_assert_eq!(image.homogeneous_degree().unwrap_or(sigma.degree() + 1), sigma.degree() + 1);
    }
}

#[test]
fn lyndon_basis_sizes_match_necklace_counts() {
    for n in 1..=4 {
        for d in 1..=6 {
            assert_eq!(lyndon_basis(n, d).unwrap().len(), necklace_count(n, d), "n = {n}, d = {d}");
        }
    }
}
