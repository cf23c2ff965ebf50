//! Proptest strategies shared by the property tests.
#![allow(dead_code)]

use proptest::prelude::*;

use mcvlie::exact::{frac, int, ExactMatrix, Rational};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

pub fn small_int() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(int)
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(rational(), rows * cols)
        .prop_map(move |e| ExactMatrix::new(rows, cols, e).unwrap())
}

pub fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(small_int(), rows * cols)
        .prop_map(move |e| ExactMatrix::new(rows, cols, e).unwrap())
}

/// Sparse integer matrix: many zeros, so rank drops are common.
pub fn sparse_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(prop_oneof![3 => Just(int(0)), 2 => small_int()], rows * cols)
        .prop_map(move |e| ExactMatrix::new(rows, cols, e).unwrap())
}

pub fn any_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| sparse_matrix(r, c))
}

/// Tuple of `n` square `d x d` matrices with `n` in `ns`, `d` in `ds`.
pub fn tuple(
    ns: std::ops::RangeInclusive<usize>,
    ds: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<ExactMatrix>> {
    (ns, ds).prop_flat_map(|(n, d)| proptest::collection::vec(int_matrix(d, d), n))
}

/// Invertible integer matrix: unit lower times unit upper triangular.
pub fn invertible(d: usize) -> impl Strategy<Value = ExactMatrix> {
    (proptest::collection::vec(small_int(), d * d), proptest::collection::vec(small_int(), d * d))
        .prop_map(move |(l, u)| {
            let mut lower = ExactMatrix::identity(d);
            let mut upper = ExactMatrix::identity(d);
            for r in 0..d {
                for c in 0..d {
                    if r > c {
                        lower.set(r, c, l[r * d + c].clone());
                    } else if r < c {
                        upper.set(r, c, u[r * d + c].clone());
                    }
                }
            }
            &lower * &upper
        })
}
