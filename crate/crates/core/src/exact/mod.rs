//! Exact arithmetic substrate: rationals, polynomials, dense matrices,
//! subspaces and polynomial pencils.

pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod rational;
pub mod subspace;

pub use matrix::ExactMatrix;
pub use pencil::{integer_spectrum_hits, pencil_full_rank, PencilRank, PolyMatrix};
pub use poly::Poly;
pub use rational::{format_rational, frac, int, parse_rational, Rational};
pub use subspace::{
    complement_section, induced_map, induced_on_quotient, kernel, quotient_map, Subspace,
};
