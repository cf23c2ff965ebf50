//! Free Lie algebras in Lyndon coordinates and the infinitesimal braid action.

pub mod derivation;
pub mod element;
pub mod word;

pub use derivation::{
    adjoint_witness, theta, verify_braid_relations, BraidCheck, BraidViolation, Derivation, DkWord,
};
pub use element::LieElement;
pub use word::{is_lyndon, lyndon_basis, standard_factorization, word_to_string, Word};
