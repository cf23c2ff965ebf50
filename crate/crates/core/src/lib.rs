pub mod analysis;
pub mod arrangement;
pub mod convolution;
pub mod error;
pub mod exact;
pub mod freelie;
pub mod holonomy;
pub mod json;

pub use error::{Error, ErrorKind, Result};
