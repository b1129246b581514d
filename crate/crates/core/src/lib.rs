//! Special functions, beta prime convolutions, identity-in-law verification
//! and complete-monotonicity probes.

pub mod cli;
pub mod cm_probes;
pub mod convolution;
pub mod distributions;
pub mod error;
pub mod identities;
pub mod options;
pub mod quad;
pub mod special;
pub mod thorin;

pub use error::{Error, Result};
pub use options::EvalOptions;
