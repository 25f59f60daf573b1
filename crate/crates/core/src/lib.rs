//! Codeword-overlap analysis of photonic qubit codes under photon loss.
//!
//! The crate covers truncated Fock-space simulation of the loss channel,
//! five discrete-variable encodings with their decoders, the codeword-overlap
//! measure and concurrence, the coherent-state (cat) repetition code, and the
//! covariance-matrix description of single-mode Gaussian channels together
//! with a randomized check that such channels never reduce state overlap.

pub mod cat;
pub mod codes;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod linalg;
pub mod measures;
pub mod quadrature;

pub use codes::{BlochInput, Branch, CodeId, CodeSpec, QubitChannel};
pub use error::{Error, Result};
pub use fock::{DensityOp, FockVector, KrausSet, Tensor};
pub use measures::{OverlapResult, SphereSampling};
