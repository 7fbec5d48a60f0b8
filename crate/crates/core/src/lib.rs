//! Exact symbolic computation of Cauchy-Kovalevskaya extensions, plane-wave
//! decompositions and Cauchy kernels for Dirac operators in superspace.

pub mod algebra;
pub mod cauchy;
pub mod ck;
pub mod error;
pub mod harmonics;
pub mod integration;
pub mod ops;
pub mod planewave;
pub mod random;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod text;

pub use algebra::{BlockId, Mono, Sig, Signature, SuperElement};
pub use error::{Error, Result};
pub use scalar::Scalar;
