//! Numerical range, numerical radius, and spectral-set constants for dense
//! complex matrices.
//!
//! The crate is organised around a small dense complex kernel ([`linalg`])
//! and four layers built on top of it:
//!
//! * [`numrange`] — support-function sweeps for the numerical range W(T),
//!   the numerical radius w(T), the block-feasibility solver behind the
//!   certificate form `w(T) = min { ||A+B||/2 : [[A,T],[T*,B]] >= 0 }`, and
//!   closed forms for block matrices `[[aI, B], [0, aI]]`.
//! * [`similarity`] — conjugation `S^-1 T S`, condition numbers, the
//!   radius bound `w(S^-1 T S) <= (k + 1/k)/2` for contractions, the
//!   conversion pair between spectral-set constants `C` and numerical-radius
//!   constants `C' = (C + 1/C)/2`, and a minimal-similarity-to-contraction
//!   search on the disc.
//! * [`funcalc`] — scalar and matrix polynomial evaluation at an operator,
//!   Moebius maps, sampled sup norms, and ratio probes of the form
//!   `||F(T)|| / ||F||_K` and `w(F(T)) / ||F||_K`.
//! * [`extremals`] — explicit matrix pairs where the above inequalities are
//!   tight, including a model operator family whose spectral-set constant is
//!   known exactly.
//!
//! Sampling-based suites are reproducible: randomness comes from the
//! counter-based generator in [`rng`], seeded explicitly everywhere.

pub mod acceptance;
pub mod cmatrix;
pub mod error;
pub mod extremals;
pub mod funcalc;
pub mod linalg;
pub mod numrange;
mod opt;
pub mod rng;
pub mod similarity;

pub use cmatrix::CMatrix;
pub use error::{Error, Result};
pub use num_complex::Complex64;
