//! Numerical engine for the π-SQUID holonomic qubit: charge-basis spectra,
//! gauge-invariant Berry phases and curvature, gate dynamics and noise.

// `!(x > 0.0)` is how NaN gets rejected along with the bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod berry;
pub mod circuit;
pub mod dynamics;
pub mod error;
pub mod noise;
pub mod quad;
pub mod tridiag;

pub use circuit::{ChargeBasis, CircuitParams, ControlPoint, Parity, SpectralResult};
pub use error::{Error, Result};
