//! Multi-dimensional Fourier summability on the torus: kernels, means,
//! maximal operators and function-space norms.

// `!(x >= lo)` is used on purpose so that NaN fails range checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod kernels;
pub mod lattice;
pub mod maximal;
pub mod norms;
pub mod numeric;
pub mod spectral;
pub mod special;

pub use error::{Result, SummaError};
pub use kernels::{KernelSpec, Method, Region, ThetaFunction};
pub use lattice::Q;
pub use spectral::{GridFunction, Spectrum};
