//! Numerical laboratory for Clifford module bundles and simple-type Dirac
//! operators on finite-difference chart geometries.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs: there is no IO, no clock and no global state, so
//! repeated evaluations are bit-for-bit reproducible. The optional `parallel`
//! feature evaluates node-local work on a rayon pool; node results are
//! independent and every reduction uses a fixed pairwise order, so parallel and
//! serial runs agree exactly.
//!
//! Layout:
//!
//! * [`clifford`]: multivectors, the Grassmann algebra, the symbol map and the
//!   canonical Clifford action.
//! * [`module`]: matrix Clifford modules, quantization, twists and the
//!   Clifford bi-module extension.
//! * [`geometry`]: chart grids, metrics, coframes, Christoffel symbols,
//!   curvature, codifferential and integration.
//! * [`dirac`]: Clifford connections, Dirac operators and their first and
//!   second order decompositions, the trace formula and the Dirac actions.
//! * [`models`]: sigma-model, geodesic, Yang–Mills, combined and Higgs
//!   functionals built from simple-type operators.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod clifford;
pub mod dirac;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod models;
pub mod module;
pub mod par;

pub use num_complex::Complex64 as C64;

pub use clifford::{ExteriorElement, Multivector, Sign, Signature};
pub use error::{Error, Result};
pub use linalg::{CMat, RMat};
pub use module::CliffordModule;

/// Imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);

/// Real number as a complex scalar.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}
