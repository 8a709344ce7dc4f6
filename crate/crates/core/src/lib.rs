//! Reproducing kernels of the Paley–Wiener-type Hilbert spaces weighted by the
//! Katz–Sarnak one-level densities, together with the extremal problems they
//! solve.
//!
//! Modules, bottom-up:
//!
//! * [`numerics`]: shared numerical routines.
//! * [`symmetry`]: the five symmetry types, their densities and weighted inner products.
//! * [`kernels`]: closed-form reproducing kernels `K_{G, πΔ}(w, z)`.
//! * [`fredholm`]: an independent Nyström construction of the same kernels, and
//!   the discretised convolution operator used for eigenvalue checks.
//! * [`extremal`]: one- and two-delta extremal problems and non-vanishing proportions.
//! * [`debranges`]: the de Branges function `E`, its companions and the first-zero bound `ξ₀`.
//! * [`embedding`]: sharp embedding constants against the Paley–Wiener norm.

pub mod debranges;
pub mod embedding;
pub mod error;
pub mod extremal;
pub mod fredholm;
pub mod kernels;
pub mod numerics;
pub mod symmetry;

pub use error::{Error, Result};
pub use kernels::{kernel, kernel_origin, KernelSection};
pub use num_complex::Complex64;
pub use symmetry::{KernelSpace, SymmetryGroup};
