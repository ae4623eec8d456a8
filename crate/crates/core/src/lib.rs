//! Numerical exterior algebra and curvature machinery for studying Killing
//! forms on symmetric spaces.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is pointwise linear
//! algebra over ℝⁿ with an orthonormal frame: forms are dense coefficient
//! vectors in the lexicographic basis of each degree, operators are dense
//! matrices between degrees.
//!
//! Module map:
//!
//! - [`exterior`]: multivectors, wedge, interior product, Hodge star.
//! - [`curvature`]: algebraic curvature tensors and the model constructors.
//! - [`operators`]: the so(n) derivation action, `R_{X,Y}`, `R⁺`, the
//!   Casimir `q(R)` and the Kähler operators.
//! - [`holonomy`]: bracket-closed curvature algebras, trivial summands,
//!   commutants and Kähler detection.
//! - [`classifier`]: the `(E_k, F_k)` iteration, the dichotomy report and the
//!   residual checks of the supporting identities.
//! - [`catalog`]: named models used by the command line and test suites.

#![no_std]

extern crate alloc;

pub mod catalog;
pub mod classifier;
pub mod curvature;
mod error;
pub mod exterior;
pub mod holonomy;
pub mod linalg;
pub mod operators;

pub use crate::curvature::{CurvatureDecomposition, CurvatureTensor};
pub use crate::error::{Error, Result};
pub use crate::exterior::{Multivector, Vector};
pub use crate::holonomy::HolonomyAlgebra;
pub use crate::linalg::Subspace;
pub use crate::operators::{FormOperator, SkewEndo};

/// Largest dimension the bitmask blade encoding supports.
pub const MAX_DIM: usize = 16;

/// Default dimension limit applied to user supplied models.
pub const DEFAULT_MAX_DIM: usize = 10;

/// Default tolerance for identity checks.
pub const DEFAULT_TOL: f64 = 1e-8;
