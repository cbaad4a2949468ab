//! Finite-semigroup workbench for the integral Kannappan-sine subtraction law
//!
//! ```text
//! ∫ f(x·σ(y)·t) dμ(t) = f(x)g(y) − f(y)g(x)
//! ```
//!
//! and the matching addition law (`+` on the right), where `S` is a finite
//! semigroup given by its Cayley table, `σ` an involutive automorphism and
//! `μ = Σ αᵢ δ_{zᵢ}` a finitely supported complex measure.
//!
//! The crate is `no_std` (it needs `alloc`). Modules, bottom-up:
//!
//! - [`algebra`]: Cayley tables, identities, index/period, involutions.
//! - [`linalg`]: dense complex rank, nullspace and affine solve.
//! - [`roots`]: exact arithmetic on `{0} ∪ roots of unity`.
//! - [`functions`]: functions on `S`, measures, exponentials and the linear
//!   solvers for the special sine addition law and its integral variant.
//! - [`equations`]: residual checkers for every law in scope.
//! - [`classify`]: solution families, their validators and constructors,
//!   and the classifiers that recover a family from a solution.
#![cfg_attr(not(test), no_std)]
#![deny(rust_2018_idioms)]

extern crate alloc;

pub mod algebra;
pub mod classify;
pub mod equations;
pub mod functions;
pub mod linalg;
pub mod roots;
mod setting;

pub use num_complex::Complex64 as C64;
pub use setting::{Setting, SettingError};

pub use algebra::{ElementCycle, FiniteSemigroup, InvolutiveAutomorphism};
pub use functions::{CFunction, DiscreteMeasure, Exponential};
pub use linalg::{ComplexMatrix, ToleranceProfile};
pub use roots::RootValue;
