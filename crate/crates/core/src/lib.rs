//! Algebra and geometry of quaternionic slice regular functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`quaternion`]: Hamilton arithmetic, slice decomposition, text/JSON parsing.
//! - [`series`]: regular polynomials `sum q^n a_n` under the star product,
//!   regular conjugation, symmetrization, remainders and spherical expansions.
//! - [`rational`]: left/right regular quotients, the `T_f` change of variables
//!   and the sphere zero sets of symmetrizations.
//! - [`fractional`]: 2x2 quaternionic matrices, the Dieudonne determinant,
//!   `Sp(1,1)`, the two `GL(2,H)` actions and regular Moebius normal forms.
//! - [`geometry`]: Poincare distance on the unit ball, classical and regular
//!   Moebius maps, the twist map and conformality analysis.
//! - [`verify`]: seeded randomized checks of the Schwarz-Pick inequalities and
//!   related statements, producing JSON reports.
//! - [`cli`]: the `srq` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fractional;
pub mod geometry;
pub mod quaternion;
pub mod rational;
mod roots;
pub mod series;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use fractional::{MoebiusNormalForm, QuaternionMatrix2};
pub use quaternion::{Quaternion, SliceCoordinates};
pub use rational::{RegularQuotient, Side, SphereZero, SphereZeroSet};
pub use series::{RegularPolynomial, SphericalExpansion};
pub use verify::VerificationReport;
