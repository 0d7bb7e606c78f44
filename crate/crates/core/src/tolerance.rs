//! Numerical thresholds shared across modules.

use serde::{Deserialize, Serialize};

/// Tolerance for algebraic identities (associativity, norm multiplicativity).
pub const IDENTITY: f64 = 1e-12;

/// Relative tolerance for cross-checks between two computational routes.
pub const CROSS_CHECK: f64 = 1e-9;

/// Below this modulus a quaternion is treated as zero when inverting.
pub const ZERO: f64 = 1e-300;

/// `|Im q|` below this value makes a point real for derivative purposes.
pub const REAL_AXIS: f64 = 1e-12;

/// Scale-aware pole threshold: `|f^s(q)| < POLE * (1 + sum |r_n|)`.
pub const POLE: f64 = 1e-12;

/// Points with `|q| > 1 - BALL_MARGIN` are rejected by ball geometry.
pub const BALL_MARGIN: f64 = 1e-12;

/// Per-entry tolerance of the `Sp(1,1)` membership test.
pub const SP11: f64 = 1e-9;

/// Inequality violations count only when `margin < -INEQUALITY * (1 + |rhs|)`.
pub const INEQUALITY: f64 = 1e-9;

/// Runtime-configurable thresholds, overridable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub identity: f64,
    pub cross_check: f64,
    pub inequality: f64,
    pub sp11: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity: IDENTITY,
            cross_check: CROSS_CHECK,
            inequality: INEQUALITY,
            sp11: SP11,
        }
    }
}

impl Tolerances {
    /// Overrides the inequality slack; rejects non-positive or non-finite values.
    pub fn with_inequality(mut self, tol: f64) -> crate::Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(crate::Error::Parse(format!("tolerance must be positive, got {tol}")));
        }
        self.inequality = tol;
        Ok(self)
    }
}
