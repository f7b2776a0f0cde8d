//! Machine-readable pass/fail records shared by the verifier modules.

use serde::{Deserialize, Serialize};

/// Default tolerance for identity checks (both sides computed independently
/// in double precision).
pub const IDENTITY_TOL: f64 = 1e-9;
/// Default tolerance for inequality checks over floating-point inputs.
pub const INEQUALITY_TOL: f64 = 1e-8;

/// Outcome of one identity or inequality check.
///
/// For identities: `pass <=> |residual| <= tolerance` with
/// `residual = lhs - rhs`. For inequalities: `pass <=> lhs >= rhs - tolerance`
/// (the report records which reading applies in `kind`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub kind: CheckKind,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// `epsilon / sqrt(5)` when an epsilon is in play.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_epsilon: Option<f64>,
    pub pass: bool,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Identity,
    /// `lhs >= rhs - tolerance`.
    LowerBound,
    /// `lhs <= rhs + tolerance`.
    UpperBound,
}

impl VerificationReport {
    pub fn identity(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let residual = lhs - rhs;
        VerificationReport {
            name: name.to_string(),
            kind: CheckKind::Identity,
            lhs,
            rhs,
            residual,
            epsilon: None,
            c_epsilon: None,
            pass: residual.abs() <= tolerance,
            tolerance,
        }
    }

    pub fn lower_bound(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        VerificationReport {
            name: name.to_string(),
            kind: CheckKind::LowerBound,
            lhs,
            rhs,
            residual: lhs - rhs,
            epsilon: None,
            c_epsilon: None,
            pass: lhs >= rhs - tolerance,
            tolerance,
        }
    }

    pub fn upper_bound(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        VerificationReport {
            name: name.to_string(),
            kind: CheckKind::UpperBound,
            lhs,
            rhs,
            residual: lhs - rhs,
            epsilon: None,
            c_epsilon: None,
            pass: lhs <= rhs + tolerance,
            tolerance,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = Some(epsilon);
        self.c_epsilon = Some(epsilon / 5f64.sqrt());
        self
    }
}
