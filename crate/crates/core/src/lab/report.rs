use serde::{Deserialize, Serialize};

use super::catalog::{InequalityId, Orientation, Status};
use super::classify::EqualityFamily;

pub const REPORT_SCHEMA: &str = "report/1";

/// Multiplier applied to propagated measure error to get a tolerance.
pub const ERROR_FACTOR: f64 = 10.0;
/// Relative floor on the tolerance, so exact paths still allow rounding.
pub const EXACT_FLOOR: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityFlag {
    Strict,
    NearEquality,
    EqualityCaseMatched,
}

/// One inequality of a chain `a >= b >= c` (or a single statement).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub oriented_slack: f64,
    /// Propagated absolute error of `lhs - rhs`.
    pub error: f64,
}

impl Link {
    pub fn new(
        label: impl Into<String>,
        orientation: Orientation,
        lhs: f64,
        rhs: f64,
        error: f64,
    ) -> Self {
        let oriented_slack = match orientation {
            Orientation::Ge => lhs - rhs,
            Orientation::Le => rhs - lhs,
        };
        Link {
            label: label.into(),
            lhs,
            rhs,
            oriented_slack,
            error,
        }
    }

    /// `10 x error`, floored at `1e-9 * max(1, |lhs|, |rhs|)`.
    pub fn default_tolerance(&self) -> f64 {
        let floor = EXACT_FLOOR * 1f64.max(self.lhs.abs()).max(self.rhs.abs());
        (ERROR_FACTOR * self.error).max(floor)
    }
}

/// Outcome of checking one inequality on one body. `lhs`, `rhs` are those
/// of the first link; `oriented_slack` is the minimum over all links and
/// `tolerance` the largest link tolerance, so
/// `satisfied == (oriented_slack >= -tolerance)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IneqReport {
    pub schema: String,
    pub id: InequalityId,
    pub n: usize,
    pub status: Status,
    pub orientation: Orientation,
    pub lhs: f64,
    pub rhs: f64,
    pub oriented_slack: f64,
    pub satisfied: bool,
    pub tolerance: f64,
    pub equality_flag: EqualityFlag,
    pub equality_family: Option<EqualityFamily>,
    pub quadrature_error: Option<f64>,
    pub body_fingerprint: String,
    pub links: Vec<Link>,
    pub warnings: Vec<String>,
}

impl IneqReport {
    /// A violated inequality that is a theorem for this body: a numerical
    /// defect, not a discovery.
    pub fn is_proven_violation(&self) -> bool {
        self.status == Status::Proven && !self.satisfied
    }

    /// A conjecture violated beyond tolerance.
    pub fn is_conjecture_violation(&self) -> bool {
        self.status == Status::Conjecture && !self.satisfied
    }

    pub fn is_exact(&self) -> bool {
        self.quadrature_error.is_none()
    }
}
