use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::linalg::factorial;
use crate::geom::{cross_polytope, VPolytope};

/// The `o`-symmetric coordinate cross-polytope `conv{±t_i e_i}` whose
/// central sections have `(n-1)`-volumes `s`.
pub fn cross_polytope_from_sections(s: &[f64]) -> Result<VPolytope> {
    cross_polytope(&cross_half_axes(s)?)
}

/// Half-axes `t_i = ((n-1)! prod s_k)^{1/(n-1)} / (2 s_i)`.
pub fn cross_half_axes(s: &[f64]) -> Result<Vec<f64>> {
    let n = s.len();
    if n < 2 {
        return Err(Error::invalid("need at least two section volumes"));
    }
    if s.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
        return Err(Error::invalid("section volumes must be positive"));
    }
    // Work in logs so large n or extreme inputs do not overflow.
    let log_prod: f64 = s.iter().map(|x| x.ln()).sum();
    let g = ((factorial(n - 1).ln() + log_prod) / (n - 1) as f64).exp();
    Ok(s.iter().map(|&si| g / (2.0 * si)).collect())
}

/// Result of [`segment_from_projections`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SegmentOutcome {
    /// `[-x/2, x/2]` has the requested projection lengths.
    Feasible { x: Vec<f64> },
    /// The condition `a_i^2 <= sum a^2 / (n-1)` fails; `index` (zero-based)
    /// is the coordinate with the largest violation.
    Infeasible { index: usize, excess: f64 },
}

impl SegmentOutcome {
    pub fn segment(&self) -> Option<Result<VPolytope>> {
        match self {
            SegmentOutcome::Feasible { x } => {
                let half: Vec<f64> = x.iter().map(|v| v / 2.0).collect();
                let neg: Vec<f64> = half.iter().map(|v| -v).collect();
                Some(VPolytope::from_points_in(x.len(), vec![neg, half]))
            }
            SegmentOutcome::Infeasible { .. } => None,
        }
    }
}

/// A segment `L` with `V_1(L | e_i^perp) = a_i` for every `i`, when one
/// exists.
pub fn segment_from_projections(a: &[f64]) -> Result<SegmentOutcome> {
    let n = a.len();
    if n < 2 {
        return Err(Error::invalid("need at least two projection lengths"));
    }
    if a.iter().any(|&x| !(x.is_finite() && x >= 0.0)) {
        return Err(Error::invalid("projection lengths must be nonnegative"));
    }
    let sum_sq: f64 = a.iter().map(|x| x * x).sum();
    let k = (n - 1) as f64;
    // Discriminants sum_sq - (n-1) a_i^2; negative means infeasible.
    let disc: Vec<f64> = a.iter().map(|x| sum_sq - k * x * x).collect();
    let slack_tol = 1e-12 * sum_sq.max(f64::MIN_POSITIVE);
    let mut worst: Option<(usize, f64)> = None;
    for (i, &d) in disc.iter().enumerate() {
        if d < -slack_tol && worst.is_none_or(|(_, w)| d < w) {
            worst = Some((i, d));
        }
    }
    if let Some((index, d)) = worst {
        return Ok(SegmentOutcome::Infeasible {
            index,
            excess: -d / k,
        });
    }
    Ok(SegmentOutcome::Feasible {
        x: disc.iter().map(|d| (d.max(0.0) / k).sqrt()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_octahedron_from_equal_sections() {
        let t = cross_half_axes(&[2.0, 2.0, 2.0]).unwrap();
        for x in t {
            assert!((x - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn homogeneity() {
        let s = [1.0, 2.0, 5.0, 3.0];
        let t = cross_half_axes(&s).unwrap();
        let lam: f64 = 7.0;
        let scaled: Vec<f64> = s.iter().map(|x| lam * x).collect();
        let t2 = cross_half_axes(&scaled).unwrap();
        for (a, b) in t.iter().zip(&t2) {
            assert!((b / a - lam.powf(1.0 / 3.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn segment_cases() {
        let r2 = 2f64.sqrt();
        match segment_from_projections(&[r2, r2, r2]).unwrap() {
            SegmentOutcome::Feasible { x } => {
                for v in x {
                    assert!((v - 1.0).abs() < 1e-14);
                }
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            segment_from_projections(&[1.0, 1.0, 2.0]).unwrap(),
            SegmentOutcome::Infeasible {
                index: 2,
                excess: 1.0
            }
        );
        assert!(segment_from_projections(&[1.0, -1.0, 1.0]).is_err());
        assert!(cross_half_axes(&[1.0, 0.0, 1.0]).is_err());
    }
}
