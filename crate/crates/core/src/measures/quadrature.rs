//! Product-angle quadrature on `S^{k-1}`.
//!
//! Coordinates: `u = (cos p_1, sin p_1 cos p_2, ..., sin p_1 ... sin p_{k-2} cos t,
//! sin p_1 ... sin p_{k-2} sin t)` with polar angles `p_j` in `[0, pi]` and
//! `t` periodic (trapezoid). Each polar angle carries the Jacobian
//! `sin^a p`; substituting `x = cos p` turns it into a Gauss-Jacobi rule
//! with `alpha = beta = (a - 1)/2` (plain Gauss-Legendre on `S^2`), which
//! integrates the constant exactly at any node count.
//!
//! `resolution` is the number of points per angle on `S^2`. In higher
//! dimensions the per-angle count shrinks so that the total stays near
//! `resolution^2`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi, GaussLegendre};
use serde::{Deserialize, Serialize};

use super::constants::sphere_measure;
use super::measured::Measured;
use crate::error::{Error, Result};
use crate::par;

pub const DEFAULT_RESOLUTION: usize = 512;
pub const MIN_RESOLUTION: usize = 16;
pub const MAX_RESOLUTION: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub resolution: usize,
    /// When set, the resolution is doubled until two successive estimates
    /// agree to this absolute tolerance (or `max_resolution` is reached).
    pub tolerance: Option<f64>,
    pub max_resolution: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            resolution: DEFAULT_RESOLUTION,
            tolerance: None,
            max_resolution: MAX_RESOLUTION,
        }
    }
}

impl QuadratureSpec {
    pub fn new(resolution: usize) -> Result<Self> {
        if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
            return Err(Error::invalid(format!(
                "quadrature resolution {resolution} outside {MIN_RESOLUTION}..={MAX_RESOLUTION}"
            )));
        }
        Ok(QuadratureSpec {
            resolution,
            ..Default::default()
        })
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }
}

/// Per-angle node counts `(trapezoid, gauss)` for `S^{k-1}`.
fn counts(k: usize, resolution: usize) -> (usize, usize) {
    let t = match k {
        0..=3 => resolution,
        _ => {
            let b = (resolution as f64).powf(2.0 / (k - 1) as f64).round() as usize;
            (b + b % 2).max(8)
        }
    };
    (t, (t / 2).max(8))
}

/// `(cos p, sin p, weight)` with the `sin^a p` Jacobian folded into the
/// weight.
type Rule = Arc<Vec<(f64, f64, f64)>>;

fn polar_rule(degree: usize, a: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&(degree, a)) {
        return r.clone();
    }
    let deg = NonZeroUsize::new(degree).expect("positive degree");
    let pairs: Vec<(f64, f64)> = match a {
        1 => GaussLegendre::new(deg).as_node_weight_pairs().to_vec(),
        _ => {
            let e = FiniteAboveNegOneF64::try_from((a as f64 - 1.0) / 2.0).expect("exponent > -1");
            GaussJacobi::new(deg, e, e).as_node_weight_pairs().to_vec()
        }
    };
    let mut nodes: Vec<(f64, f64, f64)> = pairs
        .into_iter()
        .map(|(x, w)| (x, (1.0 - x * x).max(0.0).sqrt(), w))
        .collect();
    nodes.sort_by(|p, q| q.0.total_cmp(&p.0));
    let rule = Arc::new(nodes);
    cache.lock().unwrap().insert((degree, a), rule.clone());
    rule
}

/// A materialized rule: points on `S^{k-1}` and weights summing to its
/// surface measure.
#[derive(Clone, Debug)]
pub struct SphereRule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(k: usize, resolution: usize) -> Self {
        let (t, g) = counts(k, resolution);
        Self::with_counts(k, t, g)
    }

    fn with_counts(k: usize, t: usize, g: usize) -> Self {
        match k {
            0 => SphereRule {
                points: vec![vec![]],
                weights: vec![1.0],
            },
            1 => SphereRule {
                points: vec![vec![-1.0], vec![1.0]],
                weights: vec![1.0, 1.0],
            },
            2 => {
                let w = 2.0 * PI / t as f64;
                SphereRule {
                    points: (0..t)
                        .map(|j| {
                            let (s, c) = (2.0 * PI * (j as f64 + 0.5) / t as f64).sin_cos();
                            vec![c, s]
                        })
                        .collect(),
                    weights: vec![w; t],
                }
            }
            _ => {
                let inner = Self::with_counts(k - 1, t, g);
                let mut points = Vec::new();
                let mut weights = Vec::new();
                for &(c, s, jac) in polar_rule(g, k - 2).iter() {
                    for (v, wv) in inner.points.iter().zip(&inner.weights) {
                        let mut u = Vec::with_capacity(k);
                        u.push(c);
                        u.extend(v.iter().map(|x| s * x));
                        points.push(u);
                        weights.push(jac * wv);
                    }
                }
                SphereRule { points, weights }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Single evaluation of `int_{S^{k-1}} f` at a fixed resolution. The outer
/// polar angle is split across threads; row sums are combined in a fixed
/// order.
fn integrate_once<F>(k: usize, resolution: usize, f: &F) -> f64
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let (t, g) = counts(k, resolution);
    if k <= 2 {
        let rule = SphereRule::with_counts(k, t, g);
        let vals: Vec<f64> = rule
            .points
            .iter()
            .zip(&rule.weights)
            .map(|(u, w)| w * f(u))
            .collect();
        return par::ordered_sum(&vals);
    }
    let inner = SphereRule::with_counts(k - 1, t, g);
    let outer = polar_rule(g, k - 2);
    let rows = par::map(&outer, |&(c, s, w)| {
        let mut u = vec![0.0; k];
        u[0] = c;
        let vals: Vec<f64> = inner
            .points
            .iter()
            .zip(&inner.weights)
            .map(|(v, wv)| {
                for (slot, x) in u[1..].iter_mut().zip(v) {
                    *slot = s * x;
                }
                wv * f(&u)
            })
            .collect();
        w * par::ordered_sum(&vals)
    });
    par::ordered_sum(&rows)
}

/// `int_{S^{k-1}} f(u) du` with an error estimate `|I(r) - I(r/2)|`.
pub fn integrate_sphere<F>(k: usize, spec: &QuadratureSpec, f: F) -> Measured
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if k == 0 {
        return Measured::exact(f(&[]));
    }
    if k == 1 {
        return Measured::exact(f(&[1.0]) + f(&[-1.0]));
    }
    let mut r = spec.resolution.max(MIN_RESOLUTION);
    let mut coarse = integrate_once(k, r / 2, &f);
    let mut fine = integrate_once(k, r, &f);
    if let Some(tol) = spec.tolerance {
        while (fine - coarse).abs() > tol && r * 2 <= spec.max_resolution {
            r *= 2;
            coarse = fine;
            fine = integrate_once(k, r, &f);
        }
    }
    Measured::new(fine, (fine - coarse).abs())
}

/// Self-calibration: relative error of the rule on the constant 1.
pub fn calibration_error(k: usize, resolution: usize) -> f64 {
    let got = integrate_once(k, resolution, &|_: &[f64]| 1.0);
    (got / sphere_measure(k) - 1.0).abs()
}

/// Gauss-Legendre rule for `int_a^b f`.
pub fn gauss_legendre(a: f64, b: f64, degree: usize, f: impl Fn(f64) -> f64) -> f64 {
    let rule = polar_rule(degree, 1);
    let half = (b - a) / 2.0;
    rule.iter()
        .map(|&(x, _, w)| half * w * f(a + half * (x + 1.0)))
        .sum()
}

/// Both sides of Minkowski's integral inequality
/// `int (sum_i f_i^p)^{1/p} dmu >= (sum_i (int f_i dmu)^p)^{1/p}` for
/// functions sampled at the points of a discrete measure with weights `w`.
pub fn minkowski_integral_sides(fs: &[Vec<f64>], w: &[f64], p: f64) -> (f64, f64) {
    let lhs = w
        .iter()
        .enumerate()
        .map(|(j, wj)| wj * fs.iter().map(|f| f[j].powf(p)).sum::<f64>().powf(1.0 / p))
        .sum();
    let rhs = fs
        .iter()
        .map(|f| f.iter().zip(w).map(|(x, wj)| x * wj).sum::<f64>().powf(p))
        .sum::<f64>()
        .powf(1.0 / p);
    (lhs, rhs)
}
