//! Independent recomputation of the reference numerical values.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::coord_ops::project;
use crate::error::Result;
use crate::geom::{Body, Named};
use crate::lab::{c0_constant, mth_constant};
use crate::measures::quadrature::gauss_legendre;
use crate::measures::{intrinsic_volume, QuadratureSpec};

/// Gauss-Legendre nodes per axis for the reduced integrals.
pub const K1_NODES: usize = 96;

/// `h_{K1}` in spherical angles on the reduced region.
fn k1_support_angles(theta: f64, phi: f64) -> f64 {
    let (st, sp, cp) = (theta.sin(), phi.sin(), phi.cos());
    (st * st * sp * sp + cp * cp).sqrt()
}

/// Upper `phi` limit of the reduced region, `arctan(csc theta)`.
fn phi_max(theta: f64) -> f64 {
    (1.0 / theta.sin()).atan()
}

/// Closed form of the inner `phi` integral.
pub fn k1_inner_closed_form(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let s2 = s * s;
    let r2 = 2f64.sqrt();
    let log_arg = (r2 + c) * s / ((c + 1.0) * (1.0 + s2).sqrt());
    0.5 - s2 / (r2 * (1.0 + s2)) - s2 / (2.0 * c) * log_arg.ln()
}

/// `V_1(K1)` from the 2D reduced integral: `(48/pi) int int h sin(phi)`.
pub fn k1_v1_reduced_2d(nodes: usize) -> f64 {
    let outer = gauss_legendre(FRAC_PI_4, FRAC_PI_2, nodes, |theta| {
        gauss_legendre(0.0, phi_max(theta), nodes, |phi| {
            k1_support_angles(theta, phi) * phi.sin()
        })
    });
    48.0 / PI * outer
}

/// `V_1(K1)` from the 1D integral of the closed-form inner integral.
pub fn k1_v1_reduced_1d(nodes: usize) -> f64 {
    48.0 / PI * gauss_legendre(FRAC_PI_4, FRAC_PI_2, nodes, k1_inner_closed_form)
}

/// `V_1(K2) = 6 arccos(1/3) / sqrt(pi)`.
pub fn k2_v1_closed_form() -> f64 {
    6.0 * (1.0f64 / 3.0).acos() / PI.sqrt()
}

/// `V_1(C^3) = 12 sqrt 2 arccos(1/3) / (2 pi)`.
pub fn cross3_v1_closed_form() -> f64 {
    12.0 * 2f64.sqrt() * (1.0f64 / 3.0).acos() / (2.0 * PI)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct K1Report {
    pub v1_k1_reduced_2d: f64,
    pub v1_k1_reduced_1d: f64,
    pub paths_difference: f64,
    /// Generic spherical quadrature of `h_{K1}`, with its error estimate.
    pub v1_k1_sphere: f64,
    pub v1_k1_sphere_error: f64,
    pub v1_k2: f64,
    pub v1_k2_closed_form: f64,
    pub k2_exceeds_k1: bool,
    /// `V_2` of the coordinate sections, equal for both bodies.
    pub section_area_k1: f64,
    pub section_area_k2: f64,
}

pub fn reproduce_k1(spec: &QuadratureSpec) -> Result<K1Report> {
    let a = k1_v1_reduced_2d(K1_NODES);
    let b = k1_v1_reduced_1d(K1_NODES);
    let k1 = Body::named(Named::k1())?;
    let sphere = intrinsic_volume(&k1, 1, spec)?;
    let k2 = Body::named(Named::K2)?;
    let v_k2 = intrinsic_volume(&k2, 1, spec)?;
    let sect = |b: &Body| -> Result<f64> {
        Ok(intrinsic_volume(&crate::coord_ops::section_body(b, 0)?, 2, spec)?.value)
    };
    Ok(K1Report {
        v1_k1_reduced_2d: a,
        v1_k1_reduced_1d: b,
        paths_difference: (a - b).abs(),
        v1_k1_sphere: sphere.value,
        v1_k1_sphere_error: sphere.err,
        v1_k2: v_k2.value,
        v1_k2_closed_form: k2_v1_closed_form(),
        k2_exceeds_k1: v_k2.value > a.max(b),
        section_area_k1: sect(&k1)?,
        section_area_k2: sect(&k2)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eq1Report {
    pub v1_cross3: f64,
    pub v1_cross3_closed_form: f64,
    pub v1_projection: f64,
    /// `V_1(C^3)^2 / (3 V_1(C^3|e_1^perp)^2)`: what the zonoid bound would
    /// need to be at least `1/2`.
    pub ratio: f64,
    pub mth_constant: f64,
    pub ordered: bool,
}

pub fn reproduce_eq1_falsification(spec: &QuadratureSpec) -> Result<Eq1Report> {
    let c = Body::cross(3)?;
    let v1 = intrinsic_volume(&c, 1, spec)?.value;
    let p = intrinsic_volume(&project(&c, 0)?, 1, spec)?.value;
    let ratio = v1 * v1 / (3.0 * p * p);
    let k = mth_constant(3, 1)?;
    Ok(Eq1Report {
        v1_cross3: v1,
        v1_cross3_closed_form: cross3_v1_closed_form(),
        v1_projection: p,
        ratio,
        mth_constant: k,
        ordered: k < ratio && ratio < 0.5,
    })
}

/// One row of a reproduction table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproRow {
    pub target: String,
    pub quantity: String,
    pub reference: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReproRow {
    fn new(target: &str, quantity: &str, reference: f64, computed: f64, tolerance: f64) -> Self {
        ReproRow {
            target: target.into(),
            quantity: quantity.into(),
            reference,
            computed,
            tolerance,
            pass: (computed - reference).abs() <= tolerance,
        }
    }
}

pub const REPRO_TARGETS: [&str; 4] = ["k1", "eq1-c3", "c0", "meyer-octahedron"];

/// Rows for one target (or all of them for `"all"`).
pub fn repro_rows(target: &str, spec: &QuadratureSpec) -> Result<Vec<ReproRow>> {
    let mut rows = Vec::new();
    let all = target == "all";
    if !all && !REPRO_TARGETS.contains(&target) {
        return Err(crate::Error::invalid(format!(
            "unknown reproduction target `{target}`; known: all, {}",
            REPRO_TARGETS.join(", ")
        )));
    }
    if all || target == "k1" {
        let r = reproduce_k1(spec)?;
        rows.push(ReproRow::new(
            "k1",
            "V1(K1) 2D reduced",
            3.8663,
            r.v1_k1_reduced_2d,
            1e-3,
        ));
        rows.push(ReproRow::new(
            "k1",
            "V1(K1) inner closed form",
            3.8663,
            r.v1_k1_reduced_1d,
            1e-3,
        ));
        rows.push(ReproRow::new(
            "k1",
            "path agreement",
            0.0,
            r.paths_difference,
            1e-5,
        ));
        rows.push(ReproRow::new("k1", "V1(K2)", 4.1669, r.v1_k2, 1e-4));
        rows.push(ReproRow::new(
            "k1",
            "V1(K2) - V1(K1) > 0",
            1.0,
            if r.k2_exceeds_k1 { 1.0 } else { 0.0 },
            0.0,
        ));
    }
    if all || target == "eq1-c3" {
        let r = reproduce_eq1_falsification(spec)?;
        rows.push(ReproRow::new(
            "eq1-c3",
            "V1(C3)^2 / (3 (2 sqrt 2)^2)",
            0.46058,
            r.ratio,
            1e-4,
        ));
        rows.push(ReproRow::new(
            "eq1-c3",
            "4/pi^2",
            0.40528,
            r.mth_constant,
            1e-5,
        ));
        rows.push(ReproRow::new(
            "eq1-c3",
            "4/pi^2 < ratio < 1/2",
            1.0,
            if r.ordered { 1.0 } else { 0.0 },
            0.0,
        ));
    }
    if all || target == "c0" {
        let c0 = c0_constant(3, spec)?;
        rows.push(ReproRow::new(
            "c0",
            "c0(3) = V1(C3) / (3 V1(C3|e1))",
            cross3_v1_closed_form() / (6.0 * 2f64.sqrt()),
            c0.value,
            1e-12,
        ));
    }
    if all || target == "meyer-octahedron" {
        let opts = crate::lab::EvalOptions {
            quadrature: *spec,
            tolerance: None,
        };
        let r = crate::lab::evaluate(&crate::lab::InequalityId::Meyer, &Body::cross(3)?, &opts)?;
        rows.push(ReproRow::new(
            "meyer-octahedron",
            "V(C3)^2",
            16.0 / 9.0,
            r.lhs,
            1e-12,
        ));
        rows.push(ReproRow::new(
            "meyer-octahedron",
            "(2/9) prod sections",
            16.0 / 9.0,
            r.rhs,
            1e-12,
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_paths_agree() {
        let a = k1_v1_reduced_2d(K1_NODES);
        let b = k1_v1_reduced_1d(K1_NODES);
        assert!((a - 3.8663).abs() < 1e-3, "{a}");
        assert!((a - b).abs() < 1e-5, "{a} {b}");
    }

    #[test]
    fn inner_closed_form_matches_quadrature() {
        for theta in [0.8, 1.0, 1.3, 1.5] {
            let q = gauss_legendre(0.0, phi_max(theta), 64, |phi| {
                k1_support_angles(theta, phi) * phi.sin()
            });
            assert!((q - k1_inner_closed_form(theta)).abs() < 1e-12, "{theta}");
        }
    }

    #[test]
    fn eq1_ratio() {
        let r = reproduce_eq1_falsification(&QuadratureSpec::default()).unwrap();
        assert!((r.ratio - 0.46058).abs() < 1e-4);
        assert!(r.ordered);
        assert!((r.v1_cross3 - r.v1_cross3_closed_form).abs() < 1e-12);
    }
}
