use std::sync::OnceLock;

use super::catalog::{InequalityId, Orientation, Status};
use super::classify::{equality_case_classifier, Classification};
use super::constants::{c0_constant, cross_c2, cross_c3, meyer_constant, mth_constant};
use super::report::{EqualityFlag, IneqReport, Link, REPORT_SCHEMA};
use crate::coord_ops::{project, project_along, section_body};
use crate::error::Result;
use crate::geom::{affine_dim, Body, Named};
use crate::measures::{intrinsic_volume, Measured, QuadratureSpec};
use crate::par;

/// Knobs for [`evaluate`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EvalOptions {
    pub quadrature: QuadratureSpec,
    /// Absolute tolerance replacing the default error-based one.
    pub tolerance: Option<f64>,
}

/// Lazily measured body with its coordinate projections and sections.
struct Probe<'a> {
    body: &'a Body,
    spec: QuadratureSpec,
    n: usize,
    projections: OnceLock<Vec<Body>>,
    sections: OnceLock<Vec<Body>>,
}

impl<'a> Probe<'a> {
    fn new(body: &'a Body, spec: QuadratureSpec) -> Self {
        Probe {
            body,
            spec,
            n: body.ambient_dim(),
            projections: OnceLock::new(),
            sections: OnceLock::new(),
        }
    }

    fn v(&self, m: usize) -> Result<Measured> {
        intrinsic_volume(self.body, m, &self.spec)
    }

    fn bodies<'c>(
        &self,
        cell: &'c OnceLock<Vec<Body>>,
        op: fn(&Body, usize) -> Result<Body>,
    ) -> Result<&'c [Body]> {
        if cell.get().is_none() {
            let made: Result<Vec<Body>> = par::map_range(self.n, |i| op(self.body, i))
                .into_iter()
                .collect();
            let _ = cell.set(made?);
        }
        Ok(cell.get().expect("set above"))
    }

    fn measure_all(&self, bodies: &[Body], m: usize) -> Result<Vec<Measured>> {
        par::map(bodies, |b| intrinsic_volume(b, m, &self.spec))
            .into_iter()
            .collect()
    }

    /// `V_m(K | e_i^perp)` for every `i`.
    fn proj(&self, m: usize) -> Result<Vec<Measured>> {
        let b = self.bodies(&self.projections, project)?;
        self.measure_all(b, m)
    }

    /// `V_m(K cap e_i^perp)` for every `i`.
    fn sect(&self, m: usize) -> Result<Vec<Measured>> {
        let b = self.bodies(&self.sections, section_body)?;
        self.measure_all(b, m)
    }
}

fn sum(v: &[Measured]) -> Measured {
    let value = par::ordered_sum(&v.iter().map(|x| x.value).collect::<Vec<_>>());
    Measured::new(value, v.iter().map(|x| x.err).sum())
}

fn sum_pow(v: &[Measured], k: i32) -> Measured {
    sum(&v.iter().map(|x| x.powi(k)).collect::<Vec<_>>())
}

fn product(v: &[Measured]) -> Measured {
    v.iter().fold(Measured::exact(1.0), |acc, &x| acc * x)
}

fn max(v: &[Measured]) -> Measured {
    v.iter()
        .copied()
        .fold(Measured::exact(f64::NEG_INFINITY), Measured::max)
}

/// `((1/n) sum x_i^p)^{1/p}`.
fn power_mean(v: &[Measured], p: f64) -> Measured {
    let s = sum(&v.iter().map(|x| x.powf(p)).collect::<Vec<_>>());
    s.scale(1.0 / v.len() as f64).powf(1.0 / p)
}

/// Whether the origin lies in the interior of `body`.
fn origin_interior(body: &Body) -> bool {
    match body {
        Body::Named(_) => true,
        Body::Ball(b) => {
            b.intrinsic_dim() == b.ambient_dim()
                && b.center().iter().map(|x| x * x).sum::<f64>().sqrt() < b.radius()
        }
        _ => match body.to_polytope().ok().and_then(|p| p.halfspaces()) {
            Some(hs) => hs.iter().all(|(_, b)| *b > 1e-12),
            None => false,
        },
    }
}

struct Draft {
    links: Vec<Link>,
    status: Status,
    warnings: Vec<String>,
}

impl Draft {
    fn new(status: Status) -> Self {
        Draft {
            links: Vec::new(),
            status,
            warnings: Vec::new(),
        }
    }

    fn link(&mut self, label: &str, o: Orientation, lhs: Measured, rhs: Measured) {
        self.links
            .push(Link::new(label, o, lhs.value, rhs.value, lhs.err + rhs.err));
    }
}

/// Check `id` on `body`. Both sides come from the measures module; exact
/// formulas are used wherever they exist.
pub fn evaluate(id: &InequalityId, body: &Body, opts: &EvalOptions) -> Result<IneqReport> {
    let n = body.ambient_dim();
    id.validate(n)?;
    let zonotope = matches!(body, Body::Zonotope(_) | Body::Named(Named::Cube(_)));
    let probe = Probe::new(body, opts.quadrature);
    let o = id.orientation();
    let mut d = Draft::new(id.status(n, zonotope));
    let nf = n as f64;
    let mut errs: Vec<Measured> = Vec::new();
    // Record every measured quantity so the report can say whether any
    // quadrature was involved.
    let mut track = |v: Vec<Measured>| -> Vec<Measured> {
        errs.extend(v.iter().copied());
        v
    };

    use InequalityId as I;
    match id {
        I::LoomisWhitney => {
            let v = track(vec![probe.v(n)?])[0];
            let p = track(probe.proj(n - 1)?);
            d.link(
                "V^(n-1) <= prod V_(n-1)(K|e_i)",
                o,
                v.powi(n as i32 - 1),
                product(&p),
            );
        }
        I::Meyer => {
            if !origin_interior(body) {
                d.warnings.push("origin is not an interior point".into());
            }
            let v = track(vec![probe.v(n)?])[0];
            let s = track(probe.sect(n - 1)?);
            d.link(
                "V^(n-1) >= c prod V_(n-1)(K cap e_i)",
                o,
                v.powi(n as i32 - 1),
                product(&s).scale(meyer_constant(n)),
            );
        }
        I::BmUpper => {
            let v = track(vec![probe.v(n - 1)?])[0];
            let p = track(probe.proj(n - 1)?);
            d.link("V_(n-1) <= sum proj", o, v, sum(&p));
        }
        I::CgUpper { m } => {
            let v = track(vec![probe.v(*m)?])[0];
            let p = track(probe.proj(*m)?);
            d.link(
                "V_m <= sum proj / (n-m)",
                o,
                v,
                sum(&p).scale(1.0 / (n - m) as f64),
            );
        }
        I::SqrtNLower => {
            let v = track(vec![probe.v(n - 1)?])[0];
            let p = sum(&track(probe.proj(n - 1)?)).scale(1.0 / nf.sqrt());
            let s = sum(&track(probe.sect(n - 1)?)).scale(1.0 / nf.sqrt());
            d.link("V_(n-1) >= sum proj / sqrt n", o, v, p);
            d.link("sum proj >= sum sect", o, p, s);
        }
        I::WeightedBm { a } => {
            let v = track(vec![probe.v(n - 1)?])[0];
            let p = track(probe.proj(n - 1)?);
            let weighted = sum(&p
                .iter()
                .zip(a)
                .map(|(x, &w)| x.scale(w))
                .collect::<Vec<_>>());
            let amin = a.iter().copied().fold(f64::INFINITY, f64::min);
            let anorm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            d.link(
                "sum a_i proj >= min a * V_(n-1)",
                o,
                weighted,
                v.scale(amin),
            );
            d.link("|a| V_(n-1) >= sum a_i proj", o, v.scale(anorm), weighted);
        }
        I::SquareLower => {
            let v = track(vec![probe.v(n - 1)?])[0];
            let p = sum_pow(&track(probe.proj(n - 1)?), 2);
            let s = sum_pow(&track(probe.sect(n - 1)?), 2);
            d.link("V_(n-1)^2 >= sum proj^2", o, v.powi(2), p);
            d.link("sum proj^2 >= sum sect^2", o, p, s);
        }
        I::Pythagorean { m, u } => {
            let pu = intrinsic_volume(&project_along(body, u)?, *m, &opts.quadrature)?;
            track(vec![pu]);
            let p = sum_pow(&track(probe.proj(*m)?), 2);
            d.link("V_m(K|u)^2 <= sum proj^2", o, pu.powi(2), p);
        }
        I::ZonoidLower { m } => {
            let v = track(vec![probe.v(*m)?])[0];
            let p = sum_pow(&track(probe.proj(*m)?), 2);
            if d.status == Status::OutsideHypothesis {
                d.warnings.push("body is not a zonotope".into());
            }
            d.link(
                "V_m^2 >= sum proj^2 / (n-m)",
                o,
                v.powi(2),
                p.scale(1.0 / (n - m) as f64),
            );
        }
        I::MthLower { m } => {
            if affine_dim(body) <= *m {
                d.status = Status::OutsideHypothesis;
                d.warnings.push(format!("dim K <= {m}"));
            }
            let v = track(vec![probe.v(*m)?])[0];
            let p = sum_pow(&track(probe.proj(*m)?), 2);
            d.link(
                "V_m^2 >= c sum proj^2",
                o,
                v.powi(2),
                p.scale(mth_constant(n, *m)?),
            );
        }
        I::ReverseCs { m } => {
            let p = track(probe.proj(*m)?);
            let lhs = sum_pow(&p, 2);
            let rhs = sum(&p).powi(2).scale(1.0 / ((n - m) as f64).sqrt());
            d.link("sum proj^2 <= (sum proj)^2 / sqrt(n-m)", o, lhs, rhs);
        }
        I::CondEq111 { m } => {
            let p = track(probe.proj(*m)?);
            let total = sum(&p);
            let cap = total.scale(1.0 / (n - m) as f64);
            let hyp_tol = |x: &Measured| {
                super::report::ERROR_FACTOR * (x.err + cap.err)
                    + super::report::EXACT_FLOOR * cap.value.abs().max(1.0)
            };
            if let Some(k) = p.iter().position(|x| x.value - cap.value > hyp_tol(x)) {
                d.status = Status::OutsideHypothesis;
                d.warnings
                    .push(format!("hypothesis fails at coordinate {k}"));
            }
            d.link(
                "sum proj^2 <= (sum proj)^2 / (n-m)",
                o,
                sum_pow(&p, 2),
                total.powi(2).scale(1.0 / (n - m) as f64),
            );
        }
        I::EasyBounds { m, p: pw } => {
            let v = track(vec![probe.v(*m)?])[0];
            let p = power_mean(&track(probe.proj(*m)?), *pw);
            let s = power_mean(&track(probe.sect(*m)?), *pw);
            d.link("V_m >= p-mean proj", o, v, p);
            d.link("p-mean proj >= p-mean sect", o, p, s);
        }
        I::Trivmax { m } => {
            let v = track(vec![probe.v(*m)?])[0];
            let p = max(&track(probe.proj(*m)?));
            let s = max(&track(probe.sect(*m)?));
            d.link("V_m >= max proj", o, v, p);
            d.link("max proj >= max sect", o, p, s);
        }
        I::BmV1Lower => {
            let c0 = c0_constant(n, &opts.quadrature)?;
            let v = track(vec![probe.v(1)?])[0];
            let p = sum(&track(probe.proj(1)?));
            track(vec![c0]);
            d.link("V_1 >= c0 sum proj", o, v, c0 * p);
        }
        I::HeronN3 => {
            let v = track(vec![probe.v(2)?])[0];
            let s = track(probe.sect(1)?);
            let s2 = sum_pow(&s, 2);
            let rhs = s2.powi(2).scale(1.0 / 16.0) - sum_pow(&s, 4).scale(1.0 / 8.0);
            d.link("V_2^2 >= Heron form of sections", o, v.powi(2), rhs);
        }
        I::Prob4 { m, c2 } => {
            let c = match c2 {
                Some(c) => Measured::exact(*c),
                None => track(vec![cross_c2(n, *m, &opts.quadrature)?])[0],
            };
            let v = track(vec![probe.v(*m)?])[0];
            let p = c * sum_pow(&track(probe.proj(*m)?), 2);
            let s = c * sum_pow(&track(probe.sect(*m)?), 2);
            d.link("V_m^2 >= c2 sum proj^2", o, v.powi(2), p);
            d.link("c2 sum proj^2 >= c2 sum sect^2", o, p, s);
        }
        I::Prob5 { m, c3 } => {
            let c = match c3 {
                Some(c) => Measured::exact(*c),
                None => track(vec![cross_c3(n, *m, &opts.quadrature)?])[0],
            };
            let v = track(vec![probe.v(m + 1)?])[0];
            let s = track(probe.sect(*m)?);
            let prod = product(&s.iter().map(|x| x.powi(*m as i32 + 1)).collect::<Vec<_>>());
            d.link(
                "V_(m+1)^(mn) >= c3 prod sect^(m+1)",
                o,
                v.powi((m * n) as i32),
                c * prod,
            );
        }
    }

    let quad_err = errs.iter().map(|x| x.err).fold(0.0, f64::max);
    let quadrature_error = errs.iter().any(|x| !x.is_exact()).then_some(quad_err);
    Ok(finish(id, body, n, d, opts, quadrature_error))
}

fn finish(
    id: &InequalityId,
    body: &Body,
    n: usize,
    d: Draft,
    opts: &EvalOptions,
    quadrature_error: Option<f64>,
) -> IneqReport {
    let tolerance = opts.tolerance.unwrap_or_else(|| {
        d.links
            .iter()
            .map(Link::default_tolerance)
            .fold(0.0, f64::max)
    });
    let first = &d.links[0];
    let oriented_slack = d
        .links
        .iter()
        .map(|l| l.oriented_slack)
        .fold(f64::INFINITY, f64::min);
    let satisfied = oriented_slack >= -tolerance;
    let (equality_flag, equality_family) = if first.oriented_slack.abs() <= tolerance {
        match equality_case_classifier(id, body) {
            Classification::Matched(f) => (EqualityFlag::EqualityCaseMatched, Some(f)),
            Classification::Unmatched => (EqualityFlag::NearEquality, None),
        }
    } else {
        (EqualityFlag::Strict, None)
    };
    IneqReport {
        schema: REPORT_SCHEMA.to_string(),
        id: id.clone(),
        n,
        status: d.status,
        orientation: id.orientation(),
        lhs: first.lhs,
        rhs: first.rhs,
        oriented_slack,
        satisfied,
        tolerance,
        equality_flag,
        equality_family,
        quadrature_error,
        body_fingerprint: crate::io::fingerprint(body),
        links: d.links,
        warnings: d.warnings,
    }
}

/// Evaluate several inequalities on one body, stopping at the first error.
pub fn evaluate_all(
    ids: &[InequalityId],
    body: &Body,
    opts: &EvalOptions,
) -> Result<Vec<IneqReport>> {
    ids.iter().map(|id| evaluate(id, body, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Zonotope;
    use crate::lab::EqualityFamily;

    fn eval(id: &str, body: &Body) -> IneqReport {
        evaluate(&id.parse().unwrap(), body, &EvalOptions::default()).unwrap()
    }

    #[test]
    fn loomis_whitney_on_cube() {
        let r = eval("loomis_whitney", &Body::cube(3).unwrap());
        assert!((r.lhs - 64.0).abs() < 1e-12 && (r.rhs - 64.0).abs() < 1e-12);
        assert_eq!(r.equality_flag, EqualityFlag::EqualityCaseMatched);
        assert_eq!(r.equality_family, Some(EqualityFamily::CoordinateBox));
    }

    #[test]
    fn meyer_and_square_on_octahedron() {
        let c = Body::cross(3).unwrap();
        let r = eval("meyer", &c);
        assert!((r.lhs - 16.0 / 9.0).abs() < 1e-12 && (r.rhs - 16.0 / 9.0).abs() < 1e-12);
        assert_eq!(r.equality_flag, EqualityFlag::EqualityCaseMatched);
        let r = eval("square_lower", &c);
        assert!((r.lhs - 12.0).abs() < 1e-12 && (r.rhs - 12.0).abs() < 1e-12);
        assert!(r.satisfied && r.warnings.is_empty());
    }

    #[test]
    fn zonoid_lower_examples() {
        let r = eval("zonoid_lower:m=1", &Body::cube(3).unwrap());
        assert!((r.lhs - 36.0).abs() < 1e-12 && (r.rhs - 24.0).abs() < 1e-12);
        assert_eq!(r.equality_flag, EqualityFlag::Strict);
        assert_eq!(r.status, Status::Proven);
        let seg = Body::Zonotope(Zonotope::new(vec![0.0; 3], vec![vec![1.0, 1.0, 1.0]]).unwrap());
        let r = eval("zonoid_lower:m=1", &seg);
        assert!((r.lhs - 12.0).abs() < 1e-12 && (r.rhs - 12.0).abs() < 1e-12);
        assert_eq!(r.equality_flag, EqualityFlag::EqualityCaseMatched);
        // For the octahedron the inequality fails, but it is only claimed
        // for zonoids.
        let r = eval("zonoid_lower:m=1", &Body::cross(3).unwrap());
        assert!(!r.satisfied);
        assert_eq!(r.status, Status::OutsideHypothesis);
        assert!(!r.is_proven_violation());
    }

    #[test]
    fn heron_on_octahedron() {
        let r = eval("heron_n3", &Body::cross(3).unwrap());
        assert!((r.lhs - 12.0).abs() < 1e-12 && (r.rhs - 12.0).abs() < 1e-12);
        assert_eq!(r.status, Status::Conjecture);
        assert_eq!(
            r.equality_family,
            Some(EqualityFamily::OSymmetricCoordinateCrossPolytope)
        );
    }

    #[test]
    fn meyer_fails_with_projections_on_flat_body() {
        // A flat triangle has V = 0 while all its projections have area 1/2.
        let tri = crate::geom::VPolytope::from_points(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let body = Body::Polytope(tri);
        let r = eval("meyer", &body);
        assert!(r.satisfied);
        assert!(!r.warnings.is_empty());
        let probe = Probe::new(&body, QuadratureSpec::default());
        let p = product(&probe.proj(2).unwrap()).value * meyer_constant(3);
        assert!((p - 0.125 * 2.0 / 9.0).abs() < 1e-12);
        assert!(r.lhs < p);
    }

    #[test]
    fn chains_have_two_links() {
        let b = Body::cube(4).unwrap();
        for id in [
            "sqrt_n_lower",
            "square_lower",
            "trivmax:m=2",
            "easy_bounds:m=1:p=2",
        ] {
            let r = eval(id, &b);
            assert_eq!(r.links.len(), 2, "{id}");
            assert!(r.satisfied, "{id}");
        }
    }

    #[test]
    fn quadrature_is_reported() {
        let r = eval("bm_v1_lower", &Body::named(Named::k1()).unwrap());
        assert!(r.quadrature_error.is_some());
        assert!(r.satisfied);
        assert!(r.tolerance >= 10.0 * r.quadrature_error.unwrap() * 0.999);
    }
}
