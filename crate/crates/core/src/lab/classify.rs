//! Recognition of the bodies for which the catalog inequalities are tight.

use serde::{Deserialize, Serialize};

use super::catalog::InequalityId;
use crate::geom::linalg::{hyperplane_normal, norm};
use crate::geom::{affine_dim, Body, Named, VPolytope, Zonotope};

/// Relative tolerance for shape recognition.
pub const CLASSIFY_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityFamily {
    Singleton,
    LowerDimensional,
    CoordinateBox,
    CoordinateCrossPolytope,
    RegularCoordinateCrossPolytope,
    OSymmetricCoordinateCrossPolytope,
    OSymmetricRegularCoordinateCrossPolytope,
    /// `(n-1)`-dimensional and orthogonal to a diagonal of the cube.
    OrthogonalToCubeDiagonal,
    /// Zonotope whose generators are scalings of sign changes of one vector.
    Zon1eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "classification", content = "family", rename_all = "snake_case")]
pub enum Classification {
    Matched(EqualityFamily),
    Unmatched,
}

#[derive(Clone, Copy, Debug)]
enum Candidate {
    Family(EqualityFamily),
    /// `dim K <= d`.
    AtMost(usize),
}

fn candidates(id: &InequalityId, n: usize) -> Vec<Candidate> {
    use Candidate::*;
    use EqualityFamily::*;
    use InequalityId as I;
    match id {
        I::LoomisWhitney | I::BmUpper | I::CgUpper { .. } => vec![Family(CoordinateBox)],
        I::Meyer => vec![Family(CoordinateCrossPolytope)],
        I::SqrtNLower => vec![
            AtMost(n.saturating_sub(2)),
            Family(OrthogonalToCubeDiagonal),
            Family(RegularCoordinateCrossPolytope),
        ],
        I::SquareLower => vec![AtMost(n - 1), Family(CoordinateCrossPolytope)],
        I::ZonoidLower { m: 1 } => vec![AtMost(1), Family(Zon1eq)],
        I::ZonoidLower { m } => vec![AtMost(*m)],
        I::BmV1Lower => vec![Family(Singleton), Family(RegularCoordinateCrossPolytope)],
        I::HeronN3 | I::Prob5 { .. } => vec![Family(OSymmetricCoordinateCrossPolytope)],
        I::Prob4 { .. } => vec![
            Family(OSymmetricRegularCoordinateCrossPolytope),
            Family(RegularCoordinateCrossPolytope),
        ],
        _ => Vec::new(),
    }
}

/// Whether `id` has a named equality family at all.
pub fn has_equality_family(id: &InequalityId, n: usize) -> bool {
    !candidates(id, n).is_empty()
}

/// Test `body` against the equality families stated for `id`.
pub fn equality_case_classifier(id: &InequalityId, body: &Body) -> Classification {
    let n = body.ambient_dim();
    let shape = Shape::of(body);
    for c in candidates(id, n) {
        let hit = match c {
            Candidate::AtMost(d) => shape.dim <= d,
            Candidate::Family(f) => shape.is(f),
        };
        if hit {
            return Classification::Matched(match c {
                Candidate::AtMost(0) => EqualityFamily::Singleton,
                Candidate::AtMost(_) => EqualityFamily::LowerDimensional,
                Candidate::Family(f) => f,
            });
        }
    }
    Classification::Unmatched
}

/// Axis-parallel segments `[c - lo_j e_j, c + hi_j e_j]` through a common
/// point `c`.
#[derive(Clone, Debug)]
pub struct CrossShape {
    pub center: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl CrossShape {
    fn axes(&self, tol: f64) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .filter(|(a, b)| *a + *b > tol)
            .count()
    }

    fn centred(&self, tol: f64) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    fn regular(&self, tol: f64) -> bool {
        let l = self.lo[0] + self.hi[0];
        self.axes(tol) == self.lo.len()
            && self.centred(tol)
            && self
                .lo
                .iter()
                .zip(&self.hi)
                .all(|(a, b)| (a + b - l).abs() <= tol)
    }

    fn at_origin(&self, tol: f64) -> bool {
        self.center.iter().all(|x| x.abs() <= tol)
    }
}

/// Recognise a coordinate cross-polytope from its vertices.
pub fn cross_shape(vertices: &[Vec<f64>], tol: f64) -> Option<CrossShape> {
    let n = vertices.first()?.len();
    let mut center = vec![0.0; n];
    for (j, c) in center.iter_mut().enumerate() {
        *c = axis_mode(vertices.iter().map(|v| v[j]), tol);
    }
    let (mut lo, mut hi) = (vec![0.0; n], vec![0.0; n]);
    let mut center_is_vertex = false;
    for v in vertices {
        let off: Vec<usize> = (0..n).filter(|&j| (v[j] - center[j]).abs() > tol).collect();
        match off.as_slice() {
            [] => center_is_vertex = true,
            [j] => {
                let d = v[*j] - center[*j];
                if d > 0.0 {
                    hi[*j] = f64::max(hi[*j], d);
                } else {
                    lo[*j] = f64::max(lo[*j], -d);
                }
            }
            _ => return None,
        }
    }
    let through = (0..n).any(|j| lo[j] > tol && hi[j] > tol);
    if !(center_is_vertex || through || vertices.len() == 1) {
        return None;
    }
    Some(CrossShape { center, lo, hi })
}

/// Most frequent value up to `tol`; ties go to the value nearest the middle
/// of the range, then to the smaller one.
fn axis_mode(values: impl Iterator<Item = f64>, tol: f64) -> f64 {
    let mut vals: Vec<f64> = values.collect();
    vals.sort_by(f64::total_cmp);
    let mid = (vals[0] + vals[vals.len() - 1]) / 2.0;
    let mut best = (0usize, f64::INFINITY, vals[0]);
    let mut i = 0;
    while i < vals.len() {
        let mut j = i;
        while j + 1 < vals.len() && vals[j + 1] - vals[i] <= tol {
            j += 1;
        }
        let count = j - i + 1;
        let v = vals[i];
        let dist = (v - mid).abs();
        if count > best.0 || (count == best.0 && dist < best.1 - tol) {
            best = (count, dist, v);
        }
        i = j + 1;
    }
    best.2
}

fn is_coordinate_box(vertices: &[Vec<f64>], tol: f64) -> bool {
    let n = vertices[0].len();
    let mut lo = vertices[0].clone();
    let mut hi = vertices[0].clone();
    for v in vertices {
        for j in 0..n {
            lo[j] = lo[j].min(v[j]);
            hi[j] = hi[j].max(v[j]);
        }
    }
    let active = (0..n).filter(|&j| hi[j] - lo[j] > tol).count();
    if active >= usize::BITS as usize - 1 || vertices.len() != 1usize << active {
        return false;
    }
    vertices
        .iter()
        .all(|v| (0..n).all(|j| (v[j] - lo[j]).abs() <= tol || (v[j] - hi[j]).abs() <= tol))
}

fn zonotope_is_box(z: &Zonotope, tol: f64) -> bool {
    z.generators().iter().all(|g| {
        let l = norm(g);
        g.iter().filter(|x| x.abs() > tol * l).count() <= 1
    })
}

fn is_zon1eq(z: &Zonotope, tol: f64) -> bool {
    let patterns: Vec<Vec<f64>> = z
        .generators()
        .iter()
        .map(|g| {
            let l = norm(g);
            g.iter().map(|x| x.abs() / l).collect()
        })
        .collect();
    patterns
        .windows(2)
        .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| (a - b).abs() <= tol))
}

fn orthogonal_to_diagonal(p: &VPolytope, tol: f64) -> bool {
    let n = p.ambient_dim();
    let Some(frame) = p.frame() else { return false };
    if frame.dim() + 1 != n {
        return false;
    }
    let mut pts = vec![frame.origin.clone()];
    for b in &frame.basis {
        pts.push(frame.origin.iter().zip(b).map(|(o, x)| o + x).collect());
    }
    let refs: Vec<&[f64]> = pts.iter().map(|v| v.as_slice()).collect();
    let nrm = hyperplane_normal(&refs);
    let target = 1.0 / (n as f64).sqrt();
    nrm.iter().all(|x| (x.abs() - target).abs() <= tol)
}

struct Shape {
    n: usize,
    dim: usize,
    tol: f64,
    zonotope: Option<Zonotope>,
    polytope: Option<VPolytope>,
}

impl Shape {
    fn of(body: &Body) -> Shape {
        let dim = affine_dim(body);
        let expanded = body.expand().ok();
        let zonotope = match &expanded {
            Some(Body::Zonotope(z)) => Some(z.clone()),
            _ => None,
        };
        let polytope = match (&expanded, body) {
            (_, Body::Ball(_)) | (_, Body::Named(Named::K1 { .. })) => None,
            (Some(b), _) => b.to_polytope().ok(),
            _ => None,
        };
        let extent = polytope
            .as_ref()
            .map(|p| {
                p.vertices()
                    .iter()
                    .map(|v| v.iter().fold(0.0f64, |a, x| a.max(x.abs())))
                    .fold(0.0, f64::max)
            })
            .unwrap_or(1.0);
        Shape {
            n: body.ambient_dim(),
            dim,
            tol: CLASSIFY_TOL * extent.max(1e-300),
            zonotope,
            polytope,
        }
    }

    fn cross(&self) -> Option<CrossShape> {
        let p = self.polytope.as_ref()?;
        if p.is_empty() {
            return None;
        }
        cross_shape(p.vertices(), self.tol)
    }

    fn is(&self, f: EqualityFamily) -> bool {
        use EqualityFamily::*;
        let tol = self.tol;
        match f {
            Singleton => self
                .polytope
                .as_ref()
                .is_some_and(|p| p.vertices().len() == 1),
            LowerDimensional => self.dim < self.n,
            CoordinateBox => match (&self.zonotope, &self.polytope) {
                (Some(z), _) => zonotope_is_box(z, CLASSIFY_TOL),
                (None, Some(p)) if !p.is_empty() => is_coordinate_box(p.vertices(), tol),
                _ => false,
            },
            CoordinateCrossPolytope => self.cross().is_some(),
            RegularCoordinateCrossPolytope => self.cross().is_some_and(|c| c.regular(tol)),
            OSymmetricCoordinateCrossPolytope => self
                .cross()
                .is_some_and(|c| c.at_origin(tol) && c.centred(tol)),
            OSymmetricRegularCoordinateCrossPolytope => self
                .cross()
                .is_some_and(|c| c.at_origin(tol) && c.regular(tol)),
            OrthogonalToCubeDiagonal => self
                .polytope
                .as_ref()
                .is_some_and(|p| orthogonal_to_diagonal(p, CLASSIFY_TOL)),
            Zon1eq => self
                .zonotope
                .as_ref()
                .is_some_and(|z| is_zon1eq(z, CLASSIFY_TOL)),
        }
    }
}
