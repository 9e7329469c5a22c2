use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::hull::quickhull;
use super::linalg::{
    affine_frame, dot, factorial, gram_measure, max_abs_diff, norm, sub, vector_rank, Frame,
};
use crate::error::{Error, Result};

/// Coordinates closer than this (max-norm) are the same vertex.
pub const DEDUP_TOL: f64 = 1e-10;
/// Visibility threshold for the hull, relative to the point-set extent.
pub const HULL_EPS: f64 = 1e-10;
/// Singular-value / residual cut for affine rank.
pub const RANK_TOL: f64 = 1e-9;
/// Above this many (simplex, candidate) pairs, facet grouping switches from
/// all-pairs scans to triangulation incidences.
const DIRECT_LIMIT: usize = 4_000_000;

/// A facet of the hull in frame coordinates.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    /// Indices into the canonical vertex list.
    pub vertices: Vec<usize>,
}

#[derive(Debug)]
struct Shape {
    dim: usize,
    frame: Frame,
    local: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    /// `dim`-dimensional measure.
    content: f64,
    /// `(dim - 1)`-dimensional measure of the relative boundary.
    boundary: f64,
    edges: OnceLock<Vec<(usize, usize)>>,
    ridge_sum: OnceLock<f64>,
}

/// A convex polytope given by its vertices.
///
/// Construction canonicalizes: non-extreme points are removed, vertices closer
/// than [`DEDUP_TOL`] merged, and the rest sorted lexicographically, so equal
/// bodies compare equal. Lower-dimensional polytopes are handled in the
/// orthonormal frame of their affine hull.
#[derive(Clone)]
pub struct VPolytope {
    n: usize,
    vertices: Vec<Vec<f64>>,
    shape: Option<Arc<Shape>>,
}

impl fmt::Debug for VPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VPolytope")
            .field("n", &self.n)
            .field("dim", &self.dim())
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices == other.vertices
    }
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

pub(crate) fn validate_point(p: &[f64], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::invalid(format!(
            "point has dimension {}, expected {n}",
            p.len()
        )));
    }
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("non-finite coordinate"));
    }
    Ok(())
}

pub(crate) fn validate_dim(n: usize) -> Result<()> {
    if !(2..=crate::MAX_DIM).contains(&n) {
        return Err(Error::invalid(format!(
            "ambient dimension {n} outside 2..={}",
            crate::MAX_DIM
        )));
    }
    Ok(())
}

impl VPolytope {
    /// Convex hull of `points`.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let n = points
            .first()
            .ok_or_else(|| Error::invalid("convex hull of an empty point list"))?
            .len();
        Self::from_points_in(n, points)
    }

    /// As [`from_points`](Self::from_points) with the ambient dimension fixed.
    pub fn from_points_in(n: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        validate_dim(n)?;
        if points.is_empty() {
            return Err(Error::invalid("convex hull of an empty point list"));
        }
        for p in &points {
            validate_point(p, n)?;
        }
        Ok(build(n, points))
    }

    /// The empty set in `R^n` (an empty section, for instance).
    pub fn empty(n: usize) -> Self {
        VPolytope {
            n,
            vertices: Vec::new(),
            shape: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Affine dimension; `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        self.shape.as_ref().map(|s| s.dim)
    }

    fn shape(&self) -> Option<&Shape> {
        self.shape.as_deref()
    }

    pub fn frame(&self) -> Option<&Frame> {
        self.shape().map(|s| &s.frame)
    }

    /// Vertices in frame coordinates, in the order of [`vertices`](Self::vertices).
    pub fn local_vertices(&self) -> &[Vec<f64>] {
        self.shape().map(|s| s.local.as_slice()).unwrap_or(&[])
    }

    /// Facets in frame coordinates (empty below dimension 1).
    pub fn facets(&self) -> &[Facet] {
        self.shape().map(|s| s.facets.as_slice()).unwrap_or(&[])
    }

    /// `dim`-dimensional Hausdorff measure (1 for a point, 0 when empty).
    pub fn content(&self) -> f64 {
        self.shape().map_or(0.0, |s| s.content)
    }

    /// `(dim - 1)`-dimensional measure of the relative boundary.
    pub fn boundary_content(&self) -> f64 {
        self.shape().map_or(0.0, |s| s.boundary)
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| dot(v, u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Point membership with absolute slack `tol`.
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        let Some(s) = self.shape() else {
            return false;
        };
        if s.frame.residual(p) > tol {
            return false;
        }
        let y = s.frame.to_local(p);
        match s.dim {
            0 => true,
            _ => s
                .facets
                .iter()
                .all(|f| dot(&f.normal, &y) - f.offset <= tol),
        }
    }

    /// Vertex pairs joined by an edge.
    pub fn edges(&self) -> &[(usize, usize)] {
        match self.shape() {
            Some(s) => s.edges.get_or_init(|| compute_edges(s)),
            None => &[],
        }
    }

    /// `sum over (dim-2)-faces of measure * (angle between adjacent facet
    /// normals) / 2pi`, i.e. the intrinsic volume `V_{dim-2}`. Requires
    /// `dim >= 3`.
    pub fn ridge_angle_sum(&self) -> Option<f64> {
        let s = self.shape()?;
        if s.dim < 3 {
            return None;
        }
        Some(*s.ridge_sum.get_or_init(|| compute_ridge_sum(self, s)))
    }

    /// Facet inequalities `a . x <= b` in ambient coordinates, for a
    /// full-dimensional polytope.
    pub fn halfspaces(&self) -> Option<Vec<(Vec<f64>, f64)>> {
        let s = self.shape()?;
        if s.dim != self.n {
            return None;
        }
        Some(
            s.facets
                .iter()
                .map(|f| {
                    let mut a = vec![0.0; self.n];
                    for (b, &c) in s.frame.basis.iter().zip(&f.normal) {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += c * y);
                    }
                    let off = f.offset + dot(&a, &s.frame.origin);
                    (a, off)
                })
                .collect(),
        )
    }

    /// Image under `x -> scale * x + shift`.
    pub fn affine_image(&self, scale_by: f64, shift: &[f64]) -> Result<Self> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let pts = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(x, t)| scale_by * x + t).collect())
            .collect();
        Self::from_points_in(self.n, pts)
    }

    /// Image under a linear map given by a closure on points.
    pub fn map_points(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        Self::from_points_in(self.n, self.vertices.iter().map(|v| f(v)).collect())
    }
}

fn build(n: usize, points: Vec<Vec<f64>>) -> VPolytope {
    let frame = affine_frame(&points, RANK_TOL);
    let k = frame.dim();
    let local: Vec<Vec<f64>> = points.iter().map(|p| frame.to_local(p)).collect();
    let extent = local.iter().map(|y| norm(y)).fold(0.0, f64::max);
    let eps = HULL_EPS * extent.max(1.0);

    // Indices of candidate vertices plus the boundary simplices (in local
    // coordinates) used for the content integrals.
    let (candidates, content, boundary, _interior, simplices) = match k {
        0 => {
            let best = (0..points.len())
                .min_by(|&a, &b| lex_cmp(&points[a], &points[b]))
                .unwrap();
            (vec![best], 1.0, 0.0, vec![], vec![])
        }
        1 => {
            let lo = (0..local.len())
                .min_by(|&a, &b| local[a][0].total_cmp(&local[b][0]))
                .unwrap();
            let hi = (0..local.len())
                .max_by(|&a, &b| local[a][0].total_cmp(&local[b][0]))
                .unwrap();
            let len = local[hi][0] - local[lo][0];
            (vec![lo, hi], len, 2.0, vec![], vec![])
        }
        _ => match quickhull(&local, eps) {
            Some(h) => {
                let mut cand: Vec<usize> = h
                    .simplices
                    .iter()
                    .flat_map(|s| s.verts.iter().copied())
                    .collect();
                cand.sort_unstable();
                cand.dedup();
                let mut content = 0.0;
                let mut boundary = 0.0;
                for s in &h.simplices {
                    let diffs: Vec<Vec<f64>> = s.verts[1..]
                        .iter()
                        .map(|&i| sub(&local[i], &local[s.verts[0]]))
                        .collect();
                    let area = gram_measure(&diffs) / factorial(k - 1);
                    boundary += area;
                    let height = s.offset - dot(&s.normal, &h.interior);
                    content += area * height / k as f64;
                }
                let simplices: Vec<(Vec<f64>, f64, Vec<usize>)> = h
                    .simplices
                    .iter()
                    .map(|s| (s.normal.clone(), s.offset, s.verts.clone()))
                    .collect();
                (cand, content, boundary, h.interior, simplices)
            }
            None => {
                // The frame tolerance and hull tolerance disagree: retry in a
                // coarser frame by dropping the weakest direction.
                return build_lower(n, points, k - 1);
            }
        },
    };

    // Group simplex hyperplanes into true facets. Large hulls use the
    // triangulation's incidences instead of all-pairs scans.
    let tight = 10.0 * eps;
    let large = simplices.len() * candidates.len() > DIRECT_LIMIT;
    let same = |m: &[f64], o: f64, nrm: &[f64], off: f64| {
        max_abs_diff(m, nrm) <= 1e-9 && (o - off).abs() <= tight
    };
    let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut plane_of: Vec<usize> = vec![0; simplices.len()];
    if large {
        let mut order: Vec<usize> = (0..simplices.len()).collect();
        order.sort_by(|&a, &b| {
            simplices[a].0[0]
                .total_cmp(&simplices[b].0[0])
                .then(a.cmp(&b))
        });
        for si in order {
            let (nrm, off, _) = &simplices[si];
            let hit = planes
                .iter()
                .enumerate()
                .rev()
                .take_while(|(_, (m, _))| m[0] >= nrm[0] - 1e-9)
                .find(|(_, (m, o))| same(m, *o, nrm, *off))
                .map(|(j, _)| j);
            plane_of[si] = hit.unwrap_or_else(|| {
                planes.push((nrm.clone(), *off));
                planes.len() - 1
            });
        }
    } else {
        for (si, (nrm, off, _)) in simplices.iter().enumerate() {
            match planes.iter().position(|(m, o)| same(m, *o, nrm, *off)) {
                Some(j) => plane_of[si] = j,
                None => {
                    plane_of[si] = planes.len();
                    planes.push((nrm.clone(), *off));
                }
            }
        }
    }
    if k == 1 {
        planes.push((vec![1.0], local[candidates[1]][0]));
        planes.push((vec![-1.0], -local[candidates[0]][0]));
    }
    let mut incident: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    if large {
        for (si, (_, _, verts)) in simplices.iter().enumerate() {
            for &v in verts {
                let e = incident.entry(v).or_default();
                if !e.contains(&plane_of[si]) {
                    e.push(plane_of[si]);
                }
            }
        }
    }
    let on = |j: usize, i: usize| (dot(&planes[j].0, &local[i]) - planes[j].1).abs() <= tight;
    let all_through =
        |i: usize| -> Vec<usize> { (0..planes.len()).filter(|&j| on(j, i)).collect() };

    // A candidate is extreme when the normals of the facets through it have
    // full rank.
    let mut through: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    let mut extreme: Vec<usize> = candidates
        .into_iter()
        .filter(|&i| {
            if k <= 1 {
                return true;
            }
            let rank_of = |js: &[usize]| {
                let refs: Vec<&[f64]> = js.iter().map(|&j| planes[j].0.as_slice()).collect();
                vector_rank(&refs, 1e-9)
            };
            let mut js = if large {
                let mut js: Vec<usize> = incident.get(&i).cloned().unwrap_or_default();
                js.retain(|&j| on(j, i));
                js.sort_unstable();
                js
            } else {
                all_through(i)
            };
            if large && rank_of(&js) < k {
                js = all_through(i);
            }
            let ok = rank_of(&js) == k;
            if ok && large {
                through.insert(i, js);
            }
            ok
        })
        .collect();

    // Canonical order, then dedup. Lexicographic order puts any duplicate
    // within DEDUP_TOL of the first coordinate, so only that window is
    // compared.
    extreme.sort_by(|&a, &b| lex_cmp(&points[a], &points[b]));
    let mut kept: Vec<usize> = Vec::with_capacity(extreme.len());
    for i in extreme {
        let dup = kept
            .iter()
            .rev()
            .take_while(|&&j| points[i][0] - points[j][0] <= DEDUP_TOL)
            .any(|&j| max_abs_diff(&points[i], &points[j]) <= DEDUP_TOL);
        if !dup {
            kept.push(i);
        }
    }
    let vertices: Vec<Vec<f64>> = kept.iter().map(|&i| points[i].clone()).collect();
    let local_v: Vec<Vec<f64>> = kept.iter().map(|&i| local[i].clone()).collect();

    let facets: Vec<Facet> = if k == 0 {
        Vec::new()
    } else if large {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); planes.len()];
        for (vi, &i) in kept.iter().enumerate() {
            for &j in &through[&i] {
                members[j].push(vi);
            }
        }
        planes
            .into_iter()
            .zip(members)
            .map(|((normal, offset), vertices)| Facet {
                normal,
                offset,
                vertices,
            })
            .collect()
    } else {
        planes
            .into_iter()
            .map(|(normal, offset)| {
                let verts = (0..local_v.len())
                    .filter(|&j| (dot(&normal, &local_v[j]) - offset).abs() <= tight)
                    .collect();
                Facet {
                    normal,
                    offset,
                    vertices: verts,
                }
            })
            .collect()
    };

    VPolytope {
        n,
        vertices,
        shape: Some(Arc::new(Shape {
            dim: k,
            frame,
            local: local_v,
            facets,
            content,
            boundary,
            edges: OnceLock::new(),
            ridge_sum: OnceLock::new(),
        })),
    }
}

/// Fallback when quickhull finds the local point set flat: flatten the last
/// frame direction away and rebuild.
fn build_lower(n: usize, points: Vec<Vec<f64>>, k: usize) -> VPolytope {
    let frame = affine_frame(&points, RANK_TOL);
    let mut reduced = frame.clone();
    reduced.basis.truncate(k);
    let flattened: Vec<Vec<f64>> = points
        .iter()
        .map(|p| reduced.to_ambient(&reduced.to_local(p)))
        .collect();
    build(n, flattened)
}

fn compute_edges(s: &Shape) -> Vec<(usize, usize)> {
    let nv = s.local.len();
    match s.dim {
        0 => return Vec::new(),
        1 => return vec![(0, 1)],
        _ => {}
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (fi, f) in s.facets.iter().enumerate() {
        for &v in &f.vertices {
            incident[v].push(fi);
        }
    }
    // An edge lies in at least one facet, so only co-facial pairs are tried.
    let mut pairs: Vec<(usize, usize)> = s
        .facets
        .iter()
        .flat_map(|f| {
            f.vertices.iter().enumerate().flat_map(move |(x, &a)| {
                f.vertices[x + 1..]
                    .iter()
                    .map(move |&b| (a.min(b), a.max(b)))
            })
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut edges = Vec::new();
    for (a, b) in pairs {
        {
            let common: Vec<&[f64]> = incident[a]
                .iter()
                .filter(|fi| incident[b].contains(fi))
                .map(|&fi| s.facets[fi].normal.as_slice())
                .collect();
            if common.len() + 1 < s.dim {
                continue;
            }
            if vector_rank(&common, 1e-9) == s.dim - 1 {
                edges.push((a, b));
            }
        }
    }
    edges
}

fn compute_ridge_sum(p: &VPolytope, s: &Shape) -> f64 {
    let k = s.dim;
    let mut total = 0.0;
    // Facets meeting in a ridge share a vertex; visit only those pairs, in
    // the same ascending order as a full double loop.
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); s.local.len()];
    for (fi, f) in s.facets.iter().enumerate() {
        for &v in &f.vertices {
            incident[v].push(fi);
        }
    }
    let mut pairs: Vec<(usize, usize)> = incident
        .iter()
        .flat_map(|fs| {
            fs.iter()
                .enumerate()
                .flat_map(move |(x, &a)| fs[x + 1..].iter().map(move |&b| (a.min(b), a.max(b))))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    for (a, b) in pairs {
        {
            let fa = &s.facets[a];
            let fb = &s.facets[b];
            let common: Vec<usize> = fa
                .vertices
                .iter()
                .copied()
                .filter(|v| fb.vertices.contains(v))
                .collect();
            if common.len() < k - 1 {
                continue;
            }
            let diffs: Vec<Vec<f64>> = common[1..]
                .iter()
                .map(|&v| sub(&s.local[v], &s.local[common[0]]))
                .collect();
            let refs: Vec<&[f64]> = diffs.iter().map(|d| d.as_slice()).collect();
            if vector_rank(&refs, 1e-9 * norm(&s.local[common[0]]).max(1.0)) != k - 2 {
                continue;
            }
            let ridge = VPolytope::from_points_in(
                p.n,
                common.iter().map(|&v| p.vertices[v].clone()).collect(),
            )
            .expect("ridge vertices are valid points");
            let cos = dot(&fa.normal, &fb.normal).clamp(-1.0, 1.0);
            total += ridge.content() * cos.acos() / (2.0 * std::f64::consts::PI);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(n: usize) -> VPolytope {
        let pts = (0..1u32 << n)
            .map(|m| {
                (0..n)
                    .map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 })
                    .collect()
            })
            .collect();
        VPolytope::from_points(pts).unwrap()
    }

    #[test]
    fn cube_content_and_boundary() {
        let c = cube(3);
        assert_eq!(c.vertices().len(), 8);
        assert!((c.content() - 8.0).abs() < 1e-12);
        assert!((c.boundary_content() - 24.0).abs() < 1e-12);
        assert_eq!(c.facets().len(), 6);
        assert_eq!(c.edges().len(), 12);
        assert!((c.ridge_angle_sum().unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn face_centres_are_not_vertices() {
        let mut pts = cube(3).vertices().to_vec();
        pts.insert(0, vec![0.0, 0.0, 1.0]);
        pts.insert(0, vec![1.0, 0.0, 0.0]);
        pts.push(vec![0.0, 0.0, 0.0]);
        let c = VPolytope::from_points(pts).unwrap();
        assert_eq!(c.vertices().len(), 8);
    }

    #[test]
    fn planar_polytope_in_r3() {
        let sq = VPolytope::from_points(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(sq.dim(), Some(2));
        assert_eq!(sq.vertices().len(), 4);
        assert!((sq.content() - 2.0).abs() < 1e-12);
        assert!((sq.boundary_content() - 4.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn segment_and_point() {
        let seg = VPolytope::from_points(vec![
            vec![-1.0, 0.0, 0.0],
            vec![0.5, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(seg.dim(), Some(1));
        assert_eq!(seg.vertices(), &[vec![-1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]]);
        assert!((seg.content() - 2.0).abs() < 1e-15);
        let pt = VPolytope::from_points(vec![vec![3.0, 4.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(pt.dim(), Some(0));
        assert_eq!(pt.vertices().len(), 1);
    }

    #[test]
    fn empty_list_is_rejected() {
        assert!(VPolytope::from_points(vec![]).is_err());
    }

    #[test]
    fn membership() {
        let c = cube(3);
        assert!(c.contains(&[0.9, -0.9, 0.0], 1e-12));
        assert!(c.contains(&[1.0, 1.0, 1.0], 1e-12));
        assert!(!c.contains(&[1.1, 0.0, 0.0], 1e-12));
    }

    #[test]
    fn large_hull_uses_incidences_consistently() {
        // Points on a sphere: every input point is a vertex, all facets are
        // triangles, and Euler's formula holds.
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let m = 3000;
        let pts: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / m as f64;
                let r = (1.0 - z * z).sqrt();
                let t = golden * i as f64;
                vec![r * t.cos(), r * t.sin(), z]
            })
            .collect();
        let p = VPolytope::from_points(pts).unwrap();
        assert_eq!(p.vertices().len(), m);
        assert!(p.facets().iter().all(|f| f.vertices.len() == 3));
        let (v, e, f) = (m as i64, p.edges().len() as i64, p.facets().len() as i64);
        assert_eq!(v - e + f, 2);
        assert!((p.content() - 4.0 / 3.0 * std::f64::consts::PI).abs() < 1e-2);
    }
}
