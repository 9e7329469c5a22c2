//! Small dense linear-algebra helpers on `&[f64]` rows.

use nalgebra::DMatrix;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn centroid(points: &[Vec<f64>]) -> Vec<f64> {
    let n = points[0].len();
    let mut c = vec![0.0; n];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    let inv = 1.0 / points.len() as f64;
    c.iter_mut().for_each(|x| *x *= inv);
    c
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn determinant(rows: &[Vec<f64>]) -> f64 {
    let k = rows.len();
    if k == 0 {
        return 1.0;
    }
    DMatrix::from_fn(k, k, |i, j| rows[i][j]).determinant()
}

/// `sqrt(det(G^T G))` for the vectors in `vectors`: the volume of the
/// parallelepiped they span. Computed from a QR factorization so nearly
/// dependent sets give values near zero rather than `sqrt(rounding noise)`.
pub fn gram_measure(vectors: &[Vec<f64>]) -> f64 {
    let m = vectors.len();
    if m == 0 {
        return 1.0;
    }
    let n = vectors[0].len();
    if m > n {
        return 0.0;
    }
    let a = DMatrix::from_fn(n, m, |i, j| vectors[j][i]);
    let r = a.qr().r();
    (0..m).map(|i| r[(i, i)].abs()).product()
}

/// Singular values of the matrix whose rows are `rows`.
pub fn singular_values(rows: &[Vec<f64>]) -> Vec<f64> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let m = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numerical rank with singular values compared against `tol * max(1, s_max)`.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let sv = singular_values(rows);
    let cut = tol * sv.first().copied().unwrap_or(0.0).max(1.0);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Unit vector orthogonal to the `d - 1` difference vectors `p_i - p_0` of
/// `d` points in `R^d`, via cofactor expansion.
pub fn hyperplane_normal(points: &[&[f64]]) -> Vec<f64> {
    let d = points.len();
    let base = points[0];
    let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, base)).collect();
    let mut normal = vec![0.0; d];
    for (col, slot) in normal.iter_mut().enumerate() {
        let minor: Vec<Vec<f64>> = diffs
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        *slot = sign * determinant(&minor);
    }
    let len = norm(&normal);
    if len > 0.0 {
        normal.iter_mut().for_each(|x| *x /= len);
    }
    normal
}

/// Orthonormal frame of the affine hull of a point set.
#[derive(Clone, Debug)]
pub struct Frame {
    pub origin: Vec<f64>,
    /// `k` orthonormal rows in ambient coordinates.
    pub basis: Vec<Vec<f64>>,
}

impl Frame {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_local(&self, p: &[f64]) -> Vec<f64> {
        let d = sub(p, &self.origin);
        self.basis.iter().map(|b| dot(b, &d)).collect()
    }

    pub fn to_ambient(&self, y: &[f64]) -> Vec<f64> {
        let mut p = self.origin.clone();
        for (b, &c) in self.basis.iter().zip(y) {
            for (pi, bi) in p.iter_mut().zip(b) {
                *pi += c * bi;
            }
        }
        p
    }

    /// Distance from `p` to the affine hull.
    pub fn residual(&self, p: &[f64]) -> f64 {
        let back = self.to_ambient(&self.to_local(p));
        norm(&sub(p, &back))
    }

    /// Direction expressed in frame coordinates (orthogonal part dropped).
    pub fn direction_to_local(&self, u: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|b| dot(b, u)).collect()
    }
}

/// Greedy pivoted Gram-Schmidt on `p - centroid`. A new direction is accepted
/// while the largest residual exceeds `tol * max(1, scale)`.
pub fn affine_frame(points: &[Vec<f64>], tol: f64) -> Frame {
    let origin = centroid(points);
    let n = origin.len();
    let centered: Vec<Vec<f64>> = points.iter().map(|p| sub(p, &origin)).collect();
    let extent = centered.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let cut = tol * extent.max(1.0);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut residuals = centered.clone();
    while basis.len() < n {
        let (best, best_norm) = residuals
            .iter()
            .enumerate()
            .map(|(i, r)| (i, norm(r)))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_norm <= cut {
            break;
        }
        let mut dir = scale(&residuals[best], 1.0 / best_norm);
        // Re-orthogonalize against the accepted basis for stability.
        for b in &basis {
            let c = dot(&dir, b);
            dir.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let len = norm(&dir);
        if len <= 0.0 {
            break;
        }
        dir.iter_mut().for_each(|x| *x /= len);
        for r in residuals.iter_mut() {
            let c = dot(r, &dir);
            r.iter_mut().zip(&dir).for_each(|(x, y)| *x -= c * y);
        }
        basis.push(dir);
    }
    Frame { origin, basis }
}

/// Rank of a set of vectors by greedy Gram-Schmidt with absolute cut `tol`.
pub fn vector_rank(vectors: &[&[f64]], tol: f64) -> usize {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut rest: Vec<Vec<f64>> = vectors.iter().map(|v| v.to_vec()).collect();
    while let Some((best, len)) = rest
        .iter()
        .enumerate()
        .map(|(i, r)| (i, norm(r)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
    {
        if len <= tol {
            break;
        }
        let dir = scale(&rest[best], 1.0 / len);
        for r in rest.iter_mut() {
            let c = dot(r, &dir);
            r.iter_mut().zip(&dir).for_each(|(x, y)| *x -= c * y);
        }
        basis.push(dir);
    }
    basis.len()
}
