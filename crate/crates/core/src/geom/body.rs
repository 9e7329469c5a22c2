use super::ball::Ball;
use super::linalg::{norm, rank};
use super::polytope::{validate_point, VPolytope, RANK_TOL};
use super::symmetry::SignedPermutation;
use super::zonotope::Zonotope;
use crate::error::{Error, Result};

/// Vertices per disk of the inscribed polytope of `K1` unless overridden.
pub const K1_DEFAULT_DISK_VERTICES: usize = 256;
/// Vertex resolution used when a ball has to become a polytope.
pub const BALL_POLYTOPE_RESOLUTION: usize = 64;

/// Standard bodies referenced by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Named {
    /// `conv{±e_i}`.
    Cross(usize),
    /// `[-1, 1]^n`.
    Cube(usize),
    /// Hull of the three unit disks in the coordinate planes of `R^3`.
    K1 { disk_vertices: usize },
    /// `sqrt(pi/2) * Cross(3)`.
    K2,
}

impl Named {
    pub fn ambient_dim(&self) -> usize {
        match *self {
            Named::Cross(n) | Named::Cube(n) => n,
            Named::K1 { .. } | Named::K2 => 3,
        }
    }

    pub fn k1() -> Self {
        Named::K1 {
            disk_vertices: K1_DEFAULT_DISK_VERTICES,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Named::Cross(n) | Named::Cube(n) => super::polytope::validate_dim(n),
            Named::K1 { disk_vertices } if disk_vertices < 3 => {
                Err(Error::invalid("K1 needs at least 3 vertices per disk"))
            }
            _ => Ok(()),
        }
    }

    fn support(&self, u: &[f64]) -> f64 {
        match self {
            Named::Cross(_) => u.iter().map(|x| x.abs()).fold(0.0, f64::max),
            Named::Cube(_) => u.iter().map(|x| x.abs()).sum(),
            Named::K1 { .. } => k1_support(u),
            Named::K2 => {
                (std::f64::consts::PI / 2.0).sqrt() * u.iter().map(|x| x.abs()).fold(0.0, f64::max)
            }
        }
    }
}

/// Exact support function of `K1`: the largest of the three disk supports
/// `sqrt(|u|^2 - u_i^2)`.
pub fn k1_support(u: &[f64]) -> f64 {
    let sq: f64 = u.iter().map(|x| x * x).sum();
    let min_sq = u.iter().map(|x| x * x).fold(f64::INFINITY, f64::min);
    (sq - min_sq).max(0.0).sqrt()
}

/// Cross-polytope `conv{±t_i e_i}`.
pub fn cross_polytope(t: &[f64]) -> Result<VPolytope> {
    let n = t.len();
    let mut pts = Vec::with_capacity(2 * n);
    for (i, &ti) in t.iter().enumerate() {
        for s in [-1.0, 1.0] {
            let mut p = vec![0.0; n];
            p[i] = s * ti;
            pts.push(p);
        }
    }
    VPolytope::from_points_in(n, pts)
}

/// Inscribed polytope of `K1` with `k` equally spaced points on each disk.
pub fn k1_polytope(k: usize) -> Result<VPolytope> {
    let mut pts = Vec::with_capacity(3 * k);
    for axis in 0..3 {
        let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
        for j in 0..k {
            let (s, c) = (std::f64::consts::TAU * j as f64 / k as f64).sin_cos();
            let mut p = vec![0.0; 3];
            p[a] = c;
            p[b] = s;
            pts.push(p);
        }
    }
    VPolytope::from_points_in(3, pts)
}

/// The input type of every checker.
#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Polytope(VPolytope),
    Zonotope(Zonotope),
    Ball(Ball),
    Named(Named),
}

impl From<VPolytope> for Body {
    fn from(p: VPolytope) -> Self {
        Body::Polytope(p)
    }
}

impl From<Zonotope> for Body {
    fn from(z: Zonotope) -> Self {
        Body::Zonotope(z)
    }
}

impl From<Ball> for Body {
    fn from(b: Ball) -> Self {
        Body::Ball(b)
    }
}

impl From<Named> for Body {
    fn from(n: Named) -> Self {
        Body::Named(n)
    }
}

impl Body {
    pub fn named(n: Named) -> Result<Self> {
        n.validate()?;
        Ok(Body::Named(n))
    }

    pub fn cross(n: usize) -> Result<Self> {
        Body::named(Named::Cross(n))
    }

    pub fn cube(n: usize) -> Result<Self> {
        Body::named(Named::Cube(n))
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Body::Polytope(p) => p.ambient_dim(),
            Body::Zonotope(z) => z.ambient_dim(),
            Body::Ball(b) => b.ambient_dim(),
            Body::Named(n) => n.ambient_dim(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Body::Polytope(p) if p.is_empty())
    }

    /// `h_K(u)`. Errors on a zero or malformed direction.
    pub fn support(&self, u: &[f64]) -> Result<f64> {
        validate_point(u, self.ambient_dim())?;
        if norm(u) == 0.0 {
            return Err(Error::invalid("support function needs a nonzero direction"));
        }
        if self.is_empty() {
            return Err(Error::UndefinedValue("support of the empty set".into()));
        }
        Ok(self.h(u))
    }

    /// Support function without argument checks, for hot loops.
    pub fn h(&self, u: &[f64]) -> f64 {
        match self {
            Body::Polytope(p) => p.support(u),
            Body::Zonotope(z) => z.support(u),
            Body::Ball(b) => b.support(u),
            Body::Named(n) => n.support(u),
        }
    }

    /// Replace a named body by its concrete representation. `K1` has none
    /// beyond its support function and stays named.
    pub fn expand(&self) -> Result<Body> {
        Ok(match self {
            Body::Named(Named::Cross(n)) => Body::Polytope(cross_polytope(&vec![1.0; *n])?),
            Body::Named(Named::Cube(n)) => Body::Zonotope(Zonotope::cube(*n)?),
            Body::Named(Named::K2) => {
                Body::Polytope(cross_polytope(&[(std::f64::consts::PI / 2.0).sqrt(); 3])?)
            }
            other => other.clone(),
        })
    }

    /// A polytope equal to the body, or inscribed in it for balls and `K1`.
    pub fn to_polytope(&self) -> Result<VPolytope> {
        match self {
            Body::Polytope(p) => Ok(p.clone()),
            Body::Zonotope(z) => z.to_polytope(),
            Body::Ball(b) => b.inscribed_polytope(BALL_POLYTOPE_RESOLUTION),
            Body::Named(Named::K1 { disk_vertices }) => k1_polytope(*disk_vertices),
            Body::Named(_) => self.expand()?.to_polytope(),
        }
    }

    /// Whether [`to_polytope`](Self::to_polytope) is exact.
    pub fn is_polyhedral(&self) -> bool {
        !matches!(self, Body::Ball(_) | Body::Named(Named::K1 { .. }))
    }

    /// `x -> s * x` (about the origin).
    pub fn scaled(&self, s: f64) -> Result<Body> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::invalid("scale factor must be positive"));
        }
        Ok(match self.expand()? {
            Body::Polytope(p) => Body::Polytope(p.affine_image(s, &vec![0.0; p.ambient_dim()])?),
            Body::Zonotope(z) => Body::Zonotope(z.scaled(s)?),
            Body::Ball(b) => Body::Ball(Ball::with_collapsed(
                b.center().iter().map(|x| s * x).collect(),
                s * b.radius(),
                b.collapsed().to_vec(),
            )?),
            Body::Named(Named::K1 { disk_vertices }) => {
                Body::Polytope(k1_polytope(disk_vertices)?.affine_image(s, &[0.0; 3])?)
            }
            Body::Named(_) => unreachable!("expanded"),
        })
    }
}

/// Convex hull of a point list.
pub fn convex_hull(points: Vec<Vec<f64>>) -> Result<VPolytope> {
    VPolytope::from_points(points)
}

/// `P + Q`, the hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::invalid(format!(
            "Minkowski sum of bodies in R^{} and R^{}",
            p.ambient_dim(),
            q.ambient_dim()
        )));
    }
    if p.is_empty() || q.is_empty() {
        return Ok(VPolytope::empty(p.ambient_dim()));
    }
    let mut pts = Vec::with_capacity(p.vertices().len() * q.vertices().len());
    for a in p.vertices() {
        for b in q.vertices() {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    VPolytope::from_points_in(p.ambient_dim(), pts)
}

/// `gK`.
pub fn apply_symmetry(body: &Body, g: &SignedPermutation) -> Result<Body> {
    let n = body.ambient_dim();
    if g.dim() != n {
        return Err(Error::invalid(format!(
            "symmetry of R^{} applied to a body in R^{n}",
            g.dim()
        )));
    }
    Ok(match body {
        Body::Polytope(p) => Body::Polytope(p.map_points(|x| g.apply(x))?),
        Body::Zonotope(z) => Body::Zonotope(Zonotope::new(
            g.apply(z.center()),
            z.generators().iter().map(|v| g.apply(v)).collect(),
        )?),
        Body::Ball(b) => Body::Ball(Ball::with_collapsed(
            g.apply(b.center()),
            b.radius(),
            b.collapsed().iter().map(|&i| g.perm()[i]).collect(),
        )?),
        // All named bodies are invariant under the cube group.
        Body::Named(_) => body.clone(),
    })
}

/// Dimension of the affine hull.
pub fn affine_dim(body: &Body) -> usize {
    match body {
        Body::Polytope(p) => p.dim().unwrap_or(0),
        Body::Zonotope(z) => rank(z.generators(), RANK_TOL),
        Body::Ball(b) => b.intrinsic_dim(),
        Body::Named(n) => n.ambient_dim(),
    }
}

/// Whether `h_K` is invariant under `g` on `directions`.
pub fn is_invariant_under(
    body: &Body,
    g: &SignedPermutation,
    directions: &[Vec<f64>],
    tol: f64,
) -> bool {
    directions.iter().all(|u| {
        let a = body.h(u);
        let b = body.h(&g.inverse().apply(u));
        (a - b).abs() <= tol * a.abs().max(1.0)
    })
}
