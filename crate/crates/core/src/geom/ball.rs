use super::linalg::dot;
use super::polytope::{validate_dim, validate_point, VPolytope};
use crate::error::{Error, Result};

/// Euclidean ball, possibly flattened into a coordinate subspace.
///
/// `collapsed` lists coordinate axes along which the ball has no extent. A
/// full ball has none; projecting onto `e_i^perp` adds `i`. The set is
/// `{ x : x_j = c_j for j in collapsed, |x - c| <= r }`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    center: Vec<f64>,
    radius: f64,
    collapsed: Vec<usize>,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        Ball::with_collapsed(center, radius, Vec::new())
    }

    pub fn with_collapsed(
        center: Vec<f64>,
        radius: f64,
        mut collapsed: Vec<usize>,
    ) -> Result<Self> {
        let n = center.len();
        validate_dim(n)?;
        validate_point(&center, n)?;
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::invalid("ball radius must be finite and nonnegative"));
        }
        collapsed.sort_unstable();
        collapsed.dedup();
        if collapsed.iter().any(|&i| i >= n) {
            return Err(Error::invalid("collapsed axis out of range"));
        }
        Ok(Ball {
            center,
            radius,
            collapsed,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn collapsed(&self) -> &[usize] {
        &self.collapsed
    }

    /// Dimension of the flat the ball spans.
    pub fn intrinsic_dim(&self) -> usize {
        if self.radius == 0.0 {
            0
        } else {
            self.ambient_dim() - self.collapsed.len()
        }
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        let free: f64 = u
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.collapsed.contains(i))
            .map(|(_, x)| x * x)
            .sum();
        dot(&self.center, u) + self.radius * free.sqrt()
    }

    /// Inscribed polytope. In three dimensions this is a latitude/longitude
    /// mesh with `resolution` longitudes; otherwise the vertices are the
    /// points of a product-angle grid.
    pub fn inscribed_polytope(&self, resolution: usize) -> Result<VPolytope> {
        let n = self.ambient_dim();
        let free: Vec<usize> = (0..n).filter(|i| !self.collapsed.contains(i)).collect();
        let k = free.len();
        let res = resolution.max(4);
        let mut pts = Vec::new();
        let dirs = sphere_grid(k, res);
        for d in dirs {
            let mut p = self.center.clone();
            for (slot, &axis) in free.iter().enumerate() {
                p[axis] += self.radius * d[slot];
            }
            pts.push(p);
        }
        VPolytope::from_points_in(n, pts)
    }
}

/// Points on `S^{k-1}` from a product-angle grid (poles included).
fn sphere_grid(k: usize, res: usize) -> Vec<Vec<f64>> {
    use std::f64::consts::PI;
    match k {
        0 => vec![vec![]],
        1 => vec![vec![-1.0], vec![1.0]],
        _ => {
            let mut out = Vec::new();
            // Polar angles 0..=pi in res/2 steps, recursion for the rest.
            let steps = (res / 2).max(2);
            for j in 0..=steps {
                let phi = PI * j as f64 / steps as f64;
                let (s, c) = phi.sin_cos();
                if s.abs() < 1e-15 {
                    let mut v = vec![0.0; k];
                    v[0] = c.signum();
                    out.push(v);
                    continue;
                }
                if k == 2 {
                    continue;
                }
                for rest in sphere_grid(k - 1, res) {
                    let mut v = vec![c];
                    v.extend(rest.iter().map(|x| s * x));
                    out.push(v);
                }
            }
            if k == 2 {
                out.clear();
                for j in 0..res {
                    let t = 2.0 * PI * j as f64 / res as f64;
                    out.push(vec![t.cos(), t.sin()]);
                }
            }
            out
        }
    }
}
