use super::linalg::{dot, norm};
use super::polytope::{lex_cmp, validate_dim, validate_point, VPolytope};
use crate::error::{Error, Result};

/// Generators shorter than this are dropped.
pub const ZERO_GENERATOR: f64 = 1e-12;

/// `center + sum_i [-g_i, g_i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope {
    n: usize,
    center: Vec<f64>,
    generators: Vec<Vec<f64>>,
}

impl Zonotope {
    /// Zero generators are dropped and the rest sorted lexicographically
    /// (after flipping each into the half-space where its first nonzero
    /// coordinate is positive, since `[-g, g] = [g, -g]`).
    pub fn new(center: Vec<f64>, generators: Vec<Vec<f64>>) -> Result<Self> {
        let n = center.len();
        validate_dim(n)?;
        validate_point(&center, n)?;
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            validate_point(&g, n)?;
            if norm(&g) <= ZERO_GENERATOR {
                continue;
            }
            let flip = g.iter().find(|x| **x != 0.0).is_some_and(|&x| x < 0.0);
            gens.push(if flip {
                g.iter().map(|x| -x).collect()
            } else {
                g
            });
        }
        gens.sort_by(|a, b| lex_cmp(a, b));
        Ok(Zonotope {
            n,
            center,
            generators: gens,
        })
    }

    /// The cube `[-1, 1]^n`.
    pub fn cube(n: usize) -> Result<Self> {
        let gens = (0..n)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
        Zonotope::new(vec![0.0; n], gens)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        dot(&self.center, u) + self.generators.iter().map(|g| dot(g, u).abs()).sum::<f64>()
    }

    /// Vertex form: the hull of all `2^k` sign combinations. Refused above 20
    /// generators.
    pub fn to_polytope(&self) -> Result<VPolytope> {
        let k = self.generators.len();
        if k > 20 {
            return Err(Error::invalid(format!(
                "zonotope with {k} generators is too large to expand"
            )));
        }
        let pts = (0..1u64 << k)
            .map(|mask| {
                let mut p = self.center.clone();
                for (j, g) in self.generators.iter().enumerate() {
                    let s = if mask >> j & 1 == 1 { 1.0 } else { -1.0 };
                    p.iter_mut().zip(g).for_each(|(x, y)| *x += s * y);
                }
                p
            })
            .collect();
        VPolytope::from_points_in(self.n, pts)
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Zonotope::new(
            self.center.iter().map(|x| x * s).collect(),
            self.generators
                .iter()
                .map(|g| g.iter().map(|x| x * s).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_generators_are_dropped() {
        let z = Zonotope::new(vec![0.0; 3], vec![vec![0.0; 3], vec![0.0, -1.0, 0.0]]).unwrap();
        assert_eq!(z.generators(), &[vec![0.0, 1.0, 0.0]]);
    }

    #[test]
    fn cube_support() {
        let q = Zonotope::cube(3).unwrap();
        assert_eq!(q.support(&[1.0, 1.0, 1.0]), 3.0);
        assert_eq!(q.to_polytope().unwrap().vertices().len(), 8);
    }
}
