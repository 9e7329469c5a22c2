//! Seeded body corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Body, Named, SignedPermutation, VPolytope, Zonotope};
use crate::par;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Hull of `vertices` Gaussian points.
    RandomPolytope { vertices: usize },
    /// Centred zonotope with `generators` Gaussian generators.
    RandomZonotope { generators: usize },
    /// Hull of the sign-change orbit of `vertices` random points.
    Unconditional { vertices: usize },
    /// Hull of the full cube-group orbit of `vertices` random points.
    CubeSymmetric { vertices: usize },
    /// `count` copies of a named body in `R^n`.
    Named { name: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    #[serde(flatten)]
    pub family: Family,
    pub count: usize,
    pub n: usize,
    pub seed: u64,
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::invalid("corpus count must be at least 1"));
        }
        if !(2..=crate::MAX_DIM).contains(&self.n) {
            return Err(Error::invalid(format!(
                "corpus dimension {} outside 2..={}",
                self.n,
                crate::MAX_DIM
            )));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::invalid("corpus scale must be positive"));
        }
        match &self.family {
            Family::RandomPolytope { vertices } if *vertices < self.n + 1 => Err(Error::invalid(
                "random polytopes need at least n + 1 vertices",
            )),
            Family::RandomZonotope { generators } if *generators == 0 => Err(Error::invalid(
                "random zonotopes need at least one generator",
            )),
            Family::Unconditional { vertices } | Family::CubeSymmetric { vertices }
                if *vertices == 0 =>
            {
                Err(Error::invalid("orbit families need at least one point"))
            }
            Family::Named { name } => named(name, self.n).map(|_| ()),
            _ => Ok(()),
        }
    }
}

fn named(name: &str, n: usize) -> Result<Body> {
    match name {
        "cross" => Body::cross(n),
        "cube" => Body::cube(n),
        "k1" if n == 3 => Body::named(Named::k1()),
        "k2" if n == 3 => Body::named(Named::K2),
        _ => Err(Error::invalid(format!("no named body `{name}` in R^{n}"))),
    }
}

fn gaussian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n)
        .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// The RNG for body `index` of a corpus: one ChaCha stream per body, so
/// bodies are independent of generation order.
pub fn body_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn sign_orbit(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = points[0].len();
    let mut out = Vec::with_capacity(points.len() << n);
    for p in points {
        for mask in 0..1u32 << n {
            out.push(
                p.iter()
                    .enumerate()
                    .map(|(i, x)| if mask >> i & 1 == 1 { -x } else { *x })
                    .collect(),
            );
        }
    }
    out
}

/// Body `index` of the corpus.
pub fn generate_one(spec: &CorpusSpec, index: usize) -> Result<Body> {
    let mut rng = body_rng(spec.seed, index);
    let (n, s) = (spec.n, spec.scale);
    Ok(match &spec.family {
        Family::RandomPolytope { vertices } => {
            let pts = (0..*vertices).map(|_| gaussian(&mut rng, n, s)).collect();
            VPolytope::from_points_in(n, pts)?.into()
        }
        Family::RandomZonotope { generators } => {
            let gens = (0..*generators).map(|_| gaussian(&mut rng, n, s)).collect();
            Zonotope::new(vec![0.0; n], gens)?.into()
        }
        Family::Unconditional { vertices } => {
            let pts: Vec<Vec<f64>> = (0..*vertices).map(|_| gaussian(&mut rng, n, s)).collect();
            VPolytope::from_points_in(n, sign_orbit(&pts))?.into()
        }
        Family::CubeSymmetric { vertices } => {
            let pts: Vec<Vec<f64>> = (0..*vertices).map(|_| gaussian(&mut rng, n, s)).collect();
            crate::coord_ops::orbit_hull(&pts)?.into()
        }
        Family::Named { name } => named(name, n)?,
    })
}

/// All bodies of the corpus, in index order.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<Body>> {
    spec.validate()?;
    par::map_range(spec.count, |i| generate_one(spec, i))
        .into_iter()
        .collect()
}

/// A random element of the sign-change subgroup, for orbit checks.
pub fn random_sign_change(n: usize, rng: &mut impl Rng) -> SignedPermutation {
    let signs = (0..n)
        .map(|_| if rng.random::<bool>() { 1 } else { -1 })
        .collect();
    SignedPermutation::new((0..n).collect(), signs).expect("valid signs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::is_invariant_under;

    fn spec(family: Family, n: usize) -> CorpusSpec {
        CorpusSpec {
            family,
            count: 5,
            n,
            seed: 7,
            scale: 1.0,
        }
    }

    #[test]
    fn deterministic() {
        let s = spec(Family::RandomZonotope { generators: 6 }, 4);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
        let seq = par::sequential(|| generate(&s).unwrap());
        assert_eq!(seq, generate(&s).unwrap());
    }

    #[test]
    fn unconditional_bodies_are_sign_invariant() {
        let s = spec(Family::Unconditional { vertices: 3 }, 3);
        let mut rng = body_rng(99, 0);
        let dirs: Vec<Vec<f64>> = (0..16).map(|_| gaussian(&mut rng, 3, 1.0)).collect();
        for b in generate(&s).unwrap() {
            for _ in 0..8 {
                let g = random_sign_change(3, &mut rng);
                assert!(is_invariant_under(&b, &g, &dirs, 1e-12));
            }
        }
    }

    #[test]
    fn spec_validation() {
        let mut s = spec(Family::RandomPolytope { vertices: 3 }, 3);
        assert!(generate(&s).is_err());
        s.family = Family::Named { name: "k1".into() };
        assert!(s.validate().is_ok());
        s.n = 4;
        assert!(s.validate().is_err());
    }
}
