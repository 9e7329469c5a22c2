#![allow(dead_code)]

use convexiq::geom::{Body, VPolytope, Zonotope};
use convexiq::io::sign_orbit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gauss(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.sample::<f64, _>(StandardNormal)).collect()
}

pub fn unit(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v = gauss(r, n);
    let l = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / l).collect()
}

pub fn polytope(seed: u64, n: usize, k: usize) -> Body {
    let mut r = rng(seed);
    Body::Polytope(VPolytope::from_points((0..k).map(|_| gauss(&mut r, n)).collect()).unwrap())
}

pub fn zonotope(seed: u64, n: usize, k: usize) -> Body {
    let mut r = rng(seed);
    let c = gauss(&mut r, n);
    Body::Zonotope(Zonotope::new(c, (0..k).map(|_| gauss(&mut r, n)).collect()).unwrap())
}

/// Hull of the sign orbit of a few random points: 1-unconditional.
pub fn unconditional(seed: u64, n: usize, k: usize) -> Body {
    let mut r = rng(seed);
    let pts: Vec<Vec<f64>> = (0..k).map(|_| gauss(&mut r, n)).collect();
    Body::Polytope(VPolytope::from_points(sign_orbit(&pts)).unwrap())
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}
