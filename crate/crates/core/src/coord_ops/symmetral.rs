use crate::error::{Error, Result};
use crate::geom::linalg::{max_abs_diff, norm};
use crate::geom::{
    hyperoctahedral_group, minkowski_sum, Ball, Body, SignedPermutation, VPolytope, Zonotope,
};

/// Largest dimension for which the G-symmetral is attempted (`|G| = 3840`).
pub const G_SYMMETRAL_MAX_DIM: usize = 5;

/// `(1/|G|) sum_{g in G} gK` over the `2^n n!` signed permutations.
///
/// Polytopes are summed through the factorization of the group (re-hulled
/// after every sum). Zonotopes stay zonotopes, with parallel generators
/// merged.
pub fn g_symmetral(body: &Body) -> Result<Body> {
    let n = body.ambient_dim();
    if n > G_SYMMETRAL_MAX_DIM {
        return Err(Error::invalid(format!(
            "G-symmetral refused for n = {n} > {G_SYMMETRAL_MAX_DIM}"
        )));
    }
    let group = hyperoctahedral_group(n);
    let inv = 1.0 / group.len() as f64;
    match body {
        Body::Named(_) => Ok(body.clone()),
        Body::Ball(b) if b.collapsed().is_empty() => {
            Ok(Body::Ball(Ball::new(vec![0.0; n], b.radius())?))
        }
        Body::Ball(_) => Err(Error::invalid(
            "G-symmetral of a flattened ball is not a ball; convert to a polytope first",
        )),
        Body::Zonotope(z) => {
            let mut gens = Vec::with_capacity(group.len() * z.generators().len());
            let mut center = vec![0.0; n];
            for g in &group {
                for v in z.generators() {
                    gens.push(g.apply(v).iter().map(|x| x * inv).collect());
                }
                for (c, x) in center.iter_mut().zip(g.apply(z.center())) {
                    *c += x * inv;
                }
            }
            Ok(Body::Zonotope(merge_parallel(center, gens)?))
        }
        Body::Polytope(p) => Ok(Body::Polytope(symmetral_polytope(p, n, inv)?)),
    }
}

fn symmetral_polytope(p: &VPolytope, n: usize, inv: f64) -> Result<VPolytope> {
    if p.is_empty() {
        return Ok(p.clone());
    }
    // Every g is a permutation after a sign change, so the group sum factors:
    // sum_s sK = prod_i (I + R_i) K over the coordinate reflections R_i, and
    // sum over S_k = sum_j (j k) sum over S_(k-1). That is n + n(n-1)/2
    // Minkowski additions instead of 2^n n! - 1.
    let mut acc = p.map_points(|x| x.iter().map(|y| y * inv).collect())?;
    for i in 0..n {
        let flipped = acc.map_points(|x| {
            let mut y = x.to_vec();
            y[i] = -y[i];
            y
        })?;
        acc = minkowski_sum(&acc, &flipped)?;
    }
    for k in 1..n {
        let base = acc.clone();
        for j in 0..k {
            let swapped = base.map_points(|x| {
                let mut y = x.to_vec();
                y.swap(j, k);
                y
            })?;
            acc = minkowski_sum(&acc, &swapped)?;
        }
    }
    Ok(acc)
}

/// Zonotope with parallel generators combined (`[-a, a] + [-b, b] =
/// [-(a+b), a+b]` for parallel `a`, `b` of equal orientation).
pub fn merge_parallel(center: Vec<f64>, gens: Vec<Vec<f64>>) -> Result<Zonotope> {
    // Normalizing through the constructor gives each generator a canonical sign.
    let z = Zonotope::new(vec![0.0; center.len()], gens)?;
    let mut merged: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut dirs: Vec<(Vec<f64>, f64)> = z
        .generators()
        .iter()
        .map(|g| {
            let l = norm(g);
            (g.iter().map(|x| x / l).collect(), l)
        })
        .collect();
    dirs.sort_by(|a, b| crate::geom::lex_cmp(&a.0, &b.0));
    for (d, l) in dirs {
        match merged
            .iter_mut()
            .find(|(e, _)| max_abs_diff(e, &d) <= 1e-12)
        {
            Some(slot) => slot.1 += l,
            None => merged.push((d, l)),
        }
    }
    Zonotope::new(
        center,
        merged
            .into_iter()
            .map(|(d, l)| d.iter().map(|x| x * l).collect())
            .collect(),
    )
}

/// Whether `h_K` is invariant under the generators of the cube group
/// (adjacent transpositions and one sign flip) on the given directions.
pub fn is_g_symmetric(body: &Body, directions: &[Vec<f64>], tol: f64) -> bool {
    let n = body.ambient_dim();
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        gens.push(SignedPermutation::new(perm, vec![1; n]).expect("valid"));
    }
    let mut signs = vec![1; n];
    signs[0] = -1;
    gens.push(SignedPermutation::new((0..n).collect(), signs).expect("valid"));
    gens.iter()
        .all(|g| crate::geom::is_invariant_under(body, g, directions, tol))
}

/// Hull of the `G`-orbit of a point set: a cheap `G`-symmetric polytope.
pub fn orbit_hull(points: &[Vec<f64>]) -> Result<VPolytope> {
    let n = points
        .first()
        .ok_or_else(|| Error::invalid("orbit of an empty point set"))?
        .len();
    let group = hyperoctahedral_group(n);
    let mut pts = Vec::with_capacity(group.len() * points.len());
    for g in &group {
        for p in points {
            pts.push(g.apply(p));
        }
    }
    VPolytope::from_points_in(n, pts)
}
