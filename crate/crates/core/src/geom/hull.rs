//! Quickhull in `R^d` for full-dimensional point sets, `d >= 2`.
//!
//! The boundary is kept as a simplicial complex. Points within `eps` of a
//! facet hyperplane count as inside, so coplanar input yields several coplanar
//! simplices rather than degenerate ones; callers merge them into true facets.

use std::collections::{HashMap, HashSet, VecDeque};

use super::linalg::{dot, hyperplane_normal, sub, vector_rank};

#[derive(Clone, Debug)]
pub struct Simplex {
    pub verts: Vec<usize>,
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Simplex {
    fn distance(&self, p: &[f64]) -> f64 {
        dot(&self.normal, p) - self.offset
    }
}

#[derive(Debug)]
pub struct Hull {
    pub simplices: Vec<Simplex>,
    pub interior: Vec<f64>,
}

struct Live {
    simplex: Simplex,
    outside: Vec<usize>,
    alive: bool,
}

/// The facets of a simplex, each as a sorted vertex list.
fn ridges(verts: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..verts.len()).map(move |skip| {
        let mut r: Vec<usize> = verts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, &v)| v)
            .collect();
        r.sort_unstable();
        r
    })
}

fn make_simplex(points: &[Vec<f64>], verts: Vec<usize>, interior: &[f64]) -> Simplex {
    let refs: Vec<&[f64]> = verts.iter().map(|&i| points[i].as_slice()).collect();
    let mut normal = hyperplane_normal(&refs);
    let mut offset = dot(&normal, refs[0]);
    if dot(&normal, interior) - offset > 0.0 {
        normal.iter_mut().for_each(|x| *x = -*x);
        offset = -offset;
    }
    Simplex {
        verts,
        normal,
        offset,
    }
}

/// Pick `d + 1` affinely independent points greedily; `None` if the set is
/// not full-dimensional at tolerance `eps`.
fn initial_simplex(points: &[Vec<f64>], d: usize, eps: f64) -> Option<Vec<usize>> {
    // Start from the extreme points of the first coordinate.
    let mut lo = 0;
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
    }
    let mut chosen = vec![lo];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let far = points
        .iter()
        .enumerate()
        .max_by(|a, b| {
            let da = sub(a.1, &points[lo]);
            let db = sub(b.1, &points[lo]);
            dot(&da, &da).total_cmp(&dot(&db, &db))
        })
        .map(|(i, _)| i)
        .unwrap_or(lo);
    let mut next = far;
    for _ in 0..d {
        let v = sub(&points[next], &points[chosen[0]]);
        let mut r = v.clone();
        for b in &basis {
            let c = dot(&r, b);
            r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let len = dot(&r, &r).sqrt();
        if len <= eps {
            return None;
        }
        r.iter_mut().for_each(|x| *x /= len);
        basis.push(r);
        chosen.push(next);
        if chosen.len() == d + 1 {
            break;
        }
        // Farthest point from the affine span of the chosen points.
        let mut best = (usize::MAX, -1.0);
        for (i, p) in points.iter().enumerate() {
            let mut r = sub(p, &points[chosen[0]]);
            for b in &basis {
                let c = dot(&r, b);
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
            let dist = dot(&r, &r);
            if dist > best.1 {
                best = (i, dist);
            }
        }
        next = best.0;
    }
    let diffs: Vec<Vec<f64>> = chosen[1..]
        .iter()
        .map(|&i| sub(&points[i], &points[chosen[0]]))
        .collect();
    let refs: Vec<&[f64]> = diffs.iter().map(|v| v.as_slice()).collect();
    if vector_rank(&refs, eps) < d {
        return None;
    }
    Some(chosen)
}

/// Hull of full-dimensional `points` in `R^d`. Returns `None` when the set
/// is not full-dimensional at tolerance `eps`.
pub fn quickhull(points: &[Vec<f64>], eps: f64) -> Option<Hull> {
    let d = points.first()?.len();
    if d < 2 || points.len() < d + 1 {
        return None;
    }
    let init = initial_simplex(points, d, eps)?;
    let mut interior = vec![0.0; d];
    for &i in &init {
        for (c, x) in interior.iter_mut().zip(&points[i]) {
            *c += x / (d + 1) as f64;
        }
    }

    let mut facets: Vec<Live> = Vec::new();
    for skip in 0..=d {
        let verts: Vec<usize> = init
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, &v)| v)
            .collect();
        facets.push(Live {
            simplex: make_simplex(points, verts, &interior),
            outside: Vec::new(),
            alive: true,
        });
    }

    let in_init: std::collections::HashSet<usize> = init.iter().copied().collect();
    for (i, p) in points.iter().enumerate() {
        if in_init.contains(&i) {
            continue;
        }
        if let Some(f) = facets.iter_mut().find(|f| f.simplex.distance(p) > eps) {
            f.outside.push(i);
        }
    }

    // Each ridge (sorted vertex list) maps to the live facets containing it,
    // so the visible region is found by walking from one visible facet.
    let mut ridge_map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (id, f) in facets.iter().enumerate() {
        for r in ridges(&f.simplex.verts) {
            ridge_map.entry(r).or_default().push(id);
        }
    }
    let mut pending: VecDeque<usize> = (0..facets.len())
        .filter(|&i| !facets[i].outside.is_empty())
        .collect();

    while let Some(fi) = pending.pop_front() {
        if !facets[fi].alive || facets[fi].outside.is_empty() {
            continue;
        }
        let apex = {
            let f = &facets[fi];
            *f.outside
                .iter()
                .max_by(|&&a, &&b| {
                    f.simplex
                        .distance(&points[a])
                        .total_cmp(&f.simplex.distance(&points[b]))
                        .then(b.cmp(&a))
                })
                .expect("nonempty outside set")
        };
        let p = &points[apex];

        let mut visible = vec![fi];
        let mut seen: HashSet<usize> = HashSet::from([fi]);
        let mut k = 0;
        while k < visible.len() {
            let v = visible[k];
            k += 1;
            for r in ridges(&facets[v].simplex.verts) {
                for &nb in ridge_map.get(&r).map(Vec::as_slice).unwrap_or(&[]) {
                    if seen.insert(nb) && facets[nb].simplex.distance(p) > eps {
                        visible.push(nb);
                    }
                }
            }
        }
        visible.sort_unstable();

        // Horizon: ridges that occur exactly once among visible facets.
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for &vi in &visible {
            for r in ridges(&facets[vi].simplex.verts) {
                *ridge_count.entry(r).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridge_count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();

        let mut orphans: Vec<usize> = Vec::new();
        for &vi in &visible {
            facets[vi].alive = false;
            orphans.append(&mut facets[vi].outside);
            for r in ridges(&facets[vi].simplex.verts) {
                if let Some(ids) = ridge_map.get_mut(&r) {
                    ids.retain(|&x| x != vi);
                    if ids.is_empty() {
                        ridge_map.remove(&r);
                    }
                }
            }
        }

        let first_new = facets.len();
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(apex);
            let id = facets.len();
            for r in ridges(&verts) {
                ridge_map.entry(r).or_default().push(id);
            }
            facets.push(Live {
                simplex: make_simplex(points, verts, &interior),
                outside: Vec::new(),
                alive: true,
            });
        }
        for q in orphans {
            if q == apex {
                continue;
            }
            let pq = &points[q];
            if let Some(f) = facets[first_new..]
                .iter_mut()
                .find(|f| f.simplex.distance(pq) > eps)
            {
                f.outside.push(q);
            }
        }
        pending.extend((first_new..facets.len()).filter(|&i| !facets[i].outside.is_empty()));
    }

    let simplices = facets
        .into_iter()
        .filter(|f| f.alive)
        .map(|f| f.simplex)
        .collect();
    Some(Hull {
        simplices,
        interior,
    })
}
