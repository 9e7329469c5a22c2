use crate::error::{Error, Result};
use crate::geom::VPolytope;
use crate::measures::volume;

pub const MIN_SLABS: usize = 16;

#[derive(Clone, Debug)]
pub struct SteinerResult {
    pub body: VPolytope,
    /// `vol(P) - vol(result)`: the discretization loss (the result is
    /// inscribed in the exact symmetral).
    pub volume_defect: f64,
}

/// Chord `[lo, hi]` of the line `y + t e_i` through `P`, from the facet
/// inequalities.
fn chord(h: &[(Vec<f64>, f64)], y: &[f64], i: usize) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (a, b) in h {
        let rest: f64 = a.iter().zip(y).map(|(x, z)| x * z).sum::<f64>();
        let slack = b - rest;
        if a[i].abs() < 1e-14 {
            if slack < -1e-12 {
                return None;
            }
        } else if a[i] > 0.0 {
            hi = hi.min(slack / a[i]);
        } else {
            lo = lo.max(slack / a[i]);
        }
    }
    (hi >= lo - 1e-12).then_some((lo, hi.max(lo)))
}

/// Slab-discretized Steiner symmetral of a 3-polytope in direction `e_i`.
///
/// Chords parallel to `e_i` are measured above a `slabs x slabs` grid on the
/// bounding box of the projection and above the projected vertices, then
/// re-centred on `e_i^perp`; the result is the hull of the chord endpoints.
pub fn steiner_symmetrize(p: &VPolytope, i: usize, slabs: usize) -> Result<SteinerResult> {
    let n = p.ambient_dim();
    if n != 3 {
        return Err(Error::unsupported(
            n,
            n,
            "Steiner symmetrization is implemented for n = 3",
        ));
    }
    if i >= n {
        return Err(Error::invalid(format!("coordinate index {i} out of range")));
    }
    if slabs < MIN_SLABS {
        return Err(Error::invalid(format!("need at least {MIN_SLABS} slabs")));
    }
    let h = p.halfspaces().ok_or_else(|| {
        Error::invalid("Steiner symmetrization needs a full-dimensional polytope")
    })?;
    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for v in p.vertices() {
        for (k, &j) in others.iter().enumerate() {
            lo[k] = lo[k].min(v[j]);
            hi[k] = hi[k].max(v[j]);
        }
    }
    let mut base: Vec<[f64; 2]> = p
        .vertices()
        .iter()
        .map(|v| [v[others[0]], v[others[1]]])
        .collect();
    for a in 0..=slabs {
        for b in 0..=slabs {
            base.push([
                lo[0] + (hi[0] - lo[0]) * a as f64 / slabs as f64,
                lo[1] + (hi[1] - lo[1]) * b as f64 / slabs as f64,
            ]);
        }
    }
    let mut pts = Vec::new();
    for yb in base {
        let mut y = vec![0.0; 3];
        y[others[0]] = yb[0];
        y[others[1]] = yb[1];
        if let Some((a, b)) = chord(&h, &y, i) {
            let half = (b - a) / 2.0;
            for s in [-half, half] {
                let mut q = y.clone();
                q[i] = s;
                pts.push(q);
            }
        }
    }
    let body = VPolytope::from_points_in(3, pts)?;
    Ok(SteinerResult {
        volume_defect: volume(p) - volume(&body),
        body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{convex_hull, Body};
    use crate::measures::{v1_polytope_exact, volume};

    fn cube_at(shift: [f64; 3]) -> VPolytope {
        let pts = (0..8u32)
            .map(|m| {
                (0..3)
                    .map(|j| (if m >> j & 1 == 1 { 1.0 } else { -1.0 }) + shift[j])
                    .collect()
            })
            .collect();
        convex_hull(pts).unwrap()
    }

    #[test]
    fn translated_cube_is_recentred() {
        let r = steiner_symmetrize(&cube_at([0.0, 0.0, 2.5]), 2, 256).unwrap();
        assert!(r.volume_defect.abs() < 8e-3);
        let want = cube_at([0.0, 0.0, 0.0]);
        assert_eq!(r.body.vertices().len(), 8);
        for (a, b) in r.body.vertices().iter().zip(want.vertices()) {
            assert!(crate::geom::linalg::max_abs_diff(a, b) < 1e-12);
        }
    }

    #[test]
    fn tetrahedron_mean_width_does_not_grow() {
        let t = convex_hull(vec![
            vec![0.0, 0.0, 0.0],
            vec![1.3, 0.2, -0.1],
            vec![0.4, 1.1, 0.3],
            vec![0.2, 0.5, 1.4],
        ])
        .unwrap();
        let r = steiner_symmetrize(&t, 0, 128).unwrap();
        assert!(r.volume_defect >= -1e-12);
        assert!(r.volume_defect < 1e-3 * volume(&t));
        let before = v1_polytope_exact(&t).unwrap();
        let after = v1_polytope_exact(&r.body).unwrap();
        assert!(after <= before + 1e-3, "{after} > {before}");
    }

    #[test]
    fn rejects_other_dimensions() {
        let Body::Polytope(c) = Body::cross(4).unwrap().expand().unwrap() else {
            panic!()
        };
        assert!(steiner_symmetrize(&c, 0, 32).is_err());
        assert!(steiner_symmetrize(&cube_at([0.0; 3]), 0, 4).is_err());
    }
}
