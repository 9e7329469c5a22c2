use crate::error::{Error, Result};
use crate::geom::{Ball, Body, Named, VPolytope};

/// Vertices with `|x_i|` at most this lie on the hyperplane.
pub const ON_PLANE_TOL: f64 = 1e-10;

/// `P ∩ e_i^perp`: the vertices on the hyperplane plus the crossing points of
/// edges whose endpoints lie strictly on opposite sides, then hulled. May be
/// empty.
pub fn section(p: &VPolytope, i: usize) -> Result<VPolytope> {
    let n = p.ambient_dim();
    if i >= n {
        return Err(Error::invalid(format!(
            "coordinate index {i} out of range for R^{n}"
        )));
    }
    let verts = p.vertices();
    let mut pts: Vec<Vec<f64>> = Vec::new();
    for v in verts {
        if v[i].abs() <= ON_PLANE_TOL {
            let mut w = v.clone();
            w[i] = 0.0;
            pts.push(w);
        }
    }
    let side = |x: f64| {
        if x > ON_PLANE_TOL {
            1
        } else if x < -ON_PLANE_TOL {
            -1
        } else {
            0
        }
    };
    for &(a, b) in p.edges() {
        let (va, vb) = (&verts[a], &verts[b]);
        if side(va[i]) * side(vb[i]) < 0 {
            let t = va[i] / (va[i] - vb[i]);
            let mut w: Vec<f64> = va.iter().zip(vb).map(|(x, y)| x + t * (y - x)).collect();
            w[i] = 0.0;
            pts.push(w);
        }
    }
    if pts.is_empty() {
        return Ok(VPolytope::empty(n));
    }
    VPolytope::from_points_in(n, pts)
}

/// Section of any body. Balls and `K1` are handled analytically.
pub fn section_body(body: &Body, i: usize) -> Result<Body> {
    let n = body.ambient_dim();
    if i >= n {
        return Err(Error::invalid(format!(
            "coordinate index {i} out of range for R^{n}"
        )));
    }
    Ok(match body {
        Body::Ball(b) => {
            let c = b.center()[i];
            let along = !b.collapsed().contains(&i);
            let r2 = if along {
                b.radius().powi(2) - c * c
            } else if c == 0.0 {
                b.radius().powi(2)
            } else {
                -1.0
            };
            if r2 < 0.0 {
                Body::Polytope(VPolytope::empty(n))
            } else {
                let mut center = b.center().to_vec();
                center[i] = 0.0;
                let mut collapsed = b.collapsed().to_vec();
                collapsed.push(i);
                Body::Ball(Ball::with_collapsed(center, r2.sqrt(), collapsed)?)
            }
        }
        // K1 lies in the unit ball, and its disk in e_i^perp is a great disk.
        Body::Named(Named::K1 { .. }) => {
            Body::Ball(Ball::with_collapsed(vec![0.0; 3], 1.0, vec![i])?)
        }
        _ => Body::Polytope(section(&body.to_polytope()?, i)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{convex_hull, cross_polytope};

    fn cube3(shift: f64) -> VPolytope {
        let pts = (0..8u32)
            .map(|m| {
                (0..3)
                    .map(|j| {
                        let s = if m >> j & 1 == 1 { 1.0 } else { -1.0 };
                        if j == 2 {
                            s + shift
                        } else {
                            s
                        }
                    })
                    .collect()
            })
            .collect();
        convex_hull(pts).unwrap()
    }

    #[test]
    fn cross_section() {
        let c = cross_polytope(&[1.0; 3]).unwrap();
        let s = section(&c, 2).unwrap();
        assert_eq!(s, cross_polytope(&[1.0, 1.0, 0.0]).unwrap());
        assert!((s.content() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn touching_face() {
        let s = section(&cube3(1.0), 2).unwrap();
        assert_eq!(s.dim(), Some(2));
        assert!((s.content() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn missing_section_is_empty() {
        let s = section(&cube3(3.0), 2).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.content(), 0.0);
    }

    #[test]
    fn oblique_cut() {
        // Tetrahedron straddling x_3 = 0.
        let t = convex_hull(vec![
            vec![0.0, 0.0, -1.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
            vec![-1.0, -1.0, 1.0],
        ])
        .unwrap();
        let s = section(&t, 2).unwrap();
        assert_eq!(s.vertices().len(), 3);
        assert!(s.vertices().iter().all(|v| v[2] == 0.0));
    }

    #[test]
    fn ball_section() {
        let b = Body::Ball(Ball::new(vec![0.0, 0.0, 0.5], 1.0).unwrap());
        let Body::Ball(d) = section_body(&b, 2).unwrap() else {
            panic!()
        };
        assert!((d.radius() - 0.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(d.intrinsic_dim(), 2);
    }
}
