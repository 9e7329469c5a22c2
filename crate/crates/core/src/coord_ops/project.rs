use crate::error::{Error, Result};
use crate::geom::linalg::{dot, norm};
use crate::geom::{Ball, Body, Named, VPolytope, Zonotope};

fn check_index(n: usize, i: usize) -> Result<()> {
    if i >= n {
        return Err(Error::invalid(format!(
            "coordinate index {i} out of range for R^{n}"
        )));
    }
    Ok(())
}

fn zero(v: &[f64], i: usize) -> Vec<f64> {
    let mut w = v.to_vec();
    w[i] = 0.0;
    w
}

fn delete(v: &[f64], i: usize) -> Vec<f64> {
    v.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &x)| x)
        .collect()
}

/// `K | e_i^perp`, kept in `R^n` with coordinate `i` zeroed. Indices are
/// zero-based.
pub fn project(body: &Body, i: usize) -> Result<Body> {
    let n = body.ambient_dim();
    check_index(n, i)?;
    Ok(match body {
        Body::Polytope(p) => Body::Polytope(project_polytope(p, i)?),
        Body::Zonotope(z) => Body::Zonotope(Zonotope::new(
            zero(z.center(), i),
            z.generators().iter().map(|g| zero(g, i)).collect(),
        )?),
        Body::Ball(b) => {
            let mut collapsed = b.collapsed().to_vec();
            collapsed.push(i);
            Body::Ball(Ball::with_collapsed(
                zero(b.center(), i),
                b.radius(),
                collapsed,
            )?)
        }
        // The other two disks project into the disk lying in e_i^perp.
        Body::Named(Named::K1 { .. }) => {
            Body::Ball(Ball::with_collapsed(vec![0.0; 3], 1.0, vec![i])?)
        }
        Body::Named(_) => project(&body.expand()?, i)?,
    })
}

pub fn project_polytope(p: &VPolytope, i: usize) -> Result<VPolytope> {
    check_index(p.ambient_dim(), i)?;
    if p.is_empty() {
        return Ok(p.clone());
    }
    p.map_points(|v| zero(v, i))
}

/// `K | e_i^perp` as a body in `R^{n-1}` (coordinate `i` deleted). Needs
/// `n >= 3`.
pub fn project_reduced(body: &Body, i: usize) -> Result<Body> {
    let n = body.ambient_dim();
    check_index(n, i)?;
    if n < 3 {
        return Err(Error::invalid("reduced projection needs n >= 3"));
    }
    Ok(match project(body, i)? {
        Body::Polytope(p) => {
            if p.is_empty() {
                Body::Polytope(VPolytope::empty(n - 1))
            } else {
                Body::Polytope(VPolytope::from_points_in(
                    n - 1,
                    p.vertices().iter().map(|v| delete(v, i)).collect(),
                )?)
            }
        }
        Body::Zonotope(z) => Body::Zonotope(Zonotope::new(
            delete(z.center(), i),
            z.generators().iter().map(|g| delete(g, i)).collect(),
        )?),
        Body::Ball(b) => Body::Ball(Ball::with_collapsed(
            delete(b.center(), i),
            b.radius(),
            b.collapsed()
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| if j > i { j - 1 } else { j })
                .collect(),
        )?),
        Body::Named(_) => unreachable!("projection never yields a named body"),
    })
}

/// `K | u^perp` for a polyhedral body (any nonzero `u`), or for a ball when
/// `u` is a coordinate direction.
pub fn project_along(body: &Body, u: &[f64]) -> Result<Body> {
    let n = body.ambient_dim();
    if u.len() != n || norm(u) == 0.0 {
        return Err(Error::invalid(
            "projection direction must be a nonzero vector in R^n",
        ));
    }
    let l = norm(u);
    let u: Vec<f64> = u.iter().map(|x| x / l).collect();
    let axis = (0..n).find(|&j| (u[j].abs() - 1.0).abs() < 1e-15);
    if let Some(j) = axis {
        return project(body, j);
    }
    let flat = |v: &[f64]| -> Vec<f64> {
        let c = dot(v, &u);
        v.iter().zip(&u).map(|(x, y)| x - c * y).collect()
    };
    Ok(match body.expand()? {
        Body::Polytope(p) => {
            if p.is_empty() {
                Body::Polytope(p)
            } else {
                Body::Polytope(p.map_points(flat)?)
            }
        }
        Body::Zonotope(z) => Body::Zonotope(Zonotope::new(
            flat(z.center()),
            z.generators().iter().map(|g| flat(g)).collect(),
        )?),
        _ => {
            return Err(Error::invalid(
                "projection along a non-coordinate direction needs a polyhedral body",
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::cross_polytope;

    #[test]
    fn cross_projects_to_square() {
        let Body::Polytope(p) = project(&Body::cross(3).unwrap(), 2).unwrap() else {
            panic!()
        };
        assert_eq!(p, cross_polytope(&[1.0, 1.0, 0.0]).unwrap());
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn zonotope_segment() {
        let z = Zonotope::new(vec![0.0; 3], vec![vec![1.0, 1.0, 1.0]]).unwrap();
        let Body::Zonotope(pz) = project(&Body::Zonotope(z), 0).unwrap() else {
            panic!()
        };
        assert_eq!(pz.generators(), &[vec![0.0, 1.0, 1.0]]);
    }

    #[test]
    fn reduced_view_of_ball() {
        let b = Ball::with_collapsed(vec![1.0, 2.0, 3.0, 4.0], 1.0, vec![3]).unwrap();
        let Body::Ball(r) = project_reduced(&Body::Ball(b), 1).unwrap() else {
            panic!()
        };
        assert_eq!(r.center(), &[1.0, 3.0, 4.0]);
        assert_eq!(r.collapsed(), &[2]);
    }

    #[test]
    fn projections_commute() {
        let p = crate::geom::convex_hull(vec![
            vec![0.3, 1.0, -0.2, 0.5],
            vec![-1.0, 0.1, 0.7, 0.0],
            vec![0.4, -0.6, 1.1, -0.9],
            vec![0.9, 0.8, 0.2, 1.3],
            vec![-0.2, -0.4, -1.0, 0.6],
        ])
        .unwrap();
        let b = Body::Polytope(p);
        let a = project(&project(&b, 0).unwrap(), 2).unwrap();
        let c = project(&project(&b, 2).unwrap(), 0).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn along_axis_matches_coordinate_projection() {
        let b = Body::cross(3).unwrap();
        assert_eq!(
            project_along(&b, &[0.0, -2.0, 0.0]).unwrap(),
            project(&b, 1).unwrap()
        );
    }
}
