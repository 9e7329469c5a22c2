use super::constants::kappa;
use super::measured::Measured;
use super::quadrature::{integrate_sphere, QuadratureSpec};
use crate::error::{Error, Result};
use crate::geom::linalg::dot;
use crate::geom::VPolytope;

/// `V_n(P)`; zero below full dimension.
pub fn volume(p: &VPolytope) -> f64 {
    if p.dim() == Some(p.ambient_dim()) {
        p.content()
    } else {
        0.0
    }
}

/// Surface area. An `(n-1)`-dimensional polytope counts both sides (twice
/// its measure); lower dimensions give 0.
pub fn surface_area(p: &VPolytope) -> f64 {
    let n = p.ambient_dim();
    match p.dim() {
        Some(k) if k == n => p.boundary_content(),
        Some(k) if k + 1 == n => 2.0 * p.content(),
        _ => 0.0,
    }
}

/// `V_{n-1}(P) = S(P) / 2`.
pub fn v_top(p: &VPolytope) -> f64 {
    surface_area(p) / 2.0
}

/// Sum over edges of length times normalized exterior angle, for a
/// full-dimensional polytope in `R^3`.
pub fn v1_polytope_exact(p: &VPolytope) -> Result<f64> {
    if p.ambient_dim() != 3 {
        return Err(Error::unsupported(
            p.ambient_dim(),
            1,
            "edge formula implemented for R^3 only",
        ));
    }
    match p.dim() {
        Some(3) => Ok(p.ridge_angle_sum().expect("dimension 3")),
        d => Err(Error::unsupported(
            3,
            1,
            format!("edge formula needs a 3-polytope, got dimension {d:?}"),
        )),
    }
}

/// Mean-width route for `V_1`, in the frame of the affine hull.
pub fn v1_quadrature_polytope(p: &VPolytope, spec: &QuadratureSpec) -> Measured {
    let Some(k) = p.dim() else {
        return Measured::exact(0.0);
    };
    if k == 0 {
        return Measured::exact(0.0);
    }
    let local = p.local_vertices();
    let integral = integrate_sphere(k, spec, |u| {
        local
            .iter()
            .map(|v| dot(v, u))
            .fold(f64::NEG_INFINITY, f64::max)
    });
    integral.scale(1.0 / kappa(k - 1))
}

/// `V_m(P)`. Exact whenever `m` is `0`, at least `dim - 2`, or above the
/// dimension; `m = 1` otherwise goes through quadrature. Any other
/// combination is an error rather than an estimate.
pub fn vm_polytope(p: &VPolytope, m: usize, spec: &QuadratureSpec) -> Result<Measured> {
    let n = p.ambient_dim();
    if m > n {
        return Err(Error::invalid(format!("V_{m} requested in R^{n}")));
    }
    let Some(k) = p.dim() else {
        return Ok(Measured::exact(0.0));
    };
    let exact = Measured::exact;
    Ok(match m {
        0 => exact(1.0),
        _ if m > k => exact(0.0),
        _ if m == k => exact(p.content()),
        _ if m + 1 == k => exact(p.boundary_content() / 2.0),
        _ if m + 2 == k => exact(p.ridge_angle_sum().expect("dimension at least 3")),
        1 => v1_quadrature_polytope(p, spec),
        _ => {
            return Err(Error::unsupported(
                n,
                m,
                format!("polytope of dimension {k}: only V_0, V_1, V_{{k-2}}, V_{{k-1}}, V_k"),
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{convex_hull, cross_polytope};
    use std::f64::consts::PI;

    fn cube(n: usize) -> VPolytope {
        let pts = (0..1u32 << n)
            .map(|m| {
                (0..n)
                    .map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 })
                    .collect()
            })
            .collect();
        convex_hull(pts).unwrap()
    }

    #[test]
    fn cube_measures() {
        let q = cube(3);
        assert!((volume(&q) - 8.0).abs() < 1e-12);
        assert!((surface_area(&q) - 24.0).abs() < 1e-12);
        assert!((v1_polytope_exact(&q).unwrap() - 6.0).abs() < 1e-12);
        let spec = QuadratureSpec::default();
        assert!((vm_polytope(&cube(4), 3, &spec).unwrap().value - 32.0).abs() < 1e-9);
        // V_2 of the 4-cube: 6 pairs of sides, 4 each.
        assert!((vm_polytope(&cube(4), 2, &spec).unwrap().value - 24.0).abs() < 1e-9);
    }

    #[test]
    fn cross_polytope_measures() {
        let c = cross_polytope(&[1.0; 3]).unwrap();
        assert!((volume(&c) - 4.0 / 3.0).abs() < 1e-12);
        assert!((surface_area(&c) - 4.0 * 3f64.sqrt()).abs() < 1e-12);
        let closed = 12.0 * 2f64.sqrt() * (1.0f64 / 3.0).acos() / (2.0 * PI);
        assert!((v1_polytope_exact(&c).unwrap() - closed).abs() < 1e-12);
        for n in 2..=5 {
            let c = cross_polytope(&vec![1.0; n]).unwrap();
            let want = 2f64.powi(n as i32) / (1..=n).product::<usize>() as f64;
            assert!((volume(&c) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_matches_edge_formula() {
        let c = cross_polytope(&[1.0; 3]).unwrap();
        let q = v1_quadrature_polytope(&c, &QuadratureSpec::default());
        assert!((q.value - v1_polytope_exact(&c).unwrap()).abs() < 1e-4);
    }

    #[test]
    fn flat_square_in_r3() {
        // Side sqrt(2), so V_2 = 2 (not doubled) and surface area 4.
        let s = convex_hull(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
        ])
        .unwrap();
        let spec = QuadratureSpec::default();
        assert!((vm_polytope(&s, 2, &spec).unwrap().value - 2.0).abs() < 1e-12);
        assert!((surface_area(&s) - 4.0).abs() < 1e-12);
        assert!((vm_polytope(&s, 1, &spec).unwrap().value - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(vm_polytope(&s, 3, &spec).unwrap().value, 0.0);
        assert!(v1_polytope_exact(&s).is_err());
    }

    #[test]
    fn unsupported_is_explicit() {
        let c = cross_polytope(&[1.0; 5]).unwrap();
        let e = vm_polytope(&c, 2, &QuadratureSpec::default()).unwrap_err();
        assert!(matches!(e, Error::Unsupported { n: 5, m: 2, .. }));
    }
}
