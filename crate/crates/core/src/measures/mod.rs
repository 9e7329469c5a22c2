//! Intrinsic volumes, surface area, Hausdorff measure of flats and spherical
//! quadrature of support functions.

mod constants;
mod flat;
mod measured;
mod polytope;
pub mod quadrature;
mod zonotope;

pub use constants::{binomial, c_ni, gamma_half_integer, kappa, sphere_measure};
pub use flat::{hausdorff_flat, project_flat, FlatSet};
pub use measured::Measured;
pub use polytope::{
    surface_area, v1_polytope_exact, v1_quadrature_polytope, v_top, vm_polytope, volume,
};
pub use quadrature::{integrate_sphere, QuadratureSpec, SphereRule};
pub use zonotope::vm_zonotope;

use crate::error::{Error, Result};
use crate::geom::{Ball, Body, Named};

/// `V_m` of a `k`-dimensional ball of radius `r`:
/// `binom(k, m) kappa_k / kappa_{k-m} r^m`.
pub fn vm_ball(b: &Ball, m: usize) -> f64 {
    let k = b.intrinsic_dim();
    if m > k {
        return 0.0;
    }
    binomial(k, m) * kappa(k) / kappa(k - m) * b.radius().powi(m as i32)
}

/// `V_1(K) = (1/kappa_{n-1}) int_{S^{n-1}} h_K` by quadrature, for any body.
pub fn v1_quadrature(body: &Body, spec: &QuadratureSpec) -> Measured {
    match body {
        Body::Polytope(p) => v1_quadrature_polytope(p, spec),
        _ => {
            let n = body.ambient_dim();
            integrate_sphere(n, spec, |u| body.h(u)).scale(1.0 / kappa(n - 1))
        }
    }
}

/// `V_m(K)`, exact where a closed form or exact combinatorial formula
/// exists, quadrature for `V_1` otherwise, and an `Unsupported` error for
/// anything else.
pub fn intrinsic_volume(body: &Body, m: usize, spec: &QuadratureSpec) -> Result<Measured> {
    let n = body.ambient_dim();
    if m > n {
        return Err(Error::invalid(format!("V_{m} requested in R^{n}")));
    }
    let v = match body.expand()? {
        Body::Polytope(p) => vm_polytope(&p, m, spec)?,
        Body::Zonotope(z) => match m {
            0 => Measured::exact(1.0),
            _ => Measured::exact(vm_zonotope(&z, m)?),
        },
        Body::Ball(b) => Measured::exact(vm_ball(&b, m)),
        Body::Named(Named::K1 { .. }) => match m {
            0 => Measured::exact(1.0),
            1 => v1_quadrature(body, spec),
            _ => {
                return Err(Error::unsupported(
                    3,
                    m,
                    "K1 is only available through its support function",
                ))
            }
        },
        Body::Named(_) => unreachable!("expanded"),
    };
    Ok(fault::apply(v))
}

#[cfg(feature = "fault-injection")]
mod fault {
    use super::Measured;

    /// Test hook: multiply every intrinsic volume by `CONVEXIQ_FAULT_SCALE`.
    pub fn apply(v: Measured) -> Measured {
        match std::env::var("CONVEXIQ_FAULT_SCALE")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
        {
            Some(s) => Measured::new(v.value * s, v.err * s.abs()),
            None => v,
        }
    }
}

#[cfg(not(feature = "fault-injection"))]
mod fault {
    use super::Measured;

    #[inline]
    pub fn apply(v: Measured) -> Measured {
        v
    }
}
