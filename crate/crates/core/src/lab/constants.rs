use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use crate::coord_ops::{project, section_body};
use crate::error::{Error, Result};
use crate::geom::linalg::factorial;
use crate::geom::Body;
use crate::measures::{gamma_half_integer, intrinsic_volume, Measured, QuadratureSpec};

/// `(1/pi) (Gamma((n-m)/2) / Gamma((n-m+1)/2))^2`, the constant of the
/// general `m`-th intrinsic volume lower bound.
pub fn mth_constant(n: usize, m: usize) -> Result<f64> {
    if m == 0 || m + 2 > n {
        return Err(Error::invalid(format!(
            "mth constant needs 1 <= m <= n - 2, got n = {n}, m = {m}"
        )));
    }
    let r = gamma_half_integer(n - m) / gamma_half_integer(n - m + 1);
    Ok(r * r / PI)
}

/// `(n-1)! / n^{n-1}`.
pub fn meyer_constant(n: usize) -> f64 {
    factorial(n - 1) / (n as f64).powi(n as i32 - 1)
}

type Cache = Mutex<HashMap<(usize, usize), Measured>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `c_0(n) = V_1(C^n) / (n V_1(C^n | e_1^perp))`, the minimum of
/// `V_1(K) / sum_i V_1(K | e_i^perp)`. Exact for `n = 3`; quadrature for
/// larger `n`.
pub fn c0_constant(n: usize, spec: &QuadratureSpec) -> Result<Measured> {
    if n < 3 {
        return Err(Error::invalid("c0 is defined for n >= 3"));
    }
    let key = (n, spec.resolution);
    if let Some(v) = cache().lock().expect("c0 cache").get(&key) {
        return Ok(*v);
    }
    let c = Body::cross(n)?;
    let v1 = intrinsic_volume(&c, 1, spec)?;
    let p1 = intrinsic_volume(&project(&c, 0)?, 1, spec)?;
    let out = ratio(v1, p1.scale(n as f64));
    cache().lock().expect("c0 cache").insert(key, out);
    Ok(out)
}

/// `a / b` with first-order error propagation.
pub fn ratio(a: Measured, b: Measured) -> Measured {
    let v = a.value / b.value;
    Measured::new(v, a.err / b.value.abs() + v.abs() * b.err / b.value.abs())
}

/// The `c_2` at which the regular cross-polytope is tight:
/// `V_m(C^n)^2 / sum_i V_m(C^n | e_i^perp)^2`.
pub fn cross_c2(n: usize, m: usize, spec: &QuadratureSpec) -> Result<Measured> {
    let c = Body::cross(n)?;
    let v = intrinsic_volume(&c, m, spec)?;
    let p = intrinsic_volume(&project(&c, 0)?, m, spec)?;
    Ok(ratio(v.powi(2), p.powi(2).scale(n as f64)))
}

/// The `c_3` at which the regular cross-polytope is tight:
/// `V_{m+1}(C^n)^{mn} / prod_i V_m(C^n cap e_i^perp)^{m+1}`.
pub fn cross_c3(n: usize, m: usize, spec: &QuadratureSpec) -> Result<Measured> {
    let c = Body::cross(n)?;
    let v = intrinsic_volume(&c, m + 1, spec)?;
    let s = intrinsic_volume(&section_body(&c, 0)?, m, spec)?;
    Ok(ratio(v.powi((m * n) as i32), s.powi(((m + 1) * n) as i32)))
}
