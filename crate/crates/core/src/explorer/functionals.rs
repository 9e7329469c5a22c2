use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coord_ops::{is_g_symmetric, project};
use crate::error::{Error, Result};
use crate::geom::{affine_dim, Body};
use crate::lab::ratio;
use crate::measures::quadrature::gauss_legendre;
use crate::measures::{intrinsic_volume, Measured, QuadratureSpec};
use crate::par;

/// `F(K) = V_1(K) / sum_i V_1(K | e_i^perp)`.
pub fn functional_f(body: &Body, spec: &QuadratureSpec) -> Result<Measured> {
    let n = body.ambient_dim();
    if affine_dim(body) == 0 {
        return Err(Error::UndefinedValue(
            "F of a point: zero denominator".into(),
        ));
    }
    let v1 = intrinsic_volume(body, 1, spec)?;
    let parts: Result<Vec<Measured>> =
        par::map_range(n, |i| intrinsic_volume(&project(body, i)?, 1, spec))
            .into_iter()
            .collect();
    let parts = parts?;
    let denom = Measured::new(
        par::ordered_sum(&parts.iter().map(|x| x.value).collect::<Vec<_>>()),
        parts.iter().map(|x| x.err).sum(),
    );
    if denom.value <= 0.0 {
        return Err(Error::UndefinedValue("F with zero projection sum".into()));
    }
    Ok(ratio(v1, denom))
}

/// Gauss-Legendre nodes for [`p_function`]; the integrand is a polynomial
/// in `sin` and smooth, so this is accurate to rounding.
const P_NODES: usize = 64;

/// `p(t) = int_{pi/2 - arctan t}^{pi/2} sin^{n-1}(phi) dphi`.
pub fn p_function(t: f64, n: usize) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid("p(t) needs t >= 0"));
    }
    if n < 2 {
        return Err(Error::invalid("p(t) needs n >= 2"));
    }
    let hi = std::f64::consts::FRAC_PI_2;
    let lo = hi - t.atan();
    Ok(gauss_legendre(lo, hi, P_NODES, |phi| {
        phi.sin().powi(n as i32 - 1)
    }))
}

/// Directions used to check cube symmetry before sampling `J_K`.
pub const SYMMETRY_PROBES: usize = 16;
const SYMMETRY_SEED: u64 = 0x5eed_0fc0_be00;

/// Check that `h_K` is invariant under the cube group on
/// [`SYMMETRY_PROBES`] pseudo-random directions.
pub fn check_cube_symmetry(body: &Body, tol: f64) -> Result<()> {
    let n = body.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(SYMMETRY_SEED);
    let dirs: Vec<Vec<f64>> = (0..SYMMETRY_PROBES)
        .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    if is_g_symmetric(body, &dirs, tol) {
        Ok(())
    } else {
        Err(Error::NotSymmetric(format!(
            "support function not invariant on {SYMMETRY_PROBES} probe directions"
        )))
    }
}

fn j_unchecked(body: &Body, x2: f64) -> Result<f64> {
    if !(0.0..=std::f64::consts::FRAC_1_SQRT_2 + 1e-15).contains(&x2) {
        return Err(Error::invalid(format!("x2 = {x2} outside [0, 1/sqrt 2]")));
    }
    let x1 = (1.0 - x2 * x2).sqrt();
    Ok(body.support(&[x1, x2, 0.0])? / x1)
}

/// `J_K(x_2) = h_K(x_1, x_2, 0) / x_1` with `x_1 = sqrt(1 - x_2^2)`, for a
/// body in `R^3` with the symmetries of the cube.
pub fn j_function_n3(body: &Body, x2: f64) -> Result<f64> {
    if body.ambient_dim() != 3 {
        return Err(Error::invalid("J is sampled for n = 3 only"));
    }
    check_cube_symmetry(body, 1e-9)?;
    j_unchecked(body, x2)
}

/// `J_K` on `samples` equally spaced points of `[0, 1/sqrt 2]`.
pub fn j_curve(body: &Body, samples: usize) -> Result<Vec<(f64, f64)>> {
    if body.ambient_dim() != 3 {
        return Err(Error::invalid("J is sampled for n = 3 only"));
    }
    if samples < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    check_cube_symmetry(body, 1e-9)?;
    let top = std::f64::consts::FRAC_1_SQRT_2;
    (0..samples)
        .map(|k| {
            let x2 = top * k as f64 / (samples - 1) as f64;
            Ok((x2, j_unchecked(body, x2)?))
        })
        .collect()
}

/// Outcome of the discrete Chebyshev-type inequality check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ChebyshevOutcome {
    Holds { sum: f64 },
    Fails { sum: f64 },
    Inapplicable { reason: String },
}

/// For `f` with zero mean that is `<= 0` then `>= 0`, and `g` nonnegative
/// and nondecreasing, `sum f g >= 0`.
pub fn chebyshev_check(f: &[f64], g: &[f64]) -> ChebyshevOutcome {
    let inapplicable = |r: &str| ChebyshevOutcome::Inapplicable { reason: r.into() };
    if f.len() != g.len() || f.is_empty() {
        return inapplicable("f and g need the same nonzero length");
    }
    let scale = f
        .iter()
        .map(|x| x.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let tol = 1e-12 * scale * f.len() as f64;
    if par::ordered_sum(f).abs() > tol {
        return inapplicable("f does not have zero average");
    }
    if let Some(first_pos) = f.iter().position(|&x| x > 0.0) {
        if f[first_pos..].iter().any(|&x| x < 0.0) {
            return inapplicable("f changes sign more than once");
        }
    }
    if g.iter().any(|&x| x < 0.0) || g.windows(2).any(|w| w[1] < w[0]) {
        return inapplicable("g is not nonnegative and nondecreasing");
    }
    let prods: Vec<f64> = f.iter().zip(g).map(|(a, b)| a * b).collect();
    let sum = par::ordered_sum(&prods);
    let gmax = g.iter().copied().fold(0.0, f64::max);
    if sum >= -tol * gmax.max(1.0) {
        ChebyshevOutcome::Holds { sum }
    } else {
        ChebyshevOutcome::Fails { sum }
    }
}
