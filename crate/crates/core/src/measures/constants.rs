use std::f64::consts::PI;

/// Volume of the unit ball in `R^j`, `pi^{j/2} / Gamma(j/2 + 1)`.
pub fn kappa(j: usize) -> f64 {
    // kappa_j = (2 pi / j) kappa_{j-2}
    let mut k = if j.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut i = if j.is_multiple_of(2) { 2 } else { 3 };
    while i <= j {
        k *= 2.0 * PI / i as f64;
        i += 2;
    }
    k
}

/// Surface measure of `S^{k-1}`, which is `k * kappa_k`.
pub fn sphere_measure(k: usize) -> f64 {
    k as f64 * kappa(k)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `c_{n,i} = kappa_{n-i} / binom(n, i)`, the mixed-volume normalization of
/// the `i`-th intrinsic volume.
pub fn c_ni(n: usize, i: usize) -> f64 {
    kappa(n - i) / binomial(n, i)
}

/// `Gamma(x)` for `x` a positive multiple of `1/2`.
pub fn gamma_half_integer(twice_x: usize) -> f64 {
    assert!(twice_x > 0, "Gamma has a pole at 0");
    let (mut g, mut t) = if twice_x.is_multiple_of(2) {
        (1.0, 2)
    } else {
        (PI.sqrt(), 1)
    };
    while t + 2 <= twice_x {
        g *= t as f64 / 2.0;
        t += 2;
    }
    g
}
