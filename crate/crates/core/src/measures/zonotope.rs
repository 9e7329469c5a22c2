use crate::error::{Error, Result};
use crate::geom::linalg::gram_measure;
use crate::geom::Zonotope;
use crate::par;

/// All `m`-subsets of `0..k` in lexicographic order.
pub(crate) fn subsets(k: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > k {
        return out;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        out.push(idx.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < k - m + i {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `V_m(Z) = 2^m * sum over m-subsets S of the generators of vol_m(S)`.
pub fn vm_zonotope(z: &Zonotope, m: usize) -> Result<f64> {
    let n = z.ambient_dim();
    if m == 0 || m > n {
        return Err(Error::invalid(format!("V_{m} of a zonotope in R^{n}")));
    }
    let g = z.generators();
    let subs = subsets(g.len(), m);
    let terms = par::map(&subs, |s| {
        let vecs: Vec<Vec<f64>> = s.iter().map(|&i| g[i].clone()).collect();
        gram_measure(&vecs)
    });
    Ok(2f64.powi(m as i32) * par::ordered_sum(&terms))
}
