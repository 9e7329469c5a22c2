//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) these dispatch to rayon; without it
//! they run on the calling thread. Results are always collected in input
//! order and any reduction happens afterwards on one thread, so output is
//! bit-identical regardless of thread count.
//!
//! [`sequential`] forces the sequential path for the duration of a closure,
//! which is how the benches compare the two.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Run `f` with every helper in this module pinned to the sequential path.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQUENTIAL.with(|flag| {
        let prev = flag.replace(true);
        let out = f();
        flag.set(prev);
        out
    })
}

fn forced_sequential() -> bool {
    FORCE_SEQUENTIAL.with(Cell::get)
}

/// Whether the parallel path is compiled in and not currently disabled.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !forced_sequential()
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !forced_sequential() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..len`.
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !forced_sequential() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// Kahan-compensated sum in slice order.
pub fn ordered_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Cap the global rayon pool from `CONVEXIQ_THREADS`, if set. Safe to call more
/// than once; only the first successful call has an effect.
pub fn init_from_env() {
    #[cfg(feature = "parallel")]
    if let Some(threads) = std::env::var("CONVEXIQ_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let ys = map(&xs, |x| x * 2);
        assert_eq!(ys, xs.iter().map(|x| x * 2).collect::<Vec<_>>());
        let zs = sequential(|| map(&xs, |x| x * 2));
        assert_eq!(ys, zs);
    }

    #[test]
    fn sequential_flag_is_scoped() {
        sequential(|| assert!(!is_parallel()));
        assert_eq!(is_parallel(), cfg!(feature = "parallel"));
    }

    #[test]
    fn compensated_sum() {
        let v = vec![1.0, 1e-16, 1e-16, 1e-16, 1e-16];
        assert!(ordered_sum(&v) > 1.0);
    }
}
