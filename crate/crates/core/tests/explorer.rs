mod common;

use common::*;
use convexiq::explorer::{
    chebyshev_check, functional_f, j_curve, search, ChebyshevOutcome, Problem, SearchConfig,
    SearchFamily,
};
use convexiq::lab::{evaluate, EvalOptions, InequalityId};
use convexiq::measures::QuadratureSpec;
use convexiq::par;
use proptest::prelude::*;
use rand::Rng;

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn f_is_dilation_invariant(seed in any::<u64>(), s in 0.05f64..20.0, zono in any::<bool>()) {
        let b = if zono { zonotope(seed, 3, 5) } else { polytope(seed, 3, 9) };
        let f = functional_f(&b, &q()).unwrap().value;
        let g = functional_f(&b.scaled(s).unwrap(), &q()).unwrap().value;
        prop_assert!(close(f, g, 1e-9));
    }

    #[test]
    fn chebyshev_holds_on_random_admissible_pairs(seed in any::<u64>(), len in 2usize..40) {
        let mut r = rng(seed);
        let mut f: Vec<f64> = (0..len).map(|_| r.random_range(-1.0..1.0)).collect();
        f.sort_by(f64::total_cmp);
        let mean = f.iter().sum::<f64>() / len as f64;
        for x in &mut f {
            *x -= mean;
        }
        let mut g: Vec<f64> = (0..len).map(|_| r.random_range(0.0..5.0)).collect();
        g.sort_by(f64::total_cmp);
        let out = chebyshev_check(&f, &g);
        prop_assert!(matches!(out, ChebyshevOutcome::Holds { .. }), "{:?}", out);
    }
}

#[test]
fn cg_upper_bounds_f() {
    // V1(K) <= sum V1(K|e_i) / (n - 1) puts F at most 1/(n-1).
    for seed in 0..10 {
        let b = zonotope(seed, 3, 5);
        let cg = evaluate(&InequalityId::CgUpper { m: 1 }, &b, &EvalOptions::default()).unwrap();
        let f = functional_f(&b, &q()).unwrap().value;
        assert!(cg.satisfied);
        assert!(f <= 0.5 + 1e-9, "{f}");
    }
}

#[test]
fn j_curve_has_requested_samples() {
    let cube = convexiq::geom::Body::cube(3).unwrap();
    let c = j_curve(&cube, 17).unwrap();
    assert_eq!(c.len(), 17);
    assert!(c.windows(2).all(|w| w[1].0 > w[0].0));
}

#[test]
fn search_is_deterministic_across_paths() {
    let cfg = SearchConfig {
        problem: Problem::Cg33,
        n: 3,
        m: 1,
        family: SearchFamily::Zonotope { generators: 4 },
        iterations: 300,
        proposal_scale: 0.05,
        seed: 9,
        restarts: 3,
        constant: None,
    };
    let a = search(&cfg).unwrap();
    let b = par::sequential(|| search(&cfg).unwrap());
    assert_eq!(a, b);
    assert_eq!(a.trajectory_csv().unwrap(), b.trajectory_csv().unwrap());
    assert!(!a.violation);
}
