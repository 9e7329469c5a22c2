//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails when a
//! criterion outside `UNATTAINABLE` fails, or when one inside it starts
//! passing (the record of why it cannot pass is then stale).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use convexiq::coord_ops::{g_symmetral, project, section_body};
use convexiq::explorer::{
    cross3_v1_closed_form, functional_f, j_curve, k1_v1_reduced_1d, k1_v1_reduced_2d,
    reproduce_eq1_falsification, reproduce_k1, search, Problem, SearchConfig, SearchFamily,
    K1_NODES,
};
use convexiq::geom::{cross_polytope, Body, Named, VPolytope, Zonotope};
use convexiq::io::{generate_one, to_json_pretty, write_corpus, CorpusSpec, Family};
use convexiq::lab::{
    c0_constant, cross_polytope_from_sections, evaluate, mth_constant, segment_from_projections,
    EqualityFlag, EvalOptions, IneqReport, InequalityId, SegmentOutcome,
};
use convexiq::measures::{
    hausdorff_flat, intrinsic_volume, project_flat, v1_polytope_exact, FlatSet, QuadratureSpec,
};
use convexiq::par;

/// Criteria that cannot pass as stated, with the reason.
const UNATTAINABLE: &[(usize, &str)] = &[(
    9,
    "reference c0(3) = 0.391820 is 6.6e-6 below V1(C3)/(3 V1(C3|e1)) = 0.3918266, outside 1e-6",
)];

type Criterion = (usize, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(20_241_019);
    r.set_stream(stream);
    r
}

fn gauss(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.sample::<f64, _>(StandardNormal)).collect()
}

fn unit(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v = gauss(r, n);
    let l = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / l).collect()
}

fn opts() -> EvalOptions {
    EvalOptions::default()
}

fn c1() -> Outcome {
    let t = Instant::now();
    let a = k1_v1_reduced_2d(K1_NODES);
    let b = k1_v1_reduced_1d(K1_NODES);
    let full = reproduce_k1(&QuadratureSpec::default()).expect("k1 reproduction");
    let secs = t.elapsed().as_secs_f64();
    let pass = (a - 3.8663).abs() <= 1e-3
        && (b - 3.8663).abs() <= 1e-3
        && (a - b).abs() <= 1e-5
        && secs < 30.0;
    outcome(
        pass,
        format!(
            "2D {a:.10}, inner closed form {b:.10}, |diff| {:.1e}, sphere quadrature {:.10}, {secs:.2}s",
            (a - b).abs(),
            full.v1_k1_sphere
        ),
    )
}

fn c2() -> Outcome {
    let exact = v1_polytope_exact(&cross_polytope(&[1.0, 1.0, 1.0]).unwrap()).unwrap();
    let closed = cross3_v1_closed_form();
    let k2 = intrinsic_volume(
        &Body::named(Named::K2).unwrap(),
        1,
        &QuadratureSpec::default(),
    )
    .unwrap();
    let pass = (exact - closed).abs() <= 1e-12 && (k2.value - 4.1669).abs() <= 1e-4;
    outcome(
        pass,
        format!(
            "V1(C3) exact {exact:.15} vs closed form {closed:.15} (|diff| {:.1e}); V1(K2) {:.10}",
            (exact - closed).abs(),
            k2.value
        ),
    )
}

fn c3() -> Outcome {
    let r = reproduce_eq1_falsification(&QuadratureSpec::default()).unwrap();
    outcome(
        (r.ratio - 0.46058).abs() <= 1e-4 && r.ratio < 0.5,
        format!("ratio {:.10} < 1/2", r.ratio),
    )
}

fn c4() -> Outcome {
    let c = mth_constant(3, 1).unwrap();
    let four_over_pi2 = 4.0 / std::f64::consts::PI.powi(2);
    // The reference 0.40528 is 4/pi^2 cut to five decimals.
    let digits_ok = (c * 1e5).trunc() / 1e5 == 0.40528;
    let constant_ok = (c - four_over_pi2).abs() <= 1e-9 && digits_ok;
    let mut r = rng(4);
    let cases: Vec<(Body, usize)> = (0..500)
        .map(|i| {
            let n = 3 + i % 3;
            let m = 1 + (i / 3) % (n - 2);
            let k = n + (i % 4);
            let z =
                Zonotope::new(vec![0.0; n], (0..k).map(|_| gauss(&mut r, n)).collect()).unwrap();
            (Body::Zonotope(z), m)
        })
        .collect();
    let reports: Vec<IneqReport> = par::map(&cases, |(b, m)| {
        evaluate(&InequalityId::MthLower { m: *m }, b, &opts()).unwrap()
    });
    let bad = reports.iter().filter(|r| !r.satisfied).count();
    let worst = reports
        .iter()
        .map(|r| r.oriented_slack)
        .fold(f64::INFINITY, f64::min);
    outcome(
        constant_ok && bad == 0,
        format!("constant {c:.12} (4/pi^2 {four_over_pi2:.12}); mth_lower violations {bad}/500, min slack {worst:.3e}"),
    )
}

fn c5() -> Outcome {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 1000 {
        let n = 2 + count % 5;
        let m = 1 + (count / 5) % (n - 1);
        let Ok(f) = FlatSet::new(gauss(&mut r, n), (0..m).map(|_| gauss(&mut r, n)).collect())
        else {
            continue;
        };
        let h = hausdorff_flat(&f);
        let s: f64 = (0..n)
            .map(|i| hausdorff_flat(&project_flat(&f, i)).powi(2))
            .sum();
        let rel = (h * h - s / (n - m) as f64).abs() / (h * h);
        worst = worst.max(rel);
        count += 1;
    }
    outcome(
        worst <= 1e-9,
        format!("1000 flat sets, n <= 6, max relative error {worst:.2e}"),
    )
}

/// Slack measured against the size of the two sides, which scale together.
fn equality_ok(r: &IneqReport) -> bool {
    let scale = r.lhs.abs().max(r.rhs.abs()).max(1.0);
    r.is_exact()
        && r.oriented_slack.abs() < 1e-9 * scale
        && r.equality_flag == EqualityFlag::EqualityCaseMatched
}

fn c6() -> Outcome {
    let mut r = rng(6);
    let mut failures = Vec::new();
    for i in 0..20 {
        let n = 2 + i % 4;
        let sides: Vec<f64> = (0..n).map(|_| r.random_range(0.2..3.0)).collect();
        let gens = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| if j == k { sides[j] } else { 0.0 })
                    .collect()
            })
            .collect();
        let b = Body::Zonotope(Zonotope::new(gauss(&mut r, n), gens).unwrap());
        let rep = evaluate(&InequalityId::LoomisWhitney, &b, &opts()).unwrap();
        if !equality_ok(&rep) {
            failures.push(format!("loomis_whitney box {i}"));
        }
    }
    for i in 0..20 {
        let n = 2 + i % 4;
        // Coordinate cross-polytope with unequal arms on both sides.
        let mut pts = Vec::new();
        for j in 0..n {
            for s in [1.0, -1.0] {
                let mut p = vec![0.0; n];
                p[j] = s * r.random_range(0.2..3.0);
                pts.push(p);
            }
        }
        let b = Body::Polytope(VPolytope::from_points(pts).unwrap());
        let rep = evaluate(&InequalityId::Meyer, &b, &opts()).unwrap();
        if !equality_ok(&rep) {
            failures.push(format!("meyer cross {i}"));
        }
        let t: Vec<f64> = (0..n).map(|_| r.random_range(0.2..3.0)).collect();
        let sym = Body::Polytope(cross_polytope(&t).unwrap());
        let rep = evaluate(&InequalityId::SquareLower, &sym, &opts()).unwrap();
        if !equality_ok(&rep) {
            failures.push(format!("square_lower cross {i}"));
        }
    }
    for n in 3..=6 {
        let s = r.random_range(0.5..2.0);
        let b = Body::Polytope(cross_polytope(&vec![s; n]).unwrap());
        let rep = evaluate(&InequalityId::SqrtNLower, &b, &opts()).unwrap();
        if !equality_ok(&rep) {
            failures.push(format!("sqrt_n_lower regular cross n={n}"));
        }
    }
    let oct = Body::cross(3).unwrap();
    let meyer = evaluate(&InequalityId::Meyer, &oct, &opts()).unwrap();
    let square = evaluate(&InequalityId::SquareLower, &oct, &opts()).unwrap();
    let values_ok = (meyer.lhs - 16.0 / 9.0).abs() < 1e-12
        && (meyer.rhs - 16.0 / 9.0).abs() < 1e-12
        && (square.lhs - 12.0).abs() < 1e-12
        && (square.rhs - 12.0).abs() < 1e-12;
    if !values_ok {
        failures.push("unit octahedron values".into());
    }
    outcome(
        failures.is_empty(),
        format!(
            "octahedron meyer {:.12}/{:.12}, square {:.12}/{:.12}; failures: {}",
            meyer.lhs,
            meyer.rhs,
            square.lhs,
            square.rhs,
            if failures.is_empty() {
                "none".to_string()
            } else {
                failures.join(", ")
            }
        ),
    )
}

fn c7() -> Outcome {
    let t = Instant::now();
    let bodies: Vec<(usize, bool)> = (0..1000).map(|i| (3 + i % 3, (i / 3) % 2 == 1)).collect();
    let results: Vec<(usize, usize, f64)> = par::map_range(bodies.len(), |i| {
        let (n, zono) = bodies[i];
        let spec = CorpusSpec {
            family: if zono {
                Family::RandomZonotope { generators: n + 2 }
            } else {
                Family::RandomPolytope {
                    vertices: 2 * n + 2,
                }
            },
            count: 1000,
            n,
            seed: 7,
            scale: 1.0,
        };
        let body = generate_one(&spec, i).unwrap();
        let mut ids = vec![InequalityId::BmUpper, InequalityId::SquareLower];
        let mut ms = vec![1, n - 1, n - 2];
        ms.dedup();
        for &m in &ms {
            ids.push(InequalityId::CgUpper { m });
        }
        for m in [1, n - 2] {
            ids.push(InequalityId::ReverseCs { m });
        }
        for m in [1, n - 1] {
            ids.push(InequalityId::EasyBounds { m, p: 2.0 });
            ids.push(InequalityId::Trivmax { m });
        }
        if zono {
            ids.extend((1..n).map(|m| InequalityId::ZonoidLower { m }));
        }
        let mut r = rng(1000 + i as u64);
        ids.extend((0..100).map(|_| InequalityId::Pythagorean {
            m: n - 1,
            u: unit(&mut r, n),
        }));
        let mut bad = 0;
        let mut worst = f64::INFINITY;
        for id in &ids {
            let rep = evaluate(id, &body, &opts()).unwrap();
            if !rep.satisfied {
                bad += 1;
            }
            worst = worst.min(rep.oriented_slack / rep.tolerance);
        }
        (ids.len(), bad, worst)
    });
    let checks: usize = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    let worst = results.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    let secs = t.elapsed().as_secs_f64();
    outcome(
        bad == 0 && secs < 300.0,
        format!("1000 bodies, {checks} checks, {bad} violations, min slack/tolerance {worst:.3e}, {secs:.1}s"),
    )
}

fn c8() -> Outcome {
    let mut r = rng(8);
    let mut worst_sections = 0.0f64;
    let mut worst_segments = 0.0f64;
    let q = QuadratureSpec::default();
    for i in 0..40 {
        let n = 2 + i % 5;
        let s: Vec<f64> = (0..n).map(|_| r.random_range(0.1..5.0)).collect();
        let p = Body::Polytope(cross_polytope_from_sections(&s).unwrap());
        for (j, sj) in s.iter().enumerate() {
            let got = intrinsic_volume(&section_body(&p, j).unwrap(), n - 1, &q)
                .unwrap()
                .value;
            worst_sections = worst_sections.max((got - sj).abs() / sj);
        }
        let x = gauss(&mut r, n);
        let total: f64 = x.iter().map(|v| v * v).sum();
        let a: Vec<f64> = x.iter().map(|v| (total - v * v).sqrt()).collect();
        let SegmentOutcome::Feasible { .. } = segment_from_projections(&a).unwrap() else {
            return outcome(false, format!("feasible input {a:?} reported infeasible"));
        };
        let seg = Body::Polytope(
            segment_from_projections(&a)
                .unwrap()
                .segment()
                .unwrap()
                .unwrap(),
        );
        for (j, aj) in a.iter().enumerate() {
            let got = intrinsic_volume(&project(&seg, j).unwrap(), 1, &q)
                .unwrap()
                .value;
            worst_segments = worst_segments.max((got - aj).abs() / aj.max(1e-300));
        }
    }
    let boxcase = segment_from_projections(&[1.0, 1.0, 2.0]).unwrap();
    // Indices are zero-based, so coordinate 3 is index 2.
    let flagged = matches!(boxcase, SegmentOutcome::Infeasible { index: 2, .. });
    outcome(
        worst_sections <= 1e-9 && worst_segments <= 1e-9 && flagged,
        format!(
            "sections max rel err {worst_sections:.1e}, segments {worst_segments:.1e}; (1,1,2) -> {boxcase:?} (coordinate 3)"
        ),
    )
}

fn c9() -> Outcome {
    let q = QuadratureSpec::default();
    let c0 = c0_constant(3, &q).unwrap().value;
    let reference_ok = (c0 - 0.391820).abs() <= 1e-6;

    let families = [
        Family::RandomPolytope { vertices: 6 },
        Family::RandomPolytope { vertices: 12 },
        Family::RandomZonotope { generators: 5 },
        Family::Unconditional { vertices: 2 },
        Family::CubeSymmetric { vertices: 1 },
    ];
    let fs: Vec<f64> = par::map_range(500, |i| {
        let spec = CorpusSpec {
            family: families[i % families.len()].clone(),
            count: 500,
            n: 3,
            seed: 9,
            scale: 1.0,
        };
        functional_f(&generate_one(&spec, i).unwrap(), &q)
            .unwrap()
            .value
    });
    let fmin = fs.iter().copied().fold(f64::INFINITY, f64::min);
    let lower_ok = fmin >= c0 - 1e-9;

    let mut r = rng(9);
    let mut sym_bodies: Vec<Body> = (0..12)
        .map(|_| {
            Body::Zonotope(
                Zonotope::new(gauss(&mut r, 3), (0..4).map(|_| gauss(&mut r, 3)).collect())
                    .unwrap(),
            )
        })
        .collect();
    sym_bodies.extend((0..2).map(|_| {
        Body::Polytope(VPolytope::from_points((0..4).map(|_| gauss(&mut r, 3)).collect()).unwrap())
    }));
    let sym_diff = sym_bodies
        .iter()
        .map(|b| {
            let f = functional_f(b, &q).unwrap().value;
            let g = functional_f(&g_symmetral(b).unwrap(), &q).unwrap().value;
            (f - g).abs()
        })
        .fold(0.0, f64::max);
    let sym_ok = sym_diff <= 1e-6;

    let j_bodies: Vec<Body> = (0..100)
        .map(|i| {
            if i % 4 == 3 {
                let z = Zonotope::new(vec![0.0; 3], (0..3).map(|_| gauss(&mut r, 3)).collect())
                    .unwrap();
                g_symmetral(&Body::Zonotope(z)).unwrap()
            } else {
                let spec = CorpusSpec {
                    family: Family::CubeSymmetric {
                        vertices: 1 + i % 3,
                    },
                    count: 100,
                    n: 3,
                    seed: 19,
                    scale: 1.0,
                };
                generate_one(&spec, i).unwrap()
            }
        })
        .collect();
    let mut worst_drop = 0.0f64;
    for b in &j_bodies {
        let curve = j_curve(b, 64).unwrap();
        for w in curve.windows(2) {
            worst_drop = worst_drop.max(w[0].1 - w[1].1);
        }
    }
    let j_ok = worst_drop <= 1e-6;
    outcome(
        reference_ok && lower_ok && sym_ok && j_ok,
        format!(
            "c0(3) {c0:.10} vs 0.391820 ({}); min F over 500 bodies {fmin:.10} ({}); F symmetral diff {sym_diff:.1e} ({}); J max drop {worst_drop:.1e} ({})",
            word(reference_ok),
            word(lower_ok),
            word(sym_ok),
            word(j_ok)
        ),
    )
}

fn word(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn c10() -> Outcome {
    let spec = CorpusSpec {
        family: Family::RandomZonotope { generators: 6 },
        count: 4,
        n: 4,
        seed: 7,
        scale: 1.0,
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let pa = write_corpus(&spec, a.path()).unwrap();
    let pb = write_corpus(&spec, b.path()).unwrap();
    let corpus_same = pa.len() == pb.len()
        && pa
            .iter()
            .zip(&pb)
            .all(|(x, y)| std::fs::read(x).unwrap() == std::fs::read(y).unwrap());
    let cfg = SearchConfig {
        problem: Problem::Prob4,
        n: 3,
        m: 1,
        family: SearchFamily::CrossPerturbation,
        iterations: 1500,
        proposal_scale: 0.05,
        seed: 42,
        restarts: 3,
        constant: Some(0.46058),
    };
    let render = |r: &convexiq::explorer::SearchResult| {
        (to_json_pretty(r).unwrap(), r.trajectory_csv().unwrap())
    };
    let s1 = render(&search(&cfg).unwrap());
    let s2 = render(&search(&cfg).unwrap());
    let s3 = render(&par::sequential(|| search(&cfg).unwrap()));
    let search_same = s1 == s2 && s1 == s3;
    outcome(
        corpus_same && search_same,
        format!("corpus files identical: {corpus_same}; search artifacts identical (incl. sequential): {search_same}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "V1(K1) by two quadrature paths", c1),
        (2, "V1(C3) exact vs closed form; V1(K2)", c2),
        (3, "C3 ratio below 1/2", c3),
        (4, "constant 4/pi^2 and mth_lower on zonotopes", c4),
        (5, "flat-set Pythagorean identity", c5),
        (6, "equality-case battery", c6),
        (7, "proven inequalities on a 1000-body corpus", c7),
        (8, "constructor round trips and box infeasibility", c8),
        (9, "lower bound c0(3), symmetral invariance, J monotone", c9),
        (10, "determinism of corpus and search artifacts", c10),
    ];
    let mut unexpected = Vec::new();
    for (id, title, f) in criteria {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let elapsed: Duration = t.elapsed();
        let known = UNATTAINABLE.iter().find(|(k, _)| *k == id);
        println!(
            "criterion {id:>2} {} {title}: {} [{:.1}s]",
            if res.pass { "PASS" } else { "FAIL" },
            res.detail,
            elapsed.as_secs_f64()
        );
        match (res.pass, known) {
            (false, Some((_, why))) => println!("             known unattainable: {why}"),
            (true, Some(_)) => unexpected.push(format!(
                "criterion {id} passed but is listed as unattainable"
            )),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, None) => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected");
    } else {
        for u in &unexpected {
            eprintln!("{u}");
        }
        std::process::exit(1);
    }
}
