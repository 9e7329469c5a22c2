//! Seeded random-restart hill descent on the oriented slack of an open
//! inequality.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geom::{Body, VPolytope, Zonotope};
use crate::io::{body_to_value, Finding};
use crate::lab::{evaluate, EvalOptions, IneqReport, InequalityId, ERROR_FACTOR};
use crate::measures::{intrinsic_volume, QuadratureSpec};
use crate::par;

pub const TRAJECTORY_WINDOW: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    /// `cg_upper` for the given `m`.
    Cg33,
    Prob4,
    Prob5,
    HeronN3,
    /// `reverse_cs` with `2 <= m <= n - 3`.
    Eq11Midrange,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchFamily {
    /// Centred zonotopes with this many generators.
    Zonotope { generators: usize },
    /// Hulls of the sign-change orbit of this many points.
    UnconditionalPolytope { vertices: usize },
    /// The regular cross-polytope with each of its `2n` vertices moved.
    CrossPerturbation,
}

fn default_restarts() -> usize {
    4
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub problem: Problem,
    pub n: usize,
    pub m: usize,
    pub family: SearchFamily,
    /// Proposals per restart.
    pub iterations: usize,
    pub proposal_scale: f64,
    pub seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    /// Candidate `c2` / `c3` for the two constant problems; defaults to the
    /// regular cross-polytope value.
    #[serde(default)]
    pub constant: Option<f64>,
}

impl SearchConfig {
    pub fn inequality(&self) -> InequalityId {
        match self.problem {
            Problem::Cg33 => InequalityId::CgUpper { m: self.m },
            Problem::Prob4 => InequalityId::Prob4 {
                m: self.m,
                c2: self.constant,
            },
            Problem::Prob5 => InequalityId::Prob5 {
                m: self.m,
                c3: self.constant,
            },
            Problem::HeronN3 => InequalityId::HeronN3,
            Problem::Eq11Midrange => InequalityId::ReverseCs { m: self.m },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::invalid("iterations must be at least 1"));
        }
        if self.restarts == 0 {
            return Err(Error::invalid("restarts must be at least 1"));
        }
        if !(self.proposal_scale.is_finite() && self.proposal_scale > 0.0) {
            return Err(Error::invalid("proposal_scale must be positive"));
        }
        if !(2..=crate::MAX_DIM).contains(&self.n) {
            return Err(Error::invalid(format!(
                "n = {} outside 2..={}",
                self.n,
                crate::MAX_DIM
            )));
        }
        if self.m == 0 || self.m > self.n {
            return Err(Error::invalid(format!(
                "m = {} outside 1..={}",
                self.m, self.n
            )));
        }
        if self.constant.is_some() && !matches!(self.problem, Problem::Prob4 | Problem::Prob5) {
            return Err(Error::invalid("constant only applies to prob4 and prob5"));
        }
        if self.problem == Problem::Eq11Midrange && !(self.m >= 2 && self.m + 3 <= self.n) {
            return Err(Error::invalid(format!(
                "eq11_midrange needs 2 <= m <= n - 3, got m = {} in R^{}",
                self.m, self.n
            )));
        }
        match (&self.family, self.problem) {
            (SearchFamily::Zonotope { .. }, Problem::Prob4) => {
                return Err(Error::invalid(
                    "prob4 is posed for general bodies, not zonotopes",
                ))
            }
            (SearchFamily::Zonotope { generators: 0 }, _) => {
                return Err(Error::invalid(
                    "zonotope family needs at least one generator",
                ))
            }
            (SearchFamily::UnconditionalPolytope { vertices: 0 }, _) => {
                return Err(Error::invalid(
                    "unconditional family needs at least one vertex",
                ))
            }
            _ => {}
        }
        self.inequality().validate(self.n)
    }

    /// SHA-256 of the compact JSON encoding, in hex.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    fn dimension(&self) -> usize {
        let n = self.n;
        match self.family {
            SearchFamily::Zonotope { generators } => generators * n,
            SearchFamily::UnconditionalPolytope { vertices } => vertices * n,
            SearchFamily::CrossPerturbation => 2 * n * n,
        }
    }

    fn body(&self, params: &[f64]) -> Result<Body> {
        let n = self.n;
        let points: Vec<Vec<f64>> = params.chunks(n).map(<[f64]>::to_vec).collect();
        Ok(match self.family {
            SearchFamily::Zonotope { .. } => Zonotope::new(vec![0.0; n], points)?.into(),
            SearchFamily::UnconditionalPolytope { .. } => {
                VPolytope::from_points_in(n, crate::io::sign_orbit(&points))?.into()
            }
            SearchFamily::CrossPerturbation => VPolytope::from_points_in(n, points)?.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stamp {
    pub seed: u64,
    pub config_hash: String,
}

/// Slack quantiles over one window of iterations, pooled across restarts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryWindow {
    pub start: usize,
    pub end: usize,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub config: SearchConfig,
    pub stamp: Stamp,
    pub best_slack: f64,
    pub best_restart: usize,
    pub best_report: IneqReport,
    /// `body/1` encoding of the best body.
    pub witness: serde_json::Value,
    pub trajectory: Vec<TrajectoryWindow>,
    pub accepted: usize,
    pub rejected_degenerate: usize,
    /// Slack below `-10 x tolerance` on an exact evaluation.
    pub violation: bool,
}

impl SearchResult {
    pub fn witness_body(&self) -> Result<Body> {
        crate::io::body_from_value(self.witness.clone())
    }

    /// The findings record, if the search produced a violation.
    pub fn finding(&self) -> Result<Option<Finding>> {
        if !self.violation {
            return Ok(None);
        }
        let config = serde_json::to_value(&self.config).expect("config serializes");
        let r = &self.best_report;
        Ok(Some(Finding::new(
            config,
            &self.witness_body()?,
            r.lhs,
            r.rhs,
            r.oriented_slack,
            r.tolerance,
        )))
    }

    pub fn trajectory_csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = self
            .trajectory
            .iter()
            .map(|w| {
                vec![
                    w.start.to_string(),
                    w.end.to_string(),
                    format!("{:?}", w.min),
                    format!("{:?}", w.q25),
                    format!("{:?}", w.median),
                    format!("{:?}", w.q75),
                    format!("{:?}", w.max),
                ]
            })
            .collect();
        crate::io::table_csv(
            &["start", "end", "min", "q25", "median", "q75", "max"],
            &rows,
        )
    }
}

struct Candidate {
    params: Vec<f64>,
    report: IneqReport,
}

struct RestartOutcome {
    best: Candidate,
    slacks: Vec<f64>,
    accepted: usize,
    rejected: usize,
}

/// Rescale to unit `V_m` and evaluate.
fn assess(cfg: &SearchConfig, params: &[f64], opts: &EvalOptions) -> Option<Candidate> {
    let body = cfg.body(params).ok()?;
    let v = intrinsic_volume(&body, cfg.m, &opts.quadrature).ok()?.value;
    if !(v.is_finite() && v > 1e-12) {
        return None;
    }
    let s = v.powf(-1.0 / cfg.m as f64);
    let params: Vec<f64> = params.iter().map(|x| x * s).collect();
    let body = cfg.body(&params).ok()?;
    let report = evaluate(&cfg.inequality(), &body, opts).ok()?;
    report
        .oriented_slack
        .is_finite()
        .then_some(Candidate { params, report })
}

fn initial_params(cfg: &SearchConfig, restart: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = cfg.n;
    let mut gauss = |scale: f64, k: usize| -> Vec<f64> {
        (0..k)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut *rng);
                scale * z
            })
            .collect::<Vec<f64>>()
    };
    match cfg.family {
        SearchFamily::CrossPerturbation => {
            let noise = if restart == 0 {
                vec![0.0; cfg.dimension()]
            } else {
                gauss(cfg.proposal_scale, cfg.dimension())
            };
            let mut p = noise;
            for i in 0..n {
                p[2 * i * n + i] += 1.0;
                p[(2 * i + 1) * n + i] -= 1.0;
            }
            p
        }
        _ => gauss(1.0, cfg.dimension()),
    }
}

fn run_restart(cfg: &SearchConfig, restart: usize, opts: &EvalOptions) -> Result<RestartOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64 + 1);
    let mut current = None;
    let mut rejected = 0;
    // A degenerate random start is redrawn; give up after a few tries.
    for _ in 0..64 {
        let p = initial_params(cfg, restart, &mut rng);
        match assess(cfg, &p, opts) {
            Some(c) => {
                current = Some(c);
                break;
            }
            None => rejected += 1,
        }
    }
    let mut current =
        current.ok_or_else(|| Error::invalid("search family produced only degenerate bodies"))?;
    let mut slacks = Vec::with_capacity(cfg.iterations);
    let mut accepted = 0;
    for _ in 0..cfg.iterations {
        let proposal: Vec<f64> = current
            .params
            .iter()
            .map(|x| {
                let z: f64 = StandardNormal.sample(&mut rng);
                x + cfg.proposal_scale * z
            })
            .collect();
        match assess(cfg, &proposal, opts) {
            Some(c) if c.report.oriented_slack <= current.report.oriented_slack => {
                current = c;
                accepted += 1;
            }
            Some(_) => {}
            None => rejected += 1,
        }
        slacks.push(current.report.oriented_slack);
    }
    Ok(RestartOutcome {
        best: current,
        slacks,
        accepted,
        rejected,
    })
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn windows(runs: &[RestartOutcome], iterations: usize) -> Vec<TrajectoryWindow> {
    (0..iterations)
        .step_by(TRAJECTORY_WINDOW)
        .map(|start| {
            let end = (start + TRAJECTORY_WINDOW).min(iterations);
            let mut v: Vec<f64> = runs
                .iter()
                .flat_map(|r| r.slacks[start..end].iter().copied())
                .collect();
            v.sort_by(f64::total_cmp);
            TrajectoryWindow {
                start,
                end,
                min: v[0],
                q25: quantile(&v, 0.25),
                median: quantile(&v, 0.5),
                q75: quantile(&v, 0.75),
                max: v[v.len() - 1],
            }
        })
        .collect()
}

pub fn search(config: &SearchConfig) -> Result<SearchResult> {
    search_with(config, &QuadratureSpec::default())
}

/// Restarts run in parallel, each on its own ChaCha stream of the seed; the
/// best is the minimum slack, ties broken by body fingerprint.
pub fn search_with(config: &SearchConfig, quadrature: &QuadratureSpec) -> Result<SearchResult> {
    config.validate()?;
    let opts = EvalOptions {
        quadrature: *quadrature,
        tolerance: None,
    };
    let runs: Vec<RestartOutcome> =
        par::map_range(config.restarts, |r| run_restart(config, r, &opts))
            .into_iter()
            .collect::<Result<_>>()?;
    let (best_restart, best) = runs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let (a, b) = (&a.best.report, &b.best.report);
            a.oriented_slack
                .total_cmp(&b.oriented_slack)
                .then_with(|| a.body_fingerprint.cmp(&b.body_fingerprint))
        })
        .expect("at least one restart");
    let report = best.best.report.clone();
    let witness = body_to_value(&config.body(&best.best.params)?);
    let violation = report.is_exact() && report.oriented_slack < -ERROR_FACTOR * report.tolerance;
    Ok(SearchResult {
        config: config.clone(),
        stamp: Stamp {
            seed: config.seed,
            config_hash: config.hash(),
        },
        best_slack: report.oriented_slack,
        best_restart,
        best_report: report,
        witness,
        trajectory: windows(&runs, config.iterations),
        accepted: runs.iter().map(|r| r.accepted).sum(),
        rejected_degenerate: runs.iter().map(|r| r.rejected).sum(),
        violation,
    })
}
