use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use convexiq::explorer::{j_curve, repro_rows, search_with, SearchConfig};
use convexiq::io::{
    from_json, read_body, read_text, reports_to_json, summary_csv, table_csv, to_json_pretty,
    write_corpus, write_text, CorpusSpec, Family, Finding,
};
use convexiq::lab::{evaluate_all, EvalOptions, IneqReport, InequalityId, Status};
use convexiq::measures::QuadratureSpec;
use convexiq::Error;

const EXIT_PROVEN_VIOLATION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "convexiq",
    version,
    about = "Intrinsic volumes and Loomis-Whitney-type inequality checks"
)]
struct Cli {
    /// Master RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Absolute tolerance overriding the propagated one.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Sphere quadrature resolution.
    #[arg(long = "quad-res", global = true)]
    quad_res: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a body corpus as body/1 JSON files.
    Make(MakeArgs),
    /// Evaluate inequalities on body files.
    Check(CheckArgs),
    /// Recompute the reference numbers.
    Repro {
        #[arg(default_value = "all")]
        target: String,
    },
    /// Run a seeded counterexample search from a JSON config.
    Search { config: PathBuf },
    /// Sample J_K on [0, 1/sqrt 2] for a body in R^3 with cube symmetries.
    Jcurve {
        body: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    RandomPolytope,
    RandomZonotope,
    Unconditional,
    CubeSymmetric,
    Named,
}

#[derive(Args)]
struct MakeArgs {
    /// Corpus spec as JSON; the flags below are ignored when given.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, required_unless_present = "spec")]
    family: Option<FamilyArg>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Vertex count (polytope families).
    #[arg(long, default_value_t = 8)]
    vertices: usize,
    /// Generator count (zonotope family).
    #[arg(long, default_value_t = 6)]
    generators: usize,
    /// cross, cube, k1 or k2 (named family).
    #[arg(long, default_value = "cross")]
    name: String,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
}

#[derive(Args)]
struct CheckArgs {
    /// Inequality id, e.g. `meyer` or `cg_upper:m=2`; repeatable. `all`
    /// expands to the whole catalog for each body's dimension.
    #[arg(long = "id", required = true)]
    ids: Vec<String>,
    #[arg(required = true)]
    bodies: Vec<PathBuf>,
}

struct Ctx {
    seed: Option<u64>,
    opts: EvalOptions,
    out: PathBuf,
}

fn main() -> ExitCode {
    convexiq::par::init_from_env();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Parse { .. }) => EXIT_DATA,
        Some(Error::Io { .. }) => EXIT_IO,
        Some(_) => EXIT_USAGE,
        None => EXIT_USAGE,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let quadrature = match cli.quad_res {
        Some(r) => QuadratureSpec::new(r)?,
        None => QuadratureSpec::default(),
    };
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidArgument("--tolerance must be nonnegative".into()).into());
        }
    }
    let ctx = Ctx {
        seed: cli.seed,
        opts: EvalOptions {
            quadrature,
            tolerance: cli.tolerance,
        },
        out: cli.out.unwrap_or_else(|| PathBuf::from("out")),
    };
    match cli.command {
        Command::Make(a) => cmd_make(&ctx, a),
        Command::Check(a) => cmd_check(&ctx, a),
        Command::Repro { target } => cmd_repro(&ctx, &target),
        Command::Search { config } => cmd_search(&ctx, &config),
        Command::Jcurve { body, samples } => cmd_jcurve(&ctx, &body, samples),
    }
}

fn cmd_make(ctx: &Ctx, a: MakeArgs) -> Result<u8> {
    let mut spec: CorpusSpec = match &a.spec {
        Some(path) => from_json(&read_text(path)?, &path.display().to_string())?,
        None => {
            let family = match a.family.expect("clap requires family") {
                FamilyArg::RandomPolytope => Family::RandomPolytope {
                    vertices: a.vertices,
                },
                FamilyArg::RandomZonotope => Family::RandomZonotope {
                    generators: a.generators,
                },
                FamilyArg::Unconditional => Family::Unconditional {
                    vertices: a.vertices,
                },
                FamilyArg::CubeSymmetric => Family::CubeSymmetric {
                    vertices: a.vertices,
                },
                FamilyArg::Named => Family::Named {
                    name: a.name.clone(),
                },
            };
            CorpusSpec {
                family,
                count: a.count,
                n: a.n,
                seed: 0,
                scale: a.scale,
            }
        }
    };
    if let Some(seed) = ctx.seed {
        spec.seed = seed;
    }
    let paths = write_corpus(&spec, &ctx.out)?;
    write_text(&ctx.out.join("corpus.json"), &to_json_pretty(&spec)?)?;
    for p in &paths {
        println!("{}", p.display());
    }
    Ok(0)
}

fn parse_ids(raw: &[String], n: usize) -> Result<Vec<InequalityId>> {
    let mut ids = Vec::new();
    for s in raw {
        if s == "all" {
            ids.extend(InequalityId::all(n));
        } else {
            ids.push(s.parse::<InequalityId>()?);
        }
    }
    Ok(ids)
}

fn label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn cmd_check(ctx: &Ctx, a: CheckArgs) -> Result<u8> {
    // Unknown ids are reported before any body is read.
    parse_ids(&a.ids, 3)?;
    let mut rows: Vec<(String, IneqReport)> = Vec::new();
    let mut findings = 0usize;
    let mut proven_violations = 0usize;
    for path in &a.bodies {
        let body = read_body(path)?;
        let ids = parse_ids(&a.ids, body.ambient_dim())?;
        let reports = evaluate_all(&ids, &body, &ctx.opts)
            .with_context(|| format!("checking {}", path.display()))?;
        for r in reports {
            println!(
                "{}\t{}\t{}\tslack={:+.6e}\ttol={:.1e}\t{}",
                label(path),
                r.id,
                status_word(r.status),
                r.oriented_slack,
                r.tolerance,
                flag_word(&r)
            );
            for w in &r.warnings {
                println!("  warning: {w}");
            }
            if r.is_proven_violation() {
                proven_violations += 1;
                eprintln!("proven inequality {} violated on {}", r.id, path.display());
            }
            if r.is_conjecture_violation() {
                let f = Finding::from_report(&r, &body);
                let file = ctx
                    .out
                    .join("findings")
                    .join(format!("finding_{findings:04}.json"));
                write_text(&file, &to_json_pretty(&f)?)?;
                findings += 1;
            }
            rows.push((label(path), r));
        }
    }
    let reports: Vec<IneqReport> = rows.iter().map(|(_, r)| r.clone()).collect();
    write_text(&ctx.out.join("reports.json"), &reports_to_json(&reports)?)?;
    write_text(&ctx.out.join("summary.csv"), &summary_csv(&rows)?)?;
    if findings > 0 {
        println!(
            "{findings} conjecture finding(s) written to {}",
            ctx.out.join("findings").display()
        );
    }
    Ok(if proven_violations > 0 {
        EXIT_PROVEN_VIOLATION
    } else {
        0
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Proven => "proven",
        Status::Conjecture => "conjecture",
        Status::OutsideHypothesis => "outside_hypothesis",
    }
}

fn flag_word(r: &IneqReport) -> String {
    let verdict = if r.satisfied { "ok" } else { "VIOLATED" };
    match (&r.equality_flag, &r.equality_family) {
        (f, Some(fam)) => format!("{verdict} {f:?} {fam:?}"),
        (f, None) => format!("{verdict} {f:?}"),
    }
}

fn cmd_repro(ctx: &Ctx, target: &str) -> Result<u8> {
    let rows = repro_rows(target, &ctx.opts.quadrature)?;
    println!(
        "{:<18} {:<34} {:>20} {:>20} {:>9}  result",
        "target", "quantity", "reference", "computed", "tol"
    );
    for r in &rows {
        println!(
            "{:<18} {:<34} {:>20.12} {:>20.12} {:>9.1e}  {}",
            r.target,
            r.quantity,
            r.reference,
            r.computed,
            r.tolerance,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.target.clone(),
                r.quantity.clone(),
                format!("{:?}", r.reference),
                format!("{:?}", r.computed),
                format!("{:?}", r.tolerance),
                r.pass.to_string(),
            ]
        })
        .collect();
    write_text(
        &ctx.out.join("repro.csv"),
        &table_csv(
            &[
                "target",
                "quantity",
                "reference",
                "computed",
                "tolerance",
                "pass",
            ],
            &table,
        )?,
    )?;
    Ok(0)
}

fn cmd_search(ctx: &Ctx, path: &Path) -> Result<u8> {
    let mut config: SearchConfig = from_json(&read_text(path)?, &path.display().to_string())?;
    if let Some(seed) = ctx.seed {
        config.seed = seed;
    }
    let result = search_with(&config, &ctx.opts.quadrature)?;
    for w in &result.trajectory {
        println!(
            "iter {:>7}..{:<7} slack min {:+.4e} q25 {:+.4e} median {:+.4e} q75 {:+.4e} max {:+.4e}",
            w.start, w.end, w.min, w.q25, w.median, w.q75, w.max
        );
    }
    println!(
        "best slack {:+.6e} (restart {}, tolerance {:.1e}); config {}",
        result.best_slack,
        result.best_restart,
        result.best_report.tolerance,
        result.stamp.config_hash
    );
    write_text(
        &ctx.out.join("search_result.json"),
        &to_json_pretty(&result)?,
    )?;
    write_text(&ctx.out.join("trajectory.csv"), &result.trajectory_csv()?)?;
    if let Some(f) = result.finding()? {
        let file = ctx.out.join("findings").join("finding_0000.json");
        write_text(&file, &to_json_pretty(&f)?)?;
        println!("violation recorded in {}", file.display());
    }
    Ok(0)
}

fn cmd_jcurve(ctx: &Ctx, path: &Path, samples: usize) -> Result<u8> {
    let body = read_body(path)?;
    let curve = j_curve(&body, samples)?;
    let rows: Vec<Vec<String>> = curve
        .iter()
        .map(|(x, j)| vec![format!("{x:?}"), format!("{j:?}")])
        .collect();
    let csv = table_csv(&["x2", "j"], &rows)?;
    print!("{csv}");
    write_text(&ctx.out.join(format!("jcurve_{}.csv", label(path))), &csv)?;
    Ok(0)
}
