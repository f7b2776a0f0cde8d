//! Command-line front end. Every subcommand embeds its full configuration
//! in the report it writes, uses a fixed default seed, and writes output
//! atomically (temp file + rename). Exit codes: 0 all checks pass, 1 a
//! check failed, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sumsquares::error::Error;
use sumsquares::integers::{
    self, ApproximantParams, IntegerSet, SetGenerator,
};
use sumsquares::modular;
use sumsquares::optimize::{self, NonnegVector24};
use sumsquares::quad::Quad5;
use sumsquares::ring::{qr_profile, Modulus};
use sumsquares::sample::{random_weight, seeded_rng, DEFAULT_SEED};
use sumsquares::search::{self, SearchBudget};

#[derive(Parser)]
#[command(
    name = "sumsquares",
    about = "Verifiers, searches, and experiments around squares in sumsets",
    version
)]
struct Cli {
    /// Seed for all randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Tolerance for floating-point identity checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Output file; defaults to stdout. Relative paths resolve against
    /// $SUMSQUARES_OUT_DIR when it is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quadratic-residue profile of Z/qZ.
    QrTable {
        #[arg(long)]
        q: u64,
    },
    /// Run the randomized modular identity and bound suites at one modulus.
    VerifyModular {
        #[arg(long)]
        q: u64,
        /// Number of random weight pairs.
        #[arg(long, default_value_t = 100)]
        cases: u32,
        /// Density parameter for the quantitative lower bound.
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
    },
    /// Tabulate |f_q_hat(-m)| against the 1/sqrt(5) bound.
    GaussBounds {
        /// Single modulus (must be a multiple of 24); mutually exclusive
        /// with --q-max.
        #[arg(long, conflicts_with = "q_max")]
        q: Option<u64>,
        /// Sweep all multiples of 24 up to this value.
        #[arg(long)]
        q_max: Option<u64>,
    },
    /// Search for the densest square-avoiding pair mod q.
    Search {
        #[arg(long)]
        q: u64,
        /// Enumerate all 2^q subsets (q <= 16).
        #[arg(long, conflicts_with = "reduced")]
        exhaustive: bool,
        /// Translation-reduced enumeration, 0 in A (q <= 24).
        #[arg(long)]
        reduced: bool,
    },
    /// Enumerate the 48-variable optimization.
    Optimize {
        #[arg(long, value_enum, default_value_t = OptimizeMode::Exact)]
        mode: OptimizeMode,
    },
    /// Count square pairs in A + B for sets in [1, N].
    Count {
        #[arg(long)]
        n: u64,
        /// Newline-delimited elements of A; defaults to all of [1, N].
        #[arg(long)]
        a_file: Option<PathBuf>,
        /// Newline-delimited elements of B; defaults to A.
        #[arg(long)]
        b_file: Option<PathBuf>,
        /// Cross-check against the O(N^2) double loop.
        #[arg(long)]
        check: bool,
    },
    /// Build the piecewise approximant of a set and verify its mass.
    Approximant {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a_file: Option<PathBuf>,
        /// Generator used when no file is given.
        #[arg(long, default_value = "uniform:0.5")]
        gen: String,
        /// Fourier check: number of beta samples per (a, q) pair.
        #[arg(long, default_value_t = 20)]
        beta_samples: u32,
    },
    /// Generate sets, count square pairs, compare with the quantitative
    /// bound 1e-6 eps^3 N^(3/2).
    Experiment {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        epsilon: f64,
        /// Generator for A: full | uniform:<d> | residues:<q>:<r,r,..> |
        /// boosted:<q>:<r,r,..>:<d>.
        #[arg(long)]
        gen_a: Option<String>,
        #[arg(long)]
        gen_b: Option<String>,
        /// Accept sets below the density threshold (boundary cases).
        #[arg(long)]
        waive_density: bool,
    },
    /// Audit the four-term convolution decomposition of the square count.
    Audit {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        gen_a: Option<String>,
        #[arg(long)]
        gen_b: Option<String>,
    },
    /// Run the whole verification stack and aggregate pass/fail.
    Suite {
        /// Random pairs for the quadratic-form suite.
        #[arg(long, default_value_t = 100_000)]
        quad_cases: u32,
        /// Random pairs for the quantitative-theorem suite.
        #[arg(long, default_value_t = 1000)]
        theorem_cases: u32,
        /// Skip the items that take more than a few seconds.
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OptimizeMode {
    Exact,
    Float,
}

#[derive(Args)]
struct ParamArgs {
    /// Approximant modulus Q.
    #[arg(long, conflicts_with = "qbar")]
    q: Option<u64>,
    /// Derive Q = lcm(1..Qbar).
    #[arg(long)]
    qbar: Option<u64>,
    /// Interval count 1/eta.
    #[arg(long, default_value_t = 10)]
    eta_inv: u64,
}

impl ParamArgs {
    fn build(&self) -> Result<ApproximantParams, Error> {
        match (self.q, self.qbar) {
            (Some(q), None) => ApproximantParams::new(q, self.eta_inv),
            (None, Some(qbar)) => ApproximantParams::from_qbar(qbar, self.eta_inv),
            (None, None) => ApproximantParams::new(12, self.eta_inv),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        }
    }
}

/// A Quad5 rendered for reports: rational pair plus decimal.
#[derive(Serialize)]
struct ExactQuad {
    p: [i64; 2],
    r: [i64; 2],
    decimal: f64,
    provenance: &'static str,
}

impl From<Quad5> for ExactQuad {
    fn from(v: Quad5) -> Self {
        ExactQuad {
            p: [*v.p.numer(), *v.p.denom()],
            r: [*v.r.numer(), *v.r.denom()],
            decimal: v.to_f64(),
            provenance: "exact",
        }
    }
}

fn bits_of(v: &NonnegVector24) -> Vec<u8> {
    v.as_bits().map(|b| b.to_vec()).unwrap_or_default()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { report, pass, csv }) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).unwrap();
                    s.push('\n');
                    s
                }
                Format::Csv => match csv {
                    Some(table) => table,
                    None => {
                        eprintln!("error: no CSV rendering for this subcommand");
                        return ExitCode::from(2);
                    }
                },
                Format::Text => render_text(&report),
            };
            if let Err(e) = emit(&cli.out, &rendered) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

struct Outcome {
    report: serde_json::Value,
    pass: bool,
    csv: Option<String>,
}

impl Outcome {
    fn new(report: serde_json::Value, pass: bool) -> Self {
        Outcome {
            report,
            pass,
            csv: None,
        }
    }
}

fn render_text(v: &serde_json::Value) -> String {
    let mut out = String::new();
    flatten_text(v, "", &mut out);
    out
}

fn flatten_text(v: &serde_json::Value, prefix: &str, out: &mut String) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_text(val, &key, out);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                flatten_text(val, &format!("{prefix}[{i}]"), out);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let resolved = resolve_out(path);
            atomic_write(&resolved, content)
        }
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("SUMSQUARES_OUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

fn atomic_write(path: &Path, content: &str) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)
}

fn load_set(n: u64, path: &Path) -> Result<IntegerSet, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let mut elements = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: u64 = line.parse().map_err(|_| {
            Error::InvalidInput(format!("{}:{}: not an integer", path.display(), lineno + 1))
        })?;
        elements.push(v);
    }
    IntegerSet::from_elements(n, &elements)
}

/// `full`, `uniform:<density>`, `residues:<q>:<r,r,..>`, or
/// `boosted:<q>:<r,r,..>:<density>`.
fn parse_generator(text: &str) -> Result<SetGenerator, Error> {
    let bad = |msg: &str| Error::InvalidInput(format!("generator '{text}': {msg}"));
    let parts: Vec<&str> = text.split(':').collect();
    match parts[0] {
        "full" => Ok(SetGenerator::Full),
        "uniform" => {
            let d = parts
                .get(1)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("expected uniform:<density>"))?;
            Ok(SetGenerator::Uniform { density: d })
        }
        "residues" | "boosted" => {
            let modulus: u64 = parts
                .get(1)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("expected a modulus"))?;
            let residues: Vec<i64> = parts
                .get(2)
                .map(|s| s.split(',').map(|r| r.parse()).collect())
                .transpose()
                .ok()
                .flatten()
                .ok_or_else(|| bad("expected comma-separated residues"))?;
            if parts[0] == "residues" {
                Ok(SetGenerator::Residues { modulus, residues })
            } else {
                let target_density = parts
                    .get(3)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("expected boosted:<q>:<r,..>:<density>"))?;
                Ok(SetGenerator::ResiduesBoosted {
                    modulus,
                    residues,
                    target_density,
                })
            }
        }
        _ => Err(bad("unknown generator kind")),
    }
}

fn config_json(cli: &Cli, subcommand: &str, extra: serde_json::Value) -> serde_json::Value {
    json!({
        "subcommand": subcommand,
        "seed": cli.seed,
        "tolerance": cli.tolerance,
        "args": extra,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::QrTable { q } => cmd_qr_table(cli, *q),
        Command::VerifyModular { q, cases, epsilon } => {
            cmd_verify_modular(cli, *q, *cases, *epsilon)
        }
        Command::GaussBounds { q, q_max } => cmd_gauss_bounds(cli, *q, *q_max),
        Command::Search {
            q,
            exhaustive,
            reduced,
        } => cmd_search(cli, *q, *exhaustive, *reduced),
        Command::Optimize { mode } => cmd_optimize(cli, *mode),
        Command::Count {
            n,
            a_file,
            b_file,
            check,
        } => cmd_count(cli, *n, a_file.as_deref(), b_file.as_deref(), *check),
        Command::Approximant {
            params,
            n,
            a_file,
            gen,
            beta_samples,
        } => cmd_approximant(cli, params, *n, a_file.as_deref(), gen, *beta_samples),
        Command::Experiment {
            n,
            epsilon,
            gen_a,
            gen_b,
            waive_density,
        } => cmd_experiment(cli, *n, *epsilon, gen_a.as_deref(), gen_b.as_deref(), *waive_density),
        Command::Audit {
            params,
            n,
            epsilon,
            gen_a,
            gen_b,
        } => cmd_audit(cli, params, *n, *epsilon, gen_a.as_deref(), gen_b.as_deref()),
        Command::Suite {
            quad_cases,
            theorem_cases,
            fast,
        } => cmd_suite(cli, *quad_cases, *theorem_cases, *fast),
    }
}

fn cmd_qr_table(cli: &Cli, q: u64) -> Result<Outcome, Error> {
    let profile = qr_profile(Modulus::new(q)?);
    let csv = {
        let mut s = String::from("t,count\n");
        for (t, c) in profile.counts.iter().enumerate() {
            s.push_str(&format!("{t},{c}\n"));
        }
        s
    };
    let report = json!({
        "config": config_json(cli, "qr-table", json!({"q": q})),
        "q": q,
        "counts": profile.counts,
        "total": profile.total(),
        "provenance": "exact",
    });
    Ok(Outcome {
        report,
        pass: true,
        csv: Some(csv),
    })
}

fn cmd_verify_modular(cli: &Cli, q: u64, cases: u32, epsilon: f64) -> Result<Outcome, Error> {
    let modulus = Modulus::new(q)?;
    let ineq_tol = cli.tolerance.max(1e-8);
    let mut rng = seeded_rng(cli.seed);
    let mut reports = Vec::new();
    let mut pass = true;
    for case in 0..cases {
        let mean = 0.375 + epsilon + (case as f64 / cases.max(1) as f64) * (0.6 - 0.375 - epsilon);
        let wa = random_weight(modulus, mean, &mut rng);
        let wb = random_weight(modulus, mean, &mut rng);
        let mut batch = vec![modular::fourier_identity_check(&wa, &wb, cli.tolerance)?];
        if q % 24 == 0 {
            batch.push(modular::mod24_term_check(&wa, &wb, cli.tolerance)?);
            batch.push(modular::offdiagonal_bound_check(&wa, &wb, ineq_tol)?);
        }
        batch.push(modular::square_count_bound_check(&wa, &wb, epsilon, ineq_tol)?);
        for r in batch {
            pass &= r.pass;
            reports.push(json!({
                "case": case,
                "name": r.name,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "residual": r.residual,
                "pass": r.pass,
                "provenance": "float",
            }));
        }
    }
    let report = json!({
        "config": config_json(cli, "verify-modular",
            json!({"q": q, "cases": cases, "epsilon": epsilon})),
        "q": q,
        "cases": cases,
        "seed": cli.seed,
        "checks": reports,
        "pass": pass,
    });
    Ok(Outcome::new(report, pass))
}

fn cmd_gauss_bounds(cli: &Cli, q: Option<u64>, q_max: Option<u64>) -> Result<Outcome, Error> {
    let moduli: Vec<u64> = match (q, q_max) {
        (Some(q), None) => vec![q],
        (None, Some(max)) => (24..=max).step_by(24).collect(),
        (None, None) => vec![48],
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let bound = 1.0 / 5f64.sqrt();
    let mut rows = Vec::new();
    let mut csv = String::from("q,m,magnitude,case_bound,class,within\n");
    let mut pass = true;
    for &qv in &moduli {
        let entries = modular::gauss_bound_report(Modulus::new(qv)?)?;
        for e in entries {
            let within = e.magnitude <= bound + cli.tolerance
                && e.magnitude <= e.case_bound + cli.tolerance;
            pass &= within;
            csv.push_str(&format!(
                "{},{},{:.12},{:.12},{:?},{}\n",
                qv, e.m, e.magnitude, e.case_bound, e.bound_class, within
            ));
            rows.push(json!({
                "q": qv,
                "m": e.m,
                "magnitude": e.magnitude,
                "case_bound": e.case_bound,
                "class": format!("{:?}", e.bound_class),
                "within": within,
                "provenance": "float",
            }));
        }
    }
    let report = json!({
        "config": config_json(cli, "gauss-bounds", json!({"q": q, "q_max": q_max})),
        "bound": bound,
        "entries": rows,
        "pass": pass,
    });
    Ok(Outcome {
        report,
        pass,
        csv: Some(csv),
    })
}

fn cmd_search(cli: &Cli, q: u64, exhaustive: bool, reduced: bool) -> Result<Outcome, Error> {
    let modulus = Modulus::new(q)?;
    let budget = if exhaustive {
        SearchBudget::Exhaustive
    } else if reduced {
        SearchBudget::Reduced
    } else if q <= 16 {
        SearchBudget::Exhaustive
    } else {
        SearchBudget::Reduced
    };
    let witness = search::max_bipartite_density(modulus, budget)?;
    let pass = witness.certified;
    let report = json!({
        "config": config_json(cli, "search",
            json!({"q": q, "budget": budget})),
        "q": q,
        "A": witness.a.elements(),
        "B": witness.b.elements(),
        "objective": witness.objective,
        "certified": witness.certified,
        "optimal": witness.optimal,
        "provenance": "exact",
    });
    Ok(Outcome::new(report, pass))
}

fn cmd_optimize(cli: &Cli, mode: OptimizeMode) -> Result<Outcome, Error> {
    match mode {
        OptimizeMode::Exact => {
            let result = optimize::enumerate_norm_bound();
            let equality = optimize::equality_case_analysis(&result);
            let report = json!({
                "config": config_json(cli, "optimize", json!({"mode": "exact"})),
                "case_count": result.case_count,
                "max_phi": ExactQuad::from(result.max_phi),
                "max_phi_tilde": ExactQuad::from(result.max_phi_tilde),
                "extremizers_phi": result.extremizers_phi.iter().map(bits_of).collect::<Vec<_>>(),
                "extremizers_tilde": result.extremizers_tilde.iter().map(bits_of).collect::<Vec<_>>(),
                "equality_cases_covered": equality.translates_cover_enumeration,
                "provenance": "exact",
            });
            Ok(Outcome::new(report, true))
        }
        OptimizeMode::Float => {
            let result = optimize::enumerate_float();
            let report = json!({
                "config": config_json(cli, "optimize", json!({"mode": "float"})),
                "case_count": result.case_count,
                "max_phi": result.max_phi,
                "max_phi_tilde": result.max_phi_tilde,
                "extremizers": result.extremizers,
                "provenance": "float",
            });
            Ok(Outcome::new(report, true))
        }
    }
}

fn cmd_count(
    cli: &Cli,
    n: u64,
    a_file: Option<&Path>,
    b_file: Option<&Path>,
    check: bool,
) -> Result<Outcome, Error> {
    let a = match a_file {
        Some(p) => load_set(n, p)?,
        None => IntegerSet::full(n),
    };
    let b = match b_file {
        Some(p) => load_set(n, p)?,
        None => a.clone(),
    };
    let count = integers::count_square_pairs(&a, &b);
    let mut pass = true;
    let mut double_loop = None;
    if check {
        let dl = integers::count_square_pairs_double_loop(&a, &b);
        pass = dl == count;
        double_loop = Some(dl);
    }
    let report = json!({
        "config": config_json(cli, "count",
            json!({"n": n, "a_file": a_file, "b_file": b_file, "check": check})),
        "n": n,
        "size_a": a.len(),
        "size_b": b.len(),
        "count": count,
        "double_loop": double_loop,
        "pass": pass,
        "provenance": "exact",
    });
    Ok(Outcome::new(report, pass))
}

fn cmd_approximant(
    cli: &Cli,
    params: &ParamArgs,
    n: u64,
    a_file: Option<&Path>,
    gen: &str,
    beta_samples: u32,
) -> Result<Outcome, Error> {
    let params = params.build()?;
    let a = match a_file {
        Some(p) => load_set(n, p)?,
        None => {
            let generator = parse_generator(gen)?;
            generator.generate(n, &mut seeded_rng(cli.seed))
        }
    };
    let w = integers::build_approximant(&a, params)?;
    let mass = w.total_mass();
    let mass_ok = mass == sumsquares::Rational::new(a.len() as i64, 1);
    let mut fourier = Vec::new();
    let mut pass = mass_ok;
    let mut divisors: Vec<u64> = (1..=params.q).filter(|d| params.q % d == 0).collect();
    divisors.sort_unstable();
    for &qd in &divisors {
        for aa in 0..qd {
            let zero = integers::balanced_fourier_check(&a, params, aa, qd, 0.0, 0.0)?;
            let zero_ok = zero.lhs < 1e-9 * n as f64;
            pass &= zero_ok;
            fourier.push(json!({
                "a": aa, "q": qd, "beta": 0.0, "magnitude": zero.lhs,
                "bound": 1e-9 * n as f64, "pass": zero_ok,
            }));
            for i in 1..=beta_samples {
                let beta = 1e-6 * 1000f64.powf((i - 1) as f64 / beta_samples.max(2) as f64);
                let r = integers::balanced_fourier_check(&a, params, aa, qd, beta, cli.tolerance)?;
                pass &= r.pass;
                fourier.push(json!({
                    "a": aa, "q": qd, "beta": beta, "magnitude": r.lhs,
                    "bound": r.rhs, "pass": r.pass,
                }));
            }
        }
    }
    let report = json!({
        "config": config_json(cli, "approximant",
            json!({"n": n, "params": params, "gen": gen, "beta_samples": beta_samples})),
        "n": n,
        "params": params,
        "size_a": a.len(),
        "total_mass": [mass.numer(), mass.denom()],
        "mass_matches_cardinality": mass_ok,
        "fourier_checks": fourier,
        "pass": pass,
        "provenance": "exact mass, float transform",
    });
    Ok(Outcome::new(report, pass))
}

fn default_generators(epsilon: f64) -> (SetGenerator, SetGenerator) {
    let density = 0.375 + epsilon;
    (
        SetGenerator::ResiduesBoosted {
            modulus: 8,
            residues: vec![0, 1, 5],
            target_density: density,
        },
        SetGenerator::ResiduesBoosted {
            modulus: 8,
            residues: vec![2, 5, 6],
            target_density: density,
        },
    )
}

fn cmd_experiment(
    cli: &Cli,
    n: u64,
    epsilon: f64,
    gen_a: Option<&str>,
    gen_b: Option<&str>,
    waive_density: bool,
) -> Result<Outcome, Error> {
    let (default_a, default_b) = default_generators(epsilon);
    let ga = gen_a.map(parse_generator).transpose()?.unwrap_or(default_a);
    let gb = gen_b.map(parse_generator).transpose()?.unwrap_or(default_b);
    let result = integers::main_experiment(n, epsilon, &ga, &gb, cli.seed, waive_density)?;
    let pass = result.pass;
    let report = json!({
        "config": config_json(cli, "experiment",
            json!({"n": n, "epsilon": epsilon, "gen_a": gen_a, "gen_b": gen_b,
                   "waive_density": waive_density})),
        "result": result,
        "margin": if result.bound > 0.0 { result.count as f64 / result.bound } else { f64::INFINITY },
        "provenance": "exact count, float bound",
    });
    Ok(Outcome::new(report, pass))
}

fn cmd_audit(
    cli: &Cli,
    params: &ParamArgs,
    n: u64,
    epsilon: f64,
    gen_a: Option<&str>,
    gen_b: Option<&str>,
) -> Result<Outcome, Error> {
    let params = params.build()?;
    let (default_a, default_b) = default_generators(epsilon);
    let ga = gen_a.map(parse_generator).transpose()?.unwrap_or(default_a);
    let gb = gen_b.map(parse_generator).transpose()?.unwrap_or(default_b);
    let mut rng = seeded_rng(cli.seed);
    let a = ga.generate(n, &mut rng);
    let b = gb.generate(n, &mut rng);
    let audit = integers::decomposition_audit(&a, &b, params, epsilon)?;
    let pass = audit.identity_exact && audit.identity_relative_error < 1e-6;
    let report = json!({
        "config": config_json(cli, "audit",
            json!({"n": n, "epsilon": epsilon, "params": params,
                   "gen_a": gen_a, "gen_b": gen_b})),
        "audit": audit,
        "pass": pass,
        "provenance": "exact identity, float bounds",
    });
    Ok(Outcome::new(report, pass))
}

fn cmd_suite(cli: &Cli, quad_cases: u32, theorem_cases: u32, fast: bool) -> Result<Outcome, Error> {
    let mut items: Vec<(String, bool, String)> = Vec::new();
    let mut record = |name: &str, pass: bool, detail: String| {
        items.push((name.to_string(), pass, detail));
    };

    // exact enumeration
    let enumeration = optimize::enumerate_norm_bound();
    let eighteen = Quad5::from_integer(18);
    record(
        "enumeration_exact",
        enumeration.case_count == 880_970
            && enumeration.max_phi == eighteen
            && enumeration.max_phi_tilde == eighteen
            && enumeration.extremizers_phi.len() == 3
            && enumeration.extremizers_tilde.len() == 3,
        format!(
            "cases={} max={} extremizers={}+{}",
            enumeration.case_count,
            enumeration.max_phi,
            enumeration.extremizers_phi.len(),
            enumeration.extremizers_tilde.len()
        ),
    );
    let float = optimize::enumerate_float();
    record(
        "enumeration_float",
        (float.max_phi - 18.000000000000004).abs() < 1e-12
            && (float.max_phi_tilde - 18.000000000000004).abs() < 1e-12,
        format!("max={:.15}", float.max_phi),
    );
    let equality = optimize::equality_case_analysis(&enumeration);
    record(
        "equality_cases",
        equality.pass,
        format!("{} translate pairs", equality.cases.len()),
    );

    // extremal search
    for (q, budget, expect) in [
        (3u64, SearchBudget::Exhaustive, 1u32),
        (8, SearchBudget::Exhaustive, 3),
    ] {
        let w = search::max_bipartite_density(Modulus::new(q)?, budget)?;
        record(
            &format!("search_q{q}"),
            w.objective == expect && w.certified,
            format!("objective={} certified={}", w.objective, w.certified),
        );
    }
    if !fast {
        let w = search::max_bipartite_density(Modulus::new(24)?, SearchBudget::Reduced)?;
        record(
            "search_q24",
            w.objective == 9 && w.certified,
            format!("objective={}", w.objective),
        );
    }

    // Gauss bounds
    let q_top = if fast { 240 } else { 960 };
    let bound = 1.0 / 5f64.sqrt();
    let mut gauss_ok = true;
    let mut worst: f64 = 0.0;
    for qv in (24..=q_top).step_by(24) {
        for e in modular::gauss_bound_report(Modulus::new(qv)?)? {
            worst = worst.max(e.magnitude);
            gauss_ok &= e.magnitude <= bound + 1e-9 && e.magnitude <= e.case_bound + 1e-9;
        }
    }
    record(
        "gauss_bounds",
        gauss_ok,
        format!("worst={worst:.12} cap={bound:.12} q<={q_top}"),
    );

    // identity suites
    let mut rng = seeded_rng(cli.seed);
    let mut identities_ok = true;
    for case in 0..100u32 {
        let q = Modulus::new(24 * (1 + (case as u64 % 10)))?;
        let wa = random_weight(q, 0.5, &mut rng);
        let wb = random_weight(q, 0.5, &mut rng);
        identities_ok &= modular::fourier_identity_check(&wa, &wb, 1e-8)?.pass;
        identities_ok &= modular::mod24_term_check(&wa, &wb, 1e-8)?.pass;
        let split = modular::spectral_split(&wa, &wb)?;
        identities_ok &=
            ((split.mod24 + split.offdiagonal) - split.full).norm() < 1e-8;
    }
    record("identity_suites", identities_ok, "100 seeded pairs".into());

    // quantitative theorem
    let mut theorem_ok = true;
    let mut done = 0u32;
    'outer: for &q in &[8u64, 24, 36, 100] {
        for &eps in &[0.05f64, 0.1] {
            let per = (theorem_cases / 8).max(1);
            for _ in 0..per {
                if done >= theorem_cases {
                    break 'outer;
                }
                let m = Modulus::new(q)?;
                let wa = random_weight(m, 0.375 + eps, &mut rng);
                let wb = random_weight(m, 0.375 + eps, &mut rng);
                theorem_ok &= modular::square_count_bound_check(&wa, &wb, eps, 1e-8)?.pass;
                done += 1;
            }
        }
    }
    record(
        "quantitative_theorem",
        theorem_ok,
        format!("{done} seeded pairs"),
    );

    // quadratic form
    let mut quad_ok = true;
    let cases = if fast { quad_cases.min(1000) } else { quad_cases };
    for _ in 0..cases {
        let a = sumsquares::sample::random_nonneg_vector24(1.0, &mut rng);
        let b = sumsquares::sample::random_nonneg_vector24(1.0, &mut rng);
        quad_ok &= optimize::quadratic_form_check(&a, &b)?.pass;
    }
    record("quadratic_form", quad_ok, format!("{cases} seeded pairs"));

    // balanced-function cancellation
    let n = 4800u64;
    let params = ApproximantParams::new(12, 10)?;
    let mut balanced_ok = true;
    let instances = if fast { 3 } else { 20 };
    for _ in 0..instances {
        let a = SetGenerator::Uniform { density: 0.5 }.generate(n, &mut rng);
        for qd in [1u64, 2, 3, 4, 6, 12] {
            for aa in 0..qd {
                let r = integers::balanced_fourier_check(&a, params, aa, qd, 0.0, 0.0)?;
                balanced_ok &= r.lhs < 1e-9 * n as f64;
            }
        }
        for i in 1..=20 {
            let beta = 1e-6 * 1000f64.powf((i - 1) as f64 / 19.0);
            balanced_ok &= integers::balanced_fourier_check(&a, params, 1, 4, beta, 1e-9)?.pass;
        }
    }
    record(
        "balanced_cancellation",
        balanced_ok,
        format!("{instances} instances"),
    );

    // integer experiment
    let n_big = if fast { 10_000 } else { 100_000 };
    let extremal = integers::main_experiment(
        n_big,
        0.0,
        &SetGenerator::Residues {
            modulus: 8,
            residues: vec![0, 1, 5],
        },
        &SetGenerator::Residues {
            modulus: 8,
            residues: vec![2, 5, 6],
        },
        cli.seed,
        true,
    )?;
    record(
        "experiment_extremal",
        extremal.count == 0,
        format!("count={}", extremal.count),
    );
    let eps = 1.0 / 16.0;
    let (ga, gb) = default_generators(eps);
    let boosted = integers::main_experiment(n_big, eps, &ga, &gb, cli.seed, false)?;
    record(
        "experiment_boosted",
        boosted.pass,
        format!("count={} bound={:.3}", boosted.count, boosted.bound),
    );
    let mut rng2 = seeded_rng(cli.seed);
    let a = ga.generate(n_big, &mut rng2);
    let b = gb.generate(n_big, &mut rng2);
    let audit = integers::decomposition_audit(&a, &b, ApproximantParams::new(8, 10)?, eps)?;
    record(
        "decomposition_audit",
        audit.identity_exact && audit.identity_relative_error < 1e-6,
        format!("count={} exact={}", audit.count, audit.identity_exact),
    );

    // oracle equivalence
    let mut oracle_ok = true;
    for _ in 0..50 {
        let n = rand::Rng::gen_range(&mut rng, 10u64..=2000);
        let a = SetGenerator::Uniform { density: 0.4 }.generate(n, &mut rng);
        let b = SetGenerator::Uniform { density: 0.4 }.generate(n, &mut rng);
        oracle_ok &= integers::count_square_pairs(&a, &b)
            == integers::count_square_pairs_double_loop(&a, &b);
    }
    record("oracle_equivalence", oracle_ok, "50 random instances".into());

    let pass = items.iter().all(|(_, p, _)| *p);
    let report = json!({
        "config": config_json(cli, "suite",
            json!({"quad_cases": quad_cases, "theorem_cases": theorem_cases, "fast": fast})),
        "items": items.iter().map(|(name, p, detail)| json!({
            "name": name, "pass": p, "detail": detail,
        })).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok(Outcome::new(report, pass))
}
