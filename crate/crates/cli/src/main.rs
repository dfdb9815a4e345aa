//! `stardisc`: generate point sets, measure their star discrepancy and
//! combinatorial complexity, and produce witness-box certificates.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 enumeration budget exceeded.

mod report;
mod verify;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_rational::Ratio;
use serde_json::{json, Value};

use stardisc::complexity::{bounds_table, max_boundary_box_with_budget, shatter_report_with_budget};
use stardisc::discrepancy::{
    lower_bound_sample, star_discrepancy_exact_with_budget, star_discrepancy_oracle, DEFAULT_BUDGET,
};
use stardisc::generators::{GeneratorKind, GeneratorSpec};
use stardisc::io::{parse_points, write_points};
use stardisc::witness::{
    check_bernoulli_inequality, check_case3_rational, kappa_witness, simple_witness, theorem1_witness,
    WitnessCertificate,
};
use stardisc::{Error, PointSet};

use report::{big, corner, Report};

/// Agreement required between the exact enumeration and the mesh oracle.
const ORACLE_TOLERANCE: f64 = 1e-12;

#[derive(Parser)]
#[command(name = "stardisc", version, about = "Star discrepancy, witness boxes and trace counts of point sets")]
struct Cli {
    /// Worker threads for the parallel enumerations (default: all cores).
    #[arg(long, global = true, env = "STARDISC_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated point set to standard output.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GeneratorKind,
        /// Number of points (points per axis for `lattice`).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prefix the output with a `# d=.. n=..` header line.
        #[arg(long)]
        header: bool,
    },
    /// Exact star discrepancy over the critical grid.
    Disc {
        /// Points file, or `-` for standard input.
        file: PathBuf,
        /// Also run the brute-force oracle on the uniform mesh of this size.
        #[arg(long)]
        mesh: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Random search over this many grid corners instead of full enumeration.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Witness box certifying the d/(12n) lower bound.
    Witness {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Theorem1)]
        method: Method,
    },
    /// Number of distinct subsets cut out by anchored boxes.
    Shatter {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Box with the most points on its right-upper boundary, and property P(r).
    Boundary {
        file: PathBuf,
        /// Threshold r as an integer or fraction `a/b` (default d/4).
        #[arg(long, value_parser = parse_ratio)]
        r: Option<Ratio<u64>>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Exact and asymptotic counting bounds for (n, d, r).
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        /// Defaults to ceil(d/4).
        #[arg(long)]
        r: Option<u64>,
    },
    /// Grid checks of the reverse Bernoulli inequality and the case-3 rational bound.
    Check {
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        #[arg(long, default_value_t = 100_000)]
        rational_grid: usize,
    },
    /// Run a verification suite; exits 1 if any instance fails.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 50)]
        seeds: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Method {
    /// Dispatch used for the d/(12n) certificate.
    Theorem1,
    /// Nested boxes with threshold 1 - 1/d.
    Simple,
    /// Kappa case analysis in any dimension.
    Kappa,
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let a: u64 = a.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let b: u64 = b.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if b == 0 {
                return Err("denominator must be non-zero".into());
            }
            Ratio::new(a, b)
        }
        None => Ratio::from_integer(s.trim().parse().map_err(|_| format!("`{s}` is not a rational number"))?),
    };
    if r == Ratio::from_integer(0) {
        return Err("r must be positive".into());
    }
    Ok(r)
}

enum Failure {
    Verification(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Lib(Error::BudgetExceeded { .. }) => 3,
            Failure::Lib(_) | Failure::Io(_) => 2,
        }
    }
}

fn read_input(file: &PathBuf) -> Result<(Vec<u8>, PointSet), Failure> {
    let bytes = if file.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read(file).map_err(|e| Failure::Io(format!("reading {}: {e}", file.display())))?
    };
    let text = std::str::from_utf8(&bytes).map_err(|_| Failure::Io("input is not UTF-8".into()))?;
    let ps = parse_points(text)?;
    Ok((bytes, ps))
}

fn certificate_results(report: &mut Report, cert: &WitnessCertificate) {
    report
        .result("case", cert.case.as_str())
        .result("boxes", Value::from(cert.boxes.iter().map(corner).collect::<Vec<_>>()))
        .result("best", corner(&cert.best))
        .result("side", cert.side.as_str())
        .result("measured", cert.measured)
        .result("guaranteed", cert.guaranteed)
        .result("guarantee_valid", cert.guarantee_valid)
        .result("margin", cert.margin());
    if let Some(p) = &cert.partition {
        report.result("kappa", p.kappa).result(
            "partition",
            json!({ "p0": p.p0.len(), "p1": p.p1.len(), "p2": p.p2.len(), "c_set": p.c_set }),
        );
    }
    if let Some(t) = &cert.trace {
        let steps: Vec<Value> = t
            .steps
            .iter()
            .map(|s| json!({ "axis": s.axis, "pool_before": s.pool_before, "removed": s.removed, "m": s.removed_count() }))
            .collect();
        report.result(
            "case3_trace",
            json!({
                "m_big": t.m_big,
                "k": t.k,
                "q": format!("{}/{}", t.q.numer(), t.q.denom()),
                "capped_axes": t.capped_axes,
                "steps": steps,
            }),
        );
    }
}

fn run(command: Command) -> Result<Option<Report>, Failure> {
    let report = match command {
        Command::Gen { kind, n, d, seed, header } => {
            let ps = GeneratorSpec { kind, n, d, seed }.generate()?;
            let mut out = std::io::stdout().lock();
            out.write_all(write_points(&ps, header).as_bytes()).map_err(|e| Failure::Io(e.to_string()))?;
            return Ok(None);
        }
        Command::Disc { file, mesh, budget, sample, seed } => {
            let (bytes, ps) = read_input(&file)?;
            let mut r = Report::new("disc");
            r.input(&bytes).param("budget", budget.to_string()).param("n", ps.len()).param("d", ps.dim());
            if let Some(samples) = sample {
                r.param("sample", samples).param("seed", seed);
                let ld = lower_bound_sample(&ps, samples, seed)?;
                r.result("lower_bound", ld.value).result("witness", corner(&ld.corner)).result("side", ld.side.as_str());
            } else {
                let exact = star_discrepancy_exact_with_budget(&ps, budget).map_err(|e| match e {
                    Error::BudgetExceeded { .. } => {
                        eprintln!("hint: use --sample <count> for a randomized lower bound");
                        Failure::Lib(e)
                    }
                    other => Failure::Lib(other),
                })?;
                r.result("value", exact.value).result("witness", corner(&exact.witness)).result("side", exact.side.as_str());
                if let Some(m) = mesh {
                    r.param("mesh", m);
                    let oracle = star_discrepancy_oracle(&ps, m)?;
                    let agree = (oracle - exact.value).abs() <= ORACLE_TOLERANCE;
                    r.result("oracle", oracle).result("oracle_agrees", agree);
                    if !agree {
                        println!("{}", r.render(Default::default()).trim_end());
                        return Err(Failure::Verification(format!(
                            "internal error: exact value {} disagrees with mesh oracle {}",
                            exact.value, oracle
                        )));
                    }
                }
            }
            r
        }
        Command::Witness { file, method } => {
            let (bytes, ps) = read_input(&file)?;
            let cert = match method {
                Method::Theorem1 => theorem1_witness(&ps)?,
                Method::Simple => simple_witness(&ps)?,
                Method::Kappa => kappa_witness(&ps)?,
            };
            let mut r = Report::new("witness");
            let method_name = match method {
                Method::Theorem1 => "theorem1",
                Method::Simple => "simple",
                Method::Kappa => "kappa",
            };
            r.input(&bytes).param("method", method_name).param("n", ps.len()).param("d", ps.dim());
            certificate_results(&mut r, &cert);
            r
        }
        Command::Shatter { file, budget } => {
            let (bytes, ps) = read_input(&file)?;
            let rep = shatter_report_with_budget(&ps, budget)?;
            let mut r = Report::new("shatter");
            r.input(&bytes)
                .param("budget", budget.to_string())
                .param("n", ps.len())
                .param("d", ps.dim())
                .result("count", big(&rep.count))
                .result("includes_empty", rep.includes_empty)
                .result("sauer_shelah_bound", big(&rep.sauer_shelah_bound))
                .result("max_boundary", rep.max_boundary)
                .result("max_boundary_box", corner(&rep.max_boundary_box));
            r
        }
        Command::Boundary { file, r: threshold, budget } => {
            let (bytes, ps) = read_input(&file)?;
            let threshold = threshold.unwrap_or_else(|| Ratio::new(ps.dim() as u64, 4));
            let (b, count) = max_boundary_box_with_budget(&ps, budget)?;
            let holds = (count as u128) * (*threshold.denom() as u128) < *threshold.numer() as u128;
            let mut r = Report::new("boundary");
            r.input(&bytes)
                .param("budget", budget.to_string())
                .param("r", threshold.to_string())
                .param("n", ps.len())
                .param("d", ps.dim())
                .result("max_boundary", count)
                .result("max_boundary_box", corner(&b))
                .result("property_p", holds);
            r
        }
        Command::Bounds { n, d, r } => {
            let r_val = r.unwrap_or_else(|| d.div_ceil(4));
            let t = bounds_table(n, d, r_val)?;
            let mut rep = Report::new("bounds");
            rep.param("n", n)
                .param("d", d)
                .param("r", r_val)
                .result("sauer", big(&t.sauer))
                .result("n_rec", big(&t.n_rec))
                .result("hat_n", big(&t.hat_n))
                .result("claim", big(&t.claim))
                .result("nbound_real", t.nbound_real)
                .result("binom_bound_real", t.binom_bound_real)
                .result("thm2_bound", t.thm2_bound)
                .result("epsilon", t.epsilon)
                .result("packing_ok", t.packing_ok);
            rep
        }
        Command::Check { grid, rational_grid } => {
            let bern = check_bernoulli_inequality(grid, grid)?;
            let rat = check_case3_rational(rational_grid)?;
            let mut r = Report::new("check");
            r.param("grid", grid)
                .param("rational_grid", rational_grid)
                .result(
                    "bernoulli",
                    json!({ "min": bern.min_value, "x": bern.argmin_x, "q": bern.argmin_q, "verified": bern.verified }),
                )
                .result(
                    "case3_rational",
                    json!({ "min": rat.min_value, "q": rat.argmin_q, "threshold": 1.0 / 12.0, "verified": rat.verified }),
                );
            if !(bern.verified && rat.verified) {
                println!("{}", r.render(Default::default()).trim_end());
                return Err(Failure::Verification("inequality check failed".into()));
            }
            r
        }
        Command::Verify { suite, seeds } => {
            let instances = verify::run(suite, seeds)?;
            let passed = instances.iter().filter(|i| i.pass).count();
            let suite_name = format!("{suite:?}").to_lowercase();
            let mut r = Report::new("verify");
            r.param("suite", suite_name)
                .param("seeds", seeds)
                .result("instances", Value::from(instances.iter().map(verify::Instance::to_value).collect::<Vec<_>>()))
                .result("passed", passed)
                .result("total", instances.len())
                .result("all_passed", passed == instances.len());
            if passed != instances.len() {
                println!("{}", r.render(Default::default()).trim_end());
                return Err(Failure::Verification(format!("{} of {} instances failed", instances.len() - passed, instances.len())));
            }
            r
        }
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    match run(cli.command) {
        Ok(Some(report)) => {
            print!("{}", report.render(start.elapsed()));
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verification(msg) | Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
