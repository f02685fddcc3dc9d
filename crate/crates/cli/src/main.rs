//! `arbordyn`: command-line access to the stability engines, witness searches,
//! wreath-product calculus, Dickson family and prime census.
//!
//! Exit codes: 0 on success (or a met expectation), 1 when a census misses its
//! expected density, 2 on bad input.

use std::collections::BTreeSet;
use std::error::Error;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use arbordyn_core::census::{
    profile_from_rows, run_census, CensusMode, CensusOptions, CensusRun, Comparison, PrimeRow, Scenario,
};
use arbordyn_core::dickson::{dickson_poly, maximal_density_candidates, DicksonParams, Sign};
use arbordyn_core::dynamics::{check_with_report, classify_report, critical_structure, DEFAULT_MAX_STEPS};
use arbordyn_core::exactalg::{parse_poly, parse_rational, PolyQ, Rational};
use arbordyn_core::stability::{
    depth_stable, find_valuation_witnesses, kernel_witness_scan, predict_ramification, unicritical_exact_stable,
    as_unicritical, KernelMode,
};
use arbordyn_core::wreath::{
    brute_force_tower, full_cycle_proportion, parity_necessary, realizable_in_tower, realizing_tower, CycleType,
    ParityOutcome, Tower,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

type CliResult<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "arbordyn", version, about = "Stable primes of polynomial iteration over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical orbits, postcritical class and density-zero criteria for f.
    Analyze {
        poly: String,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        steps: usize,
        #[arg(long)]
        json: bool,
    },
    /// Mod-p stability of (f, a) at one prime.
    Stability {
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        p: u64,
        /// Check levels 1..=N (default 4).
        #[arg(long, conflicts_with = "exact_unicritical")]
        depth: Option<usize>,
        /// Decide full stability of uX^d + v.
        #[arg(long)]
        exact_unicritical: bool,
    },
    /// Prime valuations of f^n(t) not divisible by e.
    Witnesses {
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        e: u64,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long, default_value_t = 1_000_000)]
        trial_bound: u64,
        /// Pollard-rho iteration budget for cofactors left after trial division.
        #[arg(long)]
        rho: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<u64>,
        /// Full JSON (summaries and unfactored cofactors) instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Predicted inertia orders along wandering critical orbits.
    Kernel {
        #[arg(long)]
        f: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 1_000_000)]
        trial_bound: u64,
        /// Allow q | deg f.
        #[arg(long)]
        block_stabilizer: bool,
    },
    /// Predicted ramification at p of the splitting field of f(X) − a.
    Ramification {
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        p: u64,
    },
    /// Cycle types in iterated wreath products.
    Wreath {
        #[command(subcommand)]
        command: WreathCommand,
    },
    /// Cubic Dickson polynomials ±(X³ − 3cX) and their maximal-density values a.
    Dickson {
        #[arg(long)]
        c: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long)]
        negative: bool,
    },
    /// Density of stable primes up to a bound.
    Census(CensusArgs),
}

#[derive(Subcommand)]
enum WreathCommand {
    /// Whether a cycle type occurs in some AGL₁ tower of degree n (or in a given tower).
    Realizable {
        #[arg(long = "type")]
        cycle_type: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        tower: Option<String>,
        /// Exponent for the parity test; defaults to the unique part > 1, if any.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Proportion of full cycles in a tower.
    Proportion {
        #[arg(long)]
        tower: String,
        /// Also enumerate every element (small towers only).
        #[arg(long)]
        brute: bool,
    },
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, required_unless_present = "batch")]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "batch")]
    a: Option<String>,
    #[arg(long, required_unless_present = "batch")]
    pmax: Option<u64>,
    #[arg(long, conflicts_with = "exact_unicritical")]
    depth: Option<usize>,
    #[arg(long)]
    exact_unicritical: bool,
    #[arg(long, allow_hyphen_values = true)]
    expect: Option<String>,
    #[arg(long, requires = "expect")]
    tol: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Add the depth-by-depth density profile (depth mode only).
    #[arg(long)]
    profile: bool,
    /// JSON array of scenarios, run one after another.
    #[arg(long, conflicts_with_all = ["f", "a", "pmax", "csv"])]
    batch: Option<PathBuf>,
}

fn poly(s: &str) -> CliResult<PolyQ> {
    Ok(parse_poly(s)?)
}

fn rational(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s)?)
}

fn print_json(v: &impl serde::Serialize) -> CliResult<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn analyze(poly_text: &str, steps: usize, as_json: bool) -> CliResult<u8> {
    let f = poly(poly_text)?;
    if f.deg() < 2 {
        return Err(format!("degree of {f} is below 2").into());
    }
    let report = critical_structure(&f, steps);
    let class = classify_report(&report);
    let hyps = check_with_report(&f, &report, steps);
    if as_json {
        print_json(&json!({ "f": f, "critical": report, "postcritical": class, "hypotheses": hyps }))?;
        return Ok(0);
    }
    let mut out = io::stdout().lock();
    writeln!(out, "f = {f}  (degree {})", report.degree)?;
    for c in &report.rational_critical_points {
        writeln!(out, "  critical point {}  multiplicity {}  orbit {:?}", c.point, c.mult_under_f, c.orbit.status)?;
    }
    for c in &report.irrational_critical_part {
        let value = c.critical_value.as_ref().map_or("irrational".to_string(), |v| v.to_string());
        writeln!(out, "  critical factor {}  multiplicity {}  value {value}", c.factor, c.multiplicity_in_derivative)?;
    }
    writeln!(out, "postcritical class: {class:?}")?;
    for e in &hyps.entries {
        let (c, v) = (format!("{:?}", e.criterion), format!("{:?}", e.verdict));
        writeln!(out, "  {c:<22} {v:<14} {}", e.note)?;
    }
    Ok(0)
}

fn stability(f: &str, a: &str, p: u64, depth: Option<usize>, exact: bool) -> CliResult<u8> {
    let (f, a) = (poly(f)?, rational(a)?);
    let verdict = if exact {
        let u = as_unicritical(&f).ok_or_else(|| format!("{f} is not of the form uX^d + v"))?;
        unicritical_exact_stable(&u.u, u.d, &u.v, &a, p)?
    } else {
        depth_stable(&f, &a, p, depth.unwrap_or(4))?
    };
    print_json(&verdict)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn witnesses(
    f: &str,
    t: &str,
    e: u64,
    nmax: usize,
    trial_bound: u64,
    rho: Option<u64>,
    exclude: Vec<u64>,
    as_json: bool,
) -> CliResult<u8> {
    let (f, t) = (poly(f)?, rational(t)?);
    let exclude: BTreeSet<u64> = exclude.into_iter().collect();
    let search = find_valuation_witnesses(&f, &t, e, &exclude, nmax, trial_bound, rho)?;
    if as_json {
        print_json(&search)?;
        return Ok(0);
    }
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["n", "p", "valuation", "complete_factorization"])?;
    for x in &search.witnesses {
        w.write_record([x.n.to_string(), x.p.to_string(), x.valuation.to_string(), x.complete_factorization.to_string()])?;
    }
    w.flush()?;
    for level in &search.incomplete {
        eprintln!("n = {}: unfactored cofactors remain ({} of them)", level.n, level.cofactors.len());
    }
    Ok(0)
}

fn wreath(cmd: WreathCommand) -> CliResult<u8> {
    match cmd {
        WreathCommand::Realizable { cycle_type, n, tower, q } => {
            let tau: CycleType = cycle_type.parse()?;
            let n = n.unwrap_or(tau.degree());
            let (realizable, tower, witness) = match tower {
                Some(t) => {
                    let t: Tower = t.parse()?;
                    let w = realizable_in_tower(&tau, &t)?;
                    (w.is_some(), Some(t), w)
                }
                None => match realizing_tower(&tau, n)? {
                    Some((t, w)) => (true, Some(t), Some(w)),
                    None => (false, None, None),
                },
            };
            let q = q.or_else(|| {
                let big: BTreeSet<u64> = tau.parts().iter().copied().filter(|&x| x > 1).collect();
                (big.len() == 1).then(|| *big.iter().next().unwrap())
            });
            let parity = q.map_or(ParityOutcome::Inapplicable, |q| parity_necessary(&tau, n, q));
            print_json(&json!({
                "type": tau.to_string(),
                "n": n,
                "realizable": realizable,
                "tower": tower.map(|t| t.to_string()),
                "witness": witness,
                "parity": parity,
                "q": q,
            }))?;
        }
        WreathCommand::Proportion { tower, brute } => {
            let t: Tower = tower.parse()?;
            let prop = full_cycle_proportion(&t)?;
            let mut out = json!({ "tower": t.to_string(), "degree": t.degree(), "full_cycle_proportion": prop.to_string() });
            if brute {
                let counts = brute_force_tower(&t)?;
                let total: u64 = counts.iter().map(|(_, c)| c).sum();
                let full: u64 = counts.iter().filter(|(c, _)| c.is_full_cycle()).map(|(_, c)| c).sum();
                out["brute_force"] = json!({
                    "order": total,
                    "full_cycles": full,
                    "cycle_index": counts.iter().map(|(c, k)| (c.to_string(), *k)).collect::<Vec<_>>(),
                });
            }
            print_json(&out)?;
        }
    }
    Ok(0)
}

fn dickson(c: u64, count: usize, negative: bool) -> CliResult<u8> {
    let sign = if negative { Sign::Minus } else { Sign::Plus };
    let params = DicksonParams::new(c, sign)?;
    let candidates = match params.representation {
        Some(_) => Some(maximal_density_candidates(c, count)?),
        None => None,
    };
    print_json(&json!({
        "c": c,
        "f": dickson_poly(&params),
        "representation": params.representation.map(|(a, b)| json!({ "alpha": a, "beta": b })),
        "candidates": candidates,
        "eligible": candidates.iter().flatten().filter(|c| c.eligible).map(|c| c.a.to_string()).collect::<Vec<_>>(),
    }))?;
    Ok(0)
}

fn write_rows(path: &PathBuf, rows: &[PrimeRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn report_value(run: &CensusRun, profile: bool) -> CliResult<Value> {
    let mut v = serde_json::to_value(&run.report)?;
    if let (true, CensusMode::Depth(n)) = (profile, run.report.scenario.mode) {
        v["profile"] = serde_json::to_value(profile_from_rows(&run.rows, n))?;
    }
    Ok(v)
}

fn census(args: CensusArgs) -> CliResult<u8> {
    let opts = CensusOptions { workers: args.workers };
    let emit = |v: &Value| -> CliResult<()> {
        match &args.out {
            Some(path) => Ok(fs::write(path, serde_json::to_string_pretty(v)? + "\n")?),
            None => print_json(v),
        }
    };
    if let Some(path) = &args.batch {
        let scenarios: Vec<Scenario> = serde_json::from_str(&fs::read_to_string(path)?)?;
        let mut reports = Vec::new();
        let mut failed = false;
        for s in &scenarios {
            let run = run_census(s, &opts)?;
            failed |= run.report.verdict == Some(Comparison::Fail);
            reports.push(report_value(&run, args.profile)?);
        }
        emit(&Value::Array(reports))?;
        return Ok(if failed { 1 } else { 0 });
    }
    let mode = match (args.depth, args.exact_unicritical) {
        (_, true) => CensusMode::ExactUnicritical,
        (Some(n), false) => CensusMode::Depth(n),
        (None, false) => return Err("census needs --depth N or --exact-unicritical".into()),
    };
    let f = poly(args.f.as_deref().unwrap_or_default())?;
    let a = rational(args.a.as_deref().unwrap_or_default())?;
    let mut s = Scenario::new(f, a, args.pmax.unwrap_or_default(), mode);
    if let Some(e) = &args.expect {
        s.expected = Some(rational(e)?);
        s.tol = args.tol.as_deref().map(rational).transpose()?;
    }
    let run = run_census(&s, &opts)?;
    if let Some(path) = &args.csv {
        write_rows(path, &run.rows)?;
    }
    emit(&report_value(&run, args.profile)?)?;
    Ok(if run.report.verdict == Some(Comparison::Fail) { 1 } else { 0 })
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Analyze { poly, steps, json } => analyze(&poly, steps, json),
        Command::Stability { f, a, p, depth, exact_unicritical } => stability(&f, &a, p, depth, exact_unicritical),
        Command::Witnesses { f, t, e, nmax, trial_bound, rho, exclude, json } => {
            witnesses(&f, &t, e, nmax, trial_bound, rho, exclude, json)
        }
        Command::Kernel { f, q, nmax, trial_bound, block_stabilizer } => {
            let mode = if block_stabilizer { KernelMode::BlockStabilizer } else { KernelMode::Coprime };
            print_json(&kernel_witness_scan(&poly(&f)?, q, nmax, trial_bound, mode)?)?;
            Ok(0)
        }
        Command::Ramification { f, a, p } => {
            print_json(&predict_ramification(&poly(&f)?, &rational(&a)?, p)?)?;
            Ok(0)
        }
        Command::Wreath { command } => wreath(command),
        Command::Dickson { c, count, negative } => dickson(c, count, negative),
        Command::Census(args) => census(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        // A closed pipe (e.g. `| head`) is not an input error.
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
