//! Command-line front end: validate shop documents, compute makespans,
//! search schedules, export Gantt charts, benchmark the solvers.
//!
//! Exit codes: 0 success, 2 infeasible, 3 invalid input, 4 budget
//! exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use tropflow::bakery::{
    bakery_makespan, build_instance, index_products, BakeryConfig, Schedule,
};
use tropflow::gantt::build_chart;
use tropflow::oracle::oracle_makespan;
use tropflow::search::{build_cache, exhaustive_search, fast_makespan, SearchError, SearchOptions};
use tropflow::sldi::{check_trajectory, dense_makespan, MakespanResult, Method, SldiInstance};
use tropflow::DEFAULT_TOLERANCE;

#[derive(Parser)]
#[command(name = "tropflow", version, about = "Max-plus flow-shop scheduling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a shop configuration (and optional demand document)
    Validate {
        config: PathBuf,
        /// Demand document overriding the quantities in the config
        #[arg(long)]
        demand: Option<PathBuf>,
    },
    /// Makespan of one schedule
    Makespan {
        config: PathBuf,
        #[arg(long)]
        demand: Option<PathBuf>,
        /// Type order, 1-based, e.g. `2,1,3`
        #[arg(long)]
        schedule: String,
        /// dense | block | fast | oracle
        #[arg(long, default_value = "block")]
        method: String,
        /// Write the optimal trajectory as a Gantt JSON (dense only)
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Search all schedules for the minimal makespan
    Optimize {
        config: PathBuf,
        #[arg(long)]
        demand: Option<PathBuf>,
        #[arg(long, default_value = "fast")]
        method: String,
        /// Abort if the search runs longer than this
        #[arg(long)]
        budget_seconds: Option<f64>,
        /// Refuse to enumerate more product types than this
        #[arg(long, default_value_t = 10)]
        max_types: usize,
        /// Write the full schedule/makespan table (CSV)
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Export a Gantt chart of the optimal trajectory for a schedule
    Gantt {
        config: PathBuf,
        #[arg(long)]
        demand: Option<PathBuf>,
        #[arg(long)]
        schedule: String,
        #[arg(long)]
        out: PathBuf,
        /// json | svg
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Compare solver timings on one shop
    Bench {
        config: PathBuf,
        #[arg(long)]
        demand: Option<PathBuf>,
        /// Comma-separated subset of dense,block,fast,oracle
        #[arg(long, default_value = "fast,block,oracle")]
        methods: String,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        /// Schedule to time (defaults to the natural order)
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Solve a raw SLDI instance document
    Solve {
        instance: PathBuf,
        /// dense | block | oracle
        #[arg(long, default_value = "block")]
        method: String,
        /// Write the optimal trajectory as JSON (dense only)
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(anyhow::Error),
    Infeasible(String),
    Budget(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 3,
            Failure::Infeasible(_) => 2,
            Failure::Budget(_) => 4,
            Failure::Internal(_) => 1,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    if let Ok(threads) = std::env::var("TROPFLOW_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Invalid(e) => eprintln!("error: {e:#}"),
                Failure::Infeasible(msg) => eprintln!("infeasible: {msg}"),
                Failure::Budget(msg) => eprintln!("budget exceeded: {msg}"),
                Failure::Internal(msg) => eprintln!("internal error: {msg}"),
            }
            ExitCode::from(failure.code())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_config(config: &Path, demand: Option<&Path>) -> Result<BakeryConfig> {
    let shop = read(config)?;
    let demand_text = demand.map(read).transpose()?;
    BakeryConfig::from_json(&shop, demand_text.as_deref())
        .with_context(|| format!("invalid shop document {}", config.display()))
}

fn parse_method(text: &str) -> Result<Method, Failure> {
    text.parse::<Method>().map_err(|e| Failure::Invalid(anyhow!(e)))
}

fn parse_schedule(cfg: &BakeryConfig, text: &str) -> Result<Schedule, Failure> {
    let schedule = Schedule::parse_one_based(text).map_err(|e| Failure::Invalid(e.into()))?;
    schedule.validate(cfg).map_err(|e| Failure::Invalid(e.into()))?;
    Ok(schedule)
}

fn minutes(value: f64) -> String {
    format!("{value} min ({:.2} h)", value / 60.0)
}

fn report_result(result: &MakespanResult, elapsed: Duration) -> Result<(), Failure> {
    if !result.feasible {
        let witness = result
            .witness
            .map(|w| w.to_string())
            .unwrap_or_else(|| "no witness".into());
        return Err(Failure::Infeasible(witness));
    }
    if result.decoupled {
        println!("feasible, but first and last events are decoupled (makespan -inf)");
    } else {
        println!("feasible: makespan {}", minutes(result.value().unwrap_or(f64::NAN)));
    }
    println!("solver: {} ({:.3} ms)", result.solver, elapsed.as_secs_f64() * 1e3);
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { config, demand } => {
            let cfg = load_config(&config, demand.as_deref())?;
            println!(
                "configuration OK: {} machines, {} types, {} products in {} batches",
                cfg.machine_count(),
                cfg.type_count(),
                cfg.total_quantity(),
                cfg.total_batches()
            );
            Ok(())
        }
        Command::Makespan { config, demand, schedule, method, trajectory } => {
            let method = parse_method(&method)?;
            if trajectory.is_some() && method != Method::Dense {
                return Err(Failure::Invalid(anyhow!(
                    "--trajectory requires --method dense; {method} does not produce trajectories"
                )));
            }
            let cfg = load_config(&config, demand.as_deref())?;
            let schedule = parse_schedule(&cfg, &schedule)?;
            let started = Instant::now();
            let result = bakery_makespan(&cfg, &schedule, method, trajectory.is_some())
                .map_err(|e| Failure::Invalid(e.into()))?;
            let elapsed = started.elapsed();
            if cfg.total_quantity() == 0 {
                println!("degenerate: empty demand, makespan 0");
                return Ok(());
            }
            if let (Some(path), Some(xs)) = (&trajectory, &result.trajectory) {
                let idx = index_products(&cfg, &schedule);
                let chart = build_chart(&cfg, &idx, xs);
                fs::write(path, chart.to_json())
                    .with_context(|| format!("cannot write {}", path.display()))?;
                println!("trajectory written to {}", path.display());
            }
            report_result(&result, elapsed)
        }
        Command::Optimize { config, demand, method, budget_seconds, max_types, table } => {
            let method = parse_method(&method)?;
            let cfg = load_config(&config, demand.as_deref())?;
            let opts = SearchOptions {
                method,
                max_types,
                budget: budget_seconds.map(Duration::from_secs_f64),
                keep_table: table.is_some(),
                ..Default::default()
            };
            let result = exhaustive_search(&cfg, &opts).map_err(|e| match e {
                SearchError::TooManyTypes { .. }
                | SearchError::TooManySchedules { .. }
                | SearchError::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
                SearchError::Bakery(inner) => Failure::Invalid(inner.into()),
                SearchError::InfeasibleShop { .. } => Failure::Infeasible(e.to_string()),
            })?;
            if let (Some(path), Some(rows)) = (&table, &result.table) {
                let mut text = String::from("schedule,makespan_minutes\n");
                for (schedule, makespan) in rows {
                    let _ = writeln!(
                        text,
                        "{},{}",
                        schedule.to_string().replace(',', "-"),
                        makespan
                    );
                }
                fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
                println!("table with {} rows written to {}", rows.len(), path.display());
            }
            match &result.best {
                None => Err(Failure::Infeasible("no schedule admits a consistent trajectory".into())),
                Some((_, makespan)) if result.evaluated == 0 => {
                    println!("degenerate: empty demand, makespan {makespan}");
                    Ok(())
                }
                Some((schedule, makespan)) => {
                    println!("best schedule: {schedule}");
                    println!(
                        "makespan: {}",
                        minutes(makespan.as_finite().unwrap_or(f64::NAN))
                    );
                    println!(
                        "evaluated {} schedules with {} in {:.3} s (cache build {:.3} s)",
                        result.evaluated,
                        result.method,
                        result.enumeration.as_secs_f64(),
                        result.cache_build.as_secs_f64()
                    );
                    Ok(())
                }
            }
        }
        Command::Gantt { config, demand, schedule, out, format } => {
            if format != "json" && format != "svg" {
                return Err(Failure::Invalid(anyhow!("unknown format {format:?} (json|svg)")));
            }
            let cfg = load_config(&config, demand.as_deref())?;
            if cfg.total_quantity() == 0 {
                let idx = index_products(&cfg, &Schedule(Vec::new()));
                let chart = build_chart(&cfg, &idx, &[]);
                let body = if format == "svg" { chart.to_svg() } else { chart.to_json() };
                fs::write(&out, body).with_context(|| format!("cannot write {}", out.display()))?;
                println!("degenerate: empty demand, makespan 0; empty chart written to {}", out.display());
                return Ok(());
            }
            let schedule = parse_schedule(&cfg, &schedule)?;
            let result = bakery_makespan(&cfg, &schedule, Method::Dense, true)
                .map_err(|e| Failure::Invalid(e.into()))?;
            if !result.feasible {
                return Err(Failure::Infeasible(
                    result.witness.map(|w| w.to_string()).unwrap_or_default(),
                ));
            }
            let xs = result.trajectory.as_ref().ok_or_else(|| {
                Failure::Internal("feasible shop yielded no trajectory".into())
            })?;
            let instance = build_instance(&cfg, &schedule).map_err(|e| Failure::Invalid(e.into()))?;
            let violations = check_trajectory(&instance, xs, DEFAULT_TOLERANCE)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            if !violations.is_empty() {
                return Err(Failure::Internal(format!(
                    "trajectory fails its own windows: {}",
                    violations[0]
                )));
            }
            let idx = index_products(&cfg, &schedule);
            let chart = build_chart(&cfg, &idx, xs);
            let body = if format == "svg" { chart.to_svg() } else { chart.to_json() };
            fs::write(&out, body).with_context(|| format!("cannot write {}", out.display()))?;
            println!(
                "chart with {} records written to {} (makespan {})",
                chart.records.len(),
                out.display(),
                minutes(chart.makespan)
            );
            Ok(())
        }
        Command::Bench { config, demand, methods, repeats, schedule } => {
            let cfg = load_config(&config, demand.as_deref())?;
            if cfg.total_quantity() == 0 {
                return Err(Failure::Invalid(anyhow!("nothing to benchmark: empty demand")));
            }
            let mut method_list = Vec::new();
            for tok in methods.split(',') {
                method_list.push(parse_method(tok)?);
            }
            let schedule = match schedule {
                Some(text) => parse_schedule(&cfg, &text)?,
                None => Schedule::natural(&cfg),
            };
            bench(&cfg, &schedule, &method_list, repeats.max(1))
        }
        Command::Solve { instance, method, trajectory } => {
            let method = parse_method(&method)?;
            if method == Method::Fast {
                return Err(Failure::Invalid(anyhow!(
                    "the fast solver applies to shop documents; use dense, block or oracle here"
                )));
            }
            if trajectory.is_some() && method != Method::Dense {
                return Err(Failure::Invalid(anyhow!("--trajectory requires --method dense")));
            }
            let text = read(&instance)?;
            let inst = SldiInstance::from_json(&text)
                .map_err(|e| Failure::Invalid(anyhow!("invalid instance document: {e}")))?;
            let started = Instant::now();
            let result = match method {
                Method::Dense => dense_makespan(&inst, trajectory.is_some()),
                Method::Block => tropflow::block::block_makespan_of(&inst),
                Method::Oracle => oracle_makespan(&inst),
                Method::Fast => unreachable!(),
            };
            let elapsed = started.elapsed();
            if let (Some(path), Some(xs)) = (&trajectory, &result.trajectory) {
                fs::write(path, serde_json::to_string_pretty(xs).unwrap())
                    .with_context(|| format!("cannot write {}", path.display()))?;
                println!("trajectory written to {}", path.display());
            }
            report_result(&result, elapsed)
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Time each solver on one schedule. Values are compared exactly before
/// any timing; a mismatch aborts, because timings of disagreeing solvers
/// mean nothing.
fn bench(
    cfg: &BakeryConfig,
    schedule: &Schedule,
    methods: &[Method],
    repeats: usize,
) -> Result<(), Failure> {
    let solve = |method: Method| -> Result<MakespanResult, Failure> {
        bakery_makespan(cfg, schedule, method, false).map_err(|e| Failure::Invalid(e.into()))
    };
    let mut results = Vec::new();
    for &method in methods {
        results.push((method, solve(method)?));
    }
    let (first_method, first) = &results[0];
    for (method, result) in &results[1..] {
        if result.feasible != first.feasible || result.makespan != first.makespan {
            let mut diff = format!(
                "solver disagreement on schedule {schedule}:\n  {first_method}: feasible={} makespan={}\n",
                first.feasible, first.makespan
            );
            let _ = writeln!(
                diff,
                "  {method}: feasible={} makespan={}",
                result.feasible, result.makespan
            );
            return Err(Failure::Internal(diff));
        }
    }
    println!(
        "schedule {schedule}: all {} methods agree (feasible={}, makespan={})",
        methods.len(),
        first.feasible,
        first.makespan
    );

    let j_count = cfg.active_types().len();
    let search_space = factorial(j_count);
    println!(
        "{:<8} {:>14} {:>14} {:>20}",
        "method", "mean/solve", "median/solve", "full search (est.)"
    );
    let mut per_method: Vec<(Method, f64)> = Vec::new();
    for &method in methods {
        // The fast path caches per-type factors; build the cache once
        // outside the timed region, like a real search would.
        let cache = if method == Method::Fast {
            Some(build_cache(cfg).map_err(|e| Failure::Infeasible(e.to_string()))?)
        } else {
            None
        };
        let mut times = Vec::with_capacity(repeats);
        for _ in 0..repeats {
            let started = Instant::now();
            let result = match &cache {
                Some(cache) => fast_makespan(cache, schedule),
                None => solve(method)?,
            };
            std::hint::black_box(result.makespan);
            times.push(started.elapsed().as_secs_f64());
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        let median = times[times.len() / 2];
        println!(
            "{:<8} {:>11.3} ms {:>11.3} ms {:>18.1} s",
            method.to_string(),
            mean * 1e3,
            median * 1e3,
            median * search_space
        );
        per_method.push((method, median));
    }
    let find = |m: Method| per_method.iter().find(|(x, _)| *x == m).map(|(_, t)| *t);
    if let (Some(fast), Some(block)) = (find(Method::Fast), find(Method::Block)) {
        if fast > 0.0 {
            println!("speedup fast vs block: {:.1}x per schedule", block / fast);
        }
    }
    Ok(())
}
