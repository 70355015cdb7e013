use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use piphase_core::experiment::{
    default_out_dir, default_scenarios, load_config, run_oracle_export, run_scenario, run_sweep, run_validation,
    write_outputs, ConfigFile, InitialState, Overrides, RateAxis, ScenarioConfig, ScenarioKind, SweepGrid,
    ValidationOptions,
};
use piphase_core::oracle::HistoryMode;
use piphase_core::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;

/// Fidelity of odd-parity two-qubit states under free decay, Zeno filtering
/// and pi-phase dynamical decoupling.
#[derive(Parser, Debug)]
#[command(name = "piphase", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zeno vs instantaneous decoupling.
    Fig1(FigureArgs),
    /// Free decay, Zeno and instantaneous decoupling, with the ordering check.
    Fig2(FigureArgs),
    /// Finite pulses against instantaneous pulses and free decay.
    Fig3(FigureArgs),
    /// Any scenario from a config file, or the defaults.
    Custom(CustomArgs),
    /// Oracle-vs-closed-form suite; exits 2 on any failed check.
    Validate(ValidateArgs),
    /// Terminal fidelities over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Config file with `[[scenario]]` tables.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Only run the scenario with this name.
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    /// Pulse interval; the Zeno interval follows it.
    #[arg(long)]
    tau: Option<f64>,
    /// Finite-pulse duty parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    n_duty: Option<Vec<u32>>,
    #[arg(long)]
    t_max: Option<f64>,
    /// Output directory (default: $PIPHASE_OUT_DIR, else ./out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Oracle step.
    #[arg(long)]
    dt_num: Option<f64>,
    /// exact-augmented or direct-quadrature.
    #[arg(long)]
    oracle_mode: Option<HistoryMode>,
    #[arg(long)]
    samples: Option<u32>,
    #[arg(long)]
    run_id: Option<String>,
    /// dark, superradiant or mixed(b1, b2).
    #[arg(long)]
    initial_state: Option<InitialState>,
}

#[derive(Args, Debug)]
struct FigureArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CustomArgs {
    #[command(flatten)]
    common: Common,
    /// Also integrate the kernel equations and write the oracle curves.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[command(flatten)]
    common: Common,
    /// Replace the oracle-match tolerances (negative control).
    #[arg(long)]
    oracle_tol: Option<f64>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Config file with a `[sweep]` table.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', conflicts_with = "r")]
    omega: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    tau: Option<Vec<f64>>,
    /// Zeno intervals (default: equal to tau).
    #[arg(long, value_delimiter = ',')]
    delta_t: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    n_duty: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    t_max: Option<Vec<f64>>,
    #[arg(long)]
    max_cells: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NumericalDegeneracy { .. } => EXIT_DEGENERATE,
        _ => EXIT_USAGE,
    }
}

fn overrides(c: &Common) -> Overrides {
    Overrides {
        lambda: c.lambda,
        omega: c.omega,
        tau: c.tau,
        n_duty: c.n_duty.clone(),
        t_max: c.t_max,
        samples_per_unit_time: c.samples,
        dt_num: c.dt_num,
        oracle_mode: c.oracle_mode,
        oracle_tol: None,
        run_id: c.run_id.clone(),
        initial_state: c.initial_state,
    }
}

fn load(path: &Option<PathBuf>) -> Result<Option<ConfigFile>, Error> {
    path.as_deref().map(load_config).transpose()
}

/// Scenarios of `kind` (all kinds when `None`) from the config, or the
/// defaults when there is no config; flags applied last.
fn scenarios(c: &Common, kind: Option<ScenarioKind>, o: &Overrides) -> Result<Vec<ScenarioConfig>, Error> {
    let mut list = match load(&c.config)? {
        Some(file) => file
            .scenarios
            .into_iter()
            .filter(|s| kind.is_none_or(|k| s.kind == k))
            .collect(),
        None => match kind {
            Some(k) => vec![ScenarioConfig::defaults(k)],
            None => default_scenarios(),
        },
    };
    if let Some(name) = &c.scenario {
        list.retain(|s| &s.name == name);
        if list.is_empty() {
            return Err(Error::Config(format!("no scenario named `{name}`")));
        }
    }
    for s in &mut list {
        s.apply(o)?;
    }
    Ok(list)
}

fn out_dir(out: &Option<PathBuf>) -> PathBuf {
    out.clone().unwrap_or_else(default_out_dir)
}

fn figure(kind: ScenarioKind, c: &Common, oracle: bool) -> Result<u8, Error> {
    let list = scenarios(c, Some(kind), &overrides(c))?;
    if list.is_empty() {
        return Err(Error::Config(format!("config has no {kind} scenario")));
    }
    let dir = out_dir(&c.out);
    let mut code = 0;
    for cfg in &list {
        let run = run_scenario(cfg)?;
        let (csv, svg) = write_outputs(&run.trace, cfg, &dir)?;
        println!("wrote {}", csv.display());
        println!("wrote {}", svg.display());
        for check in &run.checks {
            println!("{check}");
        }
        if !run.passed() {
            code = EXIT_VALIDATION;
        }
        if oracle {
            for (schedule, trace) in run_oracle_export(cfg)? {
                let mut named = cfg.clone();
                let stem = format!("{}_oracle_{}", cfg.name, schedule.column_name());
                named.csv = format!("{stem}.csv");
                named.svg = format!("{stem}.svg");
                let (csv, svg) = write_outputs(&trace, &named, &dir)?;
                println!("wrote {}", csv.display());
                println!("wrote {}", svg.display());
            }
        }
    }
    Ok(code)
}

fn validate(args: &ValidateArgs) -> Result<u8, Error> {
    let list = scenarios(&args.common, None, &overrides(&args.common))?;
    let report = run_validation(
        &list,
        &ValidationOptions {
            oracle_tol: args.oracle_tol,
        },
    )?;
    println!("{report}");
    Ok(if report.passed() { 0 } else { EXIT_VALIDATION })
}

fn sweep(args: &SweepArgs) -> Result<u8, Error> {
    let mut grid = load(&args.config)?.and_then(|f| f.sweep).unwrap_or_default();
    let set = |axis: &mut Option<Vec<f64>>, v: &Option<Vec<f64>>| {
        if v.is_some() {
            axis.clone_from(v);
        }
    };
    set(&mut grid.lambda, &args.lambda);
    set(&mut grid.tau, &args.tau);
    set(&mut grid.delta_t, &args.delta_t);
    set(&mut grid.t_max, &args.t_max);
    if let Some(v) = &args.omega {
        grid.rate = Some(RateAxis::Omega(v.clone()));
    }
    if let Some(v) = &args.r {
        grid.rate = Some(RateAxis::R(v.clone()));
    }
    if args.n_duty.is_some() {
        grid.n_duty.clone_from(&args.n_duty);
    }
    if let Some(cap) = args.max_cells {
        grid.max_cells = cap;
    }
    write_sweep(&grid, &out_dir(&args.out))
}

fn write_sweep(grid: &SweepGrid, dir: &Path) -> Result<u8, Error> {
    let table = run_sweep(grid)?;
    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = dir.join("sweep.csv");
    std::fs::write(&path, table.to_csv()?).map_err(|e| io_err(&path, e))?;
    println!("wrote {} ({} rows)", path.display(), table.rows.len());
    Ok(0)
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Fig1(a) => figure(ScenarioKind::Fig1, &a.common, false),
        Command::Fig2(a) => figure(ScenarioKind::Fig2, &a.common, false),
        Command::Fig3(a) => figure(ScenarioKind::Fig3, &a.common, false),
        Command::Custom(a) => figure(ScenarioKind::Custom, &a.common, a.oracle),
        Command::Validate(a) => validate(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
