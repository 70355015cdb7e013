use std::fmt;
use std::path::{Path, PathBuf};

use super::config::{ScenarioConfig, ScenarioKind};
use super::svg::render_svg;
use super::trace::EvolutionTrace;
use crate::error::{Error, Result};
use crate::schedule::PulseSchedule;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "PIPHASE_OUT_DIR";

pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("out"))
}

/// One line of a report: a measured quantity against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Passes when `measured <= tolerance`; NaN never passes.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            pass: measured <= tolerance,
        }
    }

    /// Passes when `measured >= bound`.
    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance: bound,
            pass: measured >= bound,
        }
    }

    pub fn failed(name: impl Into<String>, err: &Error) -> Self {
        Self {
            name: format!("{} ({err})", name.into()),
            measured: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:.3e} {:.1e} {}",
            self.name,
            self.measured,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRun {
    pub trace: EvolutionTrace,
    pub checks: Vec<CheckResult>,
}

impl FigureRun {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn expect_kind(cfg: &ScenarioConfig, kind: ScenarioKind) -> Result<()> {
    if cfg.kind != kind {
        return Err(Error::Config(format!(
            "scenario `{}` is {}, expected {kind}",
            cfg.name, cfg.kind
        )));
    }
    Ok(())
}

fn require<'a>(trace: &'a EvolutionTrace, name: &str) -> Result<&'a [f64]> {
    trace
        .column(name)
        .ok_or_else(|| Error::Config(format!("scenario has no {name} curve")))
}

fn first_interval(cfg: &ScenarioConfig) -> f64 {
    cfg.schedules
        .iter()
        .filter_map(|s| match s {
            PulseSchedule::Zeno(z) => Some(z.delta_t()),
            PulseSchedule::Dd(d) => Some(d.tau()),
            _ => None,
        })
        .fold(0.0, f64::max)
}

/// Largest violation of `upper >= lower` over the selected samples; positive means broken.
fn worst_gap(lower: &[f64], upper: &[f64], keep: impl Fn(usize) -> bool) -> f64 {
    (0..lower.len())
        .filter(|&k| keep(k))
        .map(|k| lower[k] - upper[k])
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn run_fig1(cfg: &ScenarioConfig) -> Result<FigureRun> {
    expect_kind(cfg, ScenarioKind::Fig1)?;
    let trace = EvolutionTrace::compute(cfg)?;
    let zeno = require(&trace, "F_zeno")?;
    let dd = require(&trace, "F_dd")?;
    let last = trace.times.len() - 1;
    let checks = vec![CheckResult::at_least(
        "fig1 F_dd(t_max) - F_zeno(t_max)",
        dd[last] - zeno[last],
        0.0,
    )];
    Ok(FigureRun { trace, checks })
}

/// Pointwise `F_dd >= F_zeno >= F_free` after the first interval, with at
/// least `1e-6` separation beyond twice the interval.
pub fn run_fig2(cfg: &ScenarioConfig) -> Result<FigureRun> {
    expect_kind(cfg, ScenarioKind::Fig2)?;
    let trace = EvolutionTrace::compute(cfg)?;
    let free = require(&trace, "F_free")?;
    let zeno = require(&trace, "F_zeno")?;
    let dd = require(&trace, "F_dd")?;
    let t0 = first_interval(cfg);
    let times = &trace.times;
    let after = |k: usize| times[k] > t0 + 1e-12;
    let late = |k: usize| times[k] > 2.0 * t0 + 1e-12;
    let last = times.len() - 1;
    let min_dd = (0..times.len()).map(|k| dd[k]).fold(f64::INFINITY, f64::min);
    let checks = vec![
        CheckResult::at_most("fig2 ordering F_zeno <= F_dd", worst_gap(zeno, dd, after), 0.0),
        CheckResult::at_most("fig2 ordering F_free <= F_zeno", worst_gap(free, zeno, after), 0.0),
        CheckResult::at_most(
            "fig2 separation F_zeno + 1e-6 <= F_dd",
            worst_gap(zeno, dd, late) + 1e-6,
            0.0,
        ),
        CheckResult::at_most(
            "fig2 separation F_free + 1e-6 <= F_zeno",
            worst_gap(free, zeno, late) + 1e-6,
            0.0,
        ),
        CheckResult::at_least("fig2 min F_dd - F_zeno(t_max)", min_dd - zeno[last], 0.0),
    ];
    Ok(FigureRun { trace, checks })
}

/// Ordering `F_free <= F_ddN(small) <= F_ddN(large) <= F_dd` at `t_max`, and
/// every intermediate-N curve inside the envelope of its neighbours on free samples.
pub fn run_fig3(cfg: &ScenarioConfig) -> Result<FigureRun> {
    expect_kind(cfg, ScenarioKind::Fig3)?;
    let trace = EvolutionTrace::compute(cfg)?;
    let free = require(&trace, "F_free")?;
    let inst = require(&trace, "F_dd")?;
    let finite: Vec<(&str, &[f64])> = trace
        .columns
        .iter()
        .filter(|(n, _)| n.starts_with("F_ddN"))
        .map(|(n, v)| (n.as_str(), v.as_slice()))
        .collect();
    if finite.is_empty() {
        return Err(Error::Config("fig3 needs at least one finite-pulse schedule".into()));
    }
    let last = trace.times.len() - 1;
    if !trace.is_free_sample(last) {
        return Err(Error::Config("fig3: t_max must fall on a free segment".into()));
    }

    let mut chain: Vec<(&str, f64)> = vec![("F_free", free[last])];
    chain.extend(finite.iter().map(|(n, v)| (*n, v[last])));
    chain.push(("F_dd", inst[last]));
    let mut checks: Vec<CheckResult> = chain
        .windows(2)
        .map(|w| {
            CheckResult::at_most(
                format!("fig3 ordering {} <= {} at t_max", w[0].0, w[1].0),
                w[0].1 - w[1].1,
                0.0,
            )
        })
        .collect();

    let free_k = |k: usize| trace.is_free_sample(k);
    let mut outer: Vec<&[f64]> = finite.iter().map(|(_, v)| *v).collect();
    outer.push(inst);
    for i in 1..finite.len() {
        let (lo, mid, hi) = (outer[i - 1], outer[i], outer[i + 1]);
        let escape = (0..mid.len())
            .filter(|&k| free_k(k))
            .map(|k| {
                let (a, b) = (lo[k].min(hi[k]), lo[k].max(hi[k]));
                (a - mid[k]).max(mid[k] - b)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        checks.push(CheckResult::at_most(
            format!("fig3 envelope {} between neighbours", finite[i].0),
            escape,
            1e-12,
        ));
    }
    Ok(FigureRun { trace, checks })
}

pub fn run_custom(cfg: &ScenarioConfig) -> Result<FigureRun> {
    Ok(FigureRun {
        trace: EvolutionTrace::compute(cfg)?,
        checks: Vec::new(),
    })
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<FigureRun> {
    match cfg.kind {
        ScenarioKind::Fig1 => run_fig1(cfg),
        ScenarioKind::Fig2 => run_fig2(cfg),
        ScenarioKind::Fig3 => run_fig3(cfg),
        ScenarioKind::Custom => run_custom(cfg),
    }
}

/// Writes the CSV, then renders the SVG from that same text.
pub fn write_outputs(trace: &EvolutionTrace, cfg: &ScenarioConfig, out_dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let csv_path = out_dir.join(&cfg.csv);
    let svg_path = out_dir.join(&cfg.svg);
    let csv = trace.to_csv()?;
    std::fs::write(&csv_path, &csv).map_err(|e| Error::io(&csv_path, e))?;
    let svg = render_svg(&csv)?;
    std::fs::write(&svg_path, svg).map_err(|e| Error::io(&svg_path, e))?;
    Ok((csv_path, svg_path))
}
