//! Scenario files.
//!
//! A config file is TOML with one `[[scenario]]` table per run and an
//! optional `[sweep]` table:
//!
//! ```toml
//! [[scenario]]
//! name = "fig2"
//! kind = "fig2"
//! lambda = 2.0
//! omega = 1.0
//! schedules = ["free", "zeno(0.1)", "dd(0.1)"]
//! t_max = 1.0
//! samples_per_unit_time = 2000
//! initial_state = "superradiant"
//!
//! [sweep]
//! tau = [0.05, 0.1, 0.2]
//! ```
//!
//! Every key except `name` is optional and falls back to the defaults of the
//! scenario kind. The full key list is documented in the repository README.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sweep::{RateAxis, SweepGrid};
use crate::error::{Error, Result};
use crate::model::{ModelParams, OddParityState};
use crate::oracle::{HistoryMode, MethodOrder, OracleConfig};
use crate::schedule::PulseSchedule;
use crate::{DdSchedule, FinitePulseSchedule, ZenoSchedule};
use num_complex::Complex64;

pub const DEFAULT_SAMPLES_PER_UNIT_TIME: u32 = 2000;
pub const MIN_SAMPLES_PER_UNIT_TIME: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Fig1,
    Fig2,
    Fig3,
    Custom,
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::Fig1 => "fig1",
            ScenarioKind::Fig2 => "fig2",
            ScenarioKind::Fig3 => "fig3",
            ScenarioKind::Custom => "custom",
        })
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fig1" => Ok(ScenarioKind::Fig1),
            "fig2" => Ok(ScenarioKind::Fig2),
            "fig3" => Ok(ScenarioKind::Fig3),
            "custom" => Ok(ScenarioKind::Custom),
            other => Err(Error::Config(format!("unknown scenario kind `{other}`"))),
        }
    }
}

/// How the model parameters were given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamSpec {
    LambdaOmega {
        lambda: f64,
        omega: f64,
    },
    LambdaR {
        lambda: f64,
        r: f64,
    },
    Full {
        lambda: f64,
        w: f64,
        alpha1: f64,
        alpha2: f64,
    },
}

impl ParamSpec {
    pub fn build(&self) -> Result<ModelParams> {
        match *self {
            ParamSpec::LambdaOmega { lambda, omega } => ModelParams::from_lambda_omega(lambda, omega),
            ParamSpec::LambdaR { lambda, r } => ModelParams::from_lambda_r(lambda, r),
            ParamSpec::Full {
                lambda,
                w,
                alpha1,
                alpha2,
            } => ModelParams::new(lambda, w, alpha1, alpha2),
        }
    }

    pub fn lambda(&self) -> f64 {
        match *self {
            ParamSpec::LambdaOmega { lambda, .. }
            | ParamSpec::LambdaR { lambda, .. }
            | ParamSpec::Full { lambda, .. } => lambda,
        }
    }

    fn set_lambda(&mut self, value: f64) {
        match self {
            ParamSpec::LambdaOmega { lambda, .. }
            | ParamSpec::LambdaR { lambda, .. }
            | ParamSpec::Full { lambda, .. } => *lambda = value,
        }
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamSpec::LambdaOmega { lambda, omega } => write!(f, "lambda = {lambda}, omega = {omega}"),
            ParamSpec::LambdaR { lambda, r } => write!(f, "lambda = {lambda}, R = {r}"),
            ParamSpec::Full {
                lambda,
                w,
                alpha1,
                alpha2,
            } => {
                write!(f, "lambda = {lambda}, W = {w}, alpha1 = {alpha1}, alpha2 = {alpha2}")
            }
        }
    }
}

/// Initial odd-parity state, named or by real weights in the dark/bright basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Dark,
    Superradiant,
    Mixed(f64, f64),
}

impl InitialState {
    pub fn state(&self) -> Result<OddParityState> {
        match *self {
            InitialState::Dark => Ok(OddParityState::dark()),
            InitialState::Superradiant => Ok(OddParityState::superradiant()),
            InitialState::Mixed(b1, b2) => OddParityState::new(Complex64::new(b1, 0.0), Complex64::new(b2, 0.0)),
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialState::Dark => f.write_str("dark"),
            InitialState::Superradiant => f.write_str("superradiant"),
            InitialState::Mixed(a, b) => write!(f, "mixed({a}, {b})"),
        }
    }
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("unknown initial state `{s}`"));
        match s {
            "dark" => return Ok(InitialState::Dark),
            "superradiant" | "bright" => return Ok(InitialState::Superradiant),
            _ => {}
        }
        let inner = s
            .strip_prefix("mixed(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        Ok(InitialState::Mixed(a, b))
    }
}

/// One fully resolved run description.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub kind: ScenarioKind,
    pub params: ParamSpec,
    pub schedules: Vec<PulseSchedule>,
    pub t_max: f64,
    pub samples_per_unit_time: u32,
    pub initial_state: InitialState,
    /// Written into the CSV metadata; defaults to the scenario name.
    pub run_id: String,
    /// Output file names, relative to the output directory.
    pub csv: String,
    pub svg: String,
    pub oracle: OracleConfig,
    /// Replaces the oracle-match tolerances of the validation suite.
    pub oracle_tol: Option<f64>,
}

fn case1() -> ParamSpec {
    ParamSpec::LambdaOmega {
        lambda: 2.0,
        omega: 1.0,
    }
}

fn dd(tau: f64) -> PulseSchedule {
    PulseSchedule::Dd(DdSchedule::new(tau).expect("positive tau"))
}

fn zeno(dt: f64) -> PulseSchedule {
    PulseSchedule::Zeno(ZenoSchedule::new(dt).expect("positive interval"))
}

fn finite(tau: f64, n: u32) -> PulseSchedule {
    PulseSchedule::DdFinite(FinitePulseSchedule::new(tau, n).expect("valid finite schedule"))
}

impl ScenarioConfig {
    /// Defaults for a kind, named after it.
    pub fn defaults(kind: ScenarioKind) -> Self {
        let schedules = match kind {
            ScenarioKind::Fig1 => vec![zeno(0.1), dd(0.1)],
            ScenarioKind::Fig2 | ScenarioKind::Custom => vec![PulseSchedule::None, zeno(0.1), dd(0.1)],
            ScenarioKind::Fig3 => vec![PulseSchedule::None, dd(0.2), finite(0.2, 10), finite(0.2, 20)],
        };
        let name = kind.to_string();
        Self {
            csv: format!("{name}.csv"),
            svg: format!("{name}.svg"),
            run_id: name.clone(),
            name,
            kind,
            params: case1(),
            schedules,
            t_max: 1.0,
            samples_per_unit_time: DEFAULT_SAMPLES_PER_UNIT_TIME,
            initial_state: InitialState::Superradiant,
            oracle: OracleConfig::default(),
            oracle_tol: None,
        }
    }

    pub fn model(&self) -> Result<ModelParams> {
        self.params.build()
    }

    pub fn validate(&self) -> Result<()> {
        let cfg_err = |msg: String| Err(Error::Config(format!("scenario `{}`: {msg}", self.name)));
        if self.name.trim().is_empty() {
            return Err(Error::Config("scenario name must not be empty".into()));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return cfg_err(format!("t_max must be > 0, got {}", self.t_max));
        }
        if self.samples_per_unit_time < MIN_SAMPLES_PER_UNIT_TIME {
            return cfg_err(format!(
                "samples_per_unit_time must be >= {MIN_SAMPLES_PER_UNIT_TIME}, got {}",
                self.samples_per_unit_time
            ));
        }
        if !(self.oracle.dt_num.is_finite() && self.oracle.dt_num > 0.0) {
            return cfg_err(format!("dt_num must be > 0, got {}", self.oracle.dt_num));
        }
        if let Some(tol) = self.oracle_tol {
            if !(tol.is_finite() && tol > 0.0) {
                return cfg_err(format!("oracle_tol must be > 0, got {tol}"));
            }
        }
        if self.schedules.is_empty() {
            return cfg_err("no schedules".into());
        }
        let mut names: Vec<String> = self.schedules.iter().map(PulseSchedule::column_name).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return cfg_err(format!("two schedules share the column {}", w[0]));
        }
        self.model()?;
        self.initial_state.state()?;
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(l) = o.lambda {
            self.params.set_lambda(l);
        }
        if let Some(omega) = o.omega {
            self.params = ParamSpec::LambdaOmega {
                lambda: self.params.lambda(),
                omega,
            };
        }
        if let Some(tau) = o.tau {
            for s in &mut self.schedules {
                *s = match *s {
                    PulseSchedule::None => PulseSchedule::None,
                    PulseSchedule::Zeno(_) => PulseSchedule::Zeno(ZenoSchedule::new(tau)?),
                    PulseSchedule::Dd(_) => PulseSchedule::Dd(DdSchedule::new(tau)?),
                    PulseSchedule::DdFinite(f) => PulseSchedule::DdFinite(FinitePulseSchedule::new(tau, f.n_duty())?),
                };
            }
        }
        if let Some(ns) = &o.n_duty {
            let tau = self
                .schedules
                .iter()
                .find_map(|s| match s {
                    PulseSchedule::DdFinite(f) => Some(f.tau()),
                    PulseSchedule::Dd(d) => Some(d.tau()),
                    _ => None,
                })
                .ok_or_else(|| {
                    Error::Config(format!(
                        "scenario `{}` has no pulse schedule to apply --n-duty to",
                        self.name
                    ))
                })?;
            self.schedules.retain(|s| !matches!(s, PulseSchedule::DdFinite(_)));
            for &n in ns {
                self.schedules
                    .push(PulseSchedule::DdFinite(FinitePulseSchedule::new(tau, n)?));
            }
        }
        if let Some(t) = o.t_max {
            self.t_max = t;
        }
        if let Some(s) = o.samples_per_unit_time {
            self.samples_per_unit_time = s;
        }
        if let Some(dt) = o.dt_num {
            self.oracle.dt_num = dt;
        }
        if let Some(mode) = o.oracle_mode {
            self.oracle.history_mode = mode;
            if mode == HistoryMode::DirectQuadrature {
                self.oracle.method_order = MethodOrder::Second;
            }
        }
        if let Some(tol) = o.oracle_tol {
            self.oracle_tol = Some(tol);
        }
        if let Some(id) = &o.run_id {
            self.run_id = id.clone();
        }
        if let Some(state) = o.initial_state {
            self.initial_state = state;
        }
        self.validate()
    }
}

/// Command-line values that replace config keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub lambda: Option<f64>,
    pub omega: Option<f64>,
    /// Pulse interval of every schedule, and the Zeno interval with it.
    pub tau: Option<f64>,
    /// Replaces all finite-pulse schedules.
    pub n_duty: Option<Vec<u32>>,
    pub t_max: Option<f64>,
    pub samples_per_unit_time: Option<u32>,
    pub dt_num: Option<f64>,
    pub oracle_mode: Option<HistoryMode>,
    pub oracle_tol: Option<f64>,
    pub run_id: Option<String>,
    pub initial_state: Option<InitialState>,
}

/// Parsed contents of a config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub scenarios: Vec<ScenarioConfig>,
    pub sweep: Option<SweepGrid>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default, rename = "scenario", skip_serializing_if = "Vec::is_empty")]
    scenarios: Vec<RawScenario>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<RawSweep>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schedules: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    samples_per_unit_time: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial_state: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    run_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    csv: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    svg: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dt_num: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    oracle_mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    method_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    oracle_tol: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta_t: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_duty: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t_max: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_cells: Option<usize>,
}

impl RawScenario {
    fn resolve(self) -> Result<ScenarioConfig> {
        let kind = match &self.kind {
            Some(k) => k.parse()?,
            None => self.name.parse().map_err(|_| {
                Error::Config(format!(
                    "scenario `{}` needs a `kind` (fig1, fig2, fig3 or custom)",
                    self.name
                ))
            })?,
        };
        let mut cfg = ScenarioConfig::defaults(kind);
        let lambda = self.lambda.unwrap_or(cfg.params.lambda());
        cfg.params = match (self.omega, self.r, self.w, self.alpha1, self.alpha2) {
            (None, None, None, None, None) => {
                let mut p = cfg.params;
                p.set_lambda(lambda);
                p
            }
            (Some(omega), None, None, None, None) => ParamSpec::LambdaOmega { lambda, omega },
            (None, Some(r), None, None, None) => ParamSpec::LambdaR { lambda, r },
            (None, None, Some(w), Some(alpha1), Some(alpha2)) => ParamSpec::Full {
                lambda,
                w,
                alpha1,
                alpha2,
            },
            _ => {
                return Err(Error::Config(format!(
                    "scenario `{}`: give exactly one of `omega`, `r`, or `w` with `alpha1` and `alpha2`",
                    self.name
                )))
            }
        };
        if let Some(list) = self.schedules {
            cfg.schedules = list.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        }
        cfg.csv = self.csv.unwrap_or_else(|| format!("{}.csv", self.name));
        cfg.svg = self.svg.unwrap_or_else(|| format!("{}.svg", self.name));
        cfg.run_id = self.run_id.unwrap_or_else(|| self.name.clone());
        cfg.name = self.name;
        if let Some(t) = self.t_max {
            cfg.t_max = t;
        }
        if let Some(s) = self.samples_per_unit_time {
            cfg.samples_per_unit_time = s;
        }
        if let Some(s) = self.initial_state {
            cfg.initial_state = s.parse()?;
        }
        if let Some(dt) = self.dt_num {
            cfg.oracle.dt_num = dt;
        }
        if let Some(mode) = self.oracle_mode {
            cfg.oracle.history_mode = mode.parse()?;
            if cfg.oracle.history_mode == HistoryMode::DirectQuadrature {
                cfg.oracle.method_order = MethodOrder::Second;
            }
        }
        if let Some(order) = self.method_order {
            cfg.oracle.method_order = MethodOrder::from_order(order)?;
        }
        cfg.oracle_tol = self.oracle_tol;
        cfg.validate()?;
        Ok(cfg)
    }

    fn from_config(cfg: &ScenarioConfig) -> Self {
        let mut raw = RawScenario {
            name: cfg.name.clone(),
            kind: Some(cfg.kind.to_string()),
            lambda: Some(cfg.params.lambda()),
            schedules: Some(cfg.schedules.iter().map(|s| s.to_string()).collect()),
            t_max: Some(cfg.t_max),
            samples_per_unit_time: Some(cfg.samples_per_unit_time),
            initial_state: Some(cfg.initial_state.to_string()),
            run_id: Some(cfg.run_id.clone()),
            csv: Some(cfg.csv.clone()),
            svg: Some(cfg.svg.clone()),
            dt_num: Some(cfg.oracle.dt_num),
            oracle_mode: Some(cfg.oracle.history_mode.to_string()),
            method_order: Some(cfg.oracle.method_order.order()),
            oracle_tol: cfg.oracle_tol,
            ..RawScenario::default()
        };
        match cfg.params {
            ParamSpec::LambdaOmega { omega, .. } => raw.omega = Some(omega),
            ParamSpec::LambdaR { r, .. } => raw.r = Some(r),
            ParamSpec::Full { w, alpha1, alpha2, .. } => {
                raw.w = Some(w);
                raw.alpha1 = Some(alpha1);
                raw.alpha2 = Some(alpha2);
            }
        }
        raw
    }
}

impl RawSweep {
    fn resolve(self) -> Result<SweepGrid> {
        let rate = match (self.omega, self.r) {
            (Some(_), Some(_)) => return Err(Error::Config("sweep: give `omega` or `r`, not both".into())),
            (Some(v), None) => Some(RateAxis::Omega(v)),
            (None, Some(v)) => Some(RateAxis::R(v)),
            (None, None) => None,
        };
        let mut grid = SweepGrid {
            lambda: self.lambda,
            rate,
            tau: self.tau,
            delta_t: self.delta_t,
            n_duty: self.n_duty,
            t_max: self.t_max,
            ..SweepGrid::default()
        };
        if let Some(cap) = self.max_cells {
            grid.max_cells = cap;
        }
        Ok(grid)
    }

    fn from_grid(grid: &SweepGrid) -> Self {
        let (omega, r) = match &grid.rate {
            Some(RateAxis::Omega(v)) => (Some(v.clone()), None),
            Some(RateAxis::R(v)) => (None, Some(v.clone())),
            None => (None, None),
        };
        RawSweep {
            lambda: grid.lambda.clone(),
            omega,
            r,
            tau: grid.tau.clone(),
            delta_t: grid.delta_t.clone(),
            n_duty: grid.n_duty.clone(),
            t_max: grid.t_max.clone(),
            max_cells: Some(grid.max_cells),
        }
    }
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let raw: RawFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let scenarios: Vec<ScenarioConfig> = raw
        .scenarios
        .into_iter()
        .map(RawScenario::resolve)
        .collect::<Result<_>>()?;
    for (i, s) in scenarios.iter().enumerate() {
        if scenarios[..i].iter().any(|o| o.name == s.name) {
            return Err(Error::Config(format!("duplicate scenario name `{}`", s.name)));
        }
    }
    let sweep = raw.sweep.map(RawSweep::resolve).transpose()?;
    Ok(ConfigFile { scenarios, sweep })
}

/// Writes every key explicitly, so the result does not depend on defaults.
pub fn serialize_config(file: &ConfigFile) -> Result<String> {
    let raw = RawFile {
        scenarios: file.scenarios.iter().map(RawScenario::from_config).collect(),
        sweep: file.sweep.as_ref().map(RawSweep::from_grid),
    };
    toml::to_string(&raw).map_err(|e| Error::Config(e.to_string()))
}

pub fn load_config(path: &std::path::Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_sections_take_kind_defaults() {
        let file = parse_config(
            "[[scenario]]\nname = \"fig3\"\n\n[[scenario]]\nname = \"a\"\nkind = \"custom\"\nomega = 0.5\n",
        )
        .unwrap();
        assert_eq!(file.scenarios.len(), 2);
        assert_eq!(file.scenarios[0], ScenarioConfig::defaults(ScenarioKind::Fig3));
        let custom = &file.scenarios[1];
        assert_eq!(
            custom.params,
            ParamSpec::LambdaOmega {
                lambda: 2.0,
                omega: 0.5
            }
        );
        assert_eq!(custom.csv, "a.csv");
        assert_eq!(custom.run_id, "a");
        assert!(file.sweep.is_none());
    }

    #[test]
    fn integer_literals_are_accepted_for_floats() {
        let file = parse_config("[[scenario]]\nname = \"fig2\"\nlambda = 3\nomega = 1\nt_max = 2\n").unwrap();
        assert_eq!(
            file.scenarios[0].params,
            ParamSpec::LambdaOmega {
                lambda: 3.0,
                omega: 1.0
            }
        );
        assert_eq!(file.scenarios[0].t_max, 2.0);
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            "[[scenario]]\nname = \"fig2\"\nlamda = 2\n",
            "[[scenario]]\nname = \"x\"\n",
            "[[scenario]]\nname = \"fig2\"\nt_max = 0\n",
            "[[scenario]]\nname = \"fig2\"\nt_max = -1\n",
            "[[scenario]]\nname = \"fig2\"\nsamples_per_unit_time = 99\n",
            "[[scenario]]\nname = \"fig2\"\nschedules = [\"dd(0)\"]\n",
            "[[scenario]]\nname = \"fig2\"\nschedules = [\"zeno(-0.1)\"]\n",
            "[[scenario]]\nname = \"fig2\"\nschedules = [\"dd(0.1)\", \"dd(0.2)\"]\n",
            "[[scenario]]\nname = \"fig2\"\nomega = 1\nr = 0.5\n",
            "[[scenario]]\nname = \"fig2\"\nomega = 3\n",
            "[[scenario]]\nname = \"fig2\"\ninitial_state = \"mixed(1, 1)\"\n",
            "[[scenario]]\nname = \"fig2\"\n[[scenario]]\nname = \"fig2\"\n",
            "[sweep]\nomega = [1.0]\nr = [0.5]\n",
            "lambda = 2\n",
        ];
        for text in cases {
            assert!(
                matches!(
                    parse_config(text),
                    Err(Error::Config(_)) | Err(Error::ParameterDomain(_)) | Err(Error::NotNormalized(_))
                ),
                "{text}"
            );
        }
    }

    #[test]
    fn overrides() {
        let mut cfg = ScenarioConfig::defaults(ScenarioKind::Fig3);
        cfg.apply(&Overrides {
            tau: Some(0.1),
            n_duty: Some(vec![40]),
            omega: Some(0.5),
            run_id: Some("r".into()),
            ..Overrides::default()
        })
        .unwrap();
        let cols: Vec<String> = cfg.schedules.iter().map(|s| s.to_string()).collect();
        assert_eq!(cols, ["free", "dd(0.1)", "dd-finite(0.1, 40)"]);
        assert_eq!(
            cfg.params,
            ParamSpec::LambdaOmega {
                lambda: 2.0,
                omega: 0.5
            }
        );
        assert_eq!(cfg.run_id, "r");

        let mut fig2 = ScenarioConfig::defaults(ScenarioKind::Fig2);
        assert!(fig2
            .apply(&Overrides {
                t_max: Some(0.0),
                ..Overrides::default()
            })
            .is_err());
    }

    #[test]
    fn documented_example_parses() {
        let text = "[[scenario]]\nname = \"fig2\"\nkind = \"fig2\"\nlambda = 2.0\nomega = 1.0\n\
                    schedules = [\"free\", \"zeno(0.1)\", \"dd(0.1)\"]\nt_max = 1.0\n\
                    samples_per_unit_time = 2000\ninitial_state = \"superradiant\"\n\n[sweep]\ntau = [0.05, 0.1, 0.2]\n";
        let file = parse_config(text).unwrap();
        assert_eq!(file.scenarios[0], ScenarioConfig::defaults(ScenarioKind::Fig2));
        assert_eq!(file.sweep.unwrap().tau, Some(vec![0.05, 0.1, 0.2]));
    }

    fn positive() -> impl Strategy<Value = f64> {
        (1e-3f64..1e3).prop_map(|x| x)
    }

    fn schedule() -> impl Strategy<Value = PulseSchedule> {
        prop_oneof![
            Just(PulseSchedule::None),
            positive().prop_map(|d| PulseSchedule::Zeno(ZenoSchedule::new(d).unwrap())),
            positive().prop_map(|t| PulseSchedule::Dd(DdSchedule::new(t).unwrap())),
            (positive(), 2u32..500).prop_map(|(t, n)| PulseSchedule::DdFinite(FinitePulseSchedule::new(t, n).unwrap())),
        ]
    }

    fn params() -> impl Strategy<Value = ParamSpec> {
        prop_oneof![
            (0.1f64..10.0, 0.0f64..1.0).prop_map(|(lambda, f)| ParamSpec::LambdaOmega {
                lambda,
                omega: f * lambda * 0.99
            }),
            (0.1f64..10.0, 0.01f64..10.0).prop_map(|(lambda, r)| ParamSpec::LambdaR { lambda, r }),
            (0.1f64..10.0, 0.01f64..10.0, 0.01f64..1.0, 0.01f64..1.0).prop_map(|(lambda, w, alpha1, alpha2)| {
                ParamSpec::Full {
                    lambda,
                    w,
                    alpha1,
                    alpha2,
                }
            }),
        ]
    }

    fn initial() -> impl Strategy<Value = InitialState> {
        prop_oneof![
            Just(InitialState::Dark),
            Just(InitialState::Superradiant),
            (0.0f64..std::f64::consts::TAU).prop_map(|a| InitialState::Mixed(a.cos(), a.sin())),
        ]
    }

    prop_compose! {
        fn scenario()(
            name in "[a-z][a-z0-9_-]{0,12}",
            kind in prop_oneof![Just(ScenarioKind::Fig1), Just(ScenarioKind::Fig2), Just(ScenarioKind::Fig3), Just(ScenarioKind::Custom)],
            params in params(),
            schedules in proptest::collection::vec(schedule(), 1..5),
            t_max in positive(),
            spu in 100u32..100_000,
            init in initial(),
            run_id in "[a-zA-Z0-9 _.-]{0,16}",
            dt in 1e-6f64..1e-2,
            quadrature in any::<bool>(),
            tol in proptest::option::of(1e-12f64..1.0),
        ) -> ScenarioConfig {
            let mut seen = Vec::new();
            let schedules: Vec<PulseSchedule> = schedules
                .into_iter()
                .filter(|s| {
                    let c = s.column_name();
                    let fresh = !seen.contains(&c);
                    seen.push(c);
                    fresh
                })
                .collect();
            let oracle = if quadrature { OracleConfig::quadrature(dt) } else { OracleConfig::augmented(dt) };
            ScenarioConfig {
                csv: format!("{name}.csv"),
                svg: format!("{name}.svg"),
                name,
                kind,
                params,
                schedules,
                t_max,
                samples_per_unit_time: spu,
                initial_state: init,
                run_id,
                oracle,
                oracle_tol: tol,
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip(scenarios in proptest::collection::vec(scenario(), 0..4), tau in proptest::option::of(proptest::collection::vec(positive(), 0..4))) {
            let mut scenarios = scenarios;
            for (i, s) in scenarios.iter_mut().enumerate() {
                s.name = format!("{}{i}", s.name);
            }
            let file = ConfigFile {
                scenarios,
                sweep: tau.map(|tau| SweepGrid { tau: Some(tau), ..SweepGrid::default() }),
            };
            let text = serialize_config(&file).unwrap();
            let parsed = parse_config(&text).unwrap();
            prop_assert_eq!(&parsed, &file);
            prop_assert_eq!(serialize_config(&parsed).unwrap(), text);
        }
    }
}
