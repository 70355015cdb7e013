//! Oracle-vs-closed-form suite plus the invariants of every module.

use std::fmt;

use num_complex::Complex64;

use super::config::{ScenarioConfig, ScenarioKind};
use super::figures::CheckResult;
use crate::decoupling::{DdRecursion, DdSchedule};
use crate::error::{Error, Result};
use crate::finite::{FiniteDdRecursion, FinitePulseSchedule, Segment};
use crate::free::eta;
use crate::model::{
    apply_double_pi_pulse, decompose, recompose, DampingBranch, GroundSectorAmplitudes, ModelParams, OddParityState,
    PhysicalAmplitudes,
};
use crate::oracle::{self, HistoryMode, MethodOrder, OracleConfig, OracleTrace};
use crate::schedule::PulseSchedule;
use crate::zeno::{zeno_amplitude, ZenoSchedule};

pub const FREE_ORACLE_TOL: f64 = 1e-6;
pub const DD_ORACLE_TOL: f64 = 1e-6;
pub const FINITE_ORACLE_TOL: f64 = 1e-4;
pub const BACKEND_TOL: f64 = 5e-5;
pub const DARK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationOptions {
    /// Replaces the three oracle-match tolerances for every scenario.
    pub oracle_tol: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "{} checks, {} failed", self.checks.len(), self.failures())
    }
}

/// The two parameter sets used throughout: instantaneous pulses at `tau = 0.1`
/// and finite pulses at `tau = 0.2`.
pub fn default_scenarios() -> Vec<ScenarioConfig> {
    let mut case1 = ScenarioConfig::defaults(ScenarioKind::Fig2);
    case1.name = "case1".into();
    let mut case2 = ScenarioConfig::defaults(ScenarioKind::Fig3);
    case2.name = "case2".into();
    vec![case1, case2]
}

pub fn run_validation(scenarios: &[ScenarioConfig], opts: &ValidationOptions) -> Result<ValidationReport> {
    if scenarios.is_empty() {
        return Err(Error::Config("no scenarios to validate".into()));
    }
    let mut report = ValidationReport::default();
    for cfg in scenarios {
        Suite::new(cfg, opts, &mut report.checks).run();
    }
    Ok(report)
}

/// Largest step not above `dt` that puts a whole number (at least `min_steps`)
/// of steps in `unit` and keeps `dt * lambda <= 0.1`.
pub(crate) fn fit_dt(dt: f64, unit: f64, min_steps: usize, lambda: f64) -> f64 {
    let dt = dt.min(0.1 / lambda);
    let steps = ((unit / dt) * (1.0 - 1e-12)).ceil().max(min_steps as f64);
    unit / steps
}

fn max_abs(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |m, v| {
        if v.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(v.abs())
        }
    })
}

fn grid(t_max: f64, n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |k| t_max * k as f64 / n as f64)
}

/// Normalized states spread over the sphere, deterministic.
fn sample_states() -> Vec<PhysicalAmplitudes> {
    (0..32)
        .map(|k| {
            let a = 0.37 * k as f64 + 0.1;
            let b = 1.91 * k as f64;
            let c = 0.73 * k as f64 + 0.3;
            PhysicalAmplitudes {
                c10: Complex64::from_polar(a.cos(), b),
                c01: Complex64::from_polar(a.sin(), c),
            }
        })
        .collect()
}

struct Suite<'a> {
    cfg: &'a ScenarioConfig,
    out: &'a mut Vec<CheckResult>,
    oracle_tol: Option<f64>,
}

impl<'a> Suite<'a> {
    fn new(cfg: &'a ScenarioConfig, opts: &ValidationOptions, out: &'a mut Vec<CheckResult>) -> Self {
        Self {
            oracle_tol: opts.oracle_tol.or(cfg.oracle_tol),
            cfg,
            out,
        }
    }

    fn name(&self, check: &str) -> String {
        format!("{}/{check}", self.cfg.name)
    }

    fn push(&mut self, check: &str, result: Result<CheckResult>) {
        let name = self.name(check);
        self.out.push(match result {
            Ok(mut c) => {
                c.name = name;
                c
            }
            Err(e) => CheckResult::failed(name, &e),
        });
    }

    fn tol(&self, default: f64) -> f64 {
        self.oracle_tol.unwrap_or(default)
    }

    fn oracle_cfg(&self, dt: f64) -> OracleConfig {
        OracleConfig {
            dt_num: dt,
            ..self.cfg.oracle
        }
    }

    fn run(mut self) {
        let params = match self.cfg.model() {
            Ok(p) => p,
            Err(e) => {
                let name = self.name("params");
                self.out.push(CheckResult::failed(name, &e));
                return;
            }
        };
        self.model_checks(&params);
        self.free_checks(&params);
        self.zeno_checks(&params);
        self.oracle_checks(&params);
        let mut first_finite_tau = None;
        for s in self.cfg.schedules.clone() {
            match s {
                PulseSchedule::None => {}
                PulseSchedule::Zeno(z) => self.zeno_schedule_checks(&params, &z),
                PulseSchedule::Dd(d) => self.dd_checks(&params, &d),
                PulseSchedule::DdFinite(f) => {
                    first_finite_tau.get_or_insert(f.tau());
                    self.finite_checks(&params, &f);
                }
            }
        }
        if let Some(tau) = first_finite_tau {
            let r = convergence_in_n(&params, tau, self.cfg.t_max);
            self.push("finite/convergence_in_N", r);
        }
    }

    fn model_checks(&mut self, p: &ModelParams) {
        let norm_err = max_abs(sample_states().iter().map(|s| {
            let back = recompose(&decompose(s, p), p);
            let n0 = s.c10.norm_sqr() + s.c01.norm_sqr();
            let d = decompose(s, p);
            let n1 = d.beta1.norm_sqr() + d.beta2.norm_sqr();
            (n1 - n0)
                .abs()
                .max((back.c10 - s.c10).norm())
                .max((back.c01 - s.c01).norm())
        }));
        self.push(
            "model/basis_norm_preservation",
            Ok(CheckResult::at_most("", norm_err, 1e-14)),
        );

        let l = p.lambda();
        let identity = (p.omega_sq() + 4.0 * p.r_sq() - l * l).abs() / (l * l).max(1.0);
        self.push("model/omega_identity", Ok(CheckResult::at_most("", identity, 1e-12)));

        let inv = max_abs(sample_states().iter().map(|s| {
            let g = GroundSectorAmplitudes {
                c10: s.c10,
                c01: s.c01,
                c00: s.c10 * s.c01,
            };
            let twice = apply_double_pi_pulse(apply_double_pi_pulse(g));
            let once = apply_double_pi_pulse(g);
            let n = |a: &GroundSectorAmplitudes| a.c10.norm_sqr() + a.c01.norm_sqr() + a.c00.norm_sqr();
            (twice.c00 - g.c00)
                .norm()
                .max((twice.c10 - g.c10).norm())
                .max((n(&once) - n(&g)).abs())
        }));
        self.push("model/double_pi_involution", Ok(CheckResult::at_most("", inv, 0.0)));
    }

    fn free_checks(&mut self, p: &ModelParams) {
        let t_end = 5.0;
        let overdamped = !matches!(p.branch(), DampingBranch::Underdamped { .. });
        if overdamped {
            let r: Result<f64> = grid(t_end, 500)
                .map(|t| crate::free::eta_rate(t, p))
                .try_fold(f64::NEG_INFINITY, |m, v| Ok(m.max(v?)));
            self.push(
                "free/eta_strictly_decreasing",
                r.map(|v| CheckResult::at_most("", v, 0.0)),
            );
            let r: Result<f64> = grid(t_end, 500).try_fold(0.0f64, |m, t| {
                let v = eta(t, p)?;
                Ok(m.max((v - 1.0).max(0.0)).max(if v > 0.0 { 0.0 } else { 1.0 }))
            });
            self.push("free/eta_in_unit_interval", r.map(|v| CheckResult::at_most("", v, 0.0)));
        }

        let h = 1e-6;
        let r = (|| -> Result<f64> {
            Ok(((-3.0 * eta(0.0, p)? + 4.0 * eta(h, p)? - eta(2.0 * h, p)?) / (2.0 * h)).abs())
        })();
        self.push("free/flat_at_origin", r.map(|v| CheckResult::at_most("", v, 1e-8)));

        let l = p.lambda();
        let r = (|| -> Result<f64> {
            let crit = ModelParams::from_lambda_r(l, l / 2.0)?;
            let near = ModelParams::from_lambda_omega(l, 1e-6)?;
            let mut worst: f64 = 0.0;
            for t in grid(t_end, 500) {
                worst = worst.max((eta(t, &crit)? - eta(t, &near)?).abs());
            }
            Ok(worst)
        })();
        self.push("free/branch_continuity", r.map(|v| CheckResult::at_most("", v, 1e-6)));

        let r = ode_residual(|t| eta(t, p), p, grid(2.0, 100).map(|t| t.max(1e-3)));
        self.push("free/ode_residual", r.map(|v| CheckResult::at_most("", v, 1e-6)));
    }

    fn zeno_checks(&mut self, p: &ModelParams) {
        let r = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for dt in [1e-2, 1e-3, 1e-4] {
                let ratio = (1.0 - eta(dt, p)?) / (p.r_sq() * dt * dt / 2.0);
                worst = worst.max((ratio - 1.0).abs());
            }
            Ok(worst)
        })();
        self.push("zeno/quadratic_limit", r.map(|v| CheckResult::at_most("", v, 0.05)));
    }

    fn zeno_schedule_checks(&mut self, p: &ModelParams, z: &ZenoSchedule) {
        let dt = z.delta_t();
        let t_max = self.cfg.t_max;
        if !matches!(p.branch(), DampingBranch::Underdamped { .. }) {
            let r = (|| -> Result<f64> {
                let mut worst = f64::NEG_INFINITY;
                for k in 0..3 {
                    let coarse = ZenoSchedule::new(dt / 2f64.powi(k))?;
                    let fine = ZenoSchedule::new(dt / 2f64.powi(k + 1))?;
                    for t in grid(t_max, 200) {
                        worst = worst.max(zeno_amplitude(t, &coarse, p)? - zeno_amplitude(t, &fine, p)?);
                    }
                }
                Ok(worst)
            })();
            self.push("zeno/monotone_in_rate", r.map(|v| CheckResult::at_most("", v, 1e-15)));

            let r = (|| -> Result<f64> {
                let mut worst = f64::NEG_INFINITY;
                for t in grid(t_max, 400).filter(|&t| t > dt) {
                    worst = worst.max(eta(t, p)? - zeno_amplitude(t, z, p)?);
                }
                Ok(worst)
            })();
            self.push("zeno/dominates_free", r.map(|v| CheckResult::at_most("", v, 1e-15)));
        }
        let r = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for (a, b) in [(1, 1), (2, 3), (5, 5), (1, 9)] {
                let (ta, tb) = (a as f64 * dt, b as f64 * dt);
                let lhs = zeno_amplitude(ta + tb, z, p)?;
                worst = worst.max((lhs - zeno_amplitude(ta, z, p)? * zeno_amplitude(tb, z, p)?).abs());
            }
            Ok(worst)
        })();
        self.push("zeno/composition", r.map(|v| CheckResult::at_most("", v, 1e-12)));
    }

    fn dd_checks(&mut self, p: &ModelParams, d: &DdSchedule) {
        let tau = d.tau();
        let t_max = self.cfg.t_max;
        let rec = DdRecursion::new(*p, *d, t_max + tau);
        let n_pulses = ((t_max / tau) * (1.0 + 1e-12)).floor() as usize;
        let tag = |s: &str| format!("dd({tau})/{s}");

        let h = 1e-7;
        let r = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for m in 1..=n_pulses {
                let t = m as f64 * tau;
                let before = (rec.xi(t)? - rec.xi(t - 2.0 * h)?) / (2.0 * h);
                let after = (rec.xi(t + 2.0 * h)? - rec.xi(t)?) / (2.0 * h);
                worst = worst.max((before + after).abs() / before.abs().max(1e-4));
            }
            Ok(worst)
        })();
        self.push(&tag("derivative_flip"), r.map(|v| CheckResult::at_most("", v, 1e-5)));

        let cont = max_abs((1..=n_pulses).map(|m| {
            let left = rec.coeffs(m - 1).eval(p, tau).value;
            let right = rec.coeffs(m).eval(p, 0.0).value;
            (left - right).norm()
        }));
        self.push(&tag("continuity"), Ok(CheckResult::at_most("", cont, 1e-12)));

        let interior = (0..=n_pulses).flat_map(|m| (1..10).map(move |j| m as f64 * tau + tau * j as f64 / 10.0));
        let r = ode_residual(|t| rec.xi(t), p, interior.filter(|&t| t <= t_max));
        self.push(&tag("ode_residual"), r.map(|v| CheckResult::at_most("", v, 1e-5)));

        let r = (|| -> Result<f64> {
            let mut bad = 0.0;
            for m in 1..=n_pulses {
                let t = m as f64 * tau;
                let falling = rec.state_at(t - 1e-6)?.rate.re < 0.0;
                if falling && rec.xi(t + 1e-6)? <= rec.xi(t)? {
                    bad += 1.0;
                }
            }
            Ok(bad)
        })();
        self.push(&tag("post_pulse_rise"), r.map(|v| CheckResult::at_most("", v, 0.0)));

        let tol = self.tol(DD_ORACLE_TOL);
        let dt = fit_dt(self.cfg.oracle.dt_num, tau, 50, p.lambda());
        let cfg = self.oracle_cfg(dt);
        let bright = recompose(&OddParityState::superradiant(), p);
        let r = oracle::integrate_dd(p, d, &bright, t_max, &cfg).and_then(|trace| {
            let mut worst: f64 = 0.0;
            for (t, b) in trace.times.iter().zip(&trace.beta2) {
                worst = worst.max((b - rec.xi(*t)?).norm());
            }
            Ok(worst)
        });
        self.push(&tag("oracle_match"), r.map(|v| CheckResult::at_most("", v, tol)));

        let r = oracle::integrate_dd(p, d, &mixed_state(p), t_max, &cfg).map(|t| dark_drift(&t, p));
        self.push(
            &tag("dark_amplitude_constant"),
            r.map(|v| CheckResult::at_most("", v, DARK_TOL)),
        );

        let quad = OracleConfig::quadrature(dt);
        let aug = OracleConfig::augmented(dt);
        let r = oracle::integrate_dd(p, d, &mixed_state(p), t_max, &aug)
            .and_then(|a| Ok((a, oracle::integrate_dd(p, d, &mixed_state(p), t_max, &quad)?)))
            .map(|(a, q)| backend_gap(&a, &q));
        self.push(
            &tag("backend_agreement"),
            r.map(|v| CheckResult::at_most("", v, BACKEND_TOL)),
        );
    }

    fn finite_checks(&mut self, p: &ModelParams, f: &FinitePulseSchedule) {
        let t_max = self.cfg.t_max;
        let tag = |s: &str| format!("dd-finite({}, {})/{s}", f.tau(), f.n_duty());
        let rec = match FiniteDdRecursion::new(*p, *f, t_max) {
            Ok(r) => r,
            Err(e) => {
                self.push(&tag("recursion"), Err(e));
                return;
            }
        };

        let phase = max_abs(grid(t_max, 997).map(|t| rec.frame_phase(t).norm() - 1.0));
        self.push(&tag("unit_phase"), Ok(CheckResult::at_most("", phase, 1e-15)));

        let n_cycles = ((t_max / f.tau()) * (1.0 + 1e-12)).floor() as usize;
        let r = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            let eps = 1e-8;
            for m in 0..n_cycles {
                for edge in [m as f64 * f.tau() + f.free_len(), (m + 1) as f64 * f.tau()] {
                    let jump = (rec.xi(edge + eps)?.0.norm() - rec.xi(edge - eps)?.0.norm()).abs();
                    worst = worst.max(jump);
                }
            }
            Ok(worst)
        })();
        self.push(
            &tag("window_edge_continuity"),
            r.map(|v| CheckResult::at_most("", v, 1e-6)),
        );

        let r = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for m in 0..=n_cycles {
                for j in 1..10 {
                    let t = m as f64 * f.tau() + f.free_len() * j as f64 / 10.0;
                    if t > t_max {
                        continue;
                    }
                    let h = 1e-4;
                    let v = |t: f64| rec.xi(t).map(|x| x.0);
                    let (x0, x1, x2) = (v(t - h)?, v(t)?, v(t + h)?);
                    let res = (x2 - x1 * 2.0 + x0) / (h * h) + (x2 - x0) * (p.lambda() / (2.0 * h)) + x1 * p.r_sq();
                    worst = worst.max(res.norm());
                }
            }
            Ok(worst)
        })();
        self.push(
            &tag("free_segment_ode_residual"),
            r.map(|v| CheckResult::at_most("", v, 1e-5)),
        );

        let tol = self.tol(FINITE_ORACLE_TOL);
        let dt = fit_dt(self.cfg.oracle.dt_num, f.window(), 50, p.lambda());
        let cfg = self.oracle_cfg(dt);
        let bright = recompose(&OddParityState::superradiant(), p);
        let r = oracle::integrate_finite(p, f, &bright, t_max, &cfg).and_then(|trace| {
            let mut worst: f64 = 0.0;
            for (t, b) in trace.free_samples() {
                worst = worst.max((b - rec.xi(t)?.0).norm());
            }
            Ok(worst)
        });
        self.push(&tag("oracle_match"), r.map(|v| CheckResult::at_most("", v, tol)));

        let r = oracle::integrate_finite(p, f, &mixed_state(p), t_max, &cfg).map(|t| dark_drift(&t, p));
        self.push(
            &tag("dark_amplitude_constant"),
            r.map(|v| CheckResult::at_most("", v, DARK_TOL)),
        );
    }

    fn oracle_checks(&mut self, p: &ModelParams) {
        let t_max = self.cfg.t_max;
        let bright = recompose(&OddParityState::superradiant(), p);
        let tol = self.tol(FREE_ORACLE_TOL);
        let dt = self.cfg.oracle.dt_num.min(0.1 / p.lambda());
        for mode in [HistoryMode::ExactAugmented, HistoryMode::DirectQuadrature] {
            let cfg = match mode {
                HistoryMode::ExactAugmented => OracleConfig::augmented(dt),
                HistoryMode::DirectQuadrature => OracleConfig::quadrature(dt),
            };
            let r = oracle::integrate_free(p, &bright, t_max, &cfg).and_then(|t| eta_gap(&t, p));
            self.push(
                &format!("oracle/free_vs_eta[{mode}]"),
                r.map(|v| CheckResult::at_most("", v, tol)),
            );
        }

        for (order, bound) in [(MethodOrder::Fourth, 8.0), (MethodOrder::Second, 3.5)] {
            let r = (|| -> Result<f64> {
                let base = 0.1 / p.lambda();
                let horizon = 1.0f64.max(4.0 * base);
                let mut errs = Vec::new();
                for k in 0..3 {
                    let cfg = OracleConfig {
                        dt_num: base / 2f64.powi(k),
                        method_order: order,
                        history_mode: HistoryMode::ExactAugmented,
                        record_every: 1,
                    };
                    errs.push(eta_gap(&oracle::integrate_free(p, &bright, horizon, &cfg)?, p)?);
                }
                Ok((errs[0] / errs[1]).min(errs[1] / errs[2]))
            })();
            let name = format!("oracle/convergence_order_{}", order.order());
            self.push(&name, r.map(|v| CheckResult::at_least("", v, bound)));
        }

        let cfg = self.oracle_cfg(dt);
        let r = oracle::integrate_free(p, &mixed_state(p), t_max, &cfg);
        let (monotone, drift, defect) = match r {
            Ok(t) => {
                let norms: Vec<f64> =
                    t.r1.iter()
                        .zip(&t.r2)
                        .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
                        .collect();
                let rise = norms.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
                (
                    Ok(rise),
                    Ok(dark_drift(&t, p)),
                    Ok(max_abs(t.norm_defect.iter().copied())),
                )
            }
            Err(e) => (Err(e.clone()), Err(e.clone()), Err(e)),
        };
        self.push(
            "oracle/norm_non_increasing",
            monotone.map(|v| CheckResult::at_most("", v, 1e-14)),
        );
        self.push(
            "oracle/dark_amplitude_constant",
            drift.map(|v| CheckResult::at_most("", v, DARK_TOL)),
        );
        self.push(
            "oracle/excitation_conservation",
            defect.map(|v| CheckResult::at_most("", v, 1e-6)),
        );

        let aug = OracleConfig::augmented(dt);
        let quad = OracleConfig::quadrature(dt);
        let r = oracle::integrate_free(p, &mixed_state(p), t_max, &aug)
            .and_then(|a| Ok((a, oracle::integrate_free(p, &mixed_state(p), t_max, &quad)?)))
            .map(|(a, q)| backend_gap(&a, &q));
        self.push(
            "oracle/backend_agreement_free",
            r.map(|v| CheckResult::at_most("", v, BACKEND_TOL)),
        );
    }
}

fn mixed_state(p: &ModelParams) -> PhysicalAmplitudes {
    let s = OddParityState {
        beta1: Complex64::new(0.6, 0.0),
        beta2: Complex64::new(0.0, 0.8),
    };
    recompose(&s, p)
}

fn dark_drift(trace: &OracleTrace, p: &ModelParams) -> f64 {
    let b0 = decompose(&mixed_state(p), p).beta1;
    max_abs(trace.beta1.iter().map(|b| (b - b0).norm()))
}

fn eta_gap(trace: &OracleTrace, p: &ModelParams) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (t, b) in trace.times.iter().zip(&trace.beta2) {
        worst = worst.max((b - eta(*t, p)?).norm());
    }
    Ok(worst)
}

fn backend_gap(a: &OracleTrace, b: &OracleTrace) -> f64 {
    max_abs(
        a.r1.iter()
            .zip(&b.r1)
            .chain(a.r2.iter().zip(&b.r2))
            .map(|(x, y)| (x - y).norm()),
    )
}

/// Finite-difference residual of `x'' + lambda x' + R^2 x` at the given times.
fn ode_residual(f: impl Fn(f64) -> Result<f64>, p: &ModelParams, times: impl Iterator<Item = f64>) -> Result<f64> {
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    for t in times {
        let (x0, x1, x2) = (f(t - h)?, f(t)?, f(t + h)?);
        let res = (x2 - 2.0 * x1 + x0) / (h * h) + p.lambda() * (x2 - x0) / (2.0 * h) + p.r_sq() * x1;
        worst = worst.max(res.abs());
    }
    Ok(worst)
}

/// Distance to the instantaneous curve on free samples must shrink as N doubles.
fn convergence_in_n(p: &ModelParams, tau: f64, t_max: f64) -> Result<CheckResult> {
    let state = OddParityState::superradiant();
    let inst = DdRecursion::new(*p, DdSchedule::new(tau)?, t_max);
    let mut dists = Vec::new();
    for n in [10, 20, 40, 80] {
        let rec = FiniteDdRecursion::new(*p, FinitePulseSchedule::new(tau, n)?, t_max)?;
        let mut worst: f64 = 0.0;
        for t in grid(t_max, 1000) {
            let (f, seg) = rec.fidelity(&state, t)?;
            if seg == Segment::Free {
                worst = worst.max((f - inst.fidelity(&state, t)?).abs());
            }
        }
        dists.push(worst);
    }
    let growth = dists.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    Ok(CheckResult::at_most("", growth, 0.0))
}
