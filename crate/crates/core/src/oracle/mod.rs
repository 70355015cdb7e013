//! Brute-force integration of the memory-kernel equations
//!
//! ```text
//! r_i'(t) = - int_0^t K(t, k) W^2 [alpha_i^2 r_i(k) + alpha_1 alpha_2 r_j(k)] dk
//! ```
//!
//! in the physical `{|10>, |01>}` basis, with no reference to the closed forms
//! in the rest of the crate. `K(t, k) = e^{-lambda (t - k)}` for free decay.
//! Instantaneous pulses flip the sign of every history segment before them,
//! `K -> (-1)^{n(t) - n(k)} K`. Finite pulses are integrated in the frame
//! that removes the accumulated pulse phase `Phi(t)`, where the kernel
//! becomes `K -> e^{i (Phi(t) - Phi(k))} K`.
//!
//! Two backends are provided:
//!
//! * [`HistoryMode::ExactAugmented`] carries the history integrals
//!   `z_i = int K [..] dk` as extra state, `z_i' = alpha_i^2 r_i + alpha_1 alpha_2 r_j - (lambda - i Phi') z_i`,
//!   negates them at instantaneous pulses and steps everything with a
//!   classical Runge-Kutta scheme.
//! * [`HistoryMode::DirectQuadrature`] re-evaluates the whole history by the
//!   trapezoidal rule at every step, `O(n^2)` overall.

mod augmented;
mod quadrature;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::decoupling::DdSchedule;
use crate::error::{Error, Result};
use crate::finite::{FinitePulseSchedule, Segment};
use crate::model::{ModelParams, PhysicalAmplitudes};

/// Default integration step.
pub const DEFAULT_DT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodOrder {
    Second,
    Fourth,
}

impl MethodOrder {
    pub fn from_order(order: u32) -> Result<Self> {
        match order {
            2 => Ok(MethodOrder::Second),
            4 => Ok(MethodOrder::Fourth),
            other => Err(Error::Config(format!("method order must be 2 or 4, got {other}"))),
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            MethodOrder::Second => 2,
            MethodOrder::Fourth => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistoryMode {
    ExactAugmented,
    DirectQuadrature,
}

impl fmt::Display for HistoryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HistoryMode::ExactAugmented => "exact-augmented",
            HistoryMode::DirectQuadrature => "direct-quadrature",
        })
    }
}

impl FromStr for HistoryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "exact-augmented" | "augmented" => Ok(HistoryMode::ExactAugmented),
            "direct-quadrature" | "quadrature" => Ok(HistoryMode::DirectQuadrature),
            other => Err(Error::Config(format!("unknown oracle mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub dt_num: f64,
    /// Runge-Kutta order of the augmented backend. The quadrature backend is
    /// always second order.
    pub method_order: MethodOrder,
    pub history_mode: HistoryMode,
    /// Keep every `record_every`-th step in the trace (the last step is always kept).
    pub record_every: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            dt_num: DEFAULT_DT,
            method_order: MethodOrder::Fourth,
            history_mode: HistoryMode::ExactAugmented,
            record_every: 1,
        }
    }
}

impl OracleConfig {
    pub fn augmented(dt_num: f64) -> Self {
        Self {
            dt_num,
            ..Self::default()
        }
    }

    pub fn quadrature(dt_num: f64) -> Self {
        Self {
            dt_num,
            method_order: MethodOrder::Second,
            history_mode: HistoryMode::DirectQuadrature,
            record_every: 1,
        }
    }
}

/// Sampled solution of one oracle run.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleTrace {
    pub times: Vec<f64>,
    /// Amplitudes on `|10>` and `|01>`, in the pulse frame for finite pulses.
    pub r1: Vec<Complex64>,
    pub r2: Vec<Complex64>,
    /// The same amplitudes on the dark and superradiant states.
    pub beta1: Vec<Complex64>,
    pub beta2: Vec<Complex64>,
    /// `e^{-i Phi(t)}`; multiplies `r1, r2` to give the lab-frame amplitudes.
    pub frame_phase: Vec<Complex64>,
    /// `|r(0)|^2 - (|r1|^2 + |r2|^2 + leaked population)`.
    pub norm_defect: Vec<f64>,
    pub segment: Vec<Segment>,
}

impl OracleTrace {
    fn with_capacity(n: usize) -> Self {
        Self {
            times: Vec::with_capacity(n),
            r1: Vec::with_capacity(n),
            r2: Vec::with_capacity(n),
            beta1: Vec::with_capacity(n),
            beta2: Vec::with_capacity(n),
            frame_phase: Vec::with_capacity(n),
            norm_defect: Vec::with_capacity(n),
            segment: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Samples outside pulse windows, as `(t, beta2)`.
    pub fn free_samples(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.times
            .iter()
            .zip(&self.beta2)
            .zip(&self.segment)
            .filter(|(_, seg)| **seg == Segment::Free)
            .map(|((t, b), _)| (*t, *b))
    }
}

/// Pulse protocol as seen by the integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Protocol {
    Free,
    Instant(DdSchedule),
    Finite(FinitePulseSchedule),
}

/// Integer step layout shared by both backends.
#[derive(Debug, Clone)]
pub(crate) struct StepPlan {
    pub dt: f64,
    pub n_steps: usize,
    /// Steps per pulse cycle (0 for free decay).
    pub cycle: usize,
    /// Steps per pulse window inside a cycle (0 unless finite pulses).
    pub window: usize,
    pub instant: bool,
    /// Level shift during windows.
    pub phase_rate: f64,
}

impl StepPlan {
    fn new(params: &ModelParams, protocol: Protocol, t_max: f64, cfg: &OracleConfig) -> Result<Self> {
        let dt = cfg.dt_num;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Config(format!("dt_num must be > 0, got {dt}")));
        }
        if dt * params.lambda() > 0.1 {
            return Err(Error::Config(format!(
                "dt_num = {dt} too large for lambda = {} (need dt_num * lambda <= 0.1)",
                params.lambda()
            )));
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::Config(format!("t_max must be > 0, got {t_max}")));
        }
        if cfg.record_every == 0 {
            return Err(Error::Config("record_every must be >= 1".into()));
        }
        let n_steps = steps_in(t_max, dt).unwrap_or_else(|| (t_max / dt).ceil() as usize);
        let mut plan = StepPlan {
            dt,
            n_steps,
            cycle: 0,
            window: 0,
            instant: false,
            phase_rate: 0.0,
        };
        match protocol {
            Protocol::Free => {}
            Protocol::Instant(s) => {
                plan.cycle = aligned_steps(s.tau(), dt, "tau")?;
                plan.instant = true;
            }
            Protocol::Finite(s) => {
                plan.cycle = aligned_steps(s.tau(), dt, "tau")?;
                plan.window = aligned_steps(s.window(), dt, "tau/N")?;
                if plan.window < 50 {
                    return Err(Error::Config(format!(
                        "dt_num = {dt} resolves a pulse window with only {} steps (need dt_num <= tau/(50 N))",
                        plan.window
                    )));
                }
                plan.phase_rate = s.phase_rate();
            }
        }
        if plan.cycle > 0 && plan.cycle < 50 {
            return Err(Error::Config(format!(
                "dt_num = {dt} resolves a pulse interval with only {} steps (need dt_num <= tau/50)",
                plan.cycle
            )));
        }
        Ok(plan)
    }

    /// Whether step `k -> k+1` lies inside a pulse window.
    pub fn step_in_window(&self, k: usize) -> bool {
        self.window > 0 && k % self.cycle >= self.cycle - self.window
    }

    /// Whether an instantaneous pulse fires at grid point `k`.
    pub fn pulse_at(&self, k: usize) -> bool {
        self.instant && k > 0 && k.is_multiple_of(self.cycle)
    }

    /// Accumulated pulse phase just before (`right = false`) or after grid point `k`.
    pub fn phase(&self, k: usize, right: bool) -> f64 {
        if self.instant {
            let mut pulses = k / self.cycle;
            if !right && self.pulse_at(k) {
                pulses -= 1;
            }
            std::f64::consts::PI * pulses as f64
        } else if self.window > 0 {
            let full = k / self.cycle;
            let into = (k % self.cycle).saturating_sub(self.cycle - self.window);
            self.phase_rate * self.dt * (full * self.window + into) as f64
        } else {
            0.0
        }
    }

    /// Angle of the recorded frame phase: the pulse phase for finite pulses,
    /// zero otherwise (instantaneous pulses act on `|00>` only).
    pub fn frame_angle(&self, k: usize) -> f64 {
        if self.instant {
            0.0
        } else {
            self.phase(k, true)
        }
    }

    pub fn segment_at(&self, k: usize) -> Segment {
        if self.window > 0 && k % self.cycle > self.cycle - self.window {
            Segment::InPulse
        } else {
            Segment::Free
        }
    }

    pub fn record(&self, k: usize, every: usize) -> bool {
        k.is_multiple_of(every) || k == self.n_steps
    }
}

fn steps_in(span: f64, dt: f64) -> Option<usize> {
    let ratio = span / dt;
    let n = ratio.round();
    ((ratio - n).abs() <= 1e-9 * n.max(1.0) && n >= 1.0).then_some(n as usize)
}

fn aligned_steps(span: f64, dt: f64, what: &str) -> Result<usize> {
    steps_in(span, dt).ok_or_else(|| Error::Config(format!("dt_num = {dt} does not divide {what} = {span}")))
}

fn run(
    params: &ModelParams,
    protocol: Protocol,
    initial: &PhysicalAmplitudes,
    t_max: f64,
    cfg: &OracleConfig,
) -> Result<OracleTrace> {
    let plan = StepPlan::new(params, protocol, t_max, cfg)?;
    Ok(match cfg.history_mode {
        HistoryMode::ExactAugmented => augmented::integrate(params, &plan, initial, cfg),
        HistoryMode::DirectQuadrature => quadrature::integrate(params, &plan, initial, cfg),
    })
}

/// Free decay, no pulses.
pub fn integrate_free(
    params: &ModelParams,
    initial: &PhysicalAmplitudes,
    t_max: f64,
    cfg: &OracleConfig,
) -> Result<OracleTrace> {
    run(params, Protocol::Free, initial, t_max, cfg)
}

/// Instantaneous double pi-phase pulses at every multiple of `tau`.
pub fn integrate_dd(
    params: &ModelParams,
    sched: &DdSchedule,
    initial: &PhysicalAmplitudes,
    t_max: f64,
    cfg: &OracleConfig,
) -> Result<OracleTrace> {
    run(params, Protocol::Instant(*sched), initial, t_max, cfg)
}

/// Pulses of duration `tau/N` closing every cycle.
pub fn integrate_finite(
    params: &ModelParams,
    sched: &FinitePulseSchedule,
    initial: &PhysicalAmplitudes,
    t_max: f64,
    cfg: &OracleConfig,
) -> Result<OracleTrace> {
    run(params, Protocol::Finite(*sched), initial, t_max, cfg)
}

/// Shared bookkeeping for pushing one sample.
pub(crate) struct Sample {
    pub t: f64,
    pub r: [Complex64; 2],
    pub history: Complex64,
    pub history_sq_integral: f64,
    pub phase: f64,
    pub segment: Segment,
}

pub(crate) fn push_sample(trace: &mut OracleTrace, params: &ModelParams, initial_norm: f64, s: Sample) {
    let (b1, b2) = params.to_dark_bright(s.r[0], s.r[1]);
    let w2 = params.w_coupling() * params.w_coupling();
    let leaked = w2 * (s.history.norm_sqr() + 2.0 * params.lambda() * s.history_sq_integral);
    trace.times.push(s.t);
    trace.r1.push(s.r[0]);
    trace.r2.push(s.r[1]);
    trace.beta1.push(b1);
    trace.beta2.push(b2);
    trace.frame_phase.push(Complex64::from_polar(1.0, -s.phase));
    trace
        .norm_defect
        .push(initial_norm - (s.r[0].norm_sqr() + s.r[1].norm_sqr() + leaked));
    trace.segment.push(s.segment);
}

#[cfg(test)]
mod tests;
