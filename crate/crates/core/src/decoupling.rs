//! Instantaneous double pi-phase pulses every `tau`.
//!
//! Between pulses the bright amplitude is a damped-oscillator segment. A pulse
//! flips the sign of the reservoir history relative to the qubits, which keeps
//! the amplitude continuous and reverses its slope. Matching these two
//! conditions at `(m+1) tau` links the coefficients of consecutive segments:
//!
//! ```text
//! A_{m+1} = e^{-lambda tau/2} [A_m cosh(Omega tau/2) + B_m sinh(Omega tau/2)]
//! B_{m+1} = -e^{-lambda tau/2} [A_m sinh(Omega tau/2) + B_m cosh(Omega tau/2)]
//!           + (2 lambda / Omega) A_{m+1}
//! ```
//!
//! starting from `(A_0, B_0) = (1, lambda/Omega)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::free::check_time;
use crate::model::{DampingBranch, ModelParams, OddParityState};
use crate::segment::{self, SegmentState};
use crate::util::split_period;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdSchedule {
    tau: f64,
}

impl DdSchedule {
    pub fn new(tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::ParameterDomain(format!("pulse interval must be > 0, got {tau}")));
        }
        Ok(Self { tau })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// Coefficients of the `m`-th segment, stored as `(A_m, Omega * B_m)`.
///
/// The scaled form stays finite at critical damping, where `B_0 = lambda/Omega`
/// diverges but `B_m sinh(Omega s/2)` does not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionCoeffs {
    pub m: usize,
    pub a: Complex64,
    pub b_scaled: Complex64,
}

impl RecursionCoeffs {
    pub(crate) fn initial(params: &ModelParams) -> Self {
        Self {
            m: 0,
            a: Complex64::new(1.0, 0.0),
            b_scaled: Complex64::new(params.lambda(), 0.0),
        }
    }

    /// Unscaled `B_m`; `None` at critical damping.
    pub fn b(&self, params: &ModelParams) -> Option<Complex64> {
        match params.branch() {
            DampingBranch::Overdamped { omega } => Some(self.b_scaled / omega),
            DampingBranch::Critical => None,
            DampingBranch::Underdamped { omega_abs } => Some(self.b_scaled / Complex64::new(0.0, omega_abs)),
        }
    }

    /// State of this segment at offset `s` from its start. `s` may leave
    /// `[0, tau]`, which continues the segment analytically.
    pub fn eval(&self, params: &ModelParams, s: f64) -> SegmentState {
        segment::eval(params, self.a, self.b_scaled, s)
    }
}

fn next_coeffs(c: &RecursionCoeffs, tau: f64, params: &ModelParams) -> RecursionCoeffs {
    let end = c.eval(params, tau);
    // amplitude continuous, slope reversed
    let (a, b_scaled) = segment::coeffs_from_initial(
        params,
        SegmentState {
            value: end.value,
            rate: -end.rate,
        },
    );
    RecursionCoeffs {
        m: c.m + 1,
        a,
        b_scaled,
    }
}

/// `(A_m, Omega B_m)` by iterating the boundary recursion `m` times.
pub fn dd_coefficients(m: usize, sched: &DdSchedule, params: &ModelParams) -> RecursionCoeffs {
    let mut c = RecursionCoeffs::initial(params);
    for _ in 0..m {
        c = next_coeffs(&c, sched.tau, params);
    }
    c
}

/// Memoized coefficient table for one `(tau, params)` pair.
///
/// The table is filled at construction and only read afterwards, so it can be
/// shared between threads. Lookups beyond the table iterate from its last row.
#[derive(Debug, Clone)]
pub struct DdRecursion {
    params: ModelParams,
    sched: DdSchedule,
    table: Vec<RecursionCoeffs>,
}

impl DdRecursion {
    /// Precomputes every segment needed up to `t_max`.
    pub fn new(params: ModelParams, sched: DdSchedule, t_max: f64) -> Self {
        let m_max = (t_max.max(0.0) / sched.tau).ceil() as usize + 1;
        let mut table = Vec::with_capacity(m_max + 1);
        table.push(RecursionCoeffs::initial(&params));
        for _ in 0..m_max {
            let next = next_coeffs(table.last().unwrap(), sched.tau, &params);
            table.push(next);
        }
        Self { params, sched, table }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn schedule(&self) -> &DdSchedule {
        &self.sched
    }

    pub fn coeffs(&self, m: usize) -> RecursionCoeffs {
        if let Some(c) = self.table.get(m) {
            return *c;
        }
        let mut c = *self.table.last().unwrap();
        while c.m < m {
            c = next_coeffs(&c, self.sched.tau, &self.params);
        }
        c
    }

    /// `(m, s)` with `t = m tau + s`, `0 <= s < tau`.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        split_period(t, self.sched.tau)
    }

    /// Amplitude and right-sided slope at `t`.
    pub fn state_at(&self, t: f64) -> Result<SegmentState> {
        check_time(t)?;
        let (m, s) = self.locate(t);
        Ok(self.coeffs(m).eval(&self.params, s))
    }

    pub fn xi(&self, t: f64) -> Result<f64> {
        Ok(self.state_at(t)?.value.re)
    }

    pub fn fidelity(&self, state0: &OddParityState, t: f64) -> Result<f64> {
        let amp = self.xi(t)?;
        let (w1, w2) = state0.weights();
        Ok((w1 + w2 * amp).abs())
    }
}

/// Piecewise survival amplitude of the bright state under the pulse train.
pub fn xi(t: f64, sched: &DdSchedule, params: &ModelParams) -> Result<f64> {
    check_time(t)?;
    let (m, s) = split_period(t, sched.tau);
    Ok(dd_coefficients(m, sched, params).eval(params, s).value.re)
}

pub fn dd_fidelity(state0: &OddParityState, t: f64, sched: &DdSchedule, params: &ModelParams) -> Result<f64> {
    let amp = xi(t, sched, params)?;
    let (w1, w2) = state0.weights();
    Ok((w1 + w2 * amp).abs())
}
