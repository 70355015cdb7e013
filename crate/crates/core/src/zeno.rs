//! Frequent-measurement protection: the reservoir is projected onto vacuum
//! every `delta_t`, so each interval restarts free decay from the bright state.
//!
//! Amplitudes are conditioned on never detecting a photon and are not
//! renormalized after each projection.

use crate::error::{Error, Result};
use crate::free::{check_time, eta};
use crate::model::{ModelParams, OddParityState};
use crate::util::split_period;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoSchedule {
    delta_t: f64,
}

impl ZenoSchedule {
    pub fn new(delta_t: f64) -> Result<Self> {
        if !(delta_t.is_finite() && delta_t > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "measurement interval must be > 0, got {delta_t}"
            )));
        }
        Ok(Self { delta_t })
    }

    pub fn delta_t(&self) -> f64 {
        self.delta_t
    }
}

/// `eta(delta_t)^n * eta(t - n delta_t)` with `n = floor(t / delta_t)`.
pub fn zeno_amplitude(t: f64, sched: &ZenoSchedule, params: &ModelParams) -> Result<f64> {
    check_time(t)?;
    let (n, rest) = split_period(t, sched.delta_t);
    let per_interval = eta(sched.delta_t, params)?;
    Ok(per_interval.powi(n as i32) * eta(rest, params)?)
}

pub fn zeno_fidelity(state0: &OddParityState, t: f64, sched: &ZenoSchedule, params: &ModelParams) -> Result<f64> {
    let amp = zeno_amplitude(t, sched, params)?;
    let (w1, w2) = state0.weights();
    Ok((w1 + w2 * amp).abs())
}
