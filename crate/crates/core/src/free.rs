//! Free decay: the dark amplitude is frozen and the superradiant amplitude
//! follows the survival amplitude `eta(t)`.

use crate::error::{Error, Result};
use crate::model::{DampingBranch, ModelParams, OddParityState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEvolutionResult {
    pub state_t: OddParityState,
    /// Weight carried by `|00>` plus one reservoir photon.
    pub leak_population: f64,
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

/// Survival amplitude of the superradiant state,
/// `eta(t) = e^{-lambda t/2} [cosh(Omega t/2) + (lambda/Omega) sinh(Omega t/2)]`.
///
/// The overdamped branch is evaluated as a sum of two decaying exponentials so
/// that large `lambda t` does not overflow.
pub fn eta(t: f64, params: &ModelParams) -> Result<f64> {
    check_time(t)?;
    let lambda = params.lambda();
    Ok(match params.branch() {
        DampingBranch::Overdamped { omega } => eta_overdamped(lambda, omega, t),
        DampingBranch::Critical => (-0.5 * lambda * t).exp() * (1.0 + 0.5 * lambda * t),
        DampingBranch::Underdamped { omega_abs } => {
            let x = 0.5 * omega_abs * t;
            (-0.5 * lambda * t).exp() * (x.cos() + lambda / omega_abs * x.sin())
        }
    })
}

pub(crate) fn eta_overdamped(lambda: f64, omega: f64, t: f64) -> f64 {
    let ratio = lambda / omega;
    0.5 * (1.0 + ratio) * (-0.5 * (lambda - omega) * t).exp()
        + 0.5 * (1.0 - ratio) * (-0.5 * (lambda + omega) * t).exp()
}

/// `d eta / dt = -2 R^2 e^{-lambda t/2} sinh(Omega t/2)/Omega`.
pub fn eta_rate(t: f64, params: &ModelParams) -> Result<f64> {
    check_time(t)?;
    Ok(-2.0 * params.r_sq() * (-0.5 * params.lambda() * t).exp() * params.sinh_half_over_omega(t))
}

pub fn free_evolve(state0: &OddParityState, t: f64, params: &ModelParams) -> Result<FreeEvolutionResult> {
    let amp = eta(t, params)?;
    let (_, w2) = state0.weights();
    Ok(FreeEvolutionResult {
        state_t: OddParityState {
            beta1: state0.beta1,
            beta2: state0.beta2 * amp,
        },
        leak_population: w2 * (1.0 - amp * amp),
    })
}

pub fn fidelity_free(state0: &OddParityState, t: f64, params: &ModelParams) -> Result<f64> {
    let amp = eta(t, params)?;
    let (w1, w2) = state0.weights();
    Ok((w1 + w2 * amp).abs())
}
