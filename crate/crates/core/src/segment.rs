//! Damped-oscillator segments `x'' + lambda x' + R^2 x = 0`.
//!
//! Within one segment the superradiant amplitude is
//! `e^{-lambda s/2} [A cosh(Omega s/2) + B sinh(Omega s/2)]`. Coefficients are
//! carried as `(A, Omega*B)` so that the same arithmetic covers the critical
//! and underdamped branches.

use num_complex::Complex64;

use crate::model::ModelParams;

/// Value and first derivative of a segment solution at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentState {
    pub value: Complex64,
    pub rate: Complex64,
}

/// `(A, Omega*B)` from the value and derivative at the segment start.
pub(crate) fn coeffs_from_initial(params: &ModelParams, start: SegmentState) -> (Complex64, Complex64) {
    let a = start.value;
    let b_scaled = start.rate * 2.0 + a * params.lambda();
    (a, b_scaled)
}

/// Evaluates a real-rate segment at offset `s` from its start.
pub(crate) fn eval(params: &ModelParams, a: Complex64, b_scaled: Complex64, s: f64) -> SegmentState {
    let lambda = params.lambda();
    let decay = (-0.5 * lambda * s).exp();
    let ch = params.cosh_half(s);
    let sh = params.sinh_half_over_omega(s);
    let core = a * ch + b_scaled * sh;
    let value = core * decay;
    let rate = (core * (-0.5 * lambda) + (a * (params.omega_sq() * sh) + b_scaled * ch) * 0.5) * decay;
    SegmentState { value, rate }
}

/// Propagates `(value, rate)` across a time `s` (may be negative) for a complex
/// damping rate, as happens inside a pulse window in the rotating frame.
pub(crate) fn propagate_complex(lambda_c: Complex64, r_sq: f64, start: SegmentState, s: f64) -> SegmentState {
    let omega_c = (lambda_c * lambda_c - 4.0 * r_sq).sqrt();
    let z = omega_c * (0.5 * s);
    let ch = z.cosh();
    // sinh(Omega s/2) / (Omega/2)
    let sh = sinhc(z) * s;
    let decay = (-lambda_c * (0.5 * s)).exp();
    let value = (start.value * ch + (start.rate + start.value * lambda_c * 0.5) * sh) * decay;
    let rate = (start.rate * ch - (start.rate * lambda_c * 0.5 + start.value * r_sq) * sh) * decay;
    SegmentState { value, rate }
}

/// `sinh(z)/z` with the removable singularity filled in.
fn sinhc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}
