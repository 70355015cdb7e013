use num_complex::Complex64;

use super::{push_sample, OracleConfig, OracleTrace, Sample, StepPlan};
use crate::model::{ModelParams, PhysicalAmplitudes};

/// Implicit trapezoidal stepping of the Volterra system with the history
/// integral recomputed from scratch at every step.
///
/// The history of the bright combination `c = alpha1 r1 + alpha2 r2` enters
/// through `Z(t) = int_0^t e^{-lambda (t-k)} e^{i (Phi(t) - Phi(k))} c(k) dk`
/// and `r' = -W^2 alpha Z`. Each sub-interval `[t_j, t_{j+1}]` is integrated
/// with the one-sided phase limits from its own side, so sign jumps at
/// instantaneous pulses are never straddled.
pub(super) fn integrate(
    params: &ModelParams,
    plan: &StepPlan,
    initial: &PhysicalAmplitudes,
    cfg: &OracleConfig,
) -> OracleTrace {
    let n = plan.n_steps;
    let dt = plan.dt;
    let half = 0.5 * dt;
    let alpha = [params.alpha1(), params.alpha2()];
    let alpha_sq = params.alpha() * params.alpha();
    let w2 = params.w_coupling() * params.w_coupling();
    let initial_norm = initial.c10.norm_sqr() + initial.c01.norm_sqr();

    let decay: Vec<f64> = (0..=n + 1).map(|i| (-params.lambda() * dt * i as f64).exp()).collect();
    let unit = |angle: f64| Complex64::from_polar(1.0, angle);
    let phase_left: Vec<Complex64> = (0..=n).map(|k| unit(plan.phase(k, false))).collect();
    let phase_right: Vec<Complex64> = (0..=n).map(|k| unit(plan.phase(k, true))).collect();

    // c_j seen from the right of t_j and from the left of t_j, phase removed
    let mut from_right: Vec<Complex64> = Vec::with_capacity(n + 1);
    let mut from_left: Vec<Complex64> = Vec::with_capacity(n + 1);

    let mut r = [initial.c10, initial.c01];
    let bright = |r: &[Complex64; 2]| r[0] * alpha[0] + r[1] * alpha[1];
    let c0 = bright(&r);
    from_right.push(c0 * phase_right[0].conj());
    from_left.push(c0 * phase_left[0].conj());

    let mut trace = OracleTrace::with_capacity(n / cfg.record_every + 2);
    let zero = Complex64::new(0.0, 0.0);
    let mut sq_integral = 0.0;
    let mut prev_sq = 0.0;
    push_sample(
        &mut trace,
        params,
        initial_norm,
        Sample {
            t: 0.0,
            r,
            history: zero,
            history_sq_integral: 0.0,
            phase: plan.frame_angle(0),
            segment: plan.segment_at(0),
        },
    );

    // Sherman-Morrison factor for (I + s alpha alpha^T)
    let s = half * half * w2;
    let sm = s / (1.0 + s * alpha_sq);

    for k in 0..n {
        // history sums evaluated at t_k and t_{k+1} over sub-intervals j < k
        let mut at_k = zero;
        let mut at_next = zero;
        for j in 0..k {
            let lo = from_right[j];
            let hi = from_left[j + 1];
            at_k += lo * decay[k - j] + hi * decay[k - j - 1];
            at_next += lo * decay[k + 1 - j] + hi * decay[k - j];
        }
        let z_k = phase_right[k] * at_k * half;
        let known = phase_left[k + 1] * (at_next + from_right[k] * decay[1]) * half;

        let rate_k = [-z_k * (w2 * alpha[0]), -z_k * (w2 * alpha[1])];
        let rhs = [
            r[0] + (rate_k[0] - known * (w2 * alpha[0])) * half,
            r[1] + (rate_k[1] - known * (w2 * alpha[1])) * half,
        ];
        let proj = bright(&rhs) * sm;
        r = [rhs[0] - proj * alpha[0], rhs[1] - proj * alpha[1]];

        let c_next = bright(&r);
        from_right.push(c_next * phase_right[k + 1].conj());
        from_left.push(c_next * phase_left[k + 1].conj());

        let z_next = known + c_next * half;
        let cur_sq = z_next.norm_sqr();
        sq_integral += half * (prev_sq + cur_sq);
        prev_sq = cur_sq;

        if plan.record(k + 1, cfg.record_every) {
            push_sample(
                &mut trace,
                params,
                initial_norm,
                Sample {
                    t: (k + 1) as f64 * dt,
                    r,
                    history: z_next,
                    history_sq_integral: sq_integral,
                    phase: plan.frame_angle(k + 1),
                    segment: plan.segment_at(k + 1),
                },
            );
        }
    }
    trace
}
