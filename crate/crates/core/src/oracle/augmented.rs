use num_complex::Complex64;

use super::{push_sample, MethodOrder, OracleConfig, OracleTrace, Sample, StepPlan};
use crate::model::{ModelParams, PhysicalAmplitudes};

/// `[r1, r2, z1, z2, int |Z|^2]`; the last slot is real.
type State = [Complex64; 5];

struct Rhs {
    w2: f64,
    a11: f64,
    a12: f64,
    a22: f64,
    inv_alpha_sq: f64,
    alpha1: f64,
    alpha2: f64,
}

impl Rhs {
    fn history(&self, y: &State) -> Complex64 {
        (y[2] * self.alpha1 + y[3] * self.alpha2) * self.inv_alpha_sq
    }

    fn eval(&self, y: &State, lambda_c: Complex64) -> State {
        let z = self.history(y);
        [
            -y[2] * self.w2,
            -y[3] * self.w2,
            y[0] * self.a11 + y[1] * self.a12 - lambda_c * y[2],
            y[0] * self.a12 + y[1] * self.a22 - lambda_c * y[3],
            Complex64::new(z.norm_sqr(), 0.0),
        ]
    }
}

fn axpy(y: &State, h: f64, k: &State) -> State {
    std::array::from_fn(|i| y[i] + k[i] * h)
}

fn step(rhs: &Rhs, y: &State, dt: f64, lambda_c: Complex64, order: MethodOrder) -> State {
    match order {
        MethodOrder::Fourth => {
            let k1 = rhs.eval(y, lambda_c);
            let k2 = rhs.eval(&axpy(y, 0.5 * dt, &k1), lambda_c);
            let k3 = rhs.eval(&axpy(y, 0.5 * dt, &k2), lambda_c);
            let k4 = rhs.eval(&axpy(y, dt, &k3), lambda_c);
            std::array::from_fn(|i| y[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0))
        }
        MethodOrder::Second => {
            let k1 = rhs.eval(y, lambda_c);
            let k2 = rhs.eval(&axpy(y, dt, &k1), lambda_c);
            std::array::from_fn(|i| y[i] + (k1[i] + k2[i]) * (0.5 * dt))
        }
    }
}

pub(super) fn integrate(
    params: &ModelParams,
    plan: &StepPlan,
    initial: &PhysicalAmplitudes,
    cfg: &OracleConfig,
) -> OracleTrace {
    let (a1, a2) = (params.alpha1(), params.alpha2());
    let rhs = Rhs {
        w2: params.w_coupling() * params.w_coupling(),
        a11: a1 * a1,
        a12: a1 * a2,
        a22: a2 * a2,
        inv_alpha_sq: 1.0 / (params.alpha() * params.alpha()),
        alpha1: a1,
        alpha2: a2,
    };
    let zero = Complex64::new(0.0, 0.0);
    let mut y: State = [initial.c10, initial.c01, zero, zero, zero];
    let initial_norm = initial.c10.norm_sqr() + initial.c01.norm_sqr();
    let free_rate = Complex64::new(params.lambda(), 0.0);
    let window_rate = Complex64::new(params.lambda(), -plan.phase_rate);

    let mut trace = OracleTrace::with_capacity(plan.n_steps / cfg.record_every + 2);
    let sample = |trace: &mut OracleTrace, k: usize, y: &State| {
        push_sample(
            trace,
            params,
            initial_norm,
            Sample {
                t: k as f64 * plan.dt,
                r: [y[0], y[1]],
                history: rhs.history(y),
                history_sq_integral: y[4].re,
                phase: plan.frame_angle(k),
                segment: plan.segment_at(k),
            },
        )
    };
    sample(&mut trace, 0, &y);
    for k in 0..plan.n_steps {
        let lambda_c = if plan.step_in_window(k) { window_rate } else { free_rate };
        y = step(&rhs, &y, plan.dt, lambda_c, cfg.method_order);
        if plan.pulse_at(k + 1) {
            y[2] = -y[2];
            y[3] = -y[3];
        }
        if plan.record(k + 1, cfg.record_every) {
            sample(&mut trace, k + 1, &y);
        }
    }
    trace
}
