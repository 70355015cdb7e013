//! Browser bindings: fidelity curves, the decoupling recursion table and an
//! oracle cross-check, all at user-chosen parameters.

use piphase_core::oracle::{self, OracleConfig};
use piphase_core::{
    dd_coefficients, eta, recompose, zeno_amplitude, DdRecursion, DdSchedule, Error, FiniteDdRecursion,
    FinitePulseSchedule, ModelParams, OddParityState, ZenoSchedule,
};
use wasm_bindgen::prelude::*;

fn js(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn params(lambda: f64, omega: f64) -> Result<ModelParams, Error> {
    ModelParams::from_lambda_omega(lambda, omega)
}

/// Fidelity of the superradiant state on a uniform grid, one array per protocol.
#[wasm_bindgen]
pub struct Curves {
    times: Vec<f64>,
    free_decay: Vec<f64>,
    zeno: Vec<f64>,
    dd: Vec<f64>,
    finite: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn free_decay(&self) -> Vec<f64> {
        self.free_decay.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn zeno(&self) -> Vec<f64> {
        self.zeno.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn dd(&self) -> Vec<f64> {
        self.dd.clone()
    }

    /// Empty when `n_duty` was 0.
    #[wasm_bindgen(getter)]
    pub fn finite(&self) -> Vec<f64> {
        self.finite.clone()
    }
}

/// Free, Zeno (interval `tau`), instantaneous and, for `n_duty > 0`,
/// finite-pulse decoupling curves over `[0, t_max]`.
#[wasm_bindgen]
pub fn fidelity_curves(
    lambda: f64,
    omega: f64,
    tau: f64,
    n_duty: u32,
    t_max: f64,
    samples: usize,
) -> Result<Curves, JsValue> {
    curves(lambda, omega, tau, n_duty, t_max, samples).map_err(js)
}

fn curves(lambda: f64, omega: f64, tau: f64, n_duty: u32, t_max: f64, samples: usize) -> Result<Curves, Error> {
    if t_max.is_nan() || t_max <= 0.0 || samples < 2 {
        return Err(Error::Config("need t_max > 0 and at least two samples".into()));
    }
    let p = params(lambda, omega)?;
    let state = OddParityState::superradiant();
    let zeno = ZenoSchedule::new(tau)?;
    let dd = DdRecursion::new(p, DdSchedule::new(tau)?, t_max);
    let finite = match n_duty {
        0 => None,
        n => Some(FiniteDdRecursion::new(p, FinitePulseSchedule::new(tau, n)?, t_max)?),
    };
    let mut out = Curves {
        times: vec![],
        free_decay: vec![],
        zeno: vec![],
        dd: vec![],
        finite: vec![],
    };
    for k in 0..samples {
        let t = t_max * k as f64 / (samples - 1) as f64;
        out.times.push(t);
        out.free_decay.push(eta(t, &p)?.abs());
        out.zeno.push(zeno_amplitude(t, &zeno, &p)?.abs());
        out.dd.push(dd.fidelity(&state, t)?);
        if let Some(f) = &finite {
            out.finite.push(f.fidelity(&state, t)?.0);
        }
    }
    Ok(out)
}

/// Rows `m, A_m, B_m` of the instantaneous-pulse recursion, tab separated.
#[wasm_bindgen]
pub fn recursion_table(lambda: f64, omega: f64, tau: f64, rows: usize) -> Result<String, JsValue> {
    table(lambda, omega, tau, rows).map_err(js)
}

fn table(lambda: f64, omega: f64, tau: f64, rows: usize) -> Result<String, Error> {
    let p = params(lambda, omega)?;
    let sched = DdSchedule::new(tau)?;
    let mut s = String::from("m\tA_m\tB_m\n");
    for m in 0..rows {
        let c = dd_coefficients(m, &sched, &p);
        let b = c.b(&p).map_or(f64::NAN, |b| b.re);
        s.push_str(&format!("{m}\t{:.12}\t{:.12}\n", c.a.re, b));
    }
    Ok(s)
}

/// Largest gap between the closed-form decoupled amplitude and a direct
/// integration of the memory-kernel equations with step `dt`.
#[wasm_bindgen]
pub fn oracle_deviation(lambda: f64, omega: f64, tau: f64, t_max: f64, dt: f64) -> Result<f64, JsValue> {
    deviation(lambda, omega, tau, t_max, dt).map_err(js)
}

fn deviation(lambda: f64, omega: f64, tau: f64, t_max: f64, dt: f64) -> Result<f64, Error> {
    let p = params(lambda, omega)?;
    let sched = DdSchedule::new(tau)?;
    let rec = DdRecursion::new(p, sched, t_max);
    let initial = recompose(&OddParityState::superradiant(), &p);
    let trace = oracle::integrate_dd(&p, &sched, &initial, t_max, &OracleConfig::augmented(dt))?;
    let mut worst: f64 = 0.0;
    for (t, b) in trace.times.iter().zip(&trace.beta2) {
        worst = worst.max((b - rec.xi(*t)?).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_at_case1() {
        let c = curves(2.0, 1.0, 0.1, 10, 1.0, 101).unwrap();
        assert_eq!(c.times.len(), 101);
        assert_eq!(c.finite.len(), 101);
        assert!((c.free_decay[100] - 0.798_230_909_494_735).abs() < 1e-12);
        assert!((c.zeno[100] - 0.965_450_686_131_333_9).abs() < 1e-12);
        assert!(c.dd[100] > c.zeno[100]);
        assert!(curves(2.0, 1.0, 0.1, 0, 1.0, 11).unwrap().finite.is_empty());
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(curves(2.0, 1.0, 0.0, 0, 1.0, 11).is_err());
        assert!(curves(2.0, 1.0, 0.1, 0, 1.0, 1).is_err());
        assert!(table(2.0, 3.0, 0.1, 3).is_err());
    }

    #[test]
    fn recursion_starts_at_free_decay() {
        let t = table(2.0, 1.0, 0.1, 3).unwrap();
        let rows: Vec<&str> = t.lines().collect();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[1], "0\t1.000000000000\t2.000000000000");
    }

    #[test]
    fn oracle_tracks_recursion() {
        assert!(deviation(2.0, 1.0, 0.1, 1.0, 1e-3).unwrap() < 1e-6);
        assert!(deviation(2.0, 1.0, 0.1, 1.0, 0.5).is_err());
    }
}
