use super::*;
use crate::decoupling::DdRecursion;
use crate::finite::FiniteDdRecursion;
use crate::free::eta;

fn case1() -> ModelParams {
    ModelParams::from_lambda_omega(2.0, 1.0).unwrap()
}

fn bright(p: &ModelParams) -> PhysicalAmplitudes {
    let (a, b) = p.superradiant_vector();
    PhysicalAmplitudes::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0)).unwrap()
}

fn dark(p: &ModelParams) -> PhysicalAmplitudes {
    let (a, b) = p.dark_vector();
    PhysicalAmplitudes::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0)).unwrap()
}

fn max_eta_error(trace: &OracleTrace, p: &ModelParams) -> f64 {
    trace
        .times
        .iter()
        .zip(&trace.beta2)
        .map(|(t, b)| (b - eta(*t, p).unwrap()).norm())
        .fold(0.0, f64::max)
}

#[test]
fn free_decay_matches_eta_both_backends() {
    let p = case1();
    for cfg in [OracleConfig::augmented(1e-4), OracleConfig::quadrature(1e-4)] {
        let trace = integrate_free(&p, &bright(&p), 1.0, &cfg).unwrap();
        assert_eq!(trace.len(), 10_001);
        let err = max_eta_error(&trace, &p);
        assert!(err < 1e-6, "{}: {err}", cfg.history_mode);
        let defect = trace.norm_defect.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        assert!(defect < 1e-6, "{}: norm defect {defect}", cfg.history_mode);
    }
}

#[test]
fn asymmetric_couplings() {
    let p = ModelParams::new(2.0, 0.6, 0.3, 0.9).unwrap();
    let trace = integrate_free(&p, &bright(&p), 1.0, &OracleConfig::augmented(1e-3)).unwrap();
    assert!(max_eta_error(&trace, &p) < 1e-9);
}

#[test]
fn dark_state_is_stationary() {
    let p = ModelParams::new(2.0, 0.8, 0.4, 0.7).unwrap();
    for cfg in [OracleConfig::augmented(1e-3), OracleConfig::quadrature(1e-3)] {
        let trace = integrate_free(&p, &dark(&p), 1.0, &cfg).unwrap();
        for (b1, b2) in trace.beta1.iter().zip(&trace.beta2) {
            assert!(b2.norm() < 1e-8);
            assert!((b1 - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        }
    }
}

#[test]
fn backends_agree() {
    let p = case1();
    let init = PhysicalAmplitudes::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
    let sched = DdSchedule::new(0.1).unwrap();
    let a = integrate_dd(&p, &sched, &init, 1.0, &OracleConfig::augmented(1e-4)).unwrap();
    let q = integrate_dd(&p, &sched, &init, 1.0, &OracleConfig::quadrature(1e-4)).unwrap();
    let worst =
        a.r1.iter()
            .zip(&q.r1)
            .chain(a.r2.iter().zip(&q.r2))
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
    assert!(worst < 5e-5, "{worst}");
}

#[test]
fn convergence_order() {
    let p = case1();
    for (order, min_ratio) in [(MethodOrder::Fourth, 8.0), (MethodOrder::Second, 3.5)] {
        let err = |dt: f64| {
            let cfg = OracleConfig {
                dt_num: dt,
                method_order: order,
                ..OracleConfig::default()
            };
            max_eta_error(&integrate_free(&p, &bright(&p), 1.0, &cfg).unwrap(), &p)
        };
        let (e1, e2, e3) = (err(0.05), err(0.025), err(0.0125));
        assert!(
            e1 / e2 >= min_ratio && e2 / e3 >= min_ratio,
            "{order:?}: {e1} {e2} {e3}"
        );
    }
}

#[test]
fn free_norm_is_non_increasing() {
    let p = case1();
    let init = PhysicalAmplitudes::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
    let trace = integrate_free(&p, &init, 3.0, &OracleConfig::augmented(1e-3)).unwrap();
    let norms: Vec<f64> = trace
        .r1
        .iter()
        .zip(&trace.r2)
        .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
        .collect();
    assert!(norms.windows(2).all(|w| w[1] <= w[0] + 1e-15));
}

#[test]
fn pulses_beyond_horizon_change_nothing() {
    let p = case1();
    let cfg = OracleConfig::augmented(1e-3);
    let free = integrate_free(&p, &bright(&p), 1.0, &cfg).unwrap();
    let dd = integrate_dd(&p, &DdSchedule::new(5.0).unwrap(), &bright(&p), 1.0, &cfg).unwrap();
    assert_eq!(free, dd);
}

#[test]
fn dd_matches_recursion() {
    let p = case1();
    let sched = DdSchedule::new(0.1).unwrap();
    let rec = DdRecursion::new(p, sched, 1.0);
    let trace = integrate_dd(&p, &sched, &bright(&p), 1.0, &OracleConfig::augmented(1e-4)).unwrap();
    let worst = trace
        .times
        .iter()
        .zip(&trace.beta2)
        .map(|(t, b)| (b - rec.xi(*t).unwrap()).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn slope_of_bright_amplitude_flips_at_pulses() {
    let p = case1();
    let sched = DdSchedule::new(0.1).unwrap();
    let dt = 1e-4;
    let trace = integrate_dd(&p, &sched, &bright(&p), 1.0, &OracleConfig::augmented(dt)).unwrap();
    let amp: Vec<f64> = trace.beta2.iter().map(|b| b.norm()).collect();
    for m in 1..10 {
        let k = m * 1000;
        let before = (amp[k] - amp[k - 1]) / dt;
        let after = (amp[k + 1] - amp[k]) / dt;
        assert!(before < 0.0 && after > 0.0, "m = {m}");
        assert!((before + after).abs() < 1e-3 * before.abs() + 1e-4);
    }
}

#[test]
fn finite_pulses_match_recursion() {
    let p = case1();
    for n in [10, 20] {
        let sched = FinitePulseSchedule::new(0.2, n).unwrap();
        let rec = FiniteDdRecursion::new(p, sched, 1.0).unwrap();
        let trace = integrate_finite(&p, &sched, &bright(&p), 1.0, &OracleConfig::augmented(1e-4)).unwrap();
        let worst = trace
            .free_samples()
            .map(|(t, b)| (b - rec.xi(t).unwrap().0).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-4, "N = {n}: {worst}");
        // in-window samples too, through the phase-carrying frame
        for (k, t) in trace.times.iter().enumerate().step_by(37) {
            let lab = trace.beta2[k] * trace.frame_phase[k];
            let closed = rec.xi(*t).unwrap().0 * rec.frame_phase(*t);
            assert!((lab - closed).norm() < 1e-4, "t = {t}");
        }
    }
}

#[test]
fn finite_quadrature_agrees_with_augmented() {
    let p = case1();
    let sched = FinitePulseSchedule::new(0.2, 10).unwrap();
    let a = integrate_finite(&p, &sched, &bright(&p), 0.6, &OracleConfig::augmented(1e-4)).unwrap();
    let q = integrate_finite(&p, &sched, &bright(&p), 0.6, &OracleConfig::quadrature(1e-4)).unwrap();
    let worst = a
        .beta2
        .iter()
        .zip(&q.beta2)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    assert!(worst < 5e-5, "{worst}");
}

#[test]
fn short_windows_approach_instantaneous_pulses() {
    let p = case1();
    let tau = 0.2;
    let n = 10_000;
    let dt = tau / (50.0 * n as f64);
    let cfg = OracleConfig {
        record_every: 5000,
        ..OracleConfig::augmented(dt)
    };
    let sched = FinitePulseSchedule::new(tau, n).unwrap();
    let trace = integrate_finite(&p, &sched, &bright(&p), 0.6, &cfg).unwrap();
    let dd = DdRecursion::new(p, DdSchedule::new(tau).unwrap(), 0.6);
    for (t, b) in trace.free_samples() {
        assert!((b.norm() - dd.xi(t).unwrap().abs()).abs() < 1e-3, "t = {t}");
    }
}

#[test]
fn dark_state_protected_under_pulses() {
    let p = ModelParams::new(2.0, 0.8, 0.4, 0.7).unwrap();
    let init = dark(&p);
    let cfg = OracleConfig::augmented(1e-4);
    let dd = integrate_dd(&p, &DdSchedule::new(0.1).unwrap(), &init, 1.0, &cfg).unwrap();
    let fin = integrate_finite(&p, &FinitePulseSchedule::new(0.2, 10).unwrap(), &init, 1.0, &cfg).unwrap();
    for trace in [dd, fin] {
        for b1 in &trace.beta1 {
            assert!((b1 - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        }
    }
}

#[test]
fn configuration_errors() {
    let p = case1();
    let init = bright(&p);
    let dd = DdSchedule::new(0.1).unwrap();
    assert!(matches!(
        integrate_free(&p, &init, 1.0, &OracleConfig::augmented(0.06)),
        Err(Error::Config(_))
    ));
    assert!(integrate_free(&p, &init, 1.0, &OracleConfig::augmented(-1e-3)).is_err());
    assert!(integrate_free(&p, &init, 0.0, &OracleConfig::augmented(1e-3)).is_err());
    // tau not a multiple of dt
    assert!(integrate_dd(&p, &dd, &init, 1.0, &OracleConfig::augmented(3e-4)).is_err());
    // fewer than 50 steps per interval
    assert!(integrate_dd(&p, &dd, &init, 1.0, &OracleConfig::augmented(0.01)).is_err());
    // window under-resolved
    let fin = FinitePulseSchedule::new(0.2, 10).unwrap();
    assert!(integrate_finite(&p, &fin, &init, 1.0, &OracleConfig::augmented(1e-3)).is_err());
    let cfg = OracleConfig {
        record_every: 0,
        ..OracleConfig::default()
    };
    assert!(integrate_free(&p, &init, 1.0, &cfg).is_err());
    assert!("bogus".parse::<HistoryMode>().is_err());
    assert!(MethodOrder::from_order(3).is_err());
}

#[test]
fn record_stride_keeps_last_sample() {
    let p = case1();
    let cfg = OracleConfig {
        record_every: 300,
        ..OracleConfig::augmented(1e-3)
    };
    let trace = integrate_free(&p, &bright(&p), 1.0, &cfg).unwrap();
    assert_eq!(trace.times.first(), Some(&0.0));
    assert!((trace.times.last().unwrap() - 1.0).abs() < 1e-12);
    assert!(trace.times.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(trace.len(), 5);
}
