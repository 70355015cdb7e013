use piphase_core::oracle::{self, OracleConfig};
use piphase_core::{
    dd_fidelity, eta, fidelity_free, finite_dd_fidelity, recompose, xi, zeno_amplitude, Complex64, DdSchedule,
    FinitePulseSchedule, ModelParams, OddParityState, Segment, ZenoSchedule,
};
use proptest::prelude::*;

fn case1() -> ModelParams {
    ModelParams::from_lambda_omega(2.0, 1.0).unwrap()
}

#[test]
fn case1_reference_values() {
    let p = case1();
    assert!((eta(1.0, &p).unwrap() - 0.798_230_909_494_735).abs() < 1e-13);
    let z = zeno_amplitude(1.0, &ZenoSchedule::new(0.1).unwrap(), &p).unwrap();
    assert!((z - 0.965_450_686_131_333_9).abs() < 1e-12);
    let x = xi(1.0, &DdSchedule::new(0.1).unwrap(), &p).unwrap();
    assert!((x - 0.997_149_326_634_005_8).abs() < 1e-12);
}

#[test]
fn protocols_rank_at_case1() {
    let p = case1();
    let s = OddParityState::superradiant();
    let free = fidelity_free(&s, 1.0, &p).unwrap();
    let zeno = zeno_amplitude(1.0, &ZenoSchedule::new(0.1).unwrap(), &p).unwrap();
    let dd = dd_fidelity(&s, 1.0, &DdSchedule::new(0.1).unwrap(), &p).unwrap();
    assert!(free < zeno && zeno < dd);
}

#[test]
fn finite_pulses_close_on_instantaneous_limit() {
    let p = case1();
    let s = OddParityState::superradiant();
    let inst = dd_fidelity(&s, 1.0, &DdSchedule::new(0.2).unwrap(), &p).unwrap();
    let mut last = f64::INFINITY;
    for n in [10, 100, 1000, 10_000] {
        let (f, seg) = finite_dd_fidelity(&s, 1.0, &FinitePulseSchedule::new(0.2, n).unwrap(), &p).unwrap();
        assert_eq!(seg, Segment::Free);
        let gap = (f - inst).abs();
        assert!(gap < last, "N = {n}: {gap}");
        last = gap;
    }
    assert!(last < 1e-3);
}

#[test]
fn oracle_agrees_with_recursion_through_public_api() {
    let p = case1();
    let initial = recompose(&OddParityState::superradiant(), &p);
    let sched = DdSchedule::new(0.1).unwrap();
    let trace = oracle::integrate_dd(&p, &sched, &initial, 1.0, &OracleConfig::augmented(1e-4)).unwrap();
    let worst = trace
        .times
        .iter()
        .zip(&trace.beta2)
        .map(|(t, b)| (b.re - xi(*t, &sched, &p).unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn underdamped_finite_pulses_are_unsupported() {
    let p = ModelParams::from_lambda_r(0.5, 1.0).unwrap();
    let err = finite_dd_fidelity(
        &OddParityState::superradiant(),
        0.5,
        &FinitePulseSchedule::new(0.2, 10).unwrap(),
        &p,
    );
    assert!(err.is_err());
}

fn overdamped() -> impl Strategy<Value = ModelParams> {
    (0.5f64..5.0, 0.05f64..0.95)
        .prop_map(|(lambda, frac)| ModelParams::from_lambda_omega(lambda, lambda * frac).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_amplitude_decays_monotonically(p in overdamped(), t in 0.0f64..3.0, dt in 1e-3f64..0.5) {
        let a = eta(t, &p).unwrap();
        let b = eta(t + dt, &p).unwrap();
        prop_assert!(b <= a + 1e-15);
        prop_assert!(b > 0.0 && a <= 1.0);
    }

    #[test]
    fn zeno_never_below_free(p in overdamped(), dt in 0.01f64..0.5, t in 0.0f64..3.0) {
        let z = zeno_amplitude(t, &ZenoSchedule::new(dt).unwrap(), &p).unwrap();
        prop_assert!(z >= eta(t, &p).unwrap() - 1e-12);
    }

    #[test]
    fn dark_weight_is_a_floor(p in overdamped(), w in 0.0f64..1.0, t in 0.0f64..2.0, tau in 0.05f64..0.5) {
        let s = OddParityState::new(Complex64::new(w.sqrt(), 0.0), Complex64::new((1.0 - w).sqrt(), 0.0)).unwrap();
        let f = dd_fidelity(&s, t, &DdSchedule::new(tau).unwrap(), &p).unwrap();
        prop_assert!(f >= w - 1e-12 && f <= 1.0 + 1e-12);
    }

    #[test]
    fn decoupled_amplitude_is_continuous_at_pulses(p in overdamped(), tau in 0.05f64..0.5, m in 1usize..8) {
        let sched = DdSchedule::new(tau).unwrap();
        let t = m as f64 * tau;
        let h = 1e-9;
        let left = xi(t - h, &sched, &p).unwrap();
        let right = xi(t + h, &sched, &p).unwrap();
        prop_assert!((left - right).abs() < 1e-7);
    }
}
