//! Pi-phase pulses of finite duration `tau/N`.
//!
//! Each cycle of length `tau` is a free segment of length `(1 - 1/N) tau`
//! followed by a pulse window of length `tau/N` during which both qubits are
//! shifted by `N pi / tau`. Over one window this shift accumulates a phase of
//! exactly `pi` on the single-excitation sector, which is the pulse.
//!
//! Amplitudes are tracked in the frame that removes this accumulated phase.
//! In that frame the window is again a damped oscillator, with the reservoir
//! rate `lambda` replaced by `lambda - i N pi / tau`, and both the amplitude
//! and its slope are continuous at the window edges. Propagating the segment
//! solution backwards through one window gives the 2x2 system
//!
//! ```text
//! [ x(L) ]   [ M00 M01 ] [ A_{m+1} ]
//! [ x'(L)] = [ M10 M11 ] [ B_{m+1} ]
//! ```
//!
//! tying the end of free segment `m` (at `L = (1 - 1/N) tau`) to the next
//! segment's coefficients, which is solved once per cycle.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::decoupling::RecursionCoeffs;
use crate::error::{Error, Result};
use crate::free::check_time;
use crate::model::{ModelParams, OddParityState};
use crate::segment::{self, SegmentState};
use crate::util::{split_period, SNAP_TOL};

/// Determinant modulus below which the boundary system counts as singular.
pub const SINGULAR_DET: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinitePulseSchedule {
    tau: f64,
    n_duty: u32,
}

impl FinitePulseSchedule {
    pub fn new(tau: f64, n_duty: u32) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::ParameterDomain(format!("pulse interval must be > 0, got {tau}")));
        }
        if n_duty < 2 {
            return Err(Error::ParameterDomain(format!(
                "duty parameter N must be >= 2, got {n_duty}"
            )));
        }
        Ok(Self { tau, n_duty })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn n_duty(&self) -> u32 {
        self.n_duty
    }

    /// `gamma = N pi / (2 tau)`.
    pub fn gamma(&self) -> f64 {
        self.n_duty as f64 * PI / (2.0 * self.tau)
    }

    /// Level shift applied during a window, `N pi / tau = 2 gamma`.
    pub fn phase_rate(&self) -> f64 {
        self.n_duty as f64 * PI / self.tau
    }

    /// Pulse duration `tau / N`.
    pub fn window(&self) -> f64 {
        self.tau / self.n_duty as f64
    }

    /// Free-segment length `(1 - 1/N) tau`.
    pub fn free_len(&self) -> f64 {
        self.tau - self.window()
    }

    /// Whether `t` falls strictly inside a pulse window.
    pub fn in_window(&self, t: f64) -> bool {
        let (_, s) = split_period(t, self.tau);
        s > self.free_len() + SNAP_TOL * self.tau
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Segment {
    Free,
    InPulse,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Segment::Free => "free",
            Segment::InPulse => "in_pulse",
        })
    }
}

fn require_overdamped(params: &ModelParams) -> Result<f64> {
    params.omega().ok_or_else(|| {
        Error::Unsupported(format!(
            "finite-duration pulses need overdamped parameters (lambda^2 > 4 R^2), got {} branch",
            params.branch().name()
        ))
    })
}

fn window_rate(params: &ModelParams, sched: &FinitePulseSchedule) -> Complex64 {
    Complex64::new(params.lambda(), -sched.phase_rate())
}

/// Maps `(A, B)` of the following segment to `(value, slope)` at the end of
/// the preceding free segment. `window_r_sq` is the coupling used inside the
/// window (the full `R^2` for the shipped map).
pub(crate) fn boundary_matrix_with(
    lambda: f64,
    omega: f64,
    lambda_c: Complex64,
    window_r_sq: f64,
    window: f64,
) -> [[Complex64; 2]; 2] {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    // segment start (value, slope) for unit A and unit B
    let col_a = SegmentState {
        value: one,
        rate: Complex64::new(-0.5 * lambda, 0.0),
    };
    let col_b = SegmentState {
        value: zero,
        rate: Complex64::new(0.5 * omega, 0.0),
    };
    let a = segment::propagate_complex(lambda_c, window_r_sq, col_a, -window);
    let b = segment::propagate_complex(lambda_c, window_r_sq, col_b, -window);
    [[a.value, b.value], [a.rate, b.rate]]
}

/// Boundary matrix in `(value, slope)` rows; see the module docs.
pub fn boundary_matrix(params: &ModelParams, sched: &FinitePulseSchedule) -> Result<[[Complex64; 2]; 2]> {
    let omega = require_overdamped(params)?;
    Ok(boundary_matrix_with(
        params.lambda(),
        omega,
        window_rate(params, sched),
        params.r_sq(),
        sched.window(),
    ))
}

/// Large-`gamma` form of the boundary system in the published layout, where
/// the coupling is neglected inside the window. Rows are the end-of-segment
/// value and `(Omega/lambda) e^{-lambda L/2} [A sinh + B cosh]`, columns act on
/// `(A_{m+1}, B_{m+1})`. With `E = e^{lambda tau/N}` and `D = 4 i gamma - 2 lambda`:
///
/// ```text
/// row 1: 1 + lambda (E+1)/D,          -(E+1) Omega / D
/// row 2: 1 + E + lambda (E+1)/D,      -(Omega/lambda) E - Omega (E+1)/D
/// ```
///
/// The published second row omits the `(E+1)` factors on its `1/D` terms;
/// they are restored here. Kept for comparison only.
pub fn large_gamma_boundary_matrix(params: &ModelParams, sched: &FinitePulseSchedule) -> Result<[[Complex64; 2]; 2]> {
    let omega = require_overdamped(params)?;
    let lambda = params.lambda();
    let e = (lambda * sched.window()).exp();
    let d = Complex64::new(-2.0 * lambda, 4.0 * sched.gamma());
    let one = Complex64::new(1.0, 0.0);
    Ok([
        [one + lambda * (e + 1.0) / d, -(e + 1.0) * omega / d],
        [
            one * (1.0 + e) + lambda * (e + 1.0) / d,
            -one * (omega / lambda * e) - omega * (e + 1.0) / d,
        ],
    ])
}

fn solve_2x2(m: &[[Complex64; 2]; 2], rhs: [Complex64; 2]) -> Option<([Complex64; 2], f64)> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.norm().is_nan() || det.norm() < SINGULAR_DET {
        return None;
    }
    let x0 = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det;
    let x1 = (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det;
    Some(([x0, x1], det.norm()))
}

fn next_coeffs(
    c: &RecursionCoeffs,
    matrix: &[[Complex64; 2]; 2],
    params: &ModelParams,
    sched: &FinitePulseSchedule,
    omega: f64,
) -> Result<RecursionCoeffs> {
    let end = c.eval(params, sched.free_len());
    let det = (matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]).norm();
    let ([a, b], _) = solve_2x2(matrix, [end.value, end.rate]).ok_or(Error::NumericalDegeneracy {
        m: c.m,
        det,
        tau: sched.tau,
        n_duty: sched.n_duty,
    })?;
    Ok(RecursionCoeffs {
        m: c.m + 1,
        a,
        b_scaled: b * omega,
    })
}

/// Complex `(A_m, Omega B_m)` after `m` finite-duration pulse cycles.
pub fn finite_dd_coefficients(m: usize, sched: &FinitePulseSchedule, params: &ModelParams) -> Result<RecursionCoeffs> {
    let omega = require_overdamped(params)?;
    let matrix = boundary_matrix(params, sched)?;
    let mut c = RecursionCoeffs::initial(params);
    for _ in 0..m {
        c = next_coeffs(&c, &matrix, params, sched, omega)?;
    }
    Ok(c)
}

/// Precomputed finite-pulse coefficients up to a horizon, read-only afterwards.
#[derive(Debug, Clone)]
pub struct FiniteDdRecursion {
    params: ModelParams,
    sched: FinitePulseSchedule,
    matrix: [[Complex64; 2]; 2],
    omega: f64,
    table: Vec<RecursionCoeffs>,
}

/// Where a sample time falls inside the cycle structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclePosition {
    pub m: usize,
    pub segment: Segment,
    /// Offset from the start of the free segment, or of the window when in a pulse.
    pub offset: f64,
}

impl FiniteDdRecursion {
    pub fn new(params: ModelParams, sched: FinitePulseSchedule, t_max: f64) -> Result<Self> {
        let omega = require_overdamped(&params)?;
        let matrix = boundary_matrix(&params, &sched)?;
        let m_max = (t_max.max(0.0) / sched.tau).ceil() as usize + 1;
        let mut table = Vec::with_capacity(m_max + 1);
        table.push(RecursionCoeffs::initial(&params));
        for _ in 0..m_max {
            let next = next_coeffs(table.last().unwrap(), &matrix, &params, &sched, omega)?;
            table.push(next);
        }
        Ok(Self {
            params,
            sched,
            matrix,
            omega,
            table,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn schedule(&self) -> &FinitePulseSchedule {
        &self.sched
    }

    pub fn coeffs(&self, m: usize) -> Result<RecursionCoeffs> {
        if let Some(c) = self.table.get(m) {
            return Ok(*c);
        }
        let mut c = *self.table.last().unwrap();
        while c.m < m {
            c = next_coeffs(&c, &self.matrix, &self.params, &self.sched, self.omega)?;
        }
        Ok(c)
    }

    pub fn locate(&self, t: f64) -> CyclePosition {
        let (m, s) = split_period(t, self.sched.tau);
        let free_len = self.sched.free_len();
        if s <= free_len + SNAP_TOL * self.sched.tau {
            CyclePosition {
                m,
                segment: Segment::Free,
                offset: s.min(free_len),
            }
        } else {
            CyclePosition {
                m,
                segment: Segment::InPulse,
                offset: s - free_len,
            }
        }
    }

    /// Pulse-frame amplitude and slope at `t`.
    pub fn state_at(&self, t: f64) -> Result<(SegmentState, CyclePosition)> {
        check_time(t)?;
        let pos = self.locate(t);
        let c = self.coeffs(pos.m)?;
        let state = match pos.segment {
            Segment::Free => c.eval(&self.params, pos.offset),
            Segment::InPulse => {
                let start = c.eval(&self.params, self.sched.free_len());
                segment::propagate_complex(
                    window_rate(&self.params, &self.sched),
                    self.params.r_sq(),
                    start,
                    pos.offset,
                )
            }
        };
        Ok((state, pos))
    }

    /// Complex bright-state amplitude in the pulse frame.
    pub fn xi(&self, t: f64) -> Result<(Complex64, Segment)> {
        let (state, pos) = self.state_at(t)?;
        Ok((state.value, pos.segment))
    }

    /// Phase `e^{-i Phi(t)}` picked up by the whole single-excitation sector.
    pub fn frame_phase(&self, t: f64) -> Complex64 {
        let pos = self.locate(t);
        let in_window = match pos.segment {
            Segment::Free => 0.0,
            Segment::InPulse => pos.offset,
        };
        let phi = pos.m as f64 * PI + self.sched.phase_rate() * in_window;
        Complex64::from_polar(1.0, -phi)
    }

    /// Modulus of the overlap between the initial and the evolved system state.
    pub fn fidelity(&self, state0: &OddParityState, t: f64) -> Result<(f64, Segment)> {
        let (amp, segment) = self.xi(t)?;
        let (w1, w2) = state0.weights();
        let overlap = (amp * w2 + w1) * self.frame_phase(t);
        Ok((overlap.norm(), segment))
    }
}

pub fn finite_dd_fidelity(
    state0: &OddParityState,
    t: f64,
    sched: &FinitePulseSchedule,
    params: &ModelParams,
) -> Result<(f64, Segment)> {
    FiniteDdRecursion::new(*params, *sched, t)?.fidelity(state0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoupling::{DdRecursion, DdSchedule};
    use crate::free::eta;

    fn case1() -> ModelParams {
        ModelParams::from_lambda_omega(2.0, 1.0).unwrap()
    }

    #[test]
    fn schedule_quantities() {
        let s = FinitePulseSchedule::new(0.2, 10).unwrap();
        assert_eq!(s.gamma(), 10.0 * PI / 0.4);
        assert!((s.phase_rate() * s.window() - PI).abs() < 1e-14);
        assert!((s.free_len() - 0.18).abs() < 1e-15);
        assert!(FinitePulseSchedule::new(0.2, 1).is_err());
        assert!(FinitePulseSchedule::new(-0.2, 10).is_err());
        assert!(s.in_window(0.19) && !s.in_window(0.17) && !s.in_window(0.2));
    }

    #[test]
    fn initial_coefficients() {
        let p = case1();
        let s = FinitePulseSchedule::new(0.2, 10).unwrap();
        let c = finite_dd_coefficients(0, &s, &p).unwrap();
        assert_eq!(c.a, Complex64::new(1.0, 0.0));
        assert_eq!(c.b(&p).unwrap(), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn first_segment_is_free_decay() {
        let p = case1();
        let s = FinitePulseSchedule::new(0.2, 10).unwrap();
        let rec = FiniteDdRecursion::new(p, s, 1.0).unwrap();
        for k in 0..180 {
            let t = 0.001 * k as f64;
            let (f, seg) = rec.fidelity(&OddParityState::superradiant(), t).unwrap();
            assert_eq!(seg, Segment::Free);
            assert!((f - eta(t, &p).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn dark_state_unaffected() {
        let p = case1();
        let s = FinitePulseSchedule::new(0.2, 10).unwrap();
        let rec = FiniteDdRecursion::new(p, s, 1.0).unwrap();
        for k in 0..=1000 {
            let (f, _) = rec.fidelity(&OddParityState::dark(), k as f64 * 1e-3).unwrap();
            assert!((f - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn continuous_across_window_edges() {
        let p = case1();
        for n in [10, 20] {
            let s = FinitePulseSchedule::new(0.2, n).unwrap();
            let rec = FiniteDdRecursion::new(p, s, 1.0).unwrap();
            for m in 0..5 {
                let c = rec.coeffs(m).unwrap();
                let start = c.eval(&p, s.free_len());
                let through = segment::propagate_complex(window_rate(&p, &s), p.r_sq(), start, s.window());
                let next = rec.coeffs(m + 1).unwrap().eval(&p, 0.0);
                assert!((through.value - next.value).norm() < 1e-12);
                assert!((through.rate - next.rate).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn frame_phase_has_unit_modulus() {
        let p = case1();
        let s = FinitePulseSchedule::new(0.2, 10).unwrap();
        let rec = FiniteDdRecursion::new(p, s, 1.0).unwrap();
        for k in 0..=1000 {
            let t = k as f64 * 1e-3;
            assert!((rec.frame_phase(t).norm() - 1.0).abs() < 1e-15);
        }
        // a full window advances the phase by pi
        assert!((rec.frame_phase(0.2) + Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn instantaneous_limit() {
        let p = case1();
        let dd = dd_coefficient_pair(&p, 0.1, 1);
        let s = FinitePulseSchedule::new(0.1, 10_000).unwrap();
        let c = finite_dd_coefficients(1, &s, &p).unwrap();
        assert!((c.a - dd.0).norm() < 1e-3);
        assert!((c.b(&p).unwrap() - dd.1).norm() < 1e-3);
    }

    fn dd_coefficient_pair(p: &ModelParams, tau: f64, m: usize) -> (Complex64, Complex64) {
        let c = crate::decoupling::dd_coefficients(m, &DdSchedule::new(tau).unwrap(), p);
        (c.a, c.b(p).unwrap())
    }

    #[test]
    fn converges_monotonically_in_duty() {
        let p = case1();
        let inst = DdRecursion::new(p, DdSchedule::new(0.2).unwrap(), 1.0);
        let mut prev = f64::INFINITY;
        for n in [10, 20, 40, 80] {
            let s = FinitePulseSchedule::new(0.2, n).unwrap();
            let rec = FiniteDdRecursion::new(p, s, 1.0).unwrap();
            let mut worst: f64 = 0.0;
            for k in 0..=2000 {
                let t = k as f64 / 2000.0;
                let (f, seg) = rec.fidelity(&OddParityState::superradiant(), t).unwrap();
                if seg == Segment::Free {
                    worst = worst.max((f - inst.fidelity(&OddParityState::superradiant(), t).unwrap()).abs());
                }
            }
            assert!(worst < prev, "N = {n}: {worst} !< {prev}");
            prev = worst;
        }
    }

    #[test]
    fn large_gamma_form_matches_window_without_coupling() {
        let p = case1();
        for (tau, n) in [(0.2, 10), (0.2, 20), (0.1, 7)] {
            let s = FinitePulseSchedule::new(tau, n).unwrap();
            let omega = p.omega().unwrap();
            let exact = boundary_matrix_with(p.lambda(), omega, window_rate(&p, &s), 0.0, s.window());
            // convert (value, slope) rows into the published (value, (2 slope + lambda value)/lambda) rows
            let l = p.lambda();
            let rows = [
                exact[0],
                [
                    (exact[1][0] * 2.0 + exact[0][0] * l) / l,
                    (exact[1][1] * 2.0 + exact[0][1] * l) / l,
                ],
            ];
            let printed = large_gamma_boundary_matrix(&p, &s).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((rows[i][j] - printed[i][j]).norm() < 1e-12, "({i},{j}) tau={tau} N={n}");
                }
            }
        }
    }

    #[test]
    fn full_map_differs_from_large_gamma_form_at_order_r_squared() {
        let p = case1();
        let s = FinitePulseSchedule::new(0.2, 10).unwrap();
        let full = boundary_matrix(&p, &s).unwrap();
        let approx = boundary_matrix_with(p.lambda(), 1.0, window_rate(&p, &s), 0.0, s.window());
        let diff = (full[0][0] - approx[0][0]).norm();
        assert!(diff > 1e-6 && diff < 10.0 * p.r_sq() * s.window().powi(2));
    }

    #[test]
    fn rejects_non_overdamped() {
        let s = FinitePulseSchedule::new(0.2, 10).unwrap();
        for p in [
            ModelParams::from_lambda_r(2.0, 1.0).unwrap(),
            ModelParams::from_lambda_r(1.0, 2.0).unwrap(),
        ] {
            assert!(matches!(finite_dd_coefficients(1, &s, &p), Err(Error::Unsupported(_))));
            assert!(FiniteDdRecursion::new(p, s, 1.0).is_err());
        }
    }

    #[test]
    fn singular_system_reported() {
        let zero = Complex64::new(0.0, 0.0);
        let m = [[zero, zero], [zero, zero]];
        assert!(solve_2x2(&m, [zero, zero]).is_none());
        let one = Complex64::new(1.0, 0.0);
        let m = [[one, one], [one, one]];
        assert!(solve_2x2(&m, [one, zero]).is_none());
        let m = [[one * 2.0, zero], [zero, one]];
        let (x, _) = solve_2x2(&m, [one, one]).unwrap();
        assert_eq!(x, [one * 0.5, one]);
    }
}
