//! Reservoir parameters, odd-parity states and the double pi-phase pulse.
//!
//! The single-excitation sector of two qubits sharing one zero-temperature
//! Lorentzian reservoir splits into a dark state
//! `|mu> = (a2/a)|10> - (a1/a)|01>`, which never decays, and a superradiant
//! state `|nu> = (a1/a)|10> + (a2/a)|01>`, whose amplitude obeys the damped
//! oscillator `x'' + lambda x' + R^2 x = 0` with `R = a W`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative width of the band around `lambda^2 = 4 R^2` treated as critical damping.
pub const CRITICAL_REL_TOL: f64 = 1e-10;

/// Tolerance on `|b1|^2 + |b2|^2 = 1` for freshly constructed states.
pub const NORM_TOL: f64 = 1e-12;

/// Sign of `Omega^2 = lambda^2 - 4 R^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DampingBranch {
    /// Real `Omega > 0`.
    Overdamped { omega: f64 },
    /// `Omega = 0`.
    Critical,
    /// Imaginary `Omega`; `omega_abs` is its magnitude.
    Underdamped { omega_abs: f64 },
}

impl DampingBranch {
    pub fn name(&self) -> &'static str {
        match self {
            DampingBranch::Overdamped { .. } => "overdamped",
            DampingBranch::Critical => "critical",
            DampingBranch::Underdamped { .. } => "underdamped",
        }
    }
}

/// Reservoir and coupling constants, normalized to the full derived set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    lambda: f64,
    w_coupling: f64,
    alpha1: f64,
    alpha2: f64,
    alpha: f64,
    r_rate: f64,
    omega_sq: f64,
    branch: DampingBranch,
}

impl ModelParams {
    /// Builds the parameter set from the microscopic constants `(lambda, W, alpha1, alpha2)`.
    pub fn new(lambda: f64, w_coupling: f64, alpha1: f64, alpha2: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::ParameterDomain(format!("lambda must be > 0, got {lambda}")));
        }
        if !(w_coupling.is_finite() && w_coupling > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "coupling W must be > 0, got {w_coupling}"
            )));
        }
        if !(alpha1.is_finite() && alpha2.is_finite() && alpha1 >= 0.0 && alpha2 >= 0.0) {
            return Err(Error::ParameterDomain(format!(
                "coupling weights must be non-negative reals, got ({alpha1}, {alpha2})"
            )));
        }
        let alpha = alpha1.hypot(alpha2);
        if alpha <= 0.0 {
            return Err(Error::ParameterDomain("alpha1 and alpha2 are both zero".into()));
        }
        let r_rate = alpha * w_coupling;
        let omega_sq = lambda * lambda - 4.0 * r_rate * r_rate;
        let branch = if omega_sq.abs() < CRITICAL_REL_TOL * lambda * lambda {
            DampingBranch::Critical
        } else if omega_sq > 0.0 {
            DampingBranch::Overdamped { omega: omega_sq.sqrt() }
        } else {
            DampingBranch::Underdamped {
                omega_abs: (-omega_sq).sqrt(),
            }
        };
        Ok(Self {
            lambda,
            w_coupling,
            alpha1,
            alpha2,
            alpha,
            r_rate,
            omega_sq,
            branch,
        })
    }

    /// `(lambda, R)` with symmetric couplings `alpha1 = alpha2 = 1/sqrt(2)` and `W = R`.
    pub fn from_lambda_r(lambda: f64, r_rate: f64) -> Result<Self> {
        if !(r_rate.is_finite() && r_rate > 0.0) {
            return Err(Error::ParameterDomain(format!("R must be > 0, got {r_rate}")));
        }
        let a = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(lambda, r_rate, a, a)
    }

    /// `(lambda, Omega)` as used for the reference figures. Requires `0 <= Omega < lambda`.
    pub fn from_lambda_omega(lambda: f64, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::ParameterDomain(format!("Omega must be >= 0, got {omega}")));
        }
        if !(lambda.is_finite() && lambda > omega) {
            return Err(Error::ParameterDomain(format!(
                "need lambda > Omega for a positive coupling, got lambda = {lambda}, Omega = {omega}"
            )));
        }
        let r_rate = ((lambda * lambda - omega * omega) / 4.0).sqrt();
        let mut params = Self::from_lambda_r(lambda, r_rate)?;
        // keep the caller's Omega exactly instead of the re-derived root
        if let DampingBranch::Overdamped { .. } = params.branch {
            params.branch = DampingBranch::Overdamped { omega };
            params.omega_sq = omega * omega;
        }
        Ok(params)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn w_coupling(&self) -> f64 {
        self.w_coupling
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `R = alpha * W`.
    pub fn r_rate(&self) -> f64 {
        self.r_rate
    }

    pub fn r_sq(&self) -> f64 {
        self.r_rate * self.r_rate
    }

    /// Signed `Omega^2 = lambda^2 - 4 R^2`.
    pub fn omega_sq(&self) -> f64 {
        self.omega_sq
    }

    pub fn branch(&self) -> DampingBranch {
        self.branch
    }

    /// Real `Omega`, only on the overdamped branch.
    pub fn omega(&self) -> Option<f64> {
        match self.branch {
            DampingBranch::Overdamped { omega } => Some(omega),
            _ => None,
        }
    }

    /// `cosh(Omega x / 2)`, continued to `1` and `cos(|Omega| x / 2)` on the other branches.
    pub(crate) fn cosh_half(&self, x: f64) -> f64 {
        match self.branch {
            DampingBranch::Overdamped { omega } => (0.5 * omega * x).cosh(),
            DampingBranch::Critical => 1.0,
            DampingBranch::Underdamped { omega_abs } => (0.5 * omega_abs * x).cos(),
        }
    }

    /// `sinh(Omega x / 2) / Omega`, finite on every branch.
    pub(crate) fn sinh_half_over_omega(&self, x: f64) -> f64 {
        match self.branch {
            DampingBranch::Overdamped { omega } => (0.5 * omega * x).sinh() / omega,
            DampingBranch::Critical => 0.5 * x,
            DampingBranch::Underdamped { omega_abs } => (0.5 * omega_abs * x).sin() / omega_abs,
        }
    }

    /// Components `(c10, c01)` of the dark state.
    pub fn dark_vector(&self) -> (f64, f64) {
        (self.alpha2 / self.alpha, -self.alpha1 / self.alpha)
    }

    /// Components `(c10, c01)` of the superradiant state.
    pub fn superradiant_vector(&self) -> (f64, f64) {
        (self.alpha1 / self.alpha, self.alpha2 / self.alpha)
    }

    /// Linear change of basis `{|10>, |01>} -> {|mu>, |nu>}` without a norm check.
    pub fn to_dark_bright(&self, c10: Complex64, c01: Complex64) -> (Complex64, Complex64) {
        let (m10, m01) = self.dark_vector();
        let (n10, n01) = self.superradiant_vector();
        (c10 * m10 + c01 * m01, c10 * n10 + c01 * n01)
    }

    /// Inverse of [`ModelParams::to_dark_bright`].
    pub fn from_dark_bright(&self, beta1: Complex64, beta2: Complex64) -> (Complex64, Complex64) {
        let (m10, m01) = self.dark_vector();
        let (n10, n01) = self.superradiant_vector();
        (beta1 * m10 + beta2 * n10, beta1 * m01 + beta2 * n01)
    }
}

/// Amplitudes on the dark (`beta1`) and superradiant (`beta2`) states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OddParityState {
    pub beta1: Complex64,
    pub beta2: Complex64,
}

impl OddParityState {
    /// Normalized initial state; rejects inputs off the unit sphere.
    pub fn new(beta1: Complex64, beta2: Complex64) -> Result<Self> {
        let state = Self { beta1, beta2 };
        check_norm(state.norm_sq())?;
        Ok(state)
    }

    pub fn dark() -> Self {
        Self {
            beta1: Complex64::new(1.0, 0.0),
            beta2: Complex64::new(0.0, 0.0),
        }
    }

    pub fn superradiant() -> Self {
        Self {
            beta1: Complex64::new(0.0, 0.0),
            beta2: Complex64::new(1.0, 0.0),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.beta1.norm_sqr() + self.beta2.norm_sqr()
    }

    /// Squared weights `(|beta1|^2, |beta2|^2)` entering every fidelity formula.
    pub(crate) fn weights(&self) -> (f64, f64) {
        (self.beta1.norm_sqr(), self.beta2.norm_sqr())
    }
}

/// Amplitudes on `|1>_1|0>_2` and `|0>_1|1>_2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalAmplitudes {
    pub c10: Complex64,
    pub c01: Complex64,
}

impl PhysicalAmplitudes {
    pub fn new(c10: Complex64, c01: Complex64) -> Result<Self> {
        let amps = Self { c10, c01 };
        check_norm(amps.c10.norm_sqr() + amps.c01.norm_sqr())?;
        Ok(amps)
    }
}

fn check_norm(norm_sq: f64) -> Result<()> {
    if (norm_sq - 1.0).abs() > NORM_TOL || !norm_sq.is_finite() {
        return Err(Error::NotNormalized(norm_sq));
    }
    Ok(())
}

/// Writes a physical odd-parity state in the `{dark, superradiant}` basis.
pub fn decompose(phys: &PhysicalAmplitudes, params: &ModelParams) -> OddParityState {
    let (beta1, beta2) = params.to_dark_bright(phys.c10, phys.c01);
    OddParityState { beta1, beta2 }
}

/// Inverse of [`decompose`].
pub fn recompose(state: &OddParityState, params: &ModelParams) -> PhysicalAmplitudes {
    let (c10, c01) = params.from_dark_bright(state.beta1, state.beta2);
    PhysicalAmplitudes { c10, c01 }
}

/// Single-excitation amplitudes together with the ground amplitude `c00`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundSectorAmplitudes {
    pub c10: Complex64,
    pub c01: Complex64,
    pub c00: Complex64,
}

/// Simultaneous pi-phase pulse on both qubits: `|0> -> -|0>`, `|1> -> |1>` on each.
///
/// On the three states reachable here only `|00>` changes sign.
pub fn apply_double_pi_pulse(amps: GroundSectorAmplitudes) -> GroundSectorAmplitudes {
    GroundSectorAmplitudes { c00: -amps.c00, ..amps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn case_one_parameters() {
        let p = ModelParams::from_lambda_omega(2.0, 1.0).unwrap();
        assert!((p.r_rate() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((p.omega_sq() + 4.0 * p.r_sq() - 4.0).abs() < 1e-12);
        assert_eq!(p.branch(), DampingBranch::Overdamped { omega: 1.0 });
        assert!((p.alpha() - 1.0).abs() < 1e-15);
        assert!((p.w_coupling() - p.r_rate()).abs() < 1e-15);
    }

    #[test]
    fn lambda_omega_and_lambda_r_agree() {
        let a = ModelParams::from_lambda_omega(3.0, 1.3).unwrap();
        let b = ModelParams::from_lambda_r(3.0, a.r_rate()).unwrap();
        assert!((b.omega().unwrap() - 1.3).abs() < 1e-12);
        let expected_r = ((3.0f64 * 3.0 - 1.3 * 1.3) / 4.0).sqrt();
        assert!((a.r_rate() - expected_r).abs() < 1e-15);
    }

    #[test]
    fn branch_tags() {
        assert_eq!(
            ModelParams::from_lambda_r(2.0, 1.0).unwrap().branch(),
            DampingBranch::Critical
        );
        assert_eq!(
            ModelParams::from_lambda_omega(2.0, 0.0).unwrap().branch(),
            DampingBranch::Critical
        );
        match ModelParams::from_lambda_r(2.0, 2.0).unwrap().branch() {
            DampingBranch::Underdamped { omega_abs } => {
                assert!((omega_abs - 12f64.sqrt()).abs() < 1e-12)
            }
            other => panic!("expected underdamped, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ModelParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, -0.5, 1.0).is_err());
        assert!(ModelParams::from_lambda_omega(1.0, 1.0).is_err());
        assert!(ModelParams::from_lambda_omega(1.0, -0.1).is_err());
        assert!(ModelParams::from_lambda_r(1.0, 0.0).is_err());
    }

    #[test]
    fn decompose_basis_vectors() {
        let p = ModelParams::new(2.0, 0.7, 0.3, 0.8).unwrap();
        let a = p.alpha();
        let dark = PhysicalAmplitudes::new(c(0.8 / a, 0.0), c(-0.3 / a, 0.0)).unwrap();
        let s = decompose(&dark, &p);
        assert!((s.beta1 - c(1.0, 0.0)).norm() < 1e-15 && s.beta2.norm() < 1e-15);

        let bright = PhysicalAmplitudes::new(c(0.3 / a, 0.0), c(0.8 / a, 0.0)).unwrap();
        let s = decompose(&bright, &p);
        assert!(s.beta1.norm() < 1e-15 && (s.beta2 - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn decompose_symmetric_excited_first_qubit() {
        let p = ModelParams::new(2.0, 1.0, 0.4, 0.4).unwrap();
        let s = decompose(&PhysicalAmplitudes::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap(), &p);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.beta1 - c(h, 0.0)).norm() < 1e-15);
        assert!((s.beta2 - c(h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn recompose_examples() {
        let p = ModelParams::new(2.0, 0.7, 0.3, 0.8).unwrap();
        let a = p.alpha();
        let phys = recompose(&OddParityState::dark(), &p);
        assert!((phys.c10 - c(0.8 / a, 0.0)).norm() < 1e-15);
        assert!((phys.c01 - c(-0.3 / a, 0.0)).norm() < 1e-15);
        let phys = recompose(&OddParityState::superradiant(), &p);
        assert!((phys.c10 - c(0.3 / a, 0.0)).norm() < 1e-15);
        assert!((phys.c01 - c(0.8 / a, 0.0)).norm() < 1e-15);

        let s = OddParityState::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let back = decompose(&recompose(&s, &p), &p);
        assert!((back.beta1 - s.beta1).norm() < 1e-14);
        assert!((back.beta2 - s.beta2).norm() < 1e-14);
    }

    #[test]
    fn norm_checks() {
        assert!(OddParityState::new(c(1.0, 0.0), c(0.1, 0.0)).is_err());
        assert!(PhysicalAmplitudes::new(c(0.5, 0.0), c(0.5, 0.0)).is_err());
    }

    #[test]
    fn double_pi_pulse() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let a = GroundSectorAmplitudes {
            c10: one,
            c01: zero,
            c00: zero,
        };
        assert_eq!(apply_double_pi_pulse(a), a);
        let g = GroundSectorAmplitudes {
            c10: zero,
            c01: zero,
            c00: one,
        };
        assert_eq!(apply_double_pi_pulse(g).c00, -one);
        let mixed = GroundSectorAmplitudes {
            c10: c(0.3, 0.1),
            c01: c(-0.2, 0.5),
            c00: c(0.4, -0.6),
        };
        assert_eq!(apply_double_pi_pulse(apply_double_pi_pulse(mixed)), mixed);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn basis_change_is_orthonormal(
                a1 in 0.01f64..3.0, a2 in 0.01f64..3.0,
                re1 in -1.0f64..1.0, im1 in -1.0f64..1.0,
                re2 in -1.0f64..1.0, im2 in -1.0f64..1.0,
            ) {
                let p = ModelParams::new(1.0, 0.2, a1, a2).unwrap();
                let n = (re1 * re1 + im1 * im1 + re2 * re2 + im2 * im2).sqrt();
                prop_assume!(n > 1e-3);
                let phys = PhysicalAmplitudes::new(c(re1 / n, im1 / n), c(re2 / n, im2 / n)).unwrap();
                let s = decompose(&phys, &p);
                prop_assert!((s.norm_sq() - 1.0).abs() < 1e-14);
                let back = recompose(&s, &p);
                prop_assert!((back.c10 - phys.c10).norm() < 1e-14);
                prop_assert!((back.c01 - phys.c01).norm() < 1e-14);
            }

            #[test]
            fn pulse_preserves_norm(
                x in proptest::array::uniform6(-1.0f64..1.0)
            ) {
                let a = GroundSectorAmplitudes {
                    c10: c(x[0], x[1]), c01: c(x[2], x[3]), c00: c(x[4], x[5]),
                };
                let b = apply_double_pi_pulse(a);
                let n = |g: &GroundSectorAmplitudes| g.c10.norm_sqr() + g.c01.norm_sqr() + g.c00.norm_sqr();
                prop_assert!((n(&a) - n(&b)).abs() < 1e-15);
            }
        }
    }
}
