//! Decay and protection of odd-parity two-qubit states coupled to a common
//! zero-temperature Lorentzian reservoir.
//!
//! Three protocols are modelled in closed form: free decay ([`free`]),
//! frequent vacuum projection of the reservoir ([`zeno`]), and dynamical
//! decoupling by double pi-phase pulses, either instantaneous
//! ([`decoupling`]) or of finite duration ([`finite`]). The [`oracle`] module
//! integrates the underlying memory-kernel equations directly and is used to
//! check every closed form. [`experiment`] turns all of this into figure
//! data, validation reports and parameter sweeps.

pub mod decoupling;
pub mod error;
pub mod experiment;
pub mod finite;
pub mod free;
pub mod model;
pub mod oracle;
pub mod schedule;
pub mod zeno;

mod segment;
mod util;

pub use decoupling::{dd_coefficients, dd_fidelity, xi, DdRecursion, DdSchedule, RecursionCoeffs};
pub use error::{Error, Result};
pub use finite::{finite_dd_coefficients, finite_dd_fidelity, FiniteDdRecursion, FinitePulseSchedule, Segment};
pub use free::{eta, fidelity_free, free_evolve, FreeEvolutionResult};
pub use model::{
    apply_double_pi_pulse, decompose, recompose, DampingBranch, GroundSectorAmplitudes, ModelParams, OddParityState,
    PhysicalAmplitudes,
};
pub use schedule::PulseSchedule;
pub use segment::SegmentState;
pub use zeno::{zeno_amplitude, zeno_fidelity, ZenoSchedule};

pub use num_complex::Complex64;
