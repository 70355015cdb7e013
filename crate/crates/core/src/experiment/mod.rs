//! Figure data, validation and parameter sweeps built on the closed forms.

pub mod config;
pub mod figures;
pub mod oracle_export;
pub mod svg;
pub mod sweep;
pub mod trace;
pub mod validate;

pub use config::{
    load_config, parse_config, serialize_config, ConfigFile, InitialState, Overrides, ParamSpec, ScenarioConfig,
    ScenarioKind,
};
pub use figures::{
    default_out_dir, run_custom, run_fig1, run_fig2, run_fig3, run_scenario, write_outputs, CheckResult, FigureRun,
    OUT_DIR_ENV,
};
pub use oracle_export::{oracle_fidelity_trace, run_oracle_export};
pub use svg::render_svg;
pub use sweep::{run_sweep, RateAxis, SweepGrid, SweepTable};
pub use trace::{time_grid, EvolutionTrace};
pub use validate::{default_scenarios, run_validation, ValidationOptions, ValidationReport};
