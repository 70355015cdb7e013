//! Oracle traces in the figure CSV schema.

use super::config::ScenarioConfig;
use super::trace::EvolutionTrace;
use super::validate::fit_dt;
use crate::error::Result;
use crate::model::{decompose, recompose};
use crate::oracle::{self, OracleConfig, OracleTrace};
use crate::schedule::PulseSchedule;

/// `|<psi0|psi(t)>|` at every oracle sample, as a one-column trace.
pub fn oracle_fidelity_trace(
    trace: &OracleTrace,
    cfg: &ScenarioConfig,
    schedule: &PulseSchedule,
    oracle_cfg: &OracleConfig,
) -> Result<EvolutionTrace> {
    let params = cfg.model()?;
    let s0 = cfg.initial_state.state()?;
    let initial = decompose(&recompose(&s0, &params), &params);
    let values = trace
        .beta1
        .iter()
        .zip(&trace.beta2)
        .map(|(b1, b2)| (initial.beta1.conj() * b1 + initial.beta2.conj() * b2).norm())
        .collect();
    let segments = matches!(schedule, PulseSchedule::DdFinite(_)).then(|| trace.segment.clone());
    Ok(EvolutionTrace {
        metadata: vec![
            ("run_id".into(), format!("{} oracle", cfg.run_id)),
            ("scenario".into(), cfg.kind.to_string()),
            ("code_version".into(), format!("piphase {}", env!("CARGO_PKG_VERSION"))),
            ("params".into(), cfg.params.to_string()),
            ("initial_state".into(), cfg.initial_state.to_string()),
            ("schedules".into(), schedule.to_string()),
            (
                "oracle".into(),
                format!(
                    "{} order {} dt_num = {} every {} steps",
                    oracle_cfg.history_mode,
                    oracle_cfg.method_order.order(),
                    oracle_cfg.dt_num,
                    oracle_cfg.record_every
                ),
            ),
        ],
        times: trace.times.clone(),
        columns: vec![(schedule.column_name(), values)],
        segments,
    })
}

/// Integrates every schedule of `cfg` that has a kernel counterpart.
///
/// Steps are fitted to the pulse layout and samples thinned to roughly
/// `samples_per_unit_time`. Zeno schedules are skipped.
pub fn run_oracle_export(cfg: &ScenarioConfig) -> Result<Vec<(PulseSchedule, EvolutionTrace)>> {
    cfg.validate()?;
    let params = cfg.model()?;
    let initial = recompose(&cfg.initial_state.state()?, &params);
    let mut out = Vec::new();
    for s in &cfg.schedules {
        let dt = match s {
            PulseSchedule::None => cfg.oracle.dt_num.min(0.1 / params.lambda()),
            PulseSchedule::Zeno(_) => continue,
            PulseSchedule::Dd(d) => fit_dt(cfg.oracle.dt_num, d.tau(), 50, params.lambda()),
            PulseSchedule::DdFinite(f) => fit_dt(cfg.oracle.dt_num, f.window(), 50, params.lambda()),
        };
        let every = ((1.0 / (cfg.samples_per_unit_time as f64 * dt)).floor() as usize).max(1);
        let ocfg = OracleConfig {
            dt_num: dt,
            record_every: every,
            ..cfg.oracle
        };
        let trace = match s {
            PulseSchedule::Dd(d) => oracle::integrate_dd(&params, d, &initial, cfg.t_max, &ocfg)?,
            PulseSchedule::DdFinite(f) => oracle::integrate_finite(&params, f, &initial, cfg.t_max, &ocfg)?,
            _ => oracle::integrate_free(&params, &initial, cfg.t_max, &ocfg)?,
        };
        out.push((*s, oracle_fidelity_trace(&trace, cfg, s, &ocfg)?));
    }
    Ok(out)
}
