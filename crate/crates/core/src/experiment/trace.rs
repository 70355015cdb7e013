use std::collections::BTreeMap;

use super::config::ScenarioConfig;
use crate::decoupling::DdRecursion;
use crate::error::{Error, Result};
use crate::finite::{FiniteDdRecursion, Segment};
use crate::free::fidelity_free;
use crate::model::{ModelParams, OddParityState};
use crate::schedule::PulseSchedule;
use crate::zeno::zeno_fidelity;

/// Upper slack allowed on a fidelity before it is treated as a bug.
pub const FIDELITY_SLACK: f64 = 1e-9;

/// Sample times: a uniform grid of `samples_per_unit_time` points per unit
/// time, merged with every protocol boundary in `[0, t_max]`. Near-duplicates
/// (closer than `1e-9 * max(1, t)`) are kept once, preferring the boundary.
pub fn time_grid(t_max: f64, samples_per_unit_time: u32, schedules: &[PulseSchedule]) -> Vec<f64> {
    let spu = samples_per_unit_time as f64;
    let n = (t_max * spu - 1e-9).ceil().max(1.0) as usize;
    let mut uniform: Vec<f64> = (0..n).map(|k| k as f64 / spu).collect();
    uniform.push(t_max);

    let mut marks: Vec<f64> = Vec::new();
    for s in schedules {
        for (period, offset) in s.boundaries() {
            let mut m = 0usize;
            loop {
                let t = m as f64 * period + offset;
                if t > t_max * (1.0 + 1e-12) {
                    break;
                }
                if t > 0.0 {
                    marks.push(t.min(t_max));
                }
                m += 1;
            }
        }
    }
    marks.sort_by(f64::total_cmp);

    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(1.0);
    let mut out: Vec<f64> = Vec::with_capacity(uniform.len() + marks.len());
    let (mut i, mut j) = (0, 0);
    while i < uniform.len() || j < marks.len() {
        let take_mark = j < marks.len() && (i == uniform.len() || marks[j] <= uniform[i]);
        let t = if take_mark {
            j += 1;
            marks[j - 1]
        } else {
            i += 1;
            uniform[i - 1]
        };
        match out.last_mut() {
            Some(last) if close(*last, t) => {
                if take_mark && *last != 0.0 && *last != t_max {
                    *last = t;
                }
            }
            _ => out.push(t),
        }
    }
    out
}

/// Fidelity curves of one scenario on a common time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrace {
    /// `# key = value` lines written above the header, in order.
    pub metadata: Vec<(String, String)>,
    pub times: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
    /// Present when any finite-pulse curve is included: `InPulse` if any
    /// finite-pulse schedule is inside a window at that sample.
    pub segments: Option<Vec<Segment>>,
}

fn column_rank(s: &PulseSchedule) -> (u8, u32) {
    match s {
        PulseSchedule::None => (0, 0),
        PulseSchedule::Zeno(_) => (1, 0),
        PulseSchedule::Dd(_) => (2, 0),
        PulseSchedule::DdFinite(f) => (3, f.n_duty()),
    }
}

pub(crate) enum Evaluator {
    Free,
    Zeno(crate::ZenoSchedule),
    Dd(DdRecursion),
    Finite(FiniteDdRecursion),
}

impl Evaluator {
    pub(crate) fn new(schedule: &PulseSchedule, params: &ModelParams, t_max: f64) -> Result<Self> {
        Ok(match schedule {
            PulseSchedule::None => Evaluator::Free,
            PulseSchedule::Zeno(z) => Evaluator::Zeno(*z),
            PulseSchedule::Dd(d) => Evaluator::Dd(DdRecursion::new(*params, *d, t_max)),
            PulseSchedule::DdFinite(f) => Evaluator::Finite(FiniteDdRecursion::new(*params, *f, t_max)?),
        })
    }

    pub(crate) fn fidelity(
        &self,
        state0: &OddParityState,
        params: &ModelParams,
        t: f64,
    ) -> Result<(f64, Option<Segment>)> {
        Ok(match self {
            Evaluator::Free => (fidelity_free(state0, t, params)?, None),
            Evaluator::Zeno(z) => (zeno_fidelity(state0, t, z, params)?, None),
            Evaluator::Dd(r) => (r.fidelity(state0, t)?, None),
            Evaluator::Finite(r) => {
                let (f, seg) = r.fidelity(state0, t)?;
                (f, Some(seg))
            }
        })
    }
}

impl EvolutionTrace {
    /// Evaluates every schedule of `cfg` in closed form.
    pub fn compute(cfg: &ScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        let params = cfg.model()?;
        let state0 = cfg.initial_state.state()?;
        let times = time_grid(cfg.t_max, cfg.samples_per_unit_time, &cfg.schedules);

        let mut schedules = cfg.schedules.clone();
        schedules.sort_by_key(column_rank);

        let mut columns = Vec::with_capacity(schedules.len());
        let mut segments: Option<Vec<Segment>> = None;
        for s in &schedules {
            let eval = Evaluator::new(s, &params, cfg.t_max)?;
            let mut values = Vec::with_capacity(times.len());
            for (k, &t) in times.iter().enumerate() {
                let (f, seg) = eval.fidelity(&state0, &params, t)?;
                if !(0.0..=1.0 + FIDELITY_SLACK).contains(&f) {
                    return Err(Error::Unsupported(format!(
                        "{} left [0, 1] at t = {t}: {f}",
                        s.column_name()
                    )));
                }
                values.push(f);
                if let Some(seg) = seg {
                    let tags = segments.get_or_insert_with(|| vec![Segment::Free; times.len()]);
                    if seg == Segment::InPulse {
                        tags[k] = Segment::InPulse;
                    }
                }
            }
            columns.push((s.column_name(), values));
        }

        let metadata = vec![
            ("run_id".into(), cfg.run_id.clone()),
            ("scenario".into(), cfg.kind.to_string()),
            ("code_version".into(), format!("piphase {}", env!("CARGO_PKG_VERSION"))),
            ("params".into(), cfg.params.to_string()),
            ("R".into(), format!("{}", params.r_rate())),
            ("branch".into(), params.branch().name().into()),
            ("initial_state".into(), cfg.initial_state.to_string()),
            (
                "schedules".into(),
                schedules.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("; "),
            ),
            (
                "grid".into(),
                format!(
                    "uniform {} per unit time on [0, {}] plus protocol boundaries, {} samples",
                    cfg.samples_per_unit_time,
                    cfg.t_max,
                    times.len()
                ),
            ),
        ];
        Ok(Self {
            metadata,
            times,
            columns,
            segments,
        })
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = vec!["t"];
        header.extend(self.columns.iter().map(|(n, _)| n.as_str()));
        if self.segments.is_some() {
            header.push("segment");
        }
        w.write_record(&header).map_err(csv_err)?;
        for (k, t) in self.times.iter().enumerate() {
            let mut row = vec![format!("{t:.10}")];
            row.extend(self.columns.iter().map(|(_, v)| format!("{:.12}", v[k])));
            if let Some(seg) = &self.segments {
                row.push(seg[k].to_string());
            }
            w.write_record(&row).map_err(csv_err)?;
        }
        let body = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        out.push_str(std::str::from_utf8(&body).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let metadata = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .filter_map(|l| {
                let (k, v) = l.trim_start_matches('#').split_once('=')?;
                Some((k.trim().to_string(), v.trim().to_string()))
            })
            .collect();
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let header: Vec<String> = r.headers().map_err(csv_err)?.iter().map(str::to_string).collect();
        if header.first().map(String::as_str) != Some("t") {
            return Err(Error::Config("csv: first column must be `t`".into()));
        }
        let has_segment = header.last().map(String::as_str) == Some("segment");
        let n_cols = header.len() - 1 - has_segment as usize;
        let mut times = Vec::new();
        let mut columns: Vec<(String, Vec<f64>)> = header[1..=n_cols].iter().map(|n| (n.clone(), Vec::new())).collect();
        let mut segments = has_segment.then(Vec::new);
        for rec in r.records() {
            let rec = rec.map_err(csv_err)?;
            let row = times.len() + 1;
            let num = |i: usize| -> Result<f64> {
                rec.get(i)
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| Error::Config(format!("csv: bad number in row {row}")))
            };
            times.push(num(0)?);
            for (c, col) in columns.iter_mut().enumerate() {
                col.1.push(num(c + 1)?);
            }
            if let Some(seg) = &mut segments {
                seg.push(match rec.get(n_cols + 1) {
                    Some("free") => Segment::Free,
                    Some("in_pulse") => Segment::InPulse,
                    other => return Err(Error::Config(format!("csv: bad segment tag {other:?}"))),
                });
            }
        }
        Ok(Self {
            metadata,
            times,
            columns,
            segments,
        })
    }

    /// Index of the sample at `t`, if one lies within `1e-9`.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let i = self.times.partition_point(|&x| x < t - 1e-9);
        (i < self.times.len() && (self.times[i] - t).abs() <= 1e-9).then_some(i)
    }

    pub fn is_free_sample(&self, k: usize) -> bool {
        self.segments.as_ref().is_none_or(|s| s[k] == Segment::Free)
    }

    /// Terminal value of every column.
    pub fn terminal(&self) -> BTreeMap<String, f64> {
        self.columns
            .iter()
            .map(|(n, v)| (n.clone(), *v.last().unwrap_or(&f64::NAN)))
            .collect()
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}
