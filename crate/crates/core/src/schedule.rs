use std::fmt;
use std::str::FromStr;

use crate::decoupling::DdSchedule;
use crate::error::{Error, Result};
use crate::finite::FinitePulseSchedule;
use crate::zeno::ZenoSchedule;

/// Protection protocol applied during an evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseSchedule {
    None,
    Zeno(ZenoSchedule),
    Dd(DdSchedule),
    DdFinite(FinitePulseSchedule),
}

impl PulseSchedule {
    /// CSV column carrying this protocol's fidelity.
    pub fn column_name(&self) -> String {
        match self {
            PulseSchedule::None => "F_free".into(),
            PulseSchedule::Zeno(_) => "F_zeno".into(),
            PulseSchedule::Dd(_) => "F_dd".into(),
            PulseSchedule::DdFinite(s) => format!("F_ddN{}", s.n_duty()),
        }
    }

    /// Instants where the protocol acts, as a period and an in-period offset.
    pub(crate) fn boundaries(&self) -> Vec<(f64, f64)> {
        match self {
            PulseSchedule::None => vec![],
            PulseSchedule::Zeno(z) => vec![(z.delta_t(), 0.0)],
            PulseSchedule::Dd(d) => vec![(d.tau(), 0.0)],
            PulseSchedule::DdFinite(f) => vec![(f.tau(), 0.0), (f.tau(), f.free_len())],
        }
    }
}

impl fmt::Display for PulseSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PulseSchedule::None => write!(f, "free"),
            PulseSchedule::Zeno(z) => write!(f, "zeno({})", z.delta_t()),
            PulseSchedule::Dd(d) => write!(f, "dd({})", d.tau()),
            PulseSchedule::DdFinite(s) => write!(f, "dd-finite({}, {})", s.tau(), s.n_duty()),
        }
    }
}

impl FromStr for PulseSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("unrecognized schedule `{s}`"));
        if s == "free" || s == "none" {
            return Ok(PulseSchedule::None);
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args: Vec<&str> = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .split(',')
            .map(str::trim)
            .collect();
        let num = |i: usize| -> Result<f64> { args.get(i).and_then(|a| a.parse::<f64>().ok()).ok_or_else(bad) };
        match (name.trim(), args.len()) {
            ("zeno", 1) => Ok(PulseSchedule::Zeno(ZenoSchedule::new(num(0)?)?)),
            ("dd", 1) => Ok(PulseSchedule::Dd(DdSchedule::new(num(0)?)?)),
            ("dd-finite", 2) => {
                let n: u32 = args[1].parse().map_err(|_| bad())?;
                Ok(PulseSchedule::DdFinite(FinitePulseSchedule::new(num(0)?, n)?))
            }
            _ => Err(bad()),
        }
    }
}
