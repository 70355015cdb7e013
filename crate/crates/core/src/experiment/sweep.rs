//! Terminal fidelities over a parameter grid.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::decoupling::{DdRecursion, DdSchedule};
use crate::error::{Error, Result};
use crate::finite::{FiniteDdRecursion, FinitePulseSchedule};
use crate::free::fidelity_free;
use crate::model::{ModelParams, OddParityState};
use crate::zeno::{zeno_fidelity, ZenoSchedule};

pub const DEFAULT_MAX_CELLS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub enum RateAxis {
    Omega(Vec<f64>),
    R(Vec<f64>),
}

/// Axis values per coordinate. `None` uses the case-1 default for that
/// coordinate; `Some(vec![])` yields an empty table. The Zeno interval
/// follows `tau` unless `delta_t` is given.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub lambda: Option<Vec<f64>>,
    pub rate: Option<RateAxis>,
    pub tau: Option<Vec<f64>>,
    pub delta_t: Option<Vec<f64>>,
    pub n_duty: Option<Vec<u32>>,
    pub t_max: Option<Vec<f64>>,
    pub max_cells: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            lambda: None,
            rate: None,
            tau: None,
            delta_t: None,
            n_duty: None,
            t_max: None,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub lambda: f64,
    /// Omega or R, whichever the grid sweeps.
    pub rate: f64,
    pub tau: f64,
    pub delta_t: f64,
    pub n_duty: Option<u32>,
    pub t_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub cell: SweepCell,
    pub f_free: f64,
    pub f_zeno: f64,
    pub f_dd: f64,
    pub f_finite: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rate_is_r: bool,
    pub has_n_duty: bool,
    pub rows: Vec<SweepRow>,
}

fn sorted<T: Copy + PartialOrd>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite axis values"));
    v.dedup();
    v
}

fn check_axis(name: &str, v: &[f64]) -> Result<()> {
    match v.iter().find(|x| !x.is_finite()) {
        Some(x) => Err(Error::Config(format!("sweep: non-finite {name} value {x}"))),
        None => Ok(()),
    }
}

impl SweepGrid {
    /// Cells in lexicographic order of `(lambda, rate, tau, delta_t, n_duty, t_max)`.
    pub fn cells(&self) -> Result<Vec<SweepCell>> {
        let one = |axis: &Option<Vec<f64>>, default: f64, name: &str| -> Result<Vec<f64>> {
            match axis {
                Some(v) => {
                    check_axis(name, v)?;
                    Ok(sorted(v))
                }
                None => Ok(vec![default]),
            }
        };
        let lambdas = one(&self.lambda, 2.0, "lambda")?;
        let rates = match &self.rate {
            Some(RateAxis::Omega(v)) | Some(RateAxis::R(v)) => {
                check_axis("rate", v)?;
                sorted(v)
            }
            None => vec![1.0],
        };
        let taus = one(&self.tau, 0.1, "tau")?;
        let deltas: Option<Vec<f64>> = self
            .delta_t
            .as_ref()
            .map(|v| one(&Some(v.clone()), 0.0, "delta_t"))
            .transpose()?;
        let ns: Vec<Option<u32>> = match &self.n_duty {
            Some(v) => sorted(v).into_iter().map(Some).collect(),
            None => vec![None],
        };
        let t_maxes = one(&self.t_max, 1.0, "t_max")?;

        let total = [
            lambdas.len(),
            rates.len(),
            taus.len(),
            deltas.as_ref().map_or(1, Vec::len),
            ns.len(),
            t_maxes.len(),
        ]
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .unwrap_or(usize::MAX);
        if total > self.max_cells {
            return Err(Error::Config(format!(
                "sweep has {total} cells, more than the cap of {}",
                self.max_cells
            )));
        }

        let mut cells = Vec::with_capacity(total);
        for &lambda in &lambdas {
            for &rate in &rates {
                for &tau in &taus {
                    let ds = deltas.clone().unwrap_or_else(|| vec![tau]);
                    for &delta_t in &ds {
                        for &n_duty in &ns {
                            for &t_max in &t_maxes {
                                cells.push(SweepCell {
                                    lambda,
                                    rate,
                                    tau,
                                    delta_t,
                                    n_duty,
                                    t_max,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(cells)
    }
}

fn eval_cell(cell: &SweepCell, rate_is_r: bool) -> Result<SweepRow> {
    let params = if rate_is_r {
        ModelParams::from_lambda_r(cell.lambda, cell.rate)?
    } else {
        ModelParams::from_lambda_omega(cell.lambda, cell.rate)?
    };
    if !(cell.t_max.is_finite() && cell.t_max >= 0.0) {
        return Err(Error::Config(format!("sweep: t_max must be >= 0, got {}", cell.t_max)));
    }
    let state = OddParityState::superradiant();
    let t = cell.t_max;
    let dd = DdSchedule::new(cell.tau)?;
    let f_finite = match cell.n_duty {
        Some(n) => {
            let sched = FinitePulseSchedule::new(cell.tau, n)?;
            Some(FiniteDdRecursion::new(params, sched, t)?.fidelity(&state, t)?.0)
        }
        None => None,
    };
    Ok(SweepRow {
        cell: *cell,
        f_free: fidelity_free(&state, t, &params)?,
        f_zeno: zeno_fidelity(&state, t, &ZenoSchedule::new(cell.delta_t)?, &params)?,
        f_dd: DdRecursion::new(params, dd, t).fidelity(&state, t)?,
        f_finite,
    })
}

/// Evaluates every cell independently; row order is the cell order
/// regardless of how many workers run.
pub fn run_sweep(grid: &SweepGrid) -> Result<SweepTable> {
    let cells = grid.cells()?;
    let rate_is_r = matches!(grid.rate, Some(RateAxis::R(_)));
    #[cfg(feature = "parallel")]
    let rows: Result<Vec<SweepRow>> = cells.par_iter().map(|c| eval_cell(c, rate_is_r)).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Result<Vec<SweepRow>> = cells.iter().map(|c| eval_cell(c, rate_is_r)).collect();
    Ok(SweepTable {
        rate_is_r,
        has_n_duty: grid.n_duty.is_some(),
        rows: rows?,
    })
}

impl SweepTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["lambda", if self.rate_is_r { "R" } else { "omega" }, "tau", "delta_t"];
        if self.has_n_duty {
            header.push("n_duty");
        }
        header.extend(["t_max", "F_free", "F_zeno", "F_dd"]);
        if self.has_n_duty {
            header.push("F_ddN");
        }
        let err = |e: csv::Error| Error::Config(format!("csv: {e}"));
        w.write_record(&header).map_err(err)?;
        for r in &self.rows {
            let c = &r.cell;
            let mut row = vec![
                c.lambda.to_string(),
                c.rate.to_string(),
                c.tau.to_string(),
                c.delta_t.to_string(),
            ];
            if let Some(n) = c.n_duty {
                row.push(n.to_string());
            }
            row.push(c.t_max.to_string());
            row.extend([r.f_free, r.f_zeno, r.f_dd].iter().map(|f| format!("{f:.12}")));
            if let Some(f) = r.f_finite {
                row.push(format!("{f:.12}"));
            }
            w.write_record(&row).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_matches_case1() {
        let table = run_sweep(&SweepGrid::default()).unwrap();
        assert_eq!(table.rows.len(), 1);
        let r = table.rows[0];
        assert!((r.f_free - 0.798_230_909_494_735).abs() < 1e-12);
        assert!((r.f_zeno - 0.965_450_686_131_333_9).abs() < 1e-12);
        assert!((r.f_dd - 0.997_149_326_634_005_8).abs() < 1e-12);
    }

    #[test]
    fn dd_worsens_with_longer_intervals() {
        let grid = SweepGrid {
            tau: Some(vec![0.2, 0.05, 0.1]),
            ..SweepGrid::default()
        };
        let table = run_sweep(&grid).unwrap();
        let taus: Vec<f64> = table.rows.iter().map(|r| r.cell.tau).collect();
        assert_eq!(taus, [0.05, 0.1, 0.2]);
        assert!(table.rows.windows(2).all(|w| w[1].f_dd <= w[0].f_dd));
    }

    #[test]
    fn lexicographic_order() {
        let grid = SweepGrid {
            lambda: Some(vec![3.0, 2.0]),
            tau: Some(vec![0.2, 0.1]),
            n_duty: Some(vec![20, 10]),
            ..SweepGrid::default()
        };
        let cells = grid.cells().unwrap();
        let keys: Vec<(f64, f64, Option<u32>)> = cells.iter().map(|c| (c.lambda, c.tau, c.n_duty)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
        assert_eq!(cells.len(), 8);
        assert!(cells.iter().all(|c| c.delta_t == c.tau));
    }

    #[test]
    fn empty_axis_gives_empty_table() {
        let grid = SweepGrid {
            tau: Some(vec![]),
            ..SweepGrid::default()
        };
        let table = run_sweep(&grid).unwrap();
        assert!(table.rows.is_empty());
        assert_eq!(
            table.to_csv().unwrap(),
            "lambda,omega,tau,delta_t,t_max,F_free,F_zeno,F_dd\n"
        );
    }

    #[test]
    fn cap_is_enforced() {
        let grid = SweepGrid {
            tau: Some((1..=20).map(|k| k as f64 * 0.01).collect()),
            t_max: Some(vec![1.0, 2.0]),
            max_cells: 39,
            ..SweepGrid::default()
        };
        assert!(matches!(run_sweep(&grid), Err(Error::Config(_))));
    }

    #[test]
    fn finite_column_and_r_axis() {
        let grid = SweepGrid {
            rate: Some(RateAxis::R(vec![0.75f64.sqrt()])),
            tau: Some(vec![0.2]),
            n_duty: Some(vec![10]),
            ..SweepGrid::default()
        };
        let table = run_sweep(&grid).unwrap();
        let csv = table.to_csv().unwrap();
        assert!(csv.starts_with("lambda,R,tau,delta_t,n_duty,t_max,F_free,F_zeno,F_dd,F_ddN\n"));
        let f = table.rows[0].f_finite.unwrap();
        assert!((f - 0.988_377).abs() < 1e-5, "{f}");
    }

    #[test]
    fn bad_cells_propagate() {
        let grid = SweepGrid {
            rate: Some(RateAxis::Omega(vec![5.0])),
            ..SweepGrid::default()
        };
        assert!(run_sweep(&grid).is_err());
    }
}
