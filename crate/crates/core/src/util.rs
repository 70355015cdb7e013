/// Relative slack used when deciding whether `t` sits on a period boundary.
pub(crate) const SNAP_TOL: f64 = 1e-9;

/// Splits `t` into `n` whole periods plus a remainder in `[0, period)`,
/// snapping values within rounding of a boundary onto it.
pub(crate) fn split_period(t: f64, period: f64) -> (usize, f64) {
    let x = t / period;
    let mut n = x.floor();
    if x - n > 1.0 - SNAP_TOL {
        n += 1.0;
    }
    let rest = (t - n * period).max(0.0);
    (n as usize, rest)
}
