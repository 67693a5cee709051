use crate::error::Error;

/// Interior boundaries splitting `t_max` evaluations into `intervals` equal
/// spans: the rounded values of `k * t_max / intervals` for `k = 1..intervals`.
///
/// The returned vector has `intervals - 1` entries; the final interval always
/// ends at `t_max` itself, which is not listed. With `t_max = 110` and 11
/// intervals the boundaries are 10, 20, ..., 100.
pub fn equal_interval_boundaries(t_max: u64, intervals: usize) -> Result<Vec<u64>, Error> {
    if intervals == 0 {
        return Err(Error::param("intervals", "must be at least 1"));
    }
    if t_max == 0 {
        return Err(Error::param("t_max", "must be at least 1"));
    }
    let k_total = intervals as f64;
    Ok((1..intervals)
        .map(|k| (k as f64 * t_max as f64 / k_total).round() as u64)
        .collect())
}
