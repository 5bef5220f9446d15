//! Date-indexed series helpers: guarded forward-fill, forward returns,
//! trailing realized volatility.

use chrono::NaiveDate;

use crate::market_data::TRADING_DAYS;
use crate::{CoreError, Result};

/// Forward-fill missing values, but only across calendar gaps of at most
/// `max_stale_days` from the most recent present value. Present values are
/// never touched; stale gaps stay missing.
///
/// Returns the filled values plus the indices that were filled.
pub fn forward_fill_guarded(
    series: &[(NaiveDate, Option<f64>)],
    max_stale_days: i64,
) -> (Vec<Option<f64>>, Vec<usize>) {
    let mut out = Vec::with_capacity(series.len());
    let mut filled = Vec::new();
    let mut last: Option<(NaiveDate, f64)> = None;
    for (i, (date, value)) in series.iter().enumerate() {
        match value {
            Some(v) => {
                last = Some((*date, *v));
                out.push(Some(*v));
            }
            None => match last {
                Some((last_date, v))
                    if (*date - last_date).num_days() <= max_stale_days =>
                {
                    out.push(Some(v));
                    filled.push(i);
                }
                _ => out.push(None),
            },
        }
    }
    (out, filled)
}

/// Next-day simple return aligned to the position date:
/// `ret_fwd[t] = P_{t+1}/P_t - 1`, missing on the last row.
pub fn compute_forward_return(prices: &[(NaiveDate, f64)]) -> Result<Vec<Option<f64>>> {
    for (date, p) in prices {
        if !(*p > 0.0) || !p.is_finite() {
            return Err(CoreError::InvalidInput(format!(
                "non-positive price {p} on {date}"
            )));
        }
    }
    let mut out = Vec::with_capacity(prices.len());
    for t in 0..prices.len() {
        if t + 1 < prices.len() {
            out.push(Some(prices[t + 1].1 / prices[t].1 - 1.0));
        } else {
            out.push(None);
        }
    }
    Ok(out)
}

/// Trailing sample standard deviation of the last `window` returns,
/// annualized by sqrt(252). Missing until `window` observations exist.
pub fn realized_vol(returns: &[f64], window: usize) -> Vec<Option<f64>> {
    assert!(window >= 2, "realized_vol window must be >= 2");
    let mut out = vec![None; returns.len()];
    for t in 0..returns.len() {
        if t + 1 < window {
            continue;
        }
        let slice = &returns[t + 1 - window..=t];
        let mean = slice.iter().sum::<f64>() / window as f64;
        let var =
            slice.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / (window as f64 - 1.0);
        out[t] = Some(var.sqrt() * TRADING_DAYS.sqrt());
    }
    out
}
