//! Option quote records and tolerance-based quote selection.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

/// One option quote observed on a given day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuoteRecord {
    pub date: NaiveDate,
    /// Days to expiry, >= 1.
    pub tenor_days: u32,
    /// Signed delta in [-1, 1] (puts negative).
    pub delta: f64,
    /// Mid implied volatility as a fraction, >= 0.
    pub iv_mid: f64,
    /// Quoted spread in price units, >= 0.
    pub spread: f64,
    pub is_put: bool,
}

impl QuoteRecord {
    pub fn validate(&self) -> crate::Result<()> {
        if self.iv_mid < 0.0 || !self.iv_mid.is_finite() {
            return Err(crate::CoreError::InvalidInput(format!(
                "quote {}: iv_mid must be finite and >= 0, got {}",
                self.date, self.iv_mid
            )));
        }
        if self.spread < 0.0 || !self.spread.is_finite() {
            return Err(crate::CoreError::InvalidInput(format!(
                "quote {}: spread must be finite and >= 0, got {}",
                self.date, self.spread
            )));
        }
        if self.tenor_days < 1 {
            return Err(crate::CoreError::InvalidInput(format!(
                "quote {}: tenor_days must be >= 1",
                self.date
            )));
        }
        if self.delta.abs() > 1.0 || !self.delta.is_finite() {
            return Err(crate::CoreError::InvalidInput(format!(
                "quote {}: |delta| must be <= 1, got {}",
                self.date, self.delta
            )));
        }
        Ok(())
    }
}

/// Pick the quote closest to a (tenor, delta) target within tolerances.
///
/// Candidates must lie within `tenor_tol` days of `target_tenor` and within
/// `delta_tol` of `target_delta`. Among candidates the winner has minimal
/// |delta - target_delta|; ties break by minimal spread, then by minimal
/// |tenor - target_tenor|, then by earliest input order. `None` means the
/// feature is missing for this day.
pub fn select_quote(
    quotes: &[QuoteRecord],
    target_tenor: u32,
    target_delta: f64,
    tenor_tol: u32,
    delta_tol: f64,
) -> Option<QuoteRecord> {
    debug_assert!(tenor_tol > 0 && delta_tol > 0.0);
    let mut best: Option<(usize, &QuoteRecord)> = None;
    for (i, q) in quotes.iter().enumerate() {
        let tenor_err = (q.tenor_days as i64 - target_tenor as i64).unsigned_abs();
        let delta_err = (q.delta - target_delta).abs();
        if tenor_err > tenor_tol as u64 || delta_err > delta_tol {
            continue;
        }
        let better = match best {
            None => true,
            Some((_, b)) => {
                let b_delta_err = (b.delta - target_delta).abs();
                let b_tenor_err = (b.tenor_days as i64 - target_tenor as i64).unsigned_abs();
                // Strict ordering: delta closeness, spread, tenor closeness,
                // input order (earlier wins, so strict < on each key).
                (delta_err, q.spread, tenor_err) < (b_delta_err, b.spread, b_tenor_err)
            }
        };
        if better {
            best = Some((i, q));
        }
    }
    best.map(|(_, q)| q.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quote(tenor: u32, delta: f64, spread: f64) -> QuoteRecord {
        QuoteRecord {
            date: NaiveDate::from_ymd_opt(2020, 1, 2).unwrap(),
            tenor_days: tenor,
            delta,
            iv_mid: 0.2,
            spread,
            is_put: delta < 0.0,
        }
    }

    #[test]
    fn spread_breaks_delta_ties() {
        let quotes = vec![quote(30, 0.26, 0.5), quote(30, 0.24, 0.2)];
        let got = select_quote(&quotes, 30, 0.25, 5, 0.05).unwrap();
        assert_eq!(got.spread, 0.2);
    }

    #[test]
    fn single_candidate_is_returned() {
        let quotes = vec![quote(28, 0.27, 0.3)];
        let got = select_quote(&quotes, 30, 0.25, 5, 0.05).unwrap();
        assert_eq!(got, quotes[0]);
    }

    #[test]
    fn no_candidate_within_delta_tol() {
        let quotes = vec![quote(30, 0.40, 0.1), quote(30, 0.10, 0.1)];
        assert!(select_quote(&quotes, 30, 0.25, 5, 0.05).is_none());
    }

    #[test]
    fn tenor_closeness_then_input_order() {
        // Equal delta error and equal spread: closer tenor wins.
        let quotes = vec![quote(35, 0.25, 0.1), quote(31, 0.25, 0.1)];
        let got = select_quote(&quotes, 30, 0.25, 10, 0.05).unwrap();
        assert_eq!(got.tenor_days, 31);

        // Fully tied: earliest input order wins.
        let a = quote(32, 0.25, 0.1);
        let mut b = quote(32, 0.25, 0.1);
        b.iv_mid = 0.9;
        let got = select_quote(&[a.clone(), b], 30, 0.25, 10, 0.05).unwrap();
        assert_eq!(got, a);
    }

    #[test]
    fn tenor_tol_excludes() {
        let quotes = vec![quote(60, 0.25, 0.1)];
        assert!(select_quote(&quotes, 30, 0.25, 5, 0.05).is_none());
    }
}
