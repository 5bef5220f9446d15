//! Panel rows, panel construction, and date splits.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::market_data::{
    compute_forward_return, forward_fill_guarded, realized_vol, select_quote, QuoteRecord,
    FEATURE_COLUMNS, NUM_FEATURES,
};
use crate::{CoreError, Result};

/// Minimum usable days for a panel build.
pub const MIN_PANEL_DAYS: usize = 300;

/// One raw input day: direct feature values (the CSV schema). Derived
/// columns are computed by the builder, never read.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawRow {
    pub date: NaiveDate,
    pub iv_30d: Option<f64>,
    pub iv_91d: Option<f64>,
    pub iv_25d_put: Option<f64>,
    pub iv_25d_call: Option<f64>,
    pub vix: Option<f64>,
    pub y10: Option<f64>,
    pub spy_close: f64,
}

/// One raw input day as an option quote chain plus macro context.
#[derive(Debug, Clone)]
pub struct DayQuotes {
    pub date: NaiveDate,
    pub quotes: Vec<QuoteRecord>,
    pub vix: Option<f64>,
    pub y10: Option<f64>,
    pub spy_close: f64,
}

/// Raw input to the panel builder.
#[derive(Debug, Clone)]
pub enum RawInput {
    Rows(Vec<RawRow>),
    Quotes(Vec<DayQuotes>),
}

/// Fill and quote-selection parameters for panel construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuildSpec {
    /// Calendar-day staleness window for IV forward-fills.
    pub max_stale_days: i64,
    /// Tenor tolerance (days) for quote selection.
    pub tenor_tol: u32,
    /// Delta tolerance for quote selection.
    pub delta_tol: f64,
}

impl Default for BuildSpec {
    fn default() -> Self {
        // Three calendar days covers a weekend plus one holiday.
        Self {
            max_stale_days: 3,
            tenor_tol: 7,
            delta_tol: 0.1,
        }
    }
}

/// One finished panel day. Derived columns satisfy their defining
/// identities wherever inputs are present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelRow {
    pub date: NaiveDate,
    pub iv_30d: Option<f64>,
    pub iv_91d: Option<f64>,
    pub iv_25d_put: Option<f64>,
    pub iv_25d_call: Option<f64>,
    pub vix: Option<f64>,
    pub y10: Option<f64>,
    pub spy_close: f64,
    pub ts_slope: Option<f64>,
    pub skew: Option<f64>,
    pub rv_21d: Option<f64>,
    pub hvol_30d: Option<f64>,
    pub hvol_91d: Option<f64>,
    pub ret_fwd: Option<f64>,
}

impl PanelRow {
    /// Feature value by index in [`FEATURE_COLUMNS`] order.
    pub fn feature(&self, idx: usize) -> Option<f64> {
        match idx {
            0 => self.iv_30d,
            1 => self.iv_91d,
            2 => self.ts_slope,
            3 => self.iv_25d_put,
            4 => self.iv_25d_call,
            5 => self.skew,
            6 => self.vix,
            7 => self.y10,
            8 => self.rv_21d,
            9 => self.hvol_30d,
            10 => self.hvol_91d,
            _ => panic!("feature index {idx} out of range"),
        }
    }
}

/// Date-indexed feature panel. Rows are strictly increasing in date.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeaturePanel {
    pub rows: Vec<PanelRow>,
    /// (row index, column name) pairs that were forward-filled.
    pub fill_log: Vec<(usize, String)>,
}

impl FeaturePanel {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dates(&self) -> impl Iterator<Item = NaiveDate> + '_ {
        self.rows.iter().map(|r| r.date)
    }

    pub fn feature_names(&self) -> &'static [&'static str] {
        &FEATURE_COLUMNS
    }

    /// Column of feature `idx` across all rows.
    pub fn feature_column(&self, idx: usize) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.feature(idx)).collect()
    }
}

/// Train/validation/test boundary dates. A date lands in train iff
/// `date <= train_end`, in validation iff `train_end < date <= valid_end`,
/// in test otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_end: NaiveDate,
    pub valid_end: NaiveDate,
}

impl SplitSpec {
    pub fn validate(&self) -> Result<()> {
        if self.train_end >= self.valid_end {
            return Err(CoreError::InvalidConfig(format!(
                "train_end {} must precede valid_end {}",
                self.train_end, self.valid_end
            )));
        }
        Ok(())
    }
}

/// Build a panel from raw per-day inputs.
///
/// IV-family columns are forward-filled within the staleness window, derived
/// columns are computed, and at least [`MIN_PANEL_DAYS`] rows are required.
/// Deterministic given inputs.
pub fn build_panel(raw: &RawInput, spec: &BuildSpec) -> Result<FeaturePanel> {
    let rows = match raw {
        RawInput::Rows(rows) => rows.clone(),
        RawInput::Quotes(days) => reduce_quote_days(days, spec)?,
    };
    build_from_rows(rows, spec)
}

/// Reduce per-day quote chains to feature rows via tolerance selection.
///
/// Targets: 30d and 91d ATM calls (delta 0.50) for the term-structure
/// levels; 30d 25-delta put (-0.25) and call (0.25) for the skew inputs.
fn reduce_quote_days(days: &[DayQuotes], spec: &BuildSpec) -> Result<Vec<RawRow>> {
    let mut rows = Vec::with_capacity(days.len());
    for day in days {
        for q in &day.quotes {
            q.validate()?;
        }
        let calls: Vec<QuoteRecord> =
            day.quotes.iter().filter(|q| !q.is_put).cloned().collect();
        let puts: Vec<QuoteRecord> = day.quotes.iter().filter(|q| q.is_put).cloned().collect();
        let pick =
            |qs: &[QuoteRecord], tenor: u32, delta: f64| -> Option<f64> {
                select_quote(qs, tenor, delta, spec.tenor_tol, spec.delta_tol).map(|q| q.iv_mid)
            };
        rows.push(RawRow {
            date: day.date,
            iv_30d: pick(&calls, 30, 0.50),
            iv_91d: pick(&calls, 91, 0.50),
            iv_25d_put: pick(&puts, 30, -0.25),
            iv_25d_call: pick(&calls, 30, 0.25),
            vix: day.vix,
            y10: day.y10,
            spy_close: day.spy_close,
        });
    }
    Ok(rows)
}

fn build_from_rows(rows: Vec<RawRow>, spec: &BuildSpec) -> Result<FeaturePanel> {
    if rows.len() < MIN_PANEL_DAYS {
        return Err(CoreError::InsufficientData(format!(
            "panel build needs at least {MIN_PANEL_DAYS} usable days, got {}",
            rows.len()
        )));
    }
    for pair in rows.windows(2) {
        if pair[0].date >= pair[1].date {
            return Err(CoreError::InvalidInput(format!(
                "dates must be strictly increasing: {} then {}",
                pair[0].date, pair[1].date
            )));
        }
    }

    let dates: Vec<NaiveDate> = rows.iter().map(|r| r.date).collect();
    let mut fill_log = Vec::new();
    let mut fill = |name: &str, values: Vec<Option<f64>>| -> Vec<Option<f64>> {
        let series: Vec<(NaiveDate, Option<f64>)> =
            dates.iter().copied().zip(values).collect();
        let (out, filled) = forward_fill_guarded(&series, spec.max_stale_days);
        for i in filled {
            fill_log.push((i, name.to_string()));
        }
        out
    };

    // Only the IV family is staleness-filled; macro columns are left as-is.
    let iv_30d = fill("iv_30d", rows.iter().map(|r| r.iv_30d).collect());
    let iv_91d = fill("iv_91d", rows.iter().map(|r| r.iv_91d).collect());
    let iv_25d_put = fill("iv_25d_put", rows.iter().map(|r| r.iv_25d_put).collect());
    let iv_25d_call = fill("iv_25d_call", rows.iter().map(|r| r.iv_25d_call).collect());

    let prices: Vec<(NaiveDate, f64)> = rows.iter().map(|r| (r.date, r.spy_close)).collect();
    let ret_fwd = compute_forward_return(&prices)?;

    // Trailing daily returns, known at t: r_t = P_t/P_{t-1} - 1. The first
    // row has no trailing return; vols warm up from row `window`.
    let mut trailing = vec![f64::NAN; rows.len()];
    for t in 1..rows.len() {
        trailing[t] = prices[t].1 / prices[t - 1].1 - 1.0;
    }
    let vol_col = |window: usize| -> Vec<Option<f64>> {
        if rows.len() < 2 {
            return vec![None; rows.len()];
        }
        let rv = realized_vol(&trailing[1..], window);
        let mut out = vec![None; rows.len()];
        for (i, v) in rv.into_iter().enumerate() {
            out[i + 1] = v;
        }
        out
    };
    let rv_21d = vol_col(21);
    let hvol_30d = vol_col(30);
    let hvol_91d = vol_col(91);

    let panel_rows = rows
        .iter()
        .enumerate()
        .map(|(t, r)| {
            let iv30 = iv_30d[t];
            let iv91 = iv_91d[t];
            let put = iv_25d_put[t];
            let call = iv_25d_call[t];
            PanelRow {
                date: r.date,
                iv_30d: iv30,
                iv_91d: iv91,
                iv_25d_put: put,
                iv_25d_call: call,
                vix: r.vix,
                y10: r.y10,
                spy_close: r.spy_close,
                ts_slope: match (iv91, iv30) {
                    (Some(a), Some(b)) => Some(a - b),
                    _ => None,
                },
                skew: match (put, call) {
                    (Some(p), Some(c)) => Some(p - c),
                    _ => None,
                },
                rv_21d: rv_21d[t],
                hvol_30d: hvol_30d[t],
                hvol_91d: hvol_91d[t],
                ret_fwd: ret_fwd[t],
            }
        })
        .collect();

    Ok(FeaturePanel {
        rows: panel_rows,
        fill_log,
    })
}

/// Partition a panel into train/validation/test by date. Order is
/// preserved; every row lands in exactly one split.
pub fn split_panel(
    panel: &FeaturePanel,
    spec: &SplitSpec,
) -> Result<(FeaturePanel, FeaturePanel, FeaturePanel)> {
    spec.validate()?;
    let mut train = Vec::new();
    let mut valid = Vec::new();
    let mut test = Vec::new();
    for row in &panel.rows {
        if row.date <= spec.train_end {
            train.push(row.clone());
        } else if row.date <= spec.valid_end {
            valid.push(row.clone());
        } else {
            test.push(row.clone());
        }
    }
    for (name, rows) in [("train", &train), ("valid", &valid), ("test", &test)] {
        if rows.is_empty() {
            return Err(CoreError::InvalidInput(format!(
                "split '{name}' is empty for spec {spec:?}"
            )));
        }
    }
    let wrap = |rows: Vec<PanelRow>| FeaturePanel {
        rows,
        fill_log: Vec::new(),
    };
    Ok((wrap(train), wrap(valid), wrap(test)))
}

/// Presence-aware feature matrix accessor used by normalization.
pub(crate) fn feature_matrix(panel: &FeaturePanel) -> Vec<[Option<f64>; NUM_FEATURES]> {
    panel
        .rows
        .iter()
        .map(|r| {
            let mut row = [None; NUM_FEATURES];
            for (i, slot) in row.iter_mut().enumerate() {
                *slot = r.feature(i);
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market_data::{generate_synthetic, SynthConfig};

    fn raw_rows(n: usize) -> Vec<RawRow> {
        let start = NaiveDate::from_ymd_opt(2015, 1, 1).unwrap();
        (0..n)
            .map(|i| RawRow {
                date: start + chrono::Days::new(i as u64),
                iv_30d: Some(0.2 + 0.001 * (i % 7) as f64),
                iv_91d: Some(0.22),
                iv_25d_put: Some(0.25),
                iv_25d_call: Some(0.21),
                vix: Some(18.0),
                y10: Some(0.03),
                spy_close: 100.0 * (1.0 + 0.0002 * i as f64),
            })
            .collect()
    }

    #[test]
    fn synthetic_build_row_count_and_last_ret() {
        let cfg = SynthConfig {
            n_days: 1000,
            seed: 7,
            ..SynthConfig::default()
        };
        let panel = generate_synthetic(&cfg).unwrap();
        assert_eq!(panel.len(), 1000);
        assert!(panel.rows.last().unwrap().ret_fwd.is_none());
        assert!(panel.rows[0].ret_fwd.is_some());
    }

    #[test]
    fn iv_gap_filled_and_flagged() {
        let mut rows = raw_rows(400);
        rows[10].iv_30d = None;
        rows[11].iv_30d = None;
        let panel = build_panel(&RawInput::Rows(rows.clone()), &BuildSpec::default()).unwrap();
        assert_eq!(panel.rows[10].iv_30d, rows[9].iv_30d);
        assert_eq!(panel.rows[11].iv_30d, rows[9].iv_30d);
        assert!(panel.fill_log.contains(&(10, "iv_30d".to_string())));
        assert!(panel.fill_log.contains(&(11, "iv_30d".to_string())));
    }

    #[test]
    fn stale_gap_not_filled() {
        let mut rows = raw_rows(400);
        for i in 10..15 {
            rows[i].iv_91d = None;
        }
        let panel = build_panel(&RawInput::Rows(rows), &BuildSpec::default()).unwrap();
        // days 10..13 are within 3 calendar days of day 9; day 14 is not
        assert!(panel.rows[12].iv_91d.is_some());
        assert!(panel.rows[13].iv_91d.is_none());
        assert!(panel.rows[13].ts_slope.is_none());
        assert!(panel.rows[14].iv_91d.is_none());
    }

    #[test]
    fn empty_input_is_insufficient() {
        let err = build_panel(&RawInput::Rows(Vec::new()), &BuildSpec::default()).unwrap_err();
        assert!(matches!(err, CoreError::InsufficientData(_)));
    }

    #[test]
    fn derived_identities_hold() {
        let panel = build_panel(&RawInput::Rows(raw_rows(400)), &BuildSpec::default()).unwrap();
        for r in &panel.rows {
            if let (Some(a), Some(b), Some(s)) = (r.iv_91d, r.iv_30d, r.ts_slope) {
                assert_eq!(s, a - b);
            }
            if let (Some(p), Some(c), Some(s)) = (r.iv_25d_put, r.iv_25d_call, r.skew) {
                assert_eq!(s, p - c);
            }
        }
    }

    #[test]
    fn no_lookahead_in_features() {
        let rows = raw_rows(400);
        let t = 200;
        let base = build_panel(&RawInput::Rows(rows.clone()), &BuildSpec::default()).unwrap();
        let mut garbled = rows;
        for row in garbled.iter_mut().skip(t + 1) {
            row.iv_30d = Some(9.9);
            row.iv_91d = Some(9.9);
            row.iv_25d_put = None;
            row.iv_25d_call = Some(-3.0);
            row.vix = Some(999.0);
            row.y10 = None;
        }
        let after = build_panel(&RawInput::Rows(garbled), &BuildSpec::default()).unwrap();
        for i in 0..=t {
            assert_eq!(base.rows[i], after.rows[i], "row {i} changed");
        }
    }

    #[test]
    fn split_paper_dates() {
        let start = NaiveDate::from_ymd_opt(2005, 1, 3).unwrap();
        let rows: Vec<RawRow> = (0..7000)
            .map(|i| RawRow {
                date: start + chrono::Days::new(i as u64),
                spy_close: 100.0,
                iv_30d: None,
                iv_91d: None,
                iv_25d_put: None,
                iv_25d_call: None,
                vix: None,
                y10: None,
            })
            .collect();
        let panel = build_panel(&RawInput::Rows(rows), &BuildSpec::default()).unwrap();
        let spec = SplitSpec {
            train_end: NaiveDate::from_ymd_opt(2017, 12, 31).unwrap(),
            valid_end: NaiveDate::from_ymd_opt(2019, 12, 31).unwrap(),
        };
        let (train, valid, test) = split_panel(&panel, &spec).unwrap();
        assert_eq!(train.len() + valid.len() + test.len(), panel.len());
        assert!(train.rows.last().unwrap().date <= spec.train_end);
        assert!(valid.rows.first().unwrap().date.format("%Y").to_string() == "2018");
        assert!(valid.rows.last().unwrap().date <= spec.valid_end);
        assert_eq!(
            test.rows.first().unwrap().date.format("%Y").to_string(),
            "2020"
        );
    }

    #[test]
    fn split_boundary_goes_to_train() {
        let rows = raw_rows(400);
        let boundary = rows[350].date;
        let panel = build_panel(&RawInput::Rows(rows), &BuildSpec::default()).unwrap();
        let spec = SplitSpec {
            train_end: boundary,
            valid_end: boundary + chrono::Days::new(20),
        };
        let (train, _, _) = split_panel(&panel, &spec).unwrap();
        assert_eq!(train.rows.last().unwrap().date, boundary);
    }

    #[test]
    fn empty_split_is_named() {
        let rows = raw_rows(400);
        let last = rows.last().unwrap().date;
        let panel = build_panel(&RawInput::Rows(rows), &BuildSpec::default()).unwrap();
        let spec = SplitSpec {
            train_end: last + chrono::Days::new(1),
            valid_end: last + chrono::Days::new(2),
        };
        let err = split_panel(&panel, &spec).unwrap_err();
        assert!(err.to_string().contains("valid"));
    }

    #[test]
    fn quote_chain_reduction() {
        let start = NaiveDate::from_ymd_opt(2015, 1, 1).unwrap();
        let days: Vec<DayQuotes> = (0..320)
            .map(|i| {
                let date = start + chrono::Days::new(i as u64);
                let q = |tenor: u32, delta: f64, iv: f64, spread: f64| QuoteRecord {
                    date,
                    tenor_days: tenor,
                    delta,
                    iv_mid: iv,
                    spread,
                    is_put: delta < 0.0,
                };
                DayQuotes {
                    date,
                    quotes: vec![
                        q(30, 0.50, 0.20, 0.1),
                        q(30, 0.48, 0.21, 0.05),
                        q(91, 0.50, 0.22, 0.1),
                        q(30, -0.25, 0.26, 0.1),
                        q(30, 0.25, 0.19, 0.1),
                        q(400, 0.50, 0.30, 0.1),
                    ],
                    vix: Some(17.0),
                    y10: Some(0.025),
                    spy_close: 100.0 + i as f64 * 0.01,
                }
            })
            .collect();
        let panel = build_panel(&RawInput::Quotes(days), &BuildSpec::default()).unwrap();
        let r = &panel.rows[0];
        assert_eq!(r.iv_30d, Some(0.20)); // exact-delta match beats lower spread
        assert_eq!(r.iv_91d, Some(0.22));
        assert_eq!(r.iv_25d_put, Some(0.26));
        assert_eq!(r.iv_25d_call, Some(0.19));
        assert_eq!(r.skew, Some(0.26 - 0.19));
    }
}
