//! Daily feature panel: construction, validation, splitting, normalization.
//!
//! The panel is the single source of truth for the simulator and the
//! analytics: one row per trading day carrying the option-surface and macro
//! features plus the leak-free forward return `ret_fwd` (next-day simple
//! return of `spy_close`, missing on the last row).
//!
//! Raw inputs arrive either as per-day feature rows (the CSV schema) or as
//! per-day option quote chains reduced through tolerance-based quote
//! selection. Derived columns (`ts_slope`, `skew`, realized vols, `ret_fwd`)
//! are always computed here and never read from input.

mod normalize;
mod panel;
mod quotes;
mod series;
mod synth;

pub mod io;

pub use normalize::{apply_norm, fit_norm_stats, NormStats};
pub use panel::{
    build_panel, split_panel, BuildSpec, DayQuotes, FeaturePanel, PanelRow, RawInput, RawRow,
    SplitSpec,
};
pub use quotes::{select_quote, QuoteRecord};
pub use series::{compute_forward_return, forward_fill_guarded, realized_vol};
pub use synth::{generate_synthetic, OuParams, SynthConfig};

/// Feature columns, in observation order. `spy_close` is the price backbone
/// and `ret_fwd` the target; neither is a feature.
pub const FEATURE_COLUMNS: [&str; 11] = [
    "iv_30d",
    "iv_91d",
    "ts_slope",
    "iv_25d_put",
    "iv_25d_call",
    "skew",
    "vix",
    "y10",
    "rv_21d",
    "hvol_30d",
    "hvol_91d",
];

/// Number of features per panel row.
pub const NUM_FEATURES: usize = FEATURE_COLUMNS.len();

/// Trading days per year used for annualization throughout the crate.
pub const TRADING_DAYS: f64 = 252.0;
