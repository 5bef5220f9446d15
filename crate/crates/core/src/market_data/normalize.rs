//! Train-split feature normalization.

use serde::{Deserialize, Serialize};

use crate::market_data::panel::feature_matrix;
use crate::market_data::{FeaturePanel, FEATURE_COLUMNS, NUM_FEATURES};
use crate::{CoreError, Result};

/// Per-feature mean/std fitted on the training split only, plus the clip
/// bound applied after standardization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormStats {
    pub features: Vec<String>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    /// Features whose train-split std was zero or undefined; their std is
    /// pinned to 1 so normalization stays total.
    pub degenerate: Vec<bool>,
    pub clip_bound: f64,
}

/// Fit per-feature mean and sample standard deviation over present values
/// of the training split. Zero/undefined stds become 1 and are flagged.
pub fn fit_norm_stats(train: &FeaturePanel, clip_bound: f64) -> Result<NormStats> {
    if train.is_empty() {
        return Err(CoreError::InvalidInput(
            "cannot fit normalization on an empty split".into(),
        ));
    }
    if !(clip_bound > 0.0) {
        return Err(CoreError::InvalidConfig(format!(
            "clip_bound must be positive, got {clip_bound}"
        )));
    }
    let matrix = feature_matrix(train);
    let mut mean = vec![0.0; NUM_FEATURES];
    let mut std = vec![1.0; NUM_FEATURES];
    let mut degenerate = vec![false; NUM_FEATURES];
    for f in 0..NUM_FEATURES {
        let values: Vec<f64> = matrix
            .iter()
            .filter_map(|row| row[f])
            .filter(|v| v.is_finite())
            .collect();
        if values.is_empty() {
            degenerate[f] = true;
            continue;
        }
        let m = values.iter().sum::<f64>() / values.len() as f64;
        mean[f] = m;
        if values.len() < 2 {
            degenerate[f] = true;
            continue;
        }
        let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>()
            / (values.len() as f64 - 1.0);
        let s = var.sqrt();
        if s > 0.0 {
            std[f] = s;
        } else {
            degenerate[f] = true;
        }
    }
    Ok(NormStats {
        features: FEATURE_COLUMNS.iter().map(|s| s.to_string()).collect(),
        mean,
        std,
        degenerate,
        clip_bound,
    })
}

/// Standardize a panel into a dense row-major matrix of shape
/// `rows x NUM_FEATURES`: `z = clip((x - mean)/std, ±clip_bound)` with
/// missing or non-finite entries mapped to 0.
pub fn apply_norm(panel: &FeaturePanel, stats: &NormStats) -> Vec<f64> {
    let mut out = Vec::with_capacity(panel.len() * NUM_FEATURES);
    for row in &panel.rows {
        for f in 0..NUM_FEATURES {
            let z = match row.feature(f) {
                Some(x) if x.is_finite() => {
                    let z = (x - stats.mean[f]) / stats.std[f];
                    z.clamp(-stats.clip_bound, stats.clip_bound)
                }
                _ => 0.0,
            };
            out.push(if z.is_finite() { z } else { 0.0 });
        }
    }
    out
}
