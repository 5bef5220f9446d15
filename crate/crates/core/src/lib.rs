//! Research stack for cost-aware hedging of an equity exposure.
//!
//! The crate is organized around four stages that mirror the experiment
//! pipeline:
//!
//! - [`market_data`] builds, validates, splits, and normalizes the daily
//!   feature panel (from CSV input or a seeded synthetic generator).
//! - [`env`] is a deterministic episodic simulator with bounded continuous
//!   hedge actions, proportional and impact costs, and a rebalance cadence,
//!   plus rule-based baseline policies.
//! - [`agent`] is a compact stochastic actor-critic (shared-trunk MLP,
//!   squashed-Gaussian actions) trained with an entropy-regularized policy
//!   gradient and GAE, with manual backpropagation and checkpointing.
//! - [`analytics`] computes deterministic evaluation metrics, significance
//!   statistics (Newey-West, block bootstrap), regime attribution, and
//!   long-SPY blend analytics.
//!
//! Everything is deterministic given its inputs and seeds: identical
//! configurations produce bit-identical panels, traces, checkpoints, and
//! reports.

pub mod agent;
pub mod analytics;
pub mod env;
pub mod error;
pub mod market_data;

pub use error::{CoreError, Result};
