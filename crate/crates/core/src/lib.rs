//! Price bounds for Asian-type options under geometric Brownian motion with a
//! deterministic, time-dependent short rate.
//!
//! The crate computes three bounds on the price `E e^{-R_T} (S̄ - K)^+`:
//!
//! * `LB1`: supremum over `z` of the payoff restricted to the event `{X̄ > z}`,
//! * `UB1`: infimum over `a` of the averaged Jensen bound obtained with the
//!   control `h_u = a X_u`,
//! * `LB2`: the conditioning bound `E (E(S̄ | X̄) - K)^+`,
//!
//! plus the midpoint estimate and a seeded Monte Carlo reference pricer. VWAP
//! options are handled by folding the expected normalized volume profile into
//! the payoff weights of the monitoring grid.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod columns;
pub mod curves;
pub mod error;
pub mod gaussian_bounds;
pub mod grids;
pub mod mc_oracle;
pub mod numerics;
pub mod vwap;

pub use curves::RateCurve;
pub use error::{Error, Result};
pub use gaussian_bounds::{BoundResult, BoundSettings, GaussianAvgModel};
pub use grids::{GridMode, MonitoringGrid};
pub use mc_oracle::{McEstimate, McSettings};
pub use vwap::{GEstimate, VolumeModel};


