//! Exact arithmetic for balancing, Lucas-balancing and generalized Lucas
//! sequences, their convolution identities, and a truncated power-series
//! engine used to check the generating-function relations behind them.

pub mod arith;
pub mod cli;
mod error;
pub mod identities;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
