//! Graph braid groups: discrete configuration spaces, discrete Morse presentations,
//! geometric generators, planar quotients and Yang–Baxter checks.

pub mod appendix;
pub mod braid;
pub mod dconfig;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod geometric;
pub mod graph;
pub mod morse;
pub mod presentation;
pub mod reference;
pub mod snf;
pub mod theta;
pub mod tree;
pub mod yang_baxter;

pub use error::{Error, Result};

/// Step budget read from `GBG_BUDGET_<NAME>`, else `default`.
pub fn budget(name: &str, default: u64) -> u64 {
    std::env::var(format!("GBG_BUDGET_{name}")).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}
