//! Ranks one dataset at four quantile limits and picks the most reliable one.
//!
//!     cargo run --example reliability_sweep

use tieless::fixtures;
use tieless::model::QuantileLimits;
use tieless::rankers::Method;
use tieless::reliability::{quantile_sweep, reliability_report};

fn main() -> tieless::Result<()> {
    let ds = fixtures::m8();
    let sweep = quantile_sweep(&ds, &QuantileLimits::default_sweep(), Method::M1)?;
    let report = reliability_report(&sweep);
    print!("{}", report.render_table());
    println!("{}", serde_json::to_string(&report)?);
    Ok(())
}
