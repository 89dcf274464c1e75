//! Draws normally distributed timings and ranks them with all methodologies.
//!
//!     cargo run --example synthetic_variants [seed]

use tieless::model::{build_comparison_matrix, QuantileLimits};
use tieless::rankers::{rank_with, Method};
use tieless::synth::{generate, SynthSpec};

fn main() -> tieless::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(159);
    let ds = generate(&SynthSpec::four_variants(), seed)?;
    let cm = build_comparison_matrix(&ds, QuantileLimits::IQI)?;
    for m in [Method::M1, Method::M2, Method::M3] {
        let (r, _) = rank_with(m, &cm)?;
        let sets: Vec<String> = r
            .rank_sets()
            .iter()
            .map(|s| format!("{{{}}}", s.join(",")))
            .collect();
        println!("{m}: {}", sets.join(" "));
    }
    Ok(())
}
