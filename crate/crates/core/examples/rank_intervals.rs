//! Rank four objects from raw timings using their inter-quartile intervals.
//!
//!     cargo run --example rank_intervals

use tieless::model::{
    build_comparison_matrix, interval_of, Dataset, MeasurementSet, QuantileLimits,
};
use tieless::rankers::methodology1;

fn main() -> tieless::Result<()> {
    let timings = [
        (
            "blocked",
            vec![0.301, 0.298, 0.305, 0.297, 0.300, 0.303, 0.299],
        ),
        (
            "naive",
            vec![0.352, 0.301, 0.329, 0.288, 0.341, 0.315, 0.297],
        ),
        (
            "tiled",
            vec![0.3176, 0.321, 0.322, 0.317, 0.326, 0.319, 0.320],
        ),
        (
            "reference",
            vec![0.428, 0.440, 0.431, 0.425, 0.436, 0.429, 0.433],
        ),
    ];
    let ds = Dataset::new(
        timings
            .into_iter()
            .map(|(id, v)| MeasurementSet::new(id, v))
            .collect::<tieless::Result<Vec<_>>>()?,
    )?;

    let limits = QuantileLimits::IQI;
    for m in ds.objects() {
        let iv = interval_of(m, limits)?;
        println!("{:<10} [{:.4}, {:.4}]", iv.id, iv.low, iv.high);
    }

    let cm = build_comparison_matrix(&ds, limits)?;
    for (i, j) in cm.better_pairs() {
        println!("{} < {}", cm.id(i), cm.id(j));
    }

    let ranking = methodology1(&cm)?;
    for (k, rank) in ranking.rank_sets().iter().enumerate() {
        println!("rank {k}: {}", rank.join(", "));
    }
    Ok(())
}
