//! Colours a purchase-to-pay event log by its fastest performance class.
//!
//!     cargo run --example process_log > p2p.dot

use tieless::dfg::{build_colored_dfg, emit_dot, format_duration, split_from_ranking, EventLog};
use tieless::fixtures;
use tieless::model::{build_comparison_matrix, QuantileLimits};
use tieless::rankers::methodology3;

fn main() -> tieless::Result<()> {
    let log = EventLog::from_csv(fixtures::P2P_EVENTLOG_CSV.as_bytes())?;
    let variants = log.variants();
    for v in &variants {
        eprintln!(
            "{} ({} cases): {}",
            v.id,
            v.cases.len(),
            v.steps.join(" > ")
        );
    }

    let ds = log.dataset()?;
    let cm = build_comparison_matrix(&ds, QuantileLimits::IQI)?;
    let ranking = methodology3(&cm)?;
    for (k, r) in ranking.rank_sets().iter().enumerate() {
        eprintln!("rank {k}: {}", r.join(", "));
    }

    let last = ranking.len() - 1;
    let split = split_from_ranking(&ranking, &[0], &(1..=last).collect::<Vec<_>>())?;
    let mut dfg = build_colored_dfg(&log.sequences(), &split)?;
    let ids: Vec<String> = variants.iter().map(|v| v.id.clone()).collect();
    let notes = log
        .transition_medians(&ids)
        .into_iter()
        .map(|(k, s)| (k, format_duration(s)))
        .collect();
    dfg.annotate(&notes);
    print!("{}", emit_dot(&dfg));
    Ok(())
}
