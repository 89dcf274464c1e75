//! Which kernel calls separate fast from slow algorithm variants?
//!
//!     cargo run --example kernel_root_cause > fast_slow.dot

use tieless::dfg::{build_colored_dfg, emit_dot, split_from_ranking, split_top_k_median, Color};
use tieless::fixtures;
use tieless::model::{build_comparison_matrix, QuantileLimits};
use tieless::rankers::methodology2;

fn main() -> tieless::Result<()> {
    let ds = fixtures::gls();
    let seqs = fixtures::gls_sequences();

    let cm = build_comparison_matrix(&ds, QuantileLimits::IQI)?;
    let (ranking, _) = methodology2(&cm)?;
    let split = split_from_ranking(&ranking, &[0], &[1])?;
    eprintln!("fast: {}", split.green().join(", "));
    eprintln!("slow: {}", split.red().join(", "));

    let dfg = build_colored_dfg(&seqs, &split)?;
    eprintln!("only in fast variants: {:?}", dfg.nodes_with(Color::Green));
    eprintln!("only in slow variants: {:?}", dfg.nodes_with(Color::Red));

    let top1 = build_colored_dfg(&seqs, &split_top_k_median(&ds, 1)?)?;
    eprintln!(
        "top-1 median split, only in the rest: {:?}",
        top1.nodes_with(Color::Red)
    );

    print!("{}", emit_dot(&dfg));
    Ok(())
}
