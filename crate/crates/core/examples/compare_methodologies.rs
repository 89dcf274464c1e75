//! The three ranking methodologies side by side on a bundled instance.
//!
//!     cargo run --example compare_methodologies [instance 0-7]

use tieless::fixtures;
use tieless::rankers::{methodology1, methodology2, methodology3, validate_partial_ranking};

fn main() -> tieless::Result<()> {
    let k: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let cm = fixtures::matrix(k.min(7));

    let r1 = methodology1(&cm)?;
    let (r2, arrangement) = methodology2(&cm)?;
    let r3 = methodology3(&cm)?;

    println!("arranged list: {}", arrangement.sequence_ids().join(" "));
    println!("scan ranks:    {:?}", arrangement.ranks());
    for r in [&r1, &r2, &r3] {
        let sets: Vec<String> = r
            .rank_sets()
            .iter()
            .map(|s| format!("{{{}}}", s.join(",")))
            .collect();
        println!("{}: {} ranks  {}", r.method(), r.len(), sets.join(" "));
        for note in validate_partial_ranking(&cm, r).notes {
            println!("    note: {note}");
        }
    }
    Ok(())
}
