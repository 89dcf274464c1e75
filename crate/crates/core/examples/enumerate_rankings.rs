//! Lists every valid partial ranking of a small instance and checks a
//! hand-written one.
//!
//!     cargo run --example enumerate_rankings

use tieless::fixtures;
use tieless::rankers::{
    classify_order, enumerate_partial_rankings, methodology3, validate_partial_ranking, Method,
    PartialRanking, DEFAULT_ENUMERATION_BOUND,
};

fn main() -> tieless::Result<()> {
    let cm = fixtures::matrix(7);
    println!("order class: {:?}", classify_order(&cm));

    let all = enumerate_partial_rankings(&cm, DEFAULT_ENUMERATION_BOUND)?;
    for r in &all {
        let sets: Vec<String> = r
            .rank_sets()
            .iter()
            .map(|s| format!("{{{}}}", s.join(",")))
            .collect();
        println!("{} ranks: {}", r.len(), sets.join(" "));
    }
    let fewest = all.iter().map(|r| r.len()).min().unwrap_or(0);
    println!(
        "fewest ranks: {fewest}, methodology 3: {}",
        methodology3(&cm)?.len()
    );

    // {t0}, {t1, t2}, {t3} on the m2 instance: nothing in {t0} beats {t1, t2}.
    let m2 = fixtures::matrix(2);
    let guess = PartialRanking::from_id_sets(
        Method::External,
        m2.ids(),
        &[vec!["t0"], vec!["t1", "t2"], vec!["t3"]],
    )?;
    for v in validate_partial_ranking(&m2, &guess).violations {
        println!("violation: {v}");
    }
    Ok(())
}
