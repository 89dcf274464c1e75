//! Reference datasets bundled with the crate.
//!
//! `m0` ... `m7` are small interval-shaped instances, each shipped both as a
//! measurement file (five values per object whose 25-75 interval is the
//! intended one) and as the resulting better-than edge list. `m8` carries
//! eleven raw values per object and is meant for quantile sweeps. `gls` holds
//! timings and kernel-call sequences for ten algorithm variants, and
//! `p2p_eventlog` is a small purchase-to-pay process log.

use crate::dfg::VariantSequence;
use crate::model::{ComparisonMatrix, Dataset, EdgeList};

const M_EDGES: [&str; 8] = [
    include_str!("../fixtures/m0.edges.json"),
    include_str!("../fixtures/m1.edges.json"),
    include_str!("../fixtures/m2.edges.json"),
    include_str!("../fixtures/m3.edges.json"),
    include_str!("../fixtures/m4.edges.json"),
    include_str!("../fixtures/m5.edges.json"),
    include_str!("../fixtures/m6.edges.json"),
    include_str!("../fixtures/m7.edges.json"),
];

const M_DATA: [&str; 8] = [
    include_str!("../fixtures/m0.json"),
    include_str!("../fixtures/m1.json"),
    include_str!("../fixtures/m2.json"),
    include_str!("../fixtures/m3.json"),
    include_str!("../fixtures/m4.json"),
    include_str!("../fixtures/m5.json"),
    include_str!("../fixtures/m6.json"),
    include_str!("../fixtures/m7.json"),
];

pub const M8_JSON: &str = include_str!("../fixtures/m8.json");
pub const GLS_JSON: &str = include_str!("../fixtures/gls.json");
pub const GLS_SEQUENCES_JSON: &str = include_str!("../fixtures/gls_sequences.json");
pub const P2P_EVENTLOG_CSV: &str = include_str!("../fixtures/p2p_eventlog.csv");

/// Per-limit M1 rank rows of `m8` at the default sweep, one row per limit,
/// columns in object order.
pub const M8_RANK_ROWS: [[usize; 4]; 4] = [[0, 0, 0, 1], [0, 1, 0, 1], [0, 1, 0, 1], [1, 2, 0, 2]];

/// Raw edge-list JSON of instance `k` (0..=7).
pub fn edges_json(k: usize) -> &'static str {
    M_EDGES[k]
}

/// Raw measurement JSON of instance `k` (0..=7).
pub fn measurements_json(k: usize) -> &'static str {
    M_DATA[k]
}

/// Comparison matrix of instance `k` (0..=7), read from its edge list.
pub fn matrix(k: usize) -> ComparisonMatrix {
    let list: EdgeList = serde_json::from_str(M_EDGES[k]).expect("bundled edge list parses");
    ComparisonMatrix::from_edge_list(&list).expect("bundled edge list is a strict partial order")
}

/// Measurements of instance `k` (0..=7).
pub fn dataset(k: usize) -> Dataset {
    serde_json::from_str(M_DATA[k]).expect("bundled measurements parse")
}

pub fn m8() -> Dataset {
    serde_json::from_str(M8_JSON).expect("bundled measurements parse")
}

pub fn gls() -> Dataset {
    serde_json::from_str(GLS_JSON).expect("bundled measurements parse")
}

pub fn gls_sequences() -> Vec<VariantSequence> {
    crate::dfg::parse_sequences(GLS_SEQUENCES_JSON).expect("bundled sequences parse")
}
