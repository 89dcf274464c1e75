use std::collections::BTreeSet;

use proptest::prelude::*;
use tieless::dfg::{build_colored_dfg, ClassSplit, Color, VariantSequence};
use tieless::graphs::{build_directed_graph, compute_depths, sparsify, transitive_reduction};
use tieless::model::{
    build_comparison_matrix, check_strict_partial_order, compare_intervals, quantile_value,
    ComparisonMatrix, Dataset, EdgeList, IntervalSummary, MeasurementSet, Outcome, QuantileLimits,
};
use tieless::rankers::{
    enumerate_partial_rankings, methodology1, methodology2, methodology3, rank_with,
    validate_partial_ranking, Method, PartialRanking, RankingFile,
};
use tieless::reliability::{quantile_sweep, reliability_report};

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{i}")).collect()
}

/// Small integer endpoints so that touching and nested intervals are common.
fn intervals(max_n: usize) -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((0u8..12, 0u8..5), 1..=max_n)
        .prop_map(|v| v.into_iter().map(|(lo, w)| (lo, lo + w)).collect())
}

fn interval_matrix(iv: &[(u8, u8)]) -> ComparisonMatrix {
    let s: Vec<IntervalSummary> = iv
        .iter()
        .enumerate()
        .map(|(i, &(l, h))| IntervalSummary {
            id: format!("t{i}"),
            low: l as f64,
            high: h as f64,
        })
        .collect();
    ComparisonMatrix::from_fn(ids(iv.len()), |i, j| {
        compare_intervals(&s[i], &s[j]) == Outcome::Better
    })
}

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-50.0f64..50.0, 1..15)
}

fn dataset(max_n: usize) -> impl Strategy<Value = Dataset> {
    prop::collection::vec(values(), 1..=max_n).prop_map(|vs| {
        let sets = vs
            .into_iter()
            .enumerate()
            .map(|(i, v)| MeasurementSet::new(format!("t{i}"), v).unwrap())
            .collect();
        Dataset::new(sets).unwrap()
    })
}

fn limits() -> impl Strategy<Value = QuantileLimits> {
    (0u8..50, 51u8..=100).prop_map(|(l, u)| QuantileLimits::new(l as f64, u as f64).unwrap())
}

/// Every ordered set partition of `0..n` that passes the validator.
fn brute_force_rankings(cm: &ComparisonMatrix) -> BTreeSet<Vec<usize>> {
    let n = cm.len();
    let mut out = BTreeSet::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let rank_of: Vec<usize> = (0..n)
            .map(|_| {
                let r = c % n;
                c /= n;
                r
            })
            .collect();
        let k = rank_of.iter().max().unwrap() + 1;
        if (0..k).any(|r| !rank_of.contains(&r)) {
            continue;
        }
        let pr =
            PartialRanking::from_rank_of(Method::External, cm.ids().to_vec(), &rank_of).unwrap();
        if validate_partial_ranking(cm, &pr).is_valid() {
            out.insert(rank_of);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn interval_relation_is_a_strict_partial_order(ds in dataset(8), l in limits()) {
        let cm = build_comparison_matrix(&ds, l).unwrap();
        prop_assert!(check_strict_partial_order(&cm).is_valid());
    }

    #[test]
    fn quantiles_are_monotone_and_bounded(v in values(), a in 0.0f64..=100.0, b in 0.0f64..=100.0) {
        let mut s = v.clone();
        s.sort_by(f64::total_cmp);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let qa = quantile_value(&s, lo).unwrap();
        let qb = quantile_value(&s, hi).unwrap();
        prop_assert!(qa <= qb);
        prop_assert!(s[0] <= qa && qb <= s[s.len() - 1]);
    }

    #[test]
    fn narrower_limits_keep_every_better_pair(ds in dataset(6), l in 0u8..40, u in 60u8..=100, dl in 0u8..10, du in 0u8..10) {
        let wide = QuantileLimits::new(l as f64, u as f64).unwrap();
        let narrow = QuantileLimits::new((l + dl) as f64, (u - du) as f64).unwrap();
        let cw = build_comparison_matrix(&ds, wide).unwrap();
        let cn = build_comparison_matrix(&ds, narrow).unwrap();
        for (i, j) in cw.better_pairs() {
            prop_assert!(cn.is_better(i, j));
        }
    }

    #[test]
    fn depths_survive_reduction_and_sparsification(iv in intervals(9)) {
        let cm = interval_matrix(&iv);
        let g = build_directed_graph(&cm).unwrap();
        let d = compute_depths(&g).unwrap();
        prop_assert_eq!(&compute_depths(&transitive_reduction(&g).unwrap()).unwrap(), &d);
        let h = sparsify(&g, &d);
        prop_assert_eq!(&compute_depths(&h).unwrap(), &d);
        for (a, b) in g.edges() {
            prop_assert!(d.depth(a) < d.depth(b));
        }
        for (a, b) in h.edges() {
            prop_assert_eq!(d.depth(a) + 1, d.depth(b));
        }
    }

    #[test]
    fn methodologies_give_valid_rankings_in_order(iv in intervals(9)) {
        let cm = interval_matrix(&iv);
        let r1 = methodology1(&cm).unwrap();
        let (r2, t) = methodology2(&cm).unwrap();
        let r3 = methodology3(&cm).unwrap();
        for r in [&r1, &r2, &r3] {
            let rep = validate_partial_ranking(&cm, r);
            prop_assert!(rep.is_valid(), "{:?}", rep.violations);
        }
        prop_assert!(r3.len() <= r2.len() && r2.len() <= r1.len());
        // The arrangement lists every object once and its ranks never decrease.
        let mut seen = t.sequence().to_vec();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..cm.len()).collect::<Vec<_>>());
        prop_assert!(t.ranks().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn enumeration_matches_brute_force(iv in intervals(5)) {
        let cm = interval_matrix(&iv);
        let fast: BTreeSet<Vec<usize>> = enumerate_partial_rankings(&cm, 8)
            .unwrap()
            .iter()
            .map(|r| r.rank_vector().to_vec())
            .collect();
        let slow = brute_force_rankings(&cm);
        prop_assert_eq!(&fast, &slow);
        let min = slow.iter().map(|r| r.iter().max().unwrap() + 1).min().unwrap();
        prop_assert_eq!(methodology3(&cm).unwrap().len(), min);
    }

    #[test]
    fn ranking_files_round_trip(iv in intervals(8), m in 0usize..3) {
        let cm = interval_matrix(&iv);
        let method = [Method::M1, Method::M2, Method::M3][m];
        let (r, a) = rank_with(method, &cm).unwrap();
        let file = RankingFile::new(&r, a.as_ref());
        let text = serde_json::to_string(&file).unwrap();
        let back: RankingFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_ranking(cm.ids()).unwrap(), r);
        let edges = cm.to_edge_list();
        let e2: EdgeList = serde_json::from_str(&serde_json::to_string(&edges).unwrap()).unwrap();
        prop_assert_eq!(ComparisonMatrix::from_edge_list(&e2).unwrap(), cm);
    }

    #[test]
    fn datasets_round_trip(ds in dataset(6)) {
        let back: Dataset = serde_json::from_str(&serde_json::to_string(&ds).unwrap()).unwrap();
        prop_assert_eq!(back, ds);
    }

    #[test]
    fn avg_rel_ignores_limit_order(ds in dataset(6), ls in prop::collection::vec(limits(), 1..5)) {
        let a = reliability_report(&quantile_sweep(&ds, &ls, Method::M1).unwrap());
        let mut rev = ls.clone();
        rev.reverse();
        let b = reliability_report(&quantile_sweep(&ds, &rev, Method::M1).unwrap());
        for (i, l) in ls.iter().enumerate() {
            prop_assert!((a.avg_rel[i] - b.avg_rel_at(*l).unwrap()).abs() < 1e-12);
        }
        for (i, v) in a.avg_rel.iter().enumerate() {
            prop_assert!(*v <= 0.0);
            let all_at_mean = a.ranks.iter().zip(&a.mean_rank).all(|(r, &m)| r[i] as f64 == m);
            prop_assert_eq!(*v == 0.0, all_at_mean);
        }
        let back: tieless::reliability::ReliabilityReport =
            serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}

fn seqs_strategy() -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0u8..5, 1..7), 1..7)
}

fn to_sequences(raw: &[Vec<u8>]) -> Vec<VariantSequence> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| {
            VariantSequence::new(format!("v{i}"), s.iter().map(|a| format!("k{a}")).collect())
                .unwrap()
        })
        .collect()
}

proptest! {
    #[test]
    fn dfg_colours_swap_with_the_split(raw in seqs_strategy(), sides in prop::collection::vec(0u8..3, 7)) {
        let seqs = to_sequences(&raw);
        let mut green = Vec::new();
        let mut red = Vec::new();
        for (i, s) in seqs.iter().enumerate() {
            match sides[i] {
                0 => green.push(s.id().to_string()),
                1 => red.push(s.id().to_string()),
                _ => {}
            }
        }
        let split = ClassSplit::new(green, red).unwrap();
        let d = build_colored_dfg(&seqs, &split).unwrap();
        let s = build_colored_dfg(&seqs, &split.swapped()).unwrap();
        prop_assert_eq!(d.nodes.len(), s.nodes.len());
        for (a, n) in &d.nodes {
            prop_assert_eq!(s.nodes[a].color, n.color.swapped());
            // Exclusivity re-scan.
            let used_by = |ids: &[String]| seqs.iter().any(|q| ids.contains(&q.id().to_string()) && q.steps().contains(a));
            match n.color {
                Color::Green => prop_assert!(!used_by(split.red())),
                Color::Red => prop_assert!(!used_by(split.green())),
                Color::Neutral => prop_assert!(used_by(split.red()) && used_by(split.green())),
            }
        }
        for ((a, b), e) in &d.edges {
            prop_assert_eq!(s.edges[&(a.clone(), b.clone())].color, e.color.swapped());
            prop_assert!(e.count >= 1);
            prop_assert!(d.nodes.contains_key(a) && d.nodes.contains_key(b));
        }
        let mut shuffled = seqs.clone();
        shuffled.reverse();
        prop_assert_eq!(build_colored_dfg(&shuffled, &split).unwrap(), d);
    }
}

#[test]
fn duplicating_the_selected_limit_keeps_its_ranking() {
    for ds in [tieless::fixtures::m8(), tieless::fixtures::gls()] {
        for method in [Method::M1, Method::M2, Method::M3] {
            let base = QuantileLimits::default_sweep();
            let sweep = quantile_sweep(&ds, &base, method).unwrap();
            let rep = reliability_report(&sweep);
            let mut more = base.clone();
            more.push(rep.selected_limits());
            let sweep2 = quantile_sweep(&ds, &more, method).unwrap();
            let rep2 = reliability_report(&sweep2);
            assert_eq!(
                sweep2.rankings()[rep2.selected],
                sweep.rankings()[rep.selected],
                "{method}"
            );
        }
    }
}
