//! Random dataset corpora shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tieless::model::{
    build_comparison_matrix, ComparisonMatrix, Dataset, MeasurementSet, QuantileLimits,
};

pub struct Case {
    pub dataset: Dataset,
    pub limits: QuantileLimits,
    pub matrix: ComparisonMatrix,
}

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{i}")).collect()
}

/// Raw measurements: up to `max_n` objects, 1 to 9 values each, rounded to
/// one decimal so that touching and identical intervals occur.
pub fn random_dataset(rng: &mut ChaCha8Rng, max_n: usize) -> Dataset {
    let n = rng.random_range(1..=max_n);
    let sets = ids(n)
        .into_iter()
        .map(|id| {
            let m = rng.random_range(1..=9);
            let centre: f64 = rng.random_range(0.0..6.0);
            let spread: f64 = rng.random_range(0.0..2.5);
            let values = (0..m)
                .map(|_| {
                    let v = centre + spread * rng.random_range(-1.0..=1.0);
                    (v * 10.0).round() / 10.0
                })
                .collect();
            MeasurementSet::new(id, values).unwrap()
        })
        .collect();
    Dataset::new(sets).unwrap()
}

pub fn random_limits(rng: &mut ChaCha8Rng) -> QuantileLimits {
    let l = rng.random_range(0..50) as f64;
    let u = rng.random_range(51..=100) as f64;
    QuantileLimits::new(l, u).unwrap()
}

/// `count` datasets with at most `max_n` objects, each compared at random limits.
pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let dataset = random_dataset(&mut rng, max_n);
            let limits = random_limits(&mut rng);
            let matrix = build_comparison_matrix(&dataset, limits).unwrap();
            Case {
                dataset,
                limits,
                matrix,
            }
        })
        .collect()
}

/// Interval-shaped measurements: five values whose 25-75 interval is `(lo, hi)`.
pub fn interval_set(id: &str, lo: f64, hi: f64) -> MeasurementSet {
    let w = hi - lo;
    let values = vec![hi, lo - w / 2.0, (lo + hi) / 2.0, hi + w / 2.0, lo];
    MeasurementSet::new(id, values).unwrap()
}

/// Pairwise disjoint intervals in shuffled order.
pub fn linear_case(rng: &mut ChaCha8Rng, max_n: usize) -> Case {
    let n = rng.random_range(1..=max_n);
    let mut slots: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        slots.swap(i, rng.random_range(0..=i));
    }
    let sets = ids(n)
        .iter()
        .zip(&slots)
        .map(|(id, &s)| {
            let lo = 10.0 * s as f64 + rng.random_range(0.0..3.0);
            interval_set(id, lo, lo + rng.random_range(0.5..5.0))
        })
        .collect();
    finish(Dataset::new(sets).unwrap())
}

/// Groups of objects sharing one interval; groups are pairwise disjoint.
pub fn weak_case(rng: &mut ChaCha8Rng, max_n: usize) -> Case {
    let n = rng.random_range(1..=max_n);
    let groups = rng.random_range(1..=n);
    let mut group_of: Vec<usize> = (0..n)
        .map(|i| {
            if i < groups {
                i
            } else {
                rng.random_range(0..groups)
            }
        })
        .collect();
    for i in (1..n).rev() {
        group_of.swap(i, rng.random_range(0..=i));
    }
    let bounds: Vec<(f64, f64)> = (0..groups)
        .map(|g| {
            let lo = 10.0 * g as f64 + rng.random_range(0.0..3.0);
            (lo, lo + rng.random_range(0.5..5.0))
        })
        .collect();
    let sets = ids(n)
        .iter()
        .zip(&group_of)
        .map(|(id, &g)| interval_set(id, bounds[g].0, bounds[g].1))
        .collect();
    finish(Dataset::new(sets).unwrap())
}

fn finish(dataset: Dataset) -> Case {
    let limits = QuantileLimits::IQI;
    let matrix = build_comparison_matrix(&dataset, limits).unwrap();
    Case {
        dataset,
        limits,
        matrix,
    }
}
