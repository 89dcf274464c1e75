//! Measurement data, quantile intervals and the better-than relation.
//!
//! Objects are identified by string ids; every structure keeps the dataset's
//! insertion order, which is the canonical order used to break ties.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Repeated measurements of one object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasurementSet")]
pub struct MeasurementSet {
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawMeasurementSet {
    id: String,
    #[serde(default)]
    label: Option<String>,
    values: Vec<f64>,
}

impl TryFrom<RawMeasurementSet> for MeasurementSet {
    type Error = Error;

    fn try_from(raw: RawMeasurementSet) -> Result<Self> {
        let mut m = MeasurementSet::new(raw.id, raw.values)?;
        m.label = raw.label;
        Ok(m)
    }
}

impl MeasurementSet {
    /// Rejects empty value lists and non-finite values.
    pub fn new(id: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidMeasurements("empty object id".into()));
        }
        if values.is_empty() {
            return Err(Error::InvalidMeasurements(format!("`{id}` has no values")));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidMeasurements(format!(
                "`{id}` contains non-finite value {v}"
            )));
        }
        Ok(MeasurementSet {
            id,
            label: None,
            values,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Values in ascending order (stable for duplicates).
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

/// An ordered collection of measurement sets with unique ids.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDataset")]
pub struct Dataset {
    objects: Vec<MeasurementSet>,
}

#[derive(Deserialize)]
struct RawDataset {
    objects: Vec<MeasurementSet>,
}

impl TryFrom<RawDataset> for Dataset {
    type Error = Error;

    fn try_from(raw: RawDataset) -> Result<Self> {
        Dataset::new(raw.objects)
    }
}

impl Dataset {
    pub fn new(objects: Vec<MeasurementSet>) -> Result<Self> {
        let mut seen = HashSet::new();
        for m in &objects {
            if !seen.insert(m.id.as_str()) {
                return Err(Error::DuplicateId(m.id.clone()));
            }
        }
        Ok(Dataset { objects })
    }

    pub fn objects(&self) -> &[MeasurementSet] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn ids(&self) -> Vec<String> {
        self.objects.iter().map(|m| m.id.clone()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&MeasurementSet> {
        self.objects.iter().find(|m| m.id == id)
    }
}

/// Lower and upper percentile of an inter-quantile interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantileLimits {
    lower: f64,
    upper: f64,
}

impl QuantileLimits {
    /// The inter-quartile interval, (25, 75).
    pub const IQI: QuantileLimits = QuantileLimits {
        lower: 25.0,
        upper: 75.0,
    };

    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        let ok = lower.is_finite()
            && upper.is_finite()
            && (0.0..=100.0).contains(&lower)
            && (0.0..=100.0).contains(&upper)
            && lower < upper;
        if !ok {
            return Err(Error::InvalidLimits { lower, upper });
        }
        Ok(QuantileLimits { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Map key such as `25-75`.
    pub fn key(&self) -> String {
        format!("{}-{}", self.lower, self.upper)
    }

    /// The default sweep: (25,75), (30,70), (35,65), (40,60).
    pub fn default_sweep() -> Vec<QuantileLimits> {
        [(25.0, 75.0), (30.0, 70.0), (35.0, 65.0), (40.0, 60.0)]
            .into_iter()
            .map(|(l, u)| QuantileLimits { lower: l, upper: u })
            .collect()
    }
}

impl Default for QuantileLimits {
    fn default() -> Self {
        QuantileLimits::IQI
    }
}

impl fmt::Display for QuantileLimits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

impl std::str::FromStr for QuantileLimits {
    type Err = Error;

    /// Parses `L,U`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("expected quantile limits `L,U`, got `{s}`"));
        let (l, u) = s.split_once(',').ok_or_else(bad)?;
        let l: f64 = l.trim().parse().map_err(|_| bad())?;
        let u: f64 = u.trim().parse().map_err(|_| bad())?;
        QuantileLimits::new(l, u)
    }
}

impl Serialize for QuantileLimits {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&JsonNumber(self.lower))?;
        t.serialize_element(&JsonNumber(self.upper))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for QuantileLimits {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (l, u) = <(f64, f64)>::deserialize(d)?;
        QuantileLimits::new(l, u).map_err(serde::de::Error::custom)
    }
}

/// Writes whole numbers without a fractional part (`25` rather than `25.0`).
pub(crate) struct JsonNumber(pub f64);

impl Serialize for JsonNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.fract() == 0.0 && self.0.abs() < 1e15 {
            s.serialize_i64(self.0 as i64)
        } else {
            s.serialize_f64(self.0)
        }
    }
}

/// Interval between the values at the lower and upper quantile limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSummary {
    pub id: String,
    pub low: f64,
    pub high: f64,
}

/// Outcome of comparing object `i` against object `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Better,
    Worse,
    Incomparable,
}

impl Outcome {
    pub fn reverse(self) -> Outcome {
        match self {
            Outcome::Better => Outcome::Worse,
            Outcome::Worse => Outcome::Better,
            Outcome::Incomparable => Outcome::Incomparable,
        }
    }
}

/// Linearly interpolated value at percentile `q` of ascending `sorted`.
///
/// Uses fractional position `(q / 100) * (M - 1)` and interpolates between the
/// neighbouring order statistics.
pub fn quantile_value(sorted: &[f64], q: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::InvalidMeasurements("no values".into()));
    }
    if let Some(v) = sorted.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidMeasurements(format!("non-finite value {v}")));
    }
    if !(0.0..=100.0).contains(&q) {
        return Err(Error::InvalidPercentile(q));
    }
    debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
    let pos = q / 100.0 * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (pos.ceil() as usize).min(sorted.len() - 1);
    let frac = pos - lo as f64;
    Ok(sorted[lo] + frac * (sorted[hi] - sorted[lo]))
}

pub fn interval_of(m: &MeasurementSet, limits: QuantileLimits) -> Result<IntervalSummary> {
    let sorted = m.sorted_values();
    let low = quantile_value(&sorted, limits.lower)?;
    let high = quantile_value(&sorted, limits.upper)?;
    Ok(IntervalSummary {
        id: m.id.clone(),
        low,
        high,
    })
}

/// `a` is better than `b` iff `a` ends strictly before `b` starts.
pub fn compare_intervals(a: &IntervalSummary, b: &IntervalSummary) -> Outcome {
    if a.high < b.low {
        Outcome::Better
    } else if b.high < a.low {
        Outcome::Worse
    } else {
        Outcome::Incomparable
    }
}

/// Pairwise better-than relation over a fixed list of objects.
///
/// Stored as a dense boolean table so that invalid external relations (cycles,
/// symmetric pairs) stay representable and can be diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonMatrix {
    ids: Vec<String>,
    better: Vec<bool>,
}

impl ComparisonMatrix {
    /// `better(i, j)` decides whether object `i` is better than object `j`.
    pub fn from_fn(ids: Vec<String>, mut better: impl FnMut(usize, usize) -> bool) -> Self {
        let n = ids.len();
        let mut table = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    table[i * n + j] = better(i, j);
                }
            }
        }
        ComparisonMatrix { ids, better: table }
    }

    /// Builds the relation from explicit `(better, worse)` pairs without
    /// validating it. Self-pairs are kept so that they can be reported.
    pub fn from_better_pairs<S: AsRef<str>>(ids: Vec<String>, pairs: &[(S, S)]) -> Result<Self> {
        let index = index_ids(&ids)?;
        let n = ids.len();
        let mut better = vec![false; n * n];
        for (a, b) in pairs {
            let i = lookup(&index, a.as_ref())?;
            let j = lookup(&index, b.as_ref())?;
            better[i * n + j] = true;
        }
        Ok(ComparisonMatrix { ids, better })
    }

    /// Builds and validates a relation from an edge-list fixture.
    pub fn from_edge_list(list: &EdgeList) -> Result<Self> {
        let cm = ComparisonMatrix::from_better_pairs(list.ids.clone(), &list.better)?;
        cm.validated()
    }

    /// Returns `self` if it is a strict partial order, otherwise the first
    /// violation as an error.
    pub fn validated(self) -> Result<Self> {
        match check_strict_partial_order(&self).violations.first() {
            None => Ok(self),
            Some(OrderViolation::Reflexive(a)) => Err(Error::CycleDetected(a.clone())),
            Some(OrderViolation::Asymmetric(a, _)) => Err(Error::CycleDetected(a.clone())),
            Some(OrderViolation::Intransitive(a, b, c)) => Err(Error::TransitivityViolation(
                a.clone(),
                b.clone(),
                c.clone(),
            )),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn is_better(&self, i: usize, j: usize) -> bool {
        self.better[i * self.ids.len() + j]
    }

    pub fn is_incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.is_better(i, j) && !self.is_better(j, i)
    }

    pub fn outcome(&self, i: usize, j: usize) -> Outcome {
        if self.is_better(i, j) {
            Outcome::Better
        } else if self.is_better(j, i) {
            Outcome::Worse
        } else {
            Outcome::Incomparable
        }
    }

    /// All `(i, j)` with `i` better than `j`, row-major.
    pub fn better_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.is_better(i, j))
            .collect()
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            ids: self.ids.clone(),
            better: self
                .better_pairs()
                .into_iter()
                .map(|(i, j)| (self.ids[i].clone(), self.ids[j].clone()))
                .collect(),
        }
    }

    /// Restriction to the given object indices, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> ComparisonMatrix {
        let ids = keep.iter().map(|&i| self.ids[i].clone()).collect();
        ComparisonMatrix::from_fn(ids, |a, b| self.is_better(keep[a], keep[b]))
    }
}

fn index_ids(ids: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.as_str(), i).is_some() {
            return Err(Error::DuplicateId(id.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<&str, usize>, id: &str) -> Result<usize> {
    index
        .get(id)
        .copied()
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Edge-list fixture: `{"ids": [...], "better": [["t0", "t1"], ...]}`.
/// Unlisted distinct pairs are incomparable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeList {
    pub ids: Vec<String>,
    pub better: Vec<(String, String)>,
}

impl EdgeList {
    pub fn new<S: AsRef<str>>(ids: &[S], better: &[(S, S)]) -> Self {
        EdgeList {
            ids: ids.iter().map(|s| s.as_ref().to_string()).collect(),
            better: better
                .iter()
                .map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string()))
                .collect(),
        }
    }
}

/// Interval relation at `limits`: `i` better than `j` iff the upper quantile
/// of `i` lies strictly below the lower quantile of `j`.
pub fn build_comparison_matrix(ds: &Dataset, limits: QuantileLimits) -> Result<ComparisonMatrix> {
    let intervals = ds
        .objects()
        .iter()
        .map(|m| interval_of(m, limits))
        .collect::<Result<Vec<_>>>()?;
    let cm = ComparisonMatrix::from_fn(ds.ids(), |i, j| {
        compare_intervals(&intervals[i], &intervals[j]) == Outcome::Better
    });
    // Interval orders are transitive; the full O(N^3) check only runs in debug builds.
    debug_assert!(check_strict_partial_order(&cm).is_valid());
    Ok(cm)
}

/// Median relation: `i` better than `j` iff median(i) < median(j).
pub fn build_median_matrix(ds: &Dataset) -> Result<ComparisonMatrix> {
    let medians = ds
        .objects()
        .iter()
        .map(|m| quantile_value(&m.sorted_values(), 50.0))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonMatrix::from_fn(ds.ids(), |i, j| {
        medians[i] < medians[j]
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderViolation {
    /// Object declared better than itself.
    Reflexive(String),
    /// Both `a < b` and `b < a`.
    Asymmetric(String, String),
    /// `a < b` and `b < c` but not `a < c`.
    Intransitive(String, String, String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub violations: Vec<OrderViolation>,
}

impl OrderReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every irreflexivity, antisymmetry and transitivity violation.
pub fn check_strict_partial_order(cm: &ComparisonMatrix) -> OrderReport {
    let n = cm.len();
    let mut violations = Vec::new();
    for i in 0..n {
        if cm.better[i * n + i] {
            violations.push(OrderViolation::Reflexive(cm.ids[i].clone()));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if cm.is_better(i, j) && cm.is_better(j, i) {
                violations.push(OrderViolation::Asymmetric(
                    cm.ids[i].clone(),
                    cm.ids[j].clone(),
                ));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || !cm.is_better(i, j) {
                continue;
            }
            for k in 0..n {
                if k != j && k != i && cm.is_better(j, k) && !cm.is_better(i, k) {
                    violations.push(OrderViolation::Intransitive(
                        cm.ids[i].clone(),
                        cm.ids[j].clone(),
                        cm.ids[k].clone(),
                    ));
                }
            }
        }
    }
    OrderReport { violations }
}

/// Five-number summary for box plots, with the box at `limits`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxSummary {
    pub id: String,
    pub min: f64,
    pub lower: f64,
    pub median: f64,
    pub upper: f64,
    pub max: f64,
}

pub fn box_summary(m: &MeasurementSet, limits: QuantileLimits) -> Result<BoxSummary> {
    let v = m.sorted_values();
    Ok(BoxSummary {
        id: m.id.clone(),
        min: v[0],
        lower: quantile_value(&v, limits.lower)?,
        median: quantile_value(&v, 50.0)?,
        upper: quantile_value(&v, limits.upper)?,
        max: v[v.len() - 1],
    })
}
