//! Directly-follows graphs coloured by performance class.
//!
//! Every object (algorithm variant, process variant) comes with a sequence of
//! activities. Given a split of the objects into a green (fast) and a red
//! (slow) class, the graph over the split objects' sequences marks activities
//! and directly-follows pairs that occur exclusively in one class. Objects in
//! neither class are left out entirely.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Read;

use chrono::{DateTime, NaiveDateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::dot::quote;
use crate::error::{Error, Result};
use crate::model::{quantile_value, Dataset, MeasurementSet};
use crate::rankers::PartialRanking;

/// Activity sequence of one object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence")]
pub struct VariantSequence {
    id: String,
    steps: Vec<String>,
}

#[derive(Deserialize)]
struct RawSequence {
    id: String,
    steps: Vec<String>,
}

impl TryFrom<RawSequence> for VariantSequence {
    type Error = Error;

    fn try_from(r: RawSequence) -> Result<Self> {
        VariantSequence::new(r.id, r.steps)
    }
}

impl VariantSequence {
    pub fn new(id: impl Into<String>, steps: Vec<String>) -> Result<Self> {
        let id = id.into();
        let reason = if steps.is_empty() {
            Some("no steps")
        } else if steps.iter().any(|s| s.is_empty()) {
            Some("empty activity name")
        } else {
            None
        };
        match reason {
            Some(r) => Err(Error::InvalidSequence {
                id,
                reason: r.into(),
            }),
            None => Ok(VariantSequence { id, steps }),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn steps(&self) -> &[String] {
        &self.steps
    }
}

/// Sequence file shape: `{"variants": [{"id": "alg0", "steps": [...]}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub variants: Vec<VariantSequence>,
}

pub fn parse_sequences(json: &str) -> Result<Vec<VariantSequence>> {
    let file: SequenceFile = serde_json::from_str(json)?;
    let mut seen = HashSet::new();
    for v in &file.variants {
        if !seen.insert(v.id.as_str()) {
            return Err(Error::DuplicateId(v.id.clone()));
        }
    }
    Ok(file.variants)
}

/// Disjoint green and red object sets, each kept in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSplit {
    green: Vec<String>,
    red: Vec<String>,
}

impl ClassSplit {
    pub fn new(green: Vec<String>, red: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for id in green.iter().chain(&red) {
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidSplit(format!(
                    "`{id}` is listed twice or in both classes"
                )));
            }
        }
        Ok(ClassSplit { green, red })
    }

    pub fn green(&self) -> &[String] {
        &self.green
    }

    pub fn red(&self) -> &[String] {
        &self.red
    }

    pub fn swapped(&self) -> ClassSplit {
        ClassSplit {
            green: self.red.clone(),
            red: self.green.clone(),
        }
    }
}

/// Green gets the objects of `green_ranks`, red those of `red_ranks`.
pub fn split_from_ranking(
    pr: &PartialRanking,
    green_ranks: &[usize],
    red_ranks: &[usize],
) -> Result<ClassSplit> {
    let k = pr.len();
    if let Some(&r) = green_ranks.iter().chain(red_ranks).find(|&&r| r >= k) {
        return Err(Error::InvalidSplit(format!(
            "rank {r} does not exist (ranking has {k} ranks)"
        )));
    }
    if let Some(r) = green_ranks.iter().find(|r| red_ranks.contains(r)) {
        return Err(Error::InvalidSplit(format!(
            "rank {r} is both green and red"
        )));
    }
    let collect = |ranks: &[usize]| -> Vec<String> {
        let mut idx: Vec<usize> = ranks
            .iter()
            .collect::<HashSet<_>>()
            .into_iter()
            .flat_map(|&r| pr.ranks()[r].iter().copied())
            .collect();
        idx.sort_unstable();
        idx.into_iter().map(|i| pr.ids()[i].clone()).collect()
    };
    ClassSplit::new(collect(green_ranks), collect(red_ranks))
}

/// Green gets the `k` objects with the lowest median, red the rest. Equal
/// medians are ordered by position in the dataset.
pub fn split_top_k_median(ds: &Dataset, k: usize) -> Result<ClassSplit> {
    if k == 0 || k > ds.len() {
        return Err(Error::InvalidSplit(format!(
            "k = {k} outside 1..={}",
            ds.len()
        )));
    }
    let medians = ds
        .objects()
        .iter()
        .map(|m| quantile_value(&m.sorted_values(), 50.0))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..ds.len()).collect();
    order.sort_by(|&a, &b| medians[a].total_cmp(&medians[b]).then(a.cmp(&b)));
    let id = |i: usize| ds.objects()[i].id().to_string();
    ClassSplit::new(
        order[..k].iter().map(|&i| id(i)).collect(),
        order[k..].iter().map(|&i| id(i)).collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Green,
    Red,
    Neutral,
}

impl Color {
    fn of(in_green: bool, in_red: bool) -> Color {
        match (in_green, in_red) {
            (true, false) => Color::Green,
            (false, true) => Color::Red,
            _ => Color::Neutral,
        }
    }

    pub fn swapped(self) -> Color {
        match self {
            Color::Green => Color::Red,
            Color::Red => Color::Green,
            Color::Neutral => Color::Neutral,
        }
    }

    pub fn dot_name(self) -> &'static str {
        match self {
            Color::Green => "green",
            Color::Red => "red",
            Color::Neutral => "black",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeInfo {
    pub color: Color,
    /// Occurrences across the split variants.
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeInfo {
    pub color: Color,
    /// Adjacent occurrences across the split variants.
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoredDfg {
    pub nodes: BTreeMap<String, NodeInfo>,
    pub edges: BTreeMap<(String, String), EdgeInfo>,
}

impl ColoredDfg {
    pub fn node_color(&self, activity: &str) -> Option<Color> {
        self.nodes.get(activity).map(|n| n.color)
    }

    pub fn edge_color(&self, from: &str, to: &str) -> Option<Color> {
        self.edges
            .get(&(from.to_string(), to.to_string()))
            .map(|e| e.color)
    }

    /// Activities with colour `c`, sorted.
    pub fn nodes_with(&self, c: Color) -> Vec<&str> {
        self.nodes
            .iter()
            .filter(|(_, n)| n.color == c)
            .map(|(a, _)| a.as_str())
            .collect()
    }

    /// Attaches display annotations to existing edges; unknown pairs are ignored.
    pub fn annotate(&mut self, notes: &BTreeMap<(String, String), String>) {
        for (pair, note) in notes {
            if let Some(e) = self.edges.get_mut(pair) {
                e.annotation = Some(note.clone());
            }
        }
    }
}

#[derive(Default)]
struct Presence {
    count: usize,
    green: bool,
    red: bool,
}

pub fn build_colored_dfg(seqs: &[VariantSequence], split: &ClassSplit) -> Result<ColoredDfg> {
    let by_id: HashMap<&str, &VariantSequence> = seqs.iter().map(|s| (s.id.as_str(), s)).collect();
    let mut nodes: BTreeMap<String, Presence> = BTreeMap::new();
    let mut edges: BTreeMap<(String, String), Presence> = BTreeMap::new();
    for (ids, green) in [(&split.green, true), (&split.red, false)] {
        for id in ids {
            let seq = by_id
                .get(id.as_str())
                .ok_or_else(|| Error::MissingSequence(id.clone()))?;
            let mark = |p: &mut Presence| {
                p.count += 1;
                if green {
                    p.green = true;
                } else {
                    p.red = true;
                }
            };
            for s in &seq.steps {
                mark(nodes.entry(s.clone()).or_default());
            }
            for w in seq.steps.windows(2) {
                mark(edges.entry((w[0].clone(), w[1].clone())).or_default());
            }
        }
    }
    Ok(ColoredDfg {
        nodes: nodes
            .into_iter()
            .map(|(a, p)| {
                let info = NodeInfo {
                    color: Color::of(p.green, p.red),
                    count: p.count,
                };
                (a, info)
            })
            .collect(),
        edges: edges
            .into_iter()
            .map(|(k, p)| {
                let info = EdgeInfo {
                    color: Color::of(p.green, p.red),
                    count: p.count,
                    annotation: None,
                };
                (k, info)
            })
            .collect(),
    })
}

/// Graphviz rendering. Nodes and edges come out in sorted order, so equal
/// graphs give identical bytes.
pub fn emit_dot(dfg: &ColoredDfg) -> String {
    let mut out = String::from("digraph dfg {\n  node [shape=box, style=rounded];\n");
    for (a, n) in &dfg.nodes {
        let c = n.color.dot_name();
        out.push_str(&format!("  {} [color={c}, fontcolor={c}];\n", quote(a)));
    }
    for ((a, b), e) in &dfg.edges {
        let c = e.color.dot_name();
        let label = match &e.annotation {
            Some(note) => format!("{}\n{note}", e.count),
            None => e.count.to_string(),
        };
        out.push_str(&format!(
            "  {} -> {} [color={c}, fontcolor={c}, label={}];\n",
            quote(a),
            quote(b),
            quote(&label)
        ));
    }
    out.push_str("}\n");
    out
}

/// One case of an event log, events in timestamp order.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub id: String,
    pub events: Vec<(String, DateTime<Utc>)>,
}

impl Case {
    pub fn throughput_seconds(&self) -> f64 {
        let first = self.events.first().map(|e| e.1);
        let last = self.events.last().map(|e| e.1);
        match (first, last) {
            (Some(a), Some(b)) => (b - a).num_milliseconds() as f64 / 1000.0,
            _ => 0.0,
        }
    }

    fn activities(&self) -> Vec<String> {
        self.events.iter().map(|e| e.0.clone()).collect()
    }
}

/// Cases sharing one activity sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct LogVariant {
    pub id: String,
    pub steps: Vec<String>,
    pub cases: Vec<usize>,
}

/// Event log with cases in first-appearance order.
#[derive(Debug, Clone, PartialEq)]
pub struct EventLog {
    cases: Vec<Case>,
}

#[derive(Deserialize)]
struct EventRow {
    case: String,
    activity: String,
    timestamp: String,
}

fn parse_timestamp(s: &str) -> Option<DateTime<Utc>> {
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.with_timezone(&Utc));
    }
    // Timestamps without an offset are read as UTC.
    ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f"]
        .iter()
        .find_map(|f| NaiveDateTime::parse_from_str(s, f).ok())
        .map(|t| t.and_utc())
}

impl EventLog {
    /// Reads CSV with header `case,activity,timestamp`. Events of a case may
    /// appear in any order; equal timestamps keep their file order.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut cases: Vec<Case> = Vec::new();
        for row in rdr.deserialize() {
            let row: EventRow = row?;
            if row.activity.is_empty() {
                return Err(Error::InvalidSequence {
                    id: row.case,
                    reason: "empty activity name".into(),
                });
            }
            let ts = parse_timestamp(&row.timestamp).ok_or_else(|| Error::InvalidSequence {
                id: row.case.clone(),
                reason: format!("unreadable timestamp `{}`", row.timestamp),
            })?;
            let slot = *index.entry(row.case.clone()).or_insert_with(|| {
                cases.push(Case {
                    id: row.case.clone(),
                    events: Vec::new(),
                });
                cases.len() - 1
            });
            cases[slot].events.push((row.activity, ts));
        }
        if cases.is_empty() {
            return Err(Error::InvalidMeasurements("event log has no events".into()));
        }
        for c in &mut cases {
            c.events.sort_by_key(|e| e.1);
        }
        Ok(EventLog { cases })
    }

    pub fn cases(&self) -> &[Case] {
        &self.cases
    }

    /// Groups cases by identical activity sequence. Variants are named `v0`,
    /// `v1`, ... in order of their first case.
    pub fn variants(&self) -> Vec<LogVariant> {
        let mut out: Vec<LogVariant> = Vec::new();
        let mut index: HashMap<Vec<String>, usize> = HashMap::new();
        for (ci, c) in self.cases.iter().enumerate() {
            let steps = c.activities();
            let slot = *index.entry(steps.clone()).or_insert_with(|| {
                out.push(LogVariant {
                    id: format!("v{}", out.len()),
                    steps,
                    cases: Vec::new(),
                });
                out.len() - 1
            });
            out[slot].cases.push(ci);
        }
        out
    }

    /// One measurement set per variant holding its cases' throughput times in
    /// seconds.
    pub fn dataset(&self) -> Result<Dataset> {
        let sets = self
            .variants()
            .into_iter()
            .map(|v| {
                let values = v
                    .cases
                    .iter()
                    .map(|&c| self.cases[c].throughput_seconds())
                    .collect();
                MeasurementSet::new(v.id, values)
            })
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(sets)
    }

    pub fn sequences(&self) -> Vec<VariantSequence> {
        self.variants()
            .into_iter()
            .map(|v| VariantSequence {
                id: v.id,
                steps: v.steps,
            })
            .collect()
    }

    /// Median time between consecutive activities per directly-follows pair,
    /// over the cases of the given variants.
    pub fn transition_medians(&self, variant_ids: &[String]) -> BTreeMap<(String, String), f64> {
        let wanted: HashSet<&str> = variant_ids.iter().map(String::as_str).collect();
        let mut gaps: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
        for v in self
            .variants()
            .iter()
            .filter(|v| wanted.contains(v.id.as_str()))
        {
            for &c in &v.cases {
                for w in self.cases[c].events.windows(2) {
                    let dt = (w[1].1 - w[0].1).num_milliseconds() as f64 / 1000.0;
                    gaps.entry((w[0].0.clone(), w[1].0.clone()))
                        .or_default()
                        .push(dt);
                }
            }
        }
        gaps.into_iter()
            .map(|(k, mut v)| {
                v.sort_by(f64::total_cmp);
                let m = quantile_value(&v, 50.0).unwrap_or(0.0);
                (k, m)
            })
            .collect()
    }
}

/// Compact duration such as `2d 3h`, `45m` or `12s`.
pub fn format_duration(seconds: f64) -> String {
    let s = seconds.round().max(0.0) as u64;
    let (d, h, m) = (s / 86_400, (s % 86_400) / 3600, (s % 3600) / 60);
    match (d, h, m) {
        (0, 0, 0) => format!("{s}s"),
        (0, 0, _) => format!("{m}m"),
        (0, _, _) => format!("{h}h {m}m"),
        _ => format!("{d}d {h}h"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::build_comparison_matrix;
    use crate::model::QuantileLimits;
    use crate::rankers::methodology2;

    fn seq(id: &str, steps: &[&str]) -> VariantSequence {
        VariantSequence::new(id, steps.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn split(g: &[&str], r: &[&str]) -> ClassSplit {
        let v = |x: &[&str]| x.iter().map(|s| s.to_string()).collect();
        ClassSplit::new(v(g), v(r)).unwrap()
    }

    #[test]
    fn shared_sequence_is_neutral() {
        let seqs = [seq("a", &["x", "y"]), seq("b", &["x", "y"])];
        let d = build_colored_dfg(&seqs, &split(&["a"], &["b"])).unwrap();
        assert!(d.nodes.values().all(|n| n.color == Color::Neutral));
        assert!(d
            .edges
            .values()
            .all(|e| e.color == Color::Neutral && e.count == 2));
    }

    #[test]
    fn repeated_pairs_each_count() {
        let seqs = [seq("a", &["x", "x", "x"])];
        let d = build_colored_dfg(&seqs, &split(&["a"], &[])).unwrap();
        assert_eq!(d.edges[&("x".into(), "x".into())].count, 2);
        assert_eq!(d.nodes["x"].count, 3);
    }

    #[test]
    fn unsplit_variants_are_ignored() {
        let seqs = [seq("a", &["x"]), seq("b", &["y"]), seq("c", &["z"])];
        let d = build_colored_dfg(&seqs, &split(&["a"], &["b"])).unwrap();
        assert!(!d.nodes.contains_key("z"));
    }

    #[test]
    fn missing_sequence_is_an_error() {
        let seqs = [seq("a", &["x"])];
        assert!(matches!(
            build_colored_dfg(&seqs, &split(&["a"], &["b"])),
            Err(Error::MissingSequence(id)) if id == "b"
        ));
    }

    #[test]
    fn invalid_sequences_rejected() {
        assert!(VariantSequence::new("a", vec![]).is_err());
        assert!(VariantSequence::new("a", vec![String::new()]).is_err());
        assert!(ClassSplit::new(vec!["a".into()], vec!["a".into()]).is_err());
    }

    #[test]
    fn gls_fast_slow_split() {
        let ds = fixtures::gls();
        let cm = build_comparison_matrix(&ds, QuantileLimits::IQI).unwrap();
        let (r, _) = methodology2(&cm).unwrap();
        let s = split_from_ranking(&r, &[0], &[1]).unwrap();
        assert_eq!(s.green(), ["alg0", "alg1", "alg3", "alg4", "alg5"]);
        assert_eq!(s.red(), ["alg2", "alg6", "alg7", "alg8", "alg9"]);
        let d = build_colored_dfg(&fixtures::gls_sequences(), &s).unwrap();
        assert_eq!(d.nodes_with(Color::Green), ["gemm"]);
        assert_eq!(d.nodes_with(Color::Red), ["qr", "transpose"]);
        assert_eq!(d.edge_color("trsm", "gemv"), Some(Color::Red));
        assert_eq!(d.edge_color("trsv", "gemv"), Some(Color::Red));
    }

    #[test]
    fn top_k_median_splits() {
        let ds = fixtures::gls();
        assert_eq!(split_top_k_median(&ds, 1).unwrap().green(), ["alg0"]);
        assert_eq!(
            split_top_k_median(&ds, 4).unwrap().green(),
            ["alg0", "alg1", "alg5", "alg3"]
        );
        assert!(split_top_k_median(&ds, 10).unwrap().red().is_empty());
        assert!(split_top_k_median(&ds, 0).is_err());
        assert!(split_top_k_median(&ds, 11).is_err());
    }

    #[test]
    fn split_rank_checks() {
        let cm = fixtures::matrix(3);
        let r = crate::rankers::methodology1(&cm).unwrap();
        assert!(split_from_ranking(&r, &[0], &[3]).is_err());
        assert!(split_from_ranking(&r, &[0, 1], &[1]).is_err());
        assert!(split_from_ranking(&r, &[], &[2])
            .unwrap()
            .green()
            .is_empty());
    }

    #[test]
    fn dot_output() {
        assert_eq!(
            emit_dot(&ColoredDfg::default()),
            "digraph dfg {\n  node [shape=box, style=rounded];\n}\n"
        );
        let d = build_colored_dfg(&[seq("a", &["gemm"])], &split(&["a"], &[])).unwrap();
        assert!(emit_dot(&d).contains("  \"gemm\" [color=green, fontcolor=green];\n"));
    }

    #[test]
    fn event_log_grouping() {
        let csv = "case,activity,timestamp\n\
                   c1,A,2024-01-01T00:00:00Z\n\
                   c2,A,2024-01-01T00:00:00\n\
                   c1,B,2024-01-01T01:00:00+00:00\n\
                   c2,B,2024-01-01 03:00:00\n\
                   c3,A,2024-01-02T00:00:00Z\n\
                   c3,B,2024-01-01T00:00:00Z\n";
        let log = EventLog::from_csv(csv.as_bytes()).unwrap();
        let vs = log.variants();
        assert_eq!(vs.len(), 2);
        assert_eq!(vs[0].cases, vec![0, 1]);
        assert_eq!(vs[1].steps, ["B", "A"]);
        let ds = log.dataset().unwrap();
        assert_eq!(ds.objects()[0].values(), [3600.0, 10800.0]);
        let med = log.transition_medians(&["v0".into()]);
        assert_eq!(med[&("A".into(), "B".into())], 7200.0);
    }

    #[test]
    fn event_log_errors() {
        assert!(EventLog::from_csv("case,activity,timestamp\n".as_bytes()).is_err());
        assert!(EventLog::from_csv("case,activity,timestamp\nc,A,yesterday\n".as_bytes()).is_err());
        assert!(EventLog::from_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn durations() {
        assert_eq!(format_duration(12.0), "12s");
        assert_eq!(format_duration(600.0), "10m");
        assert_eq!(format_duration(3900.0), "1h 5m");
        assert_eq!(format_duration(90_000.0), "1d 1h");
    }
}
