//! Rank stability across quantile limits.
//!
//! For each object the ranks obtained at every limit in the sweep are averaged
//! into a mean rank `mr`. The reliability of a rank is `-|r - mr|` and the
//! average reliability of a limit is the mean of its objects' reliabilities.
//! The limit with the highest average reliability is selected; near-ties
//! (within [`TIE_TOLERANCE`]) go to the widest interval, then to the earliest
//! limit in the sweep.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{build_comparison_matrix, Dataset, QuantileLimits};
use crate::rankers::{rank_with, Method, PartialRanking};

pub const TIE_TOLERANCE: f64 = 1e-12;

/// Rankings of one dataset at several quantile limits.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileSweep {
    method: Method,
    limits: Vec<QuantileLimits>,
    rankings: Vec<PartialRanking>,
}

impl QuantileSweep {
    /// Builds a sweep from precomputed rank rows, one row per limit with
    /// columns in `ids` order.
    pub fn from_rank_rows(
        method: Method,
        ids: Vec<String>,
        limits: Vec<QuantileLimits>,
        rows: &[Vec<usize>],
    ) -> Result<Self> {
        if limits.is_empty() {
            return Err(Error::Usage("the sweep needs at least one limit".into()));
        }
        if rows.len() != limits.len() {
            return Err(Error::InvalidRanking(format!(
                "{} rank rows for {} limits",
                rows.len(),
                limits.len()
            )));
        }
        let rankings = rows
            .iter()
            .map(|r| PartialRanking::from_rank_of(method, ids.clone(), r))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuantileSweep {
            method,
            limits,
            rankings,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn limits(&self) -> &[QuantileLimits] {
        &self.limits
    }

    pub fn rankings(&self) -> &[PartialRanking] {
        &self.rankings
    }

    pub fn ids(&self) -> &[String] {
        self.rankings[0].ids()
    }

    /// Rank of object `i` at the `l`-th limit.
    pub fn rank(&self, i: usize, l: usize) -> usize {
        self.rankings[l].rank_of(i)
    }
}

/// Ranks `ds` with `method` at every limit in `limits`.
pub fn quantile_sweep(
    ds: &Dataset,
    limits: &[QuantileLimits],
    method: Method,
) -> Result<QuantileSweep> {
    if limits.is_empty() {
        return Err(Error::Usage("the sweep needs at least one limit".into()));
    }
    if ds.is_empty() {
        return Err(Error::InvalidMeasurements("dataset has no objects".into()));
    }
    let rankings = limits
        .iter()
        .map(|&l| {
            build_comparison_matrix(ds, l)
                .and_then(|cm| rank_with(method, &cm))
                .map(|(r, _)| r)
                .map_err(|e| Error::AtLimits {
                    limits: l,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuantileSweep {
        method,
        limits: limits.to_vec(),
        rankings,
    })
}

/// Mean ranks and reliability scores of a sweep. Per-limit vectors are aligned
/// with `limits`, per-object vectors with `ids`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportJson", try_from = "ReportJson")]
pub struct ReliabilityReport {
    pub method: Method,
    pub ids: Vec<String>,
    pub limits: Vec<QuantileLimits>,
    /// `ranks[i][l]`
    pub ranks: Vec<Vec<usize>>,
    pub mean_rank: Vec<f64>,
    /// `rel[i][l]`
    pub rel: Vec<Vec<f64>>,
    pub avg_rel: Vec<f64>,
    pub selected: usize,
}

impl ReliabilityReport {
    pub fn selected_limits(&self) -> QuantileLimits {
        self.limits[self.selected]
    }

    /// Average reliability at `limits`, if it is part of the sweep.
    pub fn avg_rel_at(&self, limits: QuantileLimits) -> Option<f64> {
        self.limits
            .iter()
            .position(|&l| l == limits)
            .map(|p| self.avg_rel[p])
    }

    /// Plain-text table: one row per object with its ranks, mean rank and
    /// reliabilities, then the average reliability row. Scores are rounded to
    /// two decimals, halves away from zero.
    pub fn render_table(&self) -> String {
        let mut out = String::from("object");
        for l in &self.limits {
            out.push_str(&format!("\t{}", l.key()));
        }
        out.push_str("\tmr");
        for l in &self.limits {
            out.push_str(&format!("\trel {}", l.key()));
        }
        out.push('\n');
        for (i, id) in self.ids.iter().enumerate() {
            out.push_str(id);
            for r in &self.ranks[i] {
                out.push_str(&format!("\t{r}"));
            }
            out.push_str(&format!("\t{}", round2(self.mean_rank[i])));
            for v in &self.rel[i] {
                out.push_str(&format!("\t{}", round2(*v)));
            }
            out.push('\n');
        }
        out.push_str("avg_rel");
        for v in &self.avg_rel {
            out.push_str(&format!("\t{}", round2(*v)));
        }
        out.push_str(&format!("\nselected\t{}\n", self.selected_limits()));
        out
    }
}

fn round2(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    // Avoid printing "-0.00".
    format!("{:.2}", if r == 0.0 { 0.0 } else { r })
}

pub fn reliability_report(sweep: &QuantileSweep) -> ReliabilityReport {
    let n = sweep.ids().len();
    let q = sweep.limits.len();
    let ranks: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..q).map(|l| sweep.rank(i, l)).collect())
        .collect();
    let mean_rank: Vec<f64> = ranks
        .iter()
        .map(|r| r.iter().sum::<usize>() as f64 / q as f64)
        .collect();
    let rel: Vec<Vec<f64>> = ranks
        .iter()
        .zip(&mean_rank)
        .map(|(r, &mr)| r.iter().map(|&x| 0.0 - (x as f64 - mr).abs()).collect())
        .collect();
    let avg_rel: Vec<f64> = (0..q)
        .map(|l| rel.iter().map(|r| r[l]).sum::<f64>() / n as f64)
        .collect();
    let selected = select(&sweep.limits, &avg_rel);
    ReliabilityReport {
        method: sweep.method,
        ids: sweep.ids().to_vec(),
        limits: sweep.limits.clone(),
        ranks,
        mean_rank,
        rel,
        avg_rel,
        selected,
    }
}

fn select(limits: &[QuantileLimits], avg_rel: &[f64]) -> usize {
    let best = avg_rel.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut pick: Option<usize> = None;
    for (l, &v) in avg_rel.iter().enumerate() {
        if best - v > TIE_TOLERANCE {
            continue;
        }
        match pick {
            Some(p) if limits[l].width() <= limits[p].width() => {}
            _ => pick = Some(l),
        }
    }
    pick.unwrap_or(0)
}

/// JSON shape of a report; maps are keyed by object id or by `L-U`.
#[derive(Serialize, Deserialize)]
struct ReportJson {
    method: Method,
    limits: Vec<QuantileLimits>,
    ranks: IndexMap<String, Vec<usize>>,
    mean_rank: IndexMap<String, f64>,
    rel: IndexMap<String, Vec<f64>>,
    avg_rel: IndexMap<String, f64>,
    selected: QuantileLimits,
}

impl From<ReliabilityReport> for ReportJson {
    fn from(r: ReliabilityReport) -> Self {
        ReportJson {
            method: r.method,
            ranks: r.ids.iter().cloned().zip(r.ranks).collect(),
            mean_rank: r.ids.iter().cloned().zip(r.mean_rank).collect(),
            rel: r.ids.iter().cloned().zip(r.rel).collect(),
            avg_rel: r.limits.iter().map(|l| l.key()).zip(r.avg_rel).collect(),
            selected: r.limits[r.selected],
            limits: r.limits,
        }
    }
}

impl TryFrom<ReportJson> for ReliabilityReport {
    type Error = Error;

    fn try_from(j: ReportJson) -> Result<Self> {
        let bad = |m: &str| Error::InvalidRanking(format!("reliability report: {m}"));
        let ids: Vec<String> = j.ranks.keys().cloned().collect();
        if ids
            .iter()
            .any(|id| !j.mean_rank.contains_key(id) || !j.rel.contains_key(id))
        {
            return Err(bad("object maps disagree"));
        }
        let q = j.limits.len();
        if j.ranks.values().any(|r| r.len() != q) || j.rel.values().any(|r| r.len() != q) {
            return Err(bad("per-limit rows have the wrong length"));
        }
        let avg_rel = j
            .limits
            .iter()
            .map(|l| {
                j.avg_rel
                    .get(&l.key())
                    .copied()
                    .ok_or_else(|| bad("missing avg_rel"))
            })
            .collect::<Result<Vec<_>>>()?;
        let selected = j
            .limits
            .iter()
            .position(|&l| l == j.selected)
            .ok_or_else(|| bad("selected limit is not in the sweep"))?;
        Ok(ReliabilityReport {
            method: j.method,
            ranks: ids.iter().map(|id| j.ranks[id].clone()).collect(),
            mean_rank: ids.iter().map(|id| j.mean_rank[id]).collect(),
            rel: ids.iter().map(|id| j.rel[id].clone()).collect(),
            ids,
            limits: j.limits,
            avg_rel,
            selected,
        })
    }
}
