//! Partial rankings: ordered set partitions `R_0, ..., R_{K-1}` (best first)
//! that respect a strict partial order.
//!
//! A ranking is valid when
//!
//! 1. nobody is ranked above an object that is better than it,
//! 2. every pair of consecutive ranks has a better-than witness across it, and
//! 3. every rank is connected through incomparable pairs among its members.
//!
//! Three constructions are provided. [`methodology1`] ranks by depth in the
//! better-than DAG, [`methodology2`] re-arranges those depth levels to merge
//! neighbouring ranks, and [`methodology3`] ranks whole connected components
//! of the incomparability graph, which gives the fewest ranks possible.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{
    build_component_dag, build_directed_graph, build_incomparability_graph, components_of,
    compute_depths, connected_components, sparsify,
};
use crate::model::ComparisonMatrix;

/// Default object-count cap for [`enumerate_partial_rankings`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    M1,
    M2,
    M3,
    #[serde(rename = "external")]
    External,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::M1 => "M1",
            Method::M2 => "M2",
            Method::M3 => "M3",
            Method::External => "external",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M1" | "m1" | "1" => Ok(Method::M1),
            "M2" | "m2" | "2" => Ok(Method::M2),
            "M3" | "m3" | "3" => Ok(Method::M3),
            "external" => Ok(Method::External),
            _ => Err(Error::Usage(format!(
                "unknown method `{s}` (expected M1, M2 or M3)"
            ))),
        }
    }
}

/// Ordered set partition of a matrix's objects, stored by object index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialRanking {
    method: Method,
    ids: Vec<String>,
    ranks: Vec<Vec<usize>>,
    rank_of: Vec<usize>,
}

impl PartialRanking {
    /// `ranks[k]` holds the indices (into `ids`) of the objects with rank `k`.
    pub fn from_ranks(method: Method, ids: Vec<String>, ranks: Vec<Vec<usize>>) -> Result<Self> {
        let n = ids.len();
        let mut rank_of = vec![usize::MAX; n];
        for (k, members) in ranks.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidRanking(format!("rank {k} is empty")));
            }
            for &i in members {
                if i >= n {
                    return Err(Error::InvalidRanking(format!(
                        "object index {i} out of range"
                    )));
                }
                if rank_of[i] != usize::MAX {
                    return Err(Error::InvalidRanking(format!(
                        "`{}` appears in more than one rank",
                        ids[i]
                    )));
                }
                rank_of[i] = k;
            }
        }
        if let Some(i) = rank_of.iter().position(|&r| r == usize::MAX) {
            return Err(Error::InvalidRanking(format!("`{}` has no rank", ids[i])));
        }
        let ranks = ranks
            .into_iter()
            .map(|mut r| {
                r.sort_unstable();
                r
            })
            .collect();
        Ok(PartialRanking {
            method,
            ids,
            ranks,
            rank_of,
        })
    }

    /// Builds from a per-object rank vector whose values cover `0..K`.
    pub fn from_rank_of(method: Method, ids: Vec<String>, rank_of: &[usize]) -> Result<Self> {
        if rank_of.len() != ids.len() {
            return Err(Error::InvalidRanking(format!(
                "{} ranks given for {} objects",
                rank_of.len(),
                ids.len()
            )));
        }
        let k = rank_of.iter().max().map_or(0, |&m| m + 1);
        let mut ranks = vec![Vec::new(); k];
        for (i, &r) in rank_of.iter().enumerate() {
            ranks[r].push(i);
        }
        Self::from_ranks(method, ids, ranks)
    }

    /// Builds from rank sets given by id, against the object order `ids`.
    pub fn from_id_sets<S: AsRef<str>>(
        method: Method,
        ids: &[String],
        sets: &[Vec<S>],
    ) -> Result<Self> {
        let ranks = sets
            .iter()
            .map(|set| {
                set.iter()
                    .map(|id| {
                        ids.iter()
                            .position(|x| x == id.as_ref())
                            .ok_or_else(|| Error::UnknownId(id.as_ref().to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_ranks(method, ids.to_vec(), ranks)
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    /// Number of ranks, `K`.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[Vec<usize>] {
        &self.ranks
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.rank_of[i]
    }

    pub fn rank_vector(&self) -> &[usize] {
        &self.rank_of
    }

    pub fn rank_of_id(&self, id: &str) -> Option<usize> {
        self.ids
            .iter()
            .position(|x| x == id)
            .map(|i| self.rank_of[i])
    }

    /// Rank members as ids, each rank in canonical object order.
    pub fn rank_sets(&self) -> Vec<Vec<&str>> {
        self.ranks
            .iter()
            .map(|r| r.iter().map(|&i| self.ids[i].as_str()).collect())
            .collect()
    }

    /// Same partition, ignoring the method tag.
    pub fn same_partition(&self, other: &PartialRanking) -> bool {
        self.ids == other.ids && self.ranks == other.ranks
    }
}

/// The concatenated list `T` of methodology 2 with the rank `R[i]` assigned
/// to each position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangedList {
    ids: Vec<String>,
    sequence: Vec<usize>,
    ranks: Vec<usize>,
}

impl ArrangedList {
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn sequence_ids(&self) -> Vec<&str> {
        self.sequence
            .iter()
            .map(|&i| self.ids[i].as_str())
            .collect()
    }

    /// `R[i]` for each position of the sequence.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

/// Rank = depth (longest path ending at the object) in the better-than DAG.
pub fn methodology1(cm: &ComparisonMatrix) -> Result<PartialRanking> {
    let g = build_directed_graph(cm)?;
    let d = compute_depths(&g)?;
    PartialRanking::from_rank_of(Method::M1, cm.ids().to_vec(), d.as_slice())
}

/// Depth levels of the sparsified graph, each sorted by out-degree
/// (descending), then in-degree (ascending), then canonical index; the
/// concatenation is scanned left to right and a new rank starts only where
/// the previous object is better than the next one.
pub fn methodology2(cm: &ComparisonMatrix) -> Result<(PartialRanking, ArrangedList)> {
    let g = build_directed_graph(cm)?;
    let d = compute_depths(&g)?;
    let h = sparsify(&g, &d);

    let mut levels = vec![Vec::new(); d.levels()];
    for i in 0..cm.len() {
        levels[d.depth(i)].push(i);
    }
    let mut sequence = Vec::with_capacity(cm.len());
    for mut level in levels {
        level.sort_by_key(|&i| (Reverse(h.out_degree(i)), h.in_degree(i), i));
        sequence.extend(level);
    }

    let mut ranks = Vec::with_capacity(sequence.len());
    for (pos, &obj) in sequence.iter().enumerate() {
        let r = match pos {
            0 => 0,
            _ => {
                let prev = sequence[pos - 1];
                ranks[pos - 1] + usize::from(cm.is_better(prev, obj))
            }
        };
        ranks.push(r);
    }

    let mut rank_of = vec![0; cm.len()];
    for (&obj, &r) in sequence.iter().zip(&ranks) {
        rank_of[obj] = r;
    }
    let ranking = PartialRanking::from_rank_of(Method::M2, cm.ids().to_vec(), &rank_of)?;
    let arranged = ArrangedList {
        ids: cm.ids().to_vec(),
        sequence,
        ranks,
    };
    Ok((ranking, arranged))
}

/// Each connected component of the incomparability graph becomes one rank,
/// placed at its depth in the component DAG.
pub fn methodology3(cm: &ComparisonMatrix) -> Result<PartialRanking> {
    let u = build_incomparability_graph(cm);
    let components = connected_components(&u);
    let dag = build_component_dag(&components, cm)?;
    let depths = dag.depths();
    let mut rank_of = vec![0; cm.len()];
    for (c, members) in components.iter().enumerate() {
        for &i in members {
            rank_of[i] = depths.depth(c);
        }
    }
    PartialRanking::from_rank_of(Method::M3, cm.ids().to_vec(), &rank_of)
}

/// Runs the given methodology; the arrangement is only produced by M2.
pub fn rank_with(
    method: Method,
    cm: &ComparisonMatrix,
) -> Result<(PartialRanking, Option<ArrangedList>)> {
    match method {
        Method::M1 => Ok((methodology1(cm)?, None)),
        Method::M2 => methodology2(cm).map(|(r, a)| (r, Some(a))),
        Method::M3 => Ok((methodology3(cm)?, None)),
        Method::External => Err(Error::Usage(
            "external rankings are loaded, not computed".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RankingViolation {
    /// The ranking does not cover the matrix's objects exactly.
    Partition(String),
    /// `lower` is better than `higher`, yet ranked below it.
    OrderInverted { higher: String, lower: String },
    /// No object of `rank` is better than any object of `rank + 1`.
    NoWitness { rank: usize },
    /// The members of `rank` split into these incomparability-disconnected groups.
    Disconnected {
        rank: usize,
        groups: Vec<Vec<String>>,
    },
}

impl fmt::Display for RankingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankingViolation::Partition(m) => write!(f, "not a partition: {m}"),
            RankingViolation::OrderInverted { higher, lower } => write!(
                f,
                "property 1: `{higher}` is ranked above `{lower}` but `{lower}` is better"
            ),
            RankingViolation::NoWitness { rank } => write!(
                f,
                "property 2: no object in rank {rank} is better than an object in rank {}",
                rank + 1
            ),
            RankingViolation::Disconnected { rank, groups } => {
                let groups: Vec<String> = groups
                    .iter()
                    .map(|g| format!("{{{}}}", g.join(", ")))
                    .collect();
                write!(
                    f,
                    "property 3: rank {rank} is not connected by incomparability: {}",
                    groups.join(" | ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RankingReport {
    pub violations: Vec<RankingViolation>,
    /// Informational findings that do not invalidate the ranking.
    pub notes: Vec<String>,
}

impl RankingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks all three partial-ranking properties and reports every violation.
///
/// Also notes where ranks `k` and `k + 2` share an incomparable pair whose
/// lower member has no incomparable partner in rank `k + 1`; in that case the
/// arrangement scan of methodology 2 cannot merge those ranks.
pub fn validate_partial_ranking(cm: &ComparisonMatrix, pr: &PartialRanking) -> RankingReport {
    let mut report = RankingReport::default();
    if pr.ids() != cm.ids() {
        report.violations.push(RankingViolation::Partition(
            "ranking objects differ from the relation's objects".into(),
        ));
        return report;
    }
    let n = cm.len();

    for i in 0..n {
        for j in 0..n {
            if pr.rank_of(i) < pr.rank_of(j) && cm.is_better(j, i) {
                report.violations.push(RankingViolation::OrderInverted {
                    higher: cm.id(i).to_string(),
                    lower: cm.id(j).to_string(),
                });
            }
        }
    }

    for (k, pair) in pr.ranks().windows(2).enumerate() {
        let witness = pair[0]
            .iter()
            .any(|&i| pair[1].iter().any(|&j| cm.is_better(i, j)));
        if !witness {
            report
                .violations
                .push(RankingViolation::NoWitness { rank: k });
        }
    }

    for (k, members) in pr.ranks().iter().enumerate() {
        let groups = rank_groups(cm, members);
        if groups.len() > 1 {
            report.violations.push(RankingViolation::Disconnected {
                rank: k,
                groups: groups
                    .iter()
                    .map(|g| g.iter().map(|&i| cm.id(i).to_string()).collect())
                    .collect(),
            });
        }
    }

    let ranks = pr.ranks();
    for k in 0..ranks.len().saturating_sub(2) {
        for &j in &ranks[k + 2] {
            let above = ranks[k].iter().find(|&&i| cm.is_incomparable(i, j));
            let middle = ranks[k + 1].iter().any(|&m| cm.is_incomparable(m, j));
            if let (Some(&i), false) = (above, middle) {
                report.notes.push(format!(
                    "`{}` (rank {k}) ~ `{}` (rank {}) but nothing in rank {} is incomparable to `{}`; \
                     the arrangement scan cannot merge these ranks",
                    cm.id(i),
                    cm.id(j),
                    k + 2,
                    k + 1,
                    cm.id(j)
                ));
            }
        }
    }
    report
}

/// Groups of `members` connected by incomparability among themselves.
fn rank_groups(cm: &ComparisonMatrix, members: &[usize]) -> Vec<Vec<usize>> {
    let adj: Vec<Vec<usize>> = members
        .iter()
        .map(|&a| {
            (0..members.len())
                .filter(|&y| cm.is_incomparable(a, members[y]))
                .collect()
        })
        .collect();
    components_of(members.len(), |x| &adj[x])
        .into_iter()
        .map(|g| g.into_iter().map(|x| members[x]).collect())
        .collect()
}

/// Every valid partial ranking of `cm`, for at most `bound` objects.
///
/// Set partitions are generated as restricted-growth strings in lexicographic
/// order; the block orders of each partition are then explored depth-first,
/// lowest block index first, keeping only orders that satisfy all three
/// properties. The output order is therefore deterministic.
pub fn enumerate_partial_rankings(
    cm: &ComparisonMatrix,
    bound: usize,
) -> Result<Vec<PartialRanking>> {
    let n = cm.len();
    if n > bound {
        return Err(Error::TooLarge { n, bound });
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(PartialRanking::from_ranks(
            Method::External,
            vec![],
            vec![],
        )?);
        return Ok(out);
    }

    let mut rgs = vec![0usize; n];
    loop {
        let k = rgs.iter().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        if blocks.iter().all(|b| rank_groups(cm, b).len() == 1) {
            // before[a][b]: some member of block a is better than some member of block b
            let before: Vec<Vec<bool>> = (0..k)
                .map(|a| {
                    (0..k)
                        .map(|b| {
                            a != b
                                && blocks[a]
                                    .iter()
                                    .any(|&x| blocks[b].iter().any(|&y| cm.is_better(x, y)))
                        })
                        .collect()
                })
                .collect();
            let mut order = Vec::with_capacity(k);
            let mut placed = vec![false; k];
            order_blocks(&before, &mut order, &mut placed, &mut |order| {
                let ranks = order.iter().map(|&b| blocks[b].clone()).collect();
                out.push(
                    PartialRanking::from_ranks(Method::External, cm.ids().to_vec(), ranks)
                        .expect("blocks partition the objects"),
                );
            });
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    Ok(out)
}

fn order_blocks(
    before: &[Vec<bool>],
    order: &mut Vec<usize>,
    placed: &mut [bool],
    emit: &mut impl FnMut(&[usize]),
) {
    let k = before.len();
    if order.len() == k {
        emit(order);
        return;
    }
    for b in 0..k {
        if placed[b] {
            continue;
        }
        // property 1: nothing still unplaced may be better than b
        if (0..k).any(|x| !placed[x] && x != b && before[x][b]) {
            continue;
        }
        // property 2: the previous block needs a witness into b
        if let Some(&prev) = order.last() {
            if !before[prev][b] {
                continue;
            }
        }
        placed[b] = true;
        order.push(b);
        order_blocks(before, order, placed, emit);
        order.pop();
        placed[b] = false;
    }
}

/// Advances a restricted-growth string; false after the last one.
fn next_rgs(rgs: &mut [usize]) -> bool {
    let n = rgs.len();
    for i in (1..n).rev() {
        let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
        if rgs[i] <= max_prefix {
            rgs[i] += 1;
            for x in rgs.iter_mut().skip(i + 1) {
                *x = 0;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderClass {
    /// Every pair comparable.
    Linear,
    /// Incomparability is transitive, with at least one incomparable pair.
    Weak,
    /// Neither.
    General,
}

pub fn classify_order(cm: &ComparisonMatrix) -> OrderClass {
    let n = cm.len();
    let mut any = false;
    for i in 0..n {
        for j in 0..n {
            if !cm.is_incomparable(i, j) {
                continue;
            }
            any = true;
            for k in 0..n {
                if k != i && cm.is_incomparable(j, k) && !cm.is_incomparable(i, k) {
                    return OrderClass::General;
                }
            }
        }
    }
    if any {
        OrderClass::Weak
    } else {
        OrderClass::Linear
    }
}

/// Ranking file shape: `{"method": "M2", "ranks": [[...]], "arrangement": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingFile {
    pub method: Method,
    pub ranks: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<Vec<String>>,
}

impl RankingFile {
    pub fn new(ranking: &PartialRanking, arrangement: Option<&ArrangedList>) -> Self {
        RankingFile {
            method: ranking.method(),
            ranks: ranking
                .rank_sets()
                .into_iter()
                .map(|r| r.into_iter().map(String::from).collect())
                .collect(),
            arrangement: arrangement
                .map(|a| a.sequence_ids().into_iter().map(String::from).collect()),
        }
    }

    /// Resolves the ranks against the object order `ids`.
    pub fn to_ranking(&self, ids: &[String]) -> Result<PartialRanking> {
        PartialRanking::from_id_sets(self.method, ids, &self.ranks)
    }
}
