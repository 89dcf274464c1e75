//! Graphs induced by a comparison matrix.
//!
//! * [`DirectedOrderGraph`]: `i -> j` whenever `i` is better than `j` (the
//!   graph G), or a subgraph of it with the same depths (sparsified H,
//!   transitive reduction).
//! * [`IncomparabilityGraph`]: undirected, `i -- j` whenever `i ~ j` (U).
//! * [`ComponentDag`]: DAG over the connected components of U (G').

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::dot::quote;
use crate::error::{Error, Result};
use crate::model::ComparisonMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedOrderGraph {
    ids: Vec<String>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl DirectedOrderGraph {
    /// Fails with [`Error::CycleDetected`] unless the edges form a DAG.
    pub fn new(ids: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let g = Self::new_unchecked(ids, edges);
        g.topological_order()?;
        Ok(g)
    }

    fn new_unchecked(ids: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = ids.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (i, j) in edges {
            succ[i].push(j);
            pred[j].push(i);
        }
        for l in succ.iter_mut().chain(pred.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        DirectedOrderGraph { ids, succ, pred }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.succ[i].len()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.pred[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    /// Edges sorted by source, then target.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Edges as id pairs, for assertions and export.
    pub fn edge_ids(&self) -> Vec<(&str, &str)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.ids[i].as_str(), self.ids[j].as_str()))
            .collect()
    }

    /// Kahn's algorithm, always taking the smallest ready index.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|i| self.pred[i].len()).collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(i)) = ready.pop() {
            order.push(i);
            for &j in &self.succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(Reverse(j));
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(self.ids[stuck].clone()));
        }
        Ok(order)
    }

    /// Graphviz rendering; with `depths`, each node is labelled `id (d=k)`.
    pub fn to_dot(&self, name: &str, depths: Option<&DepthAssignment>) -> String {
        let mut out = format!("digraph {} {{\n", quote(name));
        for (i, id) in self.ids.iter().enumerate() {
            match depths {
                Some(d) => {
                    let label = format!("{id} (d={})", d.depth(i));
                    let _ = writeln!(out, "  {} [label={}];", quote(id), quote(&label));
                }
                None => {
                    let _ = writeln!(out, "  {};", quote(id));
                }
            }
        }
        for (a, b) in self.edge_ids() {
            let _ = writeln!(out, "  {} -> {};", quote(a), quote(b));
        }
        out.push_str("}\n");
        out
    }
}

/// Depth of every node: length of the longest directed path ending there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthAssignment {
    ids: Vec<String>,
    depth: Vec<usize>,
}

impl DepthAssignment {
    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    pub fn get(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id).map(|i| self.depth[i])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.depth
    }

    /// Number of distinct levels, i.e. the longest path length plus one.
    pub fn levels(&self) -> usize {
        self.depth.iter().max().map_or(0, |&d| d + 1)
    }
}

/// G: one edge per better-than pair.
pub fn build_directed_graph(cm: &ComparisonMatrix) -> Result<DirectedOrderGraph> {
    DirectedOrderGraph::new(cm.ids().to_vec(), cm.better_pairs())
}

/// Longest-path depths, computed in one pass over a topological order.
pub fn compute_depths(g: &DirectedOrderGraph) -> Result<DepthAssignment> {
    let order = g.topological_order()?;
    let mut depth = vec![0usize; g.len()];
    for i in order {
        for &j in g.successors(i) {
            depth[j] = depth[j].max(depth[i] + 1);
        }
    }
    Ok(DepthAssignment {
        ids: g.ids.clone(),
        depth,
    })
}

/// Minimal subgraph with the same reachability.
pub fn transitive_reduction(g: &DirectedOrderGraph) -> Result<DirectedOrderGraph> {
    let order = g.topological_order()?;
    let n = g.len();
    let words = n.div_ceil(64).max(1);
    // reach[i]: nodes reachable from i by a path of length >= 1
    let mut reach = vec![vec![0u64; words]; n];
    for &i in order.iter().rev() {
        let mut r = vec![0u64; words];
        for &s in g.successors(i) {
            r[s / 64] |= 1 << (s % 64);
            for (w, x) in r.iter_mut().zip(&reach[s]) {
                *w |= x;
            }
        }
        reach[i] = r;
    }
    let reaches = |a: usize, b: usize| reach[a][b / 64] >> (b % 64) & 1 == 1;
    let kept = g
        .edges()
        .into_iter()
        .filter(|&(i, j)| !g.successors(i).iter().any(|&w| w != j && reaches(w, j)));
    Ok(DirectedOrderGraph::new_unchecked(g.ids.clone(), kept))
}

/// H: drops every edge spanning more than one depth level.
pub fn sparsify(g: &DirectedOrderGraph, d: &DepthAssignment) -> DirectedOrderGraph {
    let kept = g
        .edges()
        .into_iter()
        .filter(|&(i, j)| d.depth(j) == d.depth(i) + 1);
    DirectedOrderGraph::new_unchecked(g.ids.clone(), kept)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncomparabilityGraph {
    ids: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl IncomparabilityGraph {
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    /// Unordered edges as `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, a)| a.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {} {{\n", quote(name));
        for id in &self.ids {
            let _ = writeln!(out, "  {};", quote(id));
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", quote(&self.ids[i]), quote(&self.ids[j]));
        }
        out.push_str("}\n");
        out
    }
}

/// U: an undirected edge for every incomparable pair.
pub fn build_incomparability_graph(cm: &ComparisonMatrix) -> IncomparabilityGraph {
    let n = cm.len();
    let adj = (0..n)
        .map(|i| (0..n).filter(|&j| cm.is_incomparable(i, j)).collect())
        .collect();
    IncomparabilityGraph {
        ids: cm.ids().to_vec(),
        adj,
    }
}

/// Connected components, each sorted, ordered by their smallest member.
pub fn connected_components(u: &IncomparabilityGraph) -> Vec<Vec<usize>> {
    components_of(u.ids.len(), |i| &u.adj[i])
}

pub(crate) fn components_of<'a>(n: usize, adj: impl Fn(usize) -> &'a [usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in adj(x) {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// G': one node per component, `a -> b` when every member of `a` is better
/// than every member of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDag {
    ids: Vec<String>,
    components: Vec<Vec<usize>>,
    graph: DirectedOrderGraph,
}

impl ComponentDag {
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_ids(&self, c: usize) -> Vec<&str> {
        self.components[c]
            .iter()
            .map(|&i| self.ids[i].as_str())
            .collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges()
    }

    pub fn graph(&self) -> &DirectedOrderGraph {
        &self.graph
    }

    pub fn depths(&self) -> DepthAssignment {
        compute_depths(&self.graph).expect("component DAG is acyclic by construction")
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n", quote(name));
        for (c, members) in self.components.iter().enumerate() {
            let label = members
                .iter()
                .map(|&i| self.ids[i].as_str())
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(
                out,
                "  {} [label={}];",
                quote(&format!("V{c}")),
                quote(&format!("V{c}: {{{label}}}"))
            );
        }
        for (a, b) in self.edges() {
            let _ = writeln!(
                out,
                "  {} -> {};",
                quote(&format!("V{a}")),
                quote(&format!("V{b}"))
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_component_dag(
    components: &[Vec<usize>],
    cm: &ComparisonMatrix,
) -> Result<ComponentDag> {
    let n = cm.len();
    let mut owner = vec![usize::MAX; n];
    for (c, members) in components.iter().enumerate() {
        if members.is_empty() {
            return Err(Error::InvalidPartition(format!("component {c} is empty")));
        }
        for &i in members {
            if i >= n || owner[i] != usize::MAX {
                return Err(Error::InvalidPartition(format!(
                    "object index {i} is out of range or repeated"
                )));
            }
            owner[i] = c;
        }
    }
    if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::InvalidPartition(format!(
            "`{}` is not in any component",
            cm.id(i)
        )));
    }

    let k = components.len();
    let mut edges = Vec::new();
    for a in 0..k {
        for b in (a + 1)..k {
            let cross = || {
                components[a]
                    .iter()
                    .flat_map(|&x| components[b].iter().map(move |&y| (x, y)))
            };
            if cross().all(|(x, y)| cm.is_better(x, y)) {
                edges.push((a, b));
            } else if cross().all(|(x, y)| cm.is_better(y, x)) {
                edges.push((b, a));
            } else {
                return Err(Error::MixedComponentDirection(a, b));
            }
        }
    }
    let names = (0..k).map(|c| format!("V{c}")).collect();
    let graph = DirectedOrderGraph::new(names, edges)?;
    Ok(ComponentDag {
        ids: cm.ids().to_vec(),
        components: components.to_vec(),
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EdgeList;

    fn cm(ids: &[&str], better: &[(&str, &str)]) -> ComparisonMatrix {
        ComparisonMatrix::from_edge_list(&EdgeList::new(ids, better)).unwrap()
    }

    fn m3() -> ComparisonMatrix {
        cm(
            &["t0", "t1", "t2", "t3"],
            &[
                ("t0", "t1"),
                ("t0", "t3"),
                ("t2", "t1"),
                ("t2", "t3"),
                ("t1", "t3"),
            ],
        )
    }

    fn chain() -> ComparisonMatrix {
        cm(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
    }

    #[test]
    fn m3_graph_and_depths() {
        let g = build_directed_graph(&m3()).unwrap();
        assert_eq!(
            g.edge_ids(),
            vec![
                ("t0", "t1"),
                ("t0", "t3"),
                ("t1", "t3"),
                ("t2", "t1"),
                ("t2", "t3")
            ]
        );
        let d = compute_depths(&g).unwrap();
        assert_eq!(d.as_slice(), &[0, 1, 0, 2]);
        assert_eq!(d.get("t3"), Some(2));
        assert_eq!(d.levels(), 3);
    }

    #[test]
    fn m3_transitive_reduction() {
        let g = build_directed_graph(&m3()).unwrap();
        let tr = transitive_reduction(&g).unwrap();
        assert_eq!(
            tr.edge_ids(),
            vec![("t0", "t1"), ("t1", "t3"), ("t2", "t1")]
        );
    }

    #[test]
    fn chain_graphs() {
        let g = build_directed_graph(&chain()).unwrap();
        assert_eq!(g.edge_count(), 3);
        let tr = transitive_reduction(&g).unwrap();
        assert_eq!(tr.edge_ids(), vec![("a", "b"), ("b", "c")]);
        let d = compute_depths(&g).unwrap();
        let h = sparsify(&g, &d);
        assert_eq!(h.edge_ids(), vec![("a", "b"), ("b", "c")]);
        // already one level per edge
        assert_eq!(sparsify(&h, &d), h);
    }

    #[test]
    fn edgeless_graphs() {
        let none = cm(&["a", "b", "c"], &[]);
        let g = build_directed_graph(&none).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(compute_depths(&g).unwrap().as_slice(), &[0, 0, 0]);
        assert_eq!(transitive_reduction(&g).unwrap(), g);
    }

    #[test]
    fn cycle_is_rejected() {
        let bad = ComparisonMatrix::from_better_pairs(
            vec!["a".into(), "b".into()],
            &[("a", "b"), ("b", "a")],
        )
        .unwrap();
        assert!(matches!(
            build_directed_graph(&bad),
            Err(Error::CycleDetected(_))
        ));
    }

    #[test]
    fn m2_incomparability() {
        let m2 = cm(
            &["t0", "t1", "t2", "t3"],
            &[("t0", "t3"), ("t1", "t3"), ("t2", "t3")],
        );
        let u = build_incomparability_graph(&m2);
        assert!(u.neighbours(3).is_empty());
        assert_eq!(u.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(connected_components(&u), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn components_extremes() {
        let u = build_incomparability_graph(&chain());
        assert!(u.edges().is_empty());
        assert_eq!(connected_components(&u), vec![vec![0], vec![1], vec![2]]);

        let all = cm(&["a", "b", "c"], &[]);
        let u = build_incomparability_graph(&all);
        assert_eq!(u.edges().len(), 3);
        assert_eq!(connected_components(&u), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn component_dag_on_chain() {
        let c = chain();
        let comps = connected_components(&build_incomparability_graph(&c));
        let dag = build_component_dag(&comps, &c).unwrap();
        assert_eq!(dag.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(dag.depths().as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn component_dag_single_component() {
        let all = cm(&["a", "b"], &[]);
        let comps = connected_components(&build_incomparability_graph(&all));
        let dag = build_component_dag(&comps, &all).unwrap();
        assert_eq!(dag.components().len(), 1);
        assert!(dag.edges().is_empty());
    }

    #[test]
    fn component_dag_rejects_mixed_direction() {
        // a < b, c < d, with {a, d} and {b, c} grouped together by hand
        let c = cm(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        let r = build_component_dag(&[vec![0, 3], vec![1, 2]], &c);
        assert!(matches!(r, Err(Error::MixedComponentDirection(0, 1))));
    }

    #[test]
    fn component_dag_rejects_bad_partition() {
        let c = chain();
        assert!(matches!(
            build_component_dag(&[vec![0, 1]], &c),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            build_component_dag(&[vec![0, 1], vec![1, 2]], &c),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn dot_output_is_sorted() {
        let g = build_directed_graph(&m3()).unwrap();
        let d = compute_depths(&g).unwrap();
        let dot = g.to_dot("G", Some(&d));
        assert!(dot.starts_with("digraph \"G\" {\n"));
        assert!(dot.contains("\"t3\" [label=\"t3 (d=2)\"];"));
        let first = dot.find("\"t0\" -> \"t1\"").unwrap();
        let last = dot.find("\"t2\" -> \"t3\"").unwrap();
        assert!(first < last);
        let u = build_incomparability_graph(&m3());
        assert!(u.to_dot("U").contains("\"t0\" -- \"t2\";"));
    }
}
