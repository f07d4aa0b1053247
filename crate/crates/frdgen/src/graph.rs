//! Simple directed graphs, edge classification (reciprocal vs. one-way),
//! and degree/reciprocity statistics.

use std::collections::HashSet;

use thiserror::Error;

use crate::hist::{DegreeHistogram, DegreeKind};

pub type NodeId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge {index}: node id {node} out of range (node count {node_count})")]
    NodeOutOfRange {
        index: usize,
        node: NodeId,
        node_count: u32,
    },
}

/// A simple directed graph: a node count plus a deduplicated set of
/// directed edges with no self-loops. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    node_count: u32,
    edges: HashSet<(NodeId, NodeId)>,
}

impl DiGraph {
    pub fn empty(node_count: u32) -> Self {
        DiGraph {
            node_count,
            edges: HashSet::new(),
        }
    }

    pub(crate) fn from_edge_set(node_count: u32, edges: HashSet<(NodeId, NodeId)>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|&(u, v)| u != v && u < node_count && v < node_count));
        DiGraph { node_count, edges }
    }

    pub fn node_count(&self) -> u32 {
        self.node_count
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied()
    }

    /// Edges in ascending `(source, destination)` order.
    pub fn sorted_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut v: Vec<_> = self.edges.iter().copied().collect();
        v.sort_unstable();
        v
    }
}

/// Builds a simple graph from raw pairs: drops self-loops, deduplicates,
/// and rejects out-of-range node ids (reporting the offending pair index).
pub fn simplify<I>(raw: I, node_count: u32) -> Result<DiGraph, GraphError>
where
    I: IntoIterator<Item = (NodeId, NodeId)>,
{
    let mut edges = HashSet::new();
    for (index, (u, v)) in raw.into_iter().enumerate() {
        for node in [u, v] {
            if node >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    index,
                    node,
                    node_count,
                });
            }
        }
        if u != v {
            edges.insert((u, v));
        }
    }
    Ok(DiGraph::from_edge_set(node_count, edges))
}

/// Edge classification result: unordered reciprocal pairs (stored with
/// the smaller id first) and one-way directed edges, both sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClasses {
    pub reciprocal: Vec<(NodeId, NodeId)>,
    pub one_way: Vec<(NodeId, NodeId)>,
}

/// Splits the edge set into reciprocal pairs and one-way edges.
///
/// A pair {u,v} is reciprocal iff both (u,v) and (v,u) are present.
/// Runs in O(m) expected time via hashed reverse-edge lookups.
pub fn classify_edges(g: &DiGraph) -> EdgeClasses {
    let mut reciprocal = Vec::new();
    let mut one_way = Vec::new();
    for (u, v) in g.edges() {
        if g.contains(v, u) {
            if u < v {
                reciprocal.push((u, v));
            }
        } else {
            one_way.push((u, v));
        }
    }
    reciprocal.sort_unstable();
    one_way.sort_unstable();
    EdgeClasses { reciprocal, one_way }
}

/// Per-node degree split: reciprocal, one-way in, one-way out.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DegreeRecord {
    pub d_rec: u32,
    pub d_in: u32,
    pub d_out: u32,
}

impl DegreeRecord {
    pub fn total_in(&self) -> u32 {
        self.d_in + self.d_rec
    }

    pub fn total_out(&self) -> u32 {
        self.d_out + self.d_rec
    }
}

/// One [`DegreeRecord`] per node.
pub fn degree_records(g: &DiGraph) -> Vec<DegreeRecord> {
    let mut recs = vec![DegreeRecord::default(); g.node_count() as usize];
    for (u, v) in g.edges() {
        if g.contains(v, u) {
            recs[u as usize].d_rec += 1;
        } else {
            recs[u as usize].d_out += 1;
            recs[v as usize].d_in += 1;
        }
    }
    recs
}

/// Graph-level summary: node and edge counts, reciprocity, and the five
/// degree histograms.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub n: u64,
    pub m: u64,
    /// Count of reciprocated *directed* edges (always even).
    pub m_rec: u64,
    /// Reciprocity r = m_rec / m, defined as 0 when m = 0.
    pub r: f64,
    pub in_hist: DegreeHistogram,
    pub out_hist: DegreeHistogram,
    pub rec_hist: DegreeHistogram,
    pub total_in_hist: DegreeHistogram,
    pub total_out_hist: DegreeHistogram,
}

impl GraphStats {
    pub fn histogram(&self, kind: DegreeKind) -> &DegreeHistogram {
        match kind {
            DegreeKind::In => &self.in_hist,
            DegreeKind::Out => &self.out_hist,
            DegreeKind::Rec => &self.rec_hist,
            DegreeKind::TotalIn => &self.total_in_hist,
            DegreeKind::TotalOut => &self.total_out_hist,
        }
    }
}

/// Computes degree histograms and reciprocity for a simple digraph.
pub fn compute_stats(g: &DiGraph) -> GraphStats {
    let recs = degree_records(g);
    let m = g.edge_count();
    let m_rec: u64 = recs.iter().map(|r| r.d_rec as u64).sum();
    let r = if m > 0 { m_rec as f64 / m as f64 } else { 0.0 };
    GraphStats {
        n: g.node_count() as u64,
        m,
        m_rec,
        r,
        in_hist: DegreeHistogram::from_degrees(DegreeKind::In, recs.iter().map(|r| r.d_in)),
        out_hist: DegreeHistogram::from_degrees(DegreeKind::Out, recs.iter().map(|r| r.d_out)),
        rec_hist: DegreeHistogram::from_degrees(DegreeKind::Rec, recs.iter().map(|r| r.d_rec)),
        total_in_hist: DegreeHistogram::from_degrees(
            DegreeKind::TotalIn,
            recs.iter().map(|r| r.total_in()),
        ),
        total_out_hist: DegreeHistogram::from_degrees(
            DegreeKind::TotalOut,
            recs.iter().map(|r| r.total_out()),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simplify_drops_duplicates_and_self_loops() {
        let g = simplify([(0, 1), (0, 1), (1, 1), (1, 0)], 2).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.contains(0, 1));
        assert!(g.contains(1, 0));
    }

    #[test]
    fn simplify_empty_input() {
        let g = simplify([], 5).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn simplify_rejects_out_of_range() {
        let err = simplify([(0, 1), (2, 3)], 3).unwrap_err();
        match err {
            GraphError::NodeOutOfRange { index, node, node_count } => {
                assert_eq!(index, 1);
                assert_eq!(node, 3);
                assert_eq!(node_count, 3);
            }
        }
    }

    #[test]
    fn classify_reciprocal_pair() {
        let g = simplify([(1, 2), (2, 1)], 3).unwrap();
        let c = classify_edges(&g);
        assert_eq!(c.reciprocal, vec![(1, 2)]);
        assert!(c.one_way.is_empty());
    }

    #[test]
    fn classify_one_way() {
        let g = simplify([(1, 2)], 3).unwrap();
        let c = classify_edges(&g);
        assert!(c.reciprocal.is_empty());
        assert_eq!(c.one_way, vec![(1, 2)]);
    }

    #[test]
    fn degree_record_totals() {
        // Node with d_rec=2, d_in=2, d_out=0 has total-in 4, total-out 2.
        let r = DegreeRecord { d_rec: 2, d_in: 2, d_out: 0 };
        assert_eq!(r.total_in(), 4);
        assert_eq!(r.total_out(), 2);
    }

    #[test]
    fn stats_fully_reciprocated() {
        let g = simplify([(1, 2), (2, 1)], 3).unwrap();
        let s = compute_stats(&g);
        assert_eq!(s.n, 3);
        assert_eq!(s.m, 2);
        assert_eq!(s.m_rec, 2);
        assert_eq!(s.r, 1.0);
    }

    #[test]
    fn stats_empty_graph_has_zero_reciprocity() {
        let s = compute_stats(&DiGraph::empty(4));
        assert_eq!(s.m, 0);
        assert_eq!(s.r, 0.0);
    }

    /// Brute-force O(n^2) classifier used as an independent oracle.
    fn classify_oracle(g: &DiGraph) -> EdgeClasses {
        let mut reciprocal = Vec::new();
        let mut one_way = Vec::new();
        let n = g.node_count();
        for u in 0..n {
            for v in 0..n {
                if g.contains(u, v) {
                    if g.contains(v, u) {
                        if u < v {
                            reciprocal.push((u, v));
                        }
                    } else {
                        one_way.push((u, v));
                    }
                }
            }
        }
        EdgeClasses { reciprocal, one_way }
    }

    fn arb_graph(max_n: u32, max_edges: usize) -> impl Strategy<Value = DiGraph> {
        (2..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec((0..n, 0..n), 0..max_edges)
                .prop_map(move |pairs| simplify(pairs, n).unwrap())
        })
    }

    proptest! {
        #[test]
        fn simplify_matches_set_insert_oracle(
            pairs in proptest::collection::vec((0u32..50, 0u32..50), 0..1000)
        ) {
            let g = simplify(pairs.clone(), 50).unwrap();
            let oracle: HashSet<(u32, u32)> =
                pairs.into_iter().filter(|&(u, v)| u != v).collect();
            prop_assert_eq!(g.edge_count(), oracle.len() as u64);
            for &(u, v) in &oracle {
                prop_assert!(g.contains(u, v));
            }
        }

        #[test]
        fn classify_matches_all_pairs_oracle(g in arb_graph(20, 200)) {
            let fast = classify_edges(&g);
            let slow = classify_oracle(&g);
            prop_assert_eq!(&fast, &slow);
            prop_assert_eq!(
                fast.one_way.len() as u64 + 2 * fast.reciprocal.len() as u64,
                g.edge_count()
            );
        }

        #[test]
        fn classification_reassembles_edge_set(g in arb_graph(20, 200)) {
            let c = classify_edges(&g);
            let mut rebuilt: Vec<(u32, u32)> = c.one_way.clone();
            for &(u, v) in &c.reciprocal {
                rebuilt.push((u, v));
                rebuilt.push((v, u));
            }
            rebuilt.sort_unstable();
            prop_assert_eq!(rebuilt, g.sorted_edges());
        }

        #[test]
        fn stats_identities_hold(g in arb_graph(25, 300)) {
            let s = compute_stats(&g);
            let c = classify_edges(&g);
            // m identity over total and over (one-way + rec) histograms.
            prop_assert_eq!(s.total_in_hist.edge_mass(), s.m);
            prop_assert_eq!(s.total_out_hist.edge_mass(), s.m);
            prop_assert_eq!(s.in_hist.edge_mass() + s.rec_hist.edge_mass(), s.m);
            prop_assert_eq!(s.out_hist.edge_mass() + s.rec_hist.edge_mass(), s.m);
            // Reciprocal mass counts both directions of each pair.
            prop_assert_eq!(s.rec_hist.edge_mass(), 2 * c.reciprocal.len() as u64);
            prop_assert_eq!(s.m_rec % 2, 0);
            // Histogram totals cover every node, once per kind.
            for kind in DegreeKind::ALL {
                prop_assert_eq!(s.histogram(kind).node_count(), s.n);
            }
            prop_assert!((0.0..=1.0).contains(&s.r));
            if s.m > 0 {
                let expect = 2.0 * c.reciprocal.len() as f64 / s.m as f64;
                prop_assert!((s.r - expect).abs() < 1e-12);
            }
        }
    }
}
