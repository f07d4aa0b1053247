//! Text formats: SNAP-style edge lists, log-binned distributions, and the
//! stats/distribution document that round-trips graph measurements.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::generate::GenerationReport;
use crate::graph::{DiGraph, GraphStats, NodeId};
use crate::hist::{DegreeHistogram, DegreeKind};

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn malformed(line: usize, msg: impl Into<String>) -> ReadError {
    ReadError::Malformed { line, msg: msg.into() }
}

/// Mapping from contiguous internal node ids back to external ids, in
/// first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    to_external: Vec<u64>,
}

impl IdMap {
    pub fn len(&self) -> usize {
        self.to_external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_external.is_empty()
    }

    pub fn external(&self, internal: NodeId) -> u64 {
        self.to_external[internal as usize]
    }
}

/// Reads a whitespace-separated edge list. Lines starting with `#` are
/// comments; every data line must hold exactly two non-negative integer
/// ids. External ids are remapped to contiguous internal ids in
/// first-appearance order.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<(Vec<(NodeId, NodeId)>, IdMap), ReadError> {
    let mut map: HashMap<u64, NodeId> = HashMap::new();
    let mut to_external: Vec<u64> = Vec::new();
    let mut pairs = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_ascii_whitespace();
        let a = tokens
            .next()
            .ok_or_else(|| malformed(line_no, "expected two integer tokens"))?;
        let b = tokens
            .next()
            .ok_or_else(|| malformed(line_no, "expected two integer tokens, found one"))?;
        if tokens.next().is_some() {
            return Err(malformed(line_no, "expected exactly two tokens"));
        }
        let mut intern = |token: &str| -> Result<NodeId, ReadError> {
            let ext: u64 = token
                .parse()
                .map_err(|_| malformed(line_no, format!("invalid node id {token:?}")))?;
            Ok(match map.get(&ext) {
                Some(&id) => id,
                None => {
                    let id = NodeId::try_from(to_external.len())
                        .map_err(|_| malformed(line_no, "too many distinct node ids"))?;
                    map.insert(ext, id);
                    to_external.push(ext);
                    id
                }
            })
        };
        let u = intern(a)?;
        let v = intern(b)?;
        pairs.push((u, v));
    }
    Ok((pairs, IdMap { to_external }))
}

/// Writes the graph as a tab-separated edge list in deterministic sorted
/// order, preceded by a single `#` header line. When an id map is given,
/// internal ids are translated back to external ids before sorting.
pub fn write_edge_list<W: Write + ?Sized>(
    writer: &mut W,
    g: &DiGraph,
    map: Option<&IdMap>,
) -> io::Result<()> {
    writeln!(
        writer,
        "# directed edge list: {} nodes, {} edges",
        g.node_count(),
        g.edge_count()
    )?;
    let mut edges: Vec<(u64, u64)> = g
        .edges()
        .map(|(u, v)| match map {
            Some(m) => (m.external(u), m.external(v)),
            None => (u as u64, v as u64),
        })
        .collect();
    edges.sort_unstable();
    for (u, v) in edges {
        writeln!(writer, "{u}\t{v}")?;
    }
    Ok(())
}

/// One geometric bin: degrees in [lo, hi).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogBin {
    pub lo: usize,
    pub hi: usize,
    pub count: u64,
}

/// Degree counts summed into power-of-two bins [1,2), [2,4), [4,8), ...
/// Degree 0 is reported separately, never binned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogBinnedDistribution {
    pub zero_count: u64,
    pub bins: Vec<LogBin>,
}

pub fn log_bin(hist: &DegreeHistogram) -> LogBinnedDistribution {
    let d_max = hist.d_max();
    let mut bins = Vec::new();
    let mut lo = 1usize;
    while lo <= d_max {
        let hi = lo * 2;
        let count = (lo..hi.min(d_max + 1)).map(|d| hist.count(d)).sum();
        bins.push(LogBin { lo, hi, count });
        lo = hi;
    }
    LogBinnedDistribution {
        zero_count: hist.count(0),
        bins,
    }
}

pub const STATS_HEADER: &str = "# frdgen stats v1";

/// Writes the stats document: a versioned header, key-value lines, then
/// the five raw degree distributions and their log-binned forms. Field
/// order is fixed so identical inputs produce identical bytes. Elapsed
/// time is deliberately not part of the document; it goes to logging.
pub fn export_stats<W: Write + ?Sized>(
    writer: &mut W,
    stats: &GraphStats,
    report: Option<&GenerationReport>,
) -> io::Result<()> {
    writeln!(writer, "{STATS_HEADER}")?;
    writeln!(writer, "n\t{}", stats.n)?;
    writeln!(writer, "m\t{}", stats.m)?;
    writeln!(writer, "m_rec\t{}", stats.m_rec)?;
    writeln!(writer, "r\t{}", stats.r)?;
    if let Some(rep) = report {
        writeln!(writer, "seed\t{}", rep.seed)?;
        writeln!(writer, "requested_edges\t{}", rep.requested_edges)?;
        writeln!(writer, "emitted_edges\t{}", rep.emitted_edges)?;
        writeln!(writer, "removed_self_loops\t{}", rep.removed_self_loops)?;
        writeln!(writer, "removed_duplicates\t{}", rep.removed_duplicates)?;
        writeln!(writer, "removed_unpaired\t{}", rep.removed_unpaired)?;
        writeln!(writer, "rng_draws\t{}", rep.rng_draws)?;
    }
    for kind in DegreeKind::ALL {
        writeln!(writer, "[degrees {kind}]")?;
        let h = stats.histogram(kind);
        for (d, &c) in h.counts().iter().enumerate() {
            if c > 0 {
                writeln!(writer, "{d}\t{c}")?;
            }
        }
    }
    for kind in DegreeKind::ALL {
        writeln!(writer, "[logbin {kind}]")?;
        let lb = log_bin(stats.histogram(kind));
        for b in &lb.bins {
            writeln!(writer, "{}\t{}\t{}", b.lo, b.hi, b.count)?;
        }
    }
    Ok(())
}

/// A parsed stats document: summary scalars plus the five distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsDocument {
    pub n: u64,
    pub m: u64,
    pub m_rec: u64,
    pub r: f64,
    pub in_hist: DegreeHistogram,
    pub out_hist: DegreeHistogram,
    pub rec_hist: DegreeHistogram,
    pub total_in_hist: DegreeHistogram,
    pub total_out_hist: DegreeHistogram,
}

impl StatsDocument {
    pub fn histogram(&self, kind: DegreeKind) -> &DegreeHistogram {
        match kind {
            DegreeKind::In => &self.in_hist,
            DegreeKind::Out => &self.out_hist,
            DegreeKind::Rec => &self.rec_hist,
            DegreeKind::TotalIn => &self.total_in_hist,
            DegreeKind::TotalOut => &self.total_out_hist,
        }
    }

    pub fn from_stats(stats: &GraphStats) -> Self {
        StatsDocument {
            n: stats.n,
            m: stats.m,
            m_rec: stats.m_rec,
            r: stats.r,
            in_hist: stats.in_hist.clone(),
            out_hist: stats.out_hist.clone(),
            rec_hist: stats.rec_hist.clone(),
            total_in_hist: stats.total_in_hist.clone(),
            total_out_hist: stats.total_out_hist.clone(),
        }
    }
}

/// Parses a stats document produced by [`export_stats`]. Log-binned
/// sections are ignored (they are derivable from the raw distributions).
pub fn read_stats<R: BufRead>(reader: R) -> Result<StatsDocument, ReadError> {
    let mut lines = reader.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| malformed(1, "empty document"))?;
    let first = first?;
    if first.trim() != STATS_HEADER {
        return Err(malformed(1, format!("expected header {STATS_HEADER:?}")));
    }

    let mut scalars: HashMap<String, String> = HashMap::new();
    let mut hists: HashMap<DegreeKind, DegreeHistogram> = DegreeKind::ALL
        .into_iter()
        .map(|k| (k, DegreeHistogram::new(k)))
        .collect();
    let mut section: Option<DegreeKind> = None;
    let mut in_logbin = false;

    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if let Some(kind_label) = name.strip_prefix("degrees ") {
                let kind = DegreeKind::parse(kind_label)
                    .ok_or_else(|| malformed(line_no, format!("unknown kind {kind_label:?}")))?;
                section = Some(kind);
                in_logbin = false;
            } else if name.starts_with("logbin ") {
                section = None;
                in_logbin = true;
            } else {
                return Err(malformed(line_no, format!("unknown section {name:?}")));
            }
            continue;
        }
        if in_logbin {
            continue;
        }
        let mut tokens = t.split('\t');
        let key = tokens.next().unwrap();
        match section {
            Some(kind) => {
                let d: usize = key
                    .parse()
                    .map_err(|_| malformed(line_no, format!("invalid degree {key:?}")))?;
                let c: u64 = tokens
                    .next()
                    .ok_or_else(|| malformed(line_no, "missing count"))?
                    .parse()
                    .map_err(|_| malformed(line_no, "invalid count"))?;
                hists.get_mut(&kind).unwrap().set_count(d, c);
            }
            None => {
                let value = tokens
                    .next()
                    .ok_or_else(|| malformed(line_no, "missing value"))?;
                scalars.insert(key.to_string(), value.to_string());
            }
        }
    }

    let scalar = |key: &str| -> Result<&String, ReadError> {
        scalars
            .get(key)
            .ok_or_else(|| malformed(0, format!("missing field {key:?}")))
    };
    let parse_u64 = |key: &str| -> Result<u64, ReadError> {
        scalar(key)?
            .parse()
            .map_err(|_| malformed(0, format!("invalid value for {key:?}")))
    };
    Ok(StatsDocument {
        n: parse_u64("n")?,
        m: parse_u64("m")?,
        m_rec: parse_u64("m_rec")?,
        r: scalar("r")?
            .parse()
            .map_err(|_| malformed(0, "invalid value for \"r\""))?,
        in_hist: hists.remove(&DegreeKind::In).unwrap(),
        out_hist: hists.remove(&DegreeKind::Out).unwrap(),
        rec_hist: hists.remove(&DegreeKind::Rec).unwrap(),
        total_in_hist: hists.remove(&DegreeKind::TotalIn).unwrap(),
        total_out_hist: hists.remove(&DegreeKind::TotalOut).unwrap(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{compute_stats, simplify};
    use proptest::prelude::*;

    #[test]
    fn read_maps_ids_in_first_appearance_order() {
        let input = "# header\n3 5\n5 3\n";
        let (pairs, map) = read_edge_list(input.as_bytes()).unwrap();
        assert_eq!(pairs, vec![(0, 1), (1, 0)]);
        assert_eq!(map.external(0), 3);
        assert_eq!(map.external(1), 5);
    }

    #[test]
    fn read_empty_stream() {
        let (pairs, map) = read_edge_list("".as_bytes()).unwrap();
        assert!(pairs.is_empty());
        assert!(map.is_empty());
    }

    #[test]
    fn read_rejects_malformed_line() {
        let err = read_edge_list("1 2\n1 2 3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ReadError::Malformed { line: 2, .. }));
    }

    #[test]
    fn read_rejects_negative_id() {
        let err = read_edge_list("1 -2\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("-2"));
    }

    #[test]
    fn write_empty_graph_is_header_only() {
        let g = DiGraph::empty(0);
        let mut out = Vec::new();
        write_edge_list(&mut out, &g, None).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with('#'));
    }

    #[test]
    fn write_line_count_matches_edges() {
        let g = simplify((0..50u32).map(|i| (i, (i + 1) % 50)), 50).unwrap();
        let mut out = Vec::new();
        write_edge_list(&mut out, &g, None).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count() as u64, g.edge_count() + 1);
    }

    #[test]
    fn log_bin_single_degree() {
        let h = DegreeHistogram::from_counts(DegreeKind::In, vec![0, 10]);
        let lb = log_bin(&h);
        assert_eq!(lb.bins, vec![LogBin { lo: 1, hi: 2, count: 10 }]);
    }

    #[test]
    fn log_bin_power_of_two_boundaries() {
        let h = DegreeHistogram::from_counts(DegreeKind::In, vec![0, 3, 4, 5]);
        let lb = log_bin(&h);
        assert_eq!(
            lb.bins,
            vec![
                LogBin { lo: 1, hi: 2, count: 3 },
                LogBin { lo: 2, hi: 4, count: 9 },
            ]
        );
    }

    #[test]
    fn exported_r_is_exactly_one_for_reciprocal_pair() {
        let g = simplify([(0, 1), (1, 0)], 2).unwrap();
        let stats = compute_stats(&g);
        let mut out = Vec::new();
        export_stats(&mut out, &stats, None).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.lines().any(|l| l == "r\t1"), "{text}");
    }

    #[test]
    fn export_then_read_round_trips() {
        let g = simplify([(0, 1), (1, 0), (1, 2), (3, 1), (2, 3)], 5).unwrap();
        let stats = compute_stats(&g);
        let mut out = Vec::new();
        export_stats(&mut out, &stats, None).unwrap();
        let doc = read_stats(out.as_slice()).unwrap();
        assert_eq!(doc, StatsDocument::from_stats(&stats));
        // Exported r is consistent with the exported distributions.
        let recomputed = doc.rec_hist.edge_mass() as f64 / doc.m as f64;
        assert!((doc.r - recomputed).abs() < 1e-12);
    }

    #[test]
    fn read_stats_rejects_bad_header() {
        let err = read_stats("# something else\nn\t3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ReadError::Malformed { line: 1, .. }));
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(
            pairs in proptest::collection::vec((0u64..500, 0u64..500), 0..300)
        ) {
            let text: String = pairs
                .iter()
                .map(|(u, v)| format!("{u} {v}\n"))
                .collect();
            let (first_pairs, first_map) = read_edge_list(text.as_bytes()).unwrap();
            let g = simplify(first_pairs.clone(), first_map.len() as u32).unwrap();

            let mut written = Vec::new();
            write_edge_list(&mut written, &g, Some(&first_map)).unwrap();
            let (second_pairs, second_map) = read_edge_list(written.as_slice()).unwrap();
            let g2 = simplify(second_pairs, second_map.len() as u32).unwrap();

            // Same edge set under the external ids.
            let ext = |g: &DiGraph, m: &IdMap| {
                let mut e: Vec<(u64, u64)> = g
                    .edges()
                    .map(|(u, v)| (m.external(u), m.external(v)))
                    .collect();
                e.sort_unstable();
                e
            };
            prop_assert_eq!(ext(&g, &first_map), ext(&g2, &second_map));
        }

        #[test]
        fn log_bin_conserves_positive_degree_nodes(
            counts in proptest::collection::vec(0u64..40, 0..60)
        ) {
            let h = DegreeHistogram::from_counts(DegreeKind::Out, counts);
            let lb = log_bin(&h);
            let binned: u64 = lb.bins.iter().map(|b| b.count).sum();
            let positive: u64 = h.positive().map(|(_, c)| c).sum();
            prop_assert_eq!(binned, positive);
            prop_assert_eq!(lb.zero_count, h.count(0));
        }
    }
}
