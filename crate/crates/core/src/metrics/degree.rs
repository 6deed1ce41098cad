use std::collections::BTreeMap;

use crate::cascade::InfectedGraph;
use crate::graph::Graph;

/// Degree counts of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeHistogram {
    /// degree -> number of vertices with that degree (zero counts omitted)
    pub counts: BTreeMap<usize, usize>,
    pub node_count: usize,
    pub total_degree: usize,
}

impl DegreeHistogram {
    pub fn from_degrees<I: IntoIterator<Item = usize>>(degrees: I) -> Self {
        let mut h = DegreeHistogram::default();
        for d in degrees {
            h.add(d, 1);
        }
        h
    }

    pub fn add(&mut self, degree: usize, count: usize) {
        if count == 0 {
            return;
        }
        *self.counts.entry(degree).or_insert(0) += count;
        self.node_count += count;
        self.total_degree += degree * count;
    }

    /// Adds every count of `other`; used to aggregate runs.
    pub fn merge(&mut self, other: &DegreeHistogram) {
        for (&d, &c) in &other.counts {
            self.add(d, c);
        }
    }

    pub fn max_degree(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn distinct_degrees(&self) -> usize {
        self.counts.len()
    }
}

pub fn degree_distribution(g: &Graph) -> DegreeHistogram {
    DegreeHistogram::from_degrees((0..g.node_count()).map(|u| g.degree(u)))
}

/// One logarithmic bin of integer values `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBin {
    pub lo: usize,
    pub hi: usize,
    /// Geometric mean of `lo` and `hi`.
    pub center: f64,
    pub count: usize,
    /// `count / (hi - lo + 1) / node_count`: probability per unit degree.
    pub density: f64,
}

/// Integer bins starting at 1; the bin starting at `lo` ends at
/// `max(lo, ceil(lo * ratio) - 1)`, so small values get a bin each. Bins
/// depend only on `ratio`, so histograms of different graphs share centers.
pub fn log_bin_edges(max: usize, ratio: f64) -> Vec<(usize, usize)> {
    assert!(ratio > 1.0, "bin ratio must exceed 1");
    let mut out = Vec::new();
    let mut lo = 1usize;
    while lo <= max {
        let next = ((lo as f64 * ratio).ceil() as usize).max(lo + 1);
        out.push((lo, next - 1));
        lo = next;
    }
    out
}

/// Log-binned degree density over degrees `1..=max_degree`, including bins
/// with zero count. Degree zero is left out.
pub fn log_binned(hist: &DegreeHistogram, ratio: f64) -> Vec<LogBin> {
    let n = hist.node_count.max(1) as f64;
    log_bin_edges(hist.max_degree(), ratio)
        .into_iter()
        .map(|(lo, hi)| {
            let count: usize = hist.counts.range(lo..=hi).map(|(_, &c)| c).sum();
            LogBin {
                lo,
                hi,
                center: ((lo * hi) as f64).sqrt(),
                count,
                density: count as f64 / (hi - lo + 1) as f64 / n,
            }
        })
        .collect()
}

/// `(|V_H|, 2|E_H| / |V_H|)` for each snapshot.
pub fn densification_series(snapshots: &[InfectedGraph]) -> Vec<(usize, f64)> {
    snapshots
        .iter()
        .map(|s| {
            let n = s.graph.node_count();
            let avg = if n == 0 { 0.0 } else { 2.0 * s.graph.edge_count() as f64 / n as f64 };
            (n, avg)
        })
        .collect()
}
