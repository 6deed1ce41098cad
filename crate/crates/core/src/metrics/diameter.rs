use rand::seq::index::sample;
use rayon::prelude::*;

use super::MetricError;
use crate::graph::{Graph, VertexSet};
use crate::rng::seeded;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterMode {
    Exact,
    /// BFS from this many uniform sources of the largest component.
    Sampled(usize),
}

impl std::str::FromStr for DiameterMode {
    type Err = MetricError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exact" {
            return Ok(DiameterMode::Exact);
        }
        s.strip_prefix("sampled:")
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .map(DiameterMode::Sampled)
            .ok_or_else(|| MetricError::InvalidConfig(format!("diameter mode {s:?}; use exact or sampled:K")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterReport {
    /// False when only a sample of sources was used; `diameter` is then a
    /// lower bound.
    pub exact: bool,
    pub diameter: usize,
    pub effective_diameter_90: f64,
    pub sources: usize,
    pub component_size: usize,
}

/// Diameter and 90% effective diameter of the largest connected component.
pub fn diameter(g: &Graph, mode: DiameterMode, seed: u64) -> Result<DiameterReport, MetricError> {
    if g.node_count() == 0 {
        return Err(MetricError::EmptyGraph);
    }
    let comp = g.largest_component();
    let (sub, _) = g.induced_subgraph(&VertexSet::from_members(g.node_count(), comp.iter().copied())?)?;
    let n = sub.node_count();
    let sources: Vec<usize> = match mode {
        DiameterMode::Sampled(0) => return Err(MetricError::InvalidConfig("need at least one source".into())),
        DiameterMode::Sampled(k) if k < n => {
            let mut rng = seeded(seed);
            let mut s = sample(&mut rng, n, k).into_vec();
            s.sort_unstable();
            s
        }
        _ => (0..n).collect(),
    };
    let exact = sources.len() == n;
    let histogram = sources
        .par_iter()
        .map_init(
            || (vec![u32::MAX; n], Vec::with_capacity(n)),
            |(dist, queue), &s| bfs_histogram(&sub, s, dist, queue),
        )
        .reduce(Vec::new, add_histograms);
    let diameter = histogram.len().saturating_sub(1);
    Ok(DiameterReport {
        exact,
        diameter,
        effective_diameter_90: effective_diameter(&histogram, 0.9),
        sources: sources.len(),
        component_size: n,
    })
}

/// Counts of vertices at each hop distance from `s` (index = distance).
fn bfs_histogram(g: &Graph, s: usize, dist: &mut [u32], queue: &mut Vec<u32>) -> Vec<u64> {
    queue.clear();
    dist[s] = 0;
    queue.push(s as u32);
    let mut head = 0;
    let mut hist = vec![0u64];
    while head < queue.len() {
        let u = queue[head] as usize;
        head += 1;
        let du = dist[u];
        for &v in g.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                let d = du as usize + 1;
                if hist.len() <= d {
                    hist.push(0);
                }
                hist[d] += 1;
                queue.push(v);
            }
        }
    }
    hist[0] = 1;
    for &v in queue.iter() {
        dist[v as usize] = u32::MAX;
    }
    hist
}

fn add_histograms(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Smallest interpolated hop count within which a `q` fraction of connected
/// pairs lie. `hist[d]` counts (source, target) pairs at distance `d`;
/// distance zero is ignored. The cumulative fraction is interpolated
/// linearly between integer hop counts.
fn effective_diameter(hist: &[u64], q: f64) -> f64 {
    let total: u64 = hist.iter().skip(1).sum();
    if total == 0 {
        return 0.0;
    }
    let mut prev = 0.0;
    let mut cum = 0u64;
    for (d, &c) in hist.iter().enumerate().skip(1) {
        cum += c;
        let frac = cum as f64 / total as f64;
        if frac >= q {
            return (d - 1) as f64 + (q - prev) / (frac - prev);
        }
        prev = frac;
    }
    (hist.len() - 1) as f64
}
