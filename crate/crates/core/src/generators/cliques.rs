use super::regular::regular_adjacency;
use super::rewire::{check_probability, WorkingGraph};
use super::{regular_degree, GenerateError};
use crate::graph::{check_node_count, Graph};
use crate::rng::seeded;

/// Assignment of every vertex to a planted clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePartition {
    clique_of: Vec<u32>,
    clique_count: usize,
}

impl CliquePartition {
    /// Cliques `{0..k}, {k..2k}, ...`; the last one may be short if `k ∤ n`.
    pub fn contiguous(n: usize, k: usize) -> Self {
        let k = k.max(1);
        CliquePartition {
            clique_of: (0..n).map(|v| (v / k) as u32).collect(),
            clique_count: n.div_ceil(k),
        }
    }

    pub fn from_labels(labels: Vec<u32>) -> Self {
        let clique_count = labels.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        CliquePartition { clique_of: labels, clique_count }
    }

    pub fn node_count(&self) -> usize {
        self.clique_of.len()
    }

    pub fn clique_count(&self) -> usize {
        self.clique_count
    }

    #[inline]
    pub fn clique_of(&self, v: usize) -> usize {
        self.clique_of[v] as usize
    }
}

/// Planted community model: `n/d` disjoint cliques of size `d`, each clique
/// edge `(u, v)` (`u < v`, visited in increasing order) rewired with
/// probability `r` while keeping `u`.
pub fn planted_community(n: usize, d: usize, r: f64, seed: u64) -> Result<Graph, GenerateError> {
    planted_community_counted(n, d, r, seed).map(|(g, _)| g)
}

pub fn planted_community_counted(n: usize, d: usize, r: f64, seed: u64) -> Result<(Graph, usize), GenerateError> {
    if d < 2 || !n.is_multiple_of(d) {
        return Err(GenerateError::InvalidParams(format!(
            "planted community needs d >= 2 dividing n (d = {d}, n = {n})"
        )));
    }
    check_probability("r", r)?;
    check_node_count(n)?;
    let mut work = WorkingGraph::new(n, d + 4);
    let mut edges = Vec::with_capacity(n * (d - 1) / 2);
    for base in (0..n).step_by(d) {
        for u in base..base + d {
            for v in u + 1..base + d {
                edges.push((u as u32, v as u32));
                work.add(u, v);
            }
        }
    }
    let mut rng = seeded(seed);
    let rewired = work.rewire_all(&edges, r, &mut rng);
    Ok((work.into_graph(), rewired))
}

/// Planted clique model: contiguous cliques of size `k` superimposed with a
/// random `r·k`-regular graph on all nodes; coinciding edges merge.
pub fn planted_clique_model(n: usize, k: usize, r: f64, seed: u64) -> Result<Graph, GenerateError> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(GenerateError::InvalidParams(format!("pcm needs k dividing n (k = {k}, n = {n})")));
    }
    check_probability("r", r)?;
    let rk = regular_degree(r, k)
        .ok_or_else(|| GenerateError::InvalidParams(format!("r * k = {} is not an integer", r * k as f64)))?;
    if rk > 0 && rk >= n {
        return Err(GenerateError::InvalidParams(format!("need r * k < n (r * k = {rk}, n = {n})")));
    }
    let mut rng = seeded(seed);
    let random = regular_adjacency(n, rk, &mut rng)?;
    let g = Graph::from_rows(n, |u, row| {
        let base = u - u % k;
        row.extend((base..base + k).filter(|&w| w != u).map(|w| w as u32));
        row.extend_from_slice(&random.adj[u]);
    });
    Ok(g)
}
