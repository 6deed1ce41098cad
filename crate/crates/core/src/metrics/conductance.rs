use std::cmp::Ordering;

use super::MetricError;
use crate::graph::{Graph, VertexSet};

/// Exact conductance `cut / denom` kept as integers so values can be compared
/// without rounding.
#[derive(Debug, Clone, Copy, Eq)]
pub struct Conductance {
    pub cut: u64,
    pub denom: u64,
}

impl Conductance {
    pub fn value(self) -> f64 {
        self.cut as f64 / self.denom as f64
    }
}

impl PartialEq for Conductance {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for Conductance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Conductance {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.cut as u128 * other.denom as u128).cmp(&(other.cut as u128 * self.denom as u128))
    }
}

/// Cut edges and the volumes on both sides of a vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutStats {
    pub cut: u64,
    pub volume_inside: u64,
    pub volume_outside: u64,
}

impl CutStats {
    pub fn conductance(self) -> Result<Conductance, MetricError> {
        let denom = self.volume_inside.min(self.volume_outside);
        if denom == 0 {
            return Err(MetricError::ConductanceUndefined("one side has zero volume".into()));
        }
        Ok(Conductance { cut: self.cut, denom })
    }
}

/// Cut and volumes of `members` (duplicates ignored).
pub fn cut_stats(g: &Graph, members: &[usize]) -> Result<CutStats, MetricError> {
    let set = VertexSet::from_members(g.node_count(), members.iter().copied())?;
    Ok(cut_stats_of(g, &set))
}

fn cut_stats_of(g: &Graph, set: &VertexSet) -> CutStats {
    let mut cut = 0u64;
    let mut inside = 0u64;
    for &u in set.members() {
        inside += g.degree(u) as u64;
        cut += g.neighbors(u).iter().filter(|&&v| !set.contains(v as usize)).count() as u64;
    }
    CutStats { cut, volume_inside: inside, volume_outside: g.total_degree() as u64 - inside }
}

/// Exact conductance of a vertex set.
pub fn conductance_of(g: &Graph, set: &VertexSet) -> Result<Conductance, MetricError> {
    if set.universe() != g.node_count() {
        return Err(MetricError::Graph(crate::graph::GraphError::VertexSetMismatch {
            set: set.universe(),
            graph: g.node_count(),
        }));
    }
    if set.is_empty() || set.len() == g.node_count() {
        return Err(MetricError::ConductanceUndefined("set must be non-empty and proper".into()));
    }
    cut_stats_of(g, set).conductance()
}

/// `|E(S, S̄)| / min(vol S, vol S̄)`.
pub fn conductance(g: &Graph, set: &VertexSet) -> Result<f64, MetricError> {
    conductance_of(g, set).map(Conductance::value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::planted_community;

    pub(crate) fn barbell() -> Graph {
        // Two K5 (0..5 and 5..10) joined by the bridge 4-5.
        let mut edges = vec![(4, 5)];
        for base in [0, 5] {
            for u in base..base + 5 {
                for v in u + 1..base + 5 {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn disconnected_clique_has_zero() {
        let g = planted_community(12, 4, 0.0, 0).unwrap();
        let s = VertexSet::from_members(12, 0..4).unwrap();
        assert_eq!(conductance(&g, &s).unwrap(), 0.0);
    }

    #[test]
    fn single_vertex_is_one() {
        let g = barbell();
        let s = VertexSet::from_members(10, [0]).unwrap();
        assert_eq!(conductance(&g, &s).unwrap(), 1.0);
    }

    #[test]
    fn barbell_half() {
        let g = barbell();
        let s = VertexSet::from_members(10, 0..5).unwrap();
        let c = conductance_of(&g, &s).unwrap();
        assert_eq!((c.cut, c.denom), (1, 21));
        assert_eq!(c, Conductance { cut: 2, denom: 42 });
        assert_eq!(conductance(&g, &s.complement()).unwrap(), 1.0 / 21.0);
    }

    #[test]
    fn undefined_cases() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(conductance(&g, &VertexSet::new(3)).is_err());
        assert!(conductance(&g, &VertexSet::full(3)).is_err());
        // {0, 1} holds all the volume; the isolated side has none.
        assert!(conductance(&g, &VertexSet::from_members(3, [0, 1]).unwrap()).is_err());
    }
}
