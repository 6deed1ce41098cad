use super::OracleError;
use crate::graph::Graph;
use crate::metrics::Conductance;

pub const EXHAUSTIVE_NODE_LIMIT: usize = 20;

struct BitGraph {
    adj: Vec<u32>,
    degree: Vec<u64>,
    total: u64,
    n: usize,
}

impl BitGraph {
    fn new(g: &Graph) -> Result<Self, OracleError> {
        let n = g.node_count();
        if n > EXHAUSTIVE_NODE_LIMIT {
            return Err(OracleError::TooLarge { node_count: n, limit: EXHAUSTIVE_NODE_LIMIT });
        }
        let adj = (0..n).map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | (1 << v))).collect();
        let degree: Vec<u64> = (0..n).map(|u| g.degree(u) as u64).collect();
        let total = degree.iter().sum();
        Ok(BitGraph { adj, degree, total, n })
    }

    fn conductance(&self, set: u32) -> Option<Conductance> {
        let (mut cut, mut vol) = (0u64, 0u64);
        let mut rest = set;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            cut += (self.adj[u] & !set).count_ones() as u64;
            vol += self.degree[u];
        }
        let denom = vol.min(self.total - vol);
        (denom > 0).then_some(Conductance { cut, denom })
    }

    /// Minimum over all sets of exactly `size` vertices; the first set in
    /// increasing bitmask order wins ties.
    fn minimum(&self, size: usize) -> Option<(Conductance, u32)> {
        if size == 0 || size >= self.n {
            return None;
        }
        let limit = 1u64 << self.n;
        let mut set = (1u64 << size) - 1;
        let mut best: Option<(Conductance, u32)> = None;
        while set < limit {
            if let Some(c) = self.conductance(set as u32) {
                if best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, set as u32));
                }
            }
            // Next mask with the same popcount.
            let low = set & set.wrapping_neg();
            let ripple = set + low;
            set = (((ripple ^ set) >> 2) / low) | ripple;
        }
        best
    }
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Exact minimum conductance over all vertex sets of `size` vertices, with a
/// witness. Only for graphs of at most [`EXHAUSTIVE_NODE_LIMIT`] vertices.
pub fn exhaustive_min_conductance(g: &Graph, size: usize) -> Result<(Conductance, Vec<usize>), OracleError> {
    let bg = BitGraph::new(g)?;
    if size == 0 || size >= bg.n {
        return Err(OracleError::InvalidParams(format!("size {size} must lie in 1..{}", bg.n)));
    }
    bg.minimum(size).map(|(c, m)| (c, members(m))).ok_or(OracleError::NoDefinedSet(size))
}

/// Exact minimum and witness for every size `1..=n/2`; `None` where no set
/// of that size has defined conductance.
pub fn exhaustive_profile(g: &Graph) -> Result<Vec<(usize, Option<(Conductance, Vec<usize>)>)>, OracleError> {
    let bg = BitGraph::new(g)?;
    Ok((1..=bg.n / 2).map(|s| (s, bg.minimum(s).map(|(c, m)| (c, members(m))))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, planted_community};

    #[test]
    fn barbell_and_k6() {
        let mut edges = vec![(4, 5)];
        for base in [0, 5] {
            for u in base..base + 5 {
                for v in u + 1..base + 5 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        let (c, w) = exhaustive_min_conductance(&g, 5).unwrap();
        assert_eq!((c.cut, c.denom), (1, 21));
        assert_eq!(w, vec![0, 1, 2, 3, 4]);
        let (c, _) = exhaustive_min_conductance(&complete_graph(6).unwrap(), 3).unwrap();
        assert_eq!((c.cut, c.denom), (9, 15));
    }

    #[test]
    fn disconnected_component() {
        let g = planted_community(12, 4, 0.0, 0).unwrap();
        let (c, w) = exhaustive_min_conductance(&g, 4).unwrap();
        assert_eq!(c.cut, 0);
        assert_eq!(w, vec![0, 1, 2, 3]);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            exhaustive_min_conductance(&Graph::empty(21), 3),
            Err(OracleError::TooLarge { node_count: 21, .. })
        ));
        assert!(exhaustive_min_conductance(&Graph::empty(5), 0).is_err());
        assert_eq!(exhaustive_min_conductance(&Graph::empty(5), 2), Err(OracleError::NoDefinedSet(2)));
        let p = exhaustive_profile(&complete_graph(4).unwrap()).unwrap();
        assert_eq!(p.len(), 2);
    }
}
