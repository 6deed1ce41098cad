use rand::Rng;

use super::{CascadeError, CascadeParams, InfectedGraph, Process, Step};
use crate::graph::Graph;
use crate::rng::{seeded, LabRng};

const NOT_INFECTED: u32 = u32::MAX;

/// Step-by-step RETIG run.
///
/// The cut `E(I, Ī)` is kept as a bag of outside endpoints, one entry per
/// cut edge. An entry whose endpoint has since been infected is no longer a
/// cut edge; it is discarded when drawn and the draw repeated, which leaves
/// the accepted draw uniform over the live cut edges. Each infection pushes
/// O(degree) entries and each entry is discarded at most once.
pub struct RetigProcess<'g> {
    g: &'g Graph,
    params: CascadeParams,
    rng: LabRng,
    order: Vec<u32>,
    local: Vec<u32>,
    cut: Vec<u32>,
}

impl<'g> RetigProcess<'g> {
    pub fn new(g: &'g Graph, params: CascadeParams, seed: u64) -> Result<Self, CascadeError> {
        params.validate(g.node_count())?;
        let mut rng = seeded(seed);
        let start = rng.gen_range(0..g.node_count());
        let mut p = RetigProcess {
            g,
            params,
            rng,
            order: Vec::with_capacity(1024),
            local: vec![NOT_INFECTED; g.node_count()],
            cut: Vec::new(),
        };
        p.infect(start);
        Ok(p)
    }

    fn infect(&mut self, v: usize) {
        self.local[v] = self.order.len() as u32;
        self.order.push(v as u32);
        for &w in self.g.neighbors(v) {
            if self.local[w as usize] == NOT_INFECTED {
                self.cut.push(w);
            }
        }
    }

    pub fn infected_count(&self) -> usize {
        self.order.len()
    }

    /// Infected vertices of `G` in infection order.
    pub fn infected(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().map(|&v| v as usize)
    }

    /// Infects one more vertex. Returns false if the cut is empty.
    pub fn infect_next(&mut self) -> bool {
        while !self.cut.is_empty() {
            let i = self.rng.gen_range(0..self.cut.len());
            let v = self.cut.swap_remove(i) as usize;
            if self.local[v] == NOT_INFECTED {
                self.infect(v);
                return true;
            }
        }
        false
    }

    /// Induced subgraph of `G` on the infected set.
    pub fn snapshot(&self) -> InfectedGraph {
        let local = &self.local;
        let graph = Graph::from_rows(self.order.len(), |h, row| {
            for &w in self.g.neighbors(self.order[h] as usize) {
                let l = local[w as usize];
                if l != NOT_INFECTED {
                    row.push(l);
                }
            }
        });
        InfectedGraph {
            graph,
            to_underlying: self.order.iter().map(|&v| v as usize).collect(),
            rounds: self.order.len() - 1,
            params: self.params.clone(),
            exploration_edges: Vec::new(),
        }
    }
}

impl Process for RetigProcess<'_> {
    fn infected(&self) -> usize {
        self.order.len()
    }

    fn target(&self) -> usize {
        self.params.m
    }

    fn step(&mut self) -> Step {
        if self.infect_next() {
            Step::Progress
        } else {
            Step::Stalled
        }
    }

    fn snapshot(&self) -> InfectedGraph {
        RetigProcess::snapshot(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{retig, CascadeError};
    use crate::generators::{complete_graph, watts_strogatz};
    use crate::Graph;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn full_infection_reproduces_graph() {
        let g = watts_strogatz(60, 4, 0.2, 3).unwrap();
        let h = retig(&g, 60, 9).unwrap();
        assert_eq!(h.graph.edge_count(), g.edge_count());
        for (a, b) in h.graph.edges() {
            assert!(g.has_edge(h.to_underlying[a], h.to_underlying[b]));
        }
    }

    #[test]
    fn arc_on_cycle() {
        for seed in 0..20 {
            let h = retig(&cycle(10), 5, seed).unwrap();
            assert_eq!(h.graph.edge_count(), 4);
            assert!(h.graph.is_connected());
            let mut ids = h.to_underlying.clone();
            ids.sort_unstable();
            // contiguous modulo 10: exactly one gap of length 5 between consecutive ids
            let gaps = (0..5).filter(|&i| (ids[(i + 1) % 5] + 10 - ids[i]) % 10 != 1).count();
            assert_eq!(gaps, 1);
        }
    }

    #[test]
    fn stall_on_small_component() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        match retig(&g, 4, 1) {
            Err(CascadeError::Stalled { reached, partial }) => {
                assert_eq!(reached, 3);
                assert_eq!(partial.size(), 3);
            }
            other => panic!("expected stall, got {other:?}"),
        }
    }

    #[test]
    fn degree_bound_and_determinism() {
        let g = complete_graph(30).unwrap();
        let a = retig(&g, 12, 4).unwrap();
        let b = retig(&g, 12, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.graph.max_degree() <= g.max_degree());
        assert_eq!(a.graph.edge_count(), 66);
    }
}
