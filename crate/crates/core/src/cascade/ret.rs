use std::collections::HashSet;

use rand::seq::index::sample;
use rand::Rng;

use super::{CascadeError, CascadeParams, InfectedGraph, Process, Step, TransmissionModel};
use crate::graph::Graph;
use crate::rng::{seeded, LabRng};

const NOT_INFECTED: u32 = u32::MAX;

/// Round-by-round RET / RETMIV / RETWE run.
///
/// A round sweeps every `G`-edge incident to the vertices infected at the
/// start of the round. Internal edges not yet in `H` are discovered with
/// probability `alpha`; boundary edges bring in their outside endpoint with
/// probability `beta`. Vertices infected during a round transmit from the
/// next round on. For RETWE an exploration pass follows the sweep.
pub struct RetProcess<'g> {
    g: &'g Graph,
    params: CascadeParams,
    rng: LabRng,
    /// `G` vertex of each `H` vertex, in infection order.
    order: Vec<u32>,
    /// `H` ID of each `G` vertex.
    local: Vec<u32>,
    /// Adjacency of `H`, in `H` IDs.
    h_adj: Vec<Vec<u32>>,
    /// Per directed `G` slot: is that edge already in `H`?
    in_h: Vec<bool>,
    /// `H` edges from exploration that are not `G` edges, as `(min, max)`.
    extra: HashSet<(u32, u32)>,
    extra_list: Vec<(u32, u32)>,
    rounds: usize,
    edge_count: usize,
}

impl<'g> RetProcess<'g> {
    pub fn new(g: &'g Graph, params: CascadeParams, seed: u64) -> Result<Self, CascadeError> {
        params.validate(g.node_count())?;
        if params.model == TransmissionModel::Retig {
            return Err(CascadeError::InvalidParams("RetProcess does not run retig".into()));
        }
        let mut rng = seeded(seed);
        let seeds: Vec<usize> = if params.s == 1 {
            vec![rng.gen_range(0..g.node_count())]
        } else {
            sample(&mut rng, g.node_count(), params.s).into_vec()
        };
        let mut p = RetProcess {
            g,
            params,
            rng,
            order: Vec::with_capacity(1024),
            local: vec![NOT_INFECTED; g.node_count()],
            h_adj: Vec::with_capacity(1024),
            in_h: vec![false; g.slot_count()],
            extra: HashSet::new(),
            extra_list: Vec::new(),
            rounds: 0,
            edge_count: 0,
        };
        for v in seeds {
            p.infect(v);
        }
        Ok(p)
    }

    fn infect(&mut self, v: usize) -> u32 {
        let h = self.order.len() as u32;
        self.local[v] = h;
        self.order.push(v as u32);
        self.h_adj.push(Vec::new());
        h
    }

    /// Adds the `G` edge occupying `slot` (directed `u -> v`) to `H`.
    fn add_g_edge(&mut self, u: usize, v: usize, slot: usize) {
        self.in_h[slot] = true;
        let mirror = self.g.slot_of(v, u).expect("G is symmetric");
        self.in_h[mirror] = true;
        let (a, b) = (self.local[u], self.local[v]);
        self.h_adj[a as usize].push(b);
        self.h_adj[b as usize].push(a);
        self.edge_count += 1;
    }

    fn h_has_edge(&self, a: u32, b: u32) -> bool {
        let (u, v) = (self.order[a as usize] as usize, self.order[b as usize] as usize);
        match self.g.slot_of(u, v) {
            Some(slot) => self.in_h[slot],
            None => self.extra.contains(&(a.min(b), a.max(b))),
        }
    }

    pub fn infected_count(&self) -> usize {
        self.order.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Runs one synchronous round. Returns false when the infected set can
    /// never grow again and no internal edge is left to discover.
    pub fn round(&mut self) -> bool {
        let start_count = self.order.len() as u32;
        let (alpha, beta) = (self.params.alpha, self.params.beta);
        let mut boundary = 0usize;
        let mut undiscovered = 0usize;
        for hu in 0..start_count as usize {
            let u = self.order[hu] as usize;
            let base = self.g.row_start(u);
            let row = self.g.neighbors(u);
            for (i, &v) in row.iter().enumerate() {
                let v = v as usize;
                let hv = self.local[v];
                if hv < start_count {
                    if u < v && !self.in_h[base + i] {
                        if self.rng.gen_bool(alpha) {
                            self.add_g_edge(u, v, base + i);
                        } else {
                            undiscovered += 1;
                        }
                    }
                } else {
                    boundary += 1;
                    if self.rng.gen_bool(beta) {
                        if hv == NOT_INFECTED {
                            self.infect(v);
                        }
                        self.add_g_edge(u, v, base + i);
                    }
                }
            }
        }
        if self.params.model == TransmissionModel::Retwe && self.params.gamma > 0.0 {
            self.explore();
        }
        self.rounds += 1;
        let can_grow = boundary > 0 && beta > 0.0;
        let grew = self.order.len() as u32 > start_count;
        grew || can_grow || (alpha > 0.0 && undiscovered > 0)
    }

    /// Each open triple `u - w - v` closes with probability `gamma`,
    /// independently per middle vertex `w`. Pairs of `H`-neighbours of `w`
    /// are visited by geometric skipping; pairs that are already adjacent
    /// absorb their success without effect.
    fn explore(&mut self) {
        let gamma = self.params.gamma;
        let log_q = (1.0 - gamma).ln();
        let mut additions: Vec<(u32, u32)> = Vec::new();
        for w in 0..self.h_adj.len() {
            let k = self.h_adj[w].len() as u64;
            if k < 2 {
                continue;
            }
            let pairs = k * (k - 1) / 2;
            let mut idx = self.skip(log_q);
            while idx < pairs {
                let (i, j) = unrank_pair(idx, k);
                let (a, b) = (self.h_adj[w][i as usize], self.h_adj[w][j as usize]);
                additions.push((a.min(b), a.max(b)));
                idx = idx.saturating_add(1 + self.skip(log_q));
            }
        }
        for (a, b) in additions {
            if self.h_has_edge(a, b) {
                continue;
            }
            let (u, v) = (self.order[a as usize] as usize, self.order[b as usize] as usize);
            match self.g.slot_of(u, v) {
                Some(slot) => self.add_g_edge(u, v, slot),
                None => {
                    self.extra.insert((a, b));
                    self.extra_list.push((a, b));
                    self.h_adj[a as usize].push(b);
                    self.h_adj[b as usize].push(a);
                    self.edge_count += 1;
                }
            }
        }
    }

    /// Failures before the next success of a Bernoulli(gamma) sequence.
    fn skip(&mut self, log_q: f64) -> u64 {
        if log_q == f64::NEG_INFINITY {
            return 0;
        }
        let u: f64 = 1.0 - self.rng.gen::<f64>();
        let s = (u.ln() / log_q).floor();
        if s >= u64::MAX as f64 {
            u64::MAX
        } else {
            s as u64
        }
    }

    pub fn snapshot(&self) -> InfectedGraph {
        let graph = Graph::from_rows(self.order.len(), |h, row| row.extend_from_slice(&self.h_adj[h]));
        let mut exploration_edges: Vec<(usize, usize)> =
            self.extra_list.iter().map(|&(a, b)| (a as usize, b as usize)).collect();
        exploration_edges.sort_unstable();
        InfectedGraph {
            graph,
            to_underlying: self.order.iter().map(|&v| v as usize).collect(),
            rounds: self.rounds,
            params: self.params.clone(),
            exploration_edges,
        }
    }
}

/// Maps `idx` in `0..k(k-1)/2` to the pair `(i, j)`, `i < j`, in row-major order.
fn unrank_pair(idx: u64, k: u64) -> (u64, u64) {
    // Row i starts at offset(i) = i*(2k - i - 1)/2.
    let offset = |i: u64| i * (2 * k - i - 1) / 2;
    let kf = k as f64;
    let disc = (2.0 * kf - 1.0).powi(2) - 8.0 * idx as f64;
    let mut i = (((2.0 * kf - 1.0) - disc.max(0.0).sqrt()) / 2.0).floor().max(0.0) as u64;
    i = i.min(k - 2);
    while i > 0 && offset(i) > idx {
        i -= 1;
    }
    while i < k - 2 && offset(i + 1) <= idx {
        i += 1;
    }
    (i, i + 1 + (idx - offset(i)))
}

impl Process for RetProcess<'_> {
    fn infected(&self) -> usize {
        self.order.len()
    }

    fn target(&self) -> usize {
        self.params.m
    }

    fn step(&mut self) -> Step {
        if self.round() {
            Step::Progress
        } else {
            Step::Stalled
        }
    }

    fn snapshot(&self) -> InfectedGraph {
        RetProcess::snapshot(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{ret, retwe, CascadeError, CascadeParams};
    use super::*;
    use crate::generators::{complete_graph, watts_strogatz};

    #[test]
    fn unrank_covers_all_pairs() {
        for k in 2..40u64 {
            let mut idx = 0;
            for i in 0..k {
                for j in i + 1..k {
                    assert_eq!(unrank_pair(idx, k), (i, j), "k={k} idx={idx}");
                    idx += 1;
                }
            }
        }
    }

    /// BFS distance from `src` in `g`.
    fn bfs(g: &Graph, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; g.node_count()];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if dist[v as usize] == usize::MAX {
                    dist[v as usize] = dist[u] + 1;
                    queue.push_back(v as usize);
                }
            }
        }
        dist
    }

    #[test]
    fn certain_transmission_is_bfs() {
        let g = watts_strogatz(200, 4, 0.1, 7).unwrap();
        let mut p = RetProcess::new(&g, CascadeParams::ret(200, 1.0, 1.0), 11).unwrap();
        let v0 = p.order[0] as usize;
        let dist = bfs(&g, v0);
        for t in 1..=4 {
            p.round();
            let ball: Vec<usize> = (0..200).filter(|&v| dist[v] <= t).collect();
            let mut got: Vec<usize> = p.order.iter().map(|&v| v as usize).collect();
            got.sort_unstable();
            assert_eq!(got, ball, "round {t}");
            // Every G edge between vertices infected at least one round ago is present.
            let snap = p.snapshot();
            for (a, b) in snap.graph.edges() {
                assert!(g.has_edge(snap.to_underlying[a], snap.to_underlying[b]));
            }
            for u in 0..200 {
                for &v in g.neighbors(u) {
                    let v = v as usize;
                    if dist[u] < t && dist[v] < t {
                        assert!(p.h_has_edge(p.local[u], p.local[v]));
                    }
                }
            }
        }
    }

    #[test]
    fn seeds_without_boundary_growth() {
        let g = complete_graph(12).unwrap();
        let mut p = RetProcess::new(&g, CascadeParams::retmiv(5, 0.5, 0.0, 3), 2).unwrap();
        p.round();
        let snap = p.snapshot();
        assert_eq!(snap.size(), 3);
        assert!(snap.graph.edge_count() <= 3);
        // With beta = 0 the run stalls once every internal edge is found.
        match ret(&g, 5, 0.5, 0.0, 3, 2) {
            Err(CascadeError::Stalled { reached, partial }) => {
                assert_eq!(reached, 3);
                assert_eq!(partial.graph.edge_count(), 3);
            }
            other => panic!("expected stall, got {other:?}"),
        }
    }

    #[test]
    fn forced_closure_on_path() {
        // G = path 0-1-2; start anywhere, infect everything, then close.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let mut p = RetProcess::new(&g, CascadeParams::retwe(3, 1.0, 1.0, 1.0), 0).unwrap();
        while p.infected_count() < 3 {
            p.round();
        }
        // One more round: H is the path (or already closed); closure is forced.
        p.round();
        let snap = p.snapshot();
        assert_eq!(snap.graph.edge_count(), 3);
        assert_eq!(snap.exploration_edges.len(), 1);
        snap.check_containment(&g).unwrap();
    }

    #[test]
    fn zero_gamma_matches_ret() {
        let g = watts_strogatz(500, 10, 0.1, 1).unwrap();
        let a = ret(&g, 200, 0.7, 0.05, 1, 8).unwrap();
        let b = retwe(&g, 200, 0.7, 0.05, 0.0, 8).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.to_underlying, b.to_underlying);
        assert!(b.exploration_edges.is_empty());
    }

    #[test]
    fn overshoot_is_kept() {
        let g = complete_graph(50).unwrap();
        let h = ret(&g, 10, 0.5, 0.5, 1, 4).unwrap();
        assert!(h.size() >= 10);
        h.check_containment(&g).unwrap();
    }
}
