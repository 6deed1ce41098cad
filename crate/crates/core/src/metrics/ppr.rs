//! Approximate personalized PageRank by residual pushing.

use std::collections::VecDeque;

use super::MetricError;
use crate::graph::Graph;

/// Sparse approximate PageRank vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PushResult {
    /// `(vertex, score)` for every vertex with positive score, by vertex id.
    pub scores: Vec<(usize, f64)>,
    pub pushes: usize,
    /// Sum of the degrees of pushed vertices.
    pub work: u64,
}

/// Lazy-walk push from `seed` with teleport probability `teleport`, pushing
/// while some residual exceeds `tolerance * degree`.
pub fn push_ppr(g: &Graph, seed: usize, teleport: f64, tolerance: f64) -> Result<PushResult, MetricError> {
    if seed >= g.node_count() {
        return Err(MetricError::InvalidConfig(format!("seed {seed} outside {} nodes", g.node_count())));
    }
    check_push_params(teleport, tolerance)?;
    let mut ws = PushWorkspace::new(g.node_count());
    let (pushes, work) = ws.run(g, seed, teleport, tolerance);
    let mut scores: Vec<(usize, f64)> = ws.touched.iter().map(|&v| (v as usize, ws.p[v as usize])).filter(|s| s.1 > 0.0).collect();
    scores.sort_unstable_by_key(|s| s.0);
    Ok(PushResult { scores, pushes, work })
}

pub(crate) fn check_push_params(teleport: f64, tolerance: f64) -> Result<(), MetricError> {
    if !(teleport > 0.0 && teleport < 1.0) {
        return Err(MetricError::InvalidConfig(format!("teleport {teleport} must lie in (0, 1)")));
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(MetricError::InvalidConfig(format!("tolerance {tolerance} must be positive")));
    }
    Ok(())
}

/// Dense buffers reused across pushes on one graph.
pub(crate) struct PushWorkspace {
    pub(crate) p: Vec<f64>,
    r: Vec<f64>,
    queued: Vec<bool>,
    /// Vertices with nonzero `p` or `r`, in first-touch order.
    pub(crate) touched: Vec<u32>,
    seen: Vec<bool>,
    queue: VecDeque<u32>,
}

impl PushWorkspace {
    pub(crate) fn new(n: usize) -> Self {
        PushWorkspace {
            p: vec![0.0; n],
            r: vec![0.0; n],
            queued: vec![false; n],
            touched: Vec::new(),
            seen: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn clear(&mut self) {
        for &v in &self.touched {
            let v = v as usize;
            self.p[v] = 0.0;
            self.r[v] = 0.0;
            self.queued[v] = false;
            self.seen[v] = false;
        }
        self.touched.clear();
        self.queue.clear();
    }

    fn touch(&mut self, v: usize) {
        if !self.seen[v] {
            self.seen[v] = true;
            self.touched.push(v as u32);
        }
    }

    /// Runs the push from `seed`; returns `(pushes, work)`.
    pub(crate) fn run(&mut self, g: &Graph, seed: usize, teleport: f64, tolerance: f64) -> (usize, u64) {
        self.clear();
        self.touch(seed);
        if g.degree(seed) == 0 {
            self.p[seed] = 1.0;
            return (0, 0);
        }
        self.r[seed] = 1.0;
        self.queued[seed] = true;
        self.queue.push_back(seed as u32);
        let (mut pushes, mut work) = (0usize, 0u64);
        while let Some(u) = self.queue.pop_front() {
            let u = u as usize;
            self.queued[u] = false;
            let du = g.degree(u);
            let ru = self.r[u];
            if ru < tolerance * du as f64 {
                continue;
            }
            pushes += 1;
            work += du as u64;
            self.p[u] += teleport * ru;
            let keep = (1.0 - teleport) * ru / 2.0;
            self.r[u] = keep;
            let share = keep / du as f64;
            for &v in g.neighbors(u) {
                let v = v as usize;
                self.touch(v);
                self.r[v] += share;
                if !self.queued[v] && self.r[v] >= tolerance * g.degree(v) as f64 {
                    self.queued[v] = true;
                    self.queue.push_back(v as u32);
                }
            }
            if !self.queued[u] && keep >= tolerance * du as f64 {
                self.queued[u] = true;
                self.queue.push_back(u as u32);
            }
        }
        (pushes, work)
    }
}
