use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::Rng;

use super::CascadeError;
use crate::graph::Graph;
use crate::rng::{seeded, LabRng};

/// Law of the number of extra links `k_w` burned through each linked node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BurnLaw {
    /// Failures before the first success, success probability `(1-p)/(2-p)`,
    /// giving mean `1/(1-p)`.
    Geometric,
    /// Binomial with `trials` trials and success probability `mean / trials`.
    Binomial { trials: u32 },
}

impl BurnLaw {
    fn draw(self, mean: f64, rng: &mut LabRng) -> usize {
        match self {
            BurnLaw::Geometric => {
                let q = 1.0 / (1.0 + mean);
                if q >= 1.0 {
                    return 0;
                }
                let u: f64 = 1.0 - rng.gen::<f64>();
                (u.ln() / (1.0 - q).ln()).floor() as usize
            }
            BurnLaw::Binomial { trials } => {
                let p = (mean / trials as f64).min(1.0);
                (0..trials).filter(|_| rng.gen_bool(p)).count()
            }
        }
    }
}

/// Undirected forest fire graph with burning probability `p`, geometric burn law.
pub fn forest_fire(n: usize, p: f64, seed: u64) -> Result<Graph, CascadeError> {
    forest_fire_with(n, p, BurnLaw::Geometric, seed)
}

/// Each arrival `v` links to a uniform existing node `u`, then, breadth first
/// from `u`, to `k_w` not-yet-linked neighbours of every node `w` it links to,
/// with `k_w` drawn from `law` at mean `1/(1-p)`. A node is linked at most once.
pub fn forest_fire_with(n: usize, p: f64, law: BurnLaw, seed: u64) -> Result<Graph, CascadeError> {
    if !(0.0..1.0).contains(&p) {
        return Err(CascadeError::InvalidParams(format!("burning probability p = {p} must lie in [0, 1)")));
    }
    if n == 0 {
        return Err(CascadeError::InvalidParams("forest fire needs n >= 1".into()));
    }
    if let BurnLaw::Binomial { trials } = law {
        if (trials as f64) < 1.0 / (1.0 - p) {
            return Err(CascadeError::InvalidParams(format!(
                "binomial burn law needs at least {} trials",
                (1.0 / (1.0 - p)).ceil()
            )));
        }
    }
    crate::graph::check_node_count(n)?;
    let mean = 1.0 / (1.0 - p);
    let mut rng = seeded(seed);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new()];
    let mut linked = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    let mut candidates: Vec<u32> = Vec::new();
    for v in 1..n {
        adj.push(Vec::new());
        let u = rng.gen_range(0..v);
        touched.clear();
        queue.clear();
        linked[u] = true;
        touched.push(u);
        queue.push_back(u);
        while let Some(w) = queue.pop_front() {
            let k = law.draw(mean, &mut rng);
            if k == 0 {
                continue;
            }
            candidates.clear();
            candidates.extend(adj[w].iter().copied().filter(|&x| !linked[x as usize] && x as usize != v));
            let take = k.min(candidates.len());
            if take == 0 {
                continue;
            }
            for i in sample(&mut rng, candidates.len(), take).into_iter() {
                let x = candidates[i] as usize;
                linked[x] = true;
                touched.push(x);
                queue.push_back(x);
            }
        }
        for &x in &touched {
            adj[v].push(x as u32);
            adj[x].push(v as u32);
            linked[x] = false;
        }
    }
    Ok(Graph::from_rows(n, |u, row| row.extend_from_slice(&adj[u])))
}
