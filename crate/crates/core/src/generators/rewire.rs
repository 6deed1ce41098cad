use rand::Rng;

use super::GenerateError;
use crate::graph::{check_node_count, Graph};
use crate::rng::{seeded, LabRng};

/// Mutable adjacency lists used while rewiring. Rows stay short (about the
/// mean degree), so membership is a linear scan.
pub(crate) struct WorkingGraph {
    pub(crate) adj: Vec<Vec<u32>>,
}

impl WorkingGraph {
    pub(crate) fn new(n: usize, row_capacity: usize) -> Self {
        WorkingGraph { adj: (0..n).map(|_| Vec::with_capacity(row_capacity)).collect() }
    }

    pub(crate) fn add(&mut self, u: usize, v: usize) {
        self.adj[u].push(v as u32);
        self.adj[v].push(u as u32);
    }

    pub(crate) fn contains(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&(v as u32))
    }

    fn remove(&mut self, u: usize, v: usize) {
        let row = &mut self.adj[u];
        let i = row.iter().position(|&x| x as usize == v).expect("edge present");
        row.swap_remove(i);
        let row = &mut self.adj[v];
        let i = row.iter().position(|&x| x as usize == u).expect("edge present");
        row.swap_remove(i);
    }

    pub(crate) fn into_graph(self) -> Graph {
        let adj = self.adj;
        Graph::from_rows(adj.len(), |u, row| row.extend_from_slice(&adj[u]))
    }

    /// Replaces `(u, v)` by `(u, v')` with `v'` uniform over the vertices
    /// other than `u` that are not adjacent to `u`. Returns false (and leaves
    /// the edge alone) when `u` is already adjacent to everything.
    fn rewire(&mut self, u: usize, v: usize, rng: &mut LabRng) -> bool {
        let n = self.adj.len();
        let deg = self.adj[u].len();
        if deg + 1 >= n {
            return false;
        }
        // Candidates are all non-neighbours of u other than u itself; v is a
        // neighbour and so is never picked.
        let target = if 2 * deg < n {
            loop {
                let w = rng.gen_range(0..n);
                if w != u && !self.contains(u, w) {
                    break w;
                }
            }
        } else {
            let mut blocked = vec![false; n];
            blocked[u] = true;
            for &w in &self.adj[u] {
                blocked[w as usize] = true;
            }
            let free: Vec<usize> = (0..n).filter(|&w| !blocked[w]).collect();
            free[rng.gen_range(0..free.len())]
        };
        self.remove(u, v);
        self.add(u, target);
        true
    }

    /// Visits `edges` in order, rewiring each with probability `r`.
    pub(crate) fn rewire_all(&mut self, edges: &[(u32, u32)], r: f64, rng: &mut LabRng) -> usize {
        let mut rewired = 0;
        for &(u, v) in edges {
            if r > 0.0 && rng.gen_bool(r) && self.rewire(u as usize, v as usize, rng) {
                rewired += 1;
            }
        }
        rewired
    }
}

pub(crate) fn check_probability(name: &str, p: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenerateError::InvalidParams(format!("{name} = {p} is outside [0, 1]")))
    }
}

/// Watts-Strogatz small world: ring lattice `(i, i ± l mod n)` for
/// `1 <= l <= d/2`, then each lattice edge `(i, i + l)` visited in increasing
/// `(i, l)` order and rewired with probability `r`, keeping `i`.
pub fn watts_strogatz(n: usize, d: usize, r: f64, seed: u64) -> Result<Graph, GenerateError> {
    watts_strogatz_counted(n, d, r, seed).map(|(g, _)| g)
}

/// As [`watts_strogatz`], also returning how many edges were rewired.
pub fn watts_strogatz_counted(n: usize, d: usize, r: f64, seed: u64) -> Result<(Graph, usize), GenerateError> {
    if !d.is_multiple_of(2) || d < 2 || d >= n {
        return Err(GenerateError::InvalidParams(format!(
            "watts-strogatz needs even d with 2 <= d < n (d = {d}, n = {n})"
        )));
    }
    check_probability("r", r)?;
    check_node_count(n)?;
    let half = d / 2;
    let mut work = WorkingGraph::new(n, d + 4);
    let mut edges = Vec::with_capacity(n * half);
    for i in 0..n {
        for l in 1..=half {
            // l <= d/2 < n/2, so (i, i + l) never coincides with (j, j + l').
            let j = (i + l) % n;
            edges.push((i as u32, j as u32));
            work.add(i, j);
        }
    }
    let mut rng = seeded(seed);
    let rewired = work.rewire_all(&edges, r, &mut rng);
    let g = work.into_graph();
    debug_assert_eq!(g.edge_count(), n * half);
    Ok((g, rewired))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_lattice_when_r_is_zero() {
        let g = watts_strogatz(10, 4, 0.0, 99).unwrap();
        assert_eq!(g.edge_count(), 20);
        for u in 0..10 {
            assert_eq!(g.degree(u), 4);
            for l in [1, 2] {
                assert!(g.has_edge(u, (u + l) % 10));
            }
        }
        assert_eq!(g, watts_strogatz(10, 4, 0.0, 1).unwrap());
    }

    #[test]
    fn rewiring_preserves_edge_count() {
        for seed in 0..5 {
            let (g, rewired) = watts_strogatz_counted(200, 6, 0.5, seed).unwrap();
            g.check_invariants().unwrap();
            assert_eq!(g.edge_count(), 600);
            assert!(rewired > 200 && rewired < 400);
        }
    }

    #[test]
    fn full_rewiring_on_dense_ring() {
        // d = n - 2: every vertex misses exactly one other vertex.
        let (g, _) = watts_strogatz_counted(8, 6, 1.0, 3).unwrap();
        g.check_invariants().unwrap();
        assert_eq!(g.edge_count(), 24);
    }

    #[test]
    fn parameter_errors() {
        assert!(watts_strogatz(10, 3, 0.1, 0).is_err());
        assert!(watts_strogatz(10, 10, 0.1, 0).is_err());
        assert!(watts_strogatz(10, 4, 1.1, 0).is_err());
    }
}
