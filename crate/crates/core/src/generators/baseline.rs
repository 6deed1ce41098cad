use rand::Rng;

use super::rewire::WorkingGraph;
use super::GenerateError;
use crate::graph::{check_node_count, Graph};
use crate::rng::seeded;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    ErdosRenyi,
    PreferentialAttachment,
    Complete,
}

pub fn baseline_graph(kind: BaselineKind, n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    match kind {
        BaselineKind::ErdosRenyi => erdos_renyi(n, d, seed),
        BaselineKind::PreferentialAttachment => preferential_attachment(n, d, seed),
        BaselineKind::Complete => complete_graph(n),
    }
}

/// G(n, p) with `p = d / (n - 1)`, drawn by geometric skipping over the
/// pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn erdos_renyi(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    if n < 2 || d > n - 1 {
        return Err(GenerateError::InvalidParams(format!("erdos-renyi needs d <= n - 1 (d = {d}, n = {n})")));
    }
    check_node_count(n)?;
    let p = d as f64 / (n - 1) as f64;
    let mut edges = Vec::with_capacity(n * d / 2 + n);
    if p >= 1.0 {
        return complete_graph(n);
    }
    if p > 0.0 {
        let mut rng = seeded(seed);
        let log_q = (1.0 - p).ln();
        // Batagelj-Brandes: v walks the lower triangle, w < v.
        let (mut v, mut w): (usize, i64) = (1, -1);
        while v < n {
            let u: f64 = rng.gen::<f64>();
            let skip = ((1.0 - u).ln() / log_q).floor() as i64;
            w += 1 + skip;
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as usize, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Growth by preferential attachment from a `(d/2 + 1)`-clique: each new
/// node links to `d/2` distinct existing nodes drawn proportionally to degree.
pub fn preferential_attachment(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    if !d.is_multiple_of(2) || d < 2 || d / 2 + 1 > n {
        return Err(GenerateError::InvalidParams(format!(
            "preferential attachment needs even d >= 2 with d/2 + 1 <= n (d = {d}, n = {n})"
        )));
    }
    check_node_count(n)?;
    let m = d / 2;
    let mut rng = seeded(seed);
    let mut work = WorkingGraph::new(n, d);
    // Every edge endpoint, so a uniform pick is a degree-proportional pick.
    let mut endpoints: Vec<u32> = Vec::with_capacity(n * d);
    for u in 0..=m {
        for v in u + 1..=m {
            work.add(u, v);
            endpoints.extend([u as u32, v as u32]);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for v in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())] as usize;
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            work.add(v, t);
            endpoints.extend([v as u32, t as u32]);
        }
    }
    Ok(work.into_graph())
}

pub fn complete_graph(n: usize) -> Result<Graph, GenerateError> {
    check_node_count(n)?;
    Ok(Graph::from_rows(n, |u, row| row.extend((0..n as u32).filter(|&w| w as usize != u))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_five() {
        let g = baseline_graph(BaselineKind::Complete, 5, 0, 0).unwrap();
        assert_eq!(g.edge_count(), 10);
        g.check_invariants().unwrap();
    }

    #[test]
    fn er_mean_degree() {
        let mut total = 0.0;
        for seed in 0..20 {
            let g = erdos_renyi(10_000, 10, seed).unwrap();
            g.check_invariants().unwrap();
            total += 2.0 * g.edge_count() as f64 / 10_000.0;
        }
        let mean = total / 20.0;
        assert!((mean - 10.0).abs() < 0.5, "mean degree {mean}");
    }

    #[test]
    fn er_extremes() {
        assert_eq!(erdos_renyi(10, 0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(10, 9, 1).unwrap().edge_count(), 45);
        assert!(erdos_renyi(10, 10, 1).is_err());
    }

    #[test]
    fn pa_has_heavy_tail() {
        for seed in 0..20 {
            let g = preferential_attachment(10_000, 10, seed).unwrap();
            g.check_invariants().unwrap();
            let mean = 2.0 * g.edge_count() as f64 / 10_000.0;
            assert!(g.max_degree() as f64 > 10.0 * mean);
            assert!((0..10_000).all(|v| g.degree(v) >= 5));
        }
    }

    #[test]
    fn pa_rejects_odd_degree() {
        assert!(preferential_attachment(100, 3, 0).is_err());
    }
}
