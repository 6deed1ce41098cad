//! Bridges and the whiskers they cut off.

use crate::graph::Graph;

/// Every bridge as `(parent, child)` of an iterative DFS forest; removing it
/// separates the DFS subtree of `child` from the rest of its component.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let forest = DfsForest::build(g, &[]);
    forest.bridges
}

struct DfsForest {
    parent: Vec<u32>,
    /// Vertices in DFS preorder.
    preorder: Vec<u32>,
    bridges: Vec<(usize, usize)>,
}

impl DfsForest {
    /// DFS forest grown from each of `roots` in turn, then from every
    /// unvisited vertex in increasing order.
    fn build(g: &Graph, roots: &[usize]) -> Self {
        let n = g.node_count();
        let mut tin = vec![u32::MAX; n];
        let mut low = vec![0u32; n];
        let mut parent = vec![u32::MAX; n];
        let mut preorder = Vec::with_capacity(n);
        let mut bridges = Vec::new();
        let mut timer = 0u32;
        // (vertex, next neighbour index, skipped the tree edge to parent yet)
        let mut stack: Vec<(u32, u32, bool)> = Vec::new();
        for r in roots.iter().copied().chain(0..n) {
            if tin[r] != u32::MAX {
                continue;
            }
            tin[r] = timer;
            low[r] = timer;
            timer += 1;
            preorder.push(r as u32);
            stack.push((r as u32, 0, false));
            while let Some(top) = stack.last_mut() {
                let u = top.0 as usize;
                let row = g.neighbors(u);
                if (top.1 as usize) < row.len() {
                    let v = row[top.1 as usize] as usize;
                    top.1 += 1;
                    if v as u32 == parent[u] && !top.2 {
                        // Simple graph: exactly one edge back to the parent.
                        top.2 = true;
                        continue;
                    }
                    if tin[v] == u32::MAX {
                        parent[v] = u as u32;
                        tin[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        preorder.push(v as u32);
                        stack.push((v as u32, 0, false));
                    } else {
                        low[u] = low[u].min(tin[v]);
                    }
                } else {
                    stack.pop();
                    let p = parent[u];
                    if p != u32::MAX {
                        let p = p as usize;
                        low[p] = low[p].min(low[u]);
                        if low[u] > tin[p] {
                            bridges.push((p, u));
                        }
                    }
                }
            }
        }
        DfsForest { parent, preorder, bridges }
    }
}

/// A set hanging off the rest of its component by a single bridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Whisker {
    /// The bridge as `(outside endpoint, inside endpoint)`.
    pub bridge: (usize, usize),
    pub size: usize,
    pub volume: u64,
    /// Attached directly to the core of its component.
    pub maximal: bool,
}

impl Whisker {
    /// Vertices of the whisker.
    pub fn members(&self, g: &Graph) -> Vec<usize> {
        let (outside, inside) = self.bridge;
        let mut seen = std::collections::HashSet::from([inside]);
        let mut stack = vec![inside];
        let mut out = Vec::with_capacity(self.size);
        while let Some(u) = stack.pop() {
            out.push(u);
            for &v in g.neighbors(u) {
                let v = v as usize;
                if (u == inside && v == outside) || seen.contains(&v) {
                    continue;
                }
                seen.insert(v);
                stack.push(v);
            }
        }
        out.sort_unstable();
        out
    }
}

/// Whiskers of every component. The core of a component is its largest
/// 2-edge-connected piece (ties go to the piece found first); each bridge cuts off the
/// side that does not contain the core. Maximal whiskers hang directly off
/// the core.
pub fn whiskers(g: &Graph) -> Vec<Whisker> {
    let n = g.node_count();
    let first = DfsForest::build(g, &[]);
    if first.bridges.is_empty() {
        return Vec::new();
    }
    // 2-edge-connected pieces: components after deleting bridges.
    let mut is_bridge = std::collections::HashSet::new();
    for &(p, c) in &first.bridges {
        is_bridge.insert((p.min(c), p.max(c)));
    }
    let mut piece = vec![u32::MAX; n];
    let mut piece_size = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if piece[s] != u32::MAX {
            continue;
        }
        let id = piece_size.len() as u32;
        piece[s] = id;
        stack.push(s);
        let mut size = 0usize;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in g.neighbors(u) {
                let v = v as usize;
                if piece[v] == u32::MAX && !is_bridge.contains(&(u.min(v), u.max(v))) {
                    piece[v] = id;
                    stack.push(v);
                }
            }
        }
        piece_size.push(size);
    }
    let (comp, _) = g.components();
    // Core piece per component: largest piece, smallest id on ties.
    let mut core_of_comp: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    for v in 0..n {
        let c = comp[v];
        let p = piece[v];
        let entry = core_of_comp.entry(c).or_insert(p);
        let cur = *entry;
        if piece_size[p as usize] > piece_size[cur as usize]
            || (piece_size[p as usize] == piece_size[cur as usize] && p < cur)
        {
            *entry = p;
        }
    }
    // Rooted inside the core, the child side of every bridge is a whisker.
    let mut core_roots: Vec<usize> = Vec::new();
    let mut rooted = std::collections::HashSet::new();
    for v in 0..n {
        if piece[v] == core_of_comp[&comp[v]] && rooted.insert(comp[v]) {
            core_roots.push(v);
        }
    }
    let forest = DfsForest::build(g, &core_roots);
    let mut size = vec![1usize; n];
    let mut volume: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    for &v in forest.preorder.iter().rev() {
        let p = forest.parent[v as usize];
        if p != u32::MAX {
            size[p as usize] += size[v as usize];
            volume[p as usize] += volume[v as usize];
        }
    }
    let mut out: Vec<Whisker> = forest
        .bridges
        .iter()
        .map(|&(p, c)| Whisker {
            bridge: (p, c),
            size: size[c],
            volume: volume[c],
            maximal: piece[p] == core_of_comp[&comp[p]],
        })
        .collect();
    out.sort_by_key(|w| w.bridge);
    out
}
