//! Immutable undirected simple graphs in compressed sparse row form.
//!
//! Node IDs are dense `0..n`. Every adjacency row is sorted and free of
//! duplicates, so iteration order is a pure function of the edge set.

mod io;
mod vertex_set;

pub use io::{read_edge_list, write_edge_list, parse_edge_list, format_edge_list};
pub use vertex_set::VertexSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{node_count}")]
    EndpointOutOfRange { u: usize, v: usize, node_count: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set covers {set} nodes but the graph has {graph}")]
    VertexSetMismatch { set: usize, graph: usize },
    #[error("graph has {0} nodes, which does not fit 32-bit node IDs")]
    TooLarge(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Undirected simple graph. Construction is the only way to mutate it.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("node_count", &self.node_count())
            .field("edge_count", &self.edge_count)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from unordered pairs. Duplicate pairs (in either
    /// orientation) collapse into a single edge.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        check_node_count(node_count)?;
        for &(u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(GraphError::EndpointOutOfRange { u, v, node_count });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        let mut degree = vec![0usize; node_count];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor: Vec<usize> = offsets[..node_count].to_vec();
        let mut targets = vec![0u32; offsets[node_count]];
        for &(u, v) in edges {
            targets[cursor[u]] = v as u32;
            cursor[u] += 1;
            targets[cursor[v]] = u as u32;
            cursor[v] += 1;
        }
        drop(cursor);
        Ok(Self::compact(offsets, targets))
    }

    /// Builds a graph row by row. `fill` pushes the neighbors of each node
    /// into the provided buffer; rows are sorted and deduplicated here. The
    /// caller guarantees symmetry, which is verified under debug assertions.
    pub(crate) fn from_rows<F>(node_count: usize, mut fill: F) -> Self
    where
        F: FnMut(usize, &mut Vec<u32>),
    {
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        let mut row = Vec::new();
        for u in 0..node_count {
            row.clear();
            fill(u, &mut row);
            row.sort_unstable();
            row.dedup();
            targets.extend_from_slice(&row);
            offsets.push(targets.len());
        }
        targets.shrink_to_fit();
        let edge_count = targets.len() / 2;
        let g = Graph { offsets, targets, edge_count };
        debug_assert!(g.check_invariants().is_ok(), "{:?}", g.check_invariants());
        g
    }

    /// Sorts and deduplicates every row in place, closing gaps.
    fn compact(mut offsets: Vec<usize>, mut targets: Vec<u32>) -> Self {
        let n = offsets.len() - 1;
        let mut write = 0usize;
        for u in 0..n {
            let (start, end) = (offsets[u], offsets[u + 1]);
            targets[start..end].sort_unstable();
            offsets[u] = write;
            let mut last = None;
            for i in start..end {
                let t = targets[i];
                if last != Some(t) {
                    targets[write] = t;
                    write += 1;
                    last = Some(t);
                }
            }
        }
        offsets[n] = write;
        targets.truncate(write);
        targets.shrink_to_fit();
        Graph { offsets, targets, edge_count: write / 2 }
    }

    pub fn empty(node_count: usize) -> Self {
        Graph { offsets: vec![0; node_count + 1], targets: Vec::new(), edge_count: 0 }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Sorted neighbor IDs of `u`.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Position of `u`'s adjacency row inside the flat slot array. Slot
    /// `row_start(u) + i` holds the directed edge `u -> neighbors(u)[i]`.
    #[inline]
    pub fn row_start(&self, u: usize) -> usize {
        self.offsets[u]
    }

    /// Total number of directed slots, `2 * edge_count`.
    #[inline]
    pub fn slot_count(&self) -> usize {
        self.targets.len()
    }

    /// Slot of the directed edge `u -> v`, if the edge exists.
    pub fn slot_of(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u)
            .binary_search(&(v as u32))
            .ok()
            .map(|i| self.offsets[u] + i)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && v < self.node_count() && self.slot_of(u, v).is_some()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count()).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.targets.len()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Checks symmetry, simplicity and the cached edge count.
    pub fn check_invariants(&self) -> Result<(), GraphError> {
        let n = self.node_count();
        for u in 0..n {
            let row = self.neighbors(u);
            for w in row.windows(2) {
                if w[0] >= w[1] {
                    return Err(GraphError::Invariant(format!("row {u} is not strictly sorted")));
                }
            }
            for &v in row {
                let v = v as usize;
                if v >= n {
                    return Err(GraphError::Invariant(format!("row {u} references {v}")));
                }
                if v == u {
                    return Err(GraphError::Invariant(format!("self-loop on {u}")));
                }
                if self.slot_of(v, u).is_none() {
                    return Err(GraphError::Invariant(format!("edge {u}->{v} has no mirror")));
                }
            }
        }
        if 2 * self.edge_count != self.targets.len() {
            return Err(GraphError::Invariant("edge count disagrees with degree sum".into()));
        }
        Ok(())
    }

    /// Induced subgraph on `set`. New IDs follow the set's insertion order;
    /// the returned table maps each new ID back to its ID in `self`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if set.universe() != self.node_count() {
            return Err(GraphError::VertexSetMismatch {
                set: set.universe(),
                graph: self.node_count(),
            });
        }
        let remap: Vec<usize> = set.members().to_vec();
        let mut local = vec![u32::MAX; self.node_count()];
        for (i, &v) in remap.iter().enumerate() {
            local[v] = i as u32;
        }
        let sub = Graph::from_rows(remap.len(), |i, row| {
            for &w in self.neighbors(remap[i]) {
                let l = local[w as usize];
                if l != u32::MAX {
                    row.push(l);
                }
            }
        });
        Ok((sub, remap))
    }

    /// Connected components as a label per node plus the component sizes.
    pub fn components(&self) -> (Vec<u32>, Vec<usize>) {
        let n = self.node_count();
        let mut label = vec![u32::MAX; n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != u32::MAX {
                continue;
            }
            let c = sizes.len() as u32;
            label[s] = c;
            stack.push(s);
            let mut size = 0;
            while let Some(u) = stack.pop() {
                size += 1;
                for &v in self.neighbors(u) {
                    if label[v as usize] == u32::MAX {
                        label[v as usize] = c;
                        stack.push(v as usize);
                    }
                }
            }
            sizes.push(size);
        }
        (label, sizes)
    }

    /// Members of the largest connected component (lowest label on ties),
    /// in increasing ID order. Empty for the empty graph.
    pub fn largest_component(&self) -> Vec<usize> {
        let (label, sizes) = self.components();
        let Some(best) = sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i as u32)
        else {
            return Vec::new();
        };
        (0..self.node_count()).filter(|&u| label[u] == best).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().1.len() <= 1
    }
}

pub(crate) fn check_node_count(n: usize) -> Result<(), GraphError> {
    if n >= u32::MAX as usize {
        Err(GraphError::TooLarge(n))
    } else {
        Ok(())
    }
}
