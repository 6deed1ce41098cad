use rand::Rng;

use super::rewire::WorkingGraph;
use super::GenerateError;
use crate::graph::{check_node_count, Graph};
use crate::rng::{seeded, LabRng};

const MAX_RESTARTS: usize = 200;
const RANDOM_TRIES: usize = 64;
const MAX_ENUMERATED_STUBS: usize = 4096;

/// Random `d`-regular graph on `n` nodes.
///
/// Stubs are paired one pair at a time: two uniformly random free stubs are
/// drawn and kept unless they would form a loop or a parallel edge. When the
/// remaining stubs admit no legal pair the whole pairing restarts.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenerateError> {
    let mut rng = seeded(seed);
    regular_adjacency(n, d, &mut rng).map(WorkingGraph::into_graph)
}

pub(crate) fn regular_adjacency(n: usize, d: usize, rng: &mut LabRng) -> Result<WorkingGraph, GenerateError> {
    if !(n * d).is_multiple_of(2) {
        return Err(GenerateError::InvalidParams(format!("n * d must be even (n = {n}, d = {d})")));
    }
    if d > 0 && d >= n {
        return Err(GenerateError::InvalidParams(format!("need d < n (d = {d}, n = {n})")));
    }
    check_node_count(n)?;
    for _ in 0..MAX_RESTARTS {
        if let Some(work) = try_pairing(n, d, rng) {
            return Ok(work);
        }
    }
    Err(GenerateError::PairingFailed { restarts: MAX_RESTARTS })
}

fn try_pairing(n: usize, d: usize, rng: &mut LabRng) -> Option<WorkingGraph> {
    let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut work = WorkingGraph::new(n, d);
    'outer: while !stubs.is_empty() {
        for _ in 0..RANDOM_TRIES {
            let len = stubs.len();
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            let (a, b) = (stubs[i] as usize, stubs[j] as usize);
            if i == j || a == b || work.contains(a, b) {
                continue;
            }
            remove_two(&mut stubs, i, j);
            work.add(a, b);
            continue 'outer;
        }
        // Random draws keep failing: list the legal pairs explicitly.
        let len = stubs.len();
        if len > MAX_ENUMERATED_STUBS {
            return None;
        }
        let mut legal = Vec::new();
        for i in 0..len {
            for j in i + 1..len {
                let (a, b) = (stubs[i] as usize, stubs[j] as usize);
                if a != b && !work.contains(a, b) {
                    legal.push((i, j));
                }
            }
        }
        if legal.is_empty() {
            return None;
        }
        let (i, j) = legal[rng.gen_range(0..legal.len())];
        let (a, b) = (stubs[i] as usize, stubs[j] as usize);
        remove_two(&mut stubs, i, j);
        work.add(a, b);
    }
    Some(work)
}

fn remove_two(stubs: &mut Vec<u32>, i: usize, j: usize) {
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    stubs.swap_remove(hi);
    stubs.swap_remove(lo);
}
