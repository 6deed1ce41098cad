//! Upper-bound network community profile from whisker and local-sweep cuts.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::sync::Arc;

use rand::seq::index::sample;
use rayon::prelude::*;

use super::bridges::{whiskers, Whisker};
use super::conductance::{conductance_of, Conductance};
use super::degree::log_bin_edges;
use super::ppr::{check_push_params, PushWorkspace};
use super::MetricError;
use crate::graph::{Graph, VertexSet};
use crate::rng::seeded;

/// Which vertices the profile is computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NcpScope {
    /// Largest connected component; the curve is flagged when the input is
    /// disconnected.
    #[default]
    LargestComponent,
    /// The whole graph; whole components become zero-conductance candidates.
    WholeGraph,
}

impl std::str::FromStr for NcpScope {
    type Err = MetricError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "largest-component" => Ok(NcpScope::LargestComponent),
            "whole-graph" => Ok(NcpScope::WholeGraph),
            _ => Err(MetricError::InvalidConfig(format!("ncp scope {s:?}; use largest-component or whole-graph"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NcpConfig {
    /// Number of random start vertices for the push sweeps.
    pub seeds: usize,
    /// Teleport probabilities; each start vertex is swept once per value.
    pub teleports: Vec<f64>,
    /// Smallest push tolerance (residual per unit degree).
    pub tolerance: f64,
    /// Caps the degree volume pushed per sweep; the tolerance is raised to
    /// `1 / (teleport * work_budget)` when that is larger.
    pub work_budget: f64,
    pub bin_ratio: f64,
    /// Largest set size profiled; defaults to half the profiled vertices.
    pub max_size: Option<usize>,
    pub scope: NcpScope,
    pub seed: u64,
}

impl Default for NcpConfig {
    fn default() -> Self {
        NcpConfig {
            seeds: 100,
            teleports: vec![0.1, 0.03, 0.01, 0.003, 0.001],
            tolerance: 1e-8,
            work_budget: 2e6,
            bin_ratio: 1.1,
            max_size: None,
            scope: NcpScope::LargestComponent,
            seed: 0,
        }
    }
}

impl NcpConfig {
    pub fn validate(&self) -> Result<(), MetricError> {
        for &t in &self.teleports {
            check_push_params(t, self.tolerance)?;
        }
        if !(self.work_budget > 0.0) {
            return Err(MetricError::InvalidConfig("work budget must be positive".into()));
        }
        if !(self.bin_ratio > 1.0 && self.bin_ratio.is_finite()) {
            return Err(MetricError::InvalidConfig(format!("bin ratio {} must exceed 1", self.bin_ratio)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WitnessMethod {
    Component,
    Whisker,
    WhiskerUnion,
    PushSweep,
}

impl WitnessMethod {
    pub fn name(self) -> &'static str {
        match self {
            WitnessMethod::Component => "component",
            WitnessMethod::Whisker => "whisker",
            WitnessMethod::WhiskerUnion => "whisker-union",
            WitnessMethod::PushSweep => "push-sweep",
        }
    }
}

/// Best set found for one size bin.
#[derive(Debug, Clone, PartialEq)]
pub struct NcpPoint {
    pub bin_lo: usize,
    pub bin_hi: usize,
    pub conductance: f64,
    pub exact: Conductance,
    pub witness_size: usize,
    pub method: WitnessMethod,
    /// Witness vertices as input ids, sorted.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NcpCurve {
    /// Non-empty bins in increasing size order.
    pub points: Vec<NcpPoint>,
    pub bin_ratio: f64,
    pub scope: NcpScope,
    /// The input was disconnected and only its largest component was profiled.
    pub disconnected: bool,
    pub scope_nodes: usize,
    pub input_nodes: usize,
}

impl NcpCurve {
    /// Lowest point; the smaller bin wins ties.
    pub fn min_point(&self) -> Option<&NcpPoint> {
        self.points.iter().min_by(|a, b| a.exact.cmp(&b.exact).then(a.bin_lo.cmp(&b.bin_lo)))
    }

    /// Point whose bin contains `size`.
    pub fn point_for_size(&self, size: usize) -> Option<&NcpPoint> {
        self.points.iter().find(|p| p.bin_lo <= size && size <= p.bin_hi)
    }

    /// Recomputes every point's conductance from its witness on `g`, the
    /// graph the curve was computed from.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let scope = Scope::new(g, self.scope).map_err(|e| e.to_string())?;
        let mut local = vec![usize::MAX; g.node_count()];
        for (i, &v) in scope.to_input.iter().enumerate() {
            local[v] = i;
        }
        for p in &self.points {
            if p.witness.len() != p.witness_size || p.witness_size < p.bin_lo || p.witness_size > p.bin_hi {
                return Err(format!("bin {}..={} has witness of size {}", p.bin_lo, p.bin_hi, p.witness.len()));
            }
            let ids = p.witness.iter().map(|&v| local.get(v).copied().unwrap_or(usize::MAX));
            let set = VertexSet::from_members(scope.graph.node_count(), ids).map_err(|e| e.to_string())?;
            let c = conductance_of(&scope.graph, &set).map_err(|e| e.to_string())?;
            if c != p.exact || c.value() != p.conductance {
                return Err(format!(
                    "bin {}..={}: witness gives {}/{}, curve says {}/{}",
                    p.bin_lo, p.bin_hi, c.cut, c.denom, p.exact.cut, p.exact.denom
                ));
            }
        }
        Ok(())
    }
}

struct Scope<'g> {
    graph: Cow<'g, Graph>,
    to_input: Vec<usize>,
    disconnected: bool,
}

impl<'g> Scope<'g> {
    fn new(g: &'g Graph, scope: NcpScope) -> Result<Self, MetricError> {
        if g.node_count() == 0 {
            return Err(MetricError::EmptyGraph);
        }
        let disconnected = !g.is_connected();
        if disconnected && scope == NcpScope::LargestComponent {
            let comp = g.largest_component();
            let set = VertexSet::from_members(g.node_count(), comp)?;
            let (sub, to_input) = g.induced_subgraph(&set)?;
            return Ok(Scope { graph: Cow::Owned(sub), to_input, disconnected });
        }
        Ok(Scope { graph: Cow::Borrowed(g), to_input: (0..g.node_count()).collect(), disconnected })
    }
}

#[derive(Debug, Clone)]
enum Witness {
    /// First `len` vertices of a sweep order.
    Prefix(Arc<Vec<u32>>, usize),
    Whisker(usize, bool),
    WhiskerUnion(Arc<Vec<u32>>, usize),
    ComponentUnion(Arc<Vec<u32>>, usize),
}

#[derive(Debug, Clone)]
struct Candidate {
    value: Conductance,
    size: usize,
    method: WitnessMethod,
    /// Tie-break so merges do not depend on scheduling.
    key: (u64, u64),
    witness: Witness,
}

impl Candidate {
    fn beats(&self, other: &Candidate) -> bool {
        self.value
            .cmp(&other.value)
            .then(self.method.cmp(&other.method))
            .then(self.key.cmp(&other.key))
            == Ordering::Less
    }
}

struct Profile {
    best: Vec<Option<Candidate>>,
}

impl Profile {
    fn new(bins: usize) -> Self {
        Profile { best: vec![None; bins] }
    }

    fn offer(&mut self, bin: usize, c: Candidate) {
        match &self.best[bin] {
            Some(b) if !c.beats(b) => {}
            _ => self.best[bin] = Some(c),
        }
    }

    fn merge(mut self, other: Profile) -> Profile {
        for (bin, c) in other.best.into_iter().enumerate() {
            if let Some(c) = c {
                self.offer(bin, c);
            }
        }
        self
    }
}

struct Bins {
    edges: Vec<(usize, usize)>,
    /// size -> bin index, for sizes `0..=max`; index 0 unused.
    of_size: Vec<u32>,
}

impl Bins {
    fn new(max: usize, ratio: f64) -> Self {
        let edges = log_bin_edges(max, ratio);
        let mut of_size = vec![0u32; max + 1];
        for (i, &(lo, hi)) in edges.iter().enumerate() {
            for s in lo..=hi.min(max) {
                of_size[s] = i as u32;
            }
        }
        Bins { edges, of_size }
    }

    fn of(&self, size: usize) -> usize {
        self.of_size[size] as usize
    }
}

fn ratio(cut: u64, vol: u64, total: u64) -> Option<Conductance> {
    let denom = vol.min(total - vol);
    (denom > 0).then_some(Conductance { cut, denom })
}

/// Upper bound on the minimum conductance per logarithmic size bin, over
/// sizes `1..=max_size`.
pub fn ncp_heuristic(g: &Graph, config: &NcpConfig) -> Result<NcpCurve, MetricError> {
    config.validate()?;
    let scope = Scope::new(g, config.scope)?;
    let sg: &Graph = &scope.graph;
    let n = sg.node_count();
    let max_size = config.max_size.unwrap_or(n / 2).min(n / 2);
    let mut curve = NcpCurve {
        points: Vec::new(),
        bin_ratio: config.bin_ratio,
        scope: config.scope,
        disconnected: scope.disconnected,
        scope_nodes: n,
        input_nodes: g.node_count(),
    };
    let total = sg.total_degree() as u64;
    if max_size == 0 || total == 0 {
        return Ok(curve);
    }
    let bins = Bins::new(max_size, config.bin_ratio);
    let mut profile = Profile::new(bins.edges.len());

    if config.scope == NcpScope::WholeGraph {
        component_candidates(sg, &bins, max_size, total, &mut profile);
    }
    let whisker_list = whiskers(sg);
    whisker_candidates(&whisker_list, n, &bins, max_size, total, &mut profile);
    let sweeps = sweep_candidates(sg, config, &bins, max_size, total);
    profile = profile.merge(sweeps);

    let (labels, _) = if config.scope == NcpScope::WholeGraph { sg.components() } else { (Vec::new(), Vec::new()) };
    for (bin, best) in profile.best.into_iter().enumerate() {
        let Some(c) = best else { continue };
        let local = materialize(sg, &c.witness, &whisker_list, &labels);
        debug_assert_eq!(local.len(), c.size);
        let mut witness: Vec<usize> = local.iter().map(|&v| scope.to_input[v]).collect();
        witness.sort_unstable();
        let (lo, hi) = bins.edges[bin];
        curve.points.push(NcpPoint {
            bin_lo: lo,
            bin_hi: hi.min(max_size),
            conductance: c.value.value(),
            exact: c.value,
            witness_size: c.size,
            method: c.method,
            witness,
        });
    }
    Ok(curve)
}

fn component_candidates(g: &Graph, bins: &Bins, max_size: usize, total: u64, profile: &mut Profile) {
    let (labels, sizes) = g.components();
    let mut volume = vec![0u64; sizes.len()];
    for v in 0..g.node_count() {
        volume[labels[v] as usize] += g.degree(v) as u64;
    }
    let mut order: Vec<u32> = (0..sizes.len() as u32).filter(|&c| volume[c as usize] > 0).collect();
    order.sort_by_key(|&c| (sizes[c as usize], c));
    let order = Arc::new(order);
    let (mut size, mut vol) = (0usize, 0u64);
    for (i, &c) in order.iter().enumerate() {
        size += sizes[c as usize];
        vol += volume[c as usize];
        if size > max_size {
            break;
        }
        if let Some(value) = ratio(0, vol, total) {
            let key = (i as u64, 0);
            let witness = Witness::ComponentUnion(order.clone(), i + 1);
            profile.offer(bins.of(size), Candidate { value, size, method: WitnessMethod::Component, key, witness });
        }
    }
}

fn whisker_candidates(list: &[Whisker], n: usize, bins: &Bins, max_size: usize, total: u64, profile: &mut Profile) {
    for (i, w) in list.iter().enumerate() {
        for complement in [false, true] {
            let size = if complement { n - w.size } else { w.size };
            if size == 0 || size > max_size {
                continue;
            }
            let vol = if complement { total - w.volume } else { w.volume };
            if let Some(value) = ratio(1, vol, total) {
                let key = (i as u64, complement as u64);
                let witness = Witness::Whisker(i, complement);
                profile.offer(bins.of(size), Candidate { value, size, method: WitnessMethod::Whisker, key, witness });
            }
        }
    }
    let maximal: Vec<u32> = (0..list.len() as u32).filter(|&i| list[i as usize].maximal).collect();
    let by_volume = {
        let mut o = maximal.clone();
        o.sort_by_key(|&i| (std::cmp::Reverse(list[i as usize].volume), i));
        o
    };
    let by_size = {
        let mut o = maximal;
        o.sort_by_key(|&i| (list[i as usize].size, i));
        o
    };
    for (ordering, order) in [by_volume, by_size].into_iter().enumerate() {
        let order = Arc::new(order);
        let (mut size, mut vol) = (0usize, 0u64);
        for (k, &i) in order.iter().enumerate() {
            size += list[i as usize].size;
            vol += list[i as usize].volume;
            if size > max_size {
                break;
            }
            if k == 0 {
                continue;
            }
            if let Some(value) = ratio(k as u64 + 1, vol, total) {
                let key = (ordering as u64, k as u64);
                let witness = Witness::WhiskerUnion(order.clone(), k + 1);
                profile.offer(bins.of(size), Candidate { value, size, method: WitnessMethod::WhiskerUnion, key, witness });
            }
        }
    }
}

fn sweep_candidates(g: &Graph, config: &NcpConfig, bins: &Bins, max_size: usize, total: u64) -> Profile {
    let n = g.node_count();
    let eligible: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 0).collect();
    let starts: Vec<usize> = if config.seeds >= eligible.len() {
        eligible
    } else {
        let mut rng = seeded(config.seed);
        let mut idx = sample(&mut rng, eligible.len(), config.seeds).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| eligible[i]).collect()
    };
    let tasks: Vec<(usize, usize)> =
        (0..starts.len()).flat_map(|s| (0..config.teleports.len()).map(move |t| (s, t))).collect();
    let nbins = bins.edges.len();
    tasks
        .par_iter()
        .fold(
            || (PushWorkspace::new(n), vec![false; n], Profile::new(nbins)),
            |(mut ws, mut mark, mut profile), &(s, t)| {
                let teleport = config.teleports[t];
                let tolerance = config.tolerance.max(1.0 / (teleport * config.work_budget));
                ws.run(g, starts[s], teleport, tolerance);
                let key = ((s * config.teleports.len() + t) as u64, 0);
                sweep(g, &ws, &mut mark, bins, max_size, total, key, &mut profile);
                (ws, mark, profile)
            },
        )
        .map(|(_, _, p)| p)
        .reduce(|| Profile::new(nbins), Profile::merge)
}

/// Orders the pushed vertices by score per unit degree and offers every
/// prefix of size at most `max_size`.
#[allow(clippy::too_many_arguments)]
fn sweep(
    g: &Graph,
    ws: &PushWorkspace,
    mark: &mut [bool],
    bins: &Bins,
    max_size: usize,
    total: u64,
    key: (u64, u64),
    profile: &mut Profile,
) {
    let mut order: Vec<u32> = ws.touched.iter().copied().filter(|&v| ws.p[v as usize] > 0.0).collect();
    let score = |v: u32| ws.p[v as usize] / g.degree(v as usize).max(1) as f64;
    order.sort_unstable_by(|&a, &b| score(b).total_cmp(&score(a)).then(a.cmp(&b)));
    order.truncate(max_size);
    let mut local: Vec<Option<(Conductance, usize)>> = vec![None; bins.edges.len()];
    let (mut cut, mut vol) = (0i64, 0u64);
    for (i, &v) in order.iter().enumerate() {
        let v = v as usize;
        let d = g.degree(v) as i64;
        let inside = g.neighbors(v).iter().filter(|&&w| mark[w as usize]).count() as i64;
        cut += d - 2 * inside;
        vol += d as u64;
        mark[v] = true;
        if let Some(value) = ratio(cut as u64, vol, total) {
            let bin = bins.of(i + 1);
            if local[bin].is_none_or(|(b, _)| value < b) {
                local[bin] = Some((value, i + 1));
            }
        }
    }
    for &v in &order {
        mark[v as usize] = false;
    }
    let longest = local.iter().flatten().map(|&(_, len)| len).max();
    let Some(longest) = longest else { return };
    order.truncate(longest);
    let order = Arc::new(order);
    for (bin, best) in local.into_iter().enumerate() {
        if let Some((value, len)) = best {
            let witness = Witness::Prefix(order.clone(), len);
            let c = Candidate { value, size: len, method: WitnessMethod::PushSweep, key: (key.0, len as u64), witness };
            profile.offer(bin, c);
        }
    }
}

fn materialize(g: &Graph, w: &Witness, list: &[Whisker], labels: &[u32]) -> Vec<usize> {
    match w {
        Witness::Prefix(order, len) => order[..*len].iter().map(|&v| v as usize).collect(),
        Witness::Whisker(i, complement) => {
            let inside = list[*i].members(g);
            if !complement {
                return inside;
            }
            let set = VertexSet::from_members(g.node_count(), inside).expect("whisker ids are in range");
            set.complement().members().to_vec()
        }
        Witness::WhiskerUnion(order, len) => order[..*len].iter().flat_map(|&i| list[i as usize].members(g)).collect(),
        Witness::ComponentUnion(order, len) => {
            let chosen: std::collections::HashSet<u32> = order[..*len].iter().copied().collect();
            (0..g.node_count()).filter(|&v| chosen.contains(&labels[v])).collect()
        }
    }
}
