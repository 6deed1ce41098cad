//! Structural invariants over randomly drawn parameters.

use contagion_lab::cascade::{run_with_snapshots, CascadeParams, SnapshotSchedule, TransmissionModel};
use contagion_lab::generators::{CliquePartition, GeneratorParams, ModelKind};
use contagion_lab::graph::{format_edge_list, parse_edge_list};
use contagion_lab::metrics::{conductance_of, degree_distribution, log_bin_edges, ncp_heuristic, NcpConfig, NcpScope};
use contagion_lab::oracles::{clique_occupancy, yule_process, YuleParams};
use contagion_lab::rng::seeded;
use contagion_lab::{Graph, VertexSet};
use proptest::prelude::*;
use rand::seq::index::sample;

fn small_generator() -> impl Strategy<Value = GeneratorParams> {
    prop_oneof![
        (5usize..60, 1usize..4, 0.0..=1.0f64).prop_map(|(h, d, r)| GeneratorParams {
            model: ModelKind::Ws,
            n: 2 * d + 1 + h,
            d: 2 * d,
            r,
            k: 0
        }),
        (1usize..10, 2usize..6, 0.0..=1.0f64).prop_map(|(c, d, r)| GeneratorParams {
            model: ModelKind::Pc,
            n: c * d,
            d,
            r,
            k: 0
        }),
        (2usize..8, 0.0..=1.0f64).prop_map(|(c, r)| {
            // k = 10 keeps r*k integral after rounding r to tenths.
            let r = (r * 10.0).round() / 10.0;
            GeneratorParams { model: ModelKind::Pcm, n: 2 * c * 10, d: 0, r: r.min(0.9), k: 10 }
        }),
        (2usize..80, 0usize..6).prop_map(|(n, d)| GeneratorParams {
            model: ModelKind::Er,
            n: n.max(d + 1),
            d,
            r: 0.0,
            k: 0
        }),
        (1usize..4, 0usize..60).prop_map(|(d, h)| GeneratorParams {
            model: ModelKind::Pa,
            n: d + 1 + h,
            d: 2 * d,
            r: 0.0,
            k: 0
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_graphs_are_simple(params in small_generator(), seed in any::<u64>()) {
        let g = params.generate(seed).unwrap();
        prop_assert_eq!(g.node_count(), params.n);
        g.check_invariants().unwrap();
        prop_assert_eq!(g.total_degree(), 2 * g.edge_count());
        let hist = degree_distribution(&g);
        prop_assert_eq!(hist.counts.values().sum::<usize>(), g.node_count());
    }

    #[test]
    fn edge_lists_round_trip(params in small_generator(), seed in any::<u64>()) {
        let g = params.generate(seed).unwrap();
        let back = parse_edge_list(format_edge_list(&g).as_bytes()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn snapshots_nest_inside_the_potential_network(
        seed in any::<u64>(),
        model in prop_oneof![
            Just(TransmissionModel::Retig),
            Just(TransmissionModel::Ret),
            Just(TransmissionModel::Retmiv),
            Just(TransmissionModel::Retwe),
        ],
        alpha in 0.0..=1.0f64,
        beta in 0.05..=1.0f64,
    ) {
        let g = GeneratorParams { model: ModelKind::Ws, n: 300, d: 6, r: 0.2, k: 0 }.generate(seed).unwrap();
        let s = if model == TransmissionModel::Retmiv { 3 } else { 1 };
        let params = CascadeParams { model, m: 120, alpha, beta, gamma: 0.3, s };
        let schedule = SnapshotSchedule::new(vec![10, 40, 120]).unwrap();
        let run = run_with_snapshots(&g, &params, &schedule, seed).unwrap();
        let mut previous: Option<&contagion_lab::cascade::InfectedGraph> = None;
        for (snap, &cp) in run.snapshots.iter().zip(schedule.points()) {
            prop_assert!(snap.size() >= cp);
            snap.graph.check_invariants().unwrap();
            let exploration: std::collections::HashSet<(usize, usize)> = snap.exploration_edges.iter().copied().collect();
            for (u, v) in snap.graph.edges() {
                let (a, b) = (snap.to_underlying[u], snap.to_underlying[v]);
                let key = (u.min(v), u.max(v));
                prop_assert!(g.has_edge(a, b) || (model == TransmissionModel::Retwe && exploration.contains(&key)));
            }
            if let Some(prev) = previous {
                let ids: std::collections::HashSet<usize> = snap.to_underlying.iter().copied().collect();
                prop_assert!(prev.to_underlying.iter().all(|v| ids.contains(v)));
                prop_assert!(prev.graph.edge_count() <= snap.graph.edge_count());
            }
            previous = Some(snap);
        }
    }

    #[test]
    fn conductance_is_symmetric(seed in any::<u64>(), size in 1usize..39) {
        let g = GeneratorParams { model: ModelKind::Er, n: 40, d: 4, r: 0.0, k: 0 }.generate(seed).unwrap();
        let members = sample(&mut seeded(seed), 40, size).into_vec();
        let set = VertexSet::from_members(40, members).unwrap();
        match (conductance_of(&g, &set), conductance_of(&g, &set.complement())) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a, b);
                prop_assert!((0.0..=1.0).contains(&a.value()));
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "one side defined only: {:?} {:?}", a, b),
        }
    }

    #[test]
    fn occupancy_conserves_infected(seed in any::<u64>(), cliques in 1usize..30, k in 1usize..8, frac in 0.0..=1.0f64) {
        let n = cliques * k;
        let count = ((n as f64) * frac).round() as usize;
        let members = sample(&mut seeded(seed), n, count).into_vec();
        let set = VertexSet::from_members(n, members).unwrap();
        let occ = clique_occupancy(&CliquePartition::contiguous(n, k), &set).unwrap();
        prop_assert_eq!(occ.total_members(), count);
        prop_assert!(occ.group_count() <= cliques);
    }

    #[test]
    fn yule_counts_every_species(seed in any::<u64>(), steps in 1usize..2000, new_genus in 0.0..=1.0f64) {
        let h = yule_process(YuleParams { new_genus, steps, seed }).unwrap();
        prop_assert_eq!(h.total_members(), steps);
    }

    #[test]
    fn log_bins_tile_the_degrees(max in 1usize..5000, ratio in 1.01..4.0f64) {
        let bins = log_bin_edges(max, ratio);
        prop_assert_eq!(bins[0].0, 1);
        prop_assert!(bins.last().unwrap().1 >= max);
        for w in bins.windows(2) {
            prop_assert_eq!(w[0].1 + 1, w[1].0);
        }
    }

    #[test]
    fn ncp_points_are_certified(seed in any::<u64>(), whole in any::<bool>()) {
        let g = GeneratorParams { model: ModelKind::Er, n: 120, d: 3, r: 0.0, k: 0 }.generate(seed).unwrap();
        let scope = if whole { NcpScope::WholeGraph } else { NcpScope::LargestComponent };
        let curve = ncp_heuristic(&g, &NcpConfig { seeds: 8, scope, seed, ..NcpConfig::default() }).unwrap();
        curve.verify(&g).unwrap();
        for p in &curve.points {
            prop_assert!(p.bin_lo <= p.witness_size && p.witness_size <= p.bin_hi);
            prop_assert_eq!(p.witness.len(), p.witness_size);
        }
    }
}

#[test]
fn single_checkpoint_matches_direct_call() {
    let g: Graph = GeneratorParams { model: ModelKind::Ws, n: 500, d: 8, r: 0.1, k: 0 }.generate(3).unwrap();
    let params = CascadeParams::ret(200, 0.6, 0.05);
    let run = run_with_snapshots(&g, &params, &SnapshotSchedule::single(200), 8).unwrap();
    let direct = contagion_lab::cascade::run_cascade(&g, &params, 8).unwrap();
    assert_eq!(run.snapshots[0].graph, direct.graph);
    assert_eq!(run.snapshots[0].to_underlying, direct.to_underlying);
}
