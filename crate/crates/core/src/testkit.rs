//! Deterministic generators for randomized tests and benchmarks.
//!
//! Everything here takes the RNG by argument so callers can pin seeds.
//! Flow-balanced samplers use dyadic weights (multiples of 1/64), which keeps
//! every in/out sum exactly representable: generated circulations balance
//! bit-exactly, not merely within tolerance.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{AgentId, BeliefConfig, InfluenceGraph};

/// Uniform random beliefs in `[0, 1)`.
pub fn random_config(rng: &mut impl Rng, n: usize) -> BeliefConfig {
    BeliefConfig::new((0..n).map(|_| rng.random::<f64>()).collect())
        .expect("sampled beliefs are in range")
}

/// Uniform random beliefs in `[lo, hi]`, for scenarios that must avoid the
/// extremes.
pub fn random_interior_config(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> BeliefConfig {
    BeliefConfig::new((0..n).map(|_| rng.random_range(lo..=hi)).collect())
        .expect("sampled beliefs are in range")
}

/// Random beliefs drawn from {0, 1}.
pub fn random_radical_config(rng: &mut impl Rng, n: usize) -> BeliefConfig {
    BeliefConfig::new(
        (0..n)
            .map(|_| if rng.random::<bool>() { 1.0 } else { 0.0 })
            .collect(),
    )
    .expect("radical beliefs are in range")
}

/// Random graph where each ordered off-diagonal pair carries influence with
/// probability `density`, drawn uniformly from `[0, 1)`.
pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> InfluenceGraph {
    let edges: Vec<f64> = (0..n * n)
        .map(|_| {
            if rng.random::<f64>() < density {
                rng.random::<f64>()
            } else {
                0.0
            }
        })
        .collect();
    InfluenceGraph::from_fn(n, |i, j| edges[i * n + j]).expect("sampled weights are in range")
}

fn dyadic_weight(rng: &mut impl Rng) -> f64 {
    rng.random_range(1..=16) as f64 / 64.0
}

/// Superposes directed cycles with equal per-cycle weight, which conserves
/// every agent's in/out flow by construction. Cycles that would push an edge
/// above 1 are rejected and retried.
///
/// With `connect` the first cycle runs through all agents, making the result
/// strongly connected; without it, agents left off every cycle keep only
/// their self-loop.
pub fn random_circulation(
    rng: &mut impl Rng,
    n: usize,
    extra_cycles: usize,
    connect: bool,
) -> InfluenceGraph {
    assert!(n >= 2, "a circulation needs at least two agents");
    let mut weights = vec![0.0; n * n];
    let add_cycle = |nodes: &[AgentId], w: f64, weights: &mut Vec<f64>| -> bool {
        let within_cap = (0..nodes.len()).all(|a| {
            let (from, to) = (nodes[a], nodes[(a + 1) % nodes.len()]);
            weights[from * n + to] + w <= 1.0
        });
        if within_cap {
            for a in 0..nodes.len() {
                let (from, to) = (nodes[a], nodes[(a + 1) % nodes.len()]);
                weights[from * n + to] += w;
            }
        }
        within_cap
    };

    if connect {
        let mut all: Vec<AgentId> = (0..n).collect();
        all.shuffle(rng);
        add_cycle(&all, dyadic_weight(rng), &mut weights);
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra_cycles && attempts < extra_cycles * 8 {
        attempts += 1;
        let len = rng.random_range(2..=n);
        let mut nodes: Vec<AgentId> = (0..n).collect();
        nodes.shuffle(rng);
        nodes.truncate(len);
        if add_cycle(&nodes, dyadic_weight(rng), &mut weights) {
            added += 1;
        }
    }
    InfluenceGraph::from_fn(n, |i, j| weights[i * n + j]).expect("cycle weights are capped at 1")
}

/// Random circulant graph: every agent influences the agents `shift` places
/// around a ring, one weight per shift. Circulants are regular circulations;
/// with `symmetric` the shift set is closed under reversal, making the graph
/// reciprocal. Shift 1 is always included so the result is strongly
/// connected.
pub fn random_circulant(
    rng: &mut impl Rng,
    n: usize,
    extra_shifts: usize,
    symmetric: bool,
) -> InfluenceGraph {
    assert!(n >= 2, "a circulant needs at least two agents");
    let mut by_shift = vec![0.0f64; n]; // by_shift[s] = weight of edges i -> i + s
    let set = |shifts: &mut Vec<f64>, s: usize, w: f64| {
        if shifts[s] == 0.0 {
            shifts[s] = w;
            if symmetric {
                shifts[n - s] = w;
            }
        }
    };
    set(&mut by_shift, 1, dyadic_weight(rng));
    for _ in 0..extra_shifts {
        let s = rng.random_range(1..n);
        set(&mut by_shift, s, dyadic_weight(rng));
    }
    InfluenceGraph::from_fn(n, |i, j| by_shift[(j + n - i) % n]).expect("weights are in range")
}

/// Relabels agents: agent `i` becomes `perm[i]`.
pub fn permute_config(config: &BeliefConfig, perm: &[AgentId]) -> BeliefConfig {
    let mut values = vec![0.0; config.n()];
    for (i, &target) in perm.iter().enumerate() {
        values[target] = config[i];
    }
    BeliefConfig::new(values).expect("permutation preserves range")
}

/// Relabels both endpoints of every edge: agent `i` becomes `perm[i]`.
pub fn permute_graph(graph: &InfluenceGraph, perm: &[AgentId]) -> InfluenceGraph {
    let n = graph.n();
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            weights[perm[i] * n + perm[j]] = graph.weight(i, j);
        }
    }
    InfluenceGraph::from_fn(n, |i, j| weights[i * n + j]).expect("permutation preserves weights")
}

/// Random permutation of `0..n`.
pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<AgentId> {
    let mut perm: Vec<AgentId> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Repeats every agent `m` times (with its belief), preserving group
/// proportions.
pub fn replicate_config(config: &BeliefConfig, m: usize) -> BeliefConfig {
    assert!(m >= 1);
    let values = config
        .values()
        .iter()
        .flat_map(|&b| std::iter::repeat_n(b, m))
        .collect();
    BeliefConfig::new(values).expect("replication preserves range")
}
