//! Structural analysis of influence graphs: connectivity, flow balance,
//! symmetry, extremal factors, influence paths, and the reduction of the
//! classical update to a stochastic matrix.

use crate::error::{Error, Result};
use crate::model::{AgentId, BeliefConfig, InfluenceGraph};

/// Default slack when comparing in-flow against out-flow. Generated graphs
/// balance exactly; user-supplied weights need room for decimal rounding.
pub const DEFAULT_BALANCE_TOL: f64 = 1e-9;

/// A sequence of distinct agents where each has positive direct influence on
/// the next, together with the product of the edge weights along it.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluencePath {
    agents: Vec<AgentId>,
    product_influence: f64,
}

impl InfluencePath {
    /// Validates `agents` against `graph`: all distinct, every consecutive
    /// pair joined by a positive-weight edge.
    pub fn new(graph: &InfluenceGraph, agents: Vec<AgentId>) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::BadPath("a path has at least one agent".into()));
        }
        for &a in &agents {
            if a >= graph.n() {
                return Err(Error::AgentOutOfRange {
                    agent: a,
                    n: graph.n(),
                });
            }
        }
        for a in 0..agents.len() {
            for b in a + 1..agents.len() {
                if agents[a] == agents[b] {
                    return Err(Error::BadPath(format!(
                        "agents must be distinct, {} repeats",
                        agents[a]
                    )));
                }
            }
        }
        let mut product_influence = 1.0;
        for pair in agents.windows(2) {
            let w = graph.weight(pair[0], pair[1]);
            if !(w > 0.0) {
                return Err(Error::BadPath(format!(
                    "no direct influence from {} to {}",
                    pair[0], pair[1]
                )));
            }
            product_influence *= w;
        }
        Ok(Self {
            agents,
            product_influence,
        })
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn start(&self) -> AgentId {
        self.agents[0]
    }

    pub fn end(&self) -> AgentId {
        *self.agents.last().unwrap()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.agents.len() - 1
    }

    pub fn product_influence(&self) -> f64 {
        self.product_influence
    }
}

fn positive_out_edges(graph: &InfluenceGraph, i: AgentId) -> impl Iterator<Item = AgentId> + '_ {
    (0..graph.n()).filter(move |&j| j != i && graph.weight(i, j) > 0.0)
}

/// Breadth-first distances (in edges) from `start` over positive directed
/// edges; `reverse` walks edges backwards.
fn bfs_distances(graph: &InfluenceGraph, start: AgentId, reverse: bool) -> Vec<Option<usize>> {
    let n = graph.n();
    let mut dist = vec![None; n];
    dist[start] = Some(0);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let next_hop = dist[u].unwrap() + 1;
        for (v, slot) in dist.iter_mut().enumerate() {
            if v == u || slot.is_some() {
                continue;
            }
            let w = if reverse {
                graph.weight(v, u)
            } else {
                graph.weight(u, v)
            };
            if w > 0.0 {
                *slot = Some(next_hop);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// True iff every ordered pair of distinct agents is joined by a directed
/// path of positive influence.
pub fn is_strongly_connected(graph: &InfluenceGraph) -> bool {
    // single strongly connected component <=> node 0 reaches everyone and
    // everyone reaches node 0
    bfs_distances(graph, 0, false).iter().all(Option::is_some)
        && bfs_distances(graph, 0, true).iter().all(Option::is_some)
}

/// True iff ignoring edge direction leaves a single connected component.
pub fn is_weakly_connected(graph: &InfluenceGraph) -> bool {
    let n = graph.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for i in 0..n {
        for j in i + 1..n {
            if graph.weight(i, j) > 0.0 || graph.weight(j, i) > 0.0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                    components -= 1;
                }
            }
        }
    }
    components == 1
}

/// True iff every agent's total outgoing influence equals its total incoming
/// influence within `tol` (the self-loop contributes 1 to both sides).
pub fn is_balanced(graph: &InfluenceGraph, tol: f64) -> bool {
    (0..graph.n()).all(|i| (graph.out_sum(i) - graph.in_sum(i)).abs() <= tol)
}

/// Influence crossing a cut: `out` flows from `group` to its complement,
/// `in` flows back. The group must be a non-empty proper subset.
pub fn group_flow(graph: &InfluenceGraph, group: &[AgentId]) -> Result<(f64, f64)> {
    let n = graph.n();
    let mut inside = vec![false; n];
    for &a in group {
        if a >= n {
            return Err(Error::AgentOutOfRange { agent: a, n });
        }
        inside[a] = true;
    }
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 || size == n {
        return Err(Error::BadGroup);
    }
    let mut out = 0.0;
    let mut inward = 0.0;
    for (i, &i_inside) in inside.iter().enumerate() {
        if !i_inside {
            continue;
        }
        for (j, &j_inside) in inside.iter().enumerate() {
            if !j_inside {
                out += graph.weight(i, j);
                inward += graph.weight(j, i);
            }
        }
    }
    Ok((out, inward))
}

/// True iff influence is symmetric: `weight(i, j) == weight(j, i)` for every
/// pair. A reciprocal graph is automatically balanced.
pub fn is_reciprocal(graph: &InfluenceGraph) -> bool {
    let n = graph.n();
    (0..n).all(|i| (i + 1..n).all(|j| graph.weight(i, j) == graph.weight(j, i)))
}

/// True iff every agent has the same number of in-neighbors.
pub fn is_regular(graph: &InfluenceGraph) -> bool {
    let first = graph.neighbors(0).len();
    (1..graph.n()).all(|i| graph.neighbors(i).len() == first)
}

/// True iff every belief is exactly 0 or 1.
pub fn is_radical_config(config: &BeliefConfig) -> bool {
    config.values().iter().all(|&b| b == 0.0 || b == 1.0)
}

/// True iff some agent holds belief exactly 0 while another holds exactly 1,
/// which zeroes the minimal confirmation-bias factor.
pub fn violates_extremes_assumption(config: &BeliefConfig) -> bool {
    config.values().contains(&0.0) && config.values().contains(&1.0)
}

/// Smallest strictly positive weight in the graph. The unit diagonal is
/// always positive, so a graph without positive off-diagonal weights
/// degenerates to 1.
pub fn min_positive_influence(graph: &InfluenceGraph) -> f64 {
    let n = graph.n();
    let mut min = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            let w = graph.weight(i, j);
            if w > 0.0 && w < min {
                min = w;
            }
        }
    }
    min
}

/// Smallest confirmation-bias factor over all agent pairs: `1 - spread`.
pub fn min_confirmation_bias_factor(config: &BeliefConfig) -> f64 {
    1.0 - config.spread()
}

/// Row-stochastic matrix with strictly positive diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl StochasticMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(Error::RaggedMatrix {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
            entries.extend_from_slice(values);
        }
        let matrix = Self { n, entries };
        matrix.validate()?;
        Ok(matrix)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            let mut sum = 0.0;
            for j in 0..self.n {
                let e = self.entry(i, j);
                if !(e >= 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "stochastic matrix entry ({i}, {j}) = {e} is negative"
                    )));
                }
                sum += e;
            }
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "stochastic matrix row {i} sums to {sum}"
                )));
            }
            if !(self.entry(i, i) > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "stochastic matrix diagonal ({i}, {i}) must be positive"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Matrix-vector product `T * beliefs`.
    pub fn apply(&self, beliefs: &[f64]) -> Result<Vec<f64>> {
        if beliefs.len() != self.n {
            return Err(Error::DimensionMismatch {
                graph: self.n,
                config: beliefs.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j) * beliefs[j]).sum())
            .collect())
    }
}

/// The stochastic matrix whose product with a belief vector equals one
/// classical update step.
///
/// Off the diagonal, `T[i][j] = weight(j, i) / |neighbors(i)|` for in-neighbors
/// `j` of `i` and 0 otherwise; the diagonal completes each row to 1 and is at
/// least `1 / |neighbors(i)|`, hence strictly positive.
pub fn degroot_matrix(graph: &InfluenceGraph) -> StochasticMatrix {
    let n = graph.n();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let neighbors = graph.neighbors(i);
        let count = neighbors.len() as f64;
        let mut off_diagonal = 0.0;
        for &j in &neighbors {
            if j != i {
                let share = graph.weight(j, i) / count;
                entries[i * n + j] = share;
                off_diagonal += share;
            }
        }
        entries[i * n + i] = 1.0 - off_diagonal;
    }
    let matrix = StochasticMatrix { n, entries };
    debug_assert!(matrix.validate().is_ok());
    matrix
}

/// True iff some influence path leads from `i` to `j`.
pub fn influence_paths_exist(graph: &InfluenceGraph, i: AgentId, j: AgentId) -> bool {
    if i == j {
        return false; // paths have distinct agents
    }
    bfs_distances(graph, i, false)[j].is_some()
}

/// Shortest influence path from `i` to `j` by edge count, ties broken by
/// always stepping to the smallest-index next agent.
pub fn shortest_path(graph: &InfluenceGraph, i: AgentId, j: AgentId) -> Option<InfluencePath> {
    if i == j || i >= graph.n() || j >= graph.n() {
        return None;
    }
    // distance of every node to the target, then walk greedily downhill
    let dist_to_target = bfs_distances(graph, j, true);
    dist_to_target[i]?;
    let mut agents = vec![i];
    let mut current = i;
    while current != j {
        let remaining = dist_to_target[current].unwrap();
        let next = positive_out_edges(graph, current)
            .find(|&v| dist_to_target[v] == Some(remaining - 1))
            .expect("a node on a shortest path has a successor on one");
        agents.push(next);
        current = next;
    }
    Some(InfluencePath::new(graph, agents).expect("constructed along positive edges"))
}
