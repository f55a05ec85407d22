//! Shared domain types: belief configurations, influence graphs, and the
//! discretization machinery that turns beliefs into discrete distributions.

use crate::error::{Error, Result};

/// Agents are identified by their index in `0..n`.
pub type AgentId = usize;

/// One confidence value in `[0, 1]` per agent.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefConfig {
    beliefs: Vec<f64>,
}

impl BeliefConfig {
    /// Validates that the configuration is non-empty and every value lies in `[0, 1]`.
    pub fn new(beliefs: Vec<f64>) -> Result<Self> {
        if beliefs.is_empty() {
            return Err(Error::EmptyConfig);
        }
        for (index, &value) in beliefs.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::BeliefOutOfRange { index, value });
            }
        }
        Ok(Self { beliefs })
    }

    /// Constructor for update outputs, which stay in range by construction.
    /// Out-of-range values here indicate a defect in the update rule, not bad
    /// input, so this asserts instead of returning an error.
    pub(crate) fn from_update(beliefs: Vec<f64>) -> Self {
        debug_assert!(
            beliefs.iter().all(|b| (-1e-12..=1.0 + 1e-12).contains(b)),
            "update produced a belief outside [0, 1]"
        );
        Self { beliefs }
    }

    pub fn n(&self) -> usize {
        self.beliefs.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.beliefs
    }

    pub fn mean(&self) -> f64 {
        self.beliefs.iter().sum::<f64>() / self.beliefs.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.beliefs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.beliefs
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Max minus min belief; zero exactly when all agents agree.
    pub fn spread(&self) -> f64 {
        self.max() - self.min()
    }
}

impl std::ops::Index<AgentId> for BeliefConfig {
    type Output = f64;

    fn index(&self, i: AgentId) -> &f64 {
        &self.beliefs[i]
    }
}

/// Weighted directed influence graph over `n` agents.
///
/// `weight(i, j)` is the direct influence agent `i` has on agent `j`, in
/// `[0, 1]`. Every agent is self-confident: the diagonal is fixed at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceGraph {
    n: usize,
    // row-major: weights[i * n + j] = influence of i on j
    weights: Vec<f64>,
}

impl InfluenceGraph {
    /// Builds a graph from explicit rows, validating shape, range, and the
    /// unit diagonal.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyConfig);
        }
        let mut weights = Vec::with_capacity(n * n);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(Error::RaggedMatrix {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
            weights.extend_from_slice(values);
        }
        Self::from_flat(n, weights)
    }

    /// Builds a graph by evaluating `f(i, j)` for every ordered pair `i != j`;
    /// the diagonal is forced to 1.
    pub fn from_fn(n: usize, mut f: impl FnMut(AgentId, AgentId) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyConfig);
        }
        let mut weights = vec![1.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    weights[i * n + j] = f(i, j);
                }
            }
        }
        Self::from_flat(n, weights)
    }

    /// The graph with no influence besides each agent's self-loop.
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| 0.0)
    }

    fn from_flat(n: usize, weights: Vec<f64>) -> Result<Self> {
        debug_assert_eq!(weights.len(), n * n);
        for i in 0..n {
            for j in 0..n {
                let value = weights[i * n + j];
                if i == j {
                    if value != 1.0 {
                        return Err(Error::NonUnitDiagonal { index: i, value });
                    }
                } else if !(0.0..=1.0).contains(&value) {
                    return Err(Error::WeightOutOfRange {
                        from: i,
                        to: j,
                        value,
                    });
                }
            }
        }
        Ok(Self { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Direct influence of agent `i` on agent `j`.
    pub fn weight(&self, i: AgentId, j: AgentId) -> f64 {
        self.weights[i * self.n + j]
    }

    /// The agents with direct influence on `i`, in ascending order.
    /// Always contains `i` itself because of the unit diagonal.
    pub fn neighbors(&self, i: AgentId) -> Vec<AgentId> {
        (0..self.n).filter(|&j| self.weight(j, i) > 0.0).collect()
    }

    /// Neighbor sets for all agents at once; `lists[i]` equals `neighbors(i)`.
    pub fn neighbor_lists(&self) -> Vec<Vec<AgentId>> {
        (0..self.n).map(|i| self.neighbors(i)).collect()
    }

    /// Total influence agent `i` exerts, including its self-loop.
    pub fn out_sum(&self, i: AgentId) -> f64 {
        (0..self.n).map(|j| self.weight(i, j)).sum()
    }

    /// Total influence agent `i` receives, including its self-loop.
    pub fn in_sum(&self, i: AgentId) -> f64 {
        (0..self.n).map(|j| self.weight(j, i)).sum()
    }
}

/// Ordered partition of `[0, 1]` into `k` bins.
///
/// Every bin is half-open `[c_m, c_{m+1})` except the last, which is closed
/// so that a belief of exactly 1 still falls in a bin. The interior
/// boundaries are the borderline points.
#[derive(Debug, Clone, PartialEq)]
pub struct Discretization {
    boundaries: Vec<f64>,
}

impl Discretization {
    /// Builds a discretization from boundaries `0 = c_0 < c_1 < … < c_k = 1`.
    pub fn from_boundaries(boundaries: Vec<f64>) -> Result<Self> {
        if boundaries.len() < 2 {
            return Err(Error::BadBoundaries(
                "need at least two boundaries (one bin)".into(),
            ));
        }
        if boundaries[0] != 0.0 {
            return Err(Error::BadBoundaries(format!(
                "first boundary must be 0, got {}",
                boundaries[0]
            )));
        }
        if *boundaries.last().unwrap() != 1.0 {
            return Err(Error::BadBoundaries(format!(
                "last boundary must be 1, got {}",
                boundaries.last().unwrap()
            )));
        }
        for pair in boundaries.windows(2) {
            if !(pair[1] > pair[0]) {
                return Err(Error::BadBoundaries(format!(
                    "boundaries must be strictly increasing, got {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        let disc = Self { boundaries };
        // Strictly increasing boundaries give strictly increasing midpoints in
        // exact arithmetic; reject the degenerate float collisions.
        if disc.midpoints().windows(2).any(|m| m[1] <= m[0]) {
            return Err(Error::BadBoundaries(
                "bins too narrow: midpoints collide in floating point".into(),
            ));
        }
        Ok(disc)
    }

    /// `k` bins of equal width.
    pub fn equal_bins(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadBoundaries("need at least one bin".into()));
        }
        let boundaries = (0..=k).map(|m| m as f64 / k as f64).collect();
        Self::from_boundaries(boundaries)
    }

    /// Number of bins.
    pub fn k(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Interior boundaries `c_1 … c_{k-1}`, i.e. the bin endpoints different
    /// from 0 and 1.
    pub fn borderlines(&self) -> &[f64] {
        &self.boundaries[1..self.boundaries.len() - 1]
    }

    pub fn midpoint(&self, m: usize) -> f64 {
        (self.boundaries[m] + self.boundaries[m + 1]) / 2.0
    }

    pub fn midpoints(&self) -> Vec<f64> {
        (0..self.k()).map(|m| self.midpoint(m)).collect()
    }

    /// The bin holding `v`: the unique `m` with `c_m <= v < c_{m+1}`, with
    /// `v = 1` landing in the last (closed) bin.
    pub fn bin_index(&self, v: f64) -> Result<usize> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::ValueOutOfRange(v));
        }
        Ok(self.borderlines().partition_point(|&c| c <= v))
    }
}

/// Discrete opinion distribution: bin weights `pi` summing to 1 and pairwise
/// distinct bin values `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefDistribution {
    weights: Vec<f64>,
    values: Vec<f64>,
}

impl BeliefDistribution {
    pub fn new(weights: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if weights.len() != values.len() || weights.is_empty() {
            return Err(Error::BadDistribution(
                "weights and values must be non-empty and of equal length".into(),
            ));
        }
        if weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(Error::BadDistribution(
                "weights must be non-negative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::BadDistribution(format!(
                "weights must sum to 1, got {total}"
            )));
        }
        for a in 0..values.len() {
            for b in a + 1..values.len() {
                if values[a] == values[b] {
                    return Err(Error::BadDistribution(format!(
                        "values must be pairwise distinct, got {} twice",
                        values[a]
                    )));
                }
            }
        }
        Ok(Self { weights, values })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Which update rule drives the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpdateKind {
    /// Opinion averaging discounted by similarity of beliefs.
    ConfirmationBias,
    /// Plain weighted opinion averaging.
    Classical,
}

/// Buckets the agents of `config` into the bins of `disc`.
///
/// The weight of bin `m` is the fraction of agents whose belief falls in it
/// (a single division per bin); the value is the bin midpoint. Empty bins are
/// retained with weight 0.
pub fn belief_distribution(config: &BeliefConfig, disc: &Discretization) -> BeliefDistribution {
    let mut counts = vec![0usize; disc.k()];
    for &b in config.values() {
        // in range by BeliefConfig's invariant
        counts[disc.bin_index(b).expect("beliefs are in [0, 1]")] += 1;
    }
    let n = config.n() as f64;
    BeliefDistribution {
        weights: counts.iter().map(|&c| c as f64 / n).collect(),
        values: disc.midpoints(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn belief_config_rejects_out_of_range() {
        let err = BeliefConfig::new(vec![0.5, 1.2]).unwrap_err();
        assert_eq!(
            err,
            Error::BeliefOutOfRange {
                index: 1,
                value: 1.2
            }
        );
        assert!(BeliefConfig::new(vec![-0.1]).is_err());
        assert!(BeliefConfig::new(vec![f64::NAN]).is_err());
        assert!(BeliefConfig::new(vec![]).is_err());
    }

    #[test]
    fn graph_requires_unit_diagonal_and_range() {
        assert!(InfluenceGraph::from_rows(vec![vec![1.0, 0.5], vec![0.5, 0.9]]).is_err());
        assert!(InfluenceGraph::from_rows(vec![vec![1.0, 1.5], vec![0.5, 1.0]]).is_err());
        assert!(InfluenceGraph::from_rows(vec![vec![1.0, 0.5], vec![0.5]]).is_err());
        let g = InfluenceGraph::from_rows(vec![vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        assert_eq!(g.weight(0, 1), 0.5);
        assert_eq!(g.weight(1, 0), 0.0);
    }

    #[test]
    fn neighbors_of_clique_is_everyone() {
        let g = crate::scenarios::clique(3, 0.5).unwrap();
        assert_eq!(g.neighbors(0), vec![0, 1, 2]);
    }

    #[test]
    fn neighbors_of_circular_is_predecessor_and_self() {
        // ring edges i -> (i + 1) mod n, so agent 1 hears only agent 0 and itself
        let g = crate::scenarios::circular(3).unwrap();
        assert_eq!(g.neighbors(1), vec![0, 1]);
    }

    #[test]
    fn neighbors_of_unrelenting_influencer_is_only_itself() {
        let g = crate::scenarios::unrelenting(4).unwrap();
        assert_eq!(g.neighbors(0), vec![0]);
    }

    #[test]
    fn bin_index_boundary_conventions() {
        let d5 = Discretization::equal_bins(5).unwrap();
        assert_eq!(d5.bin_index(0.2).unwrap(), 1);
        assert_eq!(d5.bin_index(1.0).unwrap(), 4);
        assert_eq!(d5.bin_index(0.0).unwrap(), 0);
        let d2 = Discretization::from_boundaries(vec![0.0, 0.5, 1.0]).unwrap();
        assert_eq!(d2.bin_index(0.5).unwrap(), 1);
        assert!(d5.bin_index(1.1).is_err());
        assert!(d5.bin_index(-0.1).is_err());
        assert!(d5.bin_index(f64::NAN).is_err());
    }

    #[test]
    fn discretization_rejects_bad_boundaries() {
        assert!(Discretization::from_boundaries(vec![0.0]).is_err());
        assert!(Discretization::from_boundaries(vec![0.1, 1.0]).is_err());
        assert!(Discretization::from_boundaries(vec![0.0, 0.9]).is_err());
        assert!(Discretization::from_boundaries(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(Discretization::equal_bins(0).is_err());
    }

    #[test]
    fn single_bin_discretization_is_allowed() {
        let d1 = Discretization::equal_bins(1).unwrap();
        assert_eq!(d1.k(), 1);
        assert!(d1.borderlines().is_empty());
        assert_eq!(d1.bin_index(0.7).unwrap(), 0);
    }

    #[test]
    fn distribution_of_tight_cluster_lands_in_one_bin() {
        let config = BeliefConfig::new(vec![0.45, 0.5, 0.55]).unwrap();
        let d5 = Discretization::equal_bins(5).unwrap();
        let dist = belief_distribution(&config, &d5);
        assert_eq!(dist.weights(), &[0.0, 0.0, 1.0, 0.0, 0.0]);
        for (got, want) in dist.values().iter().zip([0.1, 0.3, 0.5, 0.7, 0.9]) {
            assert_relative_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn distribution_of_symmetric_split() {
        let config = BeliefConfig::new(vec![0.1, 0.1, 0.9, 0.9]).unwrap();
        let d5 = Discretization::equal_bins(5).unwrap();
        let dist = belief_distribution(&config, &d5);
        assert_eq!(dist.weights(), &[0.5, 0.0, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn distribution_respects_half_open_bins() {
        // 0.4 < 0.5 <= 0.6 with bins [0, 0.5) and [0.5, 1]: three agents each
        let config = BeliefConfig::new(vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0]).unwrap();
        let d2 = Discretization::from_boundaries(vec![0.0, 0.5, 1.0]).unwrap();
        let dist = belief_distribution(&config, &d2);
        assert_eq!(dist.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn distribution_constructor_validates() {
        assert!(BeliefDistribution::new(vec![0.5, 0.5], vec![0.1, 0.1]).is_err());
        assert!(BeliefDistribution::new(vec![0.6, 0.6], vec![0.1, 0.9]).is_err());
        assert!(BeliefDistribution::new(vec![-0.5, 1.5], vec![0.1, 0.9]).is_err());
        assert!(BeliefDistribution::new(vec![0.5, 0.5], vec![0.1, 0.9]).is_ok());
    }
}
