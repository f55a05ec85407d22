//! Generators for the standard initial belief configurations and influence
//! topologies used throughout the experiments, plus named small examples.

use crate::error::{Error, Result};
use crate::model::{BeliefConfig, Discretization, InfluenceGraph};

/// Families of initial belief configurations over `n` agents.
#[derive(Debug, Clone, PartialEq)]
pub enum BeliefPreset {
    /// Beliefs equally spaced across `[0, 1]`: `i / (n - 1)`.
    Uniform,
    /// Two groups holding `[0.2, 0.4)` and `[0.6, 0.8)`.
    MildlyPolarized,
    /// Two groups holding `[0, 0.2)` and `[0.8, 1)`.
    ExtremelyPolarized,
    /// Three groups holding `[0, 0.2)`, `[0.4, 0.6)`, and `[0.8, 1)`.
    Tripolar,
    Explicit(Vec<f64>),
}

impl BeliefPreset {
    pub fn name(&self) -> &'static str {
        match self {
            BeliefPreset::Uniform => "uniform",
            BeliefPreset::MildlyPolarized => "mildly-polarized",
            BeliefPreset::ExtremelyPolarized => "extremely-polarized",
            BeliefPreset::Tripolar => "tripolar",
            BeliefPreset::Explicit(_) => "explicit",
        }
    }
}

/// Families of influence graphs over `n` agents. All non-self weights come
/// from the preset formula; diagonals are always 1.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphPreset {
    /// Every agent influences every other with the given weight.
    Clique(f64),
    /// Each agent influences only its successor on a ring, with the given
    /// weight.
    Circular(f64),
    /// Two 0.5-cliques with no influence between them.
    Disconnected,
    /// Two 0.5-cliques with weak (0.1) influence across the divide.
    Faint,
    /// Two agents (0 and n-1) strongly influence everyone (0.6) and are
    /// influenced by no one.
    Unrelenting,
    /// Like `Unrelenting`, but the influencers differ in strength (0.8 and
    /// 0.4) and everyone faintly influences them back (0.1).
    Malleable,
    Explicit(Vec<Vec<f64>>),
}

impl GraphPreset {
    pub fn name(&self) -> &'static str {
        match self {
            GraphPreset::Clique(_) => "clique",
            GraphPreset::Circular(_) => "circular",
            GraphPreset::Disconnected => "disconnected",
            GraphPreset::Faint => "faint",
            GraphPreset::Unrelenting => "unrelenting",
            GraphPreset::Malleable => "malleable",
            GraphPreset::Explicit(_) => "explicit",
        }
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Evaluates the preset formula for `n` agents.
pub fn initial_beliefs(preset: &BeliefPreset, n: usize) -> Result<BeliefConfig> {
    let require = |min: usize, name: &'static str| -> Result<()> {
        if n < min {
            Err(Error::TooFewAgents {
                preset: name,
                min,
                n,
            })
        } else {
            Ok(())
        }
    };
    let values: Vec<f64> = match preset {
        BeliefPreset::Uniform => {
            require(2, "uniform beliefs")?;
            (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
        }
        BeliefPreset::MildlyPolarized => {
            require(2, "mildly polarized beliefs")?;
            let half = ceil_div(n, 2);
            (0..n)
                .map(|i| {
                    if i < half {
                        0.2 * i as f64 / half as f64 + 0.2
                    } else {
                        0.2 * (i - half) as f64 / (n - half) as f64 + 0.6
                    }
                })
                .collect()
        }
        BeliefPreset::ExtremelyPolarized => {
            require(2, "extremely polarized beliefs")?;
            let half = ceil_div(n, 2);
            (0..n)
                .map(|i| {
                    if i < half {
                        0.2 * i as f64 / half as f64
                    } else {
                        0.2 * (i - half) as f64 / (n - half) as f64 + 0.8
                    }
                })
                .collect()
        }
        BeliefPreset::Tripolar => {
            require(3, "tripolar beliefs")?;
            let first = n / 3;
            let second = ceil_div(2 * n, 3);
            (0..n)
                .map(|i| {
                    if i < first {
                        0.2 * i as f64 / first as f64
                    } else if i < second {
                        0.2 * (i - first) as f64 / (second - first) as f64 + 0.4
                    } else {
                        0.2 * (i - second) as f64 / (n - second) as f64 + 0.8
                    }
                })
                .collect()
        }
        BeliefPreset::Explicit(values) => values.clone(),
    };
    if let BeliefPreset::Explicit(_) = preset {
        if values.len() != n {
            return Err(Error::InvalidArgument(format!(
                "explicit beliefs have length {}, expected n = {n}",
                values.len()
            )));
        }
    }
    BeliefConfig::new(values)
}

/// Evaluates the preset formula for `n` agents. Piecewise clauses are applied
/// in listed order with the first match winning, which resolves the
/// overlapping cases (influencer columns beat influencer rows).
pub fn influence_graph(preset: &GraphPreset, n: usize) -> Result<InfluenceGraph> {
    let require = |min: usize, name: &'static str| -> Result<()> {
        if n < min {
            Err(Error::TooFewAgents {
                preset: name,
                min,
                n,
            })
        } else {
            Ok(())
        }
    };
    match preset {
        GraphPreset::Clique(c) => {
            require(2, "clique graph")?;
            InfluenceGraph::from_fn(n, |_, _| *c)
        }
        GraphPreset::Circular(w) => {
            require(2, "circular graph")?;
            InfluenceGraph::from_fn(n, |i, j| if (i + 1) % n == j { *w } else { 0.0 })
        }
        GraphPreset::Disconnected => {
            require(2, "disconnected graph")?;
            let half = ceil_div(n, 2);
            InfluenceGraph::from_fn(n, |i, j| if (i < half) == (j < half) { 0.5 } else { 0.0 })
        }
        GraphPreset::Faint => {
            require(2, "faint graph")?;
            let half = ceil_div(n, 2);
            InfluenceGraph::from_fn(n, |i, j| if (i < half) == (j < half) { 0.5 } else { 0.1 })
        }
        GraphPreset::Unrelenting => {
            require(3, "unrelenting graph")?;
            let last = n - 1;
            InfluenceGraph::from_fn(n, |i, j| {
                if (i == 0 && j != last) || (i == last && j != 0) {
                    0.6
                } else if j == 0 || j == last {
                    0.0
                } else {
                    0.1
                }
            })
        }
        GraphPreset::Malleable => {
            require(3, "malleable graph")?;
            let last = n - 1;
            InfluenceGraph::from_fn(n, |i, j| {
                if i == 0 && j != last {
                    0.8
                } else if i == last && j != 0 {
                    0.4
                } else {
                    // remaining clauses all give faint influence
                    0.1
                }
            })
        }
        GraphPreset::Explicit(rows) => {
            if rows.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "explicit matrix has {} rows, expected n = {n}",
                    rows.len()
                )));
            }
            InfluenceGraph::from_rows(rows.clone())
        }
    }
}

/// `0.5`-weighted all-to-all influence.
pub fn clique(n: usize, c: f64) -> Result<InfluenceGraph> {
    influence_graph(&GraphPreset::Clique(c), n)
}

/// Single directed ring with weight 0.5.
pub fn circular(n: usize) -> Result<InfluenceGraph> {
    influence_graph(&GraphPreset::Circular(0.5), n)
}

pub fn disconnected(n: usize) -> Result<InfluenceGraph> {
    influence_graph(&GraphPreset::Disconnected, n)
}

pub fn faint(n: usize) -> Result<InfluenceGraph> {
    influence_graph(&GraphPreset::Faint, n)
}

pub fn unrelenting(n: usize) -> Result<InfluenceGraph> {
    influence_graph(&GraphPreset::Unrelenting, n)
}

pub fn malleable(n: usize) -> Result<InfluenceGraph> {
    influence_graph(&GraphPreset::Malleable, n)
}

/// A small example with fixed beliefs and discretizations.
#[derive(Debug, Clone)]
pub struct NamedExample {
    pub name: &'static str,
    pub beliefs: BeliefConfig,
    pub discretizations: Vec<Discretization>,
    /// Context for the caller, e.g. that the influence weights are not part
    /// of the example and must be supplied.
    pub notes: &'static str,
}

/// Looks up a named six-agent example.
///
/// `vaccine`: a sharply split society (beliefs 0, 1/15, 2/15, 0.8, 13/15,
/// 14/15) analyzed with five equal bins. `borderline`: evenly spaced beliefs
/// whose average sits exactly on the two-bin boundary, carried with both the
/// two- and three-bin discretizations.
pub fn named_example(name: &str) -> Result<NamedExample> {
    match name {
        "vaccine" => Ok(NamedExample {
            name: "vaccine",
            beliefs: BeliefConfig::new(vec![
                0.0,
                1.0 / 15.0,
                2.0 / 15.0,
                0.8,
                13.0 / 15.0,
                14.0 / 15.0,
            ])?,
            discretizations: vec![Discretization::equal_bins(5)?],
            notes: "influence weights are not part of this example; supply an \
                    explicit matrix to simulate it",
        }),
        "borderline" => Ok(NamedExample {
            name: "borderline",
            beliefs: BeliefConfig::new(vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0])?,
            discretizations: vec![
                Discretization::from_boundaries(vec![0.0, 0.5, 1.0])?,
                Discretization::from_boundaries(vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])?,
            ],
            notes: "beliefs average exactly 0.5: polarization persists with 2 \
                    bins but vanishes with 3; any balanced regular graph, e.g. \
                    a 0.5-clique, reproduces the effect",
        }),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use approx::assert_relative_eq;

    #[test]
    fn uniform_beliefs_are_equally_spaced() {
        let config = initial_beliefs(&BeliefPreset::Uniform, 5).unwrap();
        assert_eq!(config.values(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn mildly_polarized_small_case() {
        let config = initial_beliefs(&BeliefPreset::MildlyPolarized, 4).unwrap();
        let want = [0.2, 0.3, 0.6, 0.7];
        for (got, want) in config.values().iter().zip(want) {
            assert_relative_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn tripolar_small_case() {
        let config = initial_beliefs(&BeliefPreset::Tripolar, 6).unwrap();
        let want = [0.0, 0.1, 0.4, 0.5, 0.8, 0.9];
        for (got, want) in config.values().iter().zip(want) {
            assert_relative_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn preset_size_preconditions() {
        assert!(initial_beliefs(&BeliefPreset::Uniform, 1).is_err());
        assert!(initial_beliefs(&BeliefPreset::Tripolar, 2).is_err());
        assert!(initial_beliefs(&BeliefPreset::Tripolar, 3).is_ok());
        assert!(influence_graph(&GraphPreset::Unrelenting, 2).is_err());
        assert!(influence_graph(&GraphPreset::Malleable, 2).is_err());
        assert!(influence_graph(&GraphPreset::Clique(0.5), 1).is_err());
    }

    #[test]
    fn uniform_mean_is_half() {
        for n in [2, 3, 7, 100, 1001] {
            let config = initial_beliefs(&BeliefPreset::Uniform, n).unwrap();
            assert_relative_eq!(config.mean(), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn circular_edges() {
        let g = circular(3).unwrap();
        let mut positive = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j && g.weight(i, j) > 0.0 {
                    positive.push((i, j, g.weight(i, j)));
                }
            }
        }
        assert_eq!(positive, vec![(0, 1, 0.5), (1, 2, 0.5), (2, 0, 0.5)]);
    }

    #[test]
    fn unrelenting_matrix_small_case() {
        let g = unrelenting(4).unwrap();
        // influencers reach the interior with 0.6
        assert_eq!(g.weight(0, 1), 0.6);
        assert_eq!(g.weight(0, 2), 0.6);
        assert_eq!(g.weight(3, 1), 0.6);
        assert_eq!(g.weight(3, 2), 0.6);
        // nothing reaches the influencers, including each other
        for j in [0usize, 3] {
            for i in 0..4 {
                if i != j {
                    assert_eq!(g.weight(i, j), 0.0, "({i}, {j})");
                }
            }
        }
        // interior agents faintly influence each other
        assert_eq!(g.weight(1, 2), 0.1);
        assert_eq!(g.weight(2, 1), 0.1);
    }

    #[test]
    fn malleable_matrix_small_case() {
        let g = malleable(5).unwrap();
        assert_eq!(g.weight(0, 1), 0.8);
        assert_eq!(g.weight(0, 4), 0.1); // influencer column clause wins
        assert_eq!(g.weight(4, 1), 0.4);
        assert_eq!(g.weight(4, 0), 0.1);
        assert_eq!(g.weight(1, 0), 0.1);
        assert_eq!(g.weight(1, 2), 0.1);
    }

    #[test]
    fn disconnected_splits_at_half() {
        let g = disconnected(4).unwrap();
        for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            assert_eq!(g.weight(i, j), 0.5);
        }
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (3, 1)] {
            assert_eq!(g.weight(i, j), 0.0);
        }
    }

    #[test]
    fn preset_classifications_match_their_descriptions() {
        let tol = graph::DEFAULT_BALANCE_TOL;
        let g = clique(10, 0.5).unwrap();
        assert!(graph::is_reciprocal(&g));
        assert!(graph::is_regular(&g));
        assert!(graph::is_balanced(&g, tol));
        assert!(graph::is_strongly_connected(&g));

        let g = circular(12).unwrap();
        assert!(!graph::is_reciprocal(&g));
        assert!(graph::is_regular(&g));
        assert!(graph::is_balanced(&g, tol));
        assert!(graph::is_strongly_connected(&g));

        let g = disconnected(10).unwrap();
        assert!(graph::is_balanced(&g, tol));
        assert!(!graph::is_weakly_connected(&g));

        let g = faint(10).unwrap();
        assert!(graph::is_reciprocal(&g));
        assert!(graph::is_weakly_connected(&g));
        assert!(graph::is_strongly_connected(&g));

        let g = unrelenting(10).unwrap();
        assert!(!graph::is_balanced(&g, tol));
        assert!(!graph::is_strongly_connected(&g));
        assert!(graph::is_weakly_connected(&g));

        // the malleable influencers hear everyone faintly, so unlike the
        // unrelenting ones they sit inside one strongly connected component
        let g = malleable(10).unwrap();
        assert!(!graph::is_balanced(&g, tol));
        assert!(!graph::is_reciprocal(&g));
        assert!(graph::is_strongly_connected(&g));
    }

    #[test]
    fn named_examples() {
        let vaccine = named_example("vaccine").unwrap();
        assert_eq!(vaccine.beliefs.n(), 6);
        assert_eq!(vaccine.beliefs.values()[1], 1.0 / 15.0);
        assert_eq!(vaccine.beliefs.values()[5], 14.0 / 15.0);
        assert_eq!(vaccine.discretizations.len(), 1);
        assert_relative_eq!(vaccine.beliefs.mean(), 7.0 / 15.0, epsilon = 1e-15);

        let borderline = named_example("borderline").unwrap();
        assert_eq!(borderline.beliefs.values(), &[0.0, 0.2, 0.4, 0.6, 0.8, 1.0]);
        assert_eq!(borderline.discretizations.len(), 2);
        assert_eq!(borderline.discretizations[0].k(), 2);
        assert_eq!(borderline.discretizations[1].k(), 3);

        assert!(matches!(
            named_example("foo"),
            Err(Error::UnknownExample(_))
        ));
    }

    #[test]
    fn explicit_presets_validate_length() {
        assert!(initial_beliefs(&BeliefPreset::Explicit(vec![0.1, 0.2]), 3).is_err());
        assert!(initial_beliefs(&BeliefPreset::Explicit(vec![0.1, 0.2, 0.3]), 3).is_ok());
        let rows = vec![vec![1.0, 0.2], vec![0.3, 1.0]];
        assert!(influence_graph(&GraphPreset::Explicit(rows.clone()), 3).is_err());
        assert!(influence_graph(&GraphPreset::Explicit(rows), 2).is_ok());
    }
}
