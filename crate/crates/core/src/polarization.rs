//! The Esteban–Ray polarization measure and its lift from belief
//! configurations to bin distributions.
//!
//! The measure rewards societies split into few large, mutually distant
//! opinion clusters: for a distribution `(pi, y)` it sums
//! `K * pi_i^(1+alpha) * pi_j * |y_i - y_j|` over all ordered pairs of bins.

use crate::error::{Error, Result};
use crate::model::{belief_distribution, BeliefConfig, BeliefDistribution, Discretization};

/// Scale constant `K > 0` and polarization sensitivity `alpha` in `(0, 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationParams {
    k: f64,
    alpha: f64,
}

impl PolarizationParams {
    pub fn new(k: f64, alpha: f64) -> Result<Self> {
        if !(k > 0.0) || !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::BadPolarizationParams { k, alpha });
        }
        Ok(Self { k, alpha })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Default for PolarizationParams {
    /// `K = 1000`, `alpha = 1.6`.
    fn default() -> Self {
        Self {
            k: 1000.0,
            alpha: 1.6,
        }
    }
}

/// Esteban–Ray polarization of a discrete distribution.
///
/// Evaluates the full double sum over ordered bin pairs; the two ordered terms
/// of a pair differ in general because the exponent `1 + alpha` applies to the
/// first weight only.
pub fn esteban_ray(dist: &BeliefDistribution, params: &PolarizationParams) -> f64 {
    let exponent = 1.0 + params.alpha;
    let weights = dist.weights();
    let values = dist.values();
    let mut total = 0.0;
    for i in 0..dist.len() {
        let wi = weights[i].powf(exponent);
        if wi == 0.0 {
            continue;
        }
        for j in 0..dist.len() {
            total += wi * weights[j] * (values[i] - values[j]).abs();
        }
    }
    params.k * total
}

/// Polarization of a belief configuration under a discretization: the
/// Esteban–Ray measure of its bin distribution.
pub fn kbin_polarization(
    config: &BeliefConfig,
    disc: &Discretization,
    params: &PolarizationParams,
) -> f64 {
    esteban_ray(&belief_distribution(config, disc), params)
}

/// True exactly when all beliefs fall in a single bin, which is the only way
/// the k-bin measure can be zero.
pub fn is_zero_polarization(config: &BeliefConfig, disc: &Discretization) -> bool {
    let first = disc
        .bin_index(config.values()[0])
        .expect("beliefs are in [0, 1]");
    config
        .values()
        .iter()
        .all(|&b| disc.bin_index(b).expect("beliefs are in [0, 1]") == first)
}
