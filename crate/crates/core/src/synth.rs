//! Synthetic measurements drawn from normal distributions.
//!
//! Draws come from `rand_distr::Normal` fed by ChaCha8 (`rand_chacha`) seeded
//! with `seed_from_u64`. Objects are sampled in list order, each drawing its
//! `m` values before the next object starts, so a port that uses the same
//! generator and sampler reproduces the values bit for bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Dataset, MeasurementSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthObject {
    pub id: String,
    pub mu: f64,
    pub sigma: f64,
    /// Number of values to draw.
    pub m: usize,
}

/// Synth spec file shape: `{"objects": [{"id", "mu", "sigma", "m"}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub objects: Vec<SynthObject>,
}

impl SynthSpec {
    /// Four objects, 15 values each: means 0.30, 0.31, 0.32, 0.43 and standard
    /// deviations 0.005, 0.030, 0.005, 0.01.
    pub fn four_variants() -> SynthSpec {
        let mu = [0.30, 0.31, 0.32, 0.43];
        let sigma = [0.005, 0.030, 0.005, 0.01];
        SynthSpec {
            objects: (0..4)
                .map(|i| SynthObject {
                    id: format!("t{i}"),
                    mu: mu[i],
                    sigma: sigma[i],
                    m: 15,
                })
                .collect(),
        }
    }
}

pub fn generate(spec: &SynthSpec, seed: u64) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = spec
        .objects
        .iter()
        .map(|o| {
            if !(o.sigma >= 0.0 && o.sigma.is_finite()) {
                return Err(Error::InvalidMeasurements(format!(
                    "`{}`: sigma must be finite and non-negative",
                    o.id
                )));
            }
            let normal = Normal::new(o.mu, o.sigma)
                .map_err(|e| Error::InvalidMeasurements(format!("`{}`: {e}", o.id)))?;
            let values = (0..o.m).map(|_| normal.sample(&mut rng)).collect();
            MeasurementSet::new(o.id.clone(), values)
        })
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(sets)
}
