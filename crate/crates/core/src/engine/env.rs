use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};

use crate::error::{Error, Result};
use crate::model::{Instance, ItemDistribution};

/// Stream carrying the algorithm's own observations.
pub const OBSERVED_STREAM: u64 = 0;
/// Independent stream for rewards of the optimal solution's unpulled items.
pub const REFERENCE_STREAM: u64 = 1;

#[derive(Clone, Debug)]
enum Sampler {
    Beta(Beta<f64>),
    Bernoulli(f64),
    Point(f64),
}

/// Semi-bandit reward source: draws rewards only for the items asked for.
#[derive(Clone, Debug)]
pub struct Environment {
    samplers: Vec<Sampler>,
    rng: ChaCha8Rng,
}

/// Mixes a master seed and a run index into a per-run seed.
pub fn run_seed(master_seed: u64, run_index: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix(master_seed ^ splitmix(run_index))
}

impl Environment {
    pub fn new(instance: &Instance, seed: u64, stream: u64) -> Result<Self> {
        let mut samplers = Vec::with_capacity(instance.num_items());
        for (i, it) in instance.items().iter().enumerate() {
            samplers.push(match it.distribution {
                ItemDistribution::Beta { alpha, beta } => Sampler::Beta(
                    Beta::new(alpha, beta)
                        .map_err(|e| Error::InvalidInstance(format!("item {}: {e}", i + 1)))?,
                ),
                ItemDistribution::Bernoulli { p } => Sampler::Bernoulli(p),
                ItemDistribution::PointMass { value } => Sampler::Point(value),
                ItemDistribution::Moments => {
                    return Err(Error::InvalidInstance(
                        "instance only carries moments and cannot be simulated".into(),
                    ))
                }
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Ok(Environment { samplers, rng })
    }

    /// One reward of item `i`, in [0, 1].
    #[inline]
    pub fn sample(&mut self, i: usize) -> f64 {
        match &self.samplers[i] {
            Sampler::Beta(b) => {
                let x = b.sample(&mut self.rng);
                if x.is_nan() {
                    0.0
                } else {
                    x.clamp(0.0, 1.0)
                }
            }
            Sampler::Bernoulli(p) => {
                if self.rng.random::<f64>() < *p {
                    1.0
                } else {
                    0.0
                }
            }
            Sampler::Point(v) => *v,
        }
    }
}

/// The observed and reference environments of one run.
#[derive(Clone, Debug)]
pub struct Environments {
    pub observed: Environment,
    pub reference: Environment,
}

impl Environments {
    pub fn new(instance: &Instance, seed: u64) -> Result<Self> {
        Ok(Environments {
            observed: Environment::new(instance, seed, OBSERVED_STREAM)?,
            reference: Environment::new(instance, seed, REFERENCE_STREAM)?,
        })
    }
}
