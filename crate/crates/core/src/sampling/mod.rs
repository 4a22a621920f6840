//! Monte Carlo estimators of the Myerson value.
//!
//! * [`approx_permutations`] samples the set of players preceding each node in
//!   a random ordering, reusing one draw for every node by a swap.
//! * [`approx_hybrid`] computes the orderings where the node sits within
//!   `exact_levels` positions of either end exactly and samples the rest.
//! * [`approx_connected`] samples uniform nonempty coalitions and keeps only
//!   the connected ones, weighting by boundary size.
//!
//! The per-draw arithmetic of each estimator is exposed as a kernel so its
//! expectation can be checked by enumerating the sample space.

mod connected;
mod draw;
mod hybrid;
mod permutation;

pub use connected::{connected_kernel, ConnectedSampler};
pub use draw::{random_coalition_of_size, random_nonempty_coalition};
pub use hybrid::{hybrid_exact_part, HybridPlan, HybridSampler};
pub use permutation::{permutation_kernel, restricted_swap_kernel, PermutationSampler, SWAP_NODE};

use std::time::Instant;

use crate::{Allocation, CharacteristicFunction, Error, Graph, Method, Result};

/// Law of the preceding-coalition size in the swap samplers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SizeLaw {
    /// Every admissible size equally likely (Shapley weighting).
    #[default]
    Uniform,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    pub samples: u64,
    pub seed: u64,
    /// Hybrid only: preceding-set sizes `0..=Ex` and their mirror images are
    /// computed exactly.
    pub exact_levels: usize,
    pub size_law: SizeLaw,
}

impl SamplerConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        SamplerConfig {
            samples,
            seed,
            exact_levels: 0,
            size_law: SizeLaw::Uniform,
        }
    }

    pub fn with_exact_levels(mut self, exact_levels: usize) -> Self {
        self.exact_levels = exact_levels;
        self
    }
}

/// An incremental Monte Carlo estimate.
pub trait Estimator {
    /// Draws `samples` more samples.
    fn advance(&mut self, samples: u64);

    /// Samples drawn so far.
    fn samples(&self) -> u64;

    /// Current estimate, one value per node.
    fn estimate(&self) -> Vec<f64>;

    fn method(&self) -> Method;

    fn into_allocation(self, start: Instant) -> Allocation
    where
        Self: Sized,
    {
        let mut alloc = Allocation::new(self.estimate(), self.method());
        alloc.samples = self.samples();
        alloc.elapsed = start.elapsed();
        alloc
    }
}

fn require_samples(cfg: &SamplerConfig) -> Result<()> {
    if cfg.samples == 0 {
        return Err(Error::invalid("sample count must be at least 1"));
    }
    Ok(())
}

/// Permutation sampling on the restricted game.
pub fn approx_permutations<F: CharacteristicFunction>(
    graph: &Graph,
    game: &F,
    cfg: &SamplerConfig,
) -> Result<Allocation> {
    require_samples(cfg)?;
    let start = Instant::now();
    let mut sampler = PermutationSampler::new(graph, game, cfg)?;
    sampler.advance(cfg.samples);
    Ok(sampler.into_allocation(start))
}

/// Hybrid exact/sampled estimator. With `exact_levels >= ceil((n-2)/2)` the
/// whole value is computed exactly and no samples are drawn.
pub fn approx_hybrid<F: CharacteristicFunction>(
    graph: &Graph,
    game: &F,
    cfg: &SamplerConfig,
) -> Result<Allocation> {
    let start = Instant::now();
    let plan = HybridPlan::new(graph.node_count(), cfg.exact_levels);
    if !plan.full_exact() && cfg.samples == 0 {
        return Err(Error::invalid(format!(
            "exact levels {} leave sizes {:?} to sampling but the sample count is 0",
            cfg.exact_levels,
            plan.sampled_sizes()
        )));
    }
    let mut sampler = HybridSampler::new(graph, game, cfg)?;
    sampler.advance(cfg.samples);
    Ok(sampler.into_allocation(start))
}

/// Connected-coalition sampling on the raw game.
pub fn approx_connected<F: CharacteristicFunction>(
    graph: &Graph,
    game: &F,
    cfg: &SamplerConfig,
) -> Result<Allocation> {
    require_samples(cfg)?;
    let start = Instant::now();
    let mut sampler = ConnectedSampler::new(graph, game, cfg)?;
    sampler.advance(cfg.samples);
    Ok(sampler.into_allocation(start))
}
