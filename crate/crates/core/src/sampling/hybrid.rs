use std::ops::RangeInclusive;

use super::permutation::SwapSampler;
use super::{Estimator, SamplerConfig};
use crate::coalition::subsets_of_size;
use crate::exact::weights::shapley_weight;
use crate::game::restrict;
use crate::{CharacteristicFunction, Coalition, CompensatedSum, Graph, Method, Result};

/// Split of preceding-set sizes `0..n` between exact computation and sampling
/// for a given number of exact levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HybridPlan {
    n: usize,
    exact_levels: usize,
}

impl HybridPlan {
    pub fn new(n: usize, exact_levels: usize) -> Self {
        HybridPlan { n, exact_levels }
    }

    pub fn exact_levels(&self) -> usize {
        self.exact_levels
    }

    /// Number of sampled sizes, `n - 2Ex - 2`, floored at zero.
    pub fn sampled_count(&self) -> usize {
        self.n.saturating_sub(2 * self.exact_levels + 2)
    }

    /// True when no size is left to sampling.
    pub fn full_exact(&self) -> bool {
        self.sampled_count() == 0
    }

    /// Sizes drawn by the sampler, `Ex+1 ..= n-Ex-2`. Empty when full-exact.
    pub fn sampled_sizes(&self) -> RangeInclusive<usize> {
        if self.full_exact() {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        self.exact_levels + 1..=self.n - self.exact_levels - 2
    }

    /// Scale applied to the sampled mean: the share of sizes that are sampled.
    pub fn scale(&self) -> f64 {
        self.sampled_count() as f64 / self.n as f64
    }

    /// True if preceding-set size `k` is handled exactly.
    pub fn is_exact_size(&self, k: usize) -> bool {
        !self.sampled_sizes().contains(&k)
    }
}

/// Exactly computed share of the Shapley value of `game` over the
/// preceding-set sizes the plan does not sample.
///
/// For every coalition `C` with `|C| <= Ex`, each outsider `v` receives its
/// contribution to `C`, and each member `v` of the complement `D = V \ C`
/// receives its contribution to `D \ {v}`. A complement size already covered
/// by the forward pass is skipped, so every size is counted once.
pub fn hybrid_exact_part<F: CharacteristicFunction + ?Sized>(game: &F, plan: &HybridPlan) -> Vec<f64> {
    let n = game.players();
    let full = Coalition::full(n);
    let mut acc = vec![CompensatedSum::new(); n];
    for k in 0..=plan.exact_levels.min(n - 1) {
        let forward = shapley_weight(n, k);
        let mirrored = n - k - 1;
        let backward = (mirrored > plan.exact_levels).then(|| shapley_weight(n, mirrored));
        for c in subsets_of_size(n, k) {
            let value = game.value(c);
            for v in (full - c).iter() {
                acc[v].add(forward * (game.value(c.with(v)) - value));
            }
            if let Some(weight) = backward {
                let d = full - c;
                let value = game.value(d);
                for v in d.iter() {
                    acc[v].add(weight * (value - game.value(d.without(v))));
                }
            }
        }
    }
    acc.iter().map(CompensatedSum::value).collect()
}

/// Hybrid estimator: exact extremes plus scaled swap sampling of the middle.
pub struct HybridSampler<'g, F> {
    plan: HybridPlan,
    exact: Vec<f64>,
    sampler: Option<SwapSampler<'g, F>>,
}

impl<'g, F: CharacteristicFunction> HybridSampler<'g, F> {
    /// Computes the exact part eagerly.
    pub fn new(graph: &'g Graph, game: F, cfg: &SamplerConfig) -> Result<Self> {
        let n = graph.node_count();
        let plan = HybridPlan::new(n, cfg.exact_levels);
        if plan.full_exact() {
            let restricted = restrict(graph, &game)?;
            let exact = hybrid_exact_part(&restricted, &plan);
            return Ok(HybridSampler {
                plan,
                exact,
                sampler: None,
            });
        }
        let sampler = SwapSampler::new(graph, game, plan.sampled_sizes(), cfg)?;
        let exact = hybrid_exact_part(sampler.game(), &plan);
        Ok(HybridSampler {
            plan,
            exact,
            sampler: Some(sampler),
        })
    }

    pub fn plan(&self) -> &HybridPlan {
        &self.plan
    }
}

impl<F: CharacteristicFunction> Estimator for HybridSampler<'_, F> {
    /// No-op when the plan is full-exact.
    fn advance(&mut self, samples: u64) {
        if let Some(sampler) = &mut self.sampler {
            sampler.advance(samples);
        }
    }

    fn samples(&self) -> u64 {
        self.sampler.as_ref().map_or(0, SwapSampler::samples)
    }

    fn estimate(&self) -> Vec<f64> {
        match &self.sampler {
            None => self.exact.clone(),
            Some(sampler) => {
                let scale = self.plan.scale();
                self.exact
                    .iter()
                    .zip(sampler.means())
                    .map(|(exact, mean)| exact + scale * mean)
                    .collect()
            }
        }
    }

    fn method(&self) -> Method {
        Method::Hybrid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{myerson_exact_subsets, weights::binomial};
    use crate::game::SizeGame;
    use crate::sampling::{approx_hybrid, permutation_kernel, SWAP_NODE};
    use crate::{GameKind, GameSpec, GraphModel};
    use std::collections::BTreeSet;
    use std::sync::Mutex;

    #[test]
    fn plan_partitions_sizes() {
        for n in 1..=20 {
            for ex in 0..=n {
                let plan = HybridPlan::new(n, ex);
                let sampled: Vec<usize> = plan.sampled_sizes().collect();
                assert_eq!(sampled.len(), plan.sampled_count());
                assert_eq!(plan.full_exact(), 2 * ex + 2 >= n);
                assert_eq!(plan.full_exact(), ex >= n.saturating_sub(2).div_ceil(2));
                for k in 0..n {
                    assert_eq!(plan.is_exact_size(k), k <= ex || k >= n.saturating_sub(ex + 1));
                }
            }
        }
    }

    /// Records the coalition sizes the exact part evaluates.
    struct Probe {
        n: usize,
        sizes: Mutex<BTreeSet<usize>>,
    }

    impl CharacteristicFunction for Probe {
        fn players(&self) -> usize {
            self.n
        }

        fn value(&self, c: Coalition) -> f64 {
            self.sizes.lock().unwrap().insert(c.len());
            c.len() as f64
        }
    }

    #[test]
    fn zero_levels_touch_only_empty_and_almost_grand() {
        let probe = Probe {
            n: 5,
            sizes: Mutex::new(BTreeSet::new()),
        };
        hybrid_exact_part(&probe, &HybridPlan::new(5, 0));
        // contributions to {} (sizes 0, 1) and to V \ {v} (sizes 4, 5)
        assert_eq!(*probe.sizes.lock().unwrap(), BTreeSet::from([0, 1, 4, 5]));
    }

    #[test]
    fn full_exact_matches_subset_engine() {
        for n in 1..=10 {
            let g = GraphModel::ErdosRenyi { n, edge_prob: 0.4 }.generate(n as u64).unwrap();
            let game = GameSpec::new(GameKind::Uniform, n, 3).generate().unwrap();
            let exact = myerson_exact_subsets(&g, &game).unwrap();
            let ex = n.saturating_sub(2).div_ceil(2);
            for levels in [ex, ex + 1, n + 3] {
                let cfg = SamplerConfig::new(0, 0).with_exact_levels(levels);
                let got = approx_hybrid(&g, &game, &cfg).unwrap();
                assert_eq!(got.samples, 0);
                for (a, b) in got.values.iter().zip(&exact.values) {
                    assert!((a - b).abs() < 1e-9, "n={n} levels={levels}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn path_of_three_needs_no_samples() {
        let g = Graph::path(3).unwrap();
        let squares = SizeGame::new(3, 2.0).unwrap();
        // Ex = 0 still samples size 1 when n = 3
        assert!(approx_hybrid(&g, &squares, &SamplerConfig::new(0, 0)).is_err());
        let cfg = SamplerConfig::new(0, 0).with_exact_levels(1);
        let got = approx_hybrid(&g, &squares, &cfg).unwrap();
        assert_eq!(got.samples, 0);
        for (a, b) in got.values.iter().zip([8.0 / 3.0, 11.0 / 3.0, 8.0 / 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_plan_requires_samples() {
        let g = Graph::path(6).unwrap();
        let squares = SizeGame::new(6, 2.0).unwrap();
        assert!(approx_hybrid(&g, &squares, &SamplerConfig::new(0, 0)).is_err());
        assert!(approx_hybrid(&g, &squares, &SamplerConfig::new(10, 0)).is_ok());
    }

    #[test]
    fn expectation_by_exhaustion() {
        for seed in 0..6 {
            let n = 6;
            let g = GraphModel::BarabasiAlbert { n, m0: 2, m: 1 }.generate(seed).unwrap();
            let game = GameSpec::new(GameKind::Submodular, n, seed).generate().unwrap();
            let exact = myerson_exact_subsets(&g, &game).unwrap();
            let r = restrict(&g, &game).unwrap();
            for ex in 0..=1 {
                let plan = HybridPlan::new(n, ex);
                let mut expected = hybrid_exact_part(&r, &plan);
                let sizes = plan.sampled_count() as f64;
                for mask in 0..1u64 << n {
                    let s = Coalition::from_bits(mask);
                    if s.contains(SWAP_NODE) || !plan.sampled_sizes().contains(&s.len()) {
                        continue;
                    }
                    let p = plan.scale() / (sizes * binomial(n - 1, s.len()));
                    permutation_kernel(&r, SWAP_NODE, s, |v, mc| expected[v] += p * mc);
                }
                for (a, b) in expected.iter().zip(&exact.values) {
                    assert!((a - b).abs() < 1e-9);
                }
            }
        }
    }
}
