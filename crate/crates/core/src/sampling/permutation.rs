use std::ops::RangeInclusive;

use rand::Rng;

use super::{random_coalition_of_size, Estimator, SamplerConfig, SizeLaw};
use crate::game::{restrict, Restricted};
use crate::{CharacteristicFunction, Coalition, CompensatedSum, Graph, Method, Result, RngStream};

/// The node left out of every sampled coalition and swapped in for members.
pub const SWAP_NODE: usize = 0;

/// Marginal contributions of every node for one draw `S ⊆ V \ {swap}`.
///
/// Node `v` contributes to `S` with `v` and `swap` exchanged when `v ∈ S`, and
/// to `S` itself otherwise, so each node sees a uniform coalition of size
/// `|S|` that excludes it. Costs `n + 1` evaluations of `game`.
pub fn permutation_kernel<F, E>(game: &F, swap: usize, drawn: Coalition, mut emit: E)
where
    F: CharacteristicFunction + ?Sized,
    E: FnMut(usize, f64),
{
    debug_assert!(!drawn.contains(swap));
    let base = game.value(drawn);
    let with_swap = game.value(drawn.with(swap));
    for v in 0..game.players() {
        let mc = if v == swap {
            with_swap - base
        } else if drawn.contains(v) {
            with_swap - game.value(drawn.without(v).with(swap))
        } else {
            game.value(drawn.with(v)) - base
        };
        emit(v, mc);
    }
}

/// [`permutation_kernel`] on the restriction of `game` to `graph`, computed from
/// one component decomposition of `drawn` instead of `n + 1` independent ones.
///
/// An outsider's contribution only involves the components it touches; a
/// member swapped out of `S ∪ {swap}` only splits its own component.
pub fn restricted_swap_kernel<F, E>(graph: &Graph, game: &F, swap: usize, drawn: Coalition, mut emit: E)
where
    F: CharacteristicFunction + ?Sized,
    E: FnMut(usize, f64),
{
    debug_assert!(!drawn.contains(swap));
    let components: Vec<(Coalition, f64)> = graph
        .components_iter(drawn)
        .map(|k| (k, game.value(k)))
        .collect();
    // joining `v` to `S` merges `v` with every component it touches
    let join = |v: usize| {
        let reach = graph.adjacent(v);
        let mut merged = Coalition::singleton(v);
        let mut lost = 0.0;
        for &(k, value) in &components {
            if !k.is_disjoint(reach) {
                merged = merged | k;
                lost += value;
            }
        }
        (merged, game.value(merged) - lost)
    };
    let (swap_component, swap_gain) = join(swap);
    for v in 0..graph.node_count() {
        let mc = if v == swap {
            swap_gain
        } else if drawn.contains(v) {
            // v's component in S ∪ {swap}, minus what is left of it without v
            let own = if swap_component.contains(v) {
                (swap_component, game.value(swap_component))
            } else {
                *components.iter().find(|(k, _)| k.contains(v)).expect("v lies in some component")
            };
            let rest: f64 = graph.components_iter(own.0.without(v)).map(|k| game.value(k)).sum();
            own.1 - rest
        } else {
            join(v).1
        };
        emit(v, mc);
    }
}

/// Swap sampler over a range of preceding-set sizes; shared by the plain and
/// hybrid estimators.
pub(crate) struct SwapSampler<'g, F> {
    game: Restricted<'g, F>,
    sizes: RangeInclusive<usize>,
    size_law: SizeLaw,
    rng: RngStream,
    sums: Vec<CompensatedSum>,
    drawn: u64,
}

impl<'g, F: CharacteristicFunction> SwapSampler<'g, F> {
    pub(crate) fn new(
        graph: &'g Graph,
        game: F,
        sizes: RangeInclusive<usize>,
        cfg: &SamplerConfig,
    ) -> Result<Self> {
        let game = restrict(graph, game)?;
        Ok(SwapSampler {
            sums: vec![CompensatedSum::new(); graph.node_count()],
            game,
            sizes,
            size_law: cfg.size_law,
            rng: RngStream::new(cfg.seed),
            drawn: 0,
        })
    }

    pub(crate) fn game(&self) -> &Restricted<'g, F> {
        &self.game
    }

    pub(crate) fn advance(&mut self, samples: u64) {
        let n = self.game.players();
        for _ in 0..samples {
            let k = match self.size_law {
                SizeLaw::Uniform => self.rng.gen_range(self.sizes.clone()),
            };
            let drawn = random_coalition_of_size(n, k, SWAP_NODE, &mut self.rng)
                .expect("size range lies within 0..n");
            let sums = &mut self.sums;
            restricted_swap_kernel(self.game.graph(), self.game.inner(), SWAP_NODE, drawn, |v, mc| {
                sums[v].add(mc)
            });
        }
        self.drawn += samples;
    }

    pub(crate) fn samples(&self) -> u64 {
        self.drawn
    }

    /// Mean marginal contribution per node; zeros before the first draw.
    pub(crate) fn means(&self) -> Vec<f64> {
        if self.drawn == 0 {
            return vec![0.0; self.sums.len()];
        }
        let m = self.drawn as f64;
        self.sums.iter().map(|s| s.value() / m).collect()
    }
}

/// Plain permutation sampling.
pub struct PermutationSampler<'g, F> {
    inner: SwapSampler<'g, F>,
}

impl<'g, F: CharacteristicFunction> PermutationSampler<'g, F> {
    pub fn new(graph: &'g Graph, game: F, cfg: &SamplerConfig) -> Result<Self> {
        let n = graph.node_count();
        Ok(PermutationSampler {
            inner: SwapSampler::new(graph, game, 0..=n - 1, cfg)?,
        })
    }
}

impl<F: CharacteristicFunction> Estimator for PermutationSampler<'_, F> {
    fn advance(&mut self, samples: u64) {
        self.inner.advance(samples)
    }

    fn samples(&self) -> u64 {
        self.inner.samples()
    }

    fn estimate(&self) -> Vec<f64> {
        self.inner.means()
    }

    fn method(&self) -> Method {
        Method::Permutations
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{myerson_exact_subsets, weights::binomial};
    use crate::game::SizeGame;
    use crate::sampling::approx_permutations;
    use crate::{GameKind, GameSpec, GraphModel};

    fn set(nodes: &[usize]) -> Coalition {
        nodes.iter().copied().collect()
    }

    /// Expectation of the per-draw output: size uniform on `0..n`, coalition
    /// uniform among those of that size avoiding the swap node.
    fn expectation<F: CharacteristicFunction>(graph: &Graph, game: &F) -> Vec<f64> {
        let n = graph.node_count();
        let r = restrict(graph, game).unwrap();
        let mut out = vec![0.0; n];
        for mask in 0..1u64 << n {
            let s = Coalition::from_bits(mask);
            if s.contains(SWAP_NODE) {
                continue;
            }
            let p = 1.0 / (n as f64 * binomial(n - 1, s.len()));
            permutation_kernel(&r, SWAP_NODE, s, |v, mc| out[v] += p * mc);
        }
        out
    }

    #[test]
    fn swap_semantics_by_hand() {
        let g = Graph::path(3).unwrap();
        let squares = SizeGame::new(3, 2.0).unwrap();
        let r = restrict(&g, &squares).unwrap();
        let mut got = vec![0.0; 3];
        // S = {1}: node 0 adds to {1}; node 1 is swapped, adds to {0}; node 2 adds to {1}
        permutation_kernel(&r, 0, set(&[1]), |v, mc| got[v] = mc);
        assert_eq!(got, vec![4.0 - 1.0, 4.0 - 1.0, 4.0 - 1.0]);
        // S = {2}: node 0 adds to {2} (gap), node 1 adds to {2}, node 2 swapped adds to {0}
        permutation_kernel(&r, 0, set(&[2]), |v, mc| got[v] = mc);
        assert_eq!(got, vec![2.0 - 1.0, 4.0 - 1.0, 2.0 - 1.0]);
    }

    #[test]
    fn restricted_kernel_matches_generic_kernel() {
        for seed in 0..12 {
            let n = 3 + seed as usize % 7;
            let g = GraphModel::ErdosRenyi { n, edge_prob: 0.35 }.generate(seed).unwrap();
            let game = GameSpec::new(GameKind::Uniform, n, seed).generate().unwrap();
            let r = restrict(&g, &game).unwrap();
            for mask in 0..1u64 << n {
                let s = Coalition::from_bits(mask);
                for swap in 0..n {
                    if s.contains(swap) {
                        continue;
                    }
                    let mut want = vec![0.0; n];
                    permutation_kernel(&r, swap, s, |v, mc| want[v] = mc);
                    let mut got = vec![0.0; n];
                    restricted_swap_kernel(&g, &game, swap, s, |v, mc| got[v] = mc);
                    for (a, b) in got.iter().zip(&want) {
                        assert!((a - b).abs() < 1e-9, "{s} swap {swap}: {a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn triangle_expectation_is_exact() {
        let k3 = Graph::complete(3).unwrap();
        let squares = SizeGame::new(3, 2.0).unwrap();
        for (got, want) in expectation(&k3, &squares).iter().zip([3.0; 3]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_equals_myerson_value() {
        for seed in 0..8 {
            let g = GraphModel::ErdosRenyi { n: 6, edge_prob: 0.4 }.generate(seed).unwrap();
            let game = GameSpec::new(GameKind::Superadditive, 6, seed).generate().unwrap();
            let exact = myerson_exact_subsets(&g, &game).unwrap();
            for (a, b) in expectation(&g, &game).iter().zip(&exact.values) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn single_node_is_exact() {
        let g = Graph::new(1).unwrap();
        let game = GameSpec::new(GameKind::Uniform, 1, 9).generate().unwrap();
        let est = approx_permutations(&g, &game, &SamplerConfig::new(17, 1)).unwrap();
        assert_eq!(est.values, vec![game.value(Coalition::singleton(0))]);
        assert_eq!(est.samples, 17);
    }

    #[test]
    fn zero_samples_rejected() {
        let g = Graph::path(3).unwrap();
        let game = SizeGame::new(3, 2.0).unwrap();
        assert!(approx_permutations(&g, &game, &SamplerConfig::new(0, 1)).is_err());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let g = GraphModel::BarabasiAlbert { n: 12, m0: 2, m: 2 }.generate(1).unwrap();
        let game = GameSpec::new(GameKind::Uniform, 12, 1).generate().unwrap();
        let cfg = SamplerConfig::new(500, 77);
        let a = approx_permutations(&g, &game, &cfg).unwrap();
        let b = approx_permutations(&g, &game, &cfg).unwrap();
        assert_eq!(a.values, b.values);
    }
}
