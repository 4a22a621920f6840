use super::{random_nonempty_coalition, Estimator, SamplerConfig};
use crate::exact::weights::{member_weight, neighbour_weight};
use crate::{CharacteristicFunction, Coalition, CompensatedSum, Graph, Method, Result, RngStream};

/// Signed per-node terms for one sampled coalition `C`, before the
/// `(2^n - 1) / m` scale.
///
/// Disconnected coalitions contribute nothing and are never evaluated. For a
/// connected `C`, members receive `(|C|-1)!|N(C)|!/(|C|+|N(C)|)! v(C)` and
/// neighbours `-|C|!(|N(C)|-1)!/(|C|+|N(C)|)! v(C)`. Returns whether `C` was
/// connected.
pub fn connected_kernel<F, E>(graph: &Graph, game: &F, c: Coalition, mut emit: E) -> bool
where
    F: CharacteristicFunction + ?Sized,
    E: FnMut(usize, f64),
{
    if !graph.is_connected(c) {
        return false;
    }
    let boundary = graph.neighbors(c);
    let value = game.value(c);
    let (size, rim) = (c.len(), boundary.len());
    let credit = member_weight(size, rim) * value;
    for v in c.iter() {
        emit(v, credit);
    }
    if rim > 0 {
        let charge = neighbour_weight(size, rim) * value;
        for v in boundary.iter() {
            emit(v, -charge);
        }
    }
    true
}

/// Uniform nonempty coalition sampling; uses the unrestricted game only.
pub struct ConnectedSampler<'g, F> {
    graph: &'g Graph,
    game: F,
    rng: RngStream,
    sums: Vec<CompensatedSum>,
    drawn: u64,
}

impl<'g, F: CharacteristicFunction> ConnectedSampler<'g, F> {
    pub fn new(graph: &'g Graph, game: F, cfg: &SamplerConfig) -> Result<Self> {
        graph.check_players(game.players())?;
        Ok(ConnectedSampler {
            graph,
            game,
            rng: RngStream::new(cfg.seed),
            sums: vec![CompensatedSum::new(); graph.node_count()],
            drawn: 0,
        })
    }

    /// Number of nonempty coalitions, `2^n - 1`.
    fn population(&self) -> f64 {
        Coalition::full(self.graph.node_count()).bits() as f64
    }
}

impl<F: CharacteristicFunction> Estimator for ConnectedSampler<'_, F> {
    fn advance(&mut self, samples: u64) {
        let n = self.graph.node_count();
        for _ in 0..samples {
            let c = random_nonempty_coalition(n, &mut self.rng);
            let sums = &mut self.sums;
            connected_kernel(self.graph, &self.game, c, |v, term| sums[v].add(term));
        }
        self.drawn += samples;
    }

    fn samples(&self) -> u64 {
        self.drawn
    }

    fn estimate(&self) -> Vec<f64> {
        if self.drawn == 0 {
            return vec![0.0; self.sums.len()];
        }
        let scale = self.population() / self.drawn as f64;
        self.sums.iter().map(|s| scale * s.value()).collect()
    }

    fn method(&self) -> Method {
        Method::Connected
    }
}
