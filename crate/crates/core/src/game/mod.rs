//! Characteristic functions and the graph restriction.

mod generate;
mod io;

pub use generate::{generate_game, GameKind, GameSpec, MAX_TABLE_PLAYERS};
pub use io::{load_game, load_table, store_table};

use crate::rng::{mix64, open_unit};
use crate::{Coalition, Error, Graph, Result, MAX_PLAYERS};

/// A cooperative game: a value for every coalition of `players()` players,
/// with the empty coalition worth zero.
///
/// Implementations must be pure: the same coalition always yields the same
/// value, regardless of call order or thread.
pub trait CharacteristicFunction: Sync {
    fn players(&self) -> usize;

    fn value(&self, coalition: Coalition) -> f64;
}

impl<T: CharacteristicFunction + ?Sized> CharacteristicFunction for &T {
    fn players(&self) -> usize {
        (**self).players()
    }

    #[inline]
    fn value(&self, coalition: Coalition) -> f64 {
        (**self).value(coalition)
    }
}

/// Concrete game backings produced by the generators and the table loader.
#[derive(Clone, Debug, PartialEq)]
pub enum Game {
    /// Materialized table indexed by coalition mask.
    Table(TableGame),
    /// `v(C) ~ U(0, |C|)`, drawn lazily from a per-coalition hash of the seed.
    Uniform(UniformGame),
    /// `v(C) = |C|^exponent`.
    Size(SizeGame),
}

impl CharacteristicFunction for Game {
    fn players(&self) -> usize {
        match self {
            Game::Table(t) => t.players(),
            Game::Uniform(u) => u.players(),
            Game::Size(s) => s.players(),
        }
    }

    #[inline]
    fn value(&self, coalition: Coalition) -> f64 {
        match self {
            Game::Table(t) => t.value(coalition),
            Game::Uniform(u) => u.value(coalition),
            Game::Size(s) => s.value(coalition),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableGame {
    n: usize,
    values: Vec<f64>,
}

impl TableGame {
    /// Takes ownership of `values[mask]` for every mask in `0..2^n`.
    /// `values[0]` is forced to zero.
    pub fn from_values(n: usize, mut values: Vec<f64>) -> Result<Self> {
        check_table_size(n)?;
        if values.len() != 1usize << n {
            return Err(Error::invalid(format!(
                "table for {n} players needs {} entries, got {}",
                1usize << n,
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite value at mask {bad:#x}")));
        }
        values[0] = 0.0;
        Ok(TableGame { n, values })
    }

    /// Evaluates `game` on all `2^n` coalitions.
    pub fn materialize<F: CharacteristicFunction + ?Sized>(game: &F) -> Result<Self> {
        let n = game.players();
        check_table_size(n)?;
        let values = (0..1u64 << n)
            .map(|mask| game.value(Coalition::from_bits(mask)))
            .collect();
        TableGame::from_values(n, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub(crate) fn check_table_size(n: usize) -> Result<()> {
    if n > MAX_TABLE_PLAYERS {
        return Err(Error::TooLarge {
            what: "a materialized game table",
            n,
            max: MAX_TABLE_PLAYERS,
        });
    }
    Ok(())
}

impl CharacteristicFunction for TableGame {
    fn players(&self) -> usize {
        self.n
    }

    #[inline]
    fn value(&self, coalition: Coalition) -> f64 {
        self.values[coalition.bits() as usize]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniformGame {
    n: usize,
    seed: u64,
}

const UNIFORM_SALT: u64 = 0x5EED_0001;

impl UniformGame {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        check_players(n)?;
        Ok(UniformGame { n, seed })
    }
}

impl CharacteristicFunction for UniformGame {
    fn players(&self) -> usize {
        self.n
    }

    #[inline]
    fn value(&self, coalition: Coalition) -> f64 {
        if coalition.is_empty() {
            return 0.0;
        }
        coalition.len() as f64 * coalition_unit(self.seed, UNIFORM_SALT, coalition)
    }
}

/// Per-coalition draw from the open unit interval, keyed by `(seed, salt, C)`.
#[inline]
pub(crate) fn coalition_unit(seed: u64, salt: u64, coalition: Coalition) -> f64 {
    open_unit(mix64(mix64(seed ^ salt) ^ coalition.bits()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SizeGame {
    n: usize,
    exponent: f64,
}

impl SizeGame {
    pub fn new(n: usize, exponent: f64) -> Result<Self> {
        check_players(n)?;
        if !exponent.is_finite() {
            return Err(Error::invalid(format!("exponent {exponent} is not finite")));
        }
        Ok(SizeGame { n, exponent })
    }
}

impl CharacteristicFunction for SizeGame {
    fn players(&self) -> usize {
        self.n
    }

    #[inline]
    fn value(&self, coalition: Coalition) -> f64 {
        if coalition.is_empty() {
            0.0
        } else {
            (coalition.len() as f64).powf(self.exponent)
        }
    }
}

/// Game defined by a closure. The empty coalition is mapped to zero without
/// calling the closure.
#[derive(Clone)]
pub struct FnGame<F> {
    n: usize,
    f: F,
}

impl<F: Fn(Coalition) -> f64 + Sync> FnGame<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnGame { n, f }
    }
}

impl<F: Fn(Coalition) -> f64 + Sync> CharacteristicFunction for FnGame<F> {
    fn players(&self) -> usize {
        self.n
    }

    #[inline]
    fn value(&self, coalition: Coalition) -> f64 {
        if coalition.is_empty() {
            0.0
        } else {
            (self.f)(coalition)
        }
    }
}

fn check_players(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PLAYERS {
        return Err(Error::invalid(format!(
            "game needs 1..={MAX_PLAYERS} players, got {n}"
        )));
    }
    Ok(())
}

/// The graph-restricted game `v_G(C) = sum of v(K)` over the connected
/// components `K` of `G(C)`.
#[derive(Clone, Debug)]
pub struct Restricted<'g, F> {
    graph: &'g Graph,
    inner: F,
}

impl<'g, F: CharacteristicFunction> Restricted<'g, F> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: CharacteristicFunction> CharacteristicFunction for Restricted<'_, F> {
    fn players(&self) -> usize {
        self.graph.node_count()
    }

    #[inline]
    fn value(&self, coalition: Coalition) -> f64 {
        let mut total = 0.0;
        for component in self.graph.components_iter(coalition) {
            total += self.inner.value(component);
        }
        total
    }
}

/// Restricts `game` to the communication graph `graph`.
pub fn restrict<F: CharacteristicFunction>(graph: &Graph, game: F) -> Result<Restricted<'_, F>> {
    graph.check_players(game.players())?;
    Ok(Restricted { graph, inner: game })
}

/// `MC(C, i) = v(C ∪ {i}) - v(C)`; `i` must not belong to `C`.
pub fn marginal_contribution<F>(game: &F, coalition: Coalition, player: usize) -> Result<f64>
where
    F: CharacteristicFunction + ?Sized,
{
    if player >= game.players() {
        return Err(Error::invalid(format!(
            "player {player} out of range for {} players",
            game.players()
        )));
    }
    if coalition.contains(player) {
        return Err(Error::NodeInCoalition(player));
    }
    Ok(game.value(coalition.with(player)) - game.value(coalition))
}
