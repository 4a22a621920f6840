use std::fmt;
use std::str::FromStr;

use super::{check_table_size, coalition_unit, Game, SizeGame, TableGame, UniformGame};
use crate::{Coalition, Error, Result, MAX_PLAYERS};

/// Table-backed generators are limited to this many players.
pub const MAX_TABLE_PLAYERS: usize = 24;

const SUPERADDITIVE_SALT: u64 = 0x5EED_0002;
const SUBMODULAR_SALT: u64 = 0x5EED_0003;
const PROFILE_SALT: u64 = 0x5EED_1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameKind {
    Uniform,
    Superadditive,
    Submodular,
    Size,
}

impl GameKind {
    pub fn name(self) -> &'static str {
        match self {
            GameKind::Uniform => "uniform",
            GameKind::Superadditive => "superadditive",
            GameKind::Submodular => "submodular",
            GameKind::Size => "size",
        }
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GameKind::Uniform),
            "superadditive" => Ok(GameKind::Superadditive),
            "submodular" => Ok(GameKind::Submodular),
            "size" => Ok(GameKind::Size),
            other => Err(Error::invalid(format!("unknown game type `{other}`"))),
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of a random game. The string form is
/// `type=<t> n=<n> seed=<u64> [maxGain=<f>] [maxSingleton=<f>] [exponent=<f>]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GameSpec {
    pub kind: GameKind,
    pub n: usize,
    pub seed: u64,
    pub max_gain: f64,
    pub max_singleton: f64,
    pub exponent: f64,
}

impl GameSpec {
    pub fn new(kind: GameKind, n: usize, seed: u64) -> Self {
        GameSpec {
            kind,
            n,
            seed,
            max_gain: 3.0,
            max_singleton: 1.0,
            exponent: 2.0,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GameSpec { seed, ..self.clone() }
    }

    /// Type plus the parameters that affect it, e.g. `superadditive(maxGain=3)`.
    pub fn label(&self) -> String {
        match self.kind {
            GameKind::Uniform => "uniform".to_string(),
            GameKind::Superadditive => format!("superadditive(maxGain={})", self.max_gain),
            GameKind::Submodular => format!("submodular(maxSingleton={})", self.max_singleton),
            GameKind::Size => format!("size(exponent={})", self.exponent),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_PLAYERS {
            return Err(Error::invalid(format!(
                "game needs 1..={MAX_PLAYERS} players, got {}",
                self.n
            )));
        }
        if !(self.max_gain > 0.0 && self.max_gain.is_finite()) {
            return Err(Error::invalid(format!("maxGain must be positive, got {}", self.max_gain)));
        }
        if !(self.max_singleton > 0.0 && self.max_singleton.is_finite()) {
            return Err(Error::invalid(format!(
                "maxSingleton must be positive, got {}",
                self.max_singleton
            )));
        }
        if !self.exponent.is_finite() {
            return Err(Error::invalid(format!("exponent must be finite, got {}", self.exponent)));
        }
        if matches!(self.kind, GameKind::Superadditive | GameKind::Submodular) {
            check_table_size(self.n)?;
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Game> {
        generate_game(self)
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type={} n={} seed={}", self.kind, self.n, self.seed)?;
        match self.kind {
            GameKind::Uniform => Ok(()),
            GameKind::Superadditive => write!(f, " maxGain={}", self.max_gain),
            GameKind::Submodular => write!(f, " maxSingleton={}", self.max_singleton),
            GameKind::Size => write!(f, " exponent={}", self.exponent),
        }
    }
}

impl FromStr for GameSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut kind = None;
        let mut n = None;
        let mut seed = None;
        let mut spec = GameSpec::new(GameKind::Uniform, 0, 0);
        let mut seen = Vec::new();
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key=value, got `{token}`")))?;
            if seen.contains(&key) {
                return Err(Error::invalid(format!("duplicate key `{key}`")));
            }
            seen.push(key);
            let real = || {
                value
                    .parse::<f64>()
                    .map_err(|_| Error::invalid(format!("bad number `{value}` for {key}")))
            };
            match key {
                "type" => kind = Some(value.parse::<GameKind>()?),
                "n" => {
                    n = Some(value.parse::<usize>().map_err(|_| {
                        Error::invalid(format!("bad player count `{value}`"))
                    })?)
                }
                "seed" => {
                    seed = Some(
                        value
                            .parse::<u64>()
                            .map_err(|_| Error::invalid(format!("bad seed `{value}`")))?,
                    )
                }
                "maxGain" => spec.max_gain = real()?,
                "maxSingleton" => spec.max_singleton = real()?,
                "exponent" => spec.exponent = real()?,
                other => return Err(Error::invalid(format!("unknown key `{other}`"))),
            }
        }
        spec.kind = kind.ok_or_else(|| Error::invalid("missing `type=`"))?;
        spec.n = n.ok_or_else(|| Error::invalid("missing `n=`"))?;
        spec.seed = seed.ok_or_else(|| Error::invalid("missing `seed=`"))?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Builds the game described by `spec`.
///
/// Every random draw is keyed by `(seed, coalition)`, so results do not depend
/// on evaluation order. Tables are filled in ascending mask order, which
/// visits every proper subset of `C` before `C`.
pub fn generate_game(spec: &GameSpec) -> Result<Game> {
    spec.validate()?;
    match spec.kind {
        GameKind::Uniform => Ok(Game::Uniform(UniformGame::new(spec.n, spec.seed)?)),
        GameKind::Size => Ok(Game::Size(SizeGame::new(spec.n, spec.exponent)?)),
        GameKind::Superadditive => {
            let values = superadditive_table(spec.n, spec.seed, spec.max_gain);
            Ok(Game::Table(TableGame::from_values(spec.n, values)?))
        }
        GameKind::Submodular => {
            let values = submodular_table(spec.n, spec.seed, spec.max_singleton);
            Ok(Game::Table(TableGame::from_values(spec.n, values)?))
        }
    }
}

/// `v(C) ~ U(kappa_C, kappa_C + max_gain)` where `kappa_C` is the best split of
/// `C` into two nonempty disjoint parts (zero for singletons).
fn superadditive_table(n: usize, seed: u64, max_gain: f64) -> Vec<f64> {
    let mut table = vec![0.0f64; 1 << n];
    for mask in 1..1u64 << n {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut kappa = 0.0f64;
        if rest != 0 {
            kappa = f64::NEG_INFINITY;
            // S always holds the lowest member, so each unordered split is seen once
            let mut sub = rest;
            loop {
                sub = sub.wrapping_sub(1) & rest;
                let s = low | sub;
                let t = mask ^ s;
                kappa = kappa.max(table[s as usize] + table[t as usize]);
                if sub == 0 {
                    break;
                }
            }
        }
        let u = coalition_unit(seed, SUPERADDITIVE_SALT, Coalition::from_bits(mask));
        table[mask as usize] = kappa + max_gain * u;
    }
    table
}

/// Weighted coverage game `v(C) = sum_j max_{v in C} a[j][v]` over `n` items.
///
/// Player `v` holds a singleton value `s_v ~ U(0, max_singleton)` spread over
/// the items by uniform simplex weights, so `v({v}) = s_v`. Taking maxima
/// makes every marginal contribution nonnegative and nonincreasing.
fn submodular_table(n: usize, seed: u64, max_singleton: f64) -> Vec<f64> {
    let items = n;
    // weights[v][j]
    let weights: Vec<Vec<f64>> = (0..n)
        .map(|v| {
            let player = Coalition::singleton(v);
            let s = max_singleton * coalition_unit(seed, SUBMODULAR_SALT, player);
            let raw: Vec<f64> = (0..items)
                .map(|j| -coalition_unit(seed, PROFILE_SALT + j as u64, player).ln())
                .collect();
            let total: f64 = raw.iter().sum();
            raw.iter().map(|e| s * e / total).collect()
        })
        .collect();
    let mut table = vec![0.0f64; 1 << n];
    // depth-first over masks, each child adding a higher bit than its parent
    let mut stack: Vec<(u64, usize, Vec<f64>)> = vec![(0, 0, vec![0.0; items])];
    while let Some((mask, next, best)) = stack.pop() {
        for (v, row) in weights.iter().enumerate().skip(next) {
            let child = mask | 1 << v;
            let merged: Vec<f64> = best.iter().zip(row).map(|(a, b)| a.max(*b)).collect();
            table[child as usize] = merged.iter().sum();
            if v + 1 < n {
                stack.push((child, v + 1, merged));
            }
        }
    }
    table
}
