//! Range estimates and Hoeffding-style sample counts for the three estimators.
//!
//! Two formula families are offered. [`Formula::Standard`] is the usual
//! Hoeffding bound `m >= -ln(δ/2) r² / (2ε²)`. [`Formula::CubeRoot`] treats each
//! term's range as `r/m`, which turns the same inequality into
//! `m >= (-ln(δ/2) r² / (2ε²))^(1/3)`; it is much smaller and is kept for
//! comparison rather than as a certified guarantee.

use std::fmt;
use std::str::FromStr;

use crate::game::check_table_size;
use crate::{CharacteristicFunction, Coalition, Error, Graph, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    CubeRoot,
    Standard,
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube-root" => Ok(Formula::CubeRoot),
            "standard" => Ok(Formula::Standard),
            other => Err(Error::invalid(format!("unknown bound formula `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Permutations,
    Hybrid,
    Connected,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Permutations => "permutations",
            Algorithm::Hybrid => "hybrid",
            Algorithm::Connected => "connected",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "permutations" => Ok(Algorithm::Permutations),
            "hybrid" => Ok(Algorithm::Hybrid),
            "connected" => Ok(Algorithm::Connected),
            other => Err(Error::invalid(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Inputs of the sample-size calculation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub epsilon: f64,
    pub delta: f64,
    pub range: f64,
    pub n: usize,
    pub exact_levels: usize,
    pub formula: Formula,
}

impl BoundParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::invalid(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::invalid(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        if !(self.range >= 0.0 && self.range.is_finite()) {
            return Err(Error::invalid(format!("range must be non-negative, got {}", self.range)));
        }
        if self.n == 0 || self.n > crate::MAX_PLAYERS {
            return Err(Error::invalid(format!("player count {} out of range", self.n)));
        }
        Ok(())
    }

    /// `-ln(δ/2) r² / (2ε²)`.
    fn hoeffding(&self) -> f64 {
        -(self.delta / 2.0).ln() * self.range * self.range / (2.0 * self.epsilon * self.epsilon)
    }
}

/// Result of [`samples_required`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleBound {
    pub samples: u64,
    /// The closed form before rounding up.
    pub unrounded: f64,
    /// Hybrid only: no size is left to sampling, so no samples are needed.
    pub full_exact: bool,
}

pub fn samples_required(params: &BoundParams, alg: Algorithm) -> Result<SampleBound> {
    params.validate()?;
    let n = params.n;
    // range multiplier of a single sampled term
    let range_factor = match alg {
        Algorithm::Permutations => 1.0,
        Algorithm::Hybrid => {
            let sampled = n as i64 - 2 * params.exact_levels as i64 - 2;
            if sampled <= 0 {
                return Ok(SampleBound {
                    samples: 0,
                    unrounded: 0.0,
                    full_exact: true,
                });
            }
            sampled as f64 / n as f64
        }
        Algorithm::Connected => Coalition::full(n).bits() as f64,
    };
    let base = params.hoeffding();
    let unrounded = match params.formula {
        Formula::CubeRoot => range_factor.powf(2.0 / 3.0) * base.cbrt(),
        Formula::Standard => range_factor * range_factor * base,
    };
    let rounded = unrounded.ceil();
    if rounded.is_nan() || rounded >= u64::MAX as f64 {
        return Err(Error::Overflow(unrounded));
    }
    Ok(SampleBound {
        samples: rounded as u64,
        unrounded,
        full_exact: false,
    })
}

/// Which range estimate to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeMode {
    /// `max |v(C)|`, valid when `v` never changes sign.
    SignDefinite,
    /// `n * max |v(C)|`.
    General,
    /// `max |v(C)|` over `Ex < |C| < n - Ex - 1`.
    Hybrid(usize),
    /// `n * max |v(C)|` over `Ex < |C| < n - Ex - 1`.
    HybridGeneral(usize),
    /// `max |v(C)| + (α/n) min |v(C)|`, see [`alpha`].
    Connected,
}

/// Smallest connected-sampling weight,
/// `floor(n/2)! floor((n-1)/2)! / n!`.
pub fn alpha(n: usize) -> f64 {
    let (a, b) = (n / 2, (n - 1) / 2);
    // a + b = n - 1, so a! b! / n! = 1 / (n * C(n-1, a))
    1.0 / (n as f64 * crate::exact::weights::binomial(a + b, a))
}

/// Range estimate of the sampled term for `mode`, by scanning every nonempty
/// coalition of `game`.
pub fn range_estimate<F>(game: &F, graph: &Graph, mode: RangeMode) -> Result<f64>
where
    F: CharacteristicFunction + ?Sized,
{
    let n = game.players();
    graph.check_players(n)?;
    check_table_size(n).map_err(|_| Error::TooLarge {
        what: "range estimation",
        n,
        max: crate::game::MAX_TABLE_PLAYERS,
    })?;
    let in_band = |c: Coalition, ex: usize| c.len() > ex && c.len() + ex + 1 < n;
    let extremes = |keep: &dyn Fn(Coalition) -> bool| {
        let mut max = 0.0f64;
        let mut min = f64::INFINITY;
        for mask in 1..1u64 << n {
            let c = Coalition::from_bits(mask);
            if keep(c) {
                let v = game.value(c).abs();
                max = max.max(v);
                min = min.min(v);
            }
        }
        (max, if min.is_finite() { min } else { 0.0 })
    };
    Ok(match mode {
        RangeMode::SignDefinite => extremes(&|_| true).0,
        RangeMode::General => n as f64 * extremes(&|_| true).0,
        RangeMode::Hybrid(ex) => extremes(&|c| in_band(c, ex)).0,
        RangeMode::HybridGeneral(ex) => n as f64 * extremes(&|c| in_band(c, ex)).0,
        RangeMode::Connected => {
            let (max, min) = extremes(&|_| true);
            max + alpha(n) / n as f64 * min
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{FnGame, SizeGame};
    use crate::{GameKind, GameSpec, GraphModel};

    fn params(epsilon: f64, delta: f64, range: f64, formula: Formula) -> BoundParams {
        BoundParams {
            epsilon,
            delta,
            range,
            n: 15,
            exact_levels: 0,
            formula,
        }
    }

    #[test]
    fn reference_values() {
        let p = params(0.5, 0.1, 10.0, Formula::CubeRoot);
        let b = samples_required(&p, Algorithm::Permutations).unwrap();
        assert!((b.unrounded - 8.430_325_266).abs() < 1e-8, "{}", b.unrounded);
        assert_eq!(b.samples, 9);

        let p = params(0.5, 0.1, 10.0, Formula::Standard);
        let b = samples_required(&p, Algorithm::Permutations).unwrap();
        assert!((b.unrounded - 599.146_4).abs() < 1e-3, "{}", b.unrounded);
        assert_eq!(b.samples, 600);
    }

    #[test]
    fn hybrid_factor() {
        let p = params(0.5, 0.1, 10.0, Formula::CubeRoot);
        let perm = samples_required(&p, Algorithm::Permutations).unwrap();
        let hybrid = samples_required(&p, Algorithm::Hybrid).unwrap();
        let ratio = hybrid.unrounded / perm.unrounded;
        assert!((ratio - (13.0f64 / 15.0).powf(2.0 / 3.0)).abs() < 1e-12);
        assert!((ratio - 0.909_008_747).abs() < 1e-8);
    }

    #[test]
    fn degenerate_hybrid_needs_no_samples() {
        let mut p = params(0.5, 0.1, 10.0, Formula::Standard);
        p.exact_levels = 7;
        let b = samples_required(&p, Algorithm::Hybrid).unwrap();
        assert!(b.full_exact);
        assert_eq!(b.samples, 0);
    }

    #[test]
    fn connected_bound_scales_with_population() {
        let p = params(0.5, 0.1, 10.0, Formula::CubeRoot);
        let perm = samples_required(&p, Algorithm::Permutations).unwrap();
        let conn = samples_required(&p, Algorithm::Connected).unwrap();
        let factor = (32767.0f64).powf(2.0 / 3.0);
        assert!((conn.unrounded / perm.unrounded - factor).abs() < 1e-9 * factor);
        let mut wide = params(0.01, 0.01, 1e6, Formula::Standard);
        wide.n = 64;
        assert!(matches!(
            samples_required(&wide, Algorithm::Connected),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn invalid_params_rejected() {
        for p in [
            params(0.0, 0.1, 1.0, Formula::Standard),
            params(0.1, 0.0, 1.0, Formula::Standard),
            params(0.1, 1.0, 1.0, Formula::Standard),
            params(0.1, 0.1, -1.0, Formula::Standard),
        ] {
            assert!(samples_required(&p, Algorithm::Permutations).is_err());
        }
    }

    #[test]
    fn monotone_in_inputs() {
        for formula in [Formula::CubeRoot, Formula::Standard] {
            for alg in [Algorithm::Permutations, Algorithm::Hybrid, Algorithm::Connected] {
                let at = |e, d, r| samples_required(&params(e, d, r, formula), alg).unwrap().unrounded;
                assert!(at(0.1, 0.1, 5.0) > at(0.2, 0.1, 5.0));
                assert!(at(0.1, 0.05, 5.0) > at(0.1, 0.1, 5.0));
                assert!(at(0.1, 0.1, 5.0) < at(0.1, 0.1, 6.0));
            }
        }
    }

    #[test]
    fn star_ranges() {
        let star = GraphModel::Star { n: 5 }.generate(0).unwrap();
        let squares = SizeGame::new(5, 2.0).unwrap();
        assert_eq!(range_estimate(&squares, &star, RangeMode::SignDefinite).unwrap(), 25.0);
        let pm = FnGame::new(5, |c: Coalition| if c.len() == 1 { 1.0 } else { -1.0 });
        assert_eq!(range_estimate(&pm, &star, RangeMode::General).unwrap(), 5.0);
        // band 0 < |C| < 4 for Ex = 0
        assert_eq!(range_estimate(&squares, &star, RangeMode::Hybrid(0)).unwrap(), 9.0);
        assert_eq!(range_estimate(&squares, &star, RangeMode::HybridGeneral(0)).unwrap(), 45.0);
        let connected = range_estimate(&squares, &star, RangeMode::Connected).unwrap();
        assert!((connected - (25.0 + (1.0 / 30.0) / 5.0)).abs() < 1e-12);
    }

    #[test]
    fn alpha_values() {
        assert!((alpha(5) - 1.0 / 30.0).abs() < 1e-15);
        assert_eq!(alpha(1), 1.0);
        for n in 2..=64 {
            assert!(alpha(n) <= 1.0 / n as f64);
        }
    }

    #[test]
    fn hybrid_range_shrinks_for_superadditive_games() {
        let n = 10;
        let g = GraphModel::Cycle { n }.generate(0).unwrap();
        for seed in 0..3 {
            let game = GameSpec::new(GameKind::Superadditive, n, seed).generate().unwrap();
            let full = range_estimate(&game, &g, RangeMode::SignDefinite).unwrap();
            let mut previous = full;
            for ex in 0..4 {
                let r = range_estimate(&game, &g, RangeMode::Hybrid(ex)).unwrap();
                assert!(r <= previous);
                previous = r;
            }
        }
    }
}
