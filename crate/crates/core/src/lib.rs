//! Exact and Monte Carlo computation of the Myerson value.
//!
//! A graph-restricted game pairs an undirected communication graph with a
//! characteristic function over the graph's nodes. Disconnected coalitions are
//! worth the sum of their connected components, and the Myerson value is the
//! Shapley value of that restricted game.
//!
//! The crate provides:
//!
//! * [`Coalition`] and [`Graph`] bit-set primitives plus random graph models,
//! * characteristic functions, the graph restriction and random game generators
//!   ([`game`]),
//! * two independent exact engines ([`exact`]),
//! * three Monte Carlo estimators ([`sampling`]),
//! * Hoeffding-style sample size calculators ([`bounds`]),
//! * an error-versus-budget benchmark harness ([`bench`]).

pub mod bench;
pub mod bounds;
mod coalition;
mod error;
pub mod exact;
pub mod game;
pub mod graph;
mod numeric;
pub mod rng;
pub mod sampling;

pub use coalition::{Coalition, MAX_PLAYERS};
pub use error::{Error, Result};
pub use exact::{Allocation, Method};
pub use game::{CharacteristicFunction, Game, GameKind, GameSpec};
pub use graph::{Graph, GraphModel};
pub use numeric::{format_significant, CompensatedSum};
pub use rng::RngStream;
