//! Cooperative flow games: the players are the arcs of a capacitated network
//! and a coalition is worth the maximum s-t flow through its own arcs.
//!
//! The crate decides convexity of such games in polynomial time, with a
//! checkable certificate or witness, and computes the value, Shapley value,
//! Harsanyi dividends and a population monotonic allocation scheme. The
//! [`game`] module holds exhaustive reference implementations used to test
//! the fast paths on small instances.

pub mod error;
pub mod fixtures;
pub mod game;
pub mod io;
pub mod maxflow;
pub mod network;
pub mod rational;
pub mod recognition;
pub mod structure;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use network::{Arc, ArcId, Coalition, FlowNetwork, NetworkBuilder, StPath};
pub use rational::{Capacity, Rational};
pub use recognition::{recognize, Certificate, Decision, Verdict, Witness};
