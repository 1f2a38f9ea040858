//! Zone-based emptiness for one-clock alternating timed automata with a
//! clock deactivation operator.
//!
//! The pieces, bottom up: difference bound matrices over named variables
//! ([`dbm`]), zone-graph nodes with dynamically allocated variables and the
//! four-step successor ([`node`]), region machinery and the entailment check
//! used to prune exploration ([`region`], [`entail`]), the exploration engine
//! with witness extraction ([`explore`]), the timed-automaton product
//! ([`product`]), and a monotone-3-SAT instance generator stressing the
//! entailment check ([`hardness`]).

pub mod bound;
pub mod dbm;
pub mod dump;
pub mod entail;
pub mod explore;
pub mod hardness;
pub mod node;
pub mod product;
pub mod region;
pub mod testgen;

pub use bound::Bound;
pub use dbm::Dbm;
pub use entail::{
    brute_force_node_entails, compute_nr, node_entails, node_entails_bounded, ZoneUnion,
};
pub use explore::{explore, mtl_sat, ExploreConfig, ExploreOutcome, Pruning, Verdict};
pub use node::{enumerate_targets, node_satisfies, successor, AtaVar, Node, Target};
pub use product::{model_check, TimedAutomaton};
