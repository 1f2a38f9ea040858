//! Explicit-state model of one-clock alternating timed automata (1-ATA) with a
//! clock deactivation operator, plus MTL over finite timed words and the
//! MTL-to-1-ATA translation.
//!
//! Everything in this crate works on exact rationals; clock values, delays and
//! region checks are fraction-sensitive, so floating point is never used.
//!
//! The executor in [`config`] is deliberately naive: it enumerates minimal
//! models and clause combinations directly from the definitions. It serves as
//! the ground-truth oracle that the symbolic zone engine (crate `ataz-zones`)
//! is tested against.

pub mod automaton;
pub mod config;
pub mod formula;
pub mod interval;
pub mod mtl;
pub mod parse;
pub mod rat;
pub mod translate;

pub use automaton::{AtaError, LetterId, LocId, OneAta};
pub use config::{AtaState, ClockVal, Configuration, TimedWord};
pub use formula::{Clause, TransitionFormula};
pub use interval::Interval;
pub use mtl::Mtl;
pub use rat::Rat;
pub use translate::{ClosureLoc, TranslationResult};
