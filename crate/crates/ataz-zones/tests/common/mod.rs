//! The property suites draw their randomized inputs from the library's
//! generator module.

#[allow(unused_imports)]
pub use ataz_zones::testgen::{random_automaton, random_node, rng};
