//! Deciding and constructing single-elimination seedings that realize a
//! demanded set of matches.
//!
//! Given a complete tournament digraph on `n = 2^r` players and a set `S` of
//! demanded matches (arcs the bracket must play), the solvers here decide
//! whether some seeding realizes every demand and build one when it exists:
//!
//! - [`exact::oracle_solve`] enumerates all `n!` seedings (ground truth at
//!   tiny sizes),
//! - [`exact::dp_solve`] runs a subset dynamic program over equi-partitions
//!   in time `O*(3^n)`, with a weighted maximization variant
//!   [`exact::dp_max_weight`],
//! - [`fixer::solve_xp`] runs in `n^O(k)` for tournaments whose minimum
//!   feedback arc set has size `k`, with an FPT variant
//!   [`fixer::solve_fpt`] when every upset loser also loses a demand, and a
//!   variant honoring per-demand round constraints
//!   [`fixer::solve_with_rounds`].
//!
//! Seedings correspond to spanning binomial arborescences of the tournament
//! ([`model::simulate`] / [`model::sba_to_seeding`]); the solvers search for
//! a spanning binomial arborescence containing all of `S`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arborescence;
pub mod exact;
pub mod fas;
pub mod fixer;
pub mod model;

pub use exact::next_permutation;
