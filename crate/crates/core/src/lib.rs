//! Misère quotients of impartial games.
//!
//! The crate computes reduced bipartite monoids together with pretending
//! functions for octal heap games and explicit game graphs, checks published
//! solutions against brute-force outcomes, and provides exact arithmetic in
//! the infinite quotients of 0.26 and 4.7.

pub mod algebra;
pub mod bitset;
pub mod cache;
pub mod catalog;
pub mod games;
pub mod heaps;
pub mod periodic;
pub mod report;
pub mod solver;
