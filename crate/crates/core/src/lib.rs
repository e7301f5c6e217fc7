//! Centrality of morphisms on finite pointed algebras.
//!
//! The crate computes cooperators, central and symmetrizable morphisms, the
//! additive core `Z(X, Y)`, commutative and abelian objects together with
//! their reflections, and decides a family of related conditions
//! (centralic pairs, unitality, Gumm shifting, factor permutability, the
//! (T) and § conditions, majority-style term conditions). Every decision
//! comes back as a [`report::CheckReport`] carrying either a certificate or
//! a replayable counterexample.

pub mod algebra;
pub mod catalog;
pub mod centrality;
pub mod conditions;
pub mod constructions;
pub mod error;
pub mod reflections;
pub mod report;

pub use error::{Error, Result};

/// Resource limits shared by the searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest carrier whose full congruence lattice is enumerated.
    pub congruence_carrier: usize,
    /// Largest carrier for Gumm and factor-permutability scans.
    pub shifting_carrier: usize,
    /// Operation applications allowed in one term search.
    pub term_steps: u64,
    /// Largest algebra for majority and unital term searches.
    pub term_carrier_small: usize,
    /// Largest algebra for the 4-ary term search.
    pub term_carrier_m4: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            congruence_carrier: 16,
            shifting_carrier: 9,
            term_steps: 1_000_000,
            term_carrier_small: 4,
            term_carrier_m4: 3,
        }
    }
}
