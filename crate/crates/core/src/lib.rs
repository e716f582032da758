//! Exact decision procedures for coherent conditional probability assessments.
//!
//! The crate works over finite Boolean event algebras generated by named atoms.
//! Conditional events `E|H` are three-valued (true, false, void), and every
//! verdict (coherence, p-consistency, p-entailment, Goodman–Nguyen inclusion)
//! is decided with exact rational arithmetic and exhaustive world enumeration.
//!
//! Module map:
//!
//! * [`events`]: atoms, events, worlds, conditional events and the text parser.
//! * [`constituents`]: constituents of a family and the point matrix of an assessment.
//! * [`ratlp`]: exact simplex for the feasibility system and the `Φ_j` maxima.
//! * [`coherence`]: the iterative coherence check with its subfamily oracle.
//! * [`quasiconj`]: quasi conjunction, inclusion, and the two-event bounds.
//! * [`entailment`]: p-consistency, p-entailment, the class of entailing subsets.

#![no_std]

extern crate alloc;

pub mod coherence;
pub mod constituents;
pub mod entailment;
mod error;
pub mod events;
pub mod quasiconj;
pub mod ratlp;

pub use error::Error;
pub use events::{
    Atom, ConditionalEvent, Event, KnowledgeBase, Outcome, Vocabulary, World, WorldSet,
};
pub use ratlp::Rational;

/// Size guards for the exhaustive procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of atoms for world enumeration.
    pub max_atoms: usize,
    /// Maximum family size for procedures that enumerate all subfamilies
    /// looking for entailing subsets.
    pub max_subset_family: usize,
    /// Maximum family size for the brute-force coherence oracle.
    pub max_oracle_family: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_atoms: 20,
        max_subset_family: 12,
        max_oracle_family: 6,
    };
}

impl Default for Limits {
    fn default() -> Self {
        Self::DEFAULT
    }
}
