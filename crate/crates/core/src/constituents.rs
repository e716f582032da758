//! Constituents generated by a family of conditional events, and the points
//! `Q_h` they induce under an assessment.
//!
//! A constituent is a nonempty set of worlds on which every member of the
//! family has a fixed outcome. The constituent where every outcome is void is
//! `C₀`, the complement of the disjunction of antecedents; it is kept apart
//! from `C₁ … C_m`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::events::{Event, KnowledgeBase, Outcome, World, WorldSet};
use crate::ratlp::{Rational, SigmaSystem};
use crate::{Error, Limits};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    outcomes: Vec<Outcome>,
    worlds: Vec<World>,
}

impl Constituent {
    /// One outcome per member of the family.
    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    /// The worlds inducing this outcome vector, in increasing order.
    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    pub fn world_set(&self, universe: usize) -> WorldSet {
        let mut set = WorldSet::empty(universe);
        for &w in &self.worlds {
            set.insert(w);
        }
        set
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstituentTable {
    family: KnowledgeBase,
    c0: Option<Constituent>,
    constituents: Vec<Constituent>,
}

impl ConstituentTable {
    pub fn family(&self) -> &KnowledgeBase {
        &self.family
    }

    pub fn c0_present(&self) -> bool {
        self.c0.is_some()
    }

    pub fn c0(&self) -> Option<&Constituent> {
        self.c0.as_ref()
    }

    /// `C₁ … C_m`, sorted lexicographically on outcome vectors.
    pub fn constituents(&self) -> &[Constituent] {
        &self.constituents
    }

    pub fn m(&self) -> usize {
        self.constituents.len()
    }

    /// Indices `h` with `C_h ⊆ H_j`, i.e. rows where member `j` is not void.
    pub fn rows_within_antecedent(&self, j: usize) -> Vec<usize> {
        self.constituents
            .iter()
            .enumerate()
            .filter(|(_, c)| c.outcomes[j] != Outcome::Void)
            .map(|(h, _)| h)
            .collect()
    }

    /// The constituent containing `world`; `None` means `C₀`.
    pub fn locate(&self, world: World) -> Option<usize> {
        self.constituents
            .iter()
            .position(|c| c.worlds.binary_search(&world).is_ok())
    }

    /// The constituent rendered as a disjunction of literal conjunctions.
    pub fn describe(&self, constituent: &Constituent) -> Event {
        let vocab = self.family.vocab();
        Event::from_worlds(&constituent.world_set(vocab.world_count()), vocab)
    }

    /// The system `Σ` for this table and assessment.
    pub fn sigma(&self, assessment: &[Rational]) -> Result<SigmaSystem, Error> {
        let points = point_matrix(self, assessment)?;
        SigmaSystem::new(points.rows, assessment.to_vec())
    }
}

/// Groups worlds by the outcome vector they induce on `family`.
pub fn build_constituents(family: &KnowledgeBase, limits: &Limits) -> Result<ConstituentTable, Error> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let vocab = family.vocab();
    vocab.check_guard(limits.max_atoms)?;
    let sets: Vec<[WorldSet; 3]> = family.iter().map(|c| c.outcome_sets(vocab)).collect();
    const ORDER: [Outcome; 3] = [Outcome::True, Outcome::Void, Outcome::False];

    let mut groups: BTreeMap<Vec<Outcome>, Vec<World>> = BTreeMap::new();
    for w in vocab.worlds() {
        let outcomes: Vec<Outcome> = sets
            .iter()
            .map(|s| {
                let k = s.iter().position(|set| set.contains(w)).expect("outcome sets partition");
                ORDER[k]
            })
            .collect();
        groups.entry(outcomes).or_default().push(w);
    }

    let mut c0 = None;
    let mut constituents = Vec::with_capacity(groups.len());
    for (outcomes, worlds) in groups {
        let constituent = Constituent { outcomes, worlds };
        if constituent.outcomes.iter().all(|&o| o == Outcome::Void) {
            c0 = Some(constituent);
        } else {
            constituents.push(constituent);
        }
    }
    Ok(ConstituentTable {
        family: family.clone(),
        c0,
        constituents,
    })
}

/// Rows `Q_h`, one per constituent `C₁ … C_m`, with columns indexed by the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMatrix {
    pub rows: Vec<Vec<Rational>>,
}

/// `q_hj` is 1, 0 or `p_j` as `C_h` makes member `j` true, false or void.
pub fn point_matrix(table: &ConstituentTable, assessment: &[Rational]) -> Result<PointMatrix, Error> {
    let n = table.family.len();
    if assessment.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: assessment.len(),
        });
    }
    let rows = table
        .constituents
        .iter()
        .map(|c| {
            c.outcomes
                .iter()
                .zip(assessment)
                .map(|(o, p)| match o {
                    Outcome::True => Rational::one(),
                    Outcome::False => Rational::zero(),
                    Outcome::Void => p.clone(),
                })
                .collect()
        })
        .collect();
    Ok(PointMatrix { rows })
}
