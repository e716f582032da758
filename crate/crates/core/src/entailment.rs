//! p-consistency and p-entailment for conditional knowledge bases.
//!
//! Two independent decision paths are provided for entailment:
//!
//! * [`p_entails`] is the linear-programming route: the assessment
//!   `(1, …, 1, 0)` on the family extended by the query is checked with the
//!   iterative coherence procedure; when it is incoherent the family entails
//!   the query and the subfamily where the procedure stops is the greatest
//!   entailing subset `S*`.
//! * [`p_entails_oracle`] is the combinatorial route: the family entails
//!   `E|H` iff `H ⊆ E` or some nonempty subset has a quasi conjunction
//!   included in `E|H`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::coherence::{check_coherence, subfamily_solvable, Iteration};
use crate::events::{ConditionalEvent, KnowledgeBase, Vocabulary, WorldSet};
use crate::ratlp::Rational;
use crate::{Error, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntailmentMode {
    /// Decided through the coherence of `(1, …, 1, 0)` on the extended family.
    ViaSubsetSystem,
    /// The query's antecedent implies its consequent.
    TriviallyByAntecedent,
}

#[derive(Clone, Debug)]
pub struct EntailmentVerdict {
    pub entails: bool,
    pub mode: EntailmentMode,
    /// Greatest subset whose quasi conjunction is included in the query.
    pub s_star: Option<Vec<usize>>,
    /// Iterations of the coherence procedure on the extended family; the
    /// query occupies index `n`.
    pub trace: Vec<Iteration>,
}

/// The three mutually exclusive situations for a p-consistent family and a query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trichotomy {
    /// `(1, …, 1, z)` is coherent iff `z = 1`: the family entails the query.
    A1Entails,
    /// `(1, …, 1, z)` is coherent for every `z ∈ [0, 1]`.
    A2Interval,
    /// `(1, …, 1, z)` is coherent iff `z = 0`: the family entails `E^c|H`.
    A3NegationEntails,
}

/// Nonempty subsets (as sorted index lists) whose quasi conjunction is
/// included in the query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassK {
    pub members: Vec<Vec<usize>>,
    pub greatest: Option<Vec<usize>>,
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

fn indices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn require_nonempty(family: &KnowledgeBase) -> Result<(), Error> {
    if family.is_empty() {
        Err(Error::EmptyFamily)
    } else {
        Ok(())
    }
}

fn require_p_consistent(family: &KnowledgeBase, limits: &Limits) -> Result<(), Error> {
    if p_consistent(family, limits)? {
        Ok(())
    } else {
        Err(Error::NotPConsistent)
    }
}

fn subset_guard(family: &KnowledgeBase, limits: &Limits) -> Result<(), Error> {
    let limit = limits.max_subset_family.min(63);
    if family.len() > limit {
        Err(Error::SubsetGuard {
            size: family.len(),
            limit,
        })
    } else {
        Ok(())
    }
}

fn antecedent_implies_consequent(query: &ConditionalEvent, vocab: &Vocabulary) -> bool {
    query.antecedent().implies(query.consequent(), vocab)
}

/// The family is p-consistent iff the all-ones assessment on it is coherent.
pub fn p_consistent(family: &KnowledgeBase, limits: &Limits) -> Result<bool, Error> {
    require_nonempty(family)?;
    Ok(check_coherence(family, &ones(family.len()), limits)?.coherent)
}

/// Whether `(1, …, 1, z)` on the family extended by `query` is coherent.
pub fn extension_coherent(
    family: &KnowledgeBase,
    query: &ConditionalEvent,
    z: &Rational,
    limits: &Limits,
) -> Result<bool, Error> {
    query.check_vocabulary(family.vocab())?;
    let mut p = ones(family.len());
    p.push(z.clone());
    Ok(check_coherence(&family.appended(query.clone()), &p, limits)?.coherent)
}

pub fn p_entails(
    family: &KnowledgeBase,
    query: &ConditionalEvent,
    limits: &Limits,
) -> Result<EntailmentVerdict, Error> {
    require_nonempty(family)?;
    query.check_vocabulary(family.vocab())?;
    require_p_consistent(family, limits)?;
    if antecedent_implies_consequent(query, family.vocab()) {
        return Ok(EntailmentVerdict {
            entails: true,
            mode: EntailmentMode::TriviallyByAntecedent,
            s_star: None,
            trace: Vec::new(),
        });
    }

    let n = family.len();
    let mut p = ones(n);
    p.push(Rational::zero());
    let verdict = check_coherence(&family.appended(query.clone()), &p, limits)?;
    let s_star = verdict.certificate.map(|cert| {
        // The query is appended as a distinct slot even if it duplicates a member.
        debug_assert!(cert.members.contains(&n), "subfamilies of a p-consistent family are solvable");
        cert.members.into_iter().filter(|&i| i != n).collect::<Vec<_>>()
    });
    debug_assert!(s_star.as_ref().is_none_or(|s| !s.is_empty()));
    Ok(EntailmentVerdict {
        entails: s_star.is_some(),
        mode: EntailmentMode::ViaSubsetSystem,
        s_star,
        trace: verdict.trace,
    })
}

/// Quasi-conjunction world sets for inclusion tests over many subsets:
/// per member, the worlds where it is not false and where it is not void.
struct SubsetSets {
    not_false: Vec<WorldSet>,
    antecedent: Vec<WorldSet>,
    universe: usize,
}

impl SubsetSets {
    fn new(family: &KnowledgeBase) -> Self {
        let vocab = family.vocab();
        let mut not_false = Vec::with_capacity(family.len());
        let mut antecedent = Vec::with_capacity(family.len());
        for c in family {
            let [_, _, falsity] = c.outcome_sets(vocab);
            not_false.push(falsity.complement());
            antecedent.push(c.antecedent().worlds(vocab));
        }
        SubsetSets {
            not_false,
            antecedent,
            universe: vocab.world_count(),
        }
    }

    /// Whether `C(S) ⊆ E|H` for the subset encoded by `mask`.
    fn included(&self, mask: u64, query: &QuerySets) -> bool {
        let mut consequent = WorldSet::full(self.universe);
        let mut antecedent = WorldSet::empty(self.universe);
        for i in 0..self.not_false.len() {
            if mask >> i & 1 == 1 {
                consequent = consequent.and(&self.not_false[i]);
                antecedent = antecedent.or(&self.antecedent[i]);
            }
        }
        let ah = consequent.and(&antecedent);
        ah.is_disjoint(&query.false_set)
            && antecedent.complement().is_disjoint(&query.false_set)
            && ah.is_disjoint(&query.void_set)
    }
}

struct QuerySets {
    false_set: WorldSet,
    void_set: WorldSet,
}

impl QuerySets {
    fn new(query: &ConditionalEvent, vocab: &Vocabulary) -> Self {
        let [_, void_set, false_set] = query.outcome_sets(vocab);
        QuerySets {
            false_set,
            void_set,
        }
    }
}

/// Combinatorial decision: `H ⊆ E`, or some nonempty `S` with `C(S) ⊆ E|H`.
pub fn p_entails_oracle(
    family: &KnowledgeBase,
    query: &ConditionalEvent,
    limits: &Limits,
) -> Result<bool, Error> {
    require_nonempty(family)?;
    query.check_vocabulary(family.vocab())?;
    subset_guard(family, limits)?;
    require_p_consistent(family, limits)?;
    if antecedent_implies_consequent(query, family.vocab()) {
        return Ok(true);
    }
    let sets = SubsetSets::new(family);
    let q = QuerySets::new(query, family.vocab());
    Ok((1u64..(1 << family.len())).any(|mask| sets.included(mask, &q)))
}

pub fn classify(
    family: &KnowledgeBase,
    query: &ConditionalEvent,
    limits: &Limits,
) -> Result<Trichotomy, Error> {
    if p_entails(family, query, limits)?.entails {
        Ok(Trichotomy::A1Entails)
    } else if !p_consistent(&family.appended(query.clone()), limits)? {
        Ok(Trichotomy::A3NegationEntails)
    } else {
        Ok(Trichotomy::A2Interval)
    }
}

/// All nonempty subsets `S` with `C(S) ⊆ E|H`, in increasing bitmask order
/// (bit `i` for member `i`), and their union when the class is nonempty.
pub fn class_k(
    family: &KnowledgeBase,
    query: &ConditionalEvent,
    limits: &Limits,
) -> Result<ClassK, Error> {
    require_nonempty(family)?;
    query.check_vocabulary(family.vocab())?;
    subset_guard(family, limits)?;
    family.vocab().check_guard(limits.max_atoms)?;
    let n = family.len();
    let sets = SubsetSets::new(family);
    let q = QuerySets::new(query, family.vocab());
    let masks: Vec<u64> = (1u64..(1 << n)).filter(|&m| sets.included(m, &q)).collect();
    let greatest = match masks.iter().copied().reduce(|a, b| a | b) {
        None => None,
        Some(union) if masks.contains(&union) => Some(indices(union, n)),
        Some(_) => return Err(Error::NotAdditive),
    };
    Ok(ClassK {
        members: masks.iter().map(|&m| indices(m, n)).collect(),
        greatest,
    })
}

/// `S*` from the linear-programming route when `H ⊄ E`; otherwise the union
/// of the class computed by enumeration. `None` when nothing entails.
pub fn greatest_element(
    family: &KnowledgeBase,
    query: &ConditionalEvent,
    limits: &Limits,
) -> Result<Option<Vec<usize>>, Error> {
    require_nonempty(family)?;
    query.check_vocabulary(family.vocab())?;
    if antecedent_implies_consequent(query, family.vocab()) {
        require_p_consistent(family, limits)?;
        return Ok(class_k(family, query, limits)?.greatest);
    }
    Ok(p_entails(family, query, limits)?.s_star)
}

/// Whether the system for `(1, …, 1, 0)` on `S ∪ {query}` is unsolvable,
/// where `S` is the subfamily at `subset`.
pub fn per_subset_test(
    family: &KnowledgeBase,
    subset: &[usize],
    query: &ConditionalEvent,
    limits: &Limits,
) -> Result<bool, Error> {
    if subset.is_empty() {
        return Err(Error::EmptyFamily);
    }
    query.check_vocabulary(family.vocab())?;
    let sub = family.subfamily(subset)?;
    require_p_consistent(&sub, limits)?;
    let s = sub.len();
    let mut p = ones(s);
    p.push(Rational::zero());
    let extended = sub.appended(query.clone());
    let all: Vec<usize> = (0..=s).collect();
    Ok(!subfamily_solvable(&extended, &p, &all, limits)?)
}

/// The family entails every target.
pub fn p_entails_family(
    family: &KnowledgeBase,
    targets: &KnowledgeBase,
    limits: &Limits,
) -> Result<bool, Error> {
    if targets.vocab() != family.vocab() {
        return Err(Error::VocabularyMismatch);
    }
    require_nonempty(targets)?;
    require_p_consistent(family, limits)?;
    require_p_consistent(targets, limits)?;
    for target in targets {
        if !p_entails(family, target, limits)?.entails {
            return Ok(false);
        }
    }
    Ok(true)
}
