//! Quasi conjunction, Goodman–Nguyen inclusion and the two-event probability
//! bounds for a quasi conjunction.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::events::{ConditionalEvent, Event, KnowledgeBase, Outcome, Vocabulary, WorldSet};
use crate::ratlp::Rational;
use crate::Error;

/// `C(S) = ⋀ (E_i H_i ∨ H_i^c) | ⋁ H_i`, built syntactically.
///
/// A single-element family yields that element unchanged.
pub fn quasi_conjunction(items: &[ConditionalEvent]) -> Result<ConditionalEvent, Error> {
    match items {
        [] => Err(Error::EmptyFamily),
        [single] => Ok(single.clone()),
        _ => {
            let consequent = Event::all(items.iter().map(|c| {
                let h = c.antecedent().clone();
                c.consequent().clone().and(h.clone()).or(h.not())
            }));
            let antecedent = Event::any(items.iter().map(|c| c.antecedent().clone()));
            // A disjunction of satisfiable antecedents is satisfiable.
            Ok(ConditionalEvent::new_unchecked(consequent, antecedent))
        }
    }
}

/// Quasi conjunction of the members of `family` at `indices`.
pub fn quasi_conjunction_of(family: &KnowledgeBase, indices: &[usize]) -> Result<ConditionalEvent, Error> {
    quasi_conjunction(family.subfamily(indices)?.items())
}

/// Rewrites a conditional event into an equal one (in the `AH = BK, H = K`
/// sense) whose consequent and antecedent are short disjunctive normal forms.
pub fn normalize(cond: &ConditionalEvent, vocab: &Vocabulary) -> ConditionalEvent {
    let h = cond.antecedent().worlds(vocab);
    let eh = cond.consequent().worlds(vocab).and(&h);
    let outside = h.clone().complement();
    let consequent = Event::from_worlds_with_dont_care(&eh, &outside, vocab);
    let antecedent = Event::from_worlds(&h, vocab);
    ConditionalEvent::new_unchecked(consequent, antecedent)
}

/// `A|H ⊆ B|K` iff `AHB^cK`, `H^cB^cK` and `AHK^c` are all impossible.
pub fn gn_includes(a: &ConditionalEvent, b: &ConditionalEvent, vocab: &Vocabulary) -> bool {
    let h = a.antecedent().worlds(vocab);
    let ah = a.consequent().worlds(vocab).and(&h);
    let k = b.antecedent().worlds(vocab);
    let not_b_k = b.consequent().worlds(vocab).complement().and(&k);
    ah.is_disjoint(&not_b_k) && h.complement().is_disjoint(&not_b_k) && ah.is_disjoint(&k.complement())
}

/// One row of the truth table of `A|H`, `C(A|H, B|K)`, `B|K` for an included pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthRow {
    /// The constituent, written over `A, H, B, K` with `^c` for negation.
    pub label: &'static str,
    pub outcomes: [Outcome; 3],
    /// Number of worlds in the constituent.
    pub worlds: usize,
}

/// The six constituents that can be possible when `A|H ⊆ B|K`, in table order.
const TABLE_ROWS: [&str; 6] = ["H^cK^c", "AHBK", "H^cBK", "A^cHBK", "A^cHK^c", "A^cHB^cK"];

/// Truth table of `(a, C(a, b), b)` over the constituents of an included pair;
/// rows whose constituent is impossible for the concrete pair are omitted.
pub fn truth_table(
    a: &ConditionalEvent,
    b: &ConditionalEvent,
    vocab: &Vocabulary,
) -> Result<Vec<TruthRow>, Error> {
    if !gn_includes(a, b, vocab) {
        return Err(Error::NotIncluded);
    }
    let qc = quasi_conjunction(&[a.clone(), b.clone()])?;
    let h = a.antecedent().worlds(vocab);
    let k = b.antecedent().worlds(vocab);
    let a_true = a.consequent().worlds(vocab);
    let b_true = b.consequent().worlds(vocab);
    let not = |s: &WorldSet| s.clone().complement();

    let sets: [WorldSet; 6] = [
        not(&h).and(&not(&k)),
        a_true.clone().and(&h).and(&b_true).and(&k),
        not(&h).and(&b_true).and(&k),
        not(&a_true).and(&h).and(&b_true).and(&k),
        not(&a_true).and(&h).and(&not(&k)),
        not(&a_true).and(&h).and(&not(&b_true)).and(&k),
    ];
    debug_assert_eq!(
        sets.iter().map(WorldSet::count).sum::<usize>(),
        vocab.world_count(),
        "the six constituents partition the worlds of an included pair"
    );

    let mut rows = Vec::new();
    for (label, set) in TABLE_ROWS.iter().zip(&sets) {
        let Some(first) = set.iter().next() else {
            continue;
        };
        let outcomes = [a.tv(first), qc.tv(first), b.tv(first)];
        debug_assert!(set
            .iter()
            .all(|w| [a.tv(w), qc.tv(w), b.tv(w)] == outcomes));
        rows.push(TruthRow {
            label,
            outcomes,
            worlds: set.count(),
        });
    }
    Ok(rows)
}

/// Coherent range `[l, u]` for `P(C(A|H, B|K))` given `P(A|H) = x`,
/// `P(B|K) = y`, when `A, H, B, K` are logically independent.
///
/// `l` is the Lukasiewicz t-norm and `u` the Hamacher t-conorm (parameter 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsPair {
    pub lower: Rational,
    pub upper: Rational,
}

fn check_unit(x: &Rational) -> Result<(), Error> {
    if *x < Rational::zero() || *x > Rational::one() {
        Err(Error::OutOfRange(x.to_string()))
    } else {
        Ok(())
    }
}

pub fn bounds_two(x: &Rational, y: &Rational) -> Result<BoundsPair, Error> {
    check_unit(x)?;
    check_unit(y)?;
    let one = Rational::one();
    let lower = (x + y - &one).max(Rational::zero());
    let upper = if x.is_one() || y.is_one() {
        one
    } else {
        let xy = x * y;
        (x + y - &xy * Rational::from_integer(2.into())) / (one - xy)
    };
    Ok(BoundsPair { lower, upper })
}

/// `max(Σ p_i − (s − 1), 0)`: the lower bound on `P(C(S))` for `s` logically
/// independent conditional events assessed at `p`.
pub fn qc_lower_bound(assessment: &[Rational]) -> Result<Rational, Error> {
    if assessment.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for p in assessment {
        check_unit(p)?;
    }
    let sum: Rational = assessment.iter().sum();
    let slack = Rational::from_integer((assessment.len() as i64 - 1).into());
    Ok((sum - slack).max(Rational::zero()))
}
