//! Boolean events over named atoms and three-valued conditional events.

mod normal;
mod parse;
mod worlds;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use parse::{parse_conditional, parse_event};
pub use worlds::{World, WorldSet};

use crate::Error;

/// Absolute ceiling on vocabulary size; world sets over more atoms would not fit in memory.
pub const MAX_ATOMS: usize = 26;

/// Index of a declared atom within its [`Vocabulary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub usize);

/// Ordered set of declared atom names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    names: Vec<String>,
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "v" | "T" | "F")
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vocabulary {
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.as_ref();
            if !is_identifier(name) || is_reserved(name) {
                return Err(Error::InvalidAtomName(name.to_string()));
            }
            if out.iter().any(|n| n == name) {
                return Err(Error::DuplicateAtom(name.to_string()));
            }
            out.push(name.to_string());
        }
        if out.len() > MAX_ATOMS {
            return Err(Error::AtomGuard {
                count: out.len(),
                limit: MAX_ATOMS,
            });
        }
        Ok(Vocabulary { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn world_count(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        self.names.iter().position(|n| n == name).map(Atom)
    }

    pub fn name(&self, atom: Atom) -> &str {
        &self.names[atom.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.world_count() as u64).map(World)
    }

    /// Fails when the vocabulary exceeds `limit` atoms.
    pub fn check_guard(&self, limit: usize) -> Result<(), Error> {
        if self.len() > limit {
            Err(Error::AtomGuard {
                count: self.len(),
                limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn parse_event(&self, text: &str) -> Result<Event, Error> {
        parse_event(text, self)
    }

    pub fn parse_conditional(&self, text: &str) -> Result<ConditionalEvent, Error> {
        parse_conditional(text, self)
    }
}

/// A Boolean expression over atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Top,
    Bottom,
    Atom(Atom),
    Not(Box<Event>),
    And(Box<Event>, Box<Event>),
    Or(Box<Event>, Box<Event>),
}

impl Event {
    pub fn atom(atom: Atom) -> Event {
        Event::Atom(atom)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Event {
        Event::Not(Box::new(self))
    }

    pub fn and(self, other: Event) -> Event {
        Event::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Event) -> Event {
        Event::Or(Box::new(self), Box::new(other))
    }

    /// Left-nested conjunction; `Top` for an empty iterator.
    pub fn all<I: IntoIterator<Item = Event>>(events: I) -> Event {
        events.into_iter().reduce(Event::and).unwrap_or(Event::Top)
    }

    /// Left-nested disjunction; `Bottom` for an empty iterator.
    pub fn any<I: IntoIterator<Item = Event>>(events: I) -> Event {
        events.into_iter().reduce(Event::or).unwrap_or(Event::Bottom)
    }

    /// Highest atom index mentioned, if any.
    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Event::Top | Event::Bottom => None,
            Event::Atom(a) => Some(a.0),
            Event::Not(e) => e.max_atom(),
            Event::And(a, b) | Event::Or(a, b) => a.max_atom().max(b.max_atom()),
        }
    }

    pub fn evaluate(&self, world: World) -> bool {
        match self {
            Event::Top => true,
            Event::Bottom => false,
            Event::Atom(a) => world.get(a.0),
            Event::Not(e) => !e.evaluate(world),
            Event::And(a, b) => a.evaluate(world) && b.evaluate(world),
            Event::Or(a, b) => a.evaluate(world) || b.evaluate(world),
        }
    }

    /// The set of worlds in which the event is true.
    pub fn worlds(&self, vocab: &Vocabulary) -> WorldSet {
        let len = vocab.world_count();
        match self {
            Event::Top => WorldSet::full(len),
            Event::Bottom => WorldSet::empty(len),
            Event::Atom(a) => WorldSet::atom(a.0, vocab.len()),
            Event::Not(e) => e.worlds(vocab).complement(),
            Event::And(a, b) => a.worlds(vocab).and(&b.worlds(vocab)),
            Event::Or(a, b) => a.worlds(vocab).or(&b.worlds(vocab)),
        }
    }

    pub fn is_satisfiable(&self, vocab: &Vocabulary) -> bool {
        !self.worlds(vocab).is_empty()
    }

    /// Logical implication `self ⊆ other`, decided over all worlds.
    pub fn implies(&self, other: &Event, vocab: &Vocabulary) -> bool {
        self.worlds(vocab).is_subset(&other.worlds(vocab))
    }

    /// Semantic equality: implication in both directions.
    pub fn equivalent(&self, other: &Event, vocab: &Vocabulary) -> bool {
        self.worlds(vocab) == other.worlds(vocab)
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> DisplayEvent<'a> {
        DisplayEvent { event: self, vocab }
    }
}

/// Free-function form of [`Event::implies`].
pub fn implies(a: &Event, b: &Event, vocab: &Vocabulary) -> bool {
    a.implies(b, vocab)
}

pub struct DisplayEvent<'a> {
    event: &'a Event,
    vocab: &'a Vocabulary,
}

fn precedence(e: &Event) -> u8 {
    match e {
        Event::Or(..) => 1,
        Event::And(..) => 2,
        _ => 3,
    }
}

impl DisplayEvent<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, e: &Event, min_prec: u8) -> fmt::Result {
        if precedence(e) < min_prec {
            f.write_str("(")?;
            self.write(f, e, 0)?;
            return f.write_str(")");
        }
        match e {
            Event::Top => f.write_str("T"),
            Event::Bottom => f.write_str("F"),
            Event::Atom(a) => f.write_str(self.vocab.name(*a)),
            Event::Not(inner) => {
                f.write_str("~")?;
                self.write(f, inner, 3)
            }
            // Binary operators are left-associative: a right operand of equal
            // precedence needs parentheses to survive a re-parse.
            Event::And(a, b) => {
                self.write(f, a, 2)?;
                f.write_str(" & ")?;
                self.write(f, b, 3)
            }
            Event::Or(a, b) => {
                self.write(f, a, 1)?;
                f.write_str(" v ")?;
                self.write(f, b, 2)
            }
        }
    }
}

impl fmt::Display for DisplayEvent<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.event, 0)
    }
}

/// Outcome of a conditional event in a world.
///
/// The declaration order `True < Void < False` is the per-coordinate order
/// used to sort constituents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    True,
    Void,
    False,
}

impl Outcome {
    pub fn symbol(self) -> char {
        match self {
            Outcome::True => 'T',
            Outcome::Void => 'V',
            Outcome::False => 'F',
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::True => "True",
            Outcome::Void => "Void",
            Outcome::False => "False",
        })
    }
}

/// A conditional event `E|H` with a satisfiable antecedent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionalEvent {
    consequent: Event,
    antecedent: Event,
}

impl ConditionalEvent {
    pub fn new(
        consequent: Event,
        antecedent: Event,
        vocab: &Vocabulary,
    ) -> Result<Self, Error> {
        let cond = ConditionalEvent {
            consequent,
            antecedent,
        };
        cond.check_vocabulary(vocab)?;
        if !cond.antecedent.is_satisfiable(vocab) {
            return Err(Error::UnsatisfiableAntecedent);
        }
        Ok(cond)
    }

    /// Fails if an atom index falls outside `vocab`.
    pub fn check_vocabulary(&self, vocab: &Vocabulary) -> Result<(), Error> {
        let max = self.consequent.max_atom().max(self.antecedent.max_atom());
        match max {
            Some(i) if i >= vocab.len() => Err(Error::VocabularyMismatch),
            _ => Ok(()),
        }
    }

    /// Caller guarantees the antecedent is satisfiable.
    pub(crate) fn new_unchecked(consequent: Event, antecedent: Event) -> Self {
        ConditionalEvent {
            consequent,
            antecedent,
        }
    }

    pub fn consequent(&self) -> &Event {
        &self.consequent
    }

    pub fn antecedent(&self) -> &Event {
        &self.antecedent
    }

    pub fn tv(&self, world: World) -> Outcome {
        if !self.antecedent.evaluate(world) {
            Outcome::Void
        } else if self.consequent.evaluate(world) {
            Outcome::True
        } else {
            Outcome::False
        }
    }

    /// Worlds where the event is true (`EH`), false (`E^cH`) and void (`H^c`).
    pub fn outcome_sets(&self, vocab: &Vocabulary) -> [WorldSet; 3] {
        let h = self.antecedent.worlds(vocab);
        let e = self.consequent.worlds(vocab);
        let void = h.clone().complement();
        let truth = e.clone().and(&h);
        let falsity = e.complement().and(&h);
        [truth, void, falsity]
    }

    /// `A|H = B|K` iff `AH = BK` and `H = K`.
    pub fn equivalent(&self, other: &ConditionalEvent, vocab: &Vocabulary) -> bool {
        let h = self.antecedent.worlds(vocab);
        let k = other.antecedent.worlds(vocab);
        h == k && self.consequent.worlds(vocab).and(&h) == other.consequent.worlds(vocab).and(&k)
    }

    /// `E^c|H`.
    pub fn negated(&self) -> ConditionalEvent {
        ConditionalEvent::new_unchecked(self.consequent.clone().not(), self.antecedent.clone())
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> DisplayConditional<'a> {
        DisplayConditional { cond: self, vocab }
    }
}

/// Free-function form of [`ConditionalEvent::tv`].
pub fn tv(cond: &ConditionalEvent, world: World) -> Outcome {
    cond.tv(world)
}

pub struct DisplayConditional<'a> {
    cond: &'a ConditionalEvent,
    vocab: &'a Vocabulary,
}

impl fmt::Display for DisplayConditional<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {}",
            self.cond.consequent.display(self.vocab),
            self.cond.antecedent.display(self.vocab)
        )
    }
}

/// An ordered family of conditional events sharing one vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnowledgeBase {
    vocab: Vocabulary,
    items: Vec<ConditionalEvent>,
}

impl KnowledgeBase {
    pub fn new(vocab: Vocabulary, items: Vec<ConditionalEvent>) -> Result<Self, Error> {
        for item in &items {
            item.check_vocabulary(&vocab)?;
        }
        Ok(KnowledgeBase { vocab, items })
    }

    /// Parses each conditional with [`parse_conditional`].
    pub fn parse<S: AsRef<str>>(vocab: Vocabulary, items: &[S]) -> Result<Self, Error> {
        let items = items
            .iter()
            .map(|s| parse_conditional(s.as_ref(), &vocab))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(KnowledgeBase { vocab, items })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn items(&self) -> &[ConditionalEvent] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&ConditionalEvent> {
        self.items.get(index)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, ConditionalEvent> {
        self.items.iter()
    }

    /// The subfamily at `indices`, in the given order.
    pub fn subfamily(&self, indices: &[usize]) -> Result<KnowledgeBase, Error> {
        let items = indices
            .iter()
            .map(|&i| {
                self.items.get(i).cloned().ok_or(Error::IndexOutOfRange {
                    index: i,
                    len: self.items.len(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(KnowledgeBase {
            vocab: self.vocab.clone(),
            items,
        })
    }

    /// A copy with `cond` appended as a distinct last element.
    pub fn appended(&self, cond: ConditionalEvent) -> KnowledgeBase {
        let mut items = self.items.clone();
        items.push(cond);
        KnowledgeBase {
            vocab: self.vocab.clone(),
            items,
        }
    }

    /// Disjunction of all antecedents.
    pub fn antecedent_union(&self) -> WorldSet {
        self.items.iter().fold(
            WorldSet::empty(self.vocab.world_count()),
            |acc, c| acc.or(&c.antecedent().worlds(&self.vocab)),
        )
    }
}

impl<'a> IntoIterator for &'a KnowledgeBase {
    type Item = &'a ConditionalEvent;
    type IntoIter = core::slice::Iter<'a, ConditionalEvent>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}
