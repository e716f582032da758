//! Seeded generators for small random instances shared by the integration tests.

#![allow(dead_code)]

use cohere_core::quasiconj::{normalize, quasi_conjunction_of};
use cohere_core::ratlp::rational;
use cohere_core::{Atom, ConditionalEvent, Event, KnowledgeBase, Rational, Vocabulary, WorldSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 4] = ["A", "B", "C", "D"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vocab(atoms: usize) -> Vocabulary {
    Vocabulary::new(NAMES[..atoms].iter().copied()).unwrap()
}

/// Every rational in `[0, 1]` with denominator at most `max_denom`, ascending.
pub fn farey(max_denom: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=max_denom)
        .flat_map(|d| (0..=d).map(move |k| rational(k, d)))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn random_tree<R: Rng>(rng: &mut R, atoms: usize, depth: u32) -> Event {
    if depth == 0 || rng.gen_bool(0.3) {
        let lit = Event::atom(Atom(rng.gen_range(0..atoms)));
        return if rng.gen_bool(0.4) { lit.not() } else { lit };
    }
    let a = random_tree(rng, atoms, depth - 1);
    let b = random_tree(rng, atoms, depth - 1);
    match rng.gen_range(0..5) {
        0 | 1 => a.and(b),
        2 | 3 => a.or(b),
        _ => a.and(b).not(),
    }
}

fn random_set<R: Rng>(rng: &mut R, worlds: usize) -> WorldSet {
    let mut set = WorldSet::empty(worlds);
    for w in 0..worlds {
        if rng.gen_bool(0.5) {
            set.insert(cohere_core::World(w as u64));
        }
    }
    set
}

/// Either a random expression tree or a normal form of a random world set.
pub fn random_event<R: Rng>(rng: &mut R, vocab: &Vocabulary) -> Event {
    if rng.gen_bool(0.5) {
        random_tree(rng, vocab.len(), 3)
    } else {
        Event::from_worlds(&random_set(rng, vocab.world_count()), vocab)
    }
}

pub fn random_conditional<R: Rng>(rng: &mut R, vocab: &Vocabulary) -> ConditionalEvent {
    loop {
        let h = if rng.gen_bool(0.2) {
            Event::Top
        } else {
            random_event(rng, vocab)
        };
        if let Ok(c) = ConditionalEvent::new(random_event(rng, vocab), h, vocab) {
            return c;
        }
    }
}

/// `1..=max_atoms` atoms and `1..=max_len` members.
pub fn random_family<R: Rng>(rng: &mut R, max_atoms: usize, max_len: usize) -> KnowledgeBase {
    let v = vocab(rng.gen_range(1..=max_atoms));
    let n = rng.gen_range(1..=max_len);
    let items = (0..n).map(|_| random_conditional(rng, &v)).collect();
    KnowledgeBase::new(v, items).unwrap()
}

/// A query that is entailed more often than a uniform draw would be: a third
/// of the time the quasi conjunction of a random subset, a third of the time
/// a weakening of a member, otherwise uniform.
pub fn random_query<R: Rng>(rng: &mut R, family: &KnowledgeBase) -> ConditionalEvent {
    let v = family.vocab();
    match rng.gen_range(0..3) {
        0 => {
            let subset = random_subset(rng, family.len());
            normalize(&quasi_conjunction_of(family, &subset).unwrap(), v)
        }
        1 => {
            let base = family.get(rng.gen_range(0..family.len())).unwrap();
            let extra = random_event(rng, v);
            ConditionalEvent::new(base.consequent().clone().or(extra), base.antecedent().clone(), v)
                .unwrap()
        }
        _ => random_conditional(rng, v),
    }
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// Assessment entries with denominators at most 4. Half the time the values
/// come from a random distribution on worlds (zero weights included) when
/// that keeps denominators small, so coherent instances are well represented.
pub fn random_assessment<R: Rng>(rng: &mut R, family: &KnowledgeBase) -> Vec<Rational> {
    let grid = farey(4);
    let uniform = |rng: &mut R| -> Vec<Rational> {
        (0..family.len()).map(|_| grid.choose(rng).unwrap().clone()).collect()
    };
    if rng.gen_bool(0.5) {
        return uniform(rng);
    }
    let v = family.vocab();
    let weights: Vec<i64> = (0..v.world_count())
        .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=2) })
        .collect();
    let mass = |set: &WorldSet| -> i64 { set.iter().map(|w| weights[w.index()]).sum() };
    let mut out = Vec::with_capacity(family.len());
    for c in family {
        let h = c.antecedent().worlds(v);
        let eh = c.consequent().worlds(v).and(&h);
        let (num, den) = (mass(&eh), mass(&h));
        let p = if den == 0 {
            grid.choose(rng).unwrap().clone()
        } else {
            rational(num, den)
        };
        if *p.denom() > 4.into() {
            return uniform(rng);
        }
        out.push(p);
    }
    out
}

pub fn ones(n: usize) -> Vec<Rational> {
    vec![rational(1, 1); n]
}

pub fn mask_to_indices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn indices_to_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}
