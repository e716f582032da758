//! Disjunctive normal forms recovered from world sets.

use alloc::vec::Vec;

use super::{Atom, Event, Vocabulary, World, WorldSet};

/// Up to this many atoms the cover is built from prime implicants; above it a
/// Shannon split is used.
const PRIME_IMPLICANT_ATOMS: usize = 8;

/// Conjunction of literals: a world `w` belongs to it iff `w & care == value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Cube {
    care: u64,
    value: u64,
}

impl Cube {
    fn contains(self, w: World) -> bool {
        w.0 & self.care == self.value
    }

    fn literal_ranks(self, atoms: usize) -> Vec<u8> {
        (0..atoms)
            .map(|i| match (self.care >> i & 1, self.value >> i & 1) {
                (1, 1) => 0,
                (1, _) => 1,
                _ => 2,
            })
            .collect()
    }

    fn to_event(self, atoms: usize) -> Event {
        Event::all((0..atoms).filter(|&i| self.care >> i & 1 == 1).map(|i| {
            let lit = Event::Atom(Atom(i));
            if self.value >> i & 1 == 1 {
                lit
            } else {
                lit.not()
            }
        }))
    }
}

fn prime_implicants(worlds: &[World], atoms: usize) -> Vec<Cube> {
    let full = if atoms == 64 { u64::MAX } else { (1u64 << atoms) - 1 };
    let mut current: Vec<Cube> = worlds
        .iter()
        .map(|w| Cube {
            care: full,
            value: w.0,
        })
        .collect();
    let mut primes = Vec::new();
    while !current.is_empty() {
        let mut merged_flag = alloc::vec![false; current.len()];
        let mut next: Vec<Cube> = Vec::new();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let (a, b) = (current[i], current[j]);
                if a.care != b.care {
                    continue;
                }
                let diff = a.value ^ b.value;
                if diff.count_ones() == 1 {
                    merged_flag[i] = true;
                    merged_flag[j] = true;
                    next.push(Cube {
                        care: a.care & !diff,
                        value: a.value & !diff,
                    });
                }
            }
        }
        for (cube, merged) in current.iter().zip(&merged_flag) {
            if !merged {
                primes.push(*cube);
            }
        }
        next.sort_unstable();
        next.dedup();
        current = next;
    }
    primes
}

fn shannon(set: &WorldSet, atoms: usize, cube: Cube, next_atom: usize, out: &mut Vec<Cube>) {
    let members: Vec<World> = set.iter().filter(|&w| cube.contains(w)).collect();
    if members.is_empty() {
        return;
    }
    let free = atoms - (cube.care.count_ones() as usize);
    if members.len() == 1usize << free || next_atom == atoms {
        out.push(cube);
        return;
    }
    let bit = 1u64 << next_atom;
    for value in [bit, 0] {
        let sub = Cube {
            care: cube.care | bit,
            value: cube.value | value,
        };
        shannon(set, atoms, sub, next_atom + 1, out);
    }
}

impl Event {
    /// A disjunction of conjunctions of literals true exactly on `set`.
    pub fn from_worlds(set: &WorldSet, vocab: &Vocabulary) -> Event {
        Event::from_worlds_with_dont_care(set, &WorldSet::empty(vocab.world_count()), vocab)
    }

    /// A disjunction of conjunctions of literals that is true on every world
    /// of `set`, false on every world outside `set ∪ dont_care`, and arbitrary
    /// on `dont_care`.
    pub fn from_worlds_with_dont_care(
        set: &WorldSet,
        dont_care: &WorldSet,
        vocab: &Vocabulary,
    ) -> Event {
        let atoms = vocab.len();
        let dont_care = dont_care.clone().and(&set.clone().complement());
        if set.is_empty() {
            return Event::Bottom;
        }
        if set.count() + dont_care.count() == vocab.world_count() {
            return Event::Top;
        }
        let mut cover: Vec<Cube> = Vec::new();
        if atoms <= PRIME_IMPLICANT_ATOMS {
            let seeds: Vec<World> = set.clone().or(&dont_care).iter().collect();
            let primes = prime_implicants(&seeds, atoms);
            let mut uncovered: Vec<World> = set.iter().collect();
            while !uncovered.is_empty() {
                // Greedy: the prime covering the most uncovered worlds, first on ties.
                let best = primes
                    .iter()
                    .copied()
                    .max_by_key(|p| {
                        let covered = uncovered.iter().filter(|&&w| p.contains(w)).count();
                        (covered, core::cmp::Reverse(*p))
                    })
                    .expect("primes cover the set");
                uncovered.retain(|&w| !best.contains(w));
                cover.push(best);
            }
            // Larger cubes first, then by literals in atom order (positive first).
            cover.sort_by_key(|c| (c.care.count_ones(), c.literal_ranks(atoms)));
        } else {
            shannon(set, atoms, Cube { care: 0, value: 0 }, 0, &mut cover);
        }
        Event::any(cover.into_iter().map(|c| c.to_event(atoms)))
    }
}
