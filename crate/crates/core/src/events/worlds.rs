use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A total truth assignment over the atoms of a vocabulary.
///
/// Bit `i` holds the value of the `i`-th declared atom, so iterating the
/// world indices `0..2^k` enumerates worlds in binary counting order with the
/// first declared atom as the least significant digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub u64);

impl World {
    #[inline]
    pub fn get(self, atom: usize) -> bool {
        (self.0 >> atom) & 1 == 1
    }

    pub fn with(self, atom: usize, value: bool) -> World {
        if value {
            World(self.0 | (1 << atom))
        } else {
            World(self.0 & !(1 << atom))
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

// Per-word masks for atoms 0..6: bit w of the mask is set iff bit `atom` of w is set.
const LOW_ATOM_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// A set of worlds over `2^k` worlds, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    words: Vec<u64>,
    len: usize,
}

impl WorldSet {
    pub fn empty(len: usize) -> Self {
        WorldSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = WorldSet {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        set.clear_tail();
        set
    }

    /// Worlds (over `atom_count` atoms) in which `atom` is true.
    pub fn atom(atom: usize, atom_count: usize) -> Self {
        let len = 1usize << atom_count;
        let mut words = vec![0u64; len.div_ceil(64)];
        if atom < 6 {
            for w in words.iter_mut() {
                *w = LOW_ATOM_MASKS[atom];
            }
        } else {
            let block = 1usize << (atom - 6);
            for (i, w) in words.iter_mut().enumerate() {
                if (i / block) % 2 == 1 {
                    *w = u64::MAX;
                }
            }
        }
        let mut set = WorldSet { words, len };
        set.clear_tail();
        set
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of worlds in the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, world: World) -> bool {
        let i = world.index();
        i < self.len && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn insert(&mut self, world: World) {
        let i = world.index();
        assert!(i < self.len, "world outside universe");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &WorldSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn and(mut self, other: &WorldSet) -> WorldSet {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self
    }

    pub fn or(mut self, other: &WorldSet) -> WorldSet {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self
    }

    pub fn complement(mut self) -> WorldSet {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self.clear_tail();
        self
    }

    /// Worlds in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = World> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(World((i * 64 + bit) as u64))
            })
        })
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|w| w.0)).finish()
    }
}
