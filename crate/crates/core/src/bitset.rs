//! Fixed-width bit vectors over atom indices.
//!
//! Every subset in the crate is a [`Bits`] value: four 64-bit words, so a
//! carrier can hold at most [`MAX_ATOMS`] atoms. The type is `Copy` and
//! hashes cheaply, which keeps closure enumeration and backtracking
//! searches allocation-free in their inner loops.

use std::cmp::Ordering;
use std::fmt;

const WORDS: usize = 4;

/// Hard ceiling on the number of atoms of any carrier.
pub const MAX_ATOMS: usize = WORDS * 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bits([u64; WORDS]);

impl Bits {
    pub const EMPTY: Bits = Bits([0; WORDS]);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Bits {
        assert!(n <= MAX_ATOMS, "carrier of {n} atoms exceeds {MAX_ATOMS}");
        let mut words = [0u64; WORDS];
        for (i, w) in words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        Bits(words)
    }

    pub fn singleton(i: usize) -> Bits {
        let mut b = Bits::EMPTY;
        b.insert(i);
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Bits {
        let mut b = Bits::EMPTY;
        for i in iter {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_ATOMS);
        self.0[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn and(&self, other: &Bits) -> Bits {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a &= b;
        }
        out
    }

    #[inline]
    pub fn or(&self, other: &Bits) -> Bits {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a |= b;
        }
        out
    }

    /// `self \ other`.
    #[inline]
    pub fn minus(&self, other: &Bits) -> Bits {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a &= !b;
        }
        out
    }

    #[inline]
    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Largest member, if any.
    pub fn last(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> BitsIter {
        BitsIter { words: self.0, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under an atom map.
    pub fn map(&self, perm: &[usize]) -> Bits {
        Bits::from_indices(self.iter().map(|i| perm[i]))
    }

    /// Preimage of the set under an atom map defined on `0..perm.len()`.
    pub fn preimage(&self, map: &[usize]) -> Bits {
        Bits::from_indices((0..map.len()).filter(|&i| self.contains(map[i])))
    }

    /// Lowercase hex with bit `i` as the `i`-th least significant bit,
    /// zero-padded to `ceil(n / 4)` digits.
    pub fn to_hex(&self, n: usize) -> String {
        let digits = n.div_ceil(4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let nibble = (self.0[bit / 64] >> (bit % 64)) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(s: &str) -> Option<Bits> {
        if s.is_empty() || s.len() > MAX_ATOMS / 4 {
            return None;
        }
        let mut b = Bits::EMPTY;
        for (d, c) in s.chars().rev().enumerate() {
            let v = c.to_digit(16)? as u64;
            let bit = d * 4;
            b.0[bit / 64] |= v << (bit % 64);
        }
        Some(b)
    }

    /// Canonical order: by cardinality, then lexicographically on the
    /// ascending index sequence (so `{0,1} < {0,2} < {1,2}`).
    pub fn canonical_cmp(&self, other: &Bits) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.lex_cmp(other))
    }

    /// Lexicographic comparison of the ascending index sequences of two
    /// equal-size sets.
    pub fn lex_cmp(&self, other: &Bits) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Bits {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Bits::from_indices(iter)
    }
}

pub struct BitsIter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for BitsIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let tz = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
        }
        None
    }
}
