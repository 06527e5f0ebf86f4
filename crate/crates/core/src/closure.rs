//! Polarity closure: `a ↦ a^⊥`, `a ↦ a^⊥⊥`, and the enumerated family of
//! closed sets.
//!
//! `a^⊥ = ∩_{p ∈ a} row(p)`, so every closed set is an intersection of
//! atom rows (or the whole carrier). [`enumerate_closed`] therefore builds
//! the intersection-closure of `{row(p)} ∪ {Σ}` directly instead of testing
//! all `2^n` subsets.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::Bits;
use crate::config::Limits;
use crate::error::{PlatError, Result};
use crate::orthospace::{CarrierId, OrthoSpace};

/// A subset of the atoms of one particular carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AtomSubset {
    carrier: CarrierId,
    bits: Bits,
}

impl AtomSubset {
    pub fn new(space: &OrthoSpace, atoms: impl IntoIterator<Item = usize>) -> Result<AtomSubset> {
        let bits = Bits::from_indices(atoms);
        if !bits.is_subset(&space.all()) {
            return Err(PlatError::IndexOutOfRange {
                index: bits.last().unwrap_or(0),
                size: space.size(),
                pair: 0,
            });
        }
        Ok(AtomSubset {
            carrier: space.carrier(),
            bits,
        })
    }

    pub(crate) fn from_bits(carrier: CarrierId, bits: Bits) -> AtomSubset {
        AtomSubset { carrier, bits }
    }

    pub fn empty(space: &OrthoSpace) -> AtomSubset {
        AtomSubset::from_bits(space.carrier(), Bits::EMPTY)
    }

    pub fn all(space: &OrthoSpace) -> AtomSubset {
        AtomSubset::from_bits(space.carrier(), space.all())
    }

    pub fn carrier(&self) -> CarrierId {
        self.carrier
    }

    pub fn bits(&self) -> Bits {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.bits.contains(atom)
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.bits.to_vec()
    }

    pub fn union(&self, other: &AtomSubset) -> Result<AtomSubset> {
        same_carrier(self.carrier, other.carrier)?;
        Ok(AtomSubset::from_bits(self.carrier, self.bits.or(&other.bits)))
    }

    pub fn intersection(&self, other: &AtomSubset) -> Result<AtomSubset> {
        same_carrier(self.carrier, other.carrier)?;
        Ok(AtomSubset::from_bits(self.carrier, self.bits.and(&other.bits)))
    }

    pub fn is_subset(&self, other: &AtomSubset) -> Result<bool> {
        same_carrier(self.carrier, other.carrier)?;
        Ok(self.bits.is_subset(&other.bits))
    }
}

fn same_carrier(a: CarrierId, b: CarrierId) -> Result<()> {
    if a != b {
        return Err(PlatError::CarrierMismatch);
    }
    Ok(())
}

/// `{q : q ⊥ p for all p ∈ a}`; `polar(∅) = Σ`.
pub fn polar(space: impl AsRef<OrthoSpace>, a: &AtomSubset) -> Result<AtomSubset> {
    let space = space.as_ref();
    same_carrier(space.carrier(), a.carrier)?;
    Ok(AtomSubset::from_bits(space.carrier(), polar_bits(space, &a.bits)))
}

pub fn biclosure(space: impl AsRef<OrthoSpace>, a: &AtomSubset) -> Result<AtomSubset> {
    let space = space.as_ref();
    same_carrier(space.carrier(), a.carrier)?;
    Ok(AtomSubset::from_bits(space.carrier(), biclosure_bits(space, &a.bits)))
}

#[inline]
pub fn polar_bits(space: &OrthoSpace, a: &Bits) -> Bits {
    let mut out = space.all();
    for p in a.iter() {
        out = out.and(&space.row(p));
        if out.is_empty() {
            break;
        }
    }
    out
}

#[inline]
pub fn biclosure_bits(space: &OrthoSpace, a: &Bits) -> Bits {
    polar_bits(space, &polar_bits(space, a))
}

#[inline]
pub fn is_closed_bits(space: &OrthoSpace, a: &Bits) -> bool {
    biclosure_bits(space, a) == *a
}

/// A finite p-lattice: an intersection-closed family of subsets of a
/// carrier containing the carrier itself, stored in canonical order
/// (cardinality, then lexicographic).
#[derive(Debug, Clone)]
pub struct ClosureSystem {
    carrier: CarrierId,
    size: usize,
    closed: Vec<Bits>,
    index: HashMap<Bits, usize>,
    /// `by_card[k]` is the position of the first set of cardinality `k`.
    by_card: Vec<usize>,
    polarity: Option<Arc<OrthoSpace>>,
}

impl PartialEq for ClosureSystem {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.closed == other.closed
    }
}

impl ClosureSystem {
    /// Intersection-closure of `generators ∪ {Σ}`.
    pub fn from_generators(
        carrier: CarrierId,
        size: usize,
        generators: impl IntoIterator<Item = Bits>,
        limits: &Limits,
    ) -> Result<ClosureSystem> {
        if size > limits.max_atoms {
            return Err(PlatError::TooManyAtoms {
                size,
                limit: limits.max_atoms,
            });
        }
        let full = Bits::full(size);
        let mut sets = vec![full];
        let mut seen: HashMap<Bits, usize> = HashMap::from([(full, 0)]);
        for g in generators {
            let g = g.and(&full);
            if seen.contains_key(&g) {
                continue;
            }
            let current = sets.len();
            for i in 0..current {
                let t = sets[i].and(&g);
                if !seen.contains_key(&t) {
                    seen.insert(t, sets.len());
                    sets.push(t);
                    if sets.len() > limits.max_closed_sets {
                        return Err(PlatError::TooManyClosedSets {
                            limit: limits.max_closed_sets,
                        });
                    }
                }
            }
        }
        Ok(ClosureSystem::from_sorted(carrier, size, sets, None))
    }

    fn from_sorted(
        carrier: CarrierId,
        size: usize,
        mut closed: Vec<Bits>,
        polarity: Option<Arc<OrthoSpace>>,
    ) -> ClosureSystem {
        closed.sort_by(|a, b| a.canonical_cmp(b));
        let index = closed.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut by_card = vec![closed.len(); size + 2];
        for (i, c) in closed.iter().enumerate().rev() {
            by_card[c.len()] = i;
        }
        for k in (0..=size).rev() {
            by_card[k] = by_card[k].min(by_card[k + 1]);
        }
        ClosureSystem {
            carrier,
            size,
            closed,
            index,
            by_card,
            polarity,
        }
    }

    pub fn carrier(&self) -> CarrierId {
        self.carrier
    }

    /// Number of atoms of the carrier.
    pub fn carrier_size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    /// Closed sets in canonical order.
    pub fn sets(&self) -> &[Bits] {
        &self.closed
    }

    pub fn subsets(&self) -> impl Iterator<Item = AtomSubset> + '_ {
        self.closed
            .iter()
            .map(|&b| AtomSubset::from_bits(self.carrier, b))
    }

    pub fn position(&self, a: &Bits) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn contains(&self, a: &Bits) -> bool {
        self.index.contains_key(a)
    }

    pub fn full(&self) -> Bits {
        Bits::full(self.size)
    }

    /// The relation this family was enumerated from, if any.
    pub fn polarity(&self) -> Option<&OrthoSpace> {
        self.polarity.as_deref()
    }

    /// Closed sets with cardinality strictly between `lo` and `hi`.
    pub fn between_cardinalities(&self, lo: usize, hi: usize) -> &[Bits] {
        if hi <= lo + 1 {
            return &[];
        }
        let start = self.by_card[(lo + 1).min(self.size + 1)];
        let end = self.by_card[hi.min(self.size + 1)];
        &self.closed[start..end]
    }

    /// Smallest member containing `a`.
    pub fn hull(&self, a: &Bits) -> Bits {
        if let Some(space) = &self.polarity {
            return biclosure_bits(space, a);
        }
        if self.contains(a) {
            return *a;
        }
        self.closed
            .iter()
            .filter(|c| a.is_subset(c))
            .fold(self.full(), |acc, c| acc.and(c))
    }

    /// Singletons present in the family, i.e. the lattice atoms when the
    /// family is atomistic.
    pub fn atoms(&self) -> Vec<Bits> {
        self.closed.iter().copied().filter(|c| c.len() == 1).collect()
    }

    /// Maximal proper members.
    pub fn coatoms(&self) -> Vec<Bits> {
        let full = self.full();
        self.closed
            .iter()
            .copied()
            .filter(|&c| c != full)
            .filter(|c| {
                !self
                    .between_cardinalities(c.len(), self.size)
                    .iter()
                    .any(|d| c.is_subset(d))
            })
            .collect()
    }

    pub(crate) fn check_closed(&self, a: &AtomSubset) -> Result<()> {
        same_carrier(self.carrier, a.carrier)?;
        if !self.contains(&a.bits) {
            return Err(PlatError::NotClosed(a.atoms()));
        }
        Ok(())
    }
}

/// The complete family `{a : a^⊥⊥ = a}` of a space, in canonical order.
pub fn enumerate_closed(space: impl AsRef<OrthoSpace>, limits: &Limits) -> Result<ClosureSystem> {
    let space = space.as_ref();
    let mut sys = ClosureSystem::from_generators(
        space.carrier(),
        space.size(),
        space.rows().iter().copied(),
        limits,
    )?;
    sys.polarity = Some(Arc::new(space.clone()));
    Ok(sys)
}

/// Intersection-closure of an arbitrary family over a carrier.
pub fn intersection_closure(
    space: &OrthoSpace,
    family: impl IntoIterator<Item = Bits>,
    limits: &Limits,
) -> Result<ClosureSystem> {
    ClosureSystem::from_generators(space.carrier(), space.size(), family, limits)
}

pub fn meet(sys: &ClosureSystem, a: &AtomSubset, b: &AtomSubset) -> Result<AtomSubset> {
    sys.check_closed(a)?;
    sys.check_closed(b)?;
    Ok(AtomSubset::from_bits(sys.carrier, a.bits.and(&b.bits)))
}

pub fn join(sys: &ClosureSystem, a: &AtomSubset, b: &AtomSubset) -> Result<AtomSubset> {
    sys.check_closed(a)?;
    sys.check_closed(b)?;
    Ok(AtomSubset::from_bits(
        sys.carrier,
        sys.hull(&a.bits.or(&b.bits)),
    ))
}

/// Whether `b` covers `a`: no closed set lies strictly between them.
pub fn covers(sys: &ClosureSystem, a: &AtomSubset, b: &AtomSubset) -> Result<bool> {
    sys.check_closed(a)?;
    sys.check_closed(b)?;
    if !a.bits.is_subset(&b.bits) {
        return Err(PlatError::NotSubset(a.atoms(), b.atoms()));
    }
    if a.bits == b.bits {
        return Ok(false);
    }
    Ok(covers_bits(sys, &a.bits, &b.bits))
}

pub(crate) fn covers_bits(sys: &ClosureSystem, a: &Bits, b: &Bits) -> bool {
    !sys
        .between_cardinalities(a.len(), b.len())
        .iter()
        .any(|c| a.is_subset(c) && c.is_subset(b))
}

/// Text dump: a header `clos <atoms> <count>` followed by one lowercase
/// hex bit-vector per closed set, in canonical order.
pub fn dump_closure(sys: &ClosureSystem) -> String {
    let mut out = format!("clos {} {}\n", sys.size, sys.len());
    for c in &sys.closed {
        out.push_str(&c.to_hex(sys.size));
        out.push('\n');
    }
    out
}

/// Parse a dump back into `(atoms, sets)`.
pub fn parse_closure_dump(text: &str) -> Result<(usize, Vec<Bits>)> {
    let malformed = |line: usize, message: &str| PlatError::Malformed {
        line,
        column: 1,
        message: message.to_string(),
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (size, count) = match fields.as_slice() {
        ["clos", n, c] => (
            n.parse::<usize>().map_err(|_| malformed(1, "bad atom count"))?,
            c.parse::<usize>().map_err(|_| malformed(1, "bad set count"))?,
        ),
        _ => return Err(malformed(1, "expected `clos <atoms> <count>`")),
    };
    let sets = lines
        .enumerate()
        .map(|(i, l)| Bits::from_hex(l.trim()).ok_or_else(|| malformed(i + 2, "bad hex")))
        .collect::<Result<Vec<_>>>()?;
    if sets.len() != count {
        return Err(malformed(1, "set count does not match header"));
    }
    Ok((size, sets))
}
