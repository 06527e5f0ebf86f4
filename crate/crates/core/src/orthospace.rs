//! Finite orthogonality spaces `(atoms, ⊥)`.
//!
//! Atoms are dense indices `0..size`; labels are display metadata. The
//! relation is stored as one bit-row per atom, `row(p) = {q : p ⊥ q}`.
//! Symmetry and anti-reflexivity hold for every space built by the
//! constructors in this crate, but [`OrthoSpace::from_directed`] accepts
//! arbitrary input so that [`validate_relation`] has something to reject.

use serde::{Deserialize, Serialize};

use crate::bitset::{Bits, MAX_ATOMS};
use crate::closure;
use crate::error::{PlatError, Result};
use crate::field::Gf;

/// Identity of an atom set. Two spaces share a carrier when they have the
/// same labels, whatever their relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CarrierId(u64);

impl CarrierId {
    fn of_labels(labels: &[String]) -> CarrierId {
        // FNV-1a over the length-prefixed labels.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        eat(&(labels.len() as u64).to_le_bytes());
        for l in labels {
            eat(&(l.len() as u64).to_le_bytes());
            eat(l.as_bytes());
        }
        CarrierId(h)
    }
}

#[derive(Debug, Clone)]
pub struct OrthoSpace {
    labels: Vec<String>,
    rows: Vec<Bits>,
    carrier: CarrierId,
}

impl PartialEq for OrthoSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.rows == other.rows
    }
}

impl Eq for OrthoSpace {}

impl AsRef<OrthoSpace> for OrthoSpace {
    fn as_ref(&self) -> &OrthoSpace {
        self
    }
}

impl OrthoSpace {
    /// Space with the relation given by unordered pairs, symmetrized.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<OrthoSpace> {
        let mut space = OrthoSpace::empty_relation(labels)?;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            space.check_index(i, k)?;
            space.check_index(j, k)?;
            space.rows[i].insert(j);
            space.rows[j].insert(i);
        }
        Ok(space)
    }

    /// Space with the relation taken literally: `(i, j)` sets `i ⊥ j` only.
    pub fn from_directed(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<OrthoSpace> {
        let mut space = OrthoSpace::empty_relation(labels)?;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            space.check_index(i, k)?;
            space.check_index(j, k)?;
            space.rows[i].insert(j);
        }
        Ok(space)
    }

    /// Space from explicit rows `rows[p] = {q : p ⊥ q}`.
    pub fn from_rows(labels: Vec<String>, rows: Vec<Bits>) -> Result<OrthoSpace> {
        let n = labels.len();
        if rows.len() != n {
            return Err(PlatError::InvalidRelation(format!(
                "{} rows for {n} atoms",
                rows.len()
            )));
        }
        let full = Bits::full(n);
        if let Some(p) = rows.iter().position(|r| !r.is_subset(&full)) {
            return Err(PlatError::InvalidRelation(format!(
                "row {p} mentions atoms beyond {n}"
            )));
        }
        let mut space = OrthoSpace::empty_relation(labels)?;
        space.rows = rows;
        Ok(space)
    }

    fn empty_relation(labels: Vec<String>) -> Result<OrthoSpace> {
        if labels.is_empty() {
            return Err(PlatError::EmptySpace);
        }
        if labels.len() > MAX_ATOMS {
            return Err(PlatError::TooManyAtoms {
                size: labels.len(),
                limit: MAX_ATOMS,
            });
        }
        let carrier = CarrierId::of_labels(&labels);
        Ok(OrthoSpace {
            rows: vec![Bits::EMPTY; labels.len()],
            labels,
            carrier,
        })
    }

    fn check_index(&self, i: usize, pair: usize) -> Result<()> {
        if i >= self.size() {
            return Err(PlatError::IndexOutOfRange {
                index: i,
                size: self.size(),
                pair,
            });
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn carrier(&self) -> CarrierId {
        self.carrier
    }

    pub fn all(&self) -> Bits {
        Bits::full(self.size())
    }

    #[inline]
    pub fn orth(&self, p: usize, q: usize) -> bool {
        self.rows[p].contains(q)
    }

    /// `{q : p ⊥ q}`.
    #[inline]
    pub fn row(&self, p: usize) -> Bits {
        self.rows[p]
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    /// Unordered pairs `i < j` with `i ⊥ j`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|i| self.rows[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    /// Same carrier, different relation.
    pub fn with_rows(&self, rows: Vec<Bits>) -> Result<OrthoSpace> {
        OrthoSpace::from_rows(self.labels.clone(), rows)
    }
}

/// `MO_n`: atoms `a1, a1', .., an, an'` with `ai ⊥ ai'` only.
pub fn make_mo(n: usize) -> Result<OrthoSpace> {
    if n == 0 {
        return Err(PlatError::EmptySpace);
    }
    let labels = (1..=n)
        .flat_map(|i| [format!("a{i}"), format!("a{i}'")])
        .collect();
    let pairs: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    OrthoSpace::from_pairs(labels, &pairs)
}

/// `n` atoms with `p ⊥ q ⇔ p ≠ q`; every subset is closed.
pub fn make_powerset_space(n: usize) -> Result<OrthoSpace> {
    if n == 0 {
        return Err(PlatError::EmptySpace);
    }
    let labels = (0..n).map(|i| format!("s{i}")).collect();
    let full = Bits::full(n);
    let rows = (0..n).map(|p| full.minus(&Bits::singleton(p))).collect();
    OrthoSpace::from_rows(labels, rows)
}

/// Projective line over GF(q) with `u ⊥ v ⇔ u₁v₁ + λu₂v₂ = 0`.
///
/// The form must be anisotropic, otherwise some point is orthogonal to
/// itself; the first isotropic vector found is returned in the error.
pub fn make_quadratic_line_space(q: u32, lambda: u32) -> Result<OrthoSpace> {
    let field = quadratic_field(q, lambda)?;
    let points = field.projective_points(2);
    let labels = points.iter().map(|v| point_label(v)).collect();
    let form = |u: &[u32], v: &[u32]| {
        field.add(field.mul(u[0], v[0]), field.mul(lambda, field.mul(u[1], v[1])))
    };
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if form(&points[i], &points[j]) == 0 {
                pairs.push((i, j));
            }
        }
    }
    OrthoSpace::from_pairs(labels, &pairs)
}

/// Field for an anisotropic binary form `x² + λy²` over GF(q), q odd.
pub(crate) fn quadratic_field(q: u32, lambda: u32) -> Result<Gf> {
    let field = Gf::new(q)?;
    if field.characteristic() == 2 {
        return Err(PlatError::InvalidField(format!(
            "even order {q}: the form is alternating in characteristic 2"
        )));
    }
    if lambda >= q || lambda == 0 {
        return Err(PlatError::InvalidField(format!(
            "lambda {lambda} is not a nonzero element of GF({q})"
        )));
    }
    for x in 0..q {
        for y in 0..q {
            if (x, y) != (0, 0) {
                let norm = field.add(field.mul(x, x), field.mul(lambda, field.mul(y, y)));
                if norm == 0 {
                    return Err(PlatError::IsotropicForm(x as usize, y as usize));
                }
            }
        }
    }
    Ok(field)
}

pub(crate) fn point_label(v: &[u32]) -> String {
    let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", coords.join(":"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn from_witness(witness: Option<W>) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub anti_reflexive: Verdict<usize>,
    pub symmetric: Verdict<(usize, usize)>,
    pub separating: Verdict<usize>,
}

impl RelationReport {
    pub fn is_orthogonality(&self) -> bool {
        self.anti_reflexive.holds && self.symmetric.holds && self.separating.holds
    }
}

/// Exhaustive check of the three orthogonality laws, with
/// lexicographically minimal witnesses.
pub fn validate_relation(space: &OrthoSpace) -> RelationReport {
    let n = space.size();
    let anti_reflexive = (0..n).find(|&p| space.orth(p, p));
    let symmetric = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .find(|&(p, q)| space.orth(p, q) != space.orth(q, p));
    let separating = (0..n).find(|&p| {
        let single = Bits::singleton(p);
        closure::biclosure_bits(space, &single) != single
    });
    RelationReport {
        anti_reflexive: Verdict::from_witness(anti_reflexive),
        symmetric: Verdict::from_witness(symmetric),
        separating: Verdict::from_witness(separating),
    }
}

/// Errors unless the relation is symmetric and anti-reflexive.
pub(crate) fn require_symmetric(space: &OrthoSpace, what: &str) -> Result<()> {
    let n = space.size();
    if let Some(p) = (0..n).find(|&p| space.orth(p, p)) {
        return Err(PlatError::InvalidRelation(format!(
            "{what}: atom {p} is orthogonal to itself"
        )));
    }
    for p in 0..n {
        if let Some(q) = space.row(p).iter().find(|&q| !space.orth(q, p)) {
            return Err(PlatError::InvalidRelation(format!(
                "{what}: {p} ⊥ {q} but not {q} ⊥ {p}"
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    atoms: Vec<String>,
    orth: Vec<[usize; 2]>,
}

/// Canonical space document: `{"atoms":[..],"orth":[[i,j],..]}`, each
/// unordered pair once with `i < j`, pairs in lexicographic order.
///
/// Relations that are not symmetric or anti-reflexive are not
/// representable; those pairs are dumped from their lower index side only.
pub fn dump_space(space: &OrthoSpace) -> String {
    let doc = SpaceDoc {
        atoms: space.labels.clone(),
        orth: space.pairs().into_iter().map(|(i, j)| [i, j]).collect(),
    };
    serde_json::to_string(&doc).expect("space documents always serialize")
}

pub fn load_space(text: &str) -> Result<OrthoSpace> {
    let doc: SpaceDoc = serde_json::from_str(text).map_err(|e| PlatError::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = doc.atoms.len();
    let mut seen = std::collections::HashSet::new();
    let mut pairs = Vec::with_capacity(doc.orth.len());
    for (k, &[i, j]) in doc.orth.iter().enumerate() {
        for idx in [i, j] {
            if idx >= n {
                return Err(PlatError::IndexOutOfRange {
                    index: idx,
                    size: n,
                    pair: k,
                });
            }
        }
        if i >= j {
            return Err(PlatError::NonCanonicalPair(i, j));
        }
        if !seen.insert((i, j)) {
            return Err(PlatError::DuplicatePair(i, j));
        }
        pairs.push((i, j));
    }
    OrthoSpace::from_pairs(doc.atoms, &pairs)
}
