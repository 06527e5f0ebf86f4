//! Products of orthogonality spaces, the separated product, and the
//! independence axioms P1–P5 and P4*.
//!
//! A product atom `(i, j)` is encoded as `i·|Σ₂| + j`. For factor atoms
//! `p = (p₁, p₂)` the sharp coatom is `p^# = p₁^⊥ × Σ₂ ∪ Σ₁ × p₂^⊥`, and the
//! separated product is the closure system of the relation
//! `p # q ⇔ p₁ ⊥ q₁ or p₂ ⊥ q₂`.
//!
//! Every axiom check works from biclosures of the candidate relation and
//! never enumerates the product lattice: a bijection maps the closed
//! family into itself exactly when it maps every atom polar to a closed
//! set, since closed sets are intersections of atom polars.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::Bits;
use crate::closure::{
    biclosure_bits, enumerate_closed, is_closed_bits, polar_bits, AtomSubset, ClosureSystem,
};
use crate::config::Limits;
use crate::error::{PlatError, Result};
use crate::lattice::{automorphisms, is_permutation, AutMode, Permutation, PermutationGroup};
use crate::orthospace::{require_symmetric, validate_relation, OrthoSpace};

/// Atom space `Σ₁ × Σ₂` carrying an active relation.
#[derive(Debug, Clone)]
pub struct ProductSpace {
    left: Arc<OrthoSpace>,
    right: Arc<OrthoSpace>,
    space: OrthoSpace,
    sharp: bool,
}

impl AsRef<OrthoSpace> for ProductSpace {
    fn as_ref(&self) -> &OrthoSpace {
        &self.space
    }
}

impl ProductSpace {
    /// Product with an explicit relation (`rows[p] = {q : p ⊥ q}`), which
    /// must be symmetric and anti-reflexive.
    pub fn with_relation(
        left: &OrthoSpace,
        right: &OrthoSpace,
        rows: Vec<Bits>,
    ) -> Result<ProductSpace> {
        let size = left.size() * right.size();
        if size > crate::bitset::MAX_ATOMS {
            return Err(PlatError::TooManyAtoms {
                size,
                limit: crate::bitset::MAX_ATOMS,
            });
        }
        let space = OrthoSpace::from_rows(product_labels(left, right), rows)?;
        require_symmetric(&space, "product relation")?;
        let sharp = space.rows() == sharp_rows(left, right).as_slice();
        Ok(ProductSpace {
            left: Arc::new(left.clone()),
            right: Arc::new(right.clone()),
            space,
            sharp,
        })
    }

    pub fn left(&self) -> &OrthoSpace {
        &self.left
    }

    pub fn right(&self) -> &OrthoSpace {
        &self.right
    }

    /// The product atoms with the active relation.
    pub fn space(&self) -> &OrthoSpace {
        &self.space
    }

    pub fn size(&self) -> usize {
        self.space.size()
    }

    /// Whether the active relation is exactly `#`.
    pub fn is_sharp(&self) -> bool {
        self.sharp
    }

    #[inline]
    pub fn encode(&self, i: usize, j: usize) -> usize {
        i * self.right.size() + j
    }

    #[inline]
    pub fn decode(&self, p: usize) -> (usize, usize) {
        (p / self.right.size(), p % self.right.size())
    }

    /// `a × Σ₂`.
    pub fn left_cylinder(&self, a: &Bits) -> Bits {
        let n2 = self.right.size();
        Bits::from_indices(a.iter().flat_map(|i| (0..n2).map(move |j| i * n2 + j)))
    }

    /// `Σ₁ × a`.
    pub fn right_cylinder(&self, a: &Bits) -> Bits {
        let n2 = self.right.size();
        Bits::from_indices((0..self.left.size()).flat_map(|i| a.iter().map(move |j| i * n2 + j)))
    }

    /// `a × b`.
    pub fn rectangle(&self, a: &Bits, b: &Bits) -> Bits {
        self.left_cylinder(a).and(&self.right_cylinder(b))
    }

    /// `p^# = p₁^⊥ × Σ₂ ∪ Σ₁ × p₂^⊥`, whatever the active relation.
    pub fn sharp_coatom(&self, p: usize) -> Bits {
        let (i, j) = self.decode(p);
        self.left_cylinder(&self.left.row(i))
            .or(&self.right_cylinder(&self.right.row(j)))
    }

    /// Same factors, relation replaced.
    pub fn with_rows(&self, rows: Vec<Bits>) -> Result<ProductSpace> {
        ProductSpace::with_relation(&self.left, &self.right, rows)
    }
}

fn product_labels(left: &OrthoSpace, right: &OrthoSpace) -> Vec<String> {
    left.labels()
        .iter()
        .flat_map(|a| right.labels().iter().map(move |b| format!("({a},{b})")))
        .collect()
}

fn sharp_rows(left: &OrthoSpace, right: &OrthoSpace) -> Vec<Bits> {
    let (n1, n2) = (left.size(), right.size());
    let mut rows = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            let row = Bits::from_indices((0..n1 * n2).filter(|&q| {
                let (qi, qj) = (q / n2, q % n2);
                left.orth(i, qi) || right.orth(j, qj)
            }));
            rows.push(row);
        }
    }
    rows
}

/// Product space whose relation is `#`.
pub fn sharp(left: &OrthoSpace, right: &OrthoSpace) -> Result<ProductSpace> {
    require_symmetric(left, "left factor")?;
    require_symmetric(right, "right factor")?;
    ProductSpace::with_relation(left, right, sharp_rows(left, right))
}

pub fn separated_product(
    left: &OrthoSpace,
    right: &OrthoSpace,
    limits: &Limits,
) -> Result<(ProductSpace, ClosureSystem)> {
    let prod = sharp(left, right)?;
    let sys = enumerate_closed(&prod, limits)?;
    Ok((prod, sys))
}

/// The sharp coatom of `p`; only defined when the relation is `#`.
pub fn p_sharp(prod: &ProductSpace, p: usize) -> Result<AtomSubset> {
    if !prod.is_sharp() {
        return Err(PlatError::NotSharp);
    }
    if p >= prod.size() {
        return Err(PlatError::IndexOutOfRange {
            index: p,
            size: prod.size(),
            pair: 0,
        });
    }
    AtomSubset::new(prod.space(), prod.sharp_coatom(p).iter())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    /// Factor closed sets whose cylinder union is not closed.
    CylinderUnion { a1: Vec<usize>, a2: Vec<usize> },
    /// A non-closed factor set whose cylinder is closed.
    Cylinder { side: u8, a: Vec<usize> },
    /// A product atom (e.g. whose sharp coatom is not closed).
    Atom { p: usize },
    /// `q ∈ p^#` but not `p ⊥ q`.
    Pair { p: usize, q: usize },
    /// A lifted map `u₁ × u₂` sending the polar of `p` outside the family
    /// (P4) or not onto the polar of its image (P4*).
    Map {
        u1: Permutation,
        u2: Permutation,
        p: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub witness: Option<AxiomWitness>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub vacuous: bool,
}

impl AxiomVerdict {
    fn from_witness(witness: Option<AxiomWitness>) -> Self {
        AxiomVerdict {
            holds: witness.is_none(),
            witness,
            vacuous: false,
        }
    }

    fn vacuous() -> Self {
        AxiomVerdict {
            holds: false,
            witness: None,
            vacuous: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    #[serde(rename = "P1")]
    pub p1: AxiomVerdict,
    /// Cylinder-union form.
    #[serde(rename = "P2")]
    pub p2: AxiomVerdict,
    /// Coatom form: every sharp coatom is closed.
    #[serde(rename = "P2_coatom")]
    pub p2_coatom: AxiomVerdict,
    #[serde(rename = "P3")]
    pub p3: AxiomVerdict,
    #[serde(rename = "P4")]
    pub p4: AxiomVerdict,
    #[serde(rename = "P5")]
    pub p5: AxiomVerdict,
    #[serde(rename = "P4star")]
    pub p4_star: AxiomVerdict,
    pub separating: AxiomVerdict,
    pub w1_inverse_closed: bool,
    pub w2_inverse_closed: bool,
}

impl AxiomReport {
    /// Names of the failing axioms among separating, P2, P3, P4.
    pub fn structural_failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.separating.holds {
            out.push("separating");
        }
        if !self.p2.holds {
            out.push("P2");
        }
        if !self.p3.holds {
            out.push("P3");
        }
        if !self.p4.holds {
            out.push("P4");
        }
        out
    }
}

/// Largest factor for which P3 is checked over all factor subsets.
const P3_MAX_FACTOR: usize = 24;

/// Decide P1–P5 and P4* for the relation of `prod` against the factor
/// systems `l1`, `l2` and automorphism sets `w1`, `w2`.
pub fn check_axioms(
    prod: &ProductSpace,
    l1: &ClosureSystem,
    l2: &ClosureSystem,
    w1: &PermutationGroup,
    w2: &PermutationGroup,
) -> Result<AxiomReport> {
    if l1.carrier() != prod.left.carrier() || l2.carrier() != prod.right.carrier() {
        return Err(PlatError::CarrierMismatch);
    }
    if w1.degree() != prod.left.size() || w2.degree() != prod.right.size() {
        return Err(PlatError::NotPermutation {
            degree: prod.left.size(),
            map: Vec::new(),
        });
    }
    if prod.left.size().max(prod.right.size()) > P3_MAX_FACTOR {
        return Err(PlatError::TooManyAtoms {
            size: prod.left.size().max(prod.right.size()),
            limit: P3_MAX_FACTOR,
        });
    }
    let space = prod.space();
    let n = prod.size();

    let p2 = l1
        .sets()
        .iter()
        .flat_map(|a1| l2.sets().iter().map(move |a2| (a1, a2)))
        .find(|(a1, a2)| {
            let u = prod.left_cylinder(a1).or(&prod.right_cylinder(a2));
            !is_closed_bits(space, &u)
        })
        .map(|(a1, a2)| AxiomWitness::CylinderUnion {
            a1: a1.to_vec(),
            a2: a2.to_vec(),
        });

    let p2_coatom = (0..n)
        .find(|&p| !is_closed_bits(space, &prod.sharp_coatom(p)))
        .map(|p| AxiomWitness::Atom { p });

    let p3 = cylinder_reflection(prod, l1, 1).or_else(|| cylinder_reflection(prod, l2, 2));

    let p5 = (0..n).find_map(|p| {
        prod.sharp_coatom(p)
            .minus(&space.row(p))
            .first()
            .map(|q| AxiomWitness::Pair { p, q })
    });

    let pairs: Vec<(&Permutation, &Permutation)> = w1
        .elements()
        .iter()
        .flat_map(|u1| w2.elements().iter().map(move |u2| (u1, u2)))
        .collect();
    let (p4, p4_star) = if pairs.is_empty() {
        (AxiomVerdict::vacuous(), AxiomVerdict::vacuous())
    } else {
        let lifted: Vec<Permutation> = pairs
            .iter()
            .map(|(u1, u2)| lift_unchecked(prod, u1, u2))
            .collect();
        let p4 = pairs
            .par_iter()
            .zip(lifted.par_iter())
            .find_map_first(|((u1, u2), u)| {
                (0..n)
                    .find(|&p| !is_closed_bits(space, &space.row(p).map(u)))
                    .map(|p| AxiomWitness::Map {
                        u1: (*u1).clone(),
                        u2: (*u2).clone(),
                        p,
                    })
            });
        let commute = pairs
            .par_iter()
            .zip(lifted.par_iter())
            .find_map_first(|((u1, u2), u)| {
                (0..n)
                    .find(|&p| space.row(p).map(u) != space.row(u[p]))
                    .map(|p| AxiomWitness::Map {
                        u1: (*u1).clone(),
                        u2: (*u2).clone(),
                        p,
                    })
            });
        let star = p4.clone().or(commute);
        (AxiomVerdict::from_witness(p4), AxiomVerdict::from_witness(star))
    };

    let separating = validate_relation(space)
        .separating
        .witness
        .map(|p| AxiomWitness::Atom { p });

    Ok(AxiomReport {
        p1: AxiomVerdict::from_witness(None),
        p2: AxiomVerdict::from_witness(p2),
        p2_coatom: AxiomVerdict::from_witness(p2_coatom),
        p3: AxiomVerdict::from_witness(p3),
        p4,
        p5: AxiomVerdict::from_witness(p5),
        p4_star,
        separating: AxiomVerdict::from_witness(separating),
        w1_inverse_closed: w1.is_inverse_closed(),
        w2_inverse_closed: w2.is_inverse_closed(),
    })
}

/// First factor subset (canonical order) whose cylinder is closed in the
/// product but which is not closed in its factor.
fn cylinder_reflection(prod: &ProductSpace, factor: &ClosureSystem, side: u8) -> Option<AxiomWitness> {
    let k = factor.carrier_size();
    let mut subsets: Vec<Bits> = (0u64..1 << k)
        .map(|mask| Bits::from_indices((0..k).filter(|i| mask >> i & 1 == 1)))
        .collect();
    subsets.sort_by(|a, b| a.canonical_cmp(b));
    subsets.into_iter().find_map(|a| {
        let cyl = if side == 1 {
            prod.left_cylinder(&a)
        } else {
            prod.right_cylinder(&a)
        };
        (is_closed_bits(prod.space(), &cyl) && !factor.contains(&a)).then(|| {
            AxiomWitness::Cylinder {
                side,
                a: a.to_vec(),
            }
        })
    })
}

/// Ortho-automorphism group of a factor, the default `Wᵢ`.
pub fn factor_automorphisms(factor: &OrthoSpace, limits: &Limits) -> Result<PermutationGroup> {
    let sys = enumerate_closed(factor, limits)?;
    automorphisms(factor, &sys, AutMode::Ortho, None, limits)
}

/// Components of the polar of `p` that are full cylinders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashComponents {
    /// `{q₁ : q₁ × Σ₂ ⊆ p^⊥}`.
    pub left: Bits,
    /// `{q₂ : Σ₁ × q₂ ⊆ p^⊥}`.
    pub right: Bits,
    /// `|{q : q^# ⊆ p^⊥}|`.
    pub lower_count: usize,
}

pub fn p_hash_components(prod: &ProductSpace, p: usize) -> HashComponents {
    let perp = prod.space().row(p);
    let left = Bits::from_indices(
        (0..prod.left.size()).filter(|&i| prod.left_cylinder(&Bits::singleton(i)).is_subset(&perp)),
    );
    let right = Bits::from_indices(
        (0..prod.right.size())
            .filter(|&j| prod.right_cylinder(&Bits::singleton(j)).is_subset(&perp)),
    );
    let lower_count = (0..prod.size())
        .filter(|&q| prod.sharp_coatom(q).is_subset(&perp))
        .count();
    HashComponents {
        left,
        right,
        lower_count,
    }
}

/// `(p₁, p₂) ↦ (u₁(p₁), u₂(p₂))`.
pub fn lift_product_map(prod: &ProductSpace, u1: &[usize], u2: &[usize]) -> Result<Permutation> {
    for (u, degree) in [(u1, prod.left.size()), (u2, prod.right.size())] {
        if !is_permutation(u, degree) {
            return Err(PlatError::NotPermutation {
                degree,
                map: u.to_vec(),
            });
        }
    }
    Ok(lift_unchecked(prod, u1, u2))
}

fn lift_unchecked(prod: &ProductSpace, u1: &[usize], u2: &[usize]) -> Permutation {
    (0..prod.size())
        .map(|p| {
            let (i, j) = prod.decode(p);
            prod.encode(u1[i], u2[j])
        })
        .collect()
}

/// Join-preserving lift of an atom map, as positions in the target
/// system indexed by positions in the source system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    pub images: Vec<usize>,
}

impl LatticeMap {
    pub fn apply<'a>(&self, source: &ClosureSystem, target: &'a ClosureSystem, a: &Bits) -> Option<&'a Bits> {
        source.position(a).map(|i| &target.sets()[self.images[i]])
    }
}

/// Lift `f : Σ₁ → Σ₂` to `g(a) = ∨ f(a)` after checking that the preimage
/// of every closed target set is closed.
pub fn daniel_lift(f: &[usize], source: &ClosureSystem, target: &ClosureSystem) -> Result<LatticeMap> {
    if f.len() != source.carrier_size() || f.iter().any(|&x| x >= target.carrier_size()) {
        return Err(PlatError::InvalidData(format!(
            "atom map {f:?} is not a total map from {} to {} atoms",
            source.carrier_size(),
            target.carrier_size()
        )));
    }
    if let Some((b, pre)) = target
        .sets()
        .iter()
        .map(|b| (b, b.preimage(f)))
        .find(|(_, pre)| !source.contains(pre))
    {
        return Err(PlatError::LiftCondition {
            closed: b.to_vec(),
            preimage: pre.to_vec(),
        });
    }
    let images: Vec<usize> = source
        .sets()
        .iter()
        .map(|a| {
            let image = target.hull(&a.map(f));
            target.position(&image).expect("hulls are closed")
        })
        .collect();
    let map = LatticeMap { images };
    if let Some((a, b)) = first_join_violation(&map, source, target) {
        return Err(PlatError::InvalidData(format!(
            "lift fails to preserve the join of {a:?} and {b:?}"
        )));
    }
    for p in 0..f.len() {
        let single = source.hull(&Bits::singleton(p));
        let image = map.apply(source, target, &single).expect("closed");
        if !image.contains(f[p]) {
            return Err(PlatError::InvalidData(format!(
                "lift of atom {p} misses its image {}",
                f[p]
            )));
        }
    }
    Ok(map)
}

/// First pair of closed sets (canonical order) with `g(a ∨ b) ≠ g(a) ∨ g(b)`.
pub fn first_join_violation(
    map: &LatticeMap,
    source: &ClosureSystem,
    target: &ClosureSystem,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let s = source.sets();
    let t = target.sets();
    for (i, a) in s.iter().enumerate() {
        for (j, b) in s.iter().enumerate().skip(i) {
            let ab = source.position(&source.hull(&a.or(b))).expect("closed");
            let lhs = t[map.images[ab]];
            let rhs = target.hull(&t[map.images[i]].or(&t[map.images[j]]));
            if lhs != rhs {
                return Some((a.to_vec(), b.to_vec()));
            }
        }
    }
    None
}

/// Source of extra product orthogonalities `E` (unordered pairs) for the
/// perturbation test.
pub trait PairSampler: Sync {
    fn sample(&self, prod: &ProductSpace, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)>;
}

/// One or two distinct unordered pairs outside `#`, uniformly.
#[derive(Debug, Clone, Copy, Default)]
pub struct SmallPairSampler;

impl PairSampler for SmallPairSampler {
    fn sample(&self, prod: &ProductSpace, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
        let candidates = non_sharp_pairs(prod);
        if candidates.is_empty() {
            return Vec::new();
        }
        let k = rng.gen_range(1..=2usize).min(candidates.len());
        candidates.choose_multiple(rng, k).copied().collect()
    }
}

/// Unordered pairs `p < q` with `not p # q`.
pub fn non_sharp_pairs(prod: &ProductSpace) -> Vec<(usize, usize)> {
    let n = prod.size();
    (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .filter(|&(p, q)| !prod.sharp_coatom(p).contains(q))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationSummary {
    pub trials: usize,
    pub failing_trials: usize,
    pub empty_samples: usize,
    pub failures_by_axiom: BTreeMap<String, usize>,
    pub theorem_contradictions: usize,
    pub seed: u64,
}

/// `p^{#⊥} = {p}` for every atom.
pub fn sharp_polar_is_singleton(prod: &ProductSpace) -> Option<usize> {
    (0..prod.size()).find(|&p| polar_bits(prod.space(), &prod.sharp_coatom(p)) != Bits::singleton(p))
}

/// Perturb `#` by sampled extra pairs and confirm each perturbation breaks
/// separation or one of P2–P4 (with `Wᵢ` the factor ortho-automorphisms).
pub fn perturbation_test(
    left: &OrthoSpace,
    right: &OrthoSpace,
    sampler: &dyn PairSampler,
    trials: usize,
    seed: u64,
    limits: &Limits,
) -> Result<PerturbationSummary> {
    if trials == 0 {
        return Err(PlatError::Config("trials must be at least 1".into()));
    }
    let base = sharp(left, right)?;
    let l1 = enumerate_closed(left, limits)?;
    let l2 = enumerate_closed(right, limits)?;
    let w1 = automorphisms(left, &l1, AutMode::Ortho, None, limits)?;
    let w2 = automorphisms(right, &l2, AutMode::Ortho, None, limits)?;

    let outcomes: Vec<Result<(bool, Vec<&'static str>, bool)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let extra = sampler.sample(&base, &mut rng);
            let mut rows = base.space().rows().to_vec();
            for &(p, q) in &extra {
                if p == q || p >= base.size() || q >= base.size() {
                    return Err(PlatError::InvalidData(format!(
                        "sampled pair ({p}, {q}) is not a pair of distinct atoms"
                    )));
                }
                if base.sharp_coatom(p).contains(q) {
                    return Err(PlatError::InvalidData(format!(
                        "sampled pair ({p}, {q}) already lies in the sharp relation"
                    )));
                }
                rows[p].insert(q);
                rows[q].insert(p);
            }
            let prod = base.with_rows(rows)?;
            let report = check_axioms(&prod, &l1, &l2, &w1, &w2)?;
            let failures = report.structural_failures();
            let contradiction = failures.is_empty()
                && (!extra.is_empty() || sharp_polar_is_singleton(&prod).is_some());
            Ok((extra.is_empty(), failures, contradiction))
        })
        .collect();

    let mut summary = PerturbationSummary {
        trials,
        failing_trials: 0,
        empty_samples: 0,
        failures_by_axiom: ["separating", "P2", "P3", "P4"]
            .iter()
            .map(|k| (k.to_string(), 0))
            .collect(),
        theorem_contradictions: 0,
        seed,
    };
    for outcome in outcomes {
        let (empty, failures, contradiction) = outcome?;
        if empty {
            summary.empty_samples += 1;
            if !failures.is_empty() {
                summary.theorem_contradictions += 1;
            }
        }
        if !failures.is_empty() {
            summary.failing_trials += 1;
        }
        for f in failures {
            *summary.failures_by_axiom.get_mut(f).unwrap() += 1;
        }
        if contradiction {
            summary.theorem_contradictions += 1;
        }
    }
    Ok(summary)
}

/// First atom where `(p^#)^⊥⊥ ⊄ p^#` fails to hold, if any; when none, the
/// relation is separating.
pub fn sharp_biclosure_excess(prod: &ProductSpace) -> Option<usize> {
    (0..prod.size()).find(|&p| {
        let coatom = prod.sharp_coatom(p);
        !biclosure_bits(prod.space(), &coatom).is_subset(&coatom)
    })
}

/// Whether both cylinder components of every atom polar are closed in
/// their factors.
pub fn hash_components_closed(prod: &ProductSpace, l1: &ClosureSystem, l2: &ClosureSystem) -> bool {
    (0..prod.size()).all(|p| {
        let h = p_hash_components(prod, p);
        l1.contains(&h.left) && l2.contains(&h.right)
    })
}

/// Lift every pair of group elements.
pub fn lifted_group(prod: &ProductSpace, w1: &PermutationGroup, w2: &PermutationGroup) -> Vec<Permutation> {
    w1.elements()
        .iter()
        .flat_map(|u1| w2.elements().iter().map(move |u2| lift_unchecked(prod, u1, u2)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthospace::{make_mo, make_powerset_space};

    fn mo2_product() -> (ProductSpace, ClosureSystem) {
        let mo = make_mo(2).unwrap();
        separated_product(&mo, &mo, &Limits::default()).unwrap()
    }

    #[test]
    fn sharp_relation_examples() {
        let mo = make_mo(2).unwrap();
        let prod = sharp(&mo, &mo).unwrap();
        // (a1,b1) vs (a1',b2)
        assert!(prod.space().orth(prod.encode(0, 0), prod.encode(1, 2)));
        // (a1,b1) vs (a2,b2)
        assert!(!prod.space().orth(prod.encode(0, 0), prod.encode(2, 2)));
        assert!(prod.is_sharp());
        assert!(validate_relation(prod.space()).is_orthogonality());

        let ps = make_powerset_space(2).unwrap();
        let bool_prod = sharp(&ps, &ps).unwrap();
        for p in 0..4 {
            for q in 0..4 {
                assert_eq!(bool_prod.space().orth(p, q), p != q);
            }
        }
    }

    #[test]
    fn sharp_rejects_invalid_factor() {
        let bad = OrthoSpace::from_directed(vec!["x".into(), "y".into()], &[(0, 1)]).unwrap();
        assert!(matches!(
            sharp(&bad, &make_mo(1).unwrap()),
            Err(PlatError::InvalidRelation(_))
        ));
    }

    #[test]
    fn p_sharp_examples() {
        let (prod, _) = mo2_product();
        assert_eq!(p_sharp(&prod, 0).unwrap().len(), 7);
        let mo1 = make_mo(1).unwrap();
        let small = sharp(&mo1, &mo1).unwrap();
        // (a1,b1) -> {(a1',b1), (a1,b1'), (a1',b1')}
        assert_eq!(p_sharp(&small, 0).unwrap().atoms(), vec![1, 2, 3]);
        let ps = make_powerset_space(2).unwrap();
        let bp = sharp(&ps, &ps).unwrap();
        assert_eq!(p_sharp(&bp, 2).unwrap().atoms(), vec![0, 1, 3]);

        let mut rows = prod.space().rows().to_vec();
        rows[0].insert(10);
        rows[10].insert(0);
        let perturbed = prod.with_rows(rows).unwrap();
        assert_eq!(p_sharp(&perturbed, 0), Err(PlatError::NotSharp));
    }

    #[test]
    fn with_relation_rejects_asymmetric_rows() {
        let mo = make_mo(1).unwrap();
        let mut rows = vec![Bits::EMPTY; 4];
        rows[0].insert(1);
        assert!(ProductSpace::with_relation(&mo, &mo, rows).is_err());
    }

    #[test]
    fn separated_product_axioms_hold() {
        let mo = make_mo(2).unwrap();
        let limits = Limits::default();
        let (prod, sys) = separated_product(&mo, &mo, &limits).unwrap();
        assert_eq!(sys.len(), 114);
        let l = enumerate_closed(&mo, &limits).unwrap();
        let w = factor_automorphisms(&mo, &limits).unwrap();
        let r = check_axioms(&prod, &l, &l, &w, &w).unwrap();
        for v in [&r.p1, &r.p2, &r.p2_coatom, &r.p3, &r.p4, &r.p5, &r.p4_star, &r.separating] {
            assert!(v.holds, "{r:?}");
        }
        assert!(r.w1_inverse_closed && r.w2_inverse_closed);
    }

    #[test]
    fn empty_automorphism_sets_are_vacuous() {
        let (prod, _) = mo2_product();
        let mo = make_mo(2).unwrap();
        let l = enumerate_closed(&mo, &Limits::default()).unwrap();
        let empty = PermutationGroup::new(4, Vec::new()).unwrap();
        let r = check_axioms(&prod, &l, &l, &empty, &empty).unwrap();
        assert!(r.p4.vacuous && !r.p4.holds && r.p4.witness.is_none());
        assert!(r.p4_star.vacuous);
    }

    #[test]
    fn hash_components_of_separated_products() {
        let (prod, _) = mo2_product();
        let h = p_hash_components(&prod, 0);
        assert_eq!(h.left, Bits::singleton(1));
        assert_eq!(h.right, Bits::singleton(1));
        assert_eq!(h.lower_count, 1);

        let ps = make_powerset_space(3).unwrap();
        let bp = sharp(&ps, &ps).unwrap();
        let h = p_hash_components(&bp, bp.encode(1, 2));
        assert_eq!(h.left, Bits::from_indices([0, 2]));
        assert_eq!(h.right, Bits::from_indices([0, 1]));
    }

    #[test]
    fn lifting_maps() {
        let (prod, sys) = mo2_product();
        let id = vec![0, 1, 2, 3];
        assert_eq!(lift_product_map(&prod, &id, &id).unwrap(), (0..16).collect::<Vec<_>>());
        assert!(lift_product_map(&prod, &[0, 0, 1, 2], &id).is_err());

        let swap = vec![2, 3, 0, 1];
        let u = lift_product_map(&prod, &swap, &id).unwrap();
        for p in 0..16 {
            assert_eq!(prod.sharp_coatom(p).map(&u), prod.sharp_coatom(u[p]));
        }
        for c in sys.sets() {
            assert!(sys.contains(&c.map(&u)));
        }
    }

    #[test]
    fn daniel_lift_identity_and_constant() {
        let mo = make_mo(2).unwrap();
        let l = enumerate_closed(&mo, &Limits::default()).unwrap();
        let g = daniel_lift(&[0, 1, 2, 3], &l, &l).unwrap();
        assert_eq!(g.images, (0..l.len()).collect::<Vec<_>>());

        let g = daniel_lift(&[0, 0, 0, 0], &l, &l).unwrap();
        for (i, a) in l.sets().iter().enumerate() {
            let image = l.sets()[g.images[i]];
            if a.is_empty() {
                assert!(image.is_empty());
            } else {
                assert_eq!(image, Bits::singleton(0));
            }
        }
    }

    #[test]
    fn lift_condition_failure_has_witness() {
        let mo = make_mo(2).unwrap();
        let ps = make_powerset_space(3).unwrap();
        let l1 = enumerate_closed(&mo, &Limits::default()).unwrap();
        let l2 = enumerate_closed(&ps, &Limits::default()).unwrap();
        // a1 -> 0, a1' -> 1, a2 and a2' -> 2: the preimage of {2} is {a2, a2'}
        assert_eq!(
            daniel_lift(&[0, 1, 2, 2], &l1, &l2),
            Err(PlatError::LiftCondition {
                closed: vec![2],
                preimage: vec![2, 3]
            })
        );
        assert!(daniel_lift(&[0, 1, 5, 2], &l1, &l2).is_err());
    }

    #[test]
    fn single_extra_pair_breaks_an_axiom() {
        let mo = make_mo(2).unwrap();
        let limits = Limits::default();
        let (prod, _) = separated_product(&mo, &mo, &limits).unwrap();
        let l = enumerate_closed(&mo, &limits).unwrap();
        let w = factor_automorphisms(&mo, &limits).unwrap();
        // (a1,b1) and (a1,b2): neither coordinate orthogonal
        let (p, q) = (prod.encode(0, 0), prod.encode(0, 2));
        assert!(!prod.space().orth(p, q));
        let mut rows = prod.space().rows().to_vec();
        rows[p].insert(q);
        rows[q].insert(p);
        let r = check_axioms(&prod.with_rows(rows).unwrap(), &l, &l, &w, &w).unwrap();
        assert!(!r.structural_failures().is_empty());
        assert!(r.p5.holds);
    }

    #[test]
    fn perturbation_rejects_pairs_inside_sharp() {
        struct Bad;
        impl PairSampler for Bad {
            fn sample(&self, _: &ProductSpace, _: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
                vec![(0, 5)]
            }
        }
        let mo = make_mo(2).unwrap();
        assert!(matches!(
            perturbation_test(&mo, &mo, &Bad, 3, 1, &Limits::default()),
            Err(PlatError::InvalidData(_))
        ));
    }

    #[test]
    fn empty_perturbation_passes() {
        struct Empty;
        impl PairSampler for Empty {
            fn sample(&self, _: &ProductSpace, _: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
                Vec::new()
            }
        }
        let mo = make_mo(2).unwrap();
        let s = perturbation_test(&mo, &mo, &Empty, 4, 1, &Limits::default()).unwrap();
        assert_eq!(s.empty_samples, 4);
        assert_eq!(s.failing_trials, 0);
        assert_eq!(s.theorem_contradictions, 0);
    }
}
