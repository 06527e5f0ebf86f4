//! Structural analysis of an enumerated closure system.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bitset::Bits;
use crate::closure::{polar_bits, ClosureSystem};
use crate::config::Limits;
use crate::error::{PlatError, Result};
use crate::orthospace::{OrthoSpace, Verdict};

/// Image table of a map on atoms: `perm[i]` is the image of atom `i`.
pub type Permutation = Vec<usize>;

pub fn is_permutation(map: &[usize], degree: usize) -> bool {
    if map.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    map.iter()
        .all(|&i| i < degree && !std::mem::replace(&mut seen[i], true))
}

pub fn identity(degree: usize) -> Permutation {
    (0..degree).collect()
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Permutation {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(a: &[usize]) -> Permutation {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// A finite set of atom permutations, not necessarily a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    closed: bool,
}

impl PermutationGroup {
    /// Wrap a list of permutations, verifying each is a bijection and
    /// recording whether the list is closed under composition and inverse.
    pub fn new(degree: usize, elements: Vec<Permutation>) -> Result<PermutationGroup> {
        if let Some(bad) = elements.iter().find(|e| !is_permutation(e, degree)) {
            return Err(PlatError::NotPermutation {
                degree,
                map: bad.clone(),
            });
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let closed = is_group(&elements);
        Ok(PermutationGroup {
            degree,
            elements,
            closed,
        })
    }

    /// The group generated by `generators`.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<PermutationGroup> {
        if let Some(bad) = generators.iter().find(|e| !is_permutation(e, degree)) {
            return Err(PlatError::NotPermutation {
                degree,
                map: bad.clone(),
            });
        }
        let id = identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for h in generators {
                let gh = compose(h, &g);
                if seen.insert(gh.clone()) {
                    queue.push_back(gh);
                }
            }
        }
        PermutationGroup::new(degree, seen.into_iter().collect())
    }

    pub fn trivial(degree: usize) -> PermutationGroup {
        PermutationGroup {
            degree,
            elements: vec![identity(degree)],
            closed: true,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Elements in lexicographic order of their image tables.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Closed under composition and inverse (checked exhaustively).
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn is_inverse_closed(&self) -> bool {
        let set: HashSet<&Permutation> = self.elements.iter().collect();
        self.elements.iter().all(|e| set.contains(&inverse(e)))
    }

    pub fn contains(&self, perm: &[usize]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(perm)).is_ok()
    }
}

fn is_group(elements: &[Permutation]) -> bool {
    if elements.is_empty() {
        return false;
    }
    let set: HashSet<&Permutation> = elements.iter().collect();
    elements.iter().all(|a| {
        set.contains(&inverse(a)) && elements.iter().all(|b| set.contains(&compose(a, b)))
    })
}

/// Whether the orbit of atom 0 under the elements is every atom.
pub fn is_transitive(group: &PermutationGroup) -> bool {
    let n = group.degree();
    if n == 0 {
        return true;
    }
    let mut orbit = vec![false; n];
    orbit[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut reached = 1;
    while let Some(p) = queue.pop_front() {
        for g in group.elements() {
            let q = g[p];
            if !orbit[q] {
                orbit[q] = true;
                reached += 1;
                queue.push_back(q);
            }
        }
    }
    reached == n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutMode {
    /// Permutations mapping the closed family onto itself.
    Lattice,
    /// Lattice automorphisms that also preserve the relation.
    Ortho,
}

/// Whether `perm` maps the closed family onto itself (and, in ortho mode,
/// commutes with the polar of atoms).
pub fn is_automorphism(space: &OrthoSpace, sys: &ClosureSystem, perm: &[usize], mode: AutMode) -> bool {
    if !is_permutation(perm, sys.carrier_size()) {
        return false;
    }
    if mode == AutMode::Ortho {
        let n = space.size();
        for p in 0..n {
            if space.row(p).map(perm) != space.row(perm[p]) {
                return false;
            }
        }
    }
    sys.sets().iter().all(|c| sys.contains(&c.map(perm)))
}

/// All automorphisms by backtracking over atom images, or the group
/// generated by `generators` after checking each one.
pub fn automorphisms(
    space: &OrthoSpace,
    sys: &ClosureSystem,
    mode: AutMode,
    generators: Option<&[Permutation]>,
    limits: &Limits,
) -> Result<PermutationGroup> {
    if space.carrier() != sys.carrier() {
        return Err(PlatError::CarrierMismatch);
    }
    let n = space.size();
    if let Some(gens) = generators {
        for g in gens {
            if !is_permutation(g, n) || !is_automorphism(space, sys, g, mode) {
                return Err(PlatError::NotPermutation {
                    degree: n,
                    map: g.clone(),
                });
            }
        }
        return PermutationGroup::generate(n, gens);
    }
    if n > limits.aut_search_atoms {
        return Err(PlatError::SearchLimit {
            size: n,
            limit: limits.aut_search_atoms,
        });
    }

    // closed sets become checkable once their largest atom has an image
    let mut completes_at: Vec<Vec<Bits>> = vec![Vec::new(); n];
    for c in sys.sets() {
        if let Some(top) = c.last() {
            completes_at[top].push(*c);
        }
    }
    let mut search = AutSearch {
        space,
        sys,
        mode,
        completes_at,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.extend(0);
    PermutationGroup::new(n, search.found)
}

struct AutSearch<'a> {
    space: &'a OrthoSpace,
    sys: &'a ClosureSystem,
    mode: AutMode,
    completes_at: Vec<Vec<Bits>>,
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Permutation>,
}

impl AutSearch<'_> {
    fn extend(&mut self, k: usize) {
        let n = self.image.len();
        if k == n {
            self.found.push(self.image.clone());
            return;
        }
        for target in 0..n {
            if self.used[target] {
                continue;
            }
            self.image[k] = target;
            if self.consistent(k) {
                self.used[target] = true;
                self.extend(k + 1);
                self.used[target] = false;
            }
        }
        self.image[k] = usize::MAX;
    }

    fn consistent(&self, k: usize) -> bool {
        if self.mode == AutMode::Ortho {
            let pk = self.image[k];
            for j in 0..=k {
                let pj = self.image[j];
                if self.space.orth(k, j) != self.space.orth(pk, pj)
                    || self.space.orth(j, k) != self.space.orth(pj, pk)
                {
                    return false;
                }
            }
        }
        self.completes_at[k]
            .iter()
            .all(|c| self.sys.contains(&c.map(&self.image)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringWitness {
    pub a: Vec<usize>,
    pub p: usize,
    pub c: Vec<usize>,
}

/// For every closed `a` and atom `p ∉ a`, `a ∨ p` covers `a`. On failure the
/// witness is the canonically first `a`, then the smallest `p`, then the
/// canonically first intermediate `c`.
pub fn covering_property(sys: &ClosureSystem) -> Verdict<CoveringWitness> {
    for a in sys.sets() {
        for p in sys.full().minus(a).iter() {
            let j = sys.hull(&a.or(&Bits::singleton(p)));
            let c = j
                .minus(a)
                .iter()
                .map(|r| sys.hull(&a.or(&Bits::singleton(r))))
                .filter(|c| *c != j)
                .min_by(|x, y| x.canonical_cmp(y));
            if let Some(c) = c {
                return Verdict::from_witness(Some(CoveringWitness {
                    a: a.to_vec(),
                    p,
                    c: c.to_vec(),
                }));
            }
        }
    }
    Verdict::from_witness(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthomodularWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// `b = a ∨ (b ∧ a^⊥)` for all closed `a ⊆ b`; the witness is the
/// canonically first failing `a`, then `b`.
pub fn orthomodularity(space: &OrthoSpace, sys: &ClosureSystem) -> Result<Verdict<OrthomodularWitness>> {
    if space.carrier() != sys.carrier() {
        return Err(PlatError::CarrierMismatch);
    }
    for a in sys.sets() {
        let pa = polar_bits(space, a);
        for b in sys.sets() {
            if !a.is_subset(b) {
                continue;
            }
            let rebuilt = sys.hull(&a.or(&b.and(&pa)));
            if rebuilt != *b {
                return Ok(Verdict::from_witness(Some(OrthomodularWitness {
                    a: a.to_vec(),
                    b: b.to_vec(),
                })));
            }
        }
    }
    Ok(Verdict::from_witness(None))
}

/// Central elements: `z` with `Σ∖z = z^⊥` closed and every closed `a`
/// equal to `(a ∩ z) ∨ (a ∖ z)`. Canonical order.
pub fn center(sys: &ClosureSystem, space: &OrthoSpace) -> Result<Vec<Bits>> {
    if space.carrier() != sys.carrier() {
        return Err(PlatError::CarrierMismatch);
    }
    let full = sys.full();
    Ok(sys
        .sets()
        .iter()
        .copied()
        .filter(|z| {
            let rest = full.minus(z);
            sys.contains(&rest)
                && polar_bits(space, z) == rest
                && sys
                    .sets()
                    .iter()
                    .all(|a| sys.hull(&a.and(z).or(&a.and(&rest))) == *a)
        })
        .collect())
}

/// Least central element containing atom `p`.
pub fn central_cover(sys: &ClosureSystem, space: &OrthoSpace, p: usize) -> Result<Bits> {
    Ok(center(sys, space)?
        .iter()
        .filter(|z| z.contains(p))
        .fold(sys.full(), |acc, z| acc.and(z)))
}

pub fn is_irreducible(sys: &ClosureSystem, space: &OrthoSpace) -> Result<bool> {
    Ok(center(sys, space)?.len() == 2)
}

#[derive(Debug, Clone, Default)]
pub struct OrthoSearchOptions {
    /// Run the counting filters before backtracking.
    pub filters: bool,
    /// Order in which atoms are assigned; `None` means ascending.
    pub atom_order: Option<Vec<usize>>,
}

impl OrthoSearchOptions {
    pub fn filtered() -> Self {
        OrthoSearchOptions {
            filters: true,
            atom_order: None,
        }
    }
}

/// An orthocomplementation of the family as a map on closed-set
/// positions, or `None` after exhaustive search.
///
/// In an atomistic lattice the complement is fixed by its values on the
/// atoms, `a' = ∧_{p ∈ a} p'`, so the search assigns a coatom to each atom
/// and prunes on the symmetry `q ≤ p' ⇔ p ≤ q'`.
pub fn find_orthocomplementation(
    sys: &ClosureSystem,
    options: &OrthoSearchOptions,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    if sys.len() > limits.ortho_search_elements {
        return Err(PlatError::LatticeTooLarge {
            size: sys.len(),
            limit: limits.ortho_search_elements,
        });
    }
    let atoms: Vec<usize> = sys.atoms().iter().filter_map(|a| a.first()).collect();
    let coatoms = sys.coatoms();
    if options.filters && !dual_profiles_match(sys, atoms.len(), &coatoms) {
        return Ok(None);
    }
    let order = options.atom_order.clone().unwrap_or_else(|| atoms.clone());
    let mut sorted_order = order.clone();
    sorted_order.sort_unstable();
    if sorted_order != atoms {
        return Err(PlatError::Config(
            "atom order must list every atom exactly once".into(),
        ));
    }
    let mut search = OrthoSearch {
        sys,
        atoms: &atoms,
        order: &order,
        coatoms: &coatoms,
        assigned: vec![None; sys.carrier_size()],
        used: vec![false; coatoms.len()],
        result: None,
    };
    search.extend(0);
    Ok(search.result)
}

/// Necessary conditions for a dual automorphism: as many atoms as coatoms,
/// and the multiset of "atoms below" counts equals the multiset of
/// "coatoms above" counts.
fn dual_profiles_match(sys: &ClosureSystem, atom_count: usize, coatoms: &[Bits]) -> bool {
    if atom_count != coatoms.len() {
        return false;
    }
    let mut below: Vec<usize> = sys.sets().iter().map(|a| a.len()).collect();
    let mut above: Vec<usize> = sys
        .sets()
        .iter()
        .map(|a| coatoms.iter().filter(|c| a.is_subset(c)).count())
        .collect();
    below.sort_unstable();
    above.sort_unstable();
    below == above
}

struct OrthoSearch<'a> {
    sys: &'a ClosureSystem,
    atoms: &'a [usize],
    order: &'a [usize],
    coatoms: &'a [Bits],
    assigned: Vec<Option<usize>>,
    used: Vec<bool>,
    result: Option<Vec<usize>>,
}

impl OrthoSearch<'_> {
    fn extend(&mut self, k: usize) {
        if self.result.is_some() {
            return;
        }
        if k == self.order.len() {
            let complements: Vec<Bits> = (0..self.sys.carrier_size())
                .map(|p| self.assigned[p].map_or(Bits::EMPTY, |c| self.coatoms[c]))
                .collect();
            if let Some(map) = complement_map(self.sys, self.atoms, &complements) {
                if verify_orthocomplementation(self.sys, &map) {
                    self.result = Some(map);
                }
            }
            return;
        }
        let p = self.order[k];
        for ci in 0..self.coatoms.len() {
            let c = self.coatoms[ci];
            if self.used[ci] || c.contains(p) {
                continue;
            }
            let symmetric = self.order[..k].iter().all(|&q| {
                let cq = self.coatoms[self.assigned[q].unwrap()];
                c.contains(q) == cq.contains(p)
            });
            if !symmetric {
                continue;
            }
            self.used[ci] = true;
            self.assigned[p] = Some(ci);
            self.extend(k + 1);
            self.assigned[p] = None;
            self.used[ci] = false;
            if self.result.is_some() {
                return;
            }
        }
    }
}

/// Extend atom complements to all closed sets by meets.
fn complement_map(sys: &ClosureSystem, atoms: &[usize], atom_complement: &[Bits]) -> Option<Vec<usize>> {
    let full = sys.full();
    sys.sets()
        .iter()
        .map(|a| {
            let image = atoms
                .iter()
                .filter(|&&p| a.contains(p))
                .fold(full, |acc, &p| acc.and(&atom_complement[p]));
            sys.position(&image)
        })
        .collect()
}

/// Independent check of the four laws on a map of closed-set positions:
/// order-reversing, involutive, `a ∧ a' = 0` and `a ∨ a' = 1`.
pub fn verify_orthocomplementation(sys: &ClosureSystem, map: &[usize]) -> bool {
    let sets = sys.sets();
    if map.len() != sets.len() || map.iter().any(|&i| i >= sets.len()) {
        return false;
    }
    let full = sys.full();
    for (i, a) in sets.iter().enumerate() {
        let ac = sets[map[i]];
        if map[map[i]] != i || a.intersects(&ac) || sys.hull(&a.or(&ac)) != full {
            return false;
        }
    }
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if a.is_subset(b) && !sets[map[j]].is_subset(&sets[map[i]]) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub covering: Verdict<CoveringWitness>,
    pub orthomodular: Verdict<OrthomodularWitness>,
    pub center_size: usize,
    pub irreducible: bool,
    /// `None` when the carrier is beyond the automorphism search limit.
    pub aut_order: Option<usize>,
    /// `"found"`, `"none"`, or `"skipped"` above the search limit.
    pub orthocomplementation: String,
}

pub fn analyze(space: &OrthoSpace, sys: &ClosureSystem, limits: &Limits) -> Result<AnalysisReport> {
    let center = center(sys, space)?;
    let aut_order = match automorphisms(space, sys, AutMode::Ortho, None, limits) {
        Ok(g) => Some(g.order()),
        Err(PlatError::SearchLimit { .. }) => None,
        Err(e) => return Err(e),
    };
    let orthocomplementation =
        match find_orthocomplementation(sys, &OrthoSearchOptions::filtered(), limits) {
            Ok(Some(_)) => "found",
            Ok(None) => "none",
            Err(PlatError::LatticeTooLarge { .. }) => "skipped",
            Err(e) => return Err(e),
        };
    Ok(AnalysisReport {
        covering: covering_property(sys),
        orthomodular: orthomodularity(space, sys)?,
        center_size: center.len(),
        irreducible: center.len() == 2,
        aut_order,
        orthocomplementation: orthocomplementation.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::enumerate_closed;
    use crate::orthospace::{make_mo, make_powerset_space};

    fn system(space: &OrthoSpace) -> ClosureSystem {
        enumerate_closed(space, &Limits::default()).unwrap()
    }

    /// All permutations of `0..n` in lexicographic order.
    fn all_permutations(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for i in 0..n {
                if !prefix.contains(&i) {
                    prefix.push(i);
                    rec(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n, &mut out);
        out
    }

    #[test]
    fn covering_on_small_lattices() {
        assert!(covering_property(&system(&make_powerset_space(3).unwrap())).holds);
        assert!(covering_property(&system(&make_mo(3).unwrap())).holds);
    }

    #[test]
    fn orthomodular_small_lattices() {
        for space in [make_mo(2).unwrap(), make_mo(3).unwrap(), make_powerset_space(3).unwrap()] {
            assert!(orthomodularity(&space, &system(&space)).unwrap().holds);
        }
    }

    #[test]
    fn centers() {
        let mo = make_mo(2).unwrap();
        let c = center(&system(&mo), &mo).unwrap();
        assert_eq!(c, vec![Bits::EMPTY, Bits::full(4)]);
        assert!(is_irreducible(&system(&mo), &mo).unwrap());
        let ps = make_powerset_space(2).unwrap();
        assert_eq!(center(&system(&ps), &ps).unwrap().len(), 4);
        assert_eq!(central_cover(&system(&ps), &ps, 1).unwrap(), Bits::singleton(1));
        assert_eq!(central_cover(&system(&mo), &mo, 1).unwrap(), Bits::full(4));
    }

    #[test]
    fn mo2_ortho_automorphisms_by_brute_force() {
        let mo = make_mo(2).unwrap();
        let sys = system(&mo);
        // oracle: filter all 24 permutations by pair preservation
        let oracle: Vec<Permutation> = all_permutations(4)
            .into_iter()
            .filter(|p| (0..4).all(|i| (0..4).all(|j| mo.orth(i, j) == mo.orth(p[i], p[j]))))
            .collect();
        assert_eq!(oracle.len(), 8);
        let group = automorphisms(&mo, &sys, AutMode::Ortho, None, &Limits::default()).unwrap();
        assert_eq!(group.elements(), oracle.as_slice());
        assert!(group.is_closed());
        assert!(is_transitive(&group));
        // every atom bijection preserves a height-two family
        let lattice = automorphisms(&mo, &sys, AutMode::Lattice, None, &Limits::default()).unwrap();
        assert_eq!(lattice.order(), 24);
    }

    #[test]
    fn powerset_automorphisms_are_symmetric_group() {
        for n in 1..=4 {
            let ps = make_powerset_space(n).unwrap();
            let g = automorphisms(&ps, &system(&ps), AutMode::Lattice, None, &Limits::default())
                .unwrap();
            assert_eq!(g.order(), (1..=n).product::<usize>());
            assert!(is_transitive(&g));
        }
    }

    #[test]
    fn transitivity() {
        assert!(!is_transitive(&PermutationGroup::trivial(2)));
        assert!(is_transitive(&PermutationGroup::trivial(1)));
        let swap = PermutationGroup::generate(2, &[vec![1, 0]]).unwrap();
        assert!(is_transitive(&swap));
        assert_eq!(swap.order(), 2);
    }

    #[test]
    fn permutation_group_validation() {
        assert!(PermutationGroup::new(3, vec![vec![0, 0, 1]]).is_err());
        let g = PermutationGroup::new(3, vec![vec![1, 2, 0]]).unwrap();
        assert!(!g.is_closed());
        assert!(!g.is_inverse_closed());
        let g = PermutationGroup::generate(3, &[vec![1, 2, 0]]).unwrap();
        assert!(g.is_closed());
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn supplied_generators_are_verified() {
        let mo = make_mo(3).unwrap();
        let sys = system(&mo);
        let tight = Limits {
            aut_search_atoms: 4,
            ..Limits::default()
        };
        assert!(matches!(
            automorphisms(&mo, &sys, AutMode::Ortho, None, &tight),
            Err(PlatError::SearchLimit { size: 6, limit: 4 })
        ));
        let gens = vec![vec![1, 0, 2, 3, 4, 5], vec![2, 3, 4, 5, 0, 1]];
        let g = automorphisms(&mo, &sys, AutMode::Ortho, Some(&gens), &tight).unwrap();
        assert_eq!(g.order(), 24);
        let bad = vec![vec![2, 0, 1, 3, 4, 5]];
        assert!(automorphisms(&mo, &sys, AutMode::Ortho, Some(&bad), &tight).is_err());
    }

    #[test]
    fn orthocomplement_of_mo2_recovers_pairing() {
        let mo = make_mo(2).unwrap();
        let sys = system(&mo);
        let map = find_orthocomplementation(&sys, &OrthoSearchOptions::filtered(), &Limits::default())
            .unwrap()
            .expect("MO_2 is orthocomplemented");
        assert!(verify_orthocomplementation(&sys, &map));
        // each atom goes to an atom distinct from itself (atoms are coatoms)
        for p in 0..4 {
            let i = sys.position(&Bits::singleton(p)).unwrap();
            let image = sys.sets()[map[i]];
            assert_eq!(image.len(), 1);
            assert!(!image.contains(p));
        }
    }

    #[test]
    fn orthocomplement_of_powerset_is_complement() {
        let ps = make_powerset_space(3).unwrap();
        let sys = system(&ps);
        let map = find_orthocomplementation(&sys, &OrthoSearchOptions::filtered(), &Limits::default())
            .unwrap()
            .unwrap();
        for (i, a) in sys.sets().iter().enumerate() {
            assert_eq!(sys.sets()[map[i]], sys.full().minus(a));
        }
    }

    #[test]
    fn orthocomplement_search_limit() {
        let ps = make_powerset_space(4).unwrap();
        let limits = Limits {
            ortho_search_elements: 10,
            ..Limits::default()
        };
        assert!(matches!(
            find_orthocomplementation(&system(&ps), &OrthoSearchOptions::default(), &limits),
            Err(PlatError::LatticeTooLarge { size: 16, limit: 10 })
        ));
    }

    #[test]
    fn chain_has_no_orthocomplement() {
        // family {∅, {0}, {0,1}, Σ} over three atoms: a chain, no complement
        let space = make_powerset_space(3).unwrap();
        let sys = crate::closure::intersection_closure(
            &space,
            [Bits::from_indices([0]), Bits::from_indices([0, 1]), Bits::EMPTY],
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(sys.len(), 4);
        for filters in [true, false] {
            let opts = OrthoSearchOptions {
                filters,
                atom_order: None,
            };
            assert_eq!(find_orthocomplementation(&sys, &opts, &Limits::default()).unwrap(), None);
        }
    }
}
