//! Builders for perturbed product relations and the tensor-trace family.
//!
//! `build_perp2` .. `build_perp5` produce relations on `Σ₁ × Σ₂` from
//! validated input data; none of them checks that the result is
//! separating, which is left to `validate_relation` and `check_axioms`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::Bits;
use crate::closure::{enumerate_closed, intersection_closure, ClosureSystem};
use crate::config::Limits;
use crate::error::{PlatError, Result};
use crate::field::Gf;
use crate::lattice::{find_orthocomplementation, is_permutation, OrthoSearchOptions, Permutation};
use crate::orthospace::{make_quadratic_line_space, quadratic_field, CarrierId, OrthoSpace};
use crate::sepprod::{sharp, ProductSpace};

/// Symmetric irreflexive relation `q ↦ C(q)` on the atoms of one factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRelation {
    carrier: CarrierId,
    sets: Vec<Bits>,
}

impl CRelation {
    pub fn new(factor: &OrthoSpace, sets: Vec<Bits>) -> Result<CRelation> {
        let n = factor.size();
        if sets.len() != n {
            return Err(PlatError::InvalidData(format!(
                "C-relation has {} entries for {n} atoms",
                sets.len()
            )));
        }
        let full = factor.all();
        for (p, c) in sets.iter().enumerate() {
            if !c.is_subset(&full) {
                return Err(PlatError::InvalidData(format!(
                    "C({p}) mentions atoms beyond {n}"
                )));
            }
            if c.contains(p) {
                return Err(PlatError::InvalidData(format!("{p} ∈ C({p})")));
            }
            if let Some(q) = c.iter().find(|&q| !sets[q].contains(p)) {
                return Err(PlatError::InvalidData(format!(
                    "{q} ∈ C({p}) but {p} ∉ C({q})"
                )));
            }
        }
        Ok(CRelation {
            carrier: factor.carrier(),
            sets,
        })
    }

    /// From adjacency lists, as in the JSON input format.
    pub fn from_lists(factor: &OrthoSpace, lists: &[Vec<usize>]) -> Result<CRelation> {
        let n = factor.size();
        if let Some(&q) = lists.iter().flatten().find(|&&q| q >= n) {
            return Err(PlatError::InvalidData(format!(
                "C-relation mentions atom {q} beyond {n}"
            )));
        }
        CRelation::new(
            factor,
            lists.iter().map(|l| Bits::from_indices(l.iter().copied())).collect(),
        )
    }

    /// Parse `[[..], [..], ..]`.
    pub fn from_json(factor: &OrthoSpace, text: &str) -> Result<CRelation> {
        let lists: Vec<Vec<usize>> = serde_json::from_str(text)
            .map_err(|e| PlatError::InvalidData(format!("C-relation document: {e}")))?;
        CRelation::from_lists(factor, &lists)
    }

    pub fn empty(factor: &OrthoSpace) -> CRelation {
        CRelation {
            carrier: factor.carrier(),
            sets: vec![Bits::EMPTY; factor.size()],
        }
    }

    pub fn get(&self, p: usize) -> Bits {
        self.sets[p]
    }

    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(Bits::is_empty)
    }
}

fn check_c_carriers(prod: &ProductSpace, c1: &CRelation, c2: &CRelation) -> Result<()> {
    if c1.carrier != prod.left().carrier() || c2.carrier != prod.right().carrier() {
        return Err(PlatError::CarrierMismatch);
    }
    Ok(())
}

/// `p^⊥₂ = p^# ∪ C₁(p₁) × C₂(p₂)`.
pub fn build_perp2(prod: &ProductSpace, c1: &CRelation, c2: &CRelation) -> Result<ProductSpace> {
    check_c_carriers(prod, c1, c2)?;
    let rows = (0..prod.size())
        .map(|p| {
            let (i, j) = prod.decode(p);
            prod.sharp_coatom(p).or(&prod.rectangle(&c1.get(i), &c2.get(j)))
        })
        .collect();
    prod.with_rows(rows)
}

/// `p^⊥₃ = p^# ∪ C₁(p₁) × Σ₂ ∪ Σ₁ × C₂(p₂)`.
pub fn build_perp3(prod: &ProductSpace, c1: &CRelation, c2: &CRelation) -> Result<ProductSpace> {
    check_c_carriers(prod, c1, c2)?;
    let rows = (0..prod.size())
        .map(|p| {
            let (i, j) = prod.decode(p);
            prod.sharp_coatom(p)
                .or(&prod.left_cylinder(&c1.get(i)))
                .or(&prod.right_cylinder(&c2.get(j)))
        })
        .collect();
    prod.with_rows(rows)
}

/// Partition `A₁ .. A₄` of the factor atoms with injective maps
/// `gᵢ : Aᵢ → Σ₁ × Σ₂`, stored as parallel arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingData {
    pub parts: [Vec<usize>; 4],
    pub maps: [Vec<usize>; 4],
}

impl PairingData {
    /// Validate the partition of `0..factor_size` and the injectivity of
    /// each map into `0..product_size`.
    pub fn new(
        parts: [Vec<usize>; 4],
        maps: [Vec<usize>; 4],
        factor_size: usize,
        product_size: usize,
    ) -> Result<PairingData> {
        let mut seen = Bits::EMPTY;
        for (i, (part, map)) in parts.iter().zip(&maps).enumerate() {
            if part.len() != map.len() {
                return Err(PlatError::InvalidData(format!(
                    "part {} has {} atoms but {} images",
                    i + 1,
                    part.len(),
                    map.len()
                )));
            }
            for &p in part {
                if p >= factor_size || seen.contains(p) {
                    return Err(PlatError::InvalidData(format!(
                        "atom {p} is out of range or in two parts"
                    )));
                }
                seen.insert(p);
            }
            let mut images = Bits::EMPTY;
            for &g in map {
                if g >= product_size || images.contains(g) {
                    return Err(PlatError::InvalidData(format!(
                        "map {} is not injective into {product_size} atoms at image {g}",
                        i + 1
                    )));
                }
                images.insert(g);
            }
        }
        if seen != Bits::full(factor_size) {
            return Err(PlatError::InvalidData(format!(
                "parts miss atoms {:?}",
                Bits::full(factor_size).minus(&seen).to_vec()
            )));
        }
        Ok(PairingData { parts, maps })
    }

    pub fn from_json(text: &str, factor_size: usize, product_size: usize) -> Result<PairingData> {
        let raw: PairingData = serde_json::from_str(text)
            .map_err(|e| PlatError::InvalidData(format!("pairing document: {e}")))?;
        PairingData::new(raw.parts, raw.maps, factor_size, product_size)
    }

    /// The combined map `p ↦ gᵢ(p)` on factor atoms.
    pub fn combined(&self, factor_size: usize) -> Vec<usize> {
        let mut g = vec![0; factor_size];
        for (part, map) in self.parts.iter().zip(&self.maps) {
            for (&p, &x) in part.iter().zip(map) {
                g[p] = x;
            }
        }
        g
    }
}

/// `p^⊥₄ = p^# ∪ f(p)^# ∪ f⁻¹(p^#)`, where `f(x, x) = g(x)` on diagonal
/// atoms and `f(p) = Σ` (so `f(p)^# = ∅`) elsewhere.
pub fn build_perp4(prod: &ProductSpace, data: &PairingData) -> Result<ProductSpace> {
    if prod.left() != prod.right() {
        return Err(PlatError::InvalidData(
            "pairing construction needs identical factors".into(),
        ));
    }
    let n1 = prod.left().size();
    let data = PairingData::new(data.parts.clone(), data.maps.clone(), n1, prod.size())?;
    let g = data.combined(n1);
    if let Some(x) = (0..n1).find(|&x| prod.sharp_coatom(prod.encode(x, x)).contains(g[x])) {
        return Err(PlatError::PairingCondition { atom: x });
    }
    let rows = (0..prod.size())
        .map(|p| {
            let (i, j) = prod.decode(p);
            let coatom = prod.sharp_coatom(p);
            let mut row = coatom;
            if i == j {
                row = row.or(&prod.sharp_coatom(g[i]));
            }
            for x in (0..n1).filter(|&x| coatom.contains(g[x])) {
                row.insert(prod.encode(x, x));
            }
            row
        })
        .collect();
    prod.with_rows(rows)
}

/// Permutation of one factor's atoms satisfying (i) `f ≠ id`,
/// (ii) `f⁻¹(p^⊥) = f(p)^⊥` and (iii) `f(p) ∉ p^⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBijection {
    carrier: CarrierId,
    perm: Permutation,
}

impl FactorBijection {
    pub fn new(factor: &OrthoSpace, perm: Permutation) -> Result<FactorBijection> {
        let n = factor.size();
        if !is_permutation(&perm, n) {
            return Err(PlatError::NotPermutation {
                degree: n,
                map: perm,
            });
        }
        if perm.iter().enumerate().all(|(i, &x)| i == x) {
            return Err(PlatError::BijectionCondition {
                condition: "i".into(),
                atom: None,
            });
        }
        if let Some(p) = (0..n).find(|&p| factor.row(p).preimage(&perm) != factor.row(perm[p])) {
            return Err(PlatError::BijectionCondition {
                condition: "ii".into(),
                atom: Some(p),
            });
        }
        if let Some(p) = (0..n).find(|&p| factor.orth(p, perm[p])) {
            return Err(PlatError::BijectionCondition {
                condition: "iii".into(),
                atom: Some(p),
            });
        }
        Ok(FactorBijection {
            carrier: factor.carrier(),
            perm,
        })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}

/// `p ⊥₅ q ⇔ q ∈ (f₁ × f₂)(p)^#`.
pub fn build_perp5(prod: &ProductSpace, f1: &FactorBijection, f2: &FactorBijection) -> Result<ProductSpace> {
    if f1.carrier != prod.left().carrier() || f2.carrier != prod.right().carrier() {
        return Err(PlatError::CarrierMismatch);
    }
    let rows = (0..prod.size())
        .map(|p| {
            let (i, j) = prod.decode(p);
            prod.sharp_coatom(prod.encode(f1.perm[i], f2.perm[j]))
        })
        .collect();
    prod.with_rows(rows)
}

/// `a1 ↔ a2, a1' ↔ a2'` on `MO_n`, fixing the other pairs.
pub fn mo_pair_swap_bijection(n: usize) -> Result<FactorBijection> {
    if n < 2 {
        return Err(PlatError::InvalidData(format!(
            "MO_{n} has a single orthogonal pair, so no second pair to swap with"
        )));
    }
    let factor = crate::orthospace::make_mo(n)?;
    let mut perm: Permutation = (0..2 * n).collect();
    perm.swap(0, 2);
    perm.swap(1, 3);
    FactorBijection::new(&factor, perm)
}

/// A linear subspace of `GF(q)^d` as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, field: &Gf, v: &[u32]) -> bool {
        let mut x = v.to_vec();
        for row in &self.basis {
            let c = row.iter().position(|&e| e != 0).expect("rows are nonzero");
            let coef = x[c];
            if coef != 0 {
                for (xi, &ri) in x.iter_mut().zip(row) {
                    *xi = field.sub(*xi, field.mul(coef, ri));
                }
            }
        }
        x.iter().all(|&e| e == 0)
    }
}

/// Largest `q^d` accepted by `enumerate_subspaces`.
pub const MAX_AMBIENT_VECTORS: u64 = 1 << 16;

/// All subspaces of `GF(q)^dim`, grouped by dimension (index `k` holds
/// the `k`-dimensional ones), each group ordered by pivot columns and
/// then by free entries.
pub fn enumerate_subspaces(q: u32, dim: usize) -> Result<Vec<Vec<Subspace>>> {
    if !(1..=4).contains(&dim) {
        return Err(PlatError::Config(format!("dimension {dim} outside 1..=4")));
    }
    Gf::new(q)?;
    let vectors = (q as u64).pow(dim as u32);
    if vectors > MAX_AMBIENT_VECTORS {
        return Err(PlatError::SearchLimit {
            size: vectors as usize,
            limit: MAX_AMBIENT_VECTORS as usize,
        });
    }
    let mut out = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let mut group = Vec::new();
        for pivots in combinations(dim, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &c)| {
                    let pivots = &pivots;
                    (c + 1..dim)
                        .filter(move |j| !pivots.contains(j))
                        .map(move |j| (r, j))
                })
                .collect();
            let count = (q as usize).pow(free.len() as u32);
            for code in 0..count {
                let mut basis = vec![vec![0u32; dim]; k];
                for (r, &c) in pivots.iter().enumerate() {
                    basis[r][c] = 1;
                }
                let mut rest = code;
                for &(r, j) in free.iter().rev() {
                    basis[r][j] = (rest % q as usize) as u32;
                    rest /= q as usize;
                }
                group.push(Subspace { basis });
            }
        }
        out.push(group);
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `u ⊗ v` in coordinates `(u₀v₀, u₀v₁, u₁v₀, u₁v₁)`.
pub fn tensor(field: &Gf, u: &[u32], v: &[u32]) -> Vec<u32> {
    u.iter()
        .flat_map(|&a| v.iter().map(move |&b| field.mul(a, b)))
        .collect()
}

/// The Kronecker square of `x² + λy²`, i.e. `diag(1, λ, λ, λ²)`.
pub fn tensor_form(field: &Gf, lambda: u32, x: &[u32], y: &[u32]) -> u32 {
    let weights = [1, lambda, lambda, field.mul(lambda, lambda)];
    x.iter()
        .zip(y)
        .zip(weights)
        .fold(0, |acc, ((&a, &b), w)| field.add(acc, field.mul(w, field.mul(a, b))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct L0Report {
    pub q: u32,
    pub lambda: u32,
    pub trace_count: usize,
    pub intersection_closed: bool,
    pub family_size: usize,
    pub contains_sepprod: bool,
    pub strict: bool,
    pub strictness_witness: Vec<usize>,
    pub triples: usize,
    pub orthocomplementation: String,
}

#[derive(Debug, Clone)]
pub struct TensorTrace {
    pub product: ProductSpace,
    /// Distinct traces in canonical order.
    pub traces: Vec<Bits>,
    /// Intersection-closure of the traces.
    pub family: ClosureSystem,
    pub report: L0Report,
}

/// Traces `{(u, v) : u ⊗ v ∈ V}` of all subspaces `V` of `GF(q)² ⊗ GF(q)²`
/// on the product of two copies of the quadratic line space.
pub fn tensor_trace_lattice(q: u32, lambda: u32, limits: &Limits) -> Result<TensorTrace> {
    let field = quadratic_field(q, lambda)?;
    let factor = make_quadratic_line_space(q, lambda)?;
    let product = sharp(&factor, &factor)?;
    let points = field.projective_points(2);
    let atoms: Vec<Vec<u32>> = (0..product.size())
        .map(|p| {
            let (i, j) = product.decode(p);
            tensor(&field, &points[i], &points[j])
        })
        .collect();

    let subspaces: Vec<Subspace> = enumerate_subspaces(q, 4)?.into_iter().flatten().collect();
    let mut traces: Vec<Bits> = subspaces
        .par_iter()
        .map(|v| Bits::from_indices((0..atoms.len()).filter(|&p| v.contains(&field, &atoms[p]))))
        .collect();
    traces.sort_by(|a, b| a.canonical_cmp(b));
    traces.dedup();

    let trace_set: std::collections::HashSet<Bits> = traces.iter().copied().collect();
    let intersection_closed = traces
        .iter()
        .enumerate()
        .all(|(i, a)| traces[i + 1..].iter().all(|b| trace_set.contains(&a.and(b))));

    let family = intersection_closure(product.space(), traces.iter().copied(), limits)?;
    let sepprod = enumerate_closed(&product, limits)?;
    let contains_sepprod = sepprod.sets().iter().all(|a| family.contains(a));
    let witness = traces
        .iter()
        .find(|t| !sepprod.contains(t))
        .or_else(|| family.sets().iter().find(|t| !sepprod.contains(t)));
    let strict = contains_sepprod && witness.is_some();

    let distinct = |p: usize, q: usize| {
        let ((p1, p2), (q1, q2)) = (product.decode(p), product.decode(q));
        p1 != q1 && p2 != q2
    };
    let triples = traces
        .iter()
        .filter(|t| t.len() == 3)
        .filter(|t| {
            let v = t.to_vec();
            distinct(v[0], v[1]) && distinct(v[0], v[2]) && distinct(v[1], v[2])
        })
        .count();

    let ortho = find_orthocomplementation(&family, &OrthoSearchOptions::filtered(), limits)?;
    let report = L0Report {
        q,
        lambda,
        trace_count: traces.len(),
        intersection_closed,
        family_size: family.len(),
        contains_sepprod,
        strict,
        strictness_witness: witness.map(Bits::to_vec).unwrap_or_default(),
        triples,
        orthocomplementation: if ortho.is_some() { "found" } else { "none" }.into(),
    };
    Ok(TensorTrace {
        product,
        traces,
        family,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::polar_bits;
    use crate::orthospace::{make_mo, validate_relation};

    fn mo2_prod() -> ProductSpace {
        let mo = make_mo(2).unwrap();
        sharp(&mo, &mo).unwrap()
    }

    /// `C(a1) = C(a1') = {a2, a2'}` and vice versa.
    fn cross_c(factor: &OrthoSpace) -> CRelation {
        CRelation::from_lists(factor, &[vec![2, 3], vec![2, 3], vec![0, 1], vec![0, 1]]).unwrap()
    }

    fn gaussian_binomial(q: u64, n: u32, k: u32) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn c_relation_validation() {
        let mo = make_mo(2).unwrap();
        assert!(CRelation::from_lists(&mo, &[vec![0], vec![], vec![], vec![]]).is_err());
        assert!(CRelation::from_lists(&mo, &[vec![2], vec![], vec![], vec![]]).is_err());
        assert!(CRelation::from_lists(&mo, &[vec![9], vec![], vec![], vec![]]).is_err());
        assert!(CRelation::from_json(&mo, "[[2],[],[0],[]]").is_ok());
        assert!(CRelation::from_json(&mo, "[[2],[]]").is_err());
    }

    #[test]
    fn perp2_and_perp3_follow_their_formulas() {
        let prod = mo2_prod();
        let c = cross_c(prod.left());
        let p2 = build_perp2(&prod, &c, &c).unwrap();
        let p3 = build_perp3(&prod, &c, &c).unwrap();
        for p in 0..16 {
            let (i, j) = prod.decode(p);
            let mut rect = Bits::EMPTY;
            let mut cyl = Bits::EMPTY;
            for q in 0..16 {
                let (k, l) = prod.decode(q);
                if c.get(i).contains(k) && c.get(j).contains(l) {
                    rect.insert(q);
                }
                if c.get(i).contains(k) || c.get(j).contains(l) {
                    cyl.insert(q);
                }
            }
            let sharp_p = polar_bits(prod.space(), &Bits::singleton(p));
            assert_eq!(polar_bits(p2.space(), &Bits::singleton(p)), sharp_p.or(&rect));
            assert_eq!(polar_bits(p3.space(), &Bits::singleton(p)), sharp_p.or(&cyl));
        }
        for built in [&p2, &p3] {
            let r = validate_relation(built.space());
            assert!(r.anti_reflexive.holds && r.symmetric.holds);
        }
    }

    #[test]
    fn empty_c_gives_the_sharp_relation() {
        let prod = mo2_prod();
        let e = CRelation::empty(prod.left());
        assert!(build_perp2(&prod, &e, &e).unwrap().is_sharp());
        assert!(build_perp3(&prod, &e, &e).unwrap().is_sharp());
    }

    #[test]
    fn perp2_cylinder_polar_stays_in_cylinder() {
        let prod = mo2_prod();
        let c = cross_c(prod.left());
        let p2 = build_perp2(&prod, &c, &c).unwrap();
        for p1 in 0..4 {
            let cyl = prod.left_cylinder(&prod.left().row(p1));
            let polar = polar_bits(p2.space(), &cyl);
            assert!(polar.is_subset(&prod.left_cylinder(&Bits::singleton(p1))));
        }
    }

    fn diagonal_pairing(prod: &ProductSpace) -> PairingData {
        // g(x) = (x, σx) with σ the pair swap
        let sigma = [2, 3, 0, 1];
        let parts = [vec![0], vec![1], vec![2], vec![3]];
        let maps = [0, 1, 2, 3].map(|x| vec![prod.encode(x, sigma[x])]);
        PairingData::new(parts, maps, 4, 16).unwrap()
    }

    #[test]
    fn perp4_formula_and_symmetry() {
        let prod = mo2_prod();
        let data = diagonal_pairing(&prod);
        let built = build_perp4(&prod, &data).unwrap();
        let r = validate_relation(built.space());
        assert!(r.anti_reflexive.holds && r.symmetric.holds);
        let g = data.combined(4);
        for p in 0..16 {
            let (i, j) = prod.decode(p);
            let mut expect = prod.sharp_coatom(p);
            if i == j {
                expect = expect.or(&prod.sharp_coatom(g[i]));
            }
            for q in 0..16 {
                let (k, l) = prod.decode(q);
                if k == l && prod.sharp_coatom(p).contains(g[k]) {
                    expect.insert(q);
                }
            }
            assert_eq!(built.space().row(p), expect);
        }
    }

    #[test]
    fn perp4_rejects_pairing_violation_and_bad_partitions() {
        let prod = mo2_prod();
        let parts = [vec![0], vec![1], vec![2], vec![3]];
        // g(a1) = (a1', a1') lies in (a1,a1)^#
        let maps = [vec![prod.encode(1, 1)], vec![4], vec![8], vec![12]];
        let data = PairingData::new(parts.clone(), maps, 4, 16).unwrap();
        assert!(matches!(
            build_perp4(&prod, &data),
            Err(PlatError::PairingCondition { atom: 0 })
        ));

        assert!(PairingData::new([vec![0, 1], vec![1], vec![2], vec![3]], [vec![0, 5], vec![1], vec![2], vec![3]], 4, 16).is_err());
        assert!(PairingData::new([vec![0], vec![1], vec![2], vec![]], [vec![0], vec![1], vec![2], vec![]], 4, 16).is_err());
        assert!(PairingData::new([vec![0, 1], vec![2], vec![3], vec![]], [vec![5, 5], vec![1], vec![2], vec![]], 4, 16).is_err());

        let mo = make_mo(2).unwrap();
        let rect = sharp(&mo, &make_mo(3).unwrap()).unwrap();
        assert!(build_perp4(&rect, &PairingData::new(parts, [vec![0], vec![1], vec![2], vec![3]], 4, 24).unwrap()).is_err());
    }

    #[test]
    fn pairing_data_json() {
        let text = r#"{"parts":[[0],[1],[2],[3]],"maps":[[2],[7],[8],[13]]}"#;
        let d = PairingData::from_json(text, 4, 16).unwrap();
        assert_eq!(d.combined(4), vec![2, 7, 8, 13]);
        assert!(PairingData::from_json(r#"{"parts":[],"maps":[]}"#, 4, 16).is_err());
    }

    #[test]
    fn factor_bijection_conditions() {
        let mo = make_mo(2).unwrap();
        assert!(matches!(
            FactorBijection::new(&mo, vec![0, 1, 2, 3]),
            Err(PlatError::BijectionCondition { ref condition, atom: None }) if condition == "i"
        ));
        // a1 ↦ a1' is orthogonal to a1
        assert!(matches!(
            FactorBijection::new(&mo, vec![1, 0, 2, 3]),
            Err(PlatError::BijectionCondition { ref condition, atom: Some(0) }) if condition == "iii"
        ));
        // a1 ↦ a2 but a1' ↦ a1': breaks the pairing
        assert!(matches!(
            FactorBijection::new(&mo, vec![2, 1, 0, 3]),
            Err(PlatError::BijectionCondition { ref condition, .. }) if condition == "ii"
        ));
        assert!(FactorBijection::new(&mo, vec![0, 0, 1, 2]).is_err());
    }

    #[test]
    fn pair_swap_bijections() {
        assert_eq!(mo_pair_swap_bijection(2).unwrap().perm(), &[2, 3, 0, 1]);
        assert_eq!(mo_pair_swap_bijection(3).unwrap().perm(), &[2, 3, 0, 1, 4, 5]);
        assert!(mo_pair_swap_bijection(1).is_err());
        // (ii) directly: f⁻¹(a1^⊥) = f⁻¹({a1'}) = {a2'} = f(a1)^⊥
        let mo = make_mo(2).unwrap();
        let f = mo_pair_swap_bijection(2).unwrap();
        assert_eq!(mo.row(0).preimage(f.perm()), Bits::singleton(3));
        assert_eq!(mo.row(f.perm()[0]), Bits::singleton(3));
    }

    #[test]
    fn perp5_family_equals_separated_product() {
        let prod = mo2_prod();
        let f = mo_pair_swap_bijection(2).unwrap();
        let built = build_perp5(&prod, &f, &f).unwrap();
        let r = validate_relation(built.space());
        assert!(r.is_orthogonality());
        let limits = Limits::default();
        let a = enumerate_closed(&built, &limits).unwrap();
        let b = enumerate_closed(&prod, &limits).unwrap();
        assert_eq!(a.sets(), b.sets());
        assert!(!built.is_sharp());
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (q, dim) in [(2, 4), (3, 2), (3, 4), (5, 3), (4, 3)] {
            let groups = enumerate_subspaces(q, dim).unwrap();
            for (k, group) in groups.iter().enumerate() {
                assert_eq!(group.len() as u64, gaussian_binomial(q as u64, dim as u32, k as u32), "q={q} dim={dim} k={k}");
                let unique: std::collections::HashSet<_> = group.iter().collect();
                assert_eq!(unique.len(), group.len());
            }
        }
        let g = enumerate_subspaces(3, 4).unwrap();
        assert_eq!(g.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 40, 130, 40, 1]);
        assert_eq!(enumerate_subspaces(2, 4).unwrap()[2].len(), 35);
        assert!(enumerate_subspaces(3, 5).is_err());
        assert!(enumerate_subspaces(6, 2).is_err());
    }

    #[test]
    fn subspace_membership_counts_vectors() {
        let f = Gf::new(3).unwrap();
        for group in enumerate_subspaces(3, 3).unwrap() {
            for v in group {
                let members = (0..27u32)
                    .filter(|&c| v.contains(&f, &[c / 9, c / 3 % 3, c % 3]))
                    .count();
                assert_eq!(members, 3usize.pow(v.dim() as u32));
            }
        }
    }

    #[test]
    fn decomposable_vectors_factor_uniquely() {
        let t = tensor_trace_lattice(3, 1, &Limits::default()).unwrap();
        let field = Gf::new(3).unwrap();
        let points = field.projective_points(2);
        for p in 0..16 {
            let (i, j) = t.product.decode(p);
            let line = Subspace {
                basis: vec![{
                    let mut v = tensor(&field, &points[i], &points[j]);
                    field.normalize(&mut v);
                    v
                }],
            };
            let trace: Vec<usize> = (0..16)
                .filter(|&r| {
                    let (a, b) = t.product.decode(r);
                    line.contains(&field, &tensor(&field, &points[a], &points[b]))
                })
                .collect();
            assert_eq!(trace, vec![p]);
        }
    }

    #[test]
    fn sharp_coatoms_are_traces_of_product_vector_perps() {
        let t = tensor_trace_lattice(3, 1, &Limits::default()).unwrap();
        let field = Gf::new(3).unwrap();
        let points = field.projective_points(2);
        let vec_of = |r: usize| {
            let (a, b) = t.product.decode(r);
            tensor(&field, &points[a], &points[b])
        };
        for p in 0..16 {
            let perp: Vec<usize> = (0..16)
                .filter(|&r| tensor_form(&field, 1, &vec_of(p), &vec_of(r)) == 0)
                .collect();
            assert_eq!(perp, t.product.sharp_coatom(p).to_vec());
        }
    }
}
