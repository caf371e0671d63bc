//! Ideal-theoretic structure of a finite commutative ring: radicals, maximal
//! ideals, quotients, the semisimple decomposition, and the CRT-based free
//! sequence that witnesses a lower bound on the Erdős–Burgess constant of
//! the multiplicative semigroup.

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::ring::{prime_power, FiniteRing};
use crate::semigroup::ElementId;
use crate::solver::is_free;

/// A maximal ideal together with the size of its residue field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalIdeal {
    pub elements: ElementSet,
    pub index: u64,
}

/// Elements with some power equal to zero.
pub fn nilradical(r: &FiniteRing) -> ElementSet {
    let mut set = ElementSet::empty(r.order());
    for a in 0..r.order() as u32 {
        let a = ElementId(a);
        let mut x = a;
        for _ in 0..r.order() {
            if x == r.zero() {
                set.insert(a);
                break;
            }
            x = r.mul(x, a);
        }
    }
    set
}

fn idempotents_of(r: &FiniteRing) -> Vec<ElementId> {
    (0..r.order() as u32)
        .map(ElementId)
        .filter(|&e| r.mul(e, e) == e)
        .collect()
}

/// Maximal ideals paired with the primitive idempotent cutting out the local
/// factor they come from. Every finite commutative ring is a product of
/// local rings; the factors are indexed by the minimal nonzero idempotents,
/// and the maximal ideals are the sets that project into the non-units of
/// one factor.
fn maximal_ideals_with_atoms(r: &FiniteRing) -> Vec<(MaximalIdeal, ElementId)> {
    let idem = idempotents_of(r);
    let atoms: Vec<ElementId> = idem
        .iter()
        .copied()
        .filter(|&e| e != r.zero())
        .filter(|&e| {
            !idem
                .iter()
                .any(|&f| f != r.zero() && f != e && r.mul(f, e) == f)
        })
        .collect();
    let mut out = Vec::with_capacity(atoms.len());
    for &e in &atoms {
        // Local factor L = Re, with identity e.
        let mut local = ElementSet::empty(r.order());
        for x in 0..r.order() as u32 {
            local.insert(r.mul(ElementId(x), e));
        }
        let mut local_units = ElementSet::empty(r.order());
        for z in local.iter() {
            if local.iter().any(|w| r.mul(z, w) == e) {
                local_units.insert(z);
            }
        }
        let mut elements = ElementSet::empty(r.order());
        for x in 0..r.order() as u32 {
            let x = ElementId(x);
            if !local_units.contains(r.mul(x, e)) {
                elements.insert(x);
            }
        }
        let index = (r.order() / elements.len()) as u64;
        debug_assert!(prime_power(index).is_some(), "residue field of size {index}");
        out.push((MaximalIdeal { elements, index }, e));
    }
    out.sort_by(|a, b| a.0.elements.to_vec().cmp(&b.0.elements.to_vec()));
    out
}

/// All maximal ideals, ordered by their element lists (lexicographically).
/// The zero ring has none.
pub fn maximal_ideals(r: &FiniteRing) -> Vec<MaximalIdeal> {
    maximal_ideals_with_atoms(r).into_iter().map(|(m, _)| m).collect()
}

/// Intersection of the maximal ideals.
pub fn jacobson_radical(r: &FiniteRing) -> ElementSet {
    let mut j = ElementSet::full(r.order());
    for m in maximal_ideals(r) {
        j.intersect_with(&m.elements);
    }
    j
}

/// Third route to the radical: `x` is quasi-regular when `1 - x*y` is a unit
/// for every `y`.
pub fn quasi_regular_radical(r: &FiniteRing) -> ElementSet {
    let units = r.units();
    let mut set = ElementSet::empty(r.order());
    'outer: for x in 0..r.order() as u32 {
        let x = ElementId(x);
        for y in 0..r.order() as u32 {
            if !units.contains(r.sub(r.one(), r.mul(x, ElementId(y)))) {
                continue 'outer;
            }
        }
        set.insert(x);
    }
    set
}

/// Check that `set` is an ideal: contains zero, closed under addition,
/// absorbs multiplication by the whole ring.
pub fn validate_ideal(r: &FiniteRing, set: &ElementSet) -> Result<()> {
    if set.owner_order() != r.order() {
        return Err(Error::input(format!(
            "ideal carrier has order {}, ring {:?} has order {}",
            set.owner_order(),
            r.label(),
            r.order()
        )));
    }
    if !set.contains(r.zero()) {
        return Err(Error::input(format!(
            "ideal of {:?} must contain zero",
            r.label()
        )));
    }
    for a in set.iter() {
        for b in set.iter() {
            if !set.contains(r.add(a, b)) {
                return Err(Error::input(format!(
                    "not additively closed: {a} + {b} escapes"
                )));
            }
        }
        for x in 0..r.order() as u32 {
            if !set.contains(r.mul(a, ElementId(x))) {
                return Err(Error::input(format!(
                    "does not absorb products: {a} * {x} escapes"
                )));
            }
        }
    }
    Ok(())
}

/// Smallest ideal containing the given generators.
pub fn ideal_generated_by(r: &FiniteRing, gens: &[ElementId]) -> Result<ElementSet> {
    let mut set = ElementSet::empty(r.order());
    set.insert(r.zero());
    for &g in gens {
        r.check_id(g)?;
        for x in 0..r.order() as u32 {
            set.insert(r.mul(ElementId(x), g));
        }
    }
    // The union of the multiples is absorbing; close it under addition.
    loop {
        let members: Vec<ElementId> = set.iter().collect();
        let before = members.len();
        for &a in &members {
            for &b in &members {
                set.insert(r.add(a, b));
            }
        }
        if set.len() == before {
            break;
        }
    }
    debug_assert!(validate_ideal(r, &set).is_ok());
    Ok(set)
}

/// Quotient by an ideal. Returns the quotient ring, whose element `i` is the
/// coset of the `i`-th smallest coset representative, and the projection
/// sending each element of `r` to the id of its coset.
pub fn quotient_ring(r: &FiniteRing, ideal: &ElementSet) -> Result<(FiniteRing, Vec<ElementId>)> {
    validate_ideal(r, ideal)?;
    let n = r.order();
    let mut class_of = vec![u32::MAX; n];
    let mut reps: Vec<ElementId> = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let q = reps.len() as u32;
        let x = ElementId(x as u32);
        reps.push(x);
        for i in ideal.iter() {
            class_of[r.add(x, i).index()] = q;
        }
    }
    let m = reps.len();
    let mut add = vec![0u32; m * m];
    let mut mul = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            add[i * m + j] = class_of[r.add(reps[i], reps[j]).index()];
            mul[i * m + j] = class_of[r.mul(reps[i], reps[j]).index()];
        }
    }
    let members: Vec<String> = ideal.iter().map(|e| e.0.to_string()).collect();
    let label = format!("{} mod {{{}}}", r.label(), members.join(","));
    let q = FiniteRing::from_tables(label, m, add, mul)?;
    let proj = class_of.into_iter().map(ElementId).collect();
    Ok((q, proj))
}

/// One field factor of a semisimple ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FieldDescriptor {
    pub characteristic: u64,
    pub degree: u32,
    pub order: u64,
}

/// The field factors when the ring is semisimple (radical zero), sorted by
/// characteristic then degree; `None` otherwise. The zero ring is the empty
/// product.
pub fn semisimple_decomposition(r: &FiniteRing) -> Option<Vec<FieldDescriptor>> {
    let with_atoms = maximal_ideals_with_atoms(r);
    let mut j = ElementSet::full(r.order());
    for (m, _) in &with_atoms {
        j.intersect_with(&m.elements);
    }
    if j.len() != 1 {
        return None;
    }
    let mut fields: Vec<FieldDescriptor> = with_atoms
        .iter()
        .map(|(m, e)| {
            let q = m.index;
            let (p, k) = prime_power(q).expect("residue fields have prime power order");
            debug_assert_eq!(r.additive_order(*e) as u64, p);
            FieldDescriptor {
                characteristic: p,
                degree: k,
                order: q,
            }
        })
        .collect();
    fields.sort();
    Some(fields)
}

/// Everything the structure pass knows about a ring.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub ring: String,
    pub order: usize,
    pub characteristic: usize,
    pub idempotents: ElementSet,
    pub units: ElementSet,
    pub nilradical: ElementSet,
    pub jacobson_radical: ElementSet,
    pub maximal_ideals: Vec<MaximalIdeal>,
    pub index_two_count: usize,
    pub index_gt_two_count: usize,
    pub is_boolean: bool,
    pub semisimple: bool,
    pub semisimple_factors: Option<Vec<FieldDescriptor>>,
}

pub fn analyze(r: &FiniteRing) -> StructureReport {
    let with_atoms = maximal_ideals_with_atoms(r);
    let mut jacobson = ElementSet::full(r.order());
    for (m, _) in &with_atoms {
        jacobson.intersect_with(&m.elements);
    }
    let nil = nilradical(r);
    debug_assert_eq!(nil, jacobson, "radicals of a finite commutative ring agree");
    let maximal: Vec<MaximalIdeal> = with_atoms.into_iter().map(|(m, _)| m).collect();
    let index_two_count = maximal.iter().filter(|m| m.index == 2).count();
    let index_gt_two_count = maximal.iter().filter(|m| m.index > 2).count();
    let semisimple_factors = semisimple_decomposition(r);
    let mut idempotents = ElementSet::empty(r.order());
    for e in idempotents_of(r) {
        idempotents.insert(e);
    }
    StructureReport {
        ring: r.label().to_string(),
        order: r.order(),
        characteristic: r.characteristic(),
        idempotents,
        units: r.units(),
        nilradical: nil,
        jacobson_radical: jacobson,
        maximal_ideals: maximal,
        index_two_count,
        index_gt_two_count,
        is_boolean: r.is_boolean(),
        semisimple: semisimple_factors.is_some(),
        semisimple_factors,
    }
}

/// One component of the CRT witness: a maximal ideal of residue field size
/// above two, the chosen unit residue in the semisimplification, and its
/// lift back to the ring.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateEntry {
    pub index: u64,
    pub residue: ElementId,
    pub lift: ElementId,
}

/// A free sequence built one element per maximal ideal of index above two:
/// the lift is a unit that is not idempotent modulo its own ideal and is `1`
/// modulo every other, so no nonempty subsequence product is idempotent.
#[derive(Debug, Clone, Serialize)]
pub struct CrtCertificate {
    pub ring: String,
    pub entries: Vec<CertificateEntry>,
    pub sequence: Vec<ElementId>,
    pub lower_bound: usize,
    pub index_two_skipped: usize,
}

pub fn claim_b_sequence(r: &FiniteRing) -> Result<CrtCertificate> {
    let radical = jacobson_radical(r);
    let (q, proj) = quotient_ring(r, &radical)?;
    let mut entries = Vec::new();
    let mut sequence = Vec::new();
    let mut skipped = 0usize;
    for (m, e) in maximal_ideals_with_atoms(&q) {
        if m.index <= 2 {
            skipped += 1;
            continue;
        }
        let residue = (0..q.order() as u32)
            .map(ElementId)
            .find(|&b| !m.elements.contains(q.sub(q.mul(b, b), b)))
            .expect("a residue field of size above two has a non-idempotent unit");
        // One in this component, `residue` there, one everywhere else.
        let component = q.add(q.mul(residue, e), q.sub(q.one(), e));
        debug_assert!(!m.elements.contains(component));
        let lift = (0..r.order() as u32)
            .map(ElementId)
            .find(|&x| proj[x.index()] == component)
            .expect("quotient projections are surjective");
        entries.push(CertificateEntry {
            index: m.index,
            residue,
            lift,
        });
        sequence.push(lift);
    }
    let s = r.mult_semigroup();
    if !is_free(&s, &sequence)? {
        return Err(Error::property(format!(
            "CRT sequence for {:?} has an idempotent subsequence product",
            r.label()
        )));
    }
    let lower_bound = sequence.len() + 1;
    Ok(CrtCertificate {
        ring: r.label().to_string(),
        entries,
        sequence,
        lower_bound,
        index_two_skipped: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_gf, make_quotient_poly, make_zmod, ring_product};

    fn id(i: u32) -> ElementId {
        ElementId(i)
    }

    fn ids(v: &[u32]) -> Vec<ElementId> {
        v.iter().map(|&i| id(i)).collect()
    }

    #[test]
    fn nilradical_of_modular_rings() {
        assert_eq!(nilradical(&make_zmod(4).unwrap()).to_vec(), ids(&[0, 2]));
        assert_eq!(nilradical(&make_zmod(12).unwrap()).to_vec(), ids(&[0, 6]));
        assert_eq!(nilradical(&make_zmod(7).unwrap()).to_vec(), ids(&[0]));
    }

    #[test]
    fn maximal_ideals_of_z6_in_element_order() {
        let ideals = maximal_ideals(&make_zmod(6).unwrap());
        assert_eq!(ideals.len(), 2);
        assert_eq!(ideals[0].elements.to_vec(), ids(&[0, 2, 4]));
        assert_eq!(ideals[0].index, 2);
        assert_eq!(ideals[1].elements.to_vec(), ids(&[0, 3]));
        assert_eq!(ideals[1].index, 3);
    }

    #[test]
    fn field_has_only_the_zero_ideal() {
        let ideals = maximal_ideals(&make_gf(2, 2).unwrap());
        assert_eq!(ideals.len(), 1);
        assert_eq!(ideals[0].elements.to_vec(), ids(&[0]));
        assert_eq!(ideals[0].index, 4);
    }

    #[test]
    fn zero_ring_has_no_maximal_ideals() {
        let z1 = make_zmod(1).unwrap();
        assert!(maximal_ideals(&z1).is_empty());
        assert_eq!(jacobson_radical(&z1).len(), 1);
        assert_eq!(semisimple_decomposition(&z1), Some(vec![]));
    }

    #[test]
    fn radicals_agree_three_ways() {
        for n in 1..=30 {
            let r = make_zmod(n).unwrap();
            let nil = nilradical(&r);
            assert_eq!(nil, jacobson_radical(&r), "Z/{n}");
            assert_eq!(nil, quasi_regular_radical(&r), "Z/{n}");
        }
        let dual = make_quotient_poly(&make_zmod(2).unwrap(), &ids(&[0, 0, 1])).unwrap();
        assert_eq!(nilradical(&dual).to_vec(), ids(&[0, 2]));
        assert_eq!(jacobson_radical(&dual).to_vec(), ids(&[0, 2]));
        assert_eq!(quasi_regular_radical(&dual).to_vec(), ids(&[0, 2]));
    }

    #[test]
    fn ideal_generation_and_validation() {
        let r = make_zmod(12).unwrap();
        let i4 = ideal_generated_by(&r, &[id(4)]).unwrap();
        assert_eq!(i4.to_vec(), ids(&[0, 4, 8]));
        validate_ideal(&r, &i4).unwrap();

        let mut not_closed = ElementSet::empty(12);
        not_closed.insert(id(0));
        not_closed.insert(id(3));
        assert!(validate_ideal(&r, &not_closed).is_err());

        let mut no_zero = ElementSet::empty(12);
        no_zero.insert(id(4));
        assert!(validate_ideal(&r, &no_zero).is_err());
    }

    #[test]
    fn quotient_of_z12_by_radical() {
        let r = make_zmod(12).unwrap();
        let j = jacobson_radical(&r);
        assert_eq!(j.to_vec(), ids(&[0, 6]));
        let (q, proj) = quotient_ring(&r, &j).unwrap();
        assert_eq!(q.order(), 6);
        // Cosets in rep order: {0,6} {1,7} {2,8} {3,9} {4,10} {5,11}.
        assert_eq!(proj[7], id(1));
        assert_eq!(proj[10], id(4));
        assert!(crate::ring::are_isomorphic_rings(&q, &make_zmod(6).unwrap()).unwrap());
    }

    #[test]
    fn quotient_by_whole_ring_is_zero_ring() {
        let r = make_zmod(4).unwrap();
        let all = ElementSet::full(4);
        let (q, proj) = quotient_ring(&r, &all).unwrap();
        assert_eq!(q.order(), 1);
        assert!(proj.iter().all(|&c| c == id(0)));
    }

    #[test]
    fn boolean_quotient_of_a_mixed_product() {
        let z2 = make_zmod(2).unwrap();
        let b2 = ring_product(&z2, &z2).unwrap();
        let r = ring_product(&b2, &make_zmod(3).unwrap()).unwrap();
        assert!(!r.is_boolean());
        // (0,0,1) has index 1; it generates the copy of Z/3.
        let i = ideal_generated_by(&r, &[id(1)]).unwrap();
        assert_eq!(i.to_vec(), ids(&[0, 1, 2]));
        let (q, _) = quotient_ring(&r, &i).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_boolean());
    }

    #[test]
    fn semisimple_factors_of_z30() {
        let fields = semisimple_decomposition(&make_zmod(30).unwrap()).unwrap();
        let sizes: Vec<u64> = fields.iter().map(|f| f.order).collect();
        assert_eq!(sizes, vec![2, 3, 5]);
        assert!(fields.iter().all(|f| f.degree == 1));
        assert!(semisimple_decomposition(&make_zmod(4).unwrap()).is_none());
    }

    #[test]
    fn analyze_z12() {
        let report = analyze(&make_zmod(12).unwrap());
        assert_eq!(report.order, 12);
        assert_eq!(report.characteristic, 12);
        assert_eq!(report.idempotents.to_vec(), ids(&[0, 1, 4, 9]));
        assert_eq!(report.units.to_vec(), ids(&[1, 5, 7, 11]));
        assert_eq!(report.jacobson_radical.to_vec(), ids(&[0, 6]));
        assert_eq!(report.maximal_ideals.len(), 2);
        assert_eq!(report.index_two_count, 1);
        assert_eq!(report.index_gt_two_count, 1);
        assert!(!report.is_boolean);
        assert!(!report.semisimple);
        assert_eq!(report.semisimple_factors, None);
    }

    #[test]
    fn crt_sequence_for_z15() {
        let cert = claim_b_sequence(&make_zmod(15).unwrap()).unwrap();
        assert_eq!(cert.sequence, ids(&[11, 7]));
        assert_eq!(cert.lower_bound, 3);
        assert_eq!(cert.index_two_skipped, 0);
        assert_eq!(cert.entries[0].index, 3);
        assert_eq!(cert.entries[1].index, 5);
    }

    #[test]
    fn crt_sequence_for_prime_field() {
        let cert = claim_b_sequence(&make_zmod(3).unwrap()).unwrap();
        assert_eq!(cert.sequence, ids(&[2]));
        assert_eq!(cert.lower_bound, 2);
    }

    #[test]
    fn crt_sequence_skips_small_residue_fields() {
        let cert = claim_b_sequence(&make_zmod(2).unwrap()).unwrap();
        assert!(cert.sequence.is_empty());
        assert_eq!(cert.lower_bound, 1);
        assert_eq!(cert.index_two_skipped, 1);

        let z2 = make_zmod(2).unwrap();
        let b2 = ring_product(&z2, &z2).unwrap();
        let cert = claim_b_sequence(&b2).unwrap();
        assert!(cert.sequence.is_empty());
        assert_eq!(cert.index_two_skipped, 2);
    }

    #[test]
    fn crt_sequence_survives_a_radical() {
        // Z/12 semisimplifies to Z/6; only the residue field of size 3
        // contributes, and the lift must stay free in Z/12 itself.
        let cert = claim_b_sequence(&make_zmod(12).unwrap()).unwrap();
        assert_eq!(cert.sequence.len(), 1);
        assert_eq!(cert.lower_bound, 2);
        assert_eq!(cert.index_two_skipped, 1);
        assert!(is_free(&make_zmod(12).unwrap().mult_semigroup(), &cert.sequence).unwrap());
    }
}
