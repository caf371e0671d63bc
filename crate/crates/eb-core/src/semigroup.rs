//! Finite commutative semigroups presented by dense multiplication tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Default cap on carrier orders for table-backed construction.
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Orders up to this bound get an exhaustive associativity check; larger
/// tables are checked on `SAMPLED_TRIPLES` seeded random triples instead.
pub const EXHAUSTIVE_CHECK_ORDER: usize = 64;

/// Number of random triples checked when exhaustive verification is too big.
pub const SAMPLED_TRIPLES: usize = 100_000;

/// Seed for sampled axiom checks when the caller does not supply one.
pub const DEFAULT_CHECK_SEED: u64 = 0xeb00_5eed;

/// Index of an element in its carrier, valid only together with that carrier.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for ElementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite commutative semigroup: a closed, associative, commutative
/// operation on `{0, .., order-1}` given by a dense row-major table.
///
/// Construction validates closure and commutativity exhaustively and
/// associativity exhaustively up to order 64, by seeded sampling above that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<u32>,
    label: String,
}

impl FiniteSemigroup {
    pub fn from_table(label: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self> {
        Self::from_table_seeded(label, order, table, DEFAULT_CHECK_SEED)
    }

    pub fn from_table_seeded(
        label: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        seed: u64,
    ) -> Result<Self> {
        let label = label.into();
        if order == 0 {
            return Err(Error::input(format!("semigroup {label:?}: order must be positive")));
        }
        if order > DEFAULT_ORDER_CAP {
            return Err(Error::resource(format!(
                "semigroup {label:?}: order {order} exceeds cap {DEFAULT_ORDER_CAP}"
            )));
        }
        if table.len() != order * order {
            return Err(Error::input(format!(
                "semigroup {label:?}: table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(Error::input(format!(
                "semigroup {label:?}: table entry {bad} out of range for order {order}"
            )));
        }
        let s = FiniteSemigroup { order, table, label };
        s.check_commutative()?;
        s.check_associative(seed)?;
        Ok(s)
    }

    fn check_commutative(&self) -> Result<()> {
        for a in 0..self.order {
            for b in a + 1..self.order {
                if self.table[a * self.order + b] != self.table[b * self.order + a] {
                    return Err(Error::input(format!(
                        "semigroup {:?}: {a}*{b} != {b}*{a}",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let fail = |a: usize, b: usize, c: usize| {
            Err(Error::input(format!(
                "semigroup {:?}: ({a}*{b})*{c} != {a}*({b}*{c})",
                self.label
            )))
        };
        if n <= EXHAUSTIVE_CHECK_ORDER {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.table[a * n + b] as usize;
                    for c in 0..n {
                        if self.table[ab * n + c] != self.table[a * n + self.table[b * n + c] as usize] {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                let ab = self.table[a * n + b] as usize;
                let bc = self.table[b * n + c] as usize;
                if self.table[ab * n + c] != self.table[a * n + bc] {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn check_id(&self, a: ElementId) -> Result<()> {
        if a.index() >= self.order {
            return Err(Error::input(format!(
                "element {a} out of range for {:?} of order {}",
                self.label, self.order
            )));
        }
        Ok(())
    }

    /// Bounds-checked product.
    pub fn product(&self, a: ElementId, b: ElementId) -> Result<ElementId> {
        self.check_id(a)?;
        self.check_id(b)?;
        Ok(self.mul(a, b))
    }

    /// Product of two valid ids; panics on out-of-range input.
    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.table[a.index() * self.order + b.index()])
    }

    /// Row of the table for a fixed left factor.
    #[inline]
    pub(crate) fn row(&self, a: ElementId) -> &[u32] {
        &self.table[a.index() * self.order..(a.index() + 1) * self.order]
    }

    /// All `e` with `e*e = e`. Every finite semigroup has at least one.
    pub fn idempotent_set(&self) -> ElementSet {
        let mut set = ElementSet::empty(self.order);
        for i in 0..self.order {
            let e = ElementId(i as u32);
            if self.mul(e, e) == e {
                set.insert(e);
            }
        }
        set
    }

    /// Smallest subsemigroup containing `generators`, re-indexed to a fresh
    /// carrier. The result keeps the generators' ambient order: element `i`
    /// of the closure is `embedding[i]` in `self`, with embedding ascending.
    pub fn subsemigroup_closure(&self, generators: &ElementSet) -> Result<Subsemigroup> {
        if generators.owner_order() != self.order {
            return Err(Error::input(format!(
                "generator set is over a carrier of order {}, not {}",
                generators.owner_order(),
                self.order
            )));
        }
        if generators.is_empty() {
            return Err(Error::input("closure of an empty generator set is empty"));
        }
        let mut members = generators.clone();
        loop {
            let mut grew = false;
            let current = members.to_vec();
            for &a in &current {
                for &b in &current {
                    let p = self.mul(a, b);
                    if !members.contains(p) {
                        members.insert(p);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let embedding = members.to_vec();
        let mut back = vec![u32::MAX; self.order];
        for (new, &old) in embedding.iter().enumerate() {
            back[old.index()] = new as u32;
        }
        let m = embedding.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in embedding.iter().enumerate() {
            for (j, &b) in embedding.iter().enumerate() {
                table[i * m + j] = back[self.mul(a, b).index()];
            }
        }
        let label = format!("closure of {} elements in {}", generators.len(), self.label);
        Ok(Subsemigroup {
            semigroup: FiniteSemigroup::from_table(label, m, table)?,
            embedding,
        })
    }

    /// Componentwise product on pairs, indexed as `i1 * order(other) + i2`.
    pub fn direct_product(&self, other: &FiniteSemigroup, cap: usize) -> Result<FiniteSemigroup> {
        let order = self.order * other.order;
        if order > cap {
            return Err(Error::resource(format!(
                "product of {} and {} has order {order}, cap is {cap}",
                self.label, other.label
            )));
        }
        let (n2, mut table) = (other.order, vec![0u32; order * order]);
        for a1 in 0..self.order {
            for a2 in 0..n2 {
                let a = a1 * n2 + a2;
                for b1 in 0..self.order {
                    let p1 = self.table[a1 * self.order + b1] as usize;
                    for b2 in 0..n2 {
                        let p2 = other.table[a2 * n2 + b2] as usize;
                        table[a * order + b1 * n2 + b2] = (p1 * n2 + p2) as u32;
                    }
                }
            }
        }
        FiniteSemigroup::from_table(format!("{} x {}", self.label, other.label), order, table)
    }

    /// Is `map` (indexed by elements of `self`) a surjective homomorphism
    /// onto `target`?
    pub fn is_epimorphism(&self, target: &FiniteSemigroup, map: &[ElementId]) -> Result<bool> {
        if map.len() != self.order {
            return Err(Error::input(format!(
                "map has {} entries, expected {}",
                map.len(),
                self.order
            )));
        }
        let mut hit = ElementSet::empty(target.order);
        for &img in map {
            target.check_id(img)?;
            hit.insert(img);
        }
        if hit.len() != target.order {
            return Ok(false);
        }
        for a in 0..self.order {
            for b in a..self.order {
                let (a, b) = (ElementId(a as u32), ElementId(b as u32));
                if map[self.mul(a, b).index()] != target.mul(map[a.index()], map[b.index()]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A subsemigroup re-indexed to its own carrier, plus the injection back
/// into the ambient semigroup.
#[derive(Debug, Clone)]
pub struct Subsemigroup {
    pub semigroup: FiniteSemigroup,
    pub embedding: Vec<ElementId>,
}

/// The abelian group `Z_{d_1} x .. x Z_{d_k}` written multiplicatively, with
/// mixed-radix element indexing (last factor varies fastest).
pub fn abelian_group(factors: &[u64]) -> Result<FiniteSemigroup> {
    if factors.is_empty() {
        return Err(Error::input("at least one cyclic factor required"));
    }
    if factors.contains(&0) {
        return Err(Error::input("cyclic factors must be positive"));
    }
    let order = factors.iter().try_fold(1usize, |acc, &d| {
        acc.checked_mul(d as usize).filter(|&o| o <= DEFAULT_ORDER_CAP)
    });
    let Some(order) = order else {
        return Err(Error::resource(format!(
            "group order for factors {factors:?} exceeds cap {DEFAULT_ORDER_CAP}"
        )));
    };
    let digits = |mut x: usize| -> Vec<usize> {
        let mut ds = vec![0; factors.len()];
        for (i, &d) in factors.iter().enumerate().rev() {
            ds[i] = x % d as usize;
            x /= d as usize;
        }
        ds
    };
    let mut table = vec![0u32; order * order];
    for a in 0..order {
        let da = digits(a);
        for b in 0..order {
            let db = digits(b);
            let mut sum = 0usize;
            for ((&x, &y), &d) in da.iter().zip(&db).zip(factors) {
                sum = sum * d as usize + (x + y) % d as usize;
            }
            table[a * order + b] = sum as u32;
        }
    }
    let label = factors
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join(" x ");
    FiniteSemigroup::from_table(label, order, table)
}

/// Largest order accepted by the isomorphism search.
pub const ISO_SEARCH_MAX_ORDER: usize = 16;

/// Backtracking isomorphism test for small carriers (order <= 16).
///
/// Bijections are forced to respect idempotence and local power structure,
/// which prunes the search far below `order!`.
pub fn are_isomorphic(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Result<bool> {
    if s.order > ISO_SEARCH_MAX_ORDER || t.order > ISO_SEARCH_MAX_ORDER {
        return Err(Error::resource(format!(
            "isomorphism search handles order <= {ISO_SEARCH_MAX_ORDER}, got {} and {}",
            s.order, t.order
        )));
    }
    if s.order != t.order {
        return Ok(false);
    }
    // (idempotent, length of the power trajectory of a, distinct products with a)
    let fingerprint = |g: &FiniteSemigroup, a: ElementId| -> (bool, u32, usize) {
        let idem = g.mul(a, a) == a;
        let mut seen = vec![false; g.order];
        let (mut x, mut steps) = (a, 0u32);
        while !seen[x.index()] {
            seen[x.index()] = true;
            x = g.mul(x, a);
            steps += 1;
        }
        let mut row: Vec<u32> = g.row(a).to_vec();
        row.sort_unstable();
        row.dedup();
        (idem, steps, row.len())
    };
    let fs: Vec<_> = (0..s.order).map(|i| fingerprint(s, ElementId(i as u32))).collect();
    let ft: Vec<_> = (0..t.order).map(|i| fingerprint(t, ElementId(i as u32))).collect();
    {
        let mut a = fs.clone();
        let mut b = ft.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(false);
        }
    }
    fn full_check(s: &FiniteSemigroup, t: &FiniteSemigroup, map: &[ElementId]) -> bool {
        for a in 0..s.order() {
            for b in a..s.order() {
                let (ai, bi) = (ElementId(a as u32), ElementId(b as u32));
                if map[s.mul(ai, bi).index()] != t.mul(map[a], map[b]) {
                    return false;
                }
            }
        }
        true
    }
    fn extend(
        s: &FiniteSemigroup,
        t: &FiniteSemigroup,
        fs: &[(bool, u32, usize)],
        ft: &[(bool, u32, usize)],
        map: &mut Vec<Option<ElementId>>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        if next == s.order() {
            let complete: Vec<ElementId> = map.iter().map(|m| m.unwrap()).collect();
            return full_check(s, t, &complete);
        }
        let a = ElementId(next as u32);
        'cand: for c in 0..t.order() {
            if used[c] || fs[next] != ft[c] {
                continue;
            }
            let img = ElementId(c as u32);
            // Eager check: products with already-assigned elements whose
            // (forced) image either is pinned or collides with a used image.
            for b in 0..=next {
                let bi = ElementId(b as u32);
                let b_img = if b == next { img } else { map[b].unwrap() };
                let p = s.mul(a, bi);
                let q = t.mul(img, b_img);
                match map[p.index()] {
                    Some(pi) if pi != q => continue 'cand,
                    Some(_) => {}
                    None => {
                        if p.index() == next && img != q {
                            continue 'cand;
                        }
                        if p.index() != next && used[q.index()] {
                            continue 'cand;
                        }
                    }
                }
            }
            map[next] = Some(img);
            used[c] = true;
            if extend(s, t, fs, ft, map, used, next + 1) {
                return true;
            }
            map[next] = None;
            used[c] = false;
        }
        false
    }
    let mut map = vec![None; s.order];
    let mut used = vec![false; t.order];
    Ok(extend(s, t, &fs, &ft, &mut map, &mut used, 0))
}
