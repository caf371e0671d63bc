//! Exact computation of the Erdős–Burgess constant of a finite commutative
//! semigroup: the least `l` such that every sequence of `l` elements has a
//! nonempty subsequence whose product is idempotent.
//!
//! The search walks canonical (non-decreasing) element multisets and keeps,
//! per state, the set of all nonempty subsequence products. A sequence is
//! extendable only while that product set avoids the idempotents, and each
//! free extension strictly grows the product set, which both bounds the
//! depth and lets states reached by different prefixes share work through a
//! memo table.

use std::hash::{BuildHasher, Hasher};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use dashmap::mapref::entry::Entry;
use dashmap::DashMap;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::semigroup::{ElementId, FiniteSemigroup};

/// The set of all products of nonempty subsequences of some sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProductSet(pub ElementSet);

impl ProductSet {
    pub fn empty(owner_order: usize) -> Self {
        ProductSet(ElementSet::empty(owner_order))
    }

    pub fn as_set(&self) -> &ElementSet {
        &self.0
    }
}

/// Product set after appending `a`: `P ∪ aP ∪ {a}`.
pub fn extend(s: &FiniteSemigroup, p: &ProductSet, a: ElementId) -> ProductSet {
    let row = s.row(a);
    let mut out = p.0.clone();
    for x in p.0.iter() {
        out.insert(ElementId(row[x.index()]));
    }
    out.insert(a);
    ProductSet(out)
}

/// Does `seq` avoid every idempotent product? Checks every nonempty
/// subsequence at once via the running product set; the order of `seq` is
/// irrelevant because the semigroup is commutative. The empty sequence is
/// vacuously free.
pub fn is_free(s: &FiniteSemigroup, seq: &[ElementId]) -> Result<bool> {
    let idem = s.idempotent_set();
    let mut p = ProductSet::empty(s.order());
    for &a in seq {
        if a.index() >= s.order() {
            return Err(Error::input(format!(
                "element {a} out of range for {:?} of order {}",
                s.label(),
                s.order()
            )));
        }
        p = extend(s, &p, a);
        if !p.0.is_disjoint(&idem) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Upper bound `|S \ E(S)| + 1` on the Erdős–Burgess constant: a free
/// sequence grows its product set inside the non-idempotents at every step.
pub fn ghw_bound(s: &FiniteSemigroup) -> usize {
    s.order() - s.idempotent_set().len() + 1
}

/// Search tuning. `depth_budget = None` uses the `ghw_bound` cap, which the
/// search can never hit, so results are exact by default.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub depth_budget: Option<usize>,
    pub memo_capacity: usize,
    pub parallel_width: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth_budget: None,
            memo_capacity: 1 << 24,
            parallel_width: 1,
        }
    }
}

/// Computed constant, or the certified lower bound when the budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EbValue {
    Exact { value: usize },
    ExceedsBudget { bound: usize },
}

impl EbValue {
    /// The exact constant, if the search completed.
    pub fn exact(self) -> Option<usize> {
        match self {
            EbValue::Exact { value } => Some(value),
            EbValue::ExceedsBudget { .. } => None,
        }
    }

    /// Certified lower bound on the constant in either case.
    pub fn lower_bound(self) -> usize {
        match self {
            EbValue::Exact { value } => value,
            EbValue::ExceedsBudget { bound } => bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EbResult {
    #[serde(flatten)]
    pub value: EbValue,
    /// Lexicographically smallest free sequence of the greatest explored
    /// length, in canonical non-decreasing order.
    pub extremal_sequence: Vec<ElementId>,
    pub nodes_explored: u64,
    pub memo_hits: u64,
    pub ghw_bound: usize,
}

// ---------------------------------------------------------------------------
// Memo table: state -> certified extension depth.

#[derive(Clone, PartialEq, Eq, Hash)]
struct StateKey {
    products: ElementSet,
    min_next: u32,
}

const PENDING: u64 = u64::MAX;
const COMPLETE_BIT: u64 = 1 << 32;

struct Slot {
    /// `PENDING`, or `depth | COMPLETE_BIT?`. Complete means the subtree
    /// was fully explored, so the depth is exact rather than budget-capped.
    state: AtomicU64,
    touch: AtomicU64,
}

impl Slot {
    fn pending(now: u64) -> Self {
        Slot {
            state: AtomicU64::new(PENDING),
            touch: AtomicU64::new(now),
        }
    }
}

fn encode(depth: u32, complete: bool) -> u64 {
    depth as u64 | if complete { COMPLETE_BIT } else { 0 }
}

fn decode(state: u64) -> (u32, bool) {
    (state as u32, state & COMPLETE_BIT != 0)
}

/// Multiply-rotate hasher for memo keys; the default hasher dominates the
/// search profile otherwise.
#[derive(Default, Clone)]
struct FxBuild;

struct FxHasher(u64);

const HASH_K: u64 = 0x517c_c1b7_2722_0a95;

impl Hasher for FxHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = (self.0.rotate_left(5) ^ x).wrapping_mul(HASH_K);
    }

    fn write_u32(&mut self, x: u32) {
        self.write_u64(x as u64);
    }

    fn write_usize(&mut self, x: usize) {
        self.write_u64(x as u64);
    }

    fn write_u8(&mut self, x: u8) {
        self.write_u64(x as u64);
    }
}

impl BuildHasher for FxBuild {
    type Hasher = FxHasher;

    fn build_hasher(&self) -> FxHasher {
        FxHasher(0)
    }
}

// ---------------------------------------------------------------------------

struct Engine<'a> {
    s: &'a FiniteSemigroup,
    idem: ElementSet,
    /// Non-idempotent elements, ascending; free sequences use nothing else.
    candidates: Vec<ElementId>,
    /// `kill[a] = {x : a*x idempotent}`. Appending `a` to a live product set
    /// `P` stays free exactly when `P` misses `kill[a]`, which turns the
    /// viability test into a word-wide intersection instead of a rebuild of
    /// the child set.
    kill: Vec<ElementSet>,
    budget: usize,
    memo: DashMap<StateKey, Slot, FxBuild>,
    capacity: usize,
    clock: AtomicU64,
    nodes: AtomicU64,
    hits: AtomicU64,
    truncated: AtomicBool,
    /// Greatest certified total free length seen, for the budget-exceeded bound.
    best_total: AtomicUsize,
    evicting: AtomicBool,
}

impl<'a> Engine<'a> {
    fn new(s: &'a FiniteSemigroup, cfg: &SearchConfig) -> Self {
        let idem = s.idempotent_set();
        let candidates: Vec<ElementId> = (0..s.order() as u32)
            .map(ElementId)
            .filter(|&a| !idem.contains(a))
            .collect();
        let kill = (0..s.order() as u32)
            .map(|a| {
                let row = s.row(ElementId(a));
                let mut k = ElementSet::empty(s.order());
                for x in 0..s.order() {
                    if idem.contains(ElementId(row[x])) {
                        k.insert(ElementId(x as u32));
                    }
                }
                k
            })
            .collect();
        let budget = cfg.depth_budget.unwrap_or_else(|| ghw_bound(s));
        Engine {
            s,
            idem,
            candidates,
            kill,
            budget,
            memo: DashMap::with_hasher(FxBuild),
            capacity: cfg.memo_capacity.max(64),
            clock: AtomicU64::new(0),
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
            truncated: AtomicBool::new(false),
            best_total: AtomicUsize::new(0),
            evicting: AtomicBool::new(false),
        }
    }

    fn candidates_from(&self, m: ElementId) -> &[ElementId] {
        let start = self.candidates.partition_point(|&a| a < m);
        &self.candidates[start..]
    }

    /// Smallest candidate `>= m` that keeps `products` free, or `u32::MAX`
    /// when the state is a dead end. Extensions only ever start at this
    /// element, so states that agree here are interchangeable; keying the
    /// memo on the canonical value merges them.
    fn canonical_min(&self, products: &ElementSet, m: ElementId) -> u32 {
        for &a in self.candidates_from(m) {
            if self.kill[a.index()].is_disjoint(products) {
                return a.0;
            }
        }
        u32::MAX
    }

    fn note_total(&self, total: usize) {
        self.best_total.fetch_max(total, Ordering::Relaxed);
    }

    /// Certified depth from a child state, respecting `remaining`. Claims
    /// the state in the memo so each state is computed once; concurrent
    /// arrivals wait for the winner instead of duplicating the subtree.
    fn visit(&self, products: ElementSet, min_next: ElementId, remaining: usize) -> (u32, bool) {
        let min_next = ElementId(self.canonical_min(&products, min_next));
        let key = StateKey {
            products,
            min_next: min_next.0,
        };
        let now = self.clock.fetch_add(1, Ordering::Relaxed);
        loop {
            match self.memo.entry(key.clone()) {
                Entry::Vacant(v) => {
                    let _ = v.insert(Slot::pending(now));
                    break;
                }
                Entry::Occupied(o) => {
                    let state = o.get().state.load(Ordering::Acquire);
                    o.get().touch.store(now, Ordering::Relaxed);
                    drop(o);
                    if state == PENDING {
                        if let Some(state) = self.await_slot(&key) {
                            return self.interpret(&key, state, remaining);
                        }
                        continue; // entry vanished; claim it ourselves
                    }
                    return self.interpret(&key, state, remaining);
                }
            }
        }
        let (depth, complete) = self.compute(&key.products, min_next, remaining);
        match self.memo.get(&key) {
            Some(slot) => slot.state.store(encode(depth, complete), Ordering::Release),
            None => {
                let slot = Slot::pending(now);
                slot.state.store(encode(depth, complete), Ordering::Release);
                self.memo.insert(key, slot);
            }
        }
        self.maybe_evict();
        (depth, complete)
    }

    /// Spin until the computing thread publishes; `None` if the entry was
    /// evicted mid-wait.
    fn await_slot(&self, key: &StateKey) -> Option<u64> {
        loop {
            std::thread::yield_now();
            let slot = self.memo.get(key)?;
            let state = slot.state.load(Ordering::Acquire);
            if state != PENDING {
                return Some(state);
            }
        }
    }

    /// Apply a stored depth to the current remaining budget.
    fn interpret(&self, key: &StateKey, state: u64, remaining: usize) -> (u32, bool) {
        let (depth, complete) = decode(state);
        if complete {
            self.hits.fetch_add(1, Ordering::Relaxed);
            if depth as usize <= remaining {
                return (depth, true);
            }
            // A longer certified extension exists than this path may use.
            self.truncated.store(true, Ordering::Relaxed);
            self.note_total(self.budget - remaining + depth as usize);
            return (remaining as u32, false);
        }
        if depth as usize >= remaining {
            // Explored at least as deep as we are allowed to go.
            self.hits.fetch_add(1, Ordering::Relaxed);
            self.truncated.store(true, Ordering::Relaxed);
            self.note_total(self.budget - remaining + depth as usize);
            return (remaining as u32, false);
        }
        // Stored exploration was shallower than our budget: go deeper and
        // overwrite. Depths only grow, so racing writers stay consistent.
        let (new_depth, new_complete) = self.compute(&key.products, ElementId(key.min_next), remaining);
        if let Some(slot) = self.memo.get(key) {
            slot.state.store(encode(new_depth, new_complete), Ordering::Release);
        }
        (new_depth, new_complete)
    }

    /// Longest certified free extension from a state, up to `remaining`.
    fn compute(&self, products: &ElementSet, min_next: ElementId, remaining: usize) -> (u32, bool) {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let p = ProductSet(products.clone());
        let mut best = 0u32;
        let mut complete = true;
        for &a in self.candidates_from(min_next) {
            if !self.kill[a.index()].is_disjoint(products) {
                continue;
            }
            if remaining == 0 {
                // A free extension exists beyond the budget.
                self.truncated.store(true, Ordering::Relaxed);
                self.note_total(self.budget);
                return (0, false);
            }
            let child = extend(self.s, &p, a);
            // The product set of a free sequence grows strictly inside the
            // non-idempotents (a stalled set would trap an idempotent power
            // of the last element), so no extension of this child can reach
            // past the pool it has left. Skipping children that cannot beat
            // the running best depends only on the candidate order, keeping
            // every counter schedule-independent.
            let ceiling = 1 + (self.candidates.len() - child.0.len()) as u32;
            if ceiling <= best {
                continue;
            }
            let (child_depth, child_complete) = self.visit(child.0, a, remaining - 1);
            best = best.max(1 + child_depth);
            complete &= child_complete;
        }
        if !complete {
            debug_assert_eq!(best as usize, remaining);
        }
        (best, complete)
    }

    /// Drop roughly the least-recently-touched half once over capacity.
    /// Eviction only ever costs recomputation.
    fn maybe_evict(&self) {
        if self.memo.len() <= self.capacity {
            return;
        }
        if self.evicting.swap(true, Ordering::Acquire) {
            return;
        }
        if self.memo.len() > self.capacity {
            let mut sample: Vec<u64> = self
                .memo
                .iter()
                .take(512)
                .map(|r| r.value().touch.load(Ordering::Relaxed))
                .collect();
            sample.sort_unstable();
            let cutoff = sample[sample.len() / 2];
            self.memo.retain(|_, slot| {
                slot.state.load(Ordering::Acquire) == PENDING
                    || slot.touch.load(Ordering::Relaxed) >= cutoff
            });
        }
        self.evicting.store(false, Ordering::Release);
    }

    /// Could the state still be extended by `needed` more elements? Used by
    /// the witness walk; recomputes on evicted or shallow entries.
    fn achievable(&self, products: &ElementSet, min_next: ElementId, needed: usize) -> bool {
        if needed == 0 {
            return true;
        }
        let min_next = ElementId(self.canonical_min(products, min_next));
        let key = StateKey {
            products: products.clone(),
            min_next: min_next.0,
        };
        if let Some(slot) = self.memo.get(&key) {
            let state = slot.state.load(Ordering::Acquire);
            drop(slot);
            if state != PENDING {
                let (depth, complete) = decode(state);
                self.hits.fetch_add(1, Ordering::Relaxed);
                if depth as usize >= needed {
                    return true;
                }
                if complete {
                    return false;
                }
            }
        }
        let (depth, _) = self.compute(&key.products, min_next, needed);
        depth as usize >= needed
    }

    /// Lexicographically smallest free sequence of length `total`, walked
    /// greedily over certified depths.
    fn reconstruct(&self, total: usize) -> Result<Vec<ElementId>> {
        let mut seq = Vec::with_capacity(total);
        let mut p = ProductSet::empty(self.s.order());
        let mut min_next = ElementId(0);
        'step: while seq.len() < total {
            let needed = total - seq.len() - 1;
            for &a in self.candidates_from(min_next) {
                if !self.kill[a.index()].is_disjoint(p.as_set()) {
                    continue;
                }
                let child = extend(self.s, &p, a);
                if self.achievable(child.as_set(), a, needed) {
                    seq.push(a);
                    p = child;
                    min_next = a;
                    continue 'step;
                }
            }
            return Err(Error::property(format!(
                "witness reconstruction lost a certified chain at length {} of {total} in {:?}",
                seq.len(),
                self.s.label()
            )));
        }
        Ok(seq)
    }
}

/// Erdős–Burgess constant of `s`, with the certified extremal witness.
///
/// Results are exact and independent of `parallel_width` whenever the depth
/// budget is at least `ghw_bound(s)` (the default). The node and hit
/// counters are likewise schedule-independent then, provided the memo stays
/// within `memo_capacity`.
pub fn erdos_burgess(s: &FiniteSemigroup, cfg: &SearchConfig) -> Result<EbResult> {
    let engine = Engine::new(s, cfg);
    let bound = ghw_bound(s);
    let remaining = engine.budget.saturating_sub(1);

    let explore_root = |&a: &ElementId| -> u32 {
        let child = extend(engine.s, &ProductSet::empty(engine.s.order()), a);
        if !child.0.is_disjoint(&engine.idem) {
            return 0;
        }
        if engine.budget == 0 {
            engine.truncated.store(true, Ordering::Relaxed);
            engine.note_total(0);
            return 0;
        }
        let (depth, _) = engine.visit(child.0, a, remaining);
        1 + depth
    };

    let longest = if cfg.parallel_width > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel_width)
            .build()
            .map_err(|e| Error::resource(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            engine.candidates.par_iter().map(explore_root).max().unwrap_or(0)
        })
    } else {
        engine.candidates.iter().map(explore_root).max().unwrap_or(0)
    } as usize;

    engine.note_total(longest);
    let truncated = engine.truncated.load(Ordering::Relaxed);
    let total = engine.best_total.load(Ordering::Relaxed);
    let value = if truncated {
        EbValue::ExceedsBudget { bound: total + 1 }
    } else {
        EbValue::Exact { value: longest + 1 }
    };
    let extremal_sequence = engine.reconstruct(total)?;
    debug_assert!(is_free(s, &extremal_sequence)?);

    Ok(EbResult {
        value,
        extremal_sequence,
        nodes_explored: engine.nodes.load(Ordering::Relaxed),
        memo_hits: engine.hits.load(Ordering::Relaxed),
        ghw_bound: bound,
    })
}

/// Default cap on the states visited by the oracle.
pub const ORACLE_STATE_CAP: usize = 4_000_000;

/// Independent check of `erdos_burgess`: plain breadth-first exploration of
/// free product-set states, no memoized depths, no sharing beyond each
/// level's deduplication. Exponential-ish; meant for carriers of order
/// around 24 or less.
pub fn erdos_burgess_oracle(s: &FiniteSemigroup) -> Result<usize> {
    erdos_burgess_oracle_capped(s, ORACLE_STATE_CAP)
}

pub fn erdos_burgess_oracle_capped(s: &FiniteSemigroup, state_cap: usize) -> Result<usize> {
    use std::collections::HashSet;

    let idem = s.idempotent_set();
    let candidates: Vec<ElementId> = (0..s.order() as u32)
        .map(ElementId)
        .filter(|&a| !idem.contains(a))
        .collect();

    let mut level: HashSet<(ElementSet, u32)> = HashSet::new();
    for &a in &candidates {
        let p = extend(s, &ProductSet::empty(s.order()), a);
        if p.0.is_disjoint(&idem) {
            level.insert((p.0, a.0));
        }
    }
    let mut visited = level.len();
    let mut length = 0usize;
    while !level.is_empty() {
        length += 1;
        let mut next = HashSet::new();
        for (p, m) in &level {
            let p = ProductSet(p.clone());
            for &a in &candidates {
                if a.0 < *m {
                    continue;
                }
                let child = extend(s, &p, a);
                if child.0.is_disjoint(&idem) {
                    next.insert((child.0, a.0));
                }
            }
        }
        visited += next.len();
        if visited > state_cap {
            return Err(Error::resource(format!(
                "oracle visited more than {state_cap} states on {:?}",
                s.label()
            )));
        }
        level = next;
    }
    Ok(length + 1)
}

/// Davenport constant of a finite abelian group, presented as its
/// multiplication table: the Erdős–Burgess constant of a group, since the
/// identity is the only idempotent.
pub fn davenport(g: &FiniteSemigroup, cfg: &SearchConfig) -> Result<EbResult> {
    let idem = g.idempotent_set();
    if idem.len() != 1 {
        return Err(Error::input(format!(
            "{:?} is not a group: {} idempotents",
            g.label(),
            idem.len()
        )));
    }
    let e = idem.iter().next().unwrap();
    for a in 0..g.order() as u32 {
        let a = ElementId(a);
        if g.mul(e, a) != a {
            return Err(Error::input(format!(
                "{:?} is not a group: {e} is not an identity",
                g.label()
            )));
        }
    }
    for a in 0..g.order() as u32 {
        let a = ElementId(a);
        if !(0..g.order() as u32).any(|b| g.mul(a, ElementId(b)) == e) {
            return Err(Error::input(format!(
                "{:?} is not a group: {a} has no inverse",
                g.label()
            )));
        }
    }
    erdos_burgess(g, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::abelian_group;

    fn id(i: u32) -> ElementId {
        ElementId(i)
    }

    fn zmod_mult(n: usize) -> FiniteSemigroup {
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a * b) % n) as u32;
            }
        }
        FiniteSemigroup::from_table(format!("mult Z/{n}"), n, table).unwrap()
    }

    fn eb(s: &FiniteSemigroup) -> EbResult {
        erdos_burgess(s, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn extend_accumulates_all_subsequence_products() {
        let s = zmod_mult(6);
        let p = extend(&s, &ProductSet::empty(6), id(2));
        assert_eq!(p.0.to_vec(), vec![id(2)]);
        let p = extend(&s, &p, id(5));
        // products of (2), (5), (2,5)
        assert_eq!(p.0.to_vec(), vec![id(2), id(4), id(5)]);
    }

    #[test]
    fn freeness_of_small_sequences() {
        let s4 = zmod_mult(4);
        assert!(is_free(&s4, &[id(2), id(3)]).unwrap());
        assert!(!is_free(&s4, &[id(2), id(2)]).unwrap());
        assert!(!is_free(&s4, &[id(1)]).unwrap());
        assert!(is_free(&s4, &[]).unwrap());
        assert!(is_free(&zmod_mult(6), &[id(2)]).unwrap());
        assert!(!is_free(&zmod_mult(6), &[id(2), id(2)]).unwrap());
        assert!(matches!(is_free(&s4, &[id(9)]), Err(Error::Input(_))));
    }

    #[test]
    fn freeness_ignores_sequence_order() {
        let s = zmod_mult(16);
        let fwd = [id(2), id(3), id(5)];
        let rev = [id(5), id(3), id(2)];
        assert_eq!(is_free(&s, &fwd).unwrap(), is_free(&s, &rev).unwrap());
    }

    #[test]
    fn trivial_and_boolean_like_carriers() {
        let r = eb(&zmod_mult(1));
        assert_eq!(r.value, EbValue::Exact { value: 1 });
        assert!(r.extremal_sequence.is_empty());
        // Both elements of F_2 are idempotent.
        let r = eb(&zmod_mult(2));
        assert_eq!(r.value, EbValue::Exact { value: 1 });
        assert!(r.extremal_sequence.is_empty());
    }

    #[test]
    fn mod_four_constant_and_witness() {
        let r = eb(&zmod_mult(4));
        assert_eq!(r.value, EbValue::Exact { value: 3 });
        assert_eq!(r.extremal_sequence, vec![id(2), id(3)]);
        assert_eq!(r.ghw_bound, 3);
    }

    #[test]
    fn small_field_constants() {
        assert_eq!(eb(&zmod_mult(3)).value, EbValue::Exact { value: 2 });
        assert_eq!(eb(&zmod_mult(5)).value, EbValue::Exact { value: 4 });
        assert_eq!(eb(&zmod_mult(7)).value, EbValue::Exact { value: 6 });
    }

    #[test]
    fn mod_six_constant_and_witness() {
        let r = eb(&zmod_mult(6));
        assert_eq!(r.value, EbValue::Exact { value: 2 });
        assert_eq!(r.extremal_sequence, vec![id(2)]);
    }

    #[test]
    fn witness_is_free_and_maximal() {
        for n in [4usize, 6, 8, 9, 10, 12, 15, 16] {
            let s = zmod_mult(n);
            let r = eb(&s);
            let value = r.value.exact().unwrap();
            assert_eq!(r.extremal_sequence.len(), value - 1, "Z/{n}");
            assert!(is_free(&s, &r.extremal_sequence).unwrap(), "Z/{n}");
            assert!(value <= r.ghw_bound, "Z/{n}");
        }
    }

    #[test]
    fn oracle_matches_search_on_modular_semigroups() {
        for n in 1..=16 {
            let s = zmod_mult(n);
            assert_eq!(
                erdos_burgess_oracle(&s).unwrap(),
                eb(&s).value.exact().unwrap(),
                "Z/{n}"
            );
        }
    }

    #[test]
    fn oracle_state_cap_is_enforced() {
        assert!(matches!(
            erdos_burgess_oracle_capped(&zmod_mult(13), 3),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn parallel_width_does_not_change_anything() {
        for n in [12usize, 13, 16, 24] {
            let s = zmod_mult(n);
            let seq = erdos_burgess(&s, &SearchConfig::default()).unwrap();
            let par = erdos_burgess(
                &s,
                &SearchConfig {
                    parallel_width: 8,
                    ..SearchConfig::default()
                },
            )
            .unwrap();
            assert_eq!(seq, par, "Z/{n}");
        }
    }

    #[test]
    fn tiny_memo_capacity_only_costs_recomputation() {
        let s = zmod_mult(24);
        let full = eb(&s);
        let tiny = erdos_burgess(
            &s,
            &SearchConfig {
                memo_capacity: 64,
                ..SearchConfig::default()
            },
        )
        .unwrap();
        assert_eq!(tiny.value, full.value);
        assert_eq!(tiny.extremal_sequence, full.extremal_sequence);
        assert!(tiny.nodes_explored >= full.nodes_explored);
    }

    #[test]
    fn depth_budget_reports_certified_bound() {
        // I(S_{Z/7}) = 6; a budget of 3 must stop early but stay sound.
        let s = zmod_mult(7);
        let r = erdos_burgess(
            &s,
            &SearchConfig {
                depth_budget: Some(3),
                ..SearchConfig::default()
            },
        )
        .unwrap();
        let EbValue::ExceedsBudget { bound } = r.value else {
            panic!("expected budget exhaustion, got {:?}", r.value);
        };
        assert!(bound >= 4, "bound {bound}");
        assert!(bound <= 6);
        assert_eq!(r.extremal_sequence.len(), bound - 1);
        assert!(is_free(&s, &r.extremal_sequence).unwrap());
        // A budget at the GHW bound changes nothing.
        let exact = erdos_burgess(
            &s,
            &SearchConfig {
                depth_budget: Some(ghw_bound(&s)),
                ..SearchConfig::default()
            },
        )
        .unwrap();
        assert_eq!(exact.value, EbValue::Exact { value: 6 });
    }

    #[test]
    fn davenport_of_small_groups() {
        let cfg = SearchConfig::default();
        assert_eq!(
            davenport(&abelian_group(&[1]).unwrap(), &cfg).unwrap().value,
            EbValue::Exact { value: 1 }
        );
        assert_eq!(
            davenport(&abelian_group(&[2, 2]).unwrap(), &cfg).unwrap().value,
            EbValue::Exact { value: 3 }
        );
        assert_eq!(
            davenport(&abelian_group(&[6]).unwrap(), &cfg).unwrap().value,
            EbValue::Exact { value: 6 }
        );
    }

    #[test]
    fn davenport_rejects_non_groups() {
        assert!(matches!(
            davenport(&zmod_mult(4), &SearchConfig::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn ghw_bound_examples() {
        assert_eq!(ghw_bound(&zmod_mult(4)), 3);
        assert_eq!(ghw_bound(&zmod_mult(2)), 1);
        assert_eq!(ghw_bound(&zmod_mult(12)), 9);
    }
}
