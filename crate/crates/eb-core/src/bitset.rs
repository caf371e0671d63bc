//! Fixed-width bit sets over the elements of one carrier.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::semigroup::ElementId;

/// A set of elements of a single semigroup or ring, stored as a bit vector.
///
/// Every set remembers the order of its owner, and operations that mix sets
/// from carriers of different orders panic: such a mix-up is always a bug.
/// Bits at positions `>= owner_order` are kept zero so that equality and
/// hashing agree with set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: SmallVec<[u64; 2]>,
    owner_order: u32,
}

impl ElementSet {
    pub fn empty(owner_order: usize) -> Self {
        let words = smallvec::smallvec![0u64; owner_order.div_ceil(64)];
        ElementSet {
            words,
            owner_order: owner_order as u32,
        }
    }

    pub fn full(owner_order: usize) -> Self {
        let mut s = Self::empty(owner_order);
        for i in 0..owner_order {
            s.insert(ElementId(i as u32));
        }
        s
    }

    pub fn from_ids(owner_order: usize, ids: &[ElementId]) -> Self {
        let mut s = Self::empty(owner_order);
        for &id in ids {
            s.insert(id);
        }
        s
    }

    pub fn owner_order(&self) -> usize {
        self.owner_order as usize
    }

    #[inline]
    pub fn insert(&mut self, id: ElementId) {
        debug_assert!(id.0 < self.owner_order);
        self.words[(id.0 / 64) as usize] |= 1u64 << (id.0 % 64);
    }

    pub fn remove(&mut self, id: ElementId) {
        debug_assert!(id.0 < self.owner_order);
        self.words[(id.0 / 64) as usize] &= !(1u64 << (id.0 % 64));
    }

    #[inline]
    pub fn contains(&self, id: ElementId) -> bool {
        debug_assert!(id.0 < self.owner_order);
        self.words[(id.0 / 64) as usize] >> (id.0 % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        assert_eq!(self.owner_order, other.owner_order, "sets from different carriers");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        assert_eq!(self.owner_order, other.owner_order, "sets from different carriers");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    #[inline]
    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        assert_eq!(self.owner_order, other.owner_order, "sets from different carriers");
        self.words.iter().zip(&other.words).all(|(w, o)| w & o == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        assert_eq!(self.owner_order, other.owner_order, "sets from different carriers");
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    /// Ascending iterator over the member ids.
    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(ElementId(wi as u32 * 64 + bit))
            })
        })
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for id in self.iter() {
            seq.serialize_element(&id.0)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(i: u32) -> ElementId {
        ElementId(i)
    }

    #[test]
    fn insert_contains_remove() {
        let mut s = ElementSet::empty(130);
        assert!(s.is_empty());
        for i in [0, 63, 64, 129] {
            s.insert(id(i));
        }
        assert_eq!(s.len(), 4);
        assert!(s.contains(id(63)) && s.contains(id(64)));
        assert!(!s.contains(id(1)));
        s.remove(id(63));
        assert!(!s.contains(id(63)));
        assert_eq!(s.to_vec(), vec![id(0), id(64), id(129)]);
    }

    #[test]
    fn set_algebra() {
        let a = ElementSet::from_ids(10, &[id(1), id(3), id(5)]);
        let b = ElementSet::from_ids(10, &[id(3), id(4)]);
        let mut u = a.clone();
        u.union_with(&b);
        assert_eq!(u.len(), 4);
        let mut i = a.clone();
        i.intersect_with(&b);
        assert_eq!(i.to_vec(), vec![id(3)]);
        assert!(!a.is_disjoint(&b));
        assert!(a.is_disjoint(&ElementSet::from_ids(10, &[id(0), id(2)])));
        assert!(i.is_subset(&a) && i.is_subset(&b) && !a.is_subset(&b));
    }

    #[test]
    fn equality_ignores_representation() {
        let mut a = ElementSet::empty(70);
        let mut b = ElementSet::empty(70);
        a.insert(id(69));
        b.insert(id(69));
        b.insert(id(2));
        b.remove(id(2));
        assert_eq!(a, b);
    }

    #[test]
    fn serializes_as_sorted_id_array() {
        let s = ElementSet::from_ids(12, &[id(9), id(0), id(4), id(1)]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,1,4,9]");
    }

    #[test]
    #[should_panic(expected = "different carriers")]
    fn mixing_carriers_panics() {
        let a = ElementSet::empty(5);
        let b = ElementSet::empty(6);
        a.is_disjoint(&b);
    }
}
