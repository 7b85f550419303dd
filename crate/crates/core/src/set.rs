//! Subsets of a finite group stored as fixed-width bitsets, plus the subset
//! algebra used throughout the crate: product sets, inverse sets, translates,
//! square roots and the sum-free / locally-maximal predicates.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Element, GroupTable};

/// Largest group order an [`ElementSet`] can address.
pub const MAX_ORDER: usize = 256;

const WORDS: usize = MAX_ORDER / 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("set over a group of order {set} used with a group of order {group}")]
    OrderMismatch { set: usize, group: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("set {0} is not sum-free")]
    NotSumFree(String),
}

/// A subset of `0..order`, where `order` is the order of the ambient group.
///
/// Sets are plain values. Ordering is lexicographic on the bitset read as an
/// unsigned integer (element `i` has weight `2^i`), which is the canonical
/// output order of every enumeration in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: [u64; WORDS],
    order: u16,
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        assert!(
            order <= MAX_ORDER,
            "group order {order} exceeds {MAX_ORDER}"
        );
        Self {
            bits: [0; WORDS],
            order: order as u16,
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for (w, word) in s.bits.iter_mut().enumerate() {
            let lo = w * 64;
            if order >= lo + 64 {
                *word = u64::MAX;
            } else if order > lo {
                *word = (1u64 << (order - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(order: usize, index: Element) -> Self {
        let mut s = Self::empty(order);
        s.insert(index);
        s
    }

    /// Builds a set from element indices, rejecting out-of-range entries.
    pub fn from_indices<I>(order: usize, indices: I) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::empty(order);
        for index in indices {
            if index >= order {
                return Err(SetError::IndexOutOfRange { index, order });
            }
            s.insert(index);
        }
        Ok(s)
    }

    #[inline]
    pub fn group_order(&self) -> usize {
        self.order as usize
    }

    #[inline]
    pub fn contains(&self, index: Element) -> bool {
        index < self.group_order() && self.bits[index / 64] >> (index % 64) & 1 == 1
    }

    /// Inserts `index`. Panics when `index` is outside the group.
    #[inline]
    pub fn insert(&mut self, index: Element) {
        assert!(
            index < self.group_order(),
            "element {index} out of range for order {}",
            self.order
        );
        self.bits[index / 64] |= 1u64 << (index % 64);
    }

    #[inline]
    pub fn remove(&mut self, index: Element) {
        if index < self.group_order() {
            self.bits[index / 64] &= !(1u64 << (index % 64));
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let mut out = *self;
        out.union_with(other);
        out
    }

    #[inline]
    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.bits.iter_mut().zip(other.bits.iter()) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let mut out = *self;
        for (a, b) in out.bits.iter_mut().zip(other.bits.iter()) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let mut out = *self;
        for (a, b) in out.bits.iter_mut().zip(other.bits.iter()) {
            *a &= !b;
        }
        out
    }

    /// `G \ self`.
    pub fn complement(&self) -> Self {
        Self::full(self.group_order()).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn first(&self) -> Option<Element> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn last(&self) -> Option<Element> {
        self.bits
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Drops every element `<= index`.
    #[inline]
    pub fn retain_above(&mut self, index: Element) {
        let word = index / 64;
        for w in self.bits.iter_mut().take(word) {
            *w = 0;
        }
        if word < WORDS {
            let bit = index % 64;
            self.bits[word] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        }
    }

    pub fn iter(&self) -> Iter {
        Iter {
            bits: self.bits,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    /// The set with its members rendered through the group's labels.
    pub fn labeled(&self, g: &GroupTable) -> LabeledSet {
        LabeledSet {
            indices: self.to_vec(),
            labels: self.iter().map(|i| g.label(i).to_string()).collect(),
        }
    }

    fn check_order(&self, g: &GroupTable) -> Result<(), SetError> {
        if self.group_order() == g.order() {
            Ok(())
        } else {
            Err(SetError::OrderMismatch {
                set: self.group_order(),
                group: g.order(),
            })
        }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub struct Iter {
    bits: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        while self.word < WORDS {
            let w = self.bits[self.word];
            if w != 0 {
                self.bits[self.word] = w & (w - 1);
                return Some(self.word * 64 + w.trailing_zeros() as usize);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for &ElementSet {
    type Item = Element;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// A set rendered for reports: raw indices next to the group's labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSet {
    pub indices: Vec<Element>,
    pub labels: Vec<String>,
}

impl fmt::Display for LabeledSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

/// `{xy : x in a, y in b}`.
pub fn product_set(g: &GroupTable, a: &ElementSet, b: &ElementSet) -> Result<ElementSet, SetError> {
    a.check_order(g)?;
    b.check_order(g)?;
    let mut out = ElementSet::empty(g.order());
    for x in a {
        out.union_with(&translate_unchecked(g, x, b));
    }
    Ok(out)
}

/// `{x^-1 : x in a}`.
pub fn inverse_set(g: &GroupTable, a: &ElementSet) -> Result<ElementSet, SetError> {
    a.check_order(g)?;
    let mut out = ElementSet::empty(g.order());
    for x in a {
        out.insert(g.inv(x));
    }
    Ok(out)
}

/// Left translate `xA = {xy : y in a}`.
pub fn translate(g: &GroupTable, x: Element, a: &ElementSet) -> Result<ElementSet, SetError> {
    a.check_order(g)?;
    if x >= g.order() {
        return Err(SetError::IndexOutOfRange {
            index: x,
            order: g.order(),
        });
    }
    Ok(translate_unchecked(g, x, a))
}

fn translate_unchecked(g: &GroupTable, x: Element, a: &ElementSet) -> ElementSet {
    let row = g.row(x);
    let mut out = ElementSet::empty(g.order());
    for y in a {
        out.insert(row[y] as Element);
    }
    out
}

/// `{x : x^2 in t}`.
pub fn sqrt_set(g: &GroupTable, t: &ElementSet) -> Result<ElementSet, SetError> {
    t.check_order(g)?;
    let mut out = ElementSet::empty(g.order());
    for x in 0..g.order() {
        if t.contains(g.op(x, x)) {
            out.insert(x);
        }
    }
    Ok(out)
}

/// True iff `s` is non-empty and `s1 s2 ∉ s` for all `s1, s2 ∈ s`,
/// including `s1 = s2`.
pub fn is_sum_free(g: &GroupTable, s: &ElementSet) -> Result<bool, SetError> {
    if s.is_empty() {
        s.check_order(g)?;
        return Ok(false);
    }
    Ok(product_set(g, s, s)?.is_disjoint(s))
}

/// Local maximality through the covering criterion
/// `G = T ∪ TT ∪ TT⁻¹ ∪ T⁻¹T ∪ √T`.
pub fn is_locally_maximal(g: &GroupTable, s: &ElementSet) -> Result<bool, SetError> {
    require_sum_free(g, s)?;
    let inv = inverse_set(g, s)?;
    let mut cover = *s;
    cover.union_with(&product_set(g, s, s)?);
    cover.union_with(&product_set(g, s, &inv)?);
    cover.union_with(&product_set(g, &inv, s)?);
    cover.union_with(&sqrt_set(g, s)?);
    Ok(cover == ElementSet::full(g.order()))
}

/// Local maximality by definition: no single element can be added while
/// staying sum-free.
pub fn is_locally_maximal_naive(g: &GroupTable, s: &ElementSet) -> Result<bool, SetError> {
    require_sum_free(g, s)?;
    for x in s.complement().iter() {
        let mut bigger = *s;
        bigger.insert(x);
        if is_sum_free(g, &bigger)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_sum_free(g: &GroupTable, s: &ElementSet) -> Result<(), SetError> {
    if is_sum_free(g, s)? {
        Ok(())
    } else {
        Err(SetError::NotSumFree(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    fn set(order: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_indices(order, xs.iter().copied()).unwrap()
    }

    #[test]
    fn bit_helpers() {
        let s = set(200, &[0, 63, 64, 130, 199]);
        assert_eq!(s.len(), 5);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(199));
        assert_eq!(s.to_vec(), vec![0, 63, 64, 130, 199]);
        let mut t = s;
        t.retain_above(63);
        assert_eq!(t.to_vec(), vec![64, 130, 199]);
        t.retain_above(199);
        assert!(t.is_empty());
        assert_eq!(ElementSet::full(130).len(), 130);
        assert_eq!(ElementSet::full(256).len(), 256);
        assert_eq!(s.complement().len(), 195);
        assert!(ElementSet::from_indices(4, [4]).is_err());
    }

    #[test]
    fn ordering_is_integer_order() {
        // {2,3} = 12 < {1,4} = 18
        assert!(set(5, &[2, 3]) < set(5, &[1, 4]));
        assert!(set(100, &[99]) > set(100, &[0, 1, 2, 3, 98]));
    }

    #[test]
    fn product_set_examples() {
        let c5 = GroupTable::cyclic(5).unwrap();
        let s = set(5, &[2, 3]);
        assert_eq!(product_set(&c5, &s, &s).unwrap(), set(5, &[4, 0, 1]));
        let e = ElementSet::empty(5);
        assert!(product_set(&c5, &e, &s).unwrap().is_empty());
        let c4 = GroupTable::cyclic(4).unwrap();
        assert!(matches!(
            product_set(&c4, &s, &s),
            Err(SetError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_translate_examples() {
        let c5 = GroupTable::cyclic(5).unwrap();
        assert_eq!(inverse_set(&c5, &set(5, &[2, 3])).unwrap(), set(5, &[2, 3]));
        let c4 = GroupTable::cyclic(4).unwrap();
        assert_eq!(inverse_set(&c4, &set(4, &[1])).unwrap(), set(4, &[3]));
        let z = GroupTable::elementary_abelian(2, 3).unwrap();
        let a = set(8, &[1, 5, 6]);
        assert_eq!(inverse_set(&z, &a).unwrap(), a);

        assert_eq!(
            translate(&c4, 0, &set(4, &[1, 3])).unwrap(),
            set(4, &[1, 3])
        );
        assert_eq!(
            translate(&c4, 1, &set(4, &[1, 3])).unwrap(),
            set(4, &[2, 0])
        );
        let c3 = GroupTable::cyclic(3).unwrap();
        assert_eq!(translate(&c3, 1, &set(3, &[1])).unwrap(), set(3, &[2]));
        assert!(translate(&c3, 3, &set(3, &[1])).is_err());
    }

    #[test]
    fn sqrt_examples() {
        let z = GroupTable::elementary_abelian(2, 3).unwrap();
        assert_eq!(sqrt_set(&z, &set(8, &[0, 3])).unwrap(), ElementSet::full(8));
        assert!(sqrt_set(&z, &set(8, &[3, 4])).unwrap().is_empty());
        let c4 = GroupTable::cyclic(4).unwrap();
        assert_eq!(sqrt_set(&c4, &set(4, &[2])).unwrap(), set(4, &[1, 3]));
        let c3 = GroupTable::cyclic(3).unwrap();
        assert_eq!(sqrt_set(&c3, &set(3, &[1])).unwrap(), set(3, &[2]));
    }

    #[test]
    fn sum_free_examples() {
        let c4 = GroupTable::cyclic(4).unwrap();
        assert!(is_sum_free(&c4, &set(4, &[1, 3])).unwrap());
        assert!(is_sum_free(&c4, &set(4, &[2])).unwrap());
        assert!(!is_sum_free(&c4, &set(4, &[1, 2])).unwrap());
        assert!(!is_sum_free(&c4, &ElementSet::empty(4)).unwrap());
        let z = GroupTable::elementary_abelian(2, 4).unwrap();
        assert!(is_sum_free(&z, &set(16, &[1, 2, 4, 8, 15])).unwrap());
    }

    #[test]
    fn local_maximality_examples() {
        let z = GroupTable::elementary_abelian(2, 4).unwrap();
        let s = set(16, &[1, 2, 4, 8, 15]);
        assert!(is_locally_maximal(&z, &s).unwrap());
        assert!(is_locally_maximal_naive(&z, &s).unwrap());

        let c4 = GroupTable::cyclic(4).unwrap();
        assert!(is_locally_maximal(&c4, &set(4, &[1, 3])).unwrap());
        assert!(is_locally_maximal_naive(&c4, &set(4, &[1, 3])).unwrap());

        let c6 = GroupTable::cyclic(6).unwrap();
        assert!(!is_locally_maximal_naive(&c6, &set(6, &[1])).unwrap());
        assert!(!is_locally_maximal(&c6, &set(6, &[1])).unwrap());
        assert!(is_sum_free(&c6, &set(6, &[1, 4])).unwrap());

        assert!(matches!(
            is_locally_maximal(&c4, &set(4, &[1, 2])),
            Err(SetError::NotSumFree(_))
        ));
        assert!(is_locally_maximal_naive(&c4, &ElementSet::empty(4)).is_err());
    }
}
