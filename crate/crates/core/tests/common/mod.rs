//! Brute-force reference implementations shared by the integration tests.
//! Everything here works on plain `u64` masks and the raw multiplication
//! table, without going through the search or the set algebra.

#![allow(dead_code)]

use sumfree::group::{abelian_groups_of_order, GroupTable};
use sumfree::set::ElementSet;

pub fn mask_sum_free(g: &GroupTable, mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let n = g.order();
    for a in (0..n).filter(|a| mask >> a & 1 == 1) {
        for b in (0..n).filter(|b| mask >> b & 1 == 1) {
            if mask >> g.op(a, b) & 1 == 1 {
                return false;
            }
        }
    }
    true
}

/// Sum-free and not extendable by any single element.
pub fn mask_locally_maximal(g: &GroupTable, mask: u64) -> bool {
    mask_sum_free(g, mask)
        && (0..g.order())
            .filter(|x| mask >> x & 1 == 0)
            .all(|x| !mask_sum_free(g, mask | 1 << x))
}

pub fn to_set(g: &GroupTable, mask: u64) -> ElementSet {
    ElementSet::from_indices(g.order(), (0..g.order()).filter(|i| mask >> i & 1 == 1)).unwrap()
}

pub fn to_mask(s: &ElementSet) -> u64 {
    s.iter().fold(0, |m, i| m | 1 << i)
}

/// Every sum-free subset, as masks in increasing order.
pub fn all_sum_free(g: &GroupTable) -> Vec<u64> {
    assert!(g.order() <= 20, "brute force is exponential");
    (1u64..1 << g.order())
        .filter(|&m| mask_sum_free(g, m))
        .collect()
}

/// Maximum size and the maximum sets in increasing mask order.
pub fn brute_maximum(g: &GroupTable) -> (usize, Vec<u64>) {
    let all = all_sum_free(g);
    let best = all
        .iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let sets = all
        .into_iter()
        .filter(|m| m.count_ones() as usize == best)
        .collect();
    (best, sets)
}

pub fn brute_locally_maximal(g: &GroupTable) -> Vec<u64> {
    all_sum_free(g)
        .into_iter()
        .filter(|&m| mask_locally_maximal(g, m))
        .collect()
}

/// All abelian groups with `lo <= |G| <= hi`, with their descriptors.
pub fn groups_up_to(lo: usize, hi: usize) -> Vec<(String, GroupTable)> {
    (lo..=hi)
        .flat_map(abelian_groups_of_order)
        .map(|spec| (spec.to_string(), spec.build().unwrap()))
        .collect()
}
