//! Subgroups of small groups: closures, the full subgroup list, maximal
//! subgroups, the Frattini subgroup and coset decompositions.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Element, GroupTable, Layout};
use crate::set::{ElementSet, LabeledSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("the trivial group has no maximal subgroups")]
    TrivialGroup,
    #[error("set {0} is not a subgroup")]
    NotSubgroup(String),
    #[error("set over order {set} does not match group of order {group}")]
    OrderMismatch { set: usize, group: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupInfo {
    pub carrier: ElementSet,
    pub order: usize,
    pub index: usize,
    pub is_maximal: bool,
    /// A generating set, chosen greedily in increasing index order.
    pub generators: Vec<Element>,
}

impl SubgroupInfo {
    /// Wraps a carrier already known to be a subgroup.
    pub fn new(g: &GroupTable, carrier: ElementSet, is_maximal: bool) -> Self {
        let order = carrier.len();
        assert_eq!(g.order() % order, 0, "Lagrange violated by {carrier}");
        Self {
            carrier,
            order,
            index: g.order() / order,
            is_maximal,
            generators: minimal_generators(g, &carrier),
        }
    }

    pub fn describe(&self, g: &GroupTable) -> SubgroupView {
        SubgroupView {
            order: self.order,
            index: self.index,
            is_maximal: self.is_maximal,
            generators: self
                .generators
                .iter()
                .map(|&x| g.label(x).to_string())
                .collect(),
            carrier: self.carrier.labeled(g),
        }
    }
}

/// Report form of a [`SubgroupInfo`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupView {
    pub order: usize,
    pub index: usize,
    pub is_maximal: bool,
    pub generators: Vec<String>,
    pub carrier: LabeledSet,
}

/// Smallest subgroup containing `seed`.
pub fn generated_closure(g: &GroupTable, seed: &ElementSet) -> ElementSet {
    closure_of(g, &seed.to_vec())
}

fn closure_of(g: &GroupTable, gens: &[Element]) -> ElementSet {
    // In a finite group the submonoid generated by `gens` is already a
    // subgroup, so right-multiplying by generators is enough.
    let mut out = ElementSet::singleton(g.order(), g.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.op(x, s);
            if !out.contains(y) {
                out.insert(y);
                queue.push_back(y);
            }
        }
    }
    out
}

fn minimal_generators(g: &GroupTable, carrier: &ElementSet) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut span = ElementSet::singleton(g.order(), g.identity());
    for x in carrier {
        if !span.contains(x) {
            gens.push(x);
            span = closure_of(g, &gens);
        }
    }
    gens
}

/// Non-empty and closed under the group operation.
pub fn is_subgroup(g: &GroupTable, s: &ElementSet) -> bool {
    if s.is_empty() || s.group_order() != g.order() {
        return false;
    }
    s.iter().all(|a| {
        let row = g.row(a);
        s.iter().all(|b| s.contains(row[b] as Element))
    })
}

/// Every subgroup exactly once, ordered by order then carrier.
///
/// Starts from the trivial subgroup and repeatedly adjoins one element
/// outside a known subgroup; every subgroup is reached because any
/// generating sequence passes through subgroups only.
pub fn all_subgroups(g: &GroupTable) -> Vec<SubgroupInfo> {
    let trivial = ElementSet::singleton(g.order(), g.identity());
    let mut seen: HashSet<ElementSet> = HashSet::from([trivial]);
    let mut queue: VecDeque<(ElementSet, Vec<Element>)> = VecDeque::from([(trivial, Vec::new())]);
    while let Some((h, gens)) = queue.pop_front() {
        let mut covered = h;
        for x in h.complement().iter() {
            if covered.contains(x) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(x);
            let k = closure_of(g, &next_gens);
            // <H, xh> = <H, x>, so the rest of the coset xH adds nothing
            for y in &h {
                covered.insert(g.op(x, y));
            }
            if seen.insert(k) {
                queue.push_back((k, next_gens));
            }
        }
    }

    let mut carriers: Vec<ElementSet> = seen.into_iter().collect();
    carriers.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let full = ElementSet::full(g.order());
    carriers
        .iter()
        .map(|&h| {
            let maximal = h != full
                && !carriers
                    .iter()
                    .any(|&k| k != full && k != h && h.is_subset(&k));
            SubgroupInfo::new(g, h, maximal)
        })
        .collect()
}

/// Maximal subgroups in canonical (carrier) order. Tables built as `Z_p^n`
/// take the hyperplane route; everything else goes through
/// [`all_subgroups`].
pub fn maximal_subgroups(g: &GroupTable) -> Result<Vec<SubgroupInfo>, SubgroupError> {
    match g.layout() {
        Layout::ElementaryAbelian { .. } => hyperplanes(g),
        _ => maximal_subgroups_generic(g),
    }
}

/// Maximal subgroups found by full subgroup enumeration.
pub fn maximal_subgroups_generic(g: &GroupTable) -> Result<Vec<SubgroupInfo>, SubgroupError> {
    if g.order() < 2 {
        return Err(SubgroupError::TrivialGroup);
    }
    let mut out: Vec<SubgroupInfo> = all_subgroups(g)
        .into_iter()
        .filter(|h| h.is_maximal)
        .collect();
    out.sort_by_key(|a| a.carrier);
    Ok(out)
}

/// Kernels of the non-zero linear functionals on `GF(p)^n`, one per
/// functional up to scalar (normalised so the first non-zero coefficient
/// is 1). Only valid for tables built by `GroupTable::elementary_abelian`.
pub fn hyperplanes(g: &GroupTable) -> Result<Vec<SubgroupInfo>, SubgroupError> {
    let Layout::ElementaryAbelian { p, n } = *g.layout() else {
        return maximal_subgroups_generic(g);
    };
    let digits = |mut i: usize| {
        (0..n)
            .map(|_| {
                let d = i % p;
                i /= p;
                d
            })
            .collect::<Vec<_>>()
    };
    let vectors: Vec<Vec<usize>> = g.elements().map(digits).collect();
    let mut out = Vec::new();
    for normal in vectors.iter().skip(1) {
        if normal.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        let kernel = vectors.iter().enumerate().filter_map(|(i, v)| {
            let dot: usize = v.iter().zip(normal).map(|(a, b)| a * b).sum();
            dot.is_multiple_of(p).then_some(i)
        });
        let carrier = ElementSet::from_indices(g.order(), kernel).expect("indices in range");
        out.push(SubgroupInfo::new(g, carrier, true));
    }
    out.sort_by_key(|a| a.carrier);
    Ok(out)
}

/// Intersection of the maximal subgroups; `{e}` for the trivial group.
pub fn frattini(g: &GroupTable) -> ElementSet {
    let trivial = ElementSet::singleton(g.order(), g.identity());
    match maximal_subgroups(g) {
        Ok(maxes) => maxes.iter().fold(ElementSet::full(g.order()), |acc, h| {
            acc.intersection(&h.carrier)
        }),
        Err(_) => trivial,
    }
}

/// The `index - 1` cosets `xH` with `x ∉ H`, sorted by smallest element.
pub fn nontrivial_cosets(
    g: &GroupTable,
    h: &SubgroupInfo,
) -> Result<Vec<ElementSet>, SubgroupError> {
    cosets_of(g, &h.carrier)
}

pub fn cosets_of(g: &GroupTable, h: &ElementSet) -> Result<Vec<ElementSet>, SubgroupError> {
    if h.group_order() != g.order() {
        return Err(SubgroupError::OrderMismatch {
            set: h.group_order(),
            group: g.order(),
        });
    }
    if !is_subgroup(g, h) {
        return Err(SubgroupError::NotSubgroup(h.to_string()));
    }
    let mut covered = *h;
    let mut out = Vec::new();
    for x in g.elements() {
        if covered.contains(x) {
            continue;
        }
        let mut coset = ElementSet::empty(g.order());
        for y in h {
            coset.insert(g.op(x, y));
        }
        covered.union_with(&coset);
        out.push(coset);
    }
    // iterating x upwards makes x the smallest element of its coset
    Ok(out)
}
