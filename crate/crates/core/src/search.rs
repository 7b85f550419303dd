//! Exhaustive search for maximum and locally maximal sum-free sets.
//!
//! The search walks sum-free sets in canonical form: elements are added in
//! increasing index order, so every set is visited exactly once, from its
//! smallest element. Each node carries the forbidden set
//!
//! ```text
//! F(S) = S ∪ SS ∪ SS⁻¹ ∪ S⁻¹S ∪ √S ∪ {e}
//! ```
//!
//! which is exactly the set of `x` for which `S ∪ {x}` fails to be sum-free
//! (plus `S` itself). `F` is updated incrementally when an element is added,
//! a node is locally maximal iff `F(S) = G`, and the candidate set is
//! everything above the last chosen element that is outside `F`.
//!
//! Subtrees are split by their smallest element and may run on separate
//! workers. Each subtree keeps its own bound, so the explored node count
//! does not depend on the number of workers.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{Element, GroupTable};
use crate::set::{is_locally_maximal, is_locally_maximal_naive, is_sum_free, ElementSet};
use crate::subgroup::maximal_subgroups;

/// Default order limit for the locally-maximal enumeration.
pub const DEFAULT_LOCALLY_MAXIMAL_ORDER: usize = 16;

const FLUSH_EVERY: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget exhausted after {nodes} nodes; result is partial")]
    Truncated { nodes: u64 },
    #[error("group of order {order} is above the locally-maximal enumeration limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("covering criterion and naive extension check disagree on {0}")]
    OracleDisagreement(String),
    #[error("could not start a worker pool: {0}")]
    Pool(String),
}

/// Limits on a search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub timeout: Option<Duration>,
    pub workers: usize,
    pub locally_maximal_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: None,
            timeout: None,
            workers: 1,
            locally_maximal_order: DEFAULT_LOCALLY_MAXIMAL_ORDER,
        }
    }
}

impl Budget {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = Some(max_nodes);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub group_spec: String,
    pub max_size: usize,
    /// Canonical order: increasing as bitset integers.
    pub maximum_sets: Vec<ElementSet>,
    pub maximum_count: usize,
    pub locally_maximal_sets: Option<Vec<ElementSet>>,
    /// Set when a budget ran out; counts and lists are then lower bounds.
    pub truncated: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl EnumerationReport {
    /// Re-checks every listed set against the predicates in [`crate::set`].
    pub fn check_invariants(&self, g: &GroupTable) -> Result<(), String> {
        if self.maximum_count != self.maximum_sets.len() {
            return Err("maximum_count differs from the list length".into());
        }
        for s in &self.maximum_sets {
            if s.len() != self.max_size || !is_sum_free(g, s).map_err(|e| e.to_string())? {
                return Err(format!(
                    "{s} is not a sum-free set of size {}",
                    self.max_size
                ));
            }
        }
        if !self.maximum_sets.windows(2).all(|w| w[0] < w[1]) {
            return Err("maximum sets are not in canonical order".into());
        }
        for s in self.locally_maximal_sets.iter().flatten() {
            if !is_locally_maximal(g, s).map_err(|e| e.to_string())? {
                return Err(format!("{s} is not locally maximal"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct Node {
    members: ElementSet,
    forbidden: ElementSet,
    size: usize,
}

struct Search<'g> {
    g: &'g GroupTable,
    square_roots: Vec<ElementSet>,
    budget: &'g Budget,
    started: Instant,
    spent: AtomicU64,
    stop: AtomicBool,
    flush_every: u64,
}

/// Per-subtree outcome, merged in root order.
#[derive(Default)]
struct Subtree {
    nodes: u64,
    best: usize,
    found: Vec<ElementSet>,
}

impl<'g> Search<'g> {
    fn new(g: &'g GroupTable, budget: &'g Budget) -> Self {
        Self {
            g,
            square_roots: g.square_roots(),
            budget,
            started: Instant::now(),
            spent: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            flush_every: budget
                .max_nodes
                .map_or(FLUSH_EVERY, |m| m.clamp(1, FLUSH_EVERY)),
        }
    }

    fn empty_node(&self) -> Node {
        Node {
            members: ElementSet::empty(self.g.order()),
            forbidden: ElementSet::singleton(self.g.order(), self.g.identity()),
            size: 0,
        }
    }

    /// Adds `c` (which must lie outside `F`) and updates `F`.
    fn extend(&self, node: &Node, c: Element) -> Node {
        let g = self.g;
        let ci = g.inv(c);
        let mut f = node.forbidden;
        f.insert(c);
        f.insert(g.op(c, c));
        f.union_with(&self.square_roots[c]);
        for a in &node.members {
            let ai = g.inv(a);
            f.insert(g.op(c, a));
            f.insert(g.op(a, c));
            f.insert(g.op(c, ai));
            f.insert(g.op(a, ci));
            f.insert(g.op(ci, a));
            f.insert(g.op(ai, c));
        }
        let mut members = node.members;
        members.insert(c);
        Node {
            members,
            forbidden: f,
            size: node.size + 1,
        }
    }

    fn candidates_after(node: &Node, pool: &ElementSet, c: Element) -> ElementSet {
        let mut cand = *pool;
        cand.retain_above(c);
        cand.difference(&node.forbidden)
    }

    /// Books `local` visited nodes against the budget; false once exhausted.
    fn charge(&self, local: &mut u64) -> bool {
        if !(*local).is_multiple_of(self.flush_every) {
            return !self.stop.load(Ordering::Relaxed);
        }
        let total = self.spent.fetch_add(self.flush_every, Ordering::Relaxed) + self.flush_every;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| total > m);
        let over_time = self
            .budget
            .timeout
            .is_some_and(|t| self.started.elapsed() > t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn roots(&self) -> Vec<Element> {
        (0..self.g.order())
            .filter(|&c| c != self.g.identity())
            .collect()
    }

    /// Runs `per_root` over every smallest element, in parallel when more
    /// than one worker is configured, returning results in root order.
    fn over_roots<F>(&self, per_root: F) -> Result<Vec<Subtree>, SearchError>
    where
        F: Fn(Element) -> Subtree + Sync + Send,
    {
        let roots = self.roots();
        if self.budget.workers <= 1 {
            return Ok(roots.into_iter().map(per_root).collect());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.budget.workers)
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?;
        Ok(pool.install(|| roots.into_par_iter().map(per_root).collect()))
    }

    fn truncated(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    /// Largest sum-free set strictly above `floor`, or `floor` if none.
    fn max_above(&self, floor: usize) -> Result<(usize, u64), SearchError> {
        let pool = ElementSet::full(self.g.order());
        let subtrees = self.over_roots(|root| {
            let mut out = Subtree {
                best: floor,
                ..Subtree::default()
            };
            let node = self.extend(&self.empty_node(), root);
            let cand = Self::candidates_after(&node, &pool, root);
            self.dfs_max(&node, cand, &mut out);
            out
        })?;
        let best = subtrees.iter().map(|s| s.best).max().unwrap_or(floor);
        Ok((best, subtrees.iter().map(|s| s.nodes).sum()))
    }

    fn dfs_max(&self, node: &Node, cand: ElementSet, out: &mut Subtree) {
        out.nodes += 1;
        if !self.charge(&mut out.nodes) {
            return;
        }
        out.best = out.best.max(node.size);
        for c in cand.iter() {
            let mut rest = cand;
            rest.retain_above(c);
            if node.size + 1 + rest.len() <= out.best {
                break;
            }
            let child = self.extend(node, c);
            let child_cand = rest.difference(&child.forbidden);
            self.dfs_max(&child, child_cand, out);
        }
    }

    /// Every sum-free set of exactly `target` elements, given that none is
    /// larger.
    fn all_of_size(&self, target: usize) -> Result<(Vec<ElementSet>, u64), SearchError> {
        let pool = ElementSet::full(self.g.order());
        let subtrees = self.over_roots(|root| {
            let mut out = Subtree::default();
            let node = self.extend(&self.empty_node(), root);
            let cand = Self::candidates_after(&node, &pool, root);
            self.dfs_exact(&node, cand, target, &mut out);
            out
        })?;
        Ok(merge(subtrees))
    }

    fn dfs_exact(&self, node: &Node, cand: ElementSet, target: usize, out: &mut Subtree) {
        out.nodes += 1;
        if !self.charge(&mut out.nodes) {
            return;
        }
        if node.size == target {
            out.found.push(node.members);
            return;
        }
        for c in cand.iter() {
            let mut rest = cand;
            rest.retain_above(c);
            if node.size + 1 + rest.len() < target {
                break;
            }
            let child = self.extend(node, c);
            let child_cand = rest.difference(&child.forbidden);
            self.dfs_exact(&child, child_cand, target, out);
        }
    }

    fn all_locally_maximal(&self) -> Result<(Vec<ElementSet>, u64), SearchError> {
        let pool = ElementSet::full(self.g.order());
        let full = pool;
        let subtrees = self.over_roots(|root| {
            let mut out = Subtree::default();
            let node = self.extend(&self.empty_node(), root);
            let cand = Self::candidates_after(&node, &pool, root);
            self.dfs_locally_maximal(&node, cand, &full, &mut out);
            out
        })?;
        Ok(merge(subtrees))
    }

    fn dfs_locally_maximal(
        &self,
        node: &Node,
        cand: ElementSet,
        full: &ElementSet,
        out: &mut Subtree,
    ) {
        out.nodes += 1;
        if !self.charge(&mut out.nodes) {
            return;
        }
        if node.forbidden == *full {
            out.found.push(node.members);
            return;
        }
        for c in cand.iter() {
            let mut rest = cand;
            rest.retain_above(c);
            let child = self.extend(node, c);
            let child_cand = rest.difference(&child.forbidden);
            self.dfs_locally_maximal(&child, child_cand, full, out);
        }
    }
}

fn merge(subtrees: Vec<Subtree>) -> (Vec<ElementSet>, u64) {
    let nodes = subtrees.iter().map(|s| s.nodes).sum();
    let mut found: Vec<ElementSet> = subtrees.into_iter().flat_map(|s| s.found).collect();
    found.sort();
    (found, nodes)
}

/// Size of the largest non-trivial coset of a proper subgroup.
fn coset_lower_bound(g: &GroupTable) -> usize {
    maximal_subgroups(g)
        .map(|ms| ms.iter().map(|m| m.order).max().unwrap_or(0))
        .unwrap_or(0)
}

fn max_size_with(search: &Search<'_>, hint: Option<usize>) -> Result<(usize, u64), SearchError> {
    let g = search.g;
    if g.order() < 2 {
        return Ok((0, 0));
    }
    let seed = coset_lower_bound(g);
    // A hint is only trusted once a set of that size has been found.
    if let Some(h) = hint.filter(|&h| h > seed + 1) {
        let (best, nodes) = search.max_above(h - 1)?;
        if best >= h || search.truncated() {
            return Ok((best, nodes));
        }
        let (best, more) = search.max_above(seed)?;
        return Ok((best, nodes + more));
    }
    search.max_above(seed)
}

/// Largest cardinality of a sum-free subset of `g` (0 for the trivial
/// group). `lower_bound_hint` may speed up the search; a hint that is not
/// achievable costs a second pass but never changes the answer.
pub fn max_sum_free_size(g: &GroupTable, lower_bound_hint: Option<usize>) -> usize {
    let budget = Budget::default();
    let search = Search::new(g, &budget);
    max_size_with(&search, lower_bound_hint)
        .expect("single-worker search has no pool to fail")
        .0
}

/// [`max_sum_free_size`] under a budget. The flag is set when the budget
/// ran out, in which case the size is only a lower bound.
pub fn max_sum_free_size_budgeted(
    g: &GroupTable,
    lower_bound_hint: Option<usize>,
    budget: &Budget,
) -> Result<(usize, bool), SearchError> {
    let search = Search::new(g, budget);
    let (size, _) = max_size_with(&search, lower_bound_hint)?;
    Ok((size, search.truncated()))
}

/// All sum-free sets of maximum cardinality.
pub fn enumerate_maximum_sum_free(
    g: &GroupTable,
    budget: &Budget,
) -> Result<EnumerationReport, SearchError> {
    let search = Search::new(g, budget);
    let (max_size, mut nodes) = max_size_with(&search, None)?;
    let mut maximum_sets = Vec::new();
    if max_size > 0 && !search.truncated() {
        let (sets, more) = search.all_of_size(max_size)?;
        maximum_sets = sets;
        nodes += more;
    }
    Ok(EnumerationReport {
        group_spec: g.descriptor().to_string(),
        max_size,
        maximum_count: maximum_sets.len(),
        maximum_sets,
        locally_maximal_sets: None,
        truncated: search.truncated(),
        nodes_explored: nodes,
        elapsed: search.started.elapsed(),
    })
}

/// All locally maximal sum-free sets, each confirmed by the naive
/// extension check. The maximum sets are read off the same list.
pub fn enumerate_locally_maximal(
    g: &GroupTable,
    budget: &Budget,
) -> Result<EnumerationReport, SearchError> {
    if g.order() > budget.locally_maximal_order {
        return Err(SearchError::OrderTooLarge {
            order: g.order(),
            limit: budget.locally_maximal_order,
        });
    }
    let search = Search::new(g, budget);
    let (sets, nodes) = search.all_locally_maximal()?;
    for s in &sets {
        if !is_locally_maximal_naive(g, s).unwrap_or(false) {
            return Err(SearchError::OracleDisagreement(s.to_string()));
        }
    }
    let truncated = search.truncated();
    let max_size = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let maximum_sets: Vec<ElementSet> = sets
        .iter()
        .copied()
        .filter(|s| s.len() == max_size)
        .collect();
    Ok(EnumerationReport {
        group_spec: g.descriptor().to_string(),
        max_size,
        maximum_count: maximum_sets.len(),
        maximum_sets,
        locally_maximal_sets: Some(sets),
        truncated,
        nodes_explored: nodes,
        elapsed: search.started.elapsed(),
    })
}

/// Number of maximum sum-free sets; errors instead of returning a partial
/// count.
pub fn count_maximum_sum_free(g: &GroupTable) -> Result<usize, SearchError> {
    count_maximum_sum_free_with(g, &Budget::default())
}

pub fn count_maximum_sum_free_with(g: &GroupTable, budget: &Budget) -> Result<usize, SearchError> {
    let report = enumerate_maximum_sum_free(g, budget)?;
    if report.truncated {
        return Err(SearchError::Truncated {
            nodes: report.nodes_explored,
        });
    }
    Ok(report.maximum_count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(order: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_indices(order, xs.iter().copied()).unwrap()
    }

    /// Brute force over all non-empty subsets, straight from the table.
    fn brute_force_max(g: &GroupTable) -> (usize, Vec<u64>) {
        let n = g.order();
        let sum_free = |mask: u64| {
            (0..n).filter(|a| mask >> a & 1 == 1).all(|a| {
                (0..n)
                    .filter(|b| mask >> b & 1 == 1)
                    .all(|b| mask >> g.op(a, b) & 1 == 0)
            })
        };
        let all: Vec<u64> = (1u64..1 << n).filter(|&m| sum_free(m)).collect();
        let best = all
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let maxima = all
            .into_iter()
            .filter(|m| m.count_ones() as usize == best)
            .collect();
        (best, maxima)
    }

    #[test]
    fn max_size_examples() {
        assert_eq!(max_sum_free_size(&GroupTable::cyclic(4).unwrap(), None), 2);
        assert_eq!(
            max_sum_free_size(&GroupTable::elementary_abelian(3, 2).unwrap(), None),
            3
        );
        let c5 = GroupTable::cyclic(5).unwrap();
        assert_eq!(brute_force_max(&c5).0, 2);
        assert_eq!(max_sum_free_size(&c5, None), 2);
        assert_eq!(max_sum_free_size(&GroupTable::cyclic(1).unwrap(), None), 0);
    }

    #[test]
    fn hints_never_change_the_answer() {
        let c5 = GroupTable::cyclic(5).unwrap();
        for hint in 0..6 {
            assert_eq!(max_sum_free_size(&c5, Some(hint)), 2, "hint {hint}");
        }
        let z = GroupTable::elementary_abelian(2, 3).unwrap();
        assert_eq!(max_sum_free_size(&z, Some(7)), 4);
        assert_eq!(max_sum_free_size(&z, Some(4)), 4);
    }

    #[test]
    fn enumeration_examples() {
        let z32 = GroupTable::elementary_abelian(3, 2).unwrap();
        let r = enumerate_maximum_sum_free(&z32, &Budget::default()).unwrap();
        assert_eq!(r.maximum_count, 8);
        r.check_invariants(&z32).unwrap();

        let z23 = GroupTable::elementary_abelian(2, 3).unwrap();
        let r = enumerate_maximum_sum_free(&z23, &Budget::default()).unwrap();
        assert_eq!(r.maximum_count, 7);
        assert!(r.maximum_sets.iter().all(|s| s.len() == 4));

        let c4 = GroupTable::cyclic(4).unwrap();
        let r = enumerate_maximum_sum_free(&c4, &Budget::default()).unwrap();
        assert_eq!(r.maximum_sets, vec![set(4, &[1, 3])]);
        assert!(!r.truncated);
    }

    #[test]
    fn counts_for_small_elementary_abelian_groups() {
        let z31 = GroupTable::elementary_abelian(3, 1).unwrap();
        assert_eq!(count_maximum_sum_free(&z31).unwrap(), 2);
        let z24 = GroupTable::elementary_abelian(2, 4).unwrap();
        assert_eq!(count_maximum_sum_free(&z24).unwrap(), 15);
    }

    #[test]
    fn agrees_with_brute_force() {
        for m in 2..=12 {
            let g = GroupTable::cyclic(m).unwrap();
            let (best, maxima) = brute_force_max(&g);
            let r = enumerate_maximum_sum_free(&g, &Budget::default()).unwrap();
            assert_eq!(r.max_size, best, "C_{m}");
            let masks: Vec<u64> = r
                .maximum_sets
                .iter()
                .map(|s| s.iter().map(|i| 1u64 << i).sum())
                .collect();
            assert_eq!(masks, maxima, "C_{m}");
        }
    }

    #[test]
    fn locally_maximal_examples() {
        let c3 = GroupTable::cyclic(3).unwrap();
        let r = enumerate_locally_maximal(&c3, &Budget::default()).unwrap();
        assert_eq!(
            r.locally_maximal_sets,
            Some(vec![set(3, &[1]), set(3, &[2])])
        );

        let z24 = GroupTable::elementary_abelian(2, 4).unwrap();
        let r = enumerate_locally_maximal(&z24, &Budget::default()).unwrap();
        let lm = r.locally_maximal_sets.as_ref().unwrap();
        assert!(lm.contains(&set(16, &[1, 2, 4, 8, 15])));
        let maxima = enumerate_maximum_sum_free(&z24, &Budget::default()).unwrap();
        assert_eq!(r.maximum_sets, maxima.maximum_sets);
        assert!(maxima.maximum_sets.iter().all(|s| lm.contains(s)));
        r.check_invariants(&z24).unwrap();

        let c17 = GroupTable::cyclic(17).unwrap();
        assert!(matches!(
            enumerate_locally_maximal(&c17, &Budget::default()),
            Err(SearchError::OrderTooLarge {
                order: 17,
                limit: 16
            })
        ));
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let z33 = GroupTable::elementary_abelian(3, 3).unwrap();
        let budget = Budget::default().with_max_nodes(1);
        let r = enumerate_maximum_sum_free(&z33, &budget).unwrap();
        assert!(r.truncated);
        assert!(matches!(
            count_maximum_sum_free_with(&z33, &budget),
            Err(SearchError::Truncated { .. })
        ));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let g = GroupTable::elementary_abelian(3, 2).unwrap();
        let one = enumerate_maximum_sum_free(&g, &Budget::default()).unwrap();
        let four = enumerate_maximum_sum_free(&g, &Budget::default().with_workers(4)).unwrap();
        assert_eq!(one.maximum_sets, four.maximum_sets);
        assert_eq!(one.nodes_explored, four.nodes_explored);
    }
}
