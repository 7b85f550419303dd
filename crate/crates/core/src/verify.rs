//! Witness-producing checks of the characterisations of elementary abelian
//! 2- and 3-groups by their maximum sum-free sets, the counterexamples to the
//! uncorrected 2-group statement, the translate and product-set identities
//! that hold in `Z_3^n`, and the construction showing that no such
//! characterisation exists for `p > 3`.
//!
//! "Maximal sum-free set" is read as maximum by cardinality throughout.
//!
//! Every verdict is a list of clauses. Claims are what the check asserts and
//! their conjunction is the verdict; observations are facts about the group
//! (hypotheses of an equivalence, for instance) that are reported with
//! witnesses but are allowed to be false. All clauses are evaluated even
//! after one fails.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Element, GroupError, GroupTable};
use crate::search::{
    enumerate_maximum_sum_free, max_sum_free_size, Budget, EnumerationReport, SearchError,
};
use crate::set::{
    inverse_set, is_locally_maximal, is_locally_maximal_naive, is_sum_free, product_set, translate,
    ElementSet, LabeledSet, SetError,
};
use crate::subgroup::{
    cosets_of, frattini, is_subgroup, maximal_subgroups, SubgroupError, SubgroupInfo, SubgroupView,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("enumeration of {0} was truncated; nothing can be verified")]
    Truncated(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("coset witness failed: {0}")]
    WitnessFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    P2Characterisation,
    P3Characterisation,
    CounterexampleC4,
    #[serde(rename = "counterexample_c2_4")]
    CounterexampleC2_4,
    TranslateLemma,
    ProductSetIdentities,
    #[serde(rename = "p_gt_3_nonanalogue")]
    PGreaterThan3,
    CorollaryCounts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseRole {
    Claim,
    Observation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Set(LabeledSet),
    Sets(Vec<LabeledSet>),
    Subgroup(SubgroupView),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub label: String,
    pub holds: bool,
    pub role: ClauseRole,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub group: String,
    pub clauses: Vec<Clause>,
    /// Clauses whose hypotheses did not apply to this input.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub skipped: Vec<String>,
    pub overall: bool,
}

impl TheoremVerdict {
    fn new(theorem: TheoremId, g: &GroupTable) -> Self {
        Self {
            theorem,
            group: g.descriptor().to_string(),
            clauses: Vec::new(),
            skipped: Vec::new(),
            overall: true,
        }
    }

    fn push(&mut self, role: ClauseRole, label: &str, holds: bool, witness: Option<Witness>) {
        assert!(
            holds || witness.is_some(),
            "failed clause {label} needs a witness"
        );
        if role == ClauseRole::Claim {
            self.overall &= holds;
        }
        self.clauses.push(Clause {
            label: label.to_string(),
            holds,
            role,
            witness,
        });
    }

    fn claim(&mut self, label: &str, holds: bool, witness: Option<Witness>) {
        self.push(ClauseRole::Claim, label, holds, witness);
    }

    fn observe(&mut self, label: &str, holds: bool, witness: Option<Witness>) {
        self.push(ClauseRole::Observation, label, holds, witness);
    }

    pub fn clause(&self, label: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.label == label)
    }

    /// Checks that `overall` matches the claims and that failures carry
    /// witnesses.
    pub fn is_consistent(&self) -> bool {
        let claims = self
            .clauses
            .iter()
            .filter(|c| c.role == ClauseRole::Claim)
            .all(|c| c.holds);
        claims == self.overall && self.clauses.iter().all(|c| c.holds || c.witness.is_some())
    }
}

/// Which proof's subgroup construction [`coset_witness`] replays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `H = xS`, with `S` the complement of `H`.
    P2,
    /// `H = x⁻¹S`, with `S = xH` a non-trivial coset.
    P3,
}

impl Direction {
    fn prime(self) -> usize {
        match self {
            Direction::P2 => 2,
            Direction::P3 => 3,
        }
    }
}

/// Subgroup and enumeration data shared by the checks on one group.
#[derive(Debug, Clone)]
pub struct GroupFacts {
    pub maximal: Vec<SubgroupInfo>,
    pub frattini: ElementSet,
    pub enumeration: EnumerationReport,
}

impl GroupFacts {
    pub fn compute(g: &GroupTable, budget: &Budget) -> Result<Self, VerifyError> {
        if g.order() < 2 {
            return Err(VerifyError::Precondition(
                "the trivial group has no sum-free sets".into(),
            ));
        }
        let enumeration = enumerate_maximum_sum_free(g, budget)?;
        if enumeration.truncated {
            return Err(VerifyError::Truncated(g.descriptor().to_string()));
        }
        Ok(Self {
            maximal: maximal_subgroups(g)?,
            frattini: frattini(g),
            enumeration,
        })
    }

    fn maxima(&self) -> BTreeSet<ElementSet> {
        self.enumeration.maximum_sets.iter().copied().collect()
    }
}

fn set_witness(g: &GroupTable, s: &ElementSet) -> Option<Witness> {
    Some(Witness::Set(s.labeled(g)))
}

fn sets_witness<'a>(
    g: &GroupTable,
    sets: impl IntoIterator<Item = &'a ElementSet>,
) -> Option<Witness> {
    Some(Witness::Sets(
        sets.into_iter().map(|s| s.labeled(g)).collect(),
    ))
}

fn trivial_subgroup(g: &GroupTable) -> ElementSet {
    ElementSet::singleton(g.order(), g.identity())
}

/// Elements that keep `g` from being elementary abelian of exponent `p`:
/// those of order other than `p`, and those outside the centre.
fn elementary_abelian_obstructions(g: &GroupTable, p: usize) -> ElementSet {
    let mut out = ElementSet::empty(g.order());
    for x in 1..g.order() {
        let central = g.elements().all(|y| g.op(x, y) == g.op(y, x));
        if g.element_order(x) != p || !central {
            out.insert(x);
        }
    }
    out
}

fn record_elementary_abelian(
    v: &mut TheoremVerdict,
    g: &GroupTable,
    p: usize,
    label: &str,
) -> bool {
    let holds = g.is_elementary_abelian(p);
    let witness = (!holds).then(|| elementary_abelian_obstructions(g, p));
    v.observe(label, holds, witness.and_then(|w| set_witness(g, &w)));
    holds
}

fn record_frattini(v: &mut TheoremVerdict, g: &GroupTable, facts: &GroupFacts) -> bool {
    let holds = facts.frattini == trivial_subgroup(g);
    v.observe("frattini_trivial", holds, set_witness(g, &facts.frattini));
    holds
}

/// Replays the subgroup construction across every maximum set and every
/// element of it, recording the first failure.
fn record_coset_witnesses(
    v: &mut TheoremVerdict,
    g: &GroupTable,
    facts: &GroupFacts,
    direction: Direction,
) {
    let mut failure = None;
    'outer: for s in &facts.enumeration.maximum_sets {
        for x in s {
            if coset_witness_with(
                g,
                s,
                x,
                direction,
                facts.enumeration.max_size,
                &facts.maximal,
            )
            .is_err()
            {
                failure = Some(*s);
                break 'outer;
            }
        }
    }
    v.claim(
        "coset_witness_for_every_maximum_set",
        failure.is_none(),
        failure.and_then(|s| set_witness(g, &s)),
    );
}

/// Corrected characterisation of `Z_2^n`: the maximum sum-free sets are
/// exactly the complements of the maximal subgroups and `Φ(G) = 1` iff `G`
/// is elementary abelian of exponent 2.
pub fn check_p2_characterisation(
    g: &GroupTable,
    budget: &Budget,
) -> Result<TheoremVerdict, VerifyError> {
    let facts = GroupFacts::compute(g, budget)?;
    check_p2_with(g, &facts)
}

pub fn check_p2_with(g: &GroupTable, facts: &GroupFacts) -> Result<TheoremVerdict, VerifyError> {
    let mut v = TheoremVerdict::new(TheoremId::P2Characterisation, g);
    let maxima = facts.maxima();
    let complements: BTreeSet<ElementSet> = facts
        .maximal
        .iter()
        .map(|m| m.carrier.complement())
        .collect();

    let a = maxima == complements;
    let differing: Vec<ElementSet> = maxima.symmetric_difference(&complements).copied().collect();
    v.observe(
        "maximum_sets_are_maximal_subgroup_complements",
        a,
        (!a).then(|| sets_witness(g, &differing)).flatten(),
    );
    let b = record_frattini(&mut v, g, facts);
    let c = record_elementary_abelian(&mut v, g, 2, "elementary_abelian_2");
    v.claim(
        "equivalence",
        (a && b) == c,
        ((a && b) != c).then(|| sets_witness(g, &maxima)).flatten(),
    );
    if c {
        record_coset_witnesses(&mut v, g, facts, Direction::P2);
    }
    Ok(v)
}

/// Characterisation of `Z_3^n`: the two non-trivial cosets of each maximal
/// subgroup are maximum sum-free sets, every maximum sum-free set is such a
/// coset, and `Φ(G) = 1` iff `G` is elementary abelian of exponent 3.
pub fn check_p3_characterisation(
    g: &GroupTable,
    budget: &Budget,
) -> Result<TheoremVerdict, VerifyError> {
    let facts = GroupFacts::compute(g, budget)?;
    check_p3_with(g, &facts)
}

pub fn check_p3_with(g: &GroupTable, facts: &GroupFacts) -> Result<TheoremVerdict, VerifyError> {
    let mut v = TheoremVerdict::new(TheoremId::P3Characterisation, g);
    let maxima = facts.maxima();

    let mut exact_failure = None;
    let mut readings_differ = None;
    let mut all_cosets = BTreeSet::new();
    for m in &facts.maximal {
        let cosets = cosets_of(g, &m.carrier)?;
        let maximum = cosets.iter().filter(|c| maxima.contains(c)).count();
        let exactly_two = cosets.len() == 2 && maximum == 2;
        let at_least_two = maximum >= 2;
        if !exactly_two && exact_failure.is_none() {
            exact_failure = Some(m);
        }
        if exactly_two != at_least_two && readings_differ.is_none() {
            readings_differ = Some(m);
        }
        all_cosets.extend(cosets);
    }
    let a = exact_failure.is_none();
    v.observe(
        "each_maximal_subgroup_has_two_maximum_cosets",
        a,
        exact_failure.map(|m| Witness::Subgroup(m.describe(g))),
    );
    v.observe(
        "exactly_two_and_at_least_two_readings_agree",
        readings_differ.is_none(),
        readings_differ.map(|m| Witness::Subgroup(m.describe(g))),
    );

    let stray = maxima.iter().find(|s| !all_cosets.contains(s));
    let b = stray.is_none();
    v.observe(
        "every_maximum_set_is_a_maximal_subgroup_coset",
        b,
        stray.and_then(|s| set_witness(g, s)),
    );
    let c = record_frattini(&mut v, g, facts);
    let d = record_elementary_abelian(&mut v, g, 3, "elementary_abelian_3");
    v.claim(
        "equivalence",
        (a && b && c) == d,
        ((a && b && c) != d)
            .then(|| sets_witness(g, &maxima))
            .flatten(),
    );
    if d {
        record_coset_witnesses(&mut v, g, facts, Direction::P3);
    }
    Ok(v)
}

/// `C_4` has a unique maximum sum-free set, the complement of its unique
/// maximal subgroup, yet is not elementary abelian: the uncorrected 2-group
/// statement fails without the Frattini hypothesis.
pub fn counterexample_c4() -> Result<TheoremVerdict, VerifyError> {
    let g = GroupTable::cyclic(4)?;
    let facts = GroupFacts::compute(&g, &Budget::default())?;
    let mut v = TheoremVerdict::new(TheoremId::CounterexampleC4, &g);
    let expected = ElementSet::from_indices(4, [1, 3])?;
    let maxima = &facts.enumeration.maximum_sets;

    v.claim(
        "unique_maximum_set_is_x_x3",
        maxima.as_slice() == [expected],
        sets_witness(&g, maxima),
    );
    let complement_ok =
        facts.maximal.len() == 1 && facts.maximal[0].carrier.complement() == expected;
    v.claim(
        "equals_complement_of_unique_maximal_subgroup",
        complement_ok,
        facts
            .maximal
            .first()
            .map(|m| Witness::Subgroup(m.describe(&g))),
    );
    v.claim(
        "frattini_nontrivial",
        facts.frattini != trivial_subgroup(&g),
        set_witness(&g, &facts.frattini),
    );
    let not_ea = !g.is_elementary_abelian(2);
    v.claim(
        "not_elementary_abelian",
        not_ea,
        set_witness(&g, &elementary_abelian_obstructions(&g, 2)),
    );
    Ok(v)
}

/// `{x1, x2, x3, x4, x1x2x3x4}` in `C_2^4` is locally maximal but is not the
/// complement of any maximal subgroup.
pub fn counterexample_c2_4() -> Result<TheoremVerdict, VerifyError> {
    let g = GroupTable::elementary_abelian(2, 4)?;
    let mut v = TheoremVerdict::new(TheoremId::CounterexampleC2_4, &g);
    let s = ElementSet::from_indices(16, [1, 2, 4, 8, 15])?;
    let w = || set_witness(&g, &s);

    let sum_free = is_sum_free(&g, &s)?;
    v.claim("sum_free", sum_free, w());
    v.claim("size_is_5", s.len() == 5, w());
    let (criterion, naive) = if sum_free {
        (
            is_locally_maximal(&g, &s)?,
            is_locally_maximal_naive(&g, &s)?,
        )
    } else {
        (false, false)
    };
    v.claim("locally_maximal_by_covering_criterion", criterion, w());
    v.claim("locally_maximal_by_extension_check", naive, w());

    let maximal = maximal_subgroups(&g)?;
    v.claim(
        "fifteen_maximal_subgroups",
        maximal.len() == 15,
        sets_witness(&g, maximal.iter().map(|m| &m.carrier)),
    );
    let matching = maximal.iter().find(|m| m.carrier.complement() == s);
    v.claim(
        "not_a_maximal_subgroup_complement",
        matching.is_none(),
        matching
            .map(|m| Witness::Subgroup(m.describe(&g)))
            .or_else(w),
    );
    Ok(v)
}

fn require_elementary_abelian(g: &GroupTable, p: usize) -> Result<(), VerifyError> {
    if g.is_elementary_abelian(p) {
        Ok(())
    } else {
        Err(VerifyError::Precondition(format!(
            "{} is not elementary abelian of exponent {p}",
            g.descriptor()
        )))
    }
}

fn require_member(s: &ElementSet, x: Element) -> Result<(), VerifyError> {
    if s.contains(x) {
        Ok(())
    } else {
        Err(VerifyError::Precondition(format!("{x} is not in {s}")))
    }
}

fn require_maximum(g: &GroupTable, s: &ElementSet, max_size: usize) -> Result<(), VerifyError> {
    if is_sum_free(g, s)? && s.len() == max_size {
        Ok(())
    } else {
        Err(VerifyError::Precondition(format!(
            "{s} is not a maximum sum-free set (maximum size {max_size})"
        )))
    }
}

/// Pairwise disjointness of `S, x⁻¹S, xS` and of `S, SS⁻¹, S⁻¹` for a
/// sum-free `S` in `Z_3^n`; for a maximum `S` also the covers
/// `S ∪ x⁻¹S ∪ xS = G`, `S ∪ SS⁻¹ ∪ S⁻¹ = G` and `|S| = |G|/3`.
pub fn check_translate_lemma(
    g: &GroupTable,
    s: &ElementSet,
    x: Element,
) -> Result<TheoremVerdict, VerifyError> {
    require_elementary_abelian(g, 3)?;
    check_translate_lemma_with(g, s, x, max_sum_free_size(g, None))
}

pub fn check_translate_lemma_with(
    g: &GroupTable,
    s: &ElementSet,
    x: Element,
    max_size: usize,
) -> Result<TheoremVerdict, VerifyError> {
    require_elementary_abelian(g, 3)?;
    if !is_sum_free(g, s)? {
        return Err(VerifyError::Precondition(format!("{s} is not sum-free")));
    }
    require_member(s, x)?;
    let mut v = TheoremVerdict::new(TheoremId::TranslateLemma, g);
    let left = translate(g, g.inv(x), s)?;
    let right = translate(g, x, s)?;
    let inv = inverse_set(g, s)?;
    let quotients = product_set(g, s, &inv)?;

    let overlap = |sets: [&ElementSet; 3]| {
        let mut out = ElementSet::empty(g.order());
        for i in 0..3 {
            for j in i + 1..3 {
                out.union_with(&sets[i].intersection(sets[j]));
            }
        }
        out
    };
    let o1 = overlap([s, &left, &right]);
    v.claim(
        "translates_pairwise_disjoint",
        o1.is_empty(),
        set_witness(g, &o1),
    );
    let o2 = overlap([s, &quotients, &inv]);
    v.claim(
        "inverse_products_pairwise_disjoint",
        o2.is_empty(),
        set_witness(g, &o2),
    );

    if s.len() == max_size {
        let missing = s.union(&left).union(&right).complement();
        v.claim(
            "translates_cover_group",
            missing.is_empty(),
            set_witness(g, &missing),
        );
        v.claim(
            "size_is_third_of_group",
            3 * s.len() == g.order(),
            set_witness(g, s),
        );
        let missing = s.union(&quotients).union(&inv).complement();
        v.claim(
            "inverse_products_cover_group",
            missing.is_empty(),
            set_witness(g, &missing),
        );
    } else {
        v.skipped = vec![
            "translates_cover_group".into(),
            "size_is_third_of_group".into(),
            "inverse_products_cover_group".into(),
        ];
    }
    Ok(v)
}

/// For a maximum sum-free `S` in `Z_3^n` and `x ∈ S`:
/// `x⁻¹S = S⁻¹S` and `xS = S⁻¹ = SS`, with `SS = ⋃_{y∈S} yS`.
pub fn check_product_set_identities(
    g: &GroupTable,
    s: &ElementSet,
    x: Element,
) -> Result<TheoremVerdict, VerifyError> {
    require_elementary_abelian(g, 3)?;
    check_product_set_identities_with(g, s, x, max_sum_free_size(g, None))
}

pub fn check_product_set_identities_with(
    g: &GroupTable,
    s: &ElementSet,
    x: Element,
    max_size: usize,
) -> Result<TheoremVerdict, VerifyError> {
    require_elementary_abelian(g, 3)?;
    require_maximum(g, s, max_size)?;
    require_member(s, x)?;
    let mut v = TheoremVerdict::new(TheoremId::ProductSetIdentities, g);
    let inv = inverse_set(g, s)?;
    let left = translate(g, g.inv(x), s)?;
    let right = translate(g, x, s)?;
    let squares = product_set(g, s, s)?;
    let inv_products = product_set(g, &inv, s)?;
    let union_of_translates = s
        .iter()
        .map(|y| translate(g, y, s))
        .try_fold(ElementSet::empty(g.order()), |acc, t| {
            t.map(|t| acc.union(&t))
        })?;

    let pair = |a: &ElementSet, b: &ElementSet| sets_witness(g, [a, b]);
    v.claim(
        "inverse_translate_equals_inverse_products",
        left == inv_products,
        pair(&left, &inv_products),
    );
    v.claim("translate_equals_inverse", right == inv, pair(&right, &inv));
    v.claim(
        "inverse_equals_square",
        inv == squares,
        pair(&inv, &squares),
    );
    v.claim(
        "square_is_union_of_translates",
        squares == union_of_translates,
        pair(&squares, &union_of_translates),
    );
    Ok(v)
}

/// The subgroup built in the proofs: `H = xS` (complement of `S`) for
/// `Z_2^n`, `H = x⁻¹S` (with `S = xH`) for `Z_3^n`.
pub fn coset_witness(
    g: &GroupTable,
    s: &ElementSet,
    x: Element,
    direction: Direction,
) -> Result<SubgroupInfo, VerifyError> {
    require_elementary_abelian(g, direction.prime())?;
    let maximal = maximal_subgroups(g)?;
    coset_witness_with(g, s, x, direction, max_sum_free_size(g, None), &maximal)
}

fn coset_witness_with(
    g: &GroupTable,
    s: &ElementSet,
    x: Element,
    direction: Direction,
    max_size: usize,
    maximal: &[SubgroupInfo],
) -> Result<SubgroupInfo, VerifyError> {
    require_elementary_abelian(g, direction.prime())?;
    require_maximum(g, s, max_size)?;
    require_member(s, x)?;
    let h = match direction {
        Direction::P2 => translate(g, x, s)?,
        Direction::P3 => translate(g, g.inv(x), s)?,
    };
    if !is_subgroup(g, &h) {
        return Err(VerifyError::WitnessFailed(format!("{h} is not closed")));
    }
    if !maximal.iter().any(|m| m.carrier == h) {
        return Err(VerifyError::WitnessFailed(format!(
            "{h} is not a maximal subgroup"
        )));
    }
    let shape_ok = match direction {
        Direction::P2 => *s == h.complement(),
        Direction::P3 => s.is_disjoint(&h) && *s == translate(g, x, &h)?,
    };
    if !shape_ok {
        return Err(VerifyError::WitnessFailed(format!(
            "{s} is not the expected coset of {h}"
        )));
    }
    Ok(SubgroupInfo::new(g, h, true))
}

/// For `p > 3`: lifts a maximum sum-free set of `Z_p^n / N ≅ C_p` (with `N`
/// the first-coordinate-zero hyperplane) to a sum-free set of size
/// `|T|·p^(n-1) ≥ 2p^(n-1)`, larger than any coset of a maximal subgroup.
pub fn p_greater_3_witness(p: u64, n: u32) -> Result<TheoremVerdict, VerifyError> {
    if p <= 3 {
        return Err(VerifyError::Precondition(format!("p = {p} must exceed 3")));
    }
    let g = GroupTable::elementary_abelian(p, n)?;
    let p = p as usize;
    let mut v = TheoremVerdict::new(TheoremId::PGreaterThan3, &g);

    let kernel = ElementSet::from_indices(g.order(), g.elements().filter(|i| i % p == 0))?;
    let quotient = crate::group::quotient_group(&g, &kernel)?;
    let q = &quotient.group;
    v.claim(
        "quotient_has_prime_order_p",
        q.order() == p,
        set_witness(&g, &kernel),
    );

    let report = enumerate_maximum_sum_free(q, &Budget::default())?;
    let t_bar = report
        .maximum_sets
        .first()
        .copied()
        .ok_or_else(|| VerifyError::Precondition("quotient has no sum-free set".into()))?;
    v.claim(
        "quotient_maximum_set_has_at_least_two_elements",
        t_bar.len() >= 2,
        set_witness(q, &t_bar),
    );

    let lift = quotient.lift(&t_bar);
    let coset_size = kernel.len();
    v.claim(
        "lift_is_sum_free",
        is_sum_free(&g, &lift)?,
        set_witness(&g, &lift),
    );
    v.claim(
        "lift_size_is_quotient_size_times_kernel",
        lift.len() == t_bar.len() * coset_size,
        set_witness(&g, &lift),
    );
    v.claim(
        "lift_is_at_least_twice_kernel",
        lift.len() >= 2 * coset_size,
        set_witness(&g, &lift),
    );
    // every non-trivial coset of a maximal subgroup has exactly |N| elements
    let largest_coset = maximal_subgroups(&g)?
        .iter()
        .map(|m| m.order)
        .max()
        .unwrap_or(0);
    v.claim(
        "lift_exceeds_every_maximal_subgroup_coset",
        lift.len() > largest_coset,
        set_witness(&g, &lift),
    );
    Ok(v)
}

/// Counts for `Z_p^n`, `p ∈ {2, 3}`: `p^n - 1` maximum sum-free sets and
/// `(p^n - 1)/(p - 1)` maximal subgroups.
pub fn check_corollary_counts(
    g: &GroupTable,
    budget: &Budget,
) -> Result<TheoremVerdict, VerifyError> {
    let facts = GroupFacts::compute(g, budget)?;
    check_corollary_counts_with(g, &facts)
}

pub fn check_corollary_counts_with(
    g: &GroupTable,
    facts: &GroupFacts,
) -> Result<TheoremVerdict, VerifyError> {
    let Some((p, _)) = g
        .elementary_abelian_type()
        .filter(|(p, _)| *p == 2 || *p == 3)
    else {
        return Err(VerifyError::Precondition(format!(
            "{} is not elementary abelian of exponent 2 or 3",
            g.descriptor()
        )));
    };
    let mut v = TheoremVerdict::new(TheoremId::CorollaryCounts, g);
    let order = g.order();
    v.claim(
        "maximum_set_count_is_order_minus_one",
        facts.enumeration.maximum_count == order - 1,
        sets_witness(g, &facts.enumeration.maximum_sets),
    );
    v.claim(
        "maximal_subgroup_count",
        facts.maximal.len() == (order - 1) / (p - 1),
        sets_witness(g, facts.maximal.iter().map(|m| &m.carrier)),
    );
    Ok(v)
}

/// The translate lemma and the product-set identities over every maximum
/// set of `g` and every element of it, folded into one verdict each. A
/// clause holds iff it holds for every pair; its witness is the first
/// failing set.
pub fn check_identities_over_maximum_sets(
    g: &GroupTable,
    facts: &GroupFacts,
) -> Result<[TheoremVerdict; 2], VerifyError> {
    require_elementary_abelian(g, 3)?;
    let max_size = facts.enumeration.max_size;
    let mut folded = [
        TheoremVerdict::new(TheoremId::TranslateLemma, g),
        TheoremVerdict::new(TheoremId::ProductSetIdentities, g),
    ];
    let mut per_label: [Vec<(String, Option<ElementSet>)>; 2] = [Vec::new(), Vec::new()];
    for s in &facts.enumeration.maximum_sets {
        for x in s {
            let verdicts = [
                check_translate_lemma_with(g, s, x, max_size)?,
                check_product_set_identities_with(g, s, x, max_size)?,
            ];
            for (acc, verdict) in per_label.iter_mut().zip(&verdicts) {
                for clause in &verdict.clauses {
                    let slot = match acc.iter_mut().find(|(l, _)| *l == clause.label) {
                        Some(slot) => slot,
                        None => {
                            acc.push((clause.label.clone(), None));
                            acc.last_mut().unwrap()
                        }
                    };
                    if !clause.holds && slot.1.is_none() {
                        slot.1 = Some(*s);
                    }
                }
            }
        }
    }
    for (verdict, acc) in folded.iter_mut().zip(per_label) {
        for (label, failure) in acc {
            verdict.claim(
                &label,
                failure.is_none(),
                failure.and_then(|s| set_witness(g, &s)),
            );
        }
    }
    Ok(folded)
}
