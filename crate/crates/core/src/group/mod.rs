//! Finite groups as index-based Cayley tables.
//!
//! Elements are `0..order` with the identity at index 0. Every constructor
//! validates the table (identity, inverses, Latin square, associativity)
//! before handing it out, so downstream code can trust the table blindly.

mod spec;

pub use spec::{abelian_groups_of_order, is_prime, GroupSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::set::{ElementSet, MAX_ORDER};
use crate::subgroup;

/// Index of a group element.
pub type Element = usize;

/// Default cap on group order; also the hard ceiling imposed by [`ElementSet`].
pub const DEFAULT_ORDER_CAP: usize = MAX_ORDER;

/// Orders up to this bound get an exhaustive associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("cyclic order must be at least 1")]
    ZeroOrder,
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: u128, cap: usize },
    #[error("a direct product needs at least one factor")]
    EmptyProduct,
    #[error("the given set is not a subgroup")]
    NotSubgroup,
    #[error("the given subgroup is not normal")]
    NotNormal,
    #[error("set over order {set} does not match group of order {group}")]
    OrderMismatch { set: usize, group: usize },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
}

/// How element indices map onto the structure the group was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layout {
    /// Index `i` is the little-endian base-`p` digit vector of `i`.
    ElementaryAbelian {
        p: usize,
        n: u32,
    },
    Cyclic {
        m: usize,
    },
    /// Mixed radix over the factor orders, first factor most significant.
    Product {
        radices: Vec<usize>,
    },
    Quotient,
    Custom,
}

/// A finite group as a flattened multiplication table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    order: usize,
    op: Vec<u16>,
    inv: Vec<u16>,
    labels: Vec<String>,
    descriptor: String,
    layout: Layout,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.op == other.op
    }
}

impl GroupTable {
    /// `Z_p^n` with digitwise addition mod `p`.
    pub fn elementary_abelian(p: u64, n: u32) -> Result<Self, GroupError> {
        Self::elementary_abelian_capped(p, n, DEFAULT_ORDER_CAP)
    }

    pub fn elementary_abelian_capped(p: u64, n: u32, cap: usize) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if n == 0 {
            return Err(GroupError::ZeroRank);
        }
        let order = check_cap((p as u128).checked_pow(n).unwrap_or(u128::MAX), cap)?;
        let p = p as usize;
        let digits = |mut i: usize| {
            (0..n)
                .map(|_| {
                    let d = i % p;
                    i /= p;
                    d
                })
                .collect::<Vec<_>>()
        };
        let from_digits = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);

        let all: Vec<Vec<usize>> = (0..order).map(digits).collect();
        let mut op = Vec::with_capacity(order * order);
        for a in &all {
            for b in &all {
                let sum: Vec<usize> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                op.push(from_digits(&sum) as u16);
            }
        }
        let labels = all
            .iter()
            .map(|ds| {
                let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Self::from_parts(
            op,
            labels,
            GroupSpec::ElementaryAbelian { p: p as u64, n }.to_string(),
            Layout::ElementaryAbelian { p, n },
        )
    }

    /// `C_m` with addition mod `m`.
    pub fn cyclic(m: usize) -> Result<Self, GroupError> {
        Self::cyclic_capped(m, DEFAULT_ORDER_CAP)
    }

    pub fn cyclic_capped(m: usize, cap: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::ZeroOrder);
        }
        check_cap(m as u128, cap)?;
        let op = (0..m)
            .flat_map(|i| (0..m).map(move |j| ((i + j) % m) as u16))
            .collect();
        let labels = (0..m).map(|i| i.to_string()).collect();
        Self::from_parts(
            op,
            labels,
            GroupSpec::Cyclic(m).to_string(),
            Layout::Cyclic { m },
        )
    }

    /// Direct product with componentwise operation.
    pub fn product(parts: &[GroupTable]) -> Result<Self, GroupError> {
        Self::product_capped(parts, DEFAULT_ORDER_CAP)
    }

    pub fn product_capped(parts: &[GroupTable], cap: usize) -> Result<Self, GroupError> {
        if parts.is_empty() {
            return Err(GroupError::EmptyProduct);
        }
        let order = parts
            .iter()
            .try_fold(1u128, |acc, g| acc.checked_mul(g.order as u128))
            .unwrap_or(u128::MAX);
        let order = check_cap(order, cap)?;
        let radices: Vec<usize> = parts.iter().map(|g| g.order).collect();
        let decode = |mut i: usize| {
            let mut comps = vec![0; radices.len()];
            for (k, r) in radices.iter().enumerate().rev() {
                comps[k] = i % r;
                i /= r;
            }
            comps
        };
        let encode = |comps: &[usize]| {
            comps
                .iter()
                .zip(&radices)
                .fold(0, |acc, (c, r)| acc * r + c)
        };
        let all: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut op = Vec::with_capacity(order * order);
        for a in &all {
            for b in &all {
                let c: Vec<usize> = parts
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(g, (&x, &y))| g.op(x, y))
                    .collect();
                op.push(encode(&c) as u16);
            }
        }
        let labels = all
            .iter()
            .map(|comps| {
                let parts: Vec<&str> = parts.iter().zip(comps).map(|(g, &c)| g.label(c)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let descriptor = parts
            .iter()
            .map(|g| g.descriptor.as_str())
            .collect::<Vec<_>>()
            .join("x");
        let layout = if parts.len() == 1 {
            parts[0].layout.clone()
        } else {
            Layout::Product { radices }
        };
        let labels = if parts.len() == 1 {
            parts[0].labels.clone()
        } else {
            labels
        };
        Self::from_parts(op, labels, descriptor, layout)
    }

    /// Validates a raw table. Index 0 must be the identity.
    pub fn from_parts(
        op: Vec<u16>,
        labels: Vec<String>,
        descriptor: String,
        layout: Layout,
    ) -> Result<Self, GroupError> {
        let order = labels.len();
        let bad = |msg: String| Err(GroupError::InvalidTable(msg));
        if order == 0 || order > MAX_ORDER {
            return bad(format!("order {order} outside 1..={MAX_ORDER}"));
        }
        if op.len() != order * order {
            return bad(format!(
                "table has {} entries, expected {}",
                op.len(),
                order * order
            ));
        }
        if let Some(v) = op.iter().find(|&&v| v as usize >= order) {
            return bad(format!("entry {v} out of range"));
        }
        let at = |a: usize, b: usize| op[a * order + b] as usize;

        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return bad(format!("index 0 is not an identity for element {a}"));
            }
        }
        for a in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for b in 0..order {
                row[at(a, b)] = true;
                col[at(b, a)] = true;
            }
            if !row.iter().all(|&x| x) || !col.iter().all(|&x| x) {
                return bad(format!("row or column {a} is not a permutation"));
            }
        }
        let mut inv = vec![0u16; order];
        for a in 0..order {
            let b = (0..order).find(|&b| at(a, b) == 0).unwrap();
            if at(b, a) != 0 {
                return bad(format!("element {a} has no two-sided inverse"));
            }
            inv[a] = b as u16;
        }
        if order <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..10 * order * order {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                }
            }
        }
        Ok(Self {
            order,
            op,
            inv,
            labels,
            descriptor,
            layout,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Element {
        0
    }

    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        self.op[a * self.order + b] as Element
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inv[a] as Element
    }

    /// Row `a` of the table: `row(a)[b] = a*b`.
    #[inline]
    pub fn row(&self, a: Element) -> &[u16] {
        &self.op[a * self.order..(a + 1) * self.order]
    }

    pub fn label(&self, a: Element) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    /// Looks an element up by its label, ignoring whitespace.
    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        let want: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        self.labels.iter().position(|l| *l == want)
    }

    pub fn element_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Abelian, non-trivial, and every non-identity element has order `p`.
    pub fn is_elementary_abelian(&self, p: usize) -> bool {
        is_prime(p as u64)
            && self.order > 1
            && self.is_abelian()
            && (1..self.order).all(|a| self.element_order(a) == p)
    }

    /// `Some((p, n))` when the group is isomorphic to `Z_p^n`.
    pub fn elementary_abelian_type(&self) -> Option<(usize, u32)> {
        if self.order < 2 {
            return None;
        }
        let p = self.element_order(1);
        if !self.is_elementary_abelian(p) {
            return None;
        }
        let mut n = 0;
        let mut m = self.order;
        while m > 1 {
            m /= p;
            n += 1;
        }
        Some((p, n))
    }

    /// Elements `x` with `x^2 = c`, for each `c`.
    pub fn square_roots(&self) -> Vec<ElementSet> {
        let mut roots = vec![ElementSet::empty(self.order); self.order];
        for x in self.elements() {
            roots[self.op(x, x)].insert(x);
        }
        roots
    }

    fn check_set(&self, s: &ElementSet) -> Result<(), GroupError> {
        if s.group_order() == self.order {
            Ok(())
        } else {
            Err(GroupError::OrderMismatch {
                set: s.group_order(),
                group: self.order,
            })
        }
    }
}

/// The quotient `G/N` together with the projection `G -> G/N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: GroupTable,
    /// `projection[g]` is the index of the coset containing `g`.
    pub projection: Vec<Element>,
    /// Smallest element of each coset, indexed by quotient element.
    pub representatives: Vec<Element>,
}

impl Quotient {
    pub fn project(&self, g: Element) -> Element {
        self.projection[g]
    }

    /// Full preimage of a set of cosets.
    pub fn lift(&self, cosets: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.projection.len());
        for (g, &c) in self.projection.iter().enumerate() {
            if cosets.contains(c) {
                out.insert(g);
            }
        }
        out
    }
}

/// Builds `G/N` on coset representatives. Cosets are numbered by their
/// smallest element, so the trivial coset `N` is always index 0.
pub fn quotient_group(g: &GroupTable, n: &ElementSet) -> Result<Quotient, GroupError> {
    g.check_set(n)?;
    if !subgroup::is_subgroup(g, n) {
        return Err(GroupError::NotSubgroup);
    }
    for x in g.elements() {
        let xi = g.inv(x);
        if n.iter().any(|h| !n.contains(g.op(g.op(x, h), xi))) {
            return Err(GroupError::NotNormal);
        }
    }

    let mut projection = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let k = representatives.len();
        representatives.push(x);
        for h in n {
            projection[g.op(x, h)] = k;
        }
    }
    let q = representatives.len();
    let mut op = Vec::with_capacity(q * q);
    for &a in &representatives {
        for &b in &representatives {
            op.push(projection[g.op(a, b)] as u16);
        }
    }
    let labels = representatives
        .iter()
        .map(|&r| format!("[{}]", g.label(r)))
        .collect();
    let group = GroupTable::from_parts(
        op,
        labels,
        format!("{}/N{}", g.descriptor(), n.len()),
        Layout::Quotient,
    )?;
    Ok(Quotient {
        group,
        projection,
        representatives,
    })
}

fn check_cap(order: u128, cap: usize) -> Result<usize, GroupError> {
    let cap = cap.min(MAX_ORDER);
    if order > cap as u128 {
        Err(GroupError::OrderCap { order, cap })
    } else {
        Ok(order as usize)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
