use std::fmt;

use super::{GroupError, GroupTable, DEFAULT_ORDER_CAP};

/// Structural description of a group, with textual form
/// `Z:<p>^<n>` | `C:<m>` | `<desc>x<desc>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    ElementaryAbelian { p: u64, n: u32 },
    Cyclic(usize),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupTable, GroupError> {
        self.build_capped(DEFAULT_ORDER_CAP)
    }

    pub fn build_capped(&self, cap: usize) -> Result<GroupTable, GroupError> {
        match self {
            GroupSpec::ElementaryAbelian { p, n } => {
                GroupTable::elementary_abelian_capped(*p, *n, cap)
            }
            GroupSpec::Cyclic(m) => GroupTable::cyclic_capped(*m, cap),
            GroupSpec::Product(parts) => {
                let tables = parts
                    .iter()
                    .map(|s| s.build_capped(cap))
                    .collect::<Result<Vec<_>, _>>()?;
                GroupTable::product_capped(&tables, cap)
            }
        }
    }

    /// Order of the described group, saturating on overflow.
    pub fn order(&self) -> u128 {
        match self {
            GroupSpec::ElementaryAbelian { p, n } => {
                (*p as u128).checked_pow(*n).unwrap_or(u128::MAX)
            }
            GroupSpec::Cyclic(m) => *m as u128,
            GroupSpec::Product(parts) => parts
                .iter()
                .try_fold(1u128, |acc, s| acc.checked_mul(s.order()))
                .unwrap_or(u128::MAX),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::ElementaryAbelian { p, n } => write!(f, "Z:{p}^{n}"),
            GroupSpec::Cyclic(m) => write!(f, "C:{m}"),
            GroupSpec::Product(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Every abelian group of order `n`, one per isomorphism class, written as a
/// product of cyclic groups of prime-power order (one partition of each
/// prime's exponent). A prime whose partition is `1+1+...+1` with at least
/// two parts contributes a single `Z:p^k` factor.
pub fn abelian_groups_of_order(n: usize) -> Vec<GroupSpec> {
    if n < 2 {
        return Vec::new();
    }
    let mut per_prime: Vec<Vec<Vec<GroupSpec>>> = Vec::new();
    for (p, k) in factorize(n) {
        let options = partitions(k)
            .into_iter()
            .map(|parts| {
                if parts.len() > 1 && parts.iter().all(|&a| a == 1) {
                    vec![GroupSpec::ElementaryAbelian { p: p as u64, n: k }]
                } else {
                    parts.iter().map(|&a| GroupSpec::Cyclic(p.pow(a))).collect()
                }
            })
            .collect();
        per_prime.push(options);
    }

    let mut out: Vec<Vec<GroupSpec>> = vec![Vec::new()];
    for options in per_prime {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |opt| {
                    let mut v = prefix.clone();
                    v.extend(opt.iter().cloned());
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|mut factors| {
            if factors.len() == 1 {
                factors.pop().unwrap()
            } else {
                GroupSpec::Product(factors)
            }
        })
        .collect()
}

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `k` into non-increasing positive parts.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}
