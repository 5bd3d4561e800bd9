//! Standard small groups and the permutation-generator constructor.

use std::collections::{BTreeSet, HashMap};

use super::FiniteGroup;
use crate::error::{Error, Result};

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&i.to_string());
            first = false;
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// `(p * q)(i) = p(q(i))`: apply `q` first.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn from_permutation_set(perms: Vec<Vec<usize>>) -> FiniteGroup {
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = perms.len();
    let mut table = Vec::with_capacity(n * n);
    for p in &perms {
        for q in &perms {
            table.push(index[compose(p, q).as_slice()]);
        }
    }
    let degree = perms[0].len();
    let id: Vec<usize> = (0..degree).collect();
    let identity = index[id.as_slice()];
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_raw(n, table, identity, Some(labels))
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup::from_raw(1, vec![0], 0, None)
    }

    /// Integers mod `n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs positive order");
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::from_raw(n, table, 0, None)
    }

    /// Dihedral group of order `2n`; element `e*n + k` is `r^k s^e`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let order = 2 * n;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (e, a) = (x / n, x % n);
            for y in 0..order {
                let (f, b) = (y / n, y % n);
                let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                table.push(((e + f) % 2) * n + k);
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (e, k) = (x / n, x % n);
                match (e, k) {
                    (0, 0) => "1".to_string(),
                    (0, k) => format!("r^{k}"),
                    (_, 0) => "s".to_string(),
                    (_, k) => format!("r^{k}s"),
                }
            })
            .collect();
        FiniteGroup::from_raw(order, table, 0, Some(labels))
    }

    /// Symmetric group on `0..n`, elements in lexicographic order of their
    /// image lists (so index 0 is the identity).
    pub fn symmetric(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            perms.push(current.clone());
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        from_permutation_set(perms)
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // unit products: (unit, sign) for 1,i,j,k
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let mut table = Vec::with_capacity(64);
        for x in 0..8 {
            for y in 0..8 {
                let (u, neg) = UNIT[x % 4][y % 4];
                let sign = (x / 4 + y / 4 + neg as usize) % 2;
                table.push(sign * 4 + u);
            }
        }
        let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        FiniteGroup::from_raw(8, table, 0, Some(labels))
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), other.order());
        let order = n * m;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table.push(a * m + b);
            }
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", self.label(x / m), other.label(x % m)))
            .collect();
        FiniteGroup::from_raw(order, table, self.identity() * m + other.identity(), Some(labels))
    }

    /// The group generated by permutations of `0..degree`, expanded to a
    /// multiplication table. Elements are ordered lexicographically by image
    /// list. Fails once more than `order_cap` elements are found.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], order_cap: usize) -> Result<Self> {
        for (k, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::axiom(
                    "permutation",
                    format!("generator {k} is not a permutation of 0..{degree}"),
                ));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = compose(&p, g);
                if found.insert(q.clone()) {
                    if found.len() > order_cap {
                        return Err(Error::OrderCapExceeded {
                            order: found.len(),
                            cap: order_cap,
                        });
                    }
                    frontier.push(q);
                }
            }
        }
        Ok(from_permutation_set(found.into_iter().collect()))
    }
}
