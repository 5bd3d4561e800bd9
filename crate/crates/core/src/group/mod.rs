//! Finite groups stored as full multiplication tables.

mod abelian;
mod catalog;
mod iso;
mod subgroups;

pub use abelian::FGAbelianGroup;
pub use iso::{are_isomorphic, find_isomorphism, GroupSignature};
pub use subgroups::{
    abelianization, all_subgroups, commutator_subgroup, conjugacy_classes_of_subgroups, is_subconjugate, normalizer,
    quotient, weyl, SubgroupClass,
};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, checking every axiom.
    ///
    /// `rows[a][b]` is the product `a * b`. On failure the error names the
    /// violated axiom together with witnessing elements.
    pub fn from_table(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::axiom("nonempty", "table has no rows"));
        }
        if let Some(labels) = &labels {
            if labels.len() != order {
                return Err(Error::axiom(
                    "labels",
                    format!("{} labels for {} elements", labels.len(), order),
                ));
            }
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::axiom(
                    "square table",
                    format!("row {a} has length {}", row.len()),
                ));
            }
            let mut seen = vec![false; order];
            for (b, &c) in row.iter().enumerate() {
                if c >= order {
                    return Err(Error::axiom(
                        "closure",
                        format!("entry ({a},{b}) = {c} is out of range"),
                    ));
                }
                if seen[c] {
                    return Err(Error::axiom("latin square", format!("row {a} repeats element {c}")));
                }
                seen[c] = true;
            }
            table.extend_from_slice(row);
        }
        for b in 0..order {
            let mut seen = vec![false; order];
            for a in 0..order {
                let c = table[a * order + b];
                if seen[c] {
                    return Err(Error::axiom("latin square", format!("column {b} repeats element {c}")));
                }
                seen[c] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] == a && table[a * order + e] == a))
            .ok_or_else(|| Error::axiom("identity", "no two-sided identity element"))?;
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(Error::axiom("associativity", format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(Self::from_raw(order, table, identity, labels))
    }

    /// Assembles a group from a table that is already known to be valid.
    pub(crate) fn from_raw(order: usize, table: Vec<usize>, identity: usize, labels: Option<Vec<String>>) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == identity {
                    inverses[a] = b;
                    break;
                }
            }
        }
        FiniteGroup {
            order,
            table,
            identity,
            inverses,
            labels,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g * h * g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(labels) => labels[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::axiom(
                "labels",
                format!("{} labels for {} elements", labels.len(), self.order),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The table as nested rows, in the shape accepted by [`FiniteGroup::from_table`].
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The group formed by the elements of `h` with the inherited product.
    /// Returns the group together with the embedding (new index -> old index).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let elems = h.elements();
        let n = elems.len();
        let pos = |x: usize| elems.binary_search(&x).expect("subgroup is closed");
        let mut table = Vec::with_capacity(n * n);
        for &a in elems {
            for &b in elems {
                table.push(pos(self.mul(a, b)));
            }
        }
        let identity = pos(self.identity);
        let labels = self
            .labels
            .as_ref()
            .map(|l| elems.iter().map(|&a| l[a].clone()).collect());
        (FiniteGroup::from_raw(n, table, identity, labels), elems.to_vec())
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order)
    }
}

/// A subgroup, identified by its sorted element-index list.
///
/// The sorted list doubles as the canonical label used for hashing and
/// tie-breaking throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates that `elements` is a subgroup of `g`.
    pub fn new(g: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&a| a >= g.order()) {
            return Err(Error::NotASubgroup(format!("element {bad} is not in the group")));
        }
        if elements.binary_search(&g.identity()).is_err() {
            return Err(Error::NotASubgroup("missing the identity".into()));
        }
        for &a in &elements {
            if elements.binary_search(&g.inv(a)).is_err() {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elements {
                if elements.binary_search(&g.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup {
            elements: g.closure(gens),
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: vec![g.identity()],
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: g.elements().collect(),
        }
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, grp: &FiniteGroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| grp.conj(g, h)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_normal(&self, grp: &FiniteGroup) -> bool {
        grp.elements()
            .all(|g| self.elements.iter().all(|&h| self.contains(grp.conj(g, h))))
    }
}
