//! Finite groupoids and their homomorphisms.
//!
//! Objects and arrows are integer indices. Composition is stored as a table
//! built once: for each arrow `after`, the composites `after ∘ before` for
//! every `before` ending at `source(after)`.

mod action;
mod hom;
mod morita;

pub use action::{ActionGroupoid, GSet, GroupoidAction};
pub use hom::GroupoidHom;
pub use morita::{morita_equivalent, ComponentMatch, MoritaCertificate};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    source: Vec<usize>,
    target: Vec<usize>,
    unit: Vec<usize>,
    inverse: Vec<usize>,
    /// arrows ending at each object, sorted
    incoming: Vec<Vec<usize>>,
    /// arrows starting at each object, sorted
    outgoing: Vec<Vec<usize>>,
    /// position of each arrow in `incoming[target]`
    in_pos: Vec<usize>,
    /// `compose[after][in_pos[before]] = after ∘ before`
    compose: Vec<Vec<usize>>,
    object_labels: Vec<String>,
    arrow_labels: Vec<String>,
}

/// Partition of the objects into connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Each class sorted; classes ordered by their least object.
    pub classes: Vec<Vec<usize>>,
    /// Component index of each object.
    pub of: Vec<usize>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Least object of each component.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// Isotropy group at an object, with the arrow behind each group element.
#[derive(Clone, Debug)]
pub struct Isotropy {
    pub object: usize,
    pub group: FiniteGroup,
    /// `arrows[i]` is the loop corresponding to group element `i`; sorted.
    pub arrows: Vec<usize>,
}

impl Isotropy {
    pub fn element_of(&self, arrow: usize) -> Option<usize> {
        self.arrows.binary_search(&arrow).ok()
    }

    /// Arrow indices of a subgroup of the isotropy group, sorted.
    pub fn subgroup_arrows(&self, h: &Subgroup) -> Vec<usize> {
        // `arrows` is sorted and subgroup elements are sorted, so the image is too
        h.elements().iter().map(|&i| self.arrows[i]).collect()
    }

    /// The subgroup formed by a set of loop arrows.
    pub fn subgroup_of_arrows(&self, arrows: &[usize]) -> Option<Subgroup> {
        let elems: Option<Vec<usize>> = arrows.iter().map(|&a| self.element_of(a)).collect();
        Subgroup::new(&self.group, elems?).ok()
    }
}

/// A groupoid together with the homomorphism exhibiting it inside another.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub groupoid: FiniteGroupoid,
    pub inclusion: GroupoidHom,
}

/// A quotient groupoid together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub groupoid: FiniteGroupoid,
    pub projection: GroupoidHom,
}

impl FiniteGroupoid {
    /// Builds the derived tables from source/target and a composition rule
    /// `compose(after, before)`. The caller guarantees the axioms.
    pub(crate) fn build(
        objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        unit: Vec<usize>,
        inverse: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let arrows = source.len();
        let mut incoming = vec![Vec::new(); objects];
        let mut outgoing = vec![Vec::new(); objects];
        let mut in_pos = vec![0; arrows];
        for a in 0..arrows {
            in_pos[a] = incoming[target[a]].len();
            incoming[target[a]].push(a);
            outgoing[source[a]].push(a);
        }
        let table = (0..arrows)
            .map(|after| {
                incoming[source[after]]
                    .iter()
                    .map(|&before| compose(after, before))
                    .collect()
            })
            .collect();
        FiniteGroupoid {
            source,
            target,
            unit,
            inverse,
            incoming,
            outgoing,
            in_pos,
            compose: table,
            object_labels: (0..objects).map(|i| i.to_string()).collect(),
            arrow_labels: (0..arrows).map(|i| i.to_string()).collect(),
        }
    }

    /// Builds a groupoid from explicit tables and checks every axiom.
    ///
    /// `composites` lists `(after, before, after ∘ before)` for every pair with
    /// `target(before) = source(after)`. Units and inverses are derived.
    pub fn from_tables(
        objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let arrows = source.len();
        if target.len() != arrows {
            return Err(Error::axiom("arrow tables", "source and target lengths differ"));
        }
        for a in 0..arrows {
            if source[a] >= objects || target[a] >= objects {
                return Err(Error::axiom(
                    "arrow tables",
                    format!("arrow {a} has an endpoint out of range"),
                ));
            }
        }
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for &(after, before, c) in composites {
            if after >= arrows || before >= arrows || c >= arrows {
                return Err(Error::axiom(
                    "composition",
                    format!("entry ({after},{before}) -> {c} is out of range"),
                ));
            }
            if target[before] != source[after] {
                return Err(Error::axiom(
                    "composition",
                    format!("arrows {after} and {before} are not composable"),
                ));
            }
            if table.insert((after, before), c).is_some() {
                return Err(Error::axiom(
                    "composition",
                    format!("pair ({after},{before}) listed twice"),
                ));
            }
        }
        for (after, s) in source.iter().enumerate() {
            for (before, t) in target.iter().enumerate() {
                if t == s && !table.contains_key(&(after, before)) {
                    return Err(Error::axiom(
                        "composition",
                        format!("composite {after}∘{before} missing"),
                    ));
                }
            }
        }
        let mut unit = vec![usize::MAX; objects];
        for (x, u) in unit.iter_mut().enumerate() {
            *u = (0..arrows)
                .filter(|&e| source[e] == x && target[e] == x)
                .find(|&e| {
                    (0..arrows)
                        .all(|a| (target[a] != x || table[&(e, a)] == a) && (source[a] != x || table[&(a, e)] == a))
                })
                .ok_or_else(|| Error::axiom("units", format!("object {x} has no identity arrow")))?;
        }
        let mut inverse = vec![usize::MAX; arrows];
        for a in 0..arrows {
            inverse[a] = (0..arrows)
                .filter(|&b| source[b] == target[a] && target[b] == source[a])
                .find(|&b| table[&(b, a)] == unit[source[a]] && table[&(a, b)] == unit[target[a]])
                .ok_or_else(|| Error::axiom("inverses", format!("arrow {a} has no inverse")))?;
        }
        let g = Self::build(objects, source, target, unit, inverse, |a, b| table[&(a, b)]);
        g.check_axioms()?;
        Ok(g)
    }

    /// Full axiom suite: endpoint compatibility, associativity on composable
    /// triples, unit and inverse laws.
    pub fn check_axioms(&self) -> Result<()> {
        for x in 0..self.num_objects() {
            let u = self.unit[x];
            if self.source[u] != x || self.target[u] != x {
                return Err(Error::axiom("units", format!("unit of {x} is not a loop at {x}")));
            }
        }
        for after in self.arrows() {
            for &before in &self.incoming[self.source[after]] {
                let c = self.compose(after, before);
                if self.source[c] != self.source[before] || self.target[c] != self.target[after] {
                    return Err(Error::axiom("composition endpoints", format!("{after}∘{before} = {c}")));
                }
                for &first in &self.incoming[self.source[before]] {
                    let lhs = self.compose(c, first);
                    let rhs = self.compose(after, self.compose(before, first));
                    if lhs != rhs {
                        return Err(Error::axiom(
                            "associativity",
                            format!("({after}∘{before})∘{first} != {after}∘({before}∘{first})"),
                        ));
                    }
                }
            }
        }
        for a in self.arrows() {
            let (s, t) = (self.source[a], self.target[a]);
            if self.compose(self.unit[t], a) != a || self.compose(a, self.unit[s]) != a {
                return Err(Error::axiom("units", format!("unit laws fail for arrow {a}")));
            }
            let b = self.inverse[a];
            if self.source[b] != t
                || self.target[b] != s
                || self.compose(b, a) != self.unit[s]
                || self.compose(a, b) != self.unit[t]
            {
                return Err(Error::axiom("inverses", format!("arrow {a} and claimed inverse {b}")));
            }
        }
        Ok(())
    }

    /// One object whose arrows are the elements of `g`.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut out = Self::build(
            1,
            vec![0; n],
            vec![0; n],
            vec![g.identity()],
            g.elements().map(|a| g.inv(a)).collect(),
            |a, b| g.mul(a, b),
        );
        out.object_labels = vec!["*".to_string()];
        out.arrow_labels = g.elements().map(|a| g.label(a)).collect();
        out
    }

    /// Only identity arrows, one object per label.
    pub fn unit_groupoid(labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut out = Self::build(
            n,
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            |a, _| a,
        );
        out.arrow_labels = labels.iter().map(|l| format!("1_{l}")).collect();
        out.object_labels = labels;
        out
    }

    pub fn unit_groupoid_n(n: usize) -> Self {
        Self::unit_groupoid((0..n).map(|i| i.to_string()).collect())
    }

    pub fn num_objects(&self) -> usize {
        self.unit.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.source.len()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.num_objects()
    }

    pub fn arrows(&self) -> std::ops::Range<usize> {
        0..self.num_arrows()
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn target(&self, a: usize) -> usize {
        self.target[a]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.unit[x]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.unit[self.source[a]] == a
    }

    /// `after ∘ before`; requires `target(before) == source(after)`.
    #[inline]
    pub fn compose(&self, after: usize, before: usize) -> usize {
        debug_assert_eq!(self.target[before], self.source[after]);
        self.compose[after][self.in_pos[before]]
    }

    pub fn try_compose(&self, after: usize, before: usize) -> Option<usize> {
        (self.target[before] == self.source[after]).then(|| self.compose(after, before))
    }

    /// `g ∘ h ∘ g^-1` for a loop `h` at `source(g)`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.compose(self.compose(g, h), self.inverse[g])
    }

    pub fn incoming(&self, x: usize) -> &[usize] {
        &self.incoming[x]
    }

    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    /// Arrows `x -> y`, sorted.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.outgoing[x]
            .iter()
            .copied()
            .filter(|&a| self.target[a] == y)
            .collect()
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.object_labels[x]
    }

    pub fn arrow_label(&self, a: usize) -> &str {
        &self.arrow_labels[a]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn arrow_labels(&self) -> &[String] {
        &self.arrow_labels
    }

    pub fn with_labels(mut self, objects: Vec<String>, arrows: Vec<String>) -> Result<Self> {
        if objects.len() != self.num_objects() || arrows.len() != self.num_arrows() {
            return Err(Error::Invalid("label count does not match".into()));
        }
        self.object_labels = objects;
        self.arrow_labels = arrows;
        Ok(self)
    }

    pub fn object_by_label(&self, label: &str) -> Option<usize> {
        self.object_labels.iter().position(|l| l == label)
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<usize> {
        self.arrow_labels.iter().position(|l| l == label)
    }

    /// Loops at `x` as a group.
    pub fn isotropy(&self, x: usize) -> Result<Isotropy> {
        if x >= self.num_objects() {
            return Err(Error::NoSuchObject(x));
        }
        let arrows = self.hom(x, x);
        let n = arrows.len();
        let pos = |a: usize| arrows.binary_search(&a).expect("loops compose to loops");
        let mut table = Vec::with_capacity(n * n);
        for &a in &arrows {
            for &b in &arrows {
                table.push(pos(self.compose(a, b)));
            }
        }
        let identity = pos(self.unit[x]);
        let labels = arrows.iter().map(|&a| self.arrow_labels[a].clone()).collect();
        Ok(Isotropy {
            object: x,
            group: FiniteGroup::from_raw(n, table, identity, Some(labels)),
            arrows,
        })
    }

    /// Orbits of objects under "some arrow connects them".
    pub fn components(&self) -> Components {
        let n = self.num_objects();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in self.arrows() {
            let (s, t) = (find(&mut parent, self.source[a]), find(&mut parent, self.target[a]));
            if s != t {
                let (lo, hi) = if s < t { (s, t) } else { (t, s) };
                parent[hi] = lo;
            }
        }
        let mut of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            if of[r] == usize::MAX {
                of[r] = classes.len();
                classes.push(Vec::new());
            }
            of[x] = of[r];
            classes[of[x]].push(x);
        }
        Components { classes, of }
    }

    /// The full subgroupoid on `objects` (kept in the given order).
    pub fn full_subgroupoid(&self, objects: &[usize]) -> Embedded {
        let mut new_index = vec![usize::MAX; self.num_objects()];
        for (i, &x) in objects.iter().enumerate() {
            new_index[x] = i;
        }
        let arrows: Vec<usize> = objects
            .iter()
            .flat_map(|&x| self.outgoing[x].iter().copied())
            .filter(|&a| new_index[self.target[a]] != usize::MAX)
            .collect();
        let mut arrow_index = HashMap::with_capacity(arrows.len());
        for (i, &a) in arrows.iter().enumerate() {
            arrow_index.insert(a, i);
        }
        let mut groupoid = Self::build(
            objects.len(),
            arrows.iter().map(|&a| new_index[self.source[a]]).collect(),
            arrows.iter().map(|&a| new_index[self.target[a]]).collect(),
            objects.iter().map(|&x| arrow_index[&self.unit[x]]).collect(),
            arrows.iter().map(|&a| arrow_index[&self.inverse[a]]).collect(),
            |f, g| arrow_index[&self.compose(arrows[f], arrows[g])],
        );
        groupoid.object_labels = objects.iter().map(|&x| self.object_labels[x].clone()).collect();
        groupoid.arrow_labels = arrows.iter().map(|&a| self.arrow_labels[a].clone()).collect();
        Embedded {
            groupoid,
            inclusion: GroupoidHom::new(objects.to_vec(), arrows),
        }
    }

    /// One object per component (its least object) with its isotropy, plus
    /// the inclusion, which is a weak equivalence.
    pub fn skeleton(&self) -> Embedded {
        self.full_subgroupoid(&self.components().representatives())
    }

    /// Disjoint union; objects and arrows of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let (n, m) = (self.num_objects(), self.num_arrows());
        let source = self
            .source
            .iter()
            .copied()
            .chain(other.source.iter().map(|x| x + n))
            .collect();
        let target = self
            .target
            .iter()
            .copied()
            .chain(other.target.iter().map(|x| x + n))
            .collect();
        let unit = self
            .unit
            .iter()
            .copied()
            .chain(other.unit.iter().map(|a| a + m))
            .collect();
        let inverse = self
            .inverse
            .iter()
            .copied()
            .chain(other.inverse.iter().map(|a| a + m))
            .collect();
        let mut out = Self::build(n + other.num_objects(), source, target, unit, inverse, |a, b| {
            if a < m {
                self.compose(a, b)
            } else {
                other.compose(a - m, b - m) + m
            }
        });
        out.object_labels = self.object_labels.iter().chain(&other.object_labels).cloned().collect();
        out.arrow_labels = self.arrow_labels.iter().chain(&other.arrow_labels).cloned().collect();
        out
    }

    /// Replaces each object `x` by `sizes[x]` copies, with one arrow
    /// `(a, i, j): (x, i) -> (y, j)` for every arrow `a: x -> y`. The
    /// returned projection onto `self` is a weak equivalence.
    ///
    /// Objects are numbered `x`-major; arrows `a`-major, then `i`, then `j`.
    pub fn inflate(&self, sizes: &[usize]) -> Result<(FiniteGroupoid, GroupoidHom)> {
        if sizes.len() != self.num_objects() || sizes.contains(&0) {
            return Err(Error::Invalid("inflation needs a positive size per object".into()));
        }
        let mut obj_offset = Vec::with_capacity(sizes.len());
        let mut total = 0;
        for &s in sizes {
            obj_offset.push(total);
            total += s;
        }
        let mut arrow_offset = Vec::with_capacity(self.num_arrows());
        let mut arrows = 0;
        for a in self.arrows() {
            arrow_offset.push(arrows);
            arrows += sizes[self.source[a]] * sizes[self.target[a]];
        }
        let mut parts = Vec::with_capacity(arrows); // (a, i, j)
        let mut source = Vec::with_capacity(arrows);
        let mut target = Vec::with_capacity(arrows);
        for a in self.arrows() {
            let (x, y) = (self.source[a], self.target[a]);
            for i in 0..sizes[x] {
                for j in 0..sizes[y] {
                    parts.push((a, i, j));
                    source.push(obj_offset[x] + i);
                    target.push(obj_offset[y] + j);
                }
            }
        }
        let index = |a: usize, i: usize, j: usize| arrow_offset[a] + i * sizes[self.target[a]] + j;
        let mut object_of = Vec::with_capacity(total);
        let mut object_labels = Vec::with_capacity(total);
        for x in self.objects() {
            for i in 0..sizes[x] {
                object_of.push(x);
                object_labels.push(format!("{}#{i}", self.object_labels[x]));
            }
        }
        let unit = (0..total)
            .map(|o| {
                let x = object_of[o];
                let i = o - obj_offset[x];
                index(self.unit[x], i, i)
            })
            .collect();
        let inverse = parts.iter().map(|&(a, i, j)| index(self.inverse[a], j, i)).collect();
        let mut g = Self::build(total, source, target, unit, inverse, |f, h| {
            let (b, _, k) = parts[f];
            let (a, i, _) = parts[h];
            index(self.compose(b, a), i, k)
        });
        g.object_labels = object_labels;
        g.arrow_labels = parts
            .iter()
            .map(|&(a, i, j)| format!("{}#{i}>{j}", self.arrow_labels[a]))
            .collect();
        let projection = GroupoidHom::new(object_of, parts.iter().map(|&(a, _, _)| a).collect());
        Ok((g, projection))
    }

    /// Quotient by a wide, normal, totally intransitive subgroupoid `k`
    /// (given as a set of arrows). Arrows of the quotient are the classes
    /// `g ∘ K_source(g)`, numbered by least member.
    pub fn quotient_by_normal_wide_subgroupoid(&self, k: &[usize]) -> Result<Quotient> {
        let mut in_k = vec![false; self.num_arrows()];
        for &a in k {
            if a >= self.num_arrows() {
                return Err(Error::axiom("subgroupoid", format!("arrow {a} out of range")));
            }
            in_k[a] = true;
        }
        let mut loops_k: Vec<Vec<usize>> = vec![Vec::new(); self.num_objects()];
        for a in self.arrows() {
            if !in_k[a] {
                continue;
            }
            if self.source[a] != self.target[a] {
                return Err(Error::axiom("totally intransitive", format!("arrow {a} is not a loop")));
            }
            loops_k[self.source[a]].push(a);
        }
        for x in self.objects() {
            if !in_k[self.unit[x]] {
                return Err(Error::axiom("wide", format!("unit of object {x} missing")));
            }
            for &a in &loops_k[x] {
                if !in_k[self.inverse[a]] {
                    return Err(Error::axiom("closed under inverses", format!("arrow {a}")));
                }
                for &b in &loops_k[x] {
                    if !in_k[self.compose(a, b)] {
                        return Err(Error::axiom("closed under composition", format!("{a}∘{b}")));
                    }
                }
            }
        }
        for g in self.arrows() {
            for &h in &loops_k[self.source[g]] {
                if !in_k[self.conjugate(g, h)] {
                    return Err(Error::axiom("normal", format!("conjugate of {h} by {g}")));
                }
            }
        }

        let mut class_of = vec![usize::MAX; self.num_arrows()];
        let mut reps = Vec::new();
        for g in self.arrows() {
            if class_of[g] != usize::MAX {
                continue;
            }
            for &h in &loops_k[self.source[g]] {
                class_of[self.compose(g, h)] = reps.len();
            }
            reps.push(g);
        }
        let mut groupoid = Self::build(
            self.num_objects(),
            reps.iter().map(|&g| self.source[g]).collect(),
            reps.iter().map(|&g| self.target[g]).collect(),
            self.unit.iter().map(|&u| class_of[u]).collect(),
            reps.iter().map(|&g| class_of[self.inverse[g]]).collect(),
            |a, b| class_of[self.compose(reps[a], reps[b])],
        );
        groupoid.object_labels = self.object_labels.clone();
        groupoid.arrow_labels = reps.iter().map(|&g| format!("[{}]", self.arrow_labels[g])).collect();
        Ok(Quotient {
            groupoid,
            projection: GroupoidHom::new(self.objects().collect(), class_of),
        })
    }

    /// Order of the isotropy group at each object.
    pub fn isotropy_orders(&self) -> Vec<usize> {
        self.objects().map(|x| self.hom(x, x).len()).collect()
    }
}
