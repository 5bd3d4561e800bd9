//! Group actions on finite sets, groupoid actions, and their translation
//! groupoids.

use std::collections::{BTreeSet, VecDeque};

use super::{FiniteGroupoid, GroupoidHom};
use crate::error::{Error, Result};
use crate::group::{normalizer, FiniteGroup, Subgroup};

/// A finite set with a left action of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: FiniteGroup,
    /// `act[g][x] = g · x`
    act: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl GSet {
    /// Validates the action table: each row a permutation, the identity
    /// acting trivially, and `(gh)·x = g·(h·x)`.
    pub fn new(group: FiniteGroup, act: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        if act.len() != group.order() {
            return Err(Error::axiom("action table", "need one row per group element"));
        }
        let n = act.first().map_or(0, Vec::len);
        for (g, row) in act.iter().enumerate() {
            let mut seen = vec![false; n];
            if row.len() != n || row.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::axiom("action table", format!("row {g} is not a permutation")));
            }
        }
        if let Some(x) = (0..n).find(|&x| act[group.identity()][x] != x) {
            return Err(Error::axiom("identity acts trivially", format!("point {x}")));
        }
        for g in group.elements() {
            for h in group.elements() {
                if let Some(x) = (0..n).find(|&x| act[group.mul(g, h)][x] != act[g][act[h][x]]) {
                    return Err(Error::axiom("compatibility", format!("({g}*{h})·{x} != {g}·({h}·{x})")));
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(Error::axiom("labels", "wrong number of point labels")),
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(GSet { group, act, labels })
    }

    /// Extends the permutations given for some elements to the whole group.
    /// Fails if the elements do not generate the group or the assignment is
    /// not a homomorphism.
    pub fn from_generator_images(
        group: FiniteGroup,
        points: usize,
        images: &[(usize, Vec<usize>)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        for (g, p) in images {
            let mut seen = vec![false; points];
            if *g >= group.order()
                || p.len() != points
                || p.iter().any(|&x| x >= points || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::axiom(
                    "action generators",
                    format!("image of element {g} is not a permutation of {points} points"),
                ));
            }
        }
        let mut act: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        act[group.identity()] = Some((0..points).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(h) = queue.pop_front() {
            for (g, p) in images {
                let gh = group.mul(*g, h);
                let composed: Vec<usize> = act[h].as_ref().unwrap().iter().map(|&x| p[x]).collect();
                match &act[gh] {
                    None => {
                        act[gh] = Some(composed);
                        queue.push_back(gh);
                    }
                    Some(existing) if *existing != composed => {
                        return Err(Error::axiom(
                            "action generators",
                            format!("images are not a homomorphism (conflict at element {gh})"),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
        let act: Option<Vec<Vec<usize>>> = act.into_iter().collect();
        let act = act.ok_or_else(|| Error::axiom("action generators", "given elements do not generate the group"))?;
        GSet::new(group, act, labels)
    }

    /// The one-point set.
    pub fn point(group: &FiniteGroup) -> Self {
        GSet::trivial(group, 1)
    }

    /// `n` points, all fixed.
    pub fn trivial(group: &FiniteGroup, n: usize) -> Self {
        GSet {
            group: group.clone(),
            act: vec![(0..n).collect(); group.order()],
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// The group acting on itself by left translation.
    pub fn regular(group: &FiniteGroup) -> Self {
        GSet {
            group: group.clone(),
            act: group
                .elements()
                .map(|g| group.elements().map(|x| group.mul(g, x)).collect())
                .collect(),
            labels: group.elements().map(|g| group.label(g)).collect(),
        }
    }

    /// Left cosets `G / H`, numbered by least element.
    pub fn cosets(group: &FiniteGroup, h: &Subgroup) -> Self {
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for g in group.elements() {
            if coset_of[g] == usize::MAX {
                for &k in h.elements() {
                    coset_of[group.mul(g, k)] = reps.len();
                }
                reps.push(g);
            }
        }
        let act = group
            .elements()
            .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect())
            .collect();
        GSet {
            group: group.clone(),
            act,
            labels: reps.iter().map(|&r| format!("{}H", group.label(r))).collect(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if self.group != other.group {
            return Err(Error::Invalid("disjoint union of sets over different groups".into()));
        }
        let n = self.len();
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&x| x + n)).collect())
            .collect();
        Ok(GSet {
            group: self.group.clone(),
            act,
            labels: self.labels.iter().chain(&other.labels).cloned().collect(),
        })
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.group.elements().filter(|&g| self.act[g][x] == x).collect())
    }

    /// Points fixed by every element of `h`, sorted.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| h.elements().iter().all(|&g| self.act[g][x] == x))
            .collect()
    }

    /// Orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.group.elements().map(|g| self.act[g][x]).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn is_free(&self) -> bool {
        (0..self.len()).all(|x| self.stabilizer(x).order() == 1)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Restriction of the action along an injective homomorphism
    /// `embedding: sub -> group` (given as an element map).
    pub fn restrict(&self, sub: &FiniteGroup, embedding: &[usize]) -> GSet {
        GSet {
            group: sub.clone(),
            act: embedding.iter().map(|&g| self.act[g].clone()).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Fixed points of `h` as a set acted on by the Weyl group `N(H)/H`.
    /// Returns the Weyl group, the fixed-point action, and the fixed points
    /// (as indices into `self`).
    pub fn weyl_fixed_set(&self, h: &Subgroup) -> Result<(FiniteGroup, GSet, Vec<usize>)> {
        let n = normalizer(&self.group, h)?;
        let (ngroup, n_embed) = self.group.subgroup_as_group(&n);
        let h_in_n: Vec<usize> = (0..ngroup.order()).filter(|&i| h.contains(n_embed[i])).collect();
        let (w, proj) = crate::group::quotient(&ngroup, &Subgroup::from_sorted_unchecked(h_in_n))?;
        let fixed = self.fixed_points(h);
        let pos = |x: usize| fixed.binary_search(&x).expect("N(H) preserves X^H");
        let mut act = vec![Vec::new(); w.order()];
        for (i, &g) in n_embed.iter().enumerate() {
            let c = proj[i];
            if act[c].is_empty() {
                act[c] = fixed.iter().map(|&x| pos(self.act[g][x])).collect();
            }
        }
        let labels = fixed.iter().map(|&x| self.labels[x].clone()).collect();
        let set = GSet {
            group: w.clone(),
            act,
            labels,
        };
        Ok((w, set, fixed))
    }

    /// As an action of the one-object groupoid of the group.
    pub fn as_groupoid_action(&self) -> GroupoidAction {
        let n = self.len();
        GroupoidAction {
            anchor: vec![0; n],
            fibers: vec![(0..n).collect()],
            fiber_pos: (0..n).collect(),
            act: self.act.clone(),
            labels: self.labels.clone(),
        }
    }

    /// `G ⋉ X`: objects are the points, arrow `(g, x)` has index
    /// `g * |X| + x`, goes from `x` to `g·x`, and `(h, g·x) ∘ (g, x) = (hg, x)`.
    pub fn translation_groupoid(&self) -> FiniteGroupoid {
        let base = FiniteGroupoid::from_group(&self.group);
        let mut tg = ActionGroupoid::new(&base, &self.as_groupoid_action()).groupoid;
        tg.arrow_labels = self
            .group
            .elements()
            .flat_map(|g| self.labels.iter().map(move |x| (g, x)))
            .map(|(g, x)| format!("{}@{}", self.group.label(g), x))
            .collect();
        tg
    }
}

/// A set fibred over the objects of a groupoid by an anchor map, with the
/// arrows acting between fibres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidAction {
    anchor: Vec<usize>,
    /// points over each object, sorted
    fibers: Vec<Vec<usize>>,
    /// position of each point in its fibre
    fiber_pos: Vec<usize>,
    /// `act[a][fiber_pos[e]] = a · e` for `e` over `source(a)`
    act: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl GroupoidAction {
    /// Builds an action from an anchor and a rule `act(arrow, point)`, then
    /// checks the action axioms against `g`.
    pub fn new(
        g: &FiniteGroupoid,
        anchor: Vec<usize>,
        mut act: impl FnMut(usize, usize) -> usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let action = Self::build(g, anchor, &mut act, labels);
        action.check_axioms(g)?;
        Ok(action)
    }

    pub(crate) fn build(
        g: &FiniteGroupoid,
        anchor: Vec<usize>,
        mut act: impl FnMut(usize, usize) -> usize,
        labels: Option<Vec<String>>,
    ) -> Self {
        let mut fibers = vec![Vec::new(); g.num_objects()];
        let mut fiber_pos = vec![0; anchor.len()];
        for (e, &x) in anchor.iter().enumerate() {
            fiber_pos[e] = fibers[x].len();
            fibers[x].push(e);
        }
        let table = g
            .arrows()
            .map(|a| fibers[g.source(a)].iter().map(|&e| act(a, e)).collect())
            .collect();
        let labels = labels.unwrap_or_else(|| (0..anchor.len()).map(|i| i.to_string()).collect());
        GroupoidAction {
            anchor,
            fibers,
            fiber_pos,
            act: table,
            labels,
        }
    }

    /// `π(a·e) = target(a)`, units act trivially, `b·(a·e) = (b∘a)·e`.
    pub fn check_axioms(&self, g: &FiniteGroupoid) -> Result<()> {
        if self.fibers.len() != g.num_objects() {
            return Err(Error::axiom("anchor", "fibre count differs from object count"));
        }
        for a in g.arrows() {
            for &e in &self.fibers[g.source(a)] {
                let f = self.act(a, e);
                if f >= self.len() || self.anchor[f] != g.target(a) {
                    return Err(Error::axiom(
                        "anchor",
                        format!("arrow {a} moves point {e} off target fibre"),
                    ));
                }
            }
        }
        for x in g.objects() {
            for &e in &self.fibers[x] {
                if self.act(g.unit(x), e) != e {
                    return Err(Error::axiom("unit acts trivially", format!("point {e}")));
                }
            }
        }
        for a in g.arrows() {
            for &b in g.outgoing(g.target(a)) {
                let ba = g.compose(b, a);
                for &e in &self.fibers[g.source(a)] {
                    if self.act(b, self.act(a, e)) != self.act(ba, e) {
                        return Err(Error::axiom("compatibility", format!("{b}·({a}·{e}) != ({b}∘{a})·{e}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.anchor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchor.is_empty()
    }

    pub fn anchor(&self, e: usize) -> usize {
        self.anchor[e]
    }

    pub fn fiber(&self, x: usize) -> &[usize] {
        &self.fibers[x]
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `a · e`; requires `anchor(e) == source(a)`.
    #[inline]
    pub fn act(&self, a: usize, e: usize) -> usize {
        self.act[a][self.fiber_pos[e]]
    }

    /// Pullback along `phi: G -> H` of this action over `H`: points are
    /// pairs `(e, x)` with `π(e) = φ(x)`, numbered `x`-major. Returns the
    /// action together with the pair behind each point.
    pub fn pullback(&self, phi: &GroupoidHom, g: &FiniteGroupoid) -> (GroupoidAction, Vec<(usize, usize)>) {
        let mut pairs = Vec::new();
        let mut start = Vec::with_capacity(g.num_objects());
        for x in g.objects() {
            start.push(pairs.len());
            for &e in &self.fibers[phi.object_map[x]] {
                pairs.push((e, x));
            }
        }
        let anchor: Vec<usize> = pairs.iter().map(|&(_, x)| x).collect();
        let labels = pairs
            .iter()
            .map(|&(e, x)| format!("({},{})", self.labels[e], g.object_label(x)))
            .collect();
        let action = GroupoidAction::build(
            g,
            anchor,
            |a, p| {
                let (e, _) = pairs[p];
                let y = g.target(a);
                let f = self.act(phi.arrow_map[a], e);
                start[y] + self.fiber_pos[f]
            },
            Some(labels),
        );
        (action, pairs)
    }
}

/// The translation groupoid `G ⋉ E` of a groupoid action.
#[derive(Clone, Debug)]
pub struct ActionGroupoid {
    pub groupoid: FiniteGroupoid,
    /// `(arrow of G, point of E)` behind each arrow
    pub pairs: Vec<(usize, usize)>,
    offset: Vec<usize>,
    fiber_pos: Vec<usize>,
}

impl ActionGroupoid {
    /// Objects are the points of `e`; arrows `(a, p)` with `π(p) = source(a)`,
    /// numbered `a`-major then by position in the fibre.
    pub fn new(g: &FiniteGroupoid, e: &GroupoidAction) -> Self {
        let mut pairs = Vec::new();
        let mut offset = Vec::with_capacity(g.num_arrows());
        for a in g.arrows() {
            offset.push(pairs.len());
            for &p in e.fiber(g.source(a)) {
                pairs.push((a, p));
            }
        }
        let index = |a: usize, p: usize| offset[a] + e.fiber_pos[p];
        let mut groupoid = FiniteGroupoid::build(
            e.len(),
            pairs.iter().map(|&(_, p)| p).collect(),
            pairs.iter().map(|&(a, p)| e.act(a, p)).collect(),
            (0..e.len()).map(|p| index(g.unit(e.anchor(p)), p)).collect(),
            pairs.iter().map(|&(a, p)| index(g.inverse(a), e.act(a, p))).collect(),
            |after, before| {
                let (b, _) = pairs[after];
                let (a, p) = pairs[before];
                index(g.compose(b, a), p)
            },
        );
        groupoid.object_labels = e.labels.clone();
        groupoid.arrow_labels = pairs
            .iter()
            .map(|&(a, p)| format!("{}@{}", g.arrow_label(a), e.label(p)))
            .collect();
        ActionGroupoid {
            groupoid,
            pairs,
            offset,
            fiber_pos: e.fiber_pos.clone(),
        }
    }

    /// Index of the arrow `(a, p)`.
    pub fn arrow(&self, a: usize, p: usize) -> usize {
        self.offset[a] + self.fiber_pos[p]
    }

    /// Projection `G ⋉ E -> G`.
    pub fn projection(&self, e: &GroupoidAction) -> GroupoidHom {
        GroupoidHom::new(
            (0..e.len()).map(|p| e.anchor(p)).collect(),
            self.pairs.iter().map(|&(a, _)| a).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::all_subgroups;

    #[test]
    fn translation_of_point_is_the_group() {
        let s3 = FiniteGroup::symmetric(3);
        let tg = GSet::point(&s3).translation_groupoid();
        assert_eq!((tg.num_objects(), tg.num_arrows()), (1, 6));
        tg.check_axioms().unwrap();
    }

    #[test]
    fn swap_action() {
        let z2 = FiniteGroup::cyclic(2);
        let swap = GSet::regular(&z2);
        let tg = swap.translation_groupoid();
        assert_eq!((tg.num_objects(), tg.num_arrows()), (2, 4));
        tg.check_axioms().unwrap();
        assert_eq!(tg.components().len(), 1);
        for x in tg.objects() {
            assert_eq!(tg.isotropy(x).unwrap().group.order(), 1);
        }
        // arrow (g, x) has index g*|X| + x
        assert_eq!((tg.source(3), tg.target(3)), (1, 0));
    }

    #[test]
    fn trivial_action_on_two_points() {
        let z2 = FiniteGroup::cyclic(2);
        let tg = GSet::trivial(&z2, 2).translation_groupoid();
        assert_eq!(tg.components().len(), 2);
        assert!(tg.objects().all(|x| tg.isotropy(x).unwrap().group.order() == 2));
    }

    #[test]
    fn isotropy_is_stabilizer() {
        let s4 = FiniteGroup::symmetric(4);
        for h in all_subgroups(&s4).iter().step_by(5) {
            let x = GSet::cosets(&s4, h);
            let tg = x.translation_groupoid();
            for p in 0..x.len() {
                let iso = tg.isotropy(p).unwrap();
                let stab: Vec<usize> = iso.arrows.iter().map(|&a| a / x.len()).collect();
                assert_eq!(stab, x.stabilizer(p).elements());
            }
        }
    }

    #[test]
    fn rejects_non_actions() {
        let z2 = FiniteGroup::cyclic(2);
        let err = GSet::new(z2.clone(), vec![vec![1, 0], vec![1, 0]], None).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { ref axiom, .. } if axiom == "identity acts trivially"));
        let z3 = FiniteGroup::cyclic(3);
        // a transposition cannot be the image of a generator of order 3
        let err = GSet::from_generator_images(z3, 2, &[(1, vec![1, 0])], None).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
    }

    #[test]
    fn generator_images_expand() {
        let s3 = FiniteGroup::symmetric(3);
        let gens: Vec<(usize, Vec<usize>)> = s3
            .elements()
            .filter(|&g| s3.element_order(g) > 1)
            .take(2)
            .map(|g| (g, GSet::cosets(&s3, &Subgroup::trivial(&s3)).table()[g].clone()))
            .collect();
        let x = GSet::from_generator_images(s3.clone(), 6, &gens, None).unwrap();
        assert!(x.is_free() && x.is_transitive());
    }

    #[test]
    fn weyl_fixed_sets() {
        let s3 = FiniteGroup::symmetric(3);
        let x = GSet::point(&s3);
        let r = s3.elements().find(|&a| s3.element_order(a) == 3).unwrap();
        let a3 = Subgroup::generated(&s3, &[r]);
        let (w, set, fixed) = x.weyl_fixed_set(&a3).unwrap();
        assert_eq!(w.order(), 2);
        assert_eq!(set.len(), 1);
        assert_eq!(fixed, vec![0]);
    }

    #[test]
    fn pullback_along_identity() {
        let z2 = FiniteGroup::cyclic(2);
        let g = GSet::regular(&z2).translation_groupoid();
        let e = GroupoidAction::new(
            &g,
            g.objects().collect(),
            |a, p| {
                let _ = p;
                g.target(a)
            },
            None,
        )
        .unwrap();
        let (pb, pairs) = e.pullback(&GroupoidHom::identity(&g), &g);
        pb.check_axioms(&g).unwrap();
        assert_eq!(pb.len(), e.len());
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
        let empty = GroupoidAction::new(&g, vec![], |_, p| p, None).unwrap();
        assert!(empty.pullback(&GroupoidHom::identity(&g), &g).0.is_empty());
    }
}
