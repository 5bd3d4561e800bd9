//! Fixed point sectors.
//!
//! A sector point `(x, K)` is an object `x` together with a subgroup `K` of
//! its isotropy group, stored as the sorted list of loop arrows. Sorting is
//! how the free permutation action on ordered tuples is quotiented out: an
//! ordered tuple of distinct arrows forming a group has exactly one sorted
//! representative.

mod diagram;

pub use diagram::{orbit_category_diagram, DiagramMorphism, DiagramObject, OrbitDiagram};

use std::collections::HashMap;

use crate::error::{Error, Limits, Result};
use crate::group::{
    all_subgroups, conjugacy_classes_of_subgroups, find_isomorphism, FiniteGroup, GroupSignature, Subgroup,
};
use crate::groupoid::{ActionGroupoid, Components, FiniteGroupoid, GroupoidAction, GroupoidHom, Isotropy, Quotient};

/// An ordered tuple of loops at one object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTuple(pub Vec<usize>);

/// A point `(x, K)` of the sector space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorPoint {
    pub base: usize,
    /// Sorted arrow indices of the subgroup.
    pub group: Vec<usize>,
}

impl SectorPoint {
    pub fn order(&self) -> usize {
        self.group.len()
    }

    pub fn label(&self, g: &FiniteGroupoid) -> String {
        let elems: Vec<&str> = self.group.iter().map(|&a| g.arrow_label(a)).collect();
        format!("({},{{{}}})", g.object_label(self.base), elems.join(","))
    }
}

/// Sector points whose subgroups share one isomorphism type.
#[derive(Clone, Debug)]
pub struct Stratum {
    /// The first subgroup seen of this type, as an abstract group.
    pub representative: FiniteGroup,
    pub signature: GroupSignature,
    /// Indices into [`SectorSpace::points`], ascending.
    pub points: Vec<usize>,
}

impl Stratum {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// The set of all subgroups of all isotropy groups, stratified by
/// isomorphism type and acted on by conjugation.
#[derive(Clone, Debug)]
pub struct SectorSpace {
    points: Vec<SectorPoint>,
    stratum_of: Vec<usize>,
    strata: Vec<Stratum>,
    index: HashMap<SectorPoint, usize>,
    action: GroupoidAction,
}

fn check_cap(iso: &Isotropy, limits: &Limits) -> Result<()> {
    if iso.group.order() > limits.order_cap {
        return Err(Error::OrderCapExceeded {
            order: iso.group.order(),
            cap: limits.order_cap,
        });
    }
    Ok(())
}

/// All ordered `k`-tuples of loops at a common object.
pub fn k_sectors(g: &FiniteGroupoid, k: usize, limits: &Limits) -> Result<Vec<KTuple>> {
    let mut total: usize = 0;
    for x in g.objects() {
        let n = g.hom(x, x).len();
        total = n
            .checked_pow(k as u32)
            .and_then(|c| total.checked_add(c))
            .filter(|&t| t <= limits.simplex_budget)
            .ok_or(Error::SizeBudgetExceeded {
                needed: usize::MAX,
                budget: limits.simplex_budget,
            })?;
    }
    let mut out = Vec::with_capacity(total);
    for x in g.objects() {
        let loops = g.hom(x, x);
        let mut idx = vec![0usize; k];
        loop {
            out.push(KTuple(idx.iter().map(|&i| loops[i]).collect()));
            // odometer
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < loops.len() {
                    break;
                }
                idx[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX || k == 0 {
                break;
            }
        }
    }
    Ok(out)
}

fn permutations_of(items: &[usize], out: &mut Vec<KTuple>) {
    let mut current = items.to_vec();
    current.sort_unstable();
    let n = current.len();
    loop {
        out.push(KTuple(current.clone()));
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i))
}

/// Ordered tuples of pairwise distinct loops at one object whose underlying
/// set is a subgroup isomorphic to `h`. Each such subgroup contributes all
/// `|h|!` orderings.
pub fn p_h(g: &FiniteGroupoid, h: &FiniteGroup, limits: &Limits) -> Result<Vec<KTuple>> {
    let per_subgroup = factorial(h.order()).unwrap_or(usize::MAX);
    let subgroups = subgroups_isomorphic_to(g, h, limits)?;
    let needed = subgroups.len().saturating_mul(per_subgroup);
    if needed > limits.simplex_budget {
        return Err(Error::SizeBudgetExceeded {
            needed,
            budget: limits.simplex_budget,
        });
    }
    let mut out = Vec::with_capacity(needed);
    for s in subgroups {
        permutations_of(&s, &mut out);
    }
    Ok(out)
}

/// `|P^H|` without enumerating the tuples: the number of subgroups
/// isomorphic to `h` times `|h|!`, or `None` past `u128`.
pub fn p_h_count(g: &FiniteGroupoid, h: &FiniteGroup, limits: &Limits) -> Result<Option<u128>> {
    let count = subgroups_isomorphic_to(g, h, limits)?.len() as u128;
    Ok((1..=h.order() as u128).try_fold(count, |acc, i| acc.checked_mul(i)))
}

fn subgroups_isomorphic_to(g: &FiniteGroupoid, h: &FiniteGroup, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    if h.order() > limits.order_cap {
        return Err(Error::OrderCapExceeded {
            order: h.order(),
            cap: limits.order_cap,
        });
    }
    let mut subgroups = Vec::new();
    for x in g.objects() {
        let iso = g.isotropy(x)?;
        check_cap(&iso, limits)?;
        for k in all_subgroups(&iso.group) {
            if k.order() != h.order() {
                continue;
            }
            let (kg, _) = iso.group.subgroup_as_group(&k);
            if find_isomorphism(&kg, h, limits.order_cap)?.is_some() {
                subgroups.push(iso.subgroup_arrows(&k));
            }
        }
    }
    Ok(subgroups)
}

impl SectorSpace {
    /// Enumerates every `(x, K)`, stratifies by isomorphism type of `K`
    /// (first-seen representative, strata ordered by group order and then by
    /// first appearance), and attaches the conjugation action
    /// `h·(x, K) = (target(h), h K h^-1)`.
    pub fn new(g: &FiniteGroupoid, limits: &Limits) -> Result<Self> {
        // (point, index of its stratum in first-seen order)
        let mut raw: Vec<(SectorPoint, usize)> = Vec::new();
        let mut seen: Vec<(FiniteGroup, GroupSignature)> = Vec::new();
        for x in g.objects() {
            let iso = g.isotropy(x)?;
            check_cap(&iso, limits)?;
            for class in conjugacy_classes_of_subgroups(&iso.group) {
                let (kg, _) = iso.group.subgroup_as_group(&class.representative);
                let sig = GroupSignature::of(&kg);
                let mut stratum = None;
                for (i, (rep, rep_sig)) in seen.iter().enumerate() {
                    if *rep_sig == sig && find_isomorphism(&kg, rep, limits.order_cap)?.is_some() {
                        stratum = Some(i);
                        break;
                    }
                }
                let stratum = match stratum {
                    Some(i) => i,
                    None => {
                        seen.push((kg, sig));
                        seen.len() - 1
                    }
                };
                for member in &class.members {
                    raw.push((
                        SectorPoint {
                            base: x,
                            group: iso.subgroup_arrows(member),
                        },
                        stratum,
                    ));
                }
            }
        }
        let mut order: Vec<usize> = (0..seen.len()).collect();
        order.sort_by_key(|&i| (seen[i].0.order(), i));
        let mut rank = vec![0; seen.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        raw.sort_by(|(p, s), (q, t)| rank[*s].cmp(&rank[*t]).then_with(|| p.cmp(q)));

        let mut strata: Vec<Stratum> = order
            .iter()
            .map(|&i| Stratum {
                representative: seen[i].0.clone(),
                signature: seen[i].1.clone(),
                points: Vec::new(),
            })
            .collect();
        let mut points = Vec::with_capacity(raw.len());
        let mut stratum_of = Vec::with_capacity(raw.len());
        let mut index = HashMap::with_capacity(raw.len());
        for (i, (p, s)) in raw.into_iter().enumerate() {
            strata[rank[s]].points.push(i);
            stratum_of.push(rank[s]);
            index.insert(p.clone(), i);
            points.push(p);
        }
        let labels = points.iter().map(|p| p.label(g)).collect();
        let anchor = points.iter().map(|p| p.base).collect();
        let action = GroupoidAction::build(
            g,
            anchor,
            |h, i| {
                let mut conj: Vec<usize> = points[i].group.iter().map(|&k| g.conjugate(h, k)).collect();
                conj.sort_unstable();
                index[&SectorPoint {
                    base: g.target(h),
                    group: conj,
                }]
            },
            Some(labels),
        );
        Ok(SectorSpace {
            points,
            stratum_of,
            strata,
            index,
            action,
        })
    }

    pub fn points(&self) -> &[SectorPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum_of(&self, i: usize) -> usize {
        self.stratum_of[i]
    }

    pub fn index_of(&self, p: &SectorPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn action(&self) -> &GroupoidAction {
        &self.action
    }

    /// Index of the trivial sector point over `x`.
    pub fn trivial_point(&self, g: &FiniteGroupoid, x: usize) -> usize {
        self.index[&SectorPoint {
            base: x,
            group: vec![g.unit(x)],
        }]
    }
}

/// The sector groupoid `G ⋉ S(G)` together with its projection to `G`, the
/// trivial-sector embedding, the kernel of arrows `(l, (x, L))` with `l ∈ L`,
/// and the reduced sectors (the quotient by that kernel).
#[derive(Clone, Debug)]
pub struct SectorGroupoid {
    pub space: SectorSpace,
    pub groupoid: FiniteGroupoid,
    pub projection: GroupoidHom,
    pub trivial_embedding: GroupoidHom,
    pub kernel: Vec<usize>,
    pub reduced: Quotient,
    translation: ActionGroupoid,
}

impl SectorGroupoid {
    pub fn new(g: &FiniteGroupoid, limits: &Limits) -> Result<Self> {
        let space = SectorSpace::new(g, limits)?;
        let translation = ActionGroupoid::new(g, space.action());
        let groupoid = translation.groupoid.clone();
        let projection = translation.projection(space.action());
        let trivial: Vec<usize> = g.objects().map(|x| space.trivial_point(g, x)).collect();
        let trivial_embedding = GroupoidHom::new(
            trivial.clone(),
            g.arrows().map(|a| translation.arrow(a, trivial[g.source(a)])).collect(),
        );
        let kernel = kernel_k(&translation, &space);
        let reduced = groupoid.quotient_by_normal_wide_subgroupoid(&kernel)?;
        Ok(SectorGroupoid {
            space,
            groupoid,
            projection,
            trivial_embedding,
            kernel,
            reduced,
            translation,
        })
    }

    /// Arrow of the sector groupoid given by arrow `a` of `G` acting on point `p`.
    pub fn arrow(&self, a: usize, p: usize) -> usize {
        self.translation.arrow(a, p)
    }

    /// `(arrow of G, sector point)` behind an arrow of the sector groupoid.
    pub fn arrow_parts(&self, a: usize) -> (usize, usize) {
        self.translation.pairs[a]
    }

    /// Connected components of the sector groupoid, i.e. the local
    /// conjugacy classes of sector points.
    pub fn local_components(&self) -> Components {
        self.groupoid.components()
    }
}

fn kernel_k(t: &ActionGroupoid, space: &SectorSpace) -> Vec<usize> {
    t.pairs
        .iter()
        .enumerate()
        .filter(|(_, &(l, p))| space.points[p].group.binary_search(&l).is_ok())
        .map(|(i, _)| i)
        .collect()
}

/// Sector groupoid of `g`.
pub fn sector_groupoid(g: &FiniteGroupoid, limits: &Limits) -> Result<SectorGroupoid> {
    SectorGroupoid::new(g, limits)
}

/// Reduced sectors of `g`.
pub fn reduced_sectors(g: &FiniteGroupoid, limits: &Limits) -> Result<FiniteGroupoid> {
    Ok(SectorGroupoid::new(g, limits)?.reduced.groupoid)
}

/// Homomorphisms induced by a faithful `φ: G -> H` on sector groupoids and
/// on reduced sectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorHom {
    pub tilde: GroupoidHom,
    pub bar: GroupoidHom,
}

/// `(x, K) ↦ (φx, φ(K))` on points, `(a, p) ↦ (φa, φ̃p)` on arrows, and the
/// descent to the quotients by the kernels.
pub fn induced_sector_hom(
    phi: &GroupoidHom,
    g: &FiniteGroupoid,
    gs: &SectorGroupoid,
    h: &FiniteGroupoid,
    hs: &SectorGroupoid,
) -> Result<SectorHom> {
    phi.validate(g, h)?;
    phi.check_faithful(g)?;
    let object_map: Vec<usize> = gs
        .space
        .points()
        .iter()
        .map(|p| {
            let mut image: Vec<usize> = p.group.iter().map(|&a| phi.arrow_map[a]).collect();
            image.sort_unstable();
            let q = SectorPoint {
                base: phi.object_map[p.base],
                group: image,
            };
            hs.space
                .index_of(&q)
                .ok_or_else(|| Error::Invalid(format!("image of sector point {} is not a sector point", p.label(g))))
        })
        .collect::<Result<_>>()?;
    let arrow_map: Vec<usize> = gs
        .groupoid
        .arrows()
        .map(|a| {
            let (b, p) = gs.arrow_parts(a);
            hs.arrow(phi.arrow_map[b], object_map[p])
        })
        .collect();
    let tilde = GroupoidHom::new(object_map, arrow_map);

    let gq = &gs.reduced.projection.arrow_map;
    let hq = &hs.reduced.projection.arrow_map;
    let mut bar_arrows = vec![usize::MAX; gs.reduced.groupoid.num_arrows()];
    for a in gs.groupoid.arrows() {
        let img = hq[tilde.arrow_map[a]];
        let slot = &mut bar_arrows[gq[a]];
        if *slot == usize::MAX {
            *slot = img;
        } else if *slot != img {
            return Err(Error::axiom("kernel preserved", format!("sector arrow {a}")));
        }
    }
    let bar = GroupoidHom::new(tilde.object_map.clone(), bar_arrows);
    Ok(SectorHom { tilde, bar })
}

/// For a weak equivalence `φ: G -> H`, checks that `S(G) ≅ φ*S(H)` as
/// `G`-spaces: the map `(x, K) ↦ (φ̃(x, K), x)` and its inverse
/// `((φx, L), x) ↦ (x, φ_x^-1(L))` are mutually inverse, anchor-preserving
/// and equivariant.
pub fn check_naturality(
    phi: &GroupoidHom,
    g: &FiniteGroupoid,
    gs: &SectorGroupoid,
    h: &FiniteGroupoid,
    hs: &SectorGroupoid,
) -> Result<bool> {
    if !phi.is_weak_equivalence(g, h)? {
        let why = phi.weak_equivalence_defect(g, h).unwrap_or_default();
        return Err(Error::NotWeakEquivalence(why));
    }
    let sector_hom = induced_sector_hom(phi, g, gs, h, hs)?;
    let (pullback, pairs) = hs.space.action().pullback(phi, g);
    let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let forward: Vec<usize> = gs
        .space
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| pair_index[&(sector_hom.tilde.object_map[i], p.base)])
        .collect();

    // φ restricted to each isotropy group is a bijection onto the image's
    let mut preimage: Vec<HashMap<usize, usize>> = vec![HashMap::new(); g.num_objects()];
    for x in g.objects() {
        for a in g.hom(x, x) {
            preimage[x].insert(phi.arrow_map[a], a);
        }
    }
    let mut backward = Vec::with_capacity(pairs.len());
    for &(e, x) in &pairs {
        let l = &hs.space.points()[e];
        let group: Option<Vec<usize>> = l.group.iter().map(|a| preimage[x].get(a).copied()).collect();
        let Some(mut group) = group else {
            return Ok(false);
        };
        group.sort_unstable();
        match gs.space.index_of(&SectorPoint { base: x, group }) {
            Some(i) => backward.push(i),
            None => return Ok(false),
        }
    }

    let inverse_pair =
        (0..forward.len()).all(|i| backward[forward[i]] == i) && (0..backward.len()).all(|j| forward[backward[j]] == j);
    if !inverse_pair {
        return Ok(false);
    }
    let anchors = (0..forward.len()).all(|i| pullback.anchor(forward[i]) == gs.space.points()[i].base);
    if !anchors {
        return Ok(false);
    }
    let action = gs.space.action();
    for a in g.arrows() {
        for &p in action.fiber(g.source(a)) {
            if forward[action.act(a, p)] != pullback.act(a, forward[p]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A point of the orbit space of the sector groupoid: a component of `G`
/// (named by its least object `x`) and a conjugacy class of subgroups of
/// `G_x` (named by its least member, as loop arrows at `x`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KawasakiPoint {
    pub object: usize,
    pub class: Vec<usize>,
    /// Least sector point in the corresponding component of the sector groupoid.
    pub sector_point: usize,
}

/// Orbit set of the conjugation action, labelled `(x̄, (H)_{G_x})`.
pub fn kawasaki_quotient(g: &FiniteGroupoid, gs: &SectorGroupoid) -> Result<Vec<KawasakiPoint>> {
    let g_comp = g.components();
    let s_comp = gs.local_components();
    let mut out = Vec::with_capacity(s_comp.len());
    let mut iso_cache: HashMap<usize, Isotropy> = HashMap::new();
    for class in &s_comp.classes {
        let p = class[0];
        let pt = &gs.space.points()[p];
        let x0 = g_comp.classes[g_comp.of[pt.base]][0];
        let to_x0 = g.hom(pt.base, x0)[0];
        let transported: Vec<usize> = pt.group.iter().map(|&k| g.conjugate(to_x0, k)).collect();
        if let std::collections::hash_map::Entry::Vacant(e) = iso_cache.entry(x0) {
            e.insert(g.isotropy(x0)?);
        }
        let iso = &iso_cache[&x0];
        let sub = iso
            .subgroup_of_arrows(&{
                let mut t = transported;
                t.sort_unstable();
                t
            })
            .ok_or_else(|| Error::Invalid("transported subgroup is not a subgroup".into()))?;
        let least = iso
            .group
            .elements()
            .map(|c| sub.conjugate(&iso.group, c))
            .min()
            .unwrap_or_else(|| Subgroup::trivial(&iso.group));
        out.push(KawasakiPoint {
            object: x0,
            class: iso.subgroup_arrows(&least),
            sector_point: p,
        });
    }
    out.sort_by(|a, b| (a.object, a.class.len(), &a.class).cmp(&(b.object, b.class.len(), &b.class)));
    Ok(out)
}
