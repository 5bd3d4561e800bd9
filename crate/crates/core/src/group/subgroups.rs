//! Subgroup lattice, conjugacy, normalizers, quotients.

use std::collections::{HashMap, HashSet};

use super::{FGAbelianGroup, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Every subgroup of `g`, sorted by order and then by element list.
///
/// Each subgroup is a join of cyclic subgroups, so the lattice is grown by
/// joining already-found subgroups with cyclic ones until nothing new appears.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    // one generator per cyclic subgroup
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for a in g.elements() {
        let c = g.closure(&[a]);
        if seen_cyclic.insert(c.clone()) {
            cyclic.push((a, c));
        }
    }

    let mut found: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut list: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (elements, generators)
    for (a, c) in &cyclic {
        let gens = if *a == g.identity() { vec![] } else { vec![*a] };
        found.insert(c.clone(), list.len());
        list.push((c.clone(), gens));
    }
    let mut i = 0;
    while i < list.len() {
        let (elems, gens) = list[i].clone();
        for (a, c) in &cyclic {
            if elems.binary_search(a).is_ok() || c.len() == 1 {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(*a);
            let joined = g.closure(&new_gens);
            if !found.contains_key(&joined) {
                found.insert(joined.clone(), list.len());
                list.push((joined, new_gens));
            }
        }
        i += 1;
    }
    let mut subgroups: Vec<Subgroup> = list
        .into_iter()
        .map(|(e, _)| Subgroup::from_sorted_unchecked(e))
        .collect();
    subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    subgroups
}

/// A conjugacy class of subgroups with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Lexicographically least member.
    pub representative: Subgroup,
    /// All members, sorted.
    pub members: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition of [`all_subgroups`] into conjugacy classes, ordered by the
/// representatives' (order, element list).
pub fn conjugacy_classes_of_subgroups(g: &FiniteGroup) -> Vec<SubgroupClass> {
    let subgroups = all_subgroups(g);
    let mut assigned: HashSet<Subgroup> = HashSet::new();
    let mut classes = Vec::new();
    for h in &subgroups {
        if assigned.contains(h) {
            continue;
        }
        let mut members: Vec<Subgroup> = g
            .elements()
            .map(|x| h.conjugate(g, x))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        members.sort();
        for m in &members {
            assigned.insert(m.clone());
        }
        classes.push(SubgroupClass {
            representative: members[0].clone(),
            members,
        });
    }
    classes
}

fn ensure_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    Subgroup::new(g, h.elements().iter().copied()).map(|_| ())
}

/// Largest subgroup of `g` normalizing `h`.
pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    ensure_subgroup(g, h)?;
    let elems: Vec<usize> = g
        .elements()
        .filter(|&x| h.elements().iter().all(|&a| h.contains(g.conj(x, a))))
        .collect();
    Ok(Subgroup::from_sorted_unchecked(elems))
}

/// Quotient `g / n` by a normal subgroup, with the projection
/// (element index -> coset index). Cosets are numbered by their least
/// element and labelled by their element labels.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    ensure_subgroup(g, n)?;
    if !n.is_normal(g) {
        return Err(Error::NotASubgroup("quotient by a non-normal subgroup".into()));
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    let mut labels = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        let mut members: Vec<usize> = n.elements().iter().map(|&k| g.mul(x, k)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = id;
        }
        labels.push(format!(
            "{{{}}}",
            members.iter().map(|&m| g.label(m)).collect::<Vec<_>>().join(",")
        ));
        reps.push(x);
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[g.mul(a, b)]);
        }
    }
    let identity = coset_of[g.identity()];
    Ok((FiniteGroup::from_raw(q, table, identity, Some(labels)), coset_of))
}

/// Weyl group `N_G(H) / H`, labelled by cosets.
pub fn weyl(g: &FiniteGroup, h: &Subgroup) -> Result<FiniteGroup> {
    let n = normalizer(g, h)?;
    let (ngroup, embedding) = g.subgroup_as_group(&n);
    let h_in_n: Vec<usize> = embedding
        .iter()
        .enumerate()
        .filter(|(_, &x)| h.contains(x))
        .map(|(i, _)| i)
        .collect();
    let (w, _) = quotient(&ngroup, &Subgroup::from_sorted_unchecked(h_in_n))?;
    Ok(w)
}

/// Subgroup generated by all commutators `a b a^-1 b^-1`.
pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let comms: Vec<usize> = g
        .elements()
        .flat_map(|a| g.elements().map(move |b| (a, b)))
        .map(|(a, b)| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    Subgroup::generated(g, &comms)
}

/// `G / [G, G]` in invariant-factor form.
pub fn abelianization(g: &FiniteGroup) -> FGAbelianGroup {
    let c = commutator_subgroup(g);
    let (ab, _) = quotient(g, &c).expect("commutator subgroup is normal");
    FGAbelianGroup::from_finite_abelian(&ab)
}

/// Whether some conjugate of `h` lies in `k`; returns a conjugating element
/// `x` with `x h x^-1 <= k`.
pub fn is_subconjugate(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Option<usize> {
    if !k.order().is_multiple_of(h.order()) {
        return None;
    }
    g.elements()
        .find(|&x| h.elements().iter().all(|&a| k.contains(g.conj(x, a))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::are_isomorphic;

    /// Independent oracle: closure of every subset of the elements.
    fn brute_force_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        assert!(n <= 16);
        let mut out: HashSet<Vec<usize>> = HashSet::new();
        for mask in 0u32..(1 << n) {
            let elems: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let closed = elems.contains(&g.identity())
                && elems
                    .iter()
                    .all(|&a| elems.iter().all(|&b| elems.contains(&g.mul(a, b))));
            if closed {
                out.insert(elems);
            }
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    fn elems(v: &[Subgroup]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.elements().to_vec()).collect()
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        let z2 = FiniteGroup::cyclic(2);
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(4),
            FiniteGroup::symmetric(3),
            z2.direct_product(&z2),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion(),
            FiniteGroup::cyclic(12),
        ] {
            assert_eq!(elems(&all_subgroups(&g)), brute_force_subgroups(&g));
        }
        assert_eq!(all_subgroups(&FiniteGroup::trivial()).len(), 1);
        assert_eq!(
            elems(&all_subgroups(&FiniteGroup::cyclic(4))),
            vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]
        );
        let s3 = all_subgroups(&FiniteGroup::symmetric(3));
        let orders: Vec<usize> = s3.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn larger_lattices() {
        // known counts: S4 has 30 subgroups, (Z/2)^4 has 67
        assert_eq!(all_subgroups(&FiniteGroup::symmetric(4)).len(), 30);
        let z2 = FiniteGroup::cyclic(2);
        let v = z2.direct_product(&z2);
        assert_eq!(all_subgroups(&v.direct_product(&v)).len(), 67);
    }

    #[test]
    fn conjugacy_class_counts() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(conjugacy_classes_of_subgroups(&FiniteGroup::cyclic(4)).len(), 3);
        assert_eq!(conjugacy_classes_of_subgroups(&FiniteGroup::symmetric(3)).len(), 4);
        assert_eq!(conjugacy_classes_of_subgroups(&z2.direct_product(&z2)).len(), 5);
        assert_eq!(conjugacy_classes_of_subgroups(&FiniteGroup::dihedral(4)).len(), 8);
        assert_eq!(conjugacy_classes_of_subgroups(&FiniteGroup::symmetric(4)).len(), 11);
    }

    #[test]
    fn class_representatives_are_least() {
        for c in conjugacy_classes_of_subgroups(&FiniteGroup::symmetric(4)) {
            assert!(c.members.iter().all(|m| c.representative <= *m));
            assert!(c.members.contains(&c.representative));
        }
    }

    #[test]
    fn normalizers_and_weyl_groups() {
        let s3 = FiniteGroup::symmetric(3);
        let whole = Subgroup::whole(&s3);
        assert_eq!(normalizer(&s3, &whole).unwrap(), whole);
        assert_eq!(weyl(&s3, &whole).unwrap().order(), 1);

        let t = s3.elements().find(|&a| s3.element_order(a) == 2).unwrap();
        let h = Subgroup::generated(&s3, &[t]);
        assert_eq!(normalizer(&s3, &h).unwrap(), h);
        assert_eq!(weyl(&s3, &h).unwrap().order(), 1);

        let r = s3.elements().find(|&a| s3.element_order(a) == 3).unwrap();
        let a3 = Subgroup::generated(&s3, &[r]);
        assert_eq!(normalizer(&s3, &a3).unwrap(), whole);
        let w = weyl(&s3, &a3).unwrap();
        assert!(are_isomorphic(&w, &FiniteGroup::cyclic(2), 64).unwrap());
    }

    #[test]
    fn normalizer_rejects_non_subgroup() {
        let s3 = FiniteGroup::symmetric(3);
        let bogus = Subgroup::from_sorted_unchecked(vec![0, 1, 2]);
        assert!(matches!(normalizer(&s3, &bogus), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn abelianizations() {
        assert_eq!(abelianization(&FiniteGroup::cyclic(6)), FGAbelianGroup::new(0, [6]));
        assert_eq!(abelianization(&FiniteGroup::symmetric(3)), FGAbelianGroup::new(0, [2]));
        assert_eq!(
            abelianization(&FiniteGroup::quaternion()),
            FGAbelianGroup::new(0, [2, 2])
        );
        assert_eq!(abelianization(&FiniteGroup::symmetric(4)), FGAbelianGroup::new(0, [2]));
        assert_eq!(
            abelianization(&FiniteGroup::dihedral(4)),
            FGAbelianGroup::new(0, [2, 2])
        );
        assert_eq!(commutator_subgroup(&FiniteGroup::symmetric(3)).order(), 3);
    }

    #[test]
    fn subconjugacy() {
        let s3 = FiniteGroup::symmetric(3);
        let classes = conjugacy_classes_of_subgroups(&s3);
        let c2 = &classes[1].representative;
        let c3 = &classes[2].representative;
        assert_eq!(c2.order(), 2);
        assert_eq!(c3.order(), 3);
        assert!(is_subconjugate(&s3, c2, &Subgroup::whole(&s3)).is_some());
        assert!(is_subconjugate(&s3, c3, c2).is_none());
        assert!(is_subconjugate(&s3, c2, c3).is_none());
    }
}
