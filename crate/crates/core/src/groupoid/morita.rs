//! Morita equivalence of finite groupoids, decided on skeleta.

use super::FiniteGroupoid;
use crate::error::Result;
use crate::group::{find_isomorphism, FiniteGroup, GroupSignature};

/// One matched pair of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMatch {
    /// Least object of the component on the left.
    pub left: usize,
    /// Least object of the matched component on the right.
    pub right: usize,
    /// Isomorphism of isotropy groups, as a map from left loop arrows
    /// (`left_arrows[i]`) to right loop arrows (`right_arrows[i]`).
    pub left_arrows: Vec<usize>,
    pub right_arrows: Vec<usize>,
}

/// A bijection of components with isomorphisms between matched isotropy
/// groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaCertificate {
    pub matches: Vec<ComponentMatch>,
}

impl MoritaCertificate {
    /// Re-checks the certificate: every component used exactly once and
    /// every arrow map a group isomorphism.
    pub fn verify(&self, g: &FiniteGroupoid, h: &FiniteGroupoid) -> bool {
        let (cg, ch) = (g.components(), h.components());
        if self.matches.len() != cg.len() || cg.len() != ch.len() {
            return false;
        }
        let mut used_left = vec![false; cg.len()];
        let mut used_right = vec![false; ch.len()];
        for m in &self.matches {
            let (l, r) = (cg.of[m.left], ch.of[m.right]);
            if std::mem::replace(&mut used_left[l], true) || std::mem::replace(&mut used_right[r], true) {
                return false;
            }
            let (mut la, mut ra) = (g.hom(m.left, m.left), h.hom(m.right, m.right));
            if la.len() != m.left_arrows.len() || ra.len() != m.right_arrows.len() {
                return false;
            }
            la.sort_unstable();
            ra.sort_unstable();
            let mut l_sorted = m.left_arrows.clone();
            let mut r_sorted = m.right_arrows.clone();
            l_sorted.sort_unstable();
            r_sorted.sort_unstable();
            if la != l_sorted || ra != r_sorted {
                return false;
            }
            let image = |a: usize| m.right_arrows[m.left_arrows.iter().position(|&b| b == a).unwrap()];
            for &a in &m.left_arrows {
                for &b in &m.left_arrows {
                    if image(g.compose(a, b)) != h.compose(image(a), image(b)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

type Summary = (usize, FiniteGroup, Vec<usize>, GroupSignature);

/// Decides Morita equivalence: the skeleta must be isomorphic, i.e. there is
/// a bijection of components matching isomorphic isotropy groups. Every
/// finite groupoid is weakly equivalent to its skeleton, so this is
/// complete. Returns a certificate when equivalent.
pub fn morita_equivalent(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    order_cap: usize,
) -> Result<Option<MoritaCertificate>> {
    let (cg, ch) = (g.components(), h.components());
    if cg.len() != ch.len() {
        return Ok(None);
    }
    let summarize = |gr: &FiniteGroupoid, reps: Vec<usize>| -> Result<Vec<Summary>> {
        reps.into_iter()
            .map(|x| {
                let iso = gr.isotropy(x)?;
                let sig = GroupSignature::of(&iso.group);
                Ok((x, iso.group, iso.arrows, sig))
            })
            .collect()
    };
    let left = summarize(g, cg.representatives())?;
    let right = summarize(h, ch.representatives())?;
    let mut taken = vec![false; right.len()];
    let mut matches = Vec::with_capacity(left.len());
    // isomorphism is an equivalence relation, so greedy matching is exact
    for (x, gx, gx_arrows, sig) in &left {
        let mut found = None;
        for (j, (y, hy, hy_arrows, sig_y)) in right.iter().enumerate() {
            if taken[j] || sig != sig_y {
                continue;
            }
            if let Some(map) = find_isomorphism(gx, hy, order_cap)? {
                found = Some((
                    j,
                    ComponentMatch {
                        left: *x,
                        right: *y,
                        left_arrows: gx_arrows.clone(),
                        right_arrows: map.iter().map(|&k| hy_arrows[k]).collect(),
                    },
                ));
                break;
            }
        }
        match found {
            Some((j, m)) => {
                taken[j] = true;
                matches.push(m);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(MoritaCertificate { matches }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::GSet;

    #[test]
    fn free_transitive_action_is_a_point() {
        let s3 = FiniteGroup::symmetric(3);
        let reg = GSet::regular(&s3).translation_groupoid();
        let pt = FiniteGroupoid::unit_groupoid_n(1);
        let cert = morita_equivalent(&reg, &pt, 64).unwrap().expect("equivalent");
        assert!(cert.verify(&reg, &pt));
    }

    #[test]
    fn swap_vs_point() {
        let z2 = FiniteGroup::cyclic(2);
        let swap = GSet::regular(&z2).translation_groupoid();
        let pt = FiniteGroupoid::unit_groupoid_n(1);
        assert!(morita_equivalent(&swap, &pt, 64).unwrap().is_some());
    }

    #[test]
    fn z4_vs_klein() {
        let z2 = FiniteGroup::cyclic(2);
        let a = FiniteGroupoid::from_group(&FiniteGroup::cyclic(4));
        let b = FiniteGroupoid::from_group(&z2.direct_product(&z2));
        assert!(morita_equivalent(&a, &b, 64).unwrap().is_none());
    }

    #[test]
    fn component_counts_must_agree() {
        let a = FiniteGroupoid::unit_groupoid_n(2);
        let b = FiniteGroupoid::unit_groupoid_n(3);
        assert!(morita_equivalent(&a, &b, 64).unwrap().is_none());
    }

    #[test]
    fn certificate_rejects_tampering() {
        let s3 = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
        let d3 = FiniteGroupoid::from_group(&FiniteGroup::dihedral(3));
        let mut cert = morita_equivalent(&s3, &d3, 64).unwrap().unwrap();
        assert!(cert.verify(&s3, &d3));
        let original = cert.clone();
        cert.matches[0].right_arrows[1] = cert.matches[0].right_arrows[0];
        assert!(!cert.verify(&s3, &d3));
        // a bijection that is not a homomorphism: swap an involution with an order-3 element
        let mut cert = original;
        let g = FiniteGroup::symmetric(3);
        let loops = &cert.matches[0].left_arrows;
        let i2 = loops.iter().position(|&a| g.element_order(a) == 2).unwrap();
        let i3 = loops.iter().position(|&a| g.element_order(a) == 3).unwrap();
        cert.matches[0].right_arrows.swap(i2, i3);
        assert!(!cert.verify(&s3, &d3));
    }
}
