//! Rewrites of a global quotient presentation `G ⋉ X` that leave the
//! groupoid unchanged up to Morita equivalence.

use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, Subgroup};
use crate::groupoid::GSet;

/// `(G × F) ⋉ (X × F)`, with `F` acting on its own factor by left
/// multiplication. Point `(x, y)` has index `x·|F| + y`.
pub fn product_with_free(x: &GSet, f: &FiniteGroup) -> Result<GSet> {
    let g = x.group();
    let big = g.direct_product(f);
    let (n, m) = (x.len(), f.order());
    let act = big
        .elements()
        .map(|e| {
            let (a, b) = (e / m, e % m);
            (0..n * m).map(|p| x.act(a, p / m) * m + f.mul(b, p % m)).collect()
        })
        .collect();
    let labels = (0..n * m)
        .map(|p| format!("({},{})", x.labels()[p / m], f.label(p % m)))
        .collect();
    GSet::new(big, act, Some(labels))
}

/// `G' ×_H X` for `H ≤ G'` and an `H`-set `X` given over
/// `G'.subgroup_as_group(H)`. Points are `(t, x)` for the least element `t`
/// of each left coset `tH`, with index `coset·|X| + x`.
pub fn induce(big: &FiniteGroup, h: &Subgroup, x: &GSet) -> Result<GSet> {
    let (hg, embed) = big.subgroup_as_group(h);
    if x.group().rows() != hg.rows() {
        return Err(Error::Invalid("the set is not acted on by the given subgroup".into()));
    }
    let mut local = vec![usize::MAX; big.order()];
    for (i, &e) in embed.iter().enumerate() {
        local[e] = i;
    }
    let mut coset_of = vec![usize::MAX; big.order()];
    let mut reps = Vec::new();
    for t in big.elements() {
        if coset_of[t] == usize::MAX {
            for &k in h.elements() {
                coset_of[big.mul(t, k)] = reps.len();
            }
            reps.push(t);
        }
    }
    let n = x.len();
    let act = big
        .elements()
        .map(|g| {
            (0..reps.len() * n)
                .map(|p| {
                    let gt = big.mul(g, reps[p / n]);
                    let j = coset_of[gt];
                    let k = local[big.mul(big.inv(reps[j]), gt)];
                    j * n + x.act(k, p % n)
                })
                .collect()
        })
        .collect();
    let labels = (0..reps.len() * n)
        .map(|p| format!("{}.{}", big.label(reps[p / n]), x.labels()[p % n]))
        .collect();
    GSet::new(big.clone(), act, Some(labels))
}

/// `(G/N) ⋉ (X/N)` for a normal subgroup `N` acting freely on `X`. Points are
/// the `N`-orbits, ordered by least member.
pub fn quotient_by_free_normal(x: &GSet, n: &Subgroup) -> Result<GSet> {
    let g = x.group();
    if !n.is_normal(g) {
        return Err(Error::NotASubgroup("the subgroup is not normal".into()));
    }
    for p in 0..x.len() {
        if let Some(&k) = n.elements().iter().find(|&&k| k != g.identity() && x.act(k, p) == p) {
            return Err(Error::axiom("acts freely", format!("element {k} fixes point {p}")));
        }
    }
    let (q, coset_of) = quotient(g, n)?;
    let mut orbit_of = vec![usize::MAX; x.len()];
    let mut reps = Vec::new();
    for p in 0..x.len() {
        if orbit_of[p] == usize::MAX {
            for &k in n.elements() {
                orbit_of[x.act(k, p)] = reps.len();
            }
            reps.push(p);
        }
    }
    let mut act = vec![Vec::new(); q.order()];
    for e in g.elements() {
        let c = coset_of[e];
        if act[c].is_empty() {
            act[c] = reps.iter().map(|&p| orbit_of[x.act(e, p)]).collect();
        }
    }
    let labels = reps.iter().map(|&p| format!("[{}]", x.labels()[p])).collect();
    GSet::new(q, act, Some(labels))
}
