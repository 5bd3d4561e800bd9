//! Isomorphism testing by backtracking over generator images.

use std::collections::VecDeque;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Cheap isomorphism invariants used to reject most non-isomorphic pairs
/// before any search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSignature {
    pub order: usize,
    /// Sorted multiset of element orders.
    pub element_orders: Vec<usize>,
    pub commuting_pairs: usize,
}

impl GroupSignature {
    pub fn of(g: &FiniteGroup) -> Self {
        let mut element_orders: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
        element_orders.sort_unstable();
        let commuting_pairs = g
            .elements()
            .map(|a| g.elements().filter(|&b| g.mul(a, b) == g.mul(b, a)).count())
            .sum();
        GroupSignature {
            order: g.order(),
            element_orders,
            commuting_pairs,
        }
    }
}

fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut candidates: Vec<usize> = g.elements().collect();
    candidates.sort_by_key(|&a| (std::cmp::Reverse(g.element_order(a)), a));
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for a in candidates {
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = g.closure(&gens);
            if span.len() == g.order() {
                break;
            }
        }
    }
    gens
}

/// Extends generator images to the subgroup they generate, checking that the
/// assignment is a well-defined injective homomorphism there.
fn extend(h: &FiniteGroup, k: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; h.order()];
    let mut used = vec![false; k.order()];
    map[h.identity()] = k.identity();
    used[k.identity()] = true;
    let mut queue = VecDeque::from([h.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = h.mul(x, s);
            let fy = k.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

fn search(
    h: &FiniteGroup,
    k: &FiniteGroup,
    gens: &[usize],
    gen_orders: &[usize],
    k_orders: &[usize],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    let map = extend(h, k, &gens[..depth], images)?;
    if depth == gens.len() {
        return Some(map);
    }
    let image_set: Vec<bool> = {
        let mut s = vec![false; k.order()];
        for &y in map.iter().filter(|&&y| y != usize::MAX) {
            s[y] = true;
        }
        s
    };
    for c in k.elements() {
        if k_orders[c] != gen_orders[depth] || image_set[c] {
            continue;
        }
        images.push(c);
        if let Some(m) = search(h, k, gens, gen_orders, k_orders, images) {
            return Some(m);
        }
        images.pop();
    }
    None
}

/// An isomorphism `h -> k` as an element map, if one exists.
pub fn find_isomorphism(h: &FiniteGroup, k: &FiniteGroup, order_cap: usize) -> Result<Option<Vec<usize>>> {
    for g in [h, k] {
        if g.order() > order_cap {
            return Err(Error::OrderCapExceeded {
                order: g.order(),
                cap: order_cap,
            });
        }
    }
    if h.order() != k.order() || GroupSignature::of(h) != GroupSignature::of(k) {
        return Ok(None);
    }
    let gens = generating_set(h);
    let gen_orders: Vec<usize> = gens.iter().map(|&a| h.element_order(a)).collect();
    let k_orders: Vec<usize> = k.elements().map(|a| k.element_order(a)).collect();
    let found = search(h, k, &gens, &gen_orders, &k_orders, &mut Vec::new());
    debug_assert!(found.as_ref().is_none_or(|m| m.iter().all(|&y| y != usize::MAX)));
    Ok(found)
}

pub fn are_isomorphic(h: &FiniteGroup, k: &FiniteGroup, order_cap: usize) -> Result<bool> {
    Ok(find_isomorphism(h, k, order_cap)?.is_some())
}
