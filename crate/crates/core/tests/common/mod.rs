#![allow(dead_code)]

use std::collections::BTreeSet;

use orbisect::group::{FiniteGroup, Subgroup};
use orbisect::groupoid::{FiniteGroupoid, GSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let seed = std::env::var("ORBISECT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5ec7_0125_u64);
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn alternating4() -> FiniteGroup {
    FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], 64).unwrap()
}

/// Groups of order 2 to 24 (at most `max_order`), with names.
pub fn group_pool(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let z = FiniteGroup::cyclic;
    let mut pool: Vec<(String, FiniteGroup)> = Vec::new();
    for n in 2..=24 {
        pool.push((format!("Z{n}"), z(n)));
    }
    for n in 2..=12 {
        pool.push((format!("D{n}"), FiniteGroup::dihedral(n)));
    }
    pool.push(("S3".into(), FiniteGroup::symmetric(3)));
    pool.push(("S4".into(), FiniteGroup::symmetric(4)));
    pool.push(("A4".into(), alternating4()));
    pool.push(("Q8".into(), FiniteGroup::quaternion()));
    pool.push(("Z2xZ2".into(), z(2).direct_product(&z(2))));
    pool.push(("Z2xZ4".into(), z(2).direct_product(&z(4))));
    pool.push(("Z2^3".into(), z(2).direct_product(&z(2)).direct_product(&z(2))));
    pool.push(("Z3xZ3".into(), z(3).direct_product(&z(3))));
    pool.push(("Z2xS3".into(), z(2).direct_product(&FiniteGroup::symmetric(3))));
    pool.push(("Z2xZ6".into(), z(2).direct_product(&z(6))));
    pool.push(("Z2xA4".into(), z(2).direct_product(&alternating4())));
    pool.push(("Z3xS3".into(), z(3).direct_product(&FiniteGroup::symmetric(3))));
    pool.retain(|(_, g)| g.order() <= max_order);
    pool
}

/// Every subset closed under products, by naive closure from cyclic
/// subgroups. Deliberately independent of the library's lattice code.
pub fn oracle_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let close = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut s = set.clone();
        s.insert(g.identity());
        loop {
            let mut add = Vec::new();
            for &a in &s {
                for &b in &s {
                    let c = g.mul(a, b);
                    if !s.contains(&c) {
                        add.push(c);
                    }
                }
            }
            if add.is_empty() {
                return s;
            }
            s.extend(add);
        }
    };
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut frontier: Vec<BTreeSet<usize>> = vec![close(&BTreeSet::new())];
    let cyclic: Vec<BTreeSet<usize>> = g.elements().map(|a| close(&[a].into_iter().collect())).collect();
    while let Some(s) = frontier.pop() {
        if !found.insert(s.clone()) {
            continue;
        }
        for c in &cyclic {
            if !c.is_subset(&s) {
                let joined = close(&s.union(c).copied().collect());
                if !found.contains(&joined) {
                    frontier.push(joined);
                }
            }
        }
    }
    found.into_iter().map(|s| s.into_iter().collect()).collect()
}

pub fn oracle_conjugate(g: &FiniteGroup, h: &[usize], x: usize) -> Vec<usize> {
    let mut c: Vec<usize> = h.iter().map(|&a| g.mul(g.mul(x, a), g.inv(x))).collect();
    c.sort_unstable();
    c
}

/// One representative (least) per conjugacy class, from the oracle list.
pub fn oracle_class_reps(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps = Vec::new();
    for h in oracle_subgroups(g) {
        if seen.contains(&h) {
            continue;
        }
        let class: BTreeSet<Vec<usize>> = g.elements().map(|x| oracle_conjugate(g, &h, x)).collect();
        reps.push(class.iter().next().unwrap().clone());
        seen.extend(class);
    }
    reps
}

pub fn oracle_normalizer(g: &FiniteGroup, h: &[usize]) -> Vec<usize> {
    g.elements().filter(|&x| oracle_conjugate(g, h, x) == h).collect()
}

/// A random `G`-set: a union of coset spaces `G/H` with at most `max_points`
/// points in total.
pub fn random_gset(rng: &mut ChaCha8Rng, g: &FiniteGroup, max_points: usize) -> GSet {
    let subgroups = orbisect::group::all_subgroups(g);
    let mut set: Option<GSet> = None;
    let mut room = max_points;
    loop {
        let fits: Vec<&Subgroup> = subgroups.iter().filter(|h| g.order() / h.order() <= room).collect();
        if fits.is_empty() {
            break;
        }
        let h = *fits.choose(rng).unwrap();
        let orbit = GSet::cosets(g, h);
        room -= orbit.len();
        set = Some(match set {
            None => orbit,
            Some(s) => s.disjoint_union(&orbit).unwrap(),
        });
        if rng.gen_bool(0.45) {
            break;
        }
    }
    set.expect("the whole group always fits")
}

/// A free `G`-set: copies of the regular action, possibly twisted by a
/// diagonal action on `G/H × G`.
pub fn random_free_gset(rng: &mut ChaCha8Rng, g: &FiniteGroup, max_points: usize) -> GSet {
    let n = g.order();
    if rng.gen_bool(0.5) || n * n > max_points {
        let copies = rng.gen_range(1..=(max_points / n).max(1));
        let mut x = GSet::regular(g);
        for _ in 1..copies {
            x = x.disjoint_union(&GSet::regular(g)).unwrap();
        }
        return x;
    }
    let subgroups: Vec<Subgroup> = orbisect::group::all_subgroups(g)
        .into_iter()
        .filter(|h| (n / h.order()) * n <= max_points)
        .collect();
    let h = subgroups.choose(rng).unwrap();
    let cosets = GSet::cosets(g, h);
    let m = cosets.len();
    let act = g
        .elements()
        .map(|a| (0..m * n).map(|p| cosets.act(a, p / n) * n + g.mul(a, p % n)).collect())
        .collect();
    GSet::new(g.clone(), act, None).unwrap()
}

/// A random groupoid: the disjoint union of one to three translation
/// groupoids.
pub fn random_groupoid(rng: &mut ChaCha8Rng, max_order: usize, max_points: usize) -> FiniteGroupoid {
    let pool = group_pool(max_order);
    let parts = rng.gen_range(1..=3);
    let mut out: Option<FiniteGroupoid> = None;
    for _ in 0..parts {
        let (_, g) = pool.choose(rng).unwrap();
        let t = random_gset(rng, g, max_points).translation_groupoid();
        out = Some(match out {
            None => t,
            Some(o) => o.disjoint_union(&t),
        });
    }
    out.unwrap()
}
