//! Randomized invariance checks on generated instances.

use orbisect::group::{all_subgroups, are_isomorphic, FiniteGroup};
use orbisect::groupoid::{morita_equivalent, FiniteGroupoid, GSet};
use orbisect::homology::homology;
use orbisect::invariants::{extended_pi, pi_orb, stable_pi_orb_of};
use orbisect::sectors::{check_naturality, SectorGroupoid};
use orbisect::{Limits, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn catalog() -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push((format!("Z{n}"), FiniteGroup::cyclic(n)));
    }
    for n in 2..=4 {
        out.push((format!("D{n}"), FiniteGroup::dihedral(n)));
    }
    out.push(("S3".into(), FiniteGroup::symmetric(3)));
    out.push(("Q8".into(), FiniteGroup::quaternion()));
    out
}

fn random_gset(rng: &mut ChaCha8Rng, g: &FiniteGroup, max_points: usize) -> GSet {
    let subgroups = all_subgroups(g);
    let mut set: Option<GSet> = None;
    let mut room = max_points;
    loop {
        let fits: Vec<_> = subgroups.iter().filter(|h| g.order() / h.order() <= room).collect();
        let Some(h) = fits.choose(rng) else { break };
        let orbit = GSet::cosets(g, h);
        room -= orbit.len();
        set = Some(match set {
            None => orbit,
            Some(s) => s.disjoint_union(&orbit).expect("same group"),
        });
        if rng.gen_bool(0.5) {
            break;
        }
    }
    set.expect("the whole group always fits")
}

/// Names of the checks that failed on one instance.
fn check(
    g: &FiniteGroupoid,
    big: &FiniteGroupoid,
    phi: &orbisect::groupoid::GroupoidHom,
    limits: &Limits,
) -> Result<Vec<&'static str>> {
    let mut failed = Vec::new();
    if !phi.is_weak_equivalence(big, g)? {
        failed.push("weak-equivalence");
    }
    match morita_equivalent(big, g, limits.order_cap)? {
        Some(c) if c.verify(big, g) => {}
        _ => failed.push("morita"),
    }
    let (sg, sbig) = (SectorGroupoid::new(g, limits)?, SectorGroupoid::new(big, limits)?);
    if !check_naturality(phi, big, &sbig, g, &sg)? {
        failed.push("naturality");
    }
    for n in 0..=1 {
        if stable_pi_orb_of(&sg, n)?.total != stable_pi_orb_of(&sbig, n)?.total {
            failed.push("stable");
        }
        if homology(g, n, limits)? != homology(big, n, limits)? {
            failed.push("homology");
        }
    }
    for x in g.objects() {
        let p = sg.space.trivial_point(g, x);
        if !are_isomorphic(&extended_pi(&sg, p, 1)?, &pi_orb(g, x, 1)?, limits.order_cap)? {
            failed.push("untwisted");
        }
    }
    failed.sort_unstable();
    failed.dedup();
    Ok(failed)
}

pub fn run(seed: u64, count: usize, limits: &Limits) -> Result<(Value, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = catalog();
    let mut failures = Vec::new();
    for i in 0..count {
        let (name, group) = pool.choose(&mut rng).expect("nonempty catalog");
        let x = random_gset(&mut rng, group, 8);
        let g = x.translation_groupoid();
        let sizes: Vec<usize> = (0..g.num_objects()).map(|_| rng.gen_range(1..=2)).collect();
        let (big, phi) = g.inflate(&sizes)?;
        let failed = check(&g, &big, &phi, limits)?;
        if !failed.is_empty() {
            failures.push(json!({
                "instance": i,
                "group": name,
                "points": x.len(),
                "failed": failed,
            }));
        }
    }
    let ok = failures.is_empty();
    Ok((
        json!({
            "command": "selfcheck",
            "seed": seed,
            "instances": count,
            "failures": failures,
        }),
        ok,
    ))
}
