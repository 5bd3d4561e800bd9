//! Acceptance checks. Runs without the test harness so every criterion
//! prints one line whether it passes or not.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use orbisect::group::{are_isomorphic, FGAbelianGroup, FiniteGroup, Subgroup};
use orbisect::groupoid::{FiniteGroupoid, GSet, GroupoidHom};
use orbisect::homology::homology;
use orbisect::invariants::{
    equivariant_stable_pi, extended_pi, induce, pi_orb, product_with_free, quotient_by_free_normal, stable_pi_orb_of,
    verify_presentation_independence,
};
use orbisect::sectors::{check_naturality, induced_sector_hom, p_h, p_h_count, SectorGroupoid};
use orbisect::Limits;
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

struct Instance {
    name: String,
    x: GSet,
    groupoid: FiniteGroupoid,
    sectors: SectorGroupoid,
}

fn translation_instances(count: usize) -> Vec<Instance> {
    let mut rng = common::rng(1);
    let pool = common::group_pool(24);
    let limits = Limits::default();
    (0..count)
        .map(|i| {
            // cover every group before sampling at random
            let (name, g) = if i < pool.len() {
                &pool[i]
            } else {
                pool.choose(&mut rng).unwrap()
            };
            let x = common::random_gset(&mut rng, g, 12);
            let groupoid = x.translation_groupoid();
            let sectors = SectorGroupoid::new(&groupoid, &limits).unwrap();
            Instance {
                name: format!("{name} on {} points", x.len()),
                x,
                groupoid,
                sectors,
            }
        })
        .collect()
}

/// Sector space of `G ⋉ X` against `⊔_{H ≤ G} X^H` built from stabilizers.
fn criterion_1(instances: &[Instance]) -> Outcome {
    for inst in instances {
        let x = &inst.x;
        let g = x.group();
        let n = x.len();
        let stabilizers: Vec<BTreeSet<usize>> = (0..n)
            .map(|p| g.elements().filter(|&a| x.act(a, p) == p).collect())
            .collect();
        let mut oracle: BTreeSet<(Vec<usize>, usize)> = BTreeSet::new();
        for h in common::oracle_subgroups(g) {
            for (p, stab) in stabilizers.iter().enumerate() {
                if h.iter().all(|a| stab.contains(a)) {
                    oracle.insert((h.clone(), p));
                }
            }
        }
        let space = &inst.sectors.space;
        let image = |i: usize| -> (Vec<usize>, usize) {
            let pt = &space.points()[i];
            let mut h: Vec<usize> = pt.group.iter().map(|&a| a / n).collect();
            h.sort_unstable();
            (h, pt.base)
        };
        let mapped: BTreeSet<(Vec<usize>, usize)> = (0..space.len()).map(image).collect();
        ensure(mapped.len() == space.len(), || {
            format!("{}: map is not injective", inst.name)
        })?;
        ensure(mapped == oracle, || {
            format!(
                "{}: {} sector points vs {} fixed pairs",
                inst.name,
                space.len(),
                oracle.len()
            )
        })?;
        let action = space.action();
        for i in 0..space.len() {
            let (h, p) = image(i);
            ensure(action.anchor(i) == p, || format!("{}: anchor mismatch", inst.name))?;
            for a in g.elements() {
                let moved = image(action.act(a * n + p, i));
                ensure(moved == (common::oracle_conjugate(g, &h, a), x.act(a, p)), || {
                    format!("{}: not equivariant at point {i}, element {a}", inst.name)
                })?;
            }
        }
    }
    Ok(format!("{} translation groupoids", instances.len()))
}

/// `|P^H| = |H|!·|S^H|` on every stratum.
fn criterion_2(instances: &[Instance]) -> Outcome {
    let limits = Limits::default();
    let (mut strata, mut enumerated) = (0, 0);
    for inst in instances {
        let space = &inst.sectors.space;
        for (si, stratum) in space.strata().iter().enumerate() {
            strata += 1;
            let k = stratum.order();
            let expected = factorial(k) * stratum.points.len() as u128;
            if expected <= 200_000 {
                enumerated += 1;
                let tuples = p_h(&inst.groupoid, &stratum.representative, &limits).map_err(|e| e.to_string())?;
                ensure(tuples.len() as u128 == expected, || {
                    format!(
                        "{}: stratum {si} has {} tuples, expected {expected}",
                        inst.name,
                        tuples.len()
                    )
                })?;
                let distinct: BTreeSet<&Vec<usize>> = tuples.iter().map(|t| &t.0).collect();
                ensure(distinct.len() == tuples.len(), || {
                    format!("{}: repeated tuple", inst.name)
                })?;
                for t in &tuples {
                    let mut set = t.0.clone();
                    set.sort_unstable();
                    set.dedup();
                    let base = inst.groupoid.source(set[0]);
                    let idx = space.index_of(&orbisect::sectors::SectorPoint {
                        base,
                        group: set.clone(),
                    });
                    ensure(set.len() == k && idx.is_some_and(|i| space.stratum_of(i) == si), || {
                        format!("{}: tuple {:?} is not an ordering of a stratum point", inst.name, t.0)
                    })?;
                }
            } else {
                let count = p_h_count(&inst.groupoid, &stratum.representative, &limits).map_err(|e| e.to_string())?;
                ensure(count == Some(expected), || {
                    format!("{}: stratum {si} counted {count:?}, expected {expected}", inst.name)
                })?;
            }
        }
    }
    Ok(format!("{strata} strata, {enumerated} enumerated explicitly"))
}

struct InflatedPair {
    small: FiniteGroupoid,
    small_sectors: SectorGroupoid,
    big: FiniteGroupoid,
    big_sectors: SectorGroupoid,
}

/// Inflation `G'` of `G` with its projection: sector maps are weak
/// equivalences, naturality holds, stable and extended groups agree.
fn criterion_3(pairs: &mut Vec<InflatedPair>) -> Outcome {
    let limits = Limits::default();
    let mut rng = common::rng(3);
    for i in 0..50 {
        let small = common::random_groupoid(&mut rng, 12, 6);
        let sizes: Vec<usize> = small.objects().map(|_| rng.gen_range(1..=3)).collect();
        let (big, phi): (FiniteGroupoid, GroupoidHom) = small.inflate(&sizes).map_err(|e| e.to_string())?;
        let ss = SectorGroupoid::new(&small, &limits).map_err(|e| e.to_string())?;
        let bs = SectorGroupoid::new(&big, &limits).map_err(|e| e.to_string())?;
        let hom = induced_sector_hom(&phi, &big, &bs, &small, &ss).map_err(|e| e.to_string())?;
        let we = |h: &GroupoidHom, a: &FiniteGroupoid, b: &FiniteGroupoid| h.is_weak_equivalence(a, b).unwrap_or(false);
        ensure(we(&hom.tilde, &bs.groupoid, &ss.groupoid), || {
            format!("pair {i}: sector map is not a weak equivalence")
        })?;
        ensure(we(&hom.bar, &bs.reduced.groupoid, &ss.reduced.groupoid), || {
            format!("pair {i}: reduced sector map is not a weak equivalence")
        })?;
        ensure(check_naturality(&phi, &big, &bs, &small, &ss) == Ok(true), || {
            format!("pair {i}: naturality fails")
        })?;
        for n in 0..=1 {
            let (a, b) = (stable_pi_orb_of(&bs, n), stable_pi_orb_of(&ss, n));
            ensure(a.is_ok() && a.map(|r| r.total).ok() == b.map(|r| r.total).ok(), || {
                format!("pair {i}: stable groups differ in degree {n}")
            })?;
        }
        for p in 0..bs.space.len() {
            let q = hom.tilde.object_map[p];
            for n in 1..=2 {
                let (a, b) = (extended_pi(&bs, p, n).unwrap(), extended_pi(&ss, q, n).unwrap());
                ensure(are_isomorphic(&a, &b, limits.order_cap).unwrap_or(false), || {
                    format!("pair {i}: extended groups differ at sector point {p}, degree {n}")
                })?;
            }
        }
        pairs.push(InflatedPair {
            small,
            small_sectors: ss,
            big,
            big_sectors: bs,
        });
    }
    Ok(format!("{} inflated pairs", pairs.len()))
}

/// Periodic resolution of `Z/m` tensored with the trivial module: `Z` in each
/// degree, `∂_n = m` for even `n >= 2`, zero otherwise.
fn periodic_oracle(m: u64, n: usize) -> FGAbelianGroup {
    let boundary = |k: usize| if k >= 2 && k.is_multiple_of(2) { m } else { 0 };
    if n > 0 && boundary(n) != 0 {
        return FGAbelianGroup::trivial();
    }
    match boundary(n + 1) {
        0 => FGAbelianGroup::free(1),
        k => FGAbelianGroup::cyclic(k),
    }
}

fn criterion_4() -> Outcome {
    let limits = Limits::default();
    for m in [2u64, 3, 4] {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(m as usize));
        for n in 0..=3 {
            let h = homology(&g, n, &limits).map_err(|e| e.to_string())?;
            ensure(h == periodic_oracle(m, n), || {
                format!("H_{n}(BZ/{m}) = {h}, expected {}", periodic_oracle(m, n))
            })?;
        }
    }
    Ok("m in {2,3,4}, degrees 0..3".into())
}

fn criterion_5() -> Outcome {
    let z = FiniteGroup::cyclic;
    let groups = [
        ("Z2", z(2)),
        ("Z4", z(4)),
        ("Z2xZ2", z(2).direct_product(&z(2))),
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
    ];
    let mut sets = 0;
    for (name, g) in &groups {
        let reps = common::oracle_class_reps(g);
        for h in &reps {
            let x = GSet::cosets(g, &Subgroup::new(g, h.iter().copied()).unwrap());
            sets += 1;
            let report = equivariant_stable_pi(&x, 0).map_err(|e| e.to_string())?;
            let mut count = 0;
            for k in &reps {
                let fixed: Vec<usize> = (0..x.len()).filter(|&p| k.iter().all(|&a| x.act(a, p) == p)).collect();
                let normalizer = common::oracle_normalizer(g, k);
                let mut seen = BTreeSet::new();
                for &p in &fixed {
                    if seen.insert(p) {
                        count += 1;
                        seen.extend(normalizer.iter().map(|&a| x.act(a, p)));
                    }
                }
            }
            ensure(report.total == FGAbelianGroup::free(count), || {
                format!("{name}/{h:?}: assembled {} but counted rank {count}", report.total)
            })?;
        }
    }
    Ok(format!("{sets} transitive sets over 5 groups"))
}

fn diagonal_induction(x: &GSet) -> GSet {
    let g = x.group();
    let n = g.order();
    let big = g.direct_product(g);
    let diag = Subgroup::new(&big, g.elements().map(|a| a * n + a)).unwrap();
    let (hg, embed) = big.subgroup_as_group(&diag);
    let restricted = x.restrict(&hg, &embed.iter().map(|&e| e / n).collect::<Vec<_>>());
    induce(&big, &diag, &restricted).unwrap()
}

fn free_quotient(x: &GSet, f: &FiniteGroup) -> GSet {
    let p = product_with_free(x, f).unwrap();
    let m = f.order();
    let e = x.group().identity();
    let n = Subgroup::new(p.group(), (0..m).map(|b| e * m + b)).unwrap();
    quotient_by_free_normal(&p, &n).unwrap()
}

fn criterion_6() -> Outcome {
    let limits = Limits::default();
    let mut rng = common::rng(6);
    let pool = common::group_pool(8);
    let frees = [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::symmetric(3),
    ];
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    for i in 0..24 {
        let (name, g) = pool.choose(&mut rng).unwrap();
        let x = common::random_gset(&mut rng, g, 6);
        let f = frees.choose(&mut rng).unwrap();
        let (kind, a, b) = match i % 4 {
            0 => ("product", x.clone(), product_with_free(&x, f).unwrap()),
            1 => ("induction", x.clone(), diagonal_induction(&x)),
            2 => ("free quotient", x.clone(), free_quotient(&x, f)),
            _ => (
                "product vs induction",
                product_with_free(&x, f).unwrap(),
                diagonal_induction(&x),
            ),
        };
        *kinds.entry(kind).or_default() += 1;
        let report = verify_presentation_independence(&a, &b, &limits).map_err(|e| e.to_string())?;
        ensure(report.holds(), || {
            format!("{kind} rewrite of {name} on {} points: {:?}", x.len(), report.degrees)
        })?;
    }
    Ok(format!("24 pairs {kinds:?}"))
}

fn criterion_7(instances: &[Instance], pairs: &[InflatedPair]) -> Outcome {
    let mut checked = 0;
    let all = instances.iter().map(|i| (&i.groupoid, &i.sectors)).chain(
        pairs
            .iter()
            .flat_map(|p| [(&p.small, &p.small_sectors), (&p.big, &p.big_sectors)]),
    );
    for (g, sg) in all {
        for x in g.objects() {
            let p = sg.space.trivial_point(g, x);
            for n in 1..=2 {
                let (a, b) = (extended_pi(sg, p, n).unwrap(), pi_orb(g, x, n).unwrap());
                ensure(are_isomorphic(&a, &b, 64).unwrap_or(false), || {
                    format!("object {x}, degree {n}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (object, degree) checks"))
}

fn criterion_8() -> Outcome {
    let limits = Limits::default();
    let mut rng = common::rng(8);
    let pool = common::group_pool(8);
    for i in 0..20 {
        let (name, g) = &pool[i % pool.len()];
        let x = common::random_free_gset(&mut rng, g, 16);
        ensure(x.is_free(), || format!("{name}: generated set is not free"))?;
        let t = x.translation_groupoid();
        let orbits = FiniteGroupoid::unit_groupoid_n(x.orbits().len());
        for n in 0..=2 {
            let a = homology(&t, n, &limits).map_err(|e| e.to_string())?;
            let b = homology(&orbits, n, &limits).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{name} on {} points: H_{n} = {a} vs {b}", x.len()))?;
        }
    }
    Ok("20 free actions, degrees 0..2".into())
}

fn report(index: usize, title: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        (o, _) => o,
    };
    let (verdict, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {index} ({title}): {verdict} [{detail}; {elapsed:.2?}]");
    outcome.is_ok()
}

fn main() {
    let mut ok = true;
    let mut instances = Vec::new();
    let mut pairs = Vec::new();
    ok &= report(1, "sector identity", Some(Duration::from_secs(30)), || {
        instances = translation_instances(60);
        criterion_1(&instances)
    });
    ok &= report(2, "factorial stratum count", None, || criterion_2(&instances));
    ok &= report(3, "Morita invariance", Some(Duration::from_secs(60)), || {
        criterion_3(&mut pairs)
    });
    ok &= report(4, "homology engine", Some(Duration::from_secs(120)), criterion_4);
    ok &= report(5, "tom Dieck degree 0", None, criterion_5);
    ok &= report(6, "presentation independence", None, criterion_6);
    ok &= report(7, "untwisted identification", None, || criterion_7(&instances, &pairs));
    ok &= report(8, "free actions and orbit sets", None, criterion_8);
    if !ok {
        std::process::exit(1);
    }
}
