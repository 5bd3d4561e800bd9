//! Runs tasks and renders their results as JSON values.

use orbisect::group::{abelianization, FGAbelianGroup, FiniteGroup, Subgroup};
use orbisect::groupoid::{morita_equivalent, FiniteGroupoid};
use orbisect::homology::homology;
use orbisect::invariants::{
    equivariant_stable_pi, extended_pi, pi_orb, stable_pi_of_classifying_space, stable_pi_sector_groupoid,
    verify_presentation_independence, StableReport,
};
use orbisect::sectors::{kawasaki_quotient, orbit_category_diagram, SectorGroupoid};
use orbisect::{Error, Limits};
use serde_json::{json, Value};

use crate::input::{arrow_by_name, object_by_name, InputError, Resolved, Task};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure {
            code: if e.is_cap() { EXIT_CAP } else { EXIT_INPUT },
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OrderCapExceeded { .. } | Error::SizeBudgetExceeded { .. } => EXIT_CAP,
            Error::DegreeOutOfRange(_) | Error::NoSuchObject(_) | Error::NotASubgroup(_) | Error::Invalid(_) => {
                EXIT_INPUT
            }
            Error::AxiomViolation { .. } | Error::Unfaithful(..) | Error::NotWeakEquivalence(_) => EXIT_VERIFY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// A report and whether every check it carries held.
pub struct Outcome {
    pub value: Value,
    pub verified: bool,
}

fn ok(value: Value) -> Result<Outcome, Failure> {
    Ok(Outcome { value, verified: true })
}

fn abelian(a: &FGAbelianGroup) -> Value {
    json!({
        "display": a.to_string(),
        "free_rank": a.free_rank(),
        "torsion": a.torsion(),
    })
}

fn group_summary(g: &FiniteGroup) -> Value {
    let mut orders: Vec<usize> = g.elements().map(|e| g.element_order(e)).collect();
    orders.sort_unstable();
    json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "abelianization": abelian(&abelianization(g)),
        "element_orders": orders,
    })
}

fn arrow_labels(g: &FiniteGroupoid, arrows: &[usize]) -> Vec<String> {
    arrows.iter().map(|&a| g.arrow_label(a).to_string()).collect()
}

fn stable_value(report: &StableReport, objects: &FiniteGroupoid) -> Value {
    json!({
        "degree": report.degree,
        "total": abelian(&report.total),
        "components": report.components.iter().map(|c| json!({
            "object": objects.object_label(c.object),
            "isotropy_order": c.isotropy_order,
            "abelianization": abelian(&c.abelianization),
            "summand": abelian(&c.summand),
        })).collect::<Vec<_>>(),
    })
}

fn base_object(g: &FiniteGroupoid, base: &str) -> Result<usize, Failure> {
    object_by_name(g, base).ok_or_else(|| Failure {
        code: EXIT_INPUT,
        message: format!("unknown object '{base}'"),
    })
}

pub fn run(task: &Task, r: &Resolved, limits: &Limits) -> Result<Outcome, Failure> {
    match task {
        Task::Sectors { groupoid } => {
            let g = r.groupoid(groupoid, "groupoid")?;
            let sg = SectorGroupoid::new(g, limits)?;
            let space = &sg.space;
            let strata: Vec<Value> = space
                .strata()
                .iter()
                .map(|s| {
                    json!({
                        "order": s.order(),
                        "type": group_summary(&s.representative),
                        "size": s.points.len(),
                        "points": s.points.iter().map(|&p| space.points()[p].label(g)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let kawasaki: Vec<Value> = kawasaki_quotient(g, &sg)?
                .iter()
                .map(|k| {
                    json!({
                        "object": g.object_label(k.object),
                        "class": arrow_labels(g, &k.class),
                        "order": k.class.len(),
                    })
                })
                .collect();
            ok(json!({
                "command": "sectors",
                "groupoid": groupoid,
                "points": space.len(),
                "strata": strata,
                "local_components": sg.local_components().len(),
                "kawasaki": kawasaki,
            }))
        }
        Task::Reduced { groupoid } => {
            let g = r.groupoid(groupoid, "groupoid")?;
            let sg = SectorGroupoid::new(g, limits)?;
            let reduced = &sg.reduced.groupoid;
            let components: Vec<Value> = reduced
                .components()
                .classes
                .iter()
                .map(|class| {
                    let p = class[0];
                    let iso = reduced.isotropy(p)?;
                    Ok(json!({
                        "point": sg.space.points()[p].label(g),
                        "stratum_order": sg.space.points()[p].order(),
                        "size": class.len(),
                        "isotropy": group_summary(&iso.group),
                    }))
                })
                .collect::<Result<_, Error>>()?;
            ok(json!({
                "command": "reduced",
                "groupoid": groupoid,
                "objects": reduced.num_objects(),
                "arrows": reduced.num_arrows(),
                "components": components,
            }))
        }
        Task::Morita { left, right } => {
            let a = r.groupoid(left, "left")?;
            let b = r.groupoid(right, "right")?;
            let cert = morita_equivalent(a, b, limits.order_cap)?;
            let verified = cert.as_ref().is_none_or(|c| c.verify(a, b));
            let certificate = cert.map(|c| {
                c.matches
                    .iter()
                    .map(|m| {
                        json!({
                            "left": a.object_label(m.left),
                            "right": b.object_label(m.right),
                            "isotropy_map": m.left_arrows.iter().zip(&m.right_arrows)
                                .map(|(&x, &y)| json!([a.arrow_label(x), b.arrow_label(y)]))
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>()
            });
            Ok(Outcome {
                value: json!({
                    "command": "morita",
                    "left": left,
                    "right": right,
                    "equivalent": certificate.is_some(),
                    "certificate": certificate,
                    "certificate_verified": verified,
                }),
                verified,
            })
        }
        Task::Homology { groupoid, degree } => {
            let g = r.groupoid(groupoid, "groupoid")?;
            let h = homology(g, *degree, limits)?;
            ok(json!({
                "command": "homology",
                "groupoid": groupoid,
                "degree": degree,
                "group": abelian(&h),
            }))
        }
        Task::Pi { groupoid, base, n } => {
            let g = r.groupoid(groupoid, "groupoid")?;
            let x = base_object(g, base)?;
            let p = pi_orb(g, x, *n)?;
            ok(json!({
                "command": "pi",
                "groupoid": groupoid,
                "base": g.object_label(x),
                "n": n,
                "group": group_summary(&p),
            }))
        }
        Task::ExtendedPi {
            groupoid,
            base,
            group,
            n,
        } => {
            let g = r.groupoid(groupoid, "groupoid")?;
            let x = base_object(g, base)?;
            let iso = g.isotropy(x)?;
            let mut gens = Vec::new();
            for name in group {
                let a = arrow_by_name(g, name)
                    .and_then(|a| iso.element_of(a))
                    .ok_or_else(|| Failure {
                        code: EXIT_INPUT,
                        message: format!("'{name}' is not a loop at '{base}'"),
                    })?;
                gens.push(a);
            }
            let h = Subgroup::generated(&iso.group, &gens);
            let arrows = iso.subgroup_arrows(&h);
            let sg = SectorGroupoid::new(g, limits)?;
            let p = sg
                .space
                .index_of(&orbisect::sectors::SectorPoint {
                    base: x,
                    group: arrows.clone(),
                })
                .ok_or_else(|| Failure {
                    code: EXIT_VERIFY,
                    message: "generated subgroup has no sector point".into(),
                })?;
            let e = extended_pi(&sg, p, *n)?;
            ok(json!({
                "command": "extended-pi",
                "groupoid": groupoid,
                "base": sg.space.points()[p].label(g),
                "subgroup": arrow_labels(g, &arrows),
                "n": n,
                "group": group_summary(&e),
            }))
        }
        Task::Stable { groupoid, n } => {
            let g = r.groupoid(groupoid, "groupoid")?;
            let sg = SectorGroupoid::new(g, limits)?;
            let reduced = stable_pi_of_classifying_space(&sg.reduced.groupoid, *n)?;
            let normalizer_variant = stable_pi_sector_groupoid(g, *n, limits)?;
            ok(json!({
                "command": "stable",
                "groupoid": groupoid,
                "n": n,
                "reduced": stable_value(&reduced, &sg.reduced.groupoid),
                "sector_groupoid_variant": abelian(&normalizer_variant.total),
            }))
        }
        Task::Tomdieck { group, action, n } => {
            let x = r.tom_dieck_action(group.as_deref(), action, "tomdieck")?;
            let report = equivariant_stable_pi(x, *n)?;
            let g = x.group();
            let summands: Vec<Value> = report
                .summands
                .iter()
                .map(|s| {
                    json!({
                        "subgroup": s.subgroup.elements().iter().map(|&e| g.label(e)).collect::<Vec<_>>(),
                        "order": s.subgroup.order(),
                        "weyl_order": s.weyl.order(),
                        "fixed_points": s.fixed_points.len(),
                        "components": s.report.components.len(),
                        "total": abelian(&s.report.total),
                    })
                })
                .collect();
            let verified = report.is_consistent();
            Ok(Outcome {
                value: json!({
                    "command": "tomdieck",
                    "action": action,
                    "n": n,
                    "summands": summands,
                    "total": abelian(&report.total),
                    "independent_rank": report.independent_rank,
                    "consistent": verified,
                }),
                verified,
            })
        }
        Task::VerifyInvariance { left, right } => {
            let a = r.action(left, "left")?;
            let b = r.action(right, "right")?;
            let report = verify_presentation_independence(a, b, limits)?;
            let degrees: Vec<Value> = report
                .degrees
                .iter()
                .map(|d| {
                    json!({
                        "degree": d.degree,
                        "left": abelian(&d.first),
                        "right": abelian(&d.second),
                        "orbifold": abelian(&d.orbifold),
                        "agree": d.agrees(),
                    })
                })
                .collect();
            let verified = !report.is_morita_equivalent() || report.holds();
            Ok(Outcome {
                value: json!({
                    "command": "verify-invariance",
                    "left": left,
                    "right": right,
                    "morita_equivalent": report.is_morita_equivalent(),
                    "degrees": degrees,
                    "holds": report.holds(),
                }),
                verified,
            })
        }
        Task::OrbitDiagram { groupoid, base } => {
            let g = r.groupoid(groupoid, "groupoid")?;
            let x = base_object(g, base)?;
            let sg = SectorGroupoid::new(g, limits)?;
            let d = orbit_category_diagram(g, &sg, x)?;
            let verified = d.check(&sg).is_ok();
            let objects: Vec<Value> = d
                .objects
                .iter()
                .map(|o| {
                    json!({
                        "class": arrow_labels(g, &o.representative),
                        "order": o.order(),
                        "component": o.component,
                    })
                })
                .collect();
            let morphisms: Vec<Value> = d
                .morphisms
                .iter()
                .map(|m| {
                    json!({
                        "from": m.from,
                        "to": m.to,
                        "conjugator": g.arrow_label(m.conjugator),
                        "image": sg.space.points()[m.image_point].label(g),
                        "local_group_order": m.domain.len(),
                    })
                })
                .collect();
            Ok(Outcome {
                value: json!({
                    "command": "orbit-diagram",
                    "groupoid": groupoid,
                    "base": g.object_label(x),
                    "objects": objects,
                    "morphisms": morphisms,
                    "verified": verified,
                }),
                verified,
            })
        }
    }
}
