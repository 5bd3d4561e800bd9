//! Homotopy invariants of finite groupoids and their sectors.
//!
//! The classifying space of a finite groupoid is a disjoint union of
//! aspherical spaces, one `BG_x` per component, so `π_1` at `x` is the
//! isotropy group and all higher homotopy groups vanish. In stable degrees 0
//! and 1 the same splitting gives `Z` and `Z/2 ⊕ G_x^ab` per component.

mod presentations;

pub use presentations::{induce, product_with_free, quotient_by_free_normal};

use crate::error::{Error, Limits, Result};
use crate::group::{abelianization, conjugacy_classes_of_subgroups, normalizer, FGAbelianGroup, FiniteGroup, Subgroup};
use crate::groupoid::{morita_equivalent, FiniteGroupoid, GSet, MoritaCertificate};
use crate::sectors::{SectorGroupoid, SectorPoint};

/// `π_n(BG, x)` for `n >= 1`: the isotropy group at the least object of the
/// component of `x` when `n = 1`, trivial otherwise.
pub fn pi_orb(g: &FiniteGroupoid, x: usize, n: usize) -> Result<FiniteGroup> {
    if x >= g.num_objects() {
        return Err(Error::NoSuchObject(x));
    }
    match n {
        0 => Err(Error::DegreeOutOfRange(0)),
        1 => {
            let comps = g.components();
            let least = comps.classes[comps.of[x]][0];
            Ok(g.isotropy(least)?.group)
        }
        _ => Ok(FiniteGroup::trivial()),
    }
}

/// `π_n` of the sector groupoid at the sector point with index `p`.
pub fn extended_pi(sg: &SectorGroupoid, p: usize, n: usize) -> Result<FiniteGroup> {
    pi_orb(&sg.groupoid, p, n)
}

/// `π_n` of the sector groupoid at `(x, H)`, with `H` given as loop arrows
/// at `x` in any order.
pub fn extended_pi_at(sg: &SectorGroupoid, x: usize, h: &[usize], n: usize) -> Result<FiniteGroup> {
    let mut group = h.to_vec();
    group.sort_unstable();
    group.dedup();
    let p = sg
        .space
        .index_of(&SectorPoint { base: x, group })
        .ok_or_else(|| Error::NotASubgroup(format!("{h:?} is not a subgroup of the isotropy group at {x}")))?;
    extended_pi(sg, p, n)
}

/// One component's share of a stable homotopy group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummand {
    /// Least object of the component.
    pub object: usize,
    pub isotropy_order: usize,
    pub abelianization: FGAbelianGroup,
    pub summand: FGAbelianGroup,
}

/// `ϖ_n(BΓ_+)` for `n ∈ {0, 1}`, component by component in order of least
/// object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableReport {
    pub degree: usize,
    pub components: Vec<ComponentSummand>,
    pub total: FGAbelianGroup,
}

fn check_stable_degree(n: usize) -> Result<()> {
    if n > 1 {
        return Err(Error::DegreeOutOfRange(n));
    }
    Ok(())
}

/// Stable homotopy of the classifying space with a disjoint base point.
pub fn stable_pi_of_classifying_space(g: &FiniteGroupoid, n: usize) -> Result<StableReport> {
    check_stable_degree(n)?;
    let mut components = Vec::new();
    for class in g.components().classes {
        let iso = g.isotropy(class[0])?;
        let ab = abelianization(&iso.group);
        let summand = if n == 0 {
            FGAbelianGroup::free(1)
        } else {
            FGAbelianGroup::cyclic(2).direct_sum(&ab)
        };
        components.push(ComponentSummand {
            object: class[0],
            isotropy_order: iso.group.order(),
            abelianization: ab,
            summand,
        });
    }
    let total = components.iter().map(|c| c.summand.clone()).sum();
    Ok(StableReport {
        degree: n,
        components,
        total,
    })
}

/// Stable orbifold homotopy: stable homotopy of the reduced sectors.
pub fn stable_pi_orb(g: &FiniteGroupoid, n: usize, limits: &Limits) -> Result<StableReport> {
    check_stable_degree(n)?;
    stable_pi_orb_of(&SectorGroupoid::new(g, limits)?, n)
}

pub fn stable_pi_orb_of(sg: &SectorGroupoid, n: usize) -> Result<StableReport> {
    stable_pi_of_classifying_space(&sg.reduced.groupoid, n)
}

/// The same formula applied to the sector groupoid itself (normalizers in
/// place of Weyl groups).
pub fn stable_pi_sector_groupoid(g: &FiniteGroupoid, n: usize, limits: &Limits) -> Result<StableReport> {
    check_stable_degree(n)?;
    stable_pi_of_classifying_space(&SectorGroupoid::new(g, limits)?.groupoid, n)
}

/// The summand of one conjugacy class `(H)`: the Weyl group acting on the
/// fixed points `X^H`.
#[derive(Clone, Debug)]
pub struct StableSummand {
    pub subgroup: Subgroup,
    pub weyl: FiniteGroup,
    /// Fixed points of `H`, as indices into `X`.
    pub fixed_points: Vec<usize>,
    pub groupoid: FiniteGroupoid,
    pub report: StableReport,
}

#[derive(Clone, Debug)]
pub struct StableSummandReport {
    pub degree: usize,
    pub summands: Vec<StableSummand>,
    pub total: FGAbelianGroup,
    /// Number of orbits of `N_G H` on `X^H`, summed over classes `(H)`;
    /// counted directly from the action.
    pub independent_rank: usize,
}

impl StableSummandReport {
    /// The total is the sum of the summands and, in degree 0, has the
    /// independently counted rank.
    pub fn is_consistent(&self) -> bool {
        let sum: FGAbelianGroup = self.summands.iter().map(|s| s.report.total.clone()).sum();
        sum == self.total && (self.degree != 0 || self.total == FGAbelianGroup::free(self.independent_rank))
    }
}

fn orbit_count(x: &GSet, group: &Subgroup, points: &[usize]) -> usize {
    let mut seen = vec![false; x.len()];
    let mut count = 0;
    for &p in points {
        if seen[p] {
            continue;
        }
        count += 1;
        for &g in group.elements() {
            seen[x.act(g, p)] = true;
        }
    }
    count
}

/// Splits equivariant stable homotopy of `X` over conjugacy classes of
/// subgroups.
pub fn equivariant_stable_pi(x: &GSet, n: usize) -> Result<StableSummandReport> {
    check_stable_degree(n)?;
    let g = x.group();
    let mut summands = Vec::new();
    let mut independent_rank = 0;
    for class in conjugacy_classes_of_subgroups(g) {
        let h = class.representative;
        let fixed = x.fixed_points(&h);
        independent_rank += orbit_count(x, &normalizer(g, &h)?, &fixed);
        let (weyl, wset, fixed_points) = x.weyl_fixed_set(&h)?;
        let groupoid = wset.translation_groupoid();
        let report = stable_pi_of_classifying_space(&groupoid, n)?;
        summands.push(StableSummand {
            subgroup: h,
            weyl,
            fixed_points,
            groupoid,
            report,
        });
    }
    let total = summands.iter().map(|s| s.report.total.clone()).sum();
    Ok(StableSummandReport {
        degree: n,
        summands,
        total,
        independent_rank,
    })
}

/// Stable groups of one degree computed three ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub first: FGAbelianGroup,
    pub second: FGAbelianGroup,
    pub orbifold: FGAbelianGroup,
}

impl DegreeComparison {
    pub fn agrees(&self) -> bool {
        self.first == self.second && self.second == self.orbifold
    }
}

#[derive(Clone, Debug)]
pub struct PresentationReport {
    /// `None` when the two translation groupoids are not Morita equivalent.
    pub certificate: Option<MoritaCertificate>,
    pub degrees: Vec<DegreeComparison>,
}

impl PresentationReport {
    pub fn is_morita_equivalent(&self) -> bool {
        self.certificate.is_some()
    }

    /// Equivalent, and all three groups agree in every compared degree.
    pub fn holds(&self) -> bool {
        self.is_morita_equivalent() && self.degrees.iter().all(DegreeComparison::agrees)
    }
}

/// For two presentations `G_1 ⋉ X_1` and `G_2 ⋉ X_2`: decides Morita
/// equivalence and, when equivalent, compares the equivariant stable groups
/// of both presentations with the stable orbifold groups, in degrees 0 and 1.
pub fn verify_presentation_independence(x1: &GSet, x2: &GSet, limits: &Limits) -> Result<PresentationReport> {
    let g1 = x1.translation_groupoid();
    let g2 = x2.translation_groupoid();
    let certificate = morita_equivalent(&g1, &g2, limits.order_cap)?;
    let mut degrees = Vec::new();
    if certificate.is_some() {
        let sg = SectorGroupoid::new(&g1, limits)?;
        for n in 0..=1 {
            degrees.push(DegreeComparison {
                degree: n,
                first: equivariant_stable_pi(x1, n)?.total,
                second: equivariant_stable_pi(x2, n)?.total,
                orbifold: stable_pi_orb_of(&sg, n)?.total,
            });
        }
    }
    Ok(PresentationReport { certificate, degrees })
}
