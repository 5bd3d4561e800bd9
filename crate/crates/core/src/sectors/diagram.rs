//! The diagram over the orbit category at one object.
//!
//! Objects are conjugacy classes `(H)` of subgroups of `G_x`, and there is a
//! morphism `(H) -> (K)` whenever `H` is subconjugate to `K`. Each morphism
//! carries a chosen conjugator `c` with `c H c^-1 ⊆ K` and a local
//! homomorphism from the loops at `(x, K)` that also normalize `c H c^-1`
//! into the loops at `(x, c H c^-1)`.

use super::{SectorGroupoid, SectorPoint};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes_of_subgroups, is_subconjugate, Subgroup};
use crate::groupoid::{FiniteGroupoid, Isotropy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramObject {
    /// Least member of the class, as loop arrows at the base object.
    pub representative: Vec<usize>,
    /// Sector point `(x, representative)`.
    pub point: usize,
    /// Component of the sector groupoid containing that point.
    pub component: usize,
}

impl DiagramObject {
    pub fn order(&self) -> usize {
        self.representative.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramMorphism {
    pub from: usize,
    pub to: usize,
    /// Loop `c` at the base object with `c H c^-1 ⊆ K`.
    pub conjugator: usize,
    /// Sector point `(x, c H c^-1)`.
    pub image_point: usize,
    /// Loops of the sector groupoid at the point of `to` in the domain of the
    /// local homomorphism.
    pub domain: Vec<usize>,
    /// Images of `domain`, loops at `image_point`.
    pub image: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct OrbitDiagram {
    pub base: usize,
    pub objects: Vec<DiagramObject>,
    pub morphisms: Vec<DiagramMorphism>,
    iso: Isotropy,
}

fn arrows_of(iso: &Isotropy, h: &Subgroup) -> Vec<usize> {
    iso.subgroup_arrows(h)
}

impl OrbitDiagram {
    /// The morphism between two classes, if any.
    pub fn morphism(&self, from: usize, to: usize) -> Option<&DiagramMorphism> {
        self.morphisms.iter().find(|m| m.from == from && m.to == to)
    }

    fn subgroup(&self, arrows: &[usize]) -> Subgroup {
        self.iso.subgroup_of_arrows(arrows).expect("loops form a subgroup")
    }

    fn build_morphism(&self, sg: &SectorGroupoid, from: usize, to: usize, c: usize) -> Result<DiagramMorphism> {
        let gx = &self.iso.group;
        let h = self.subgroup(&self.objects[from].representative);
        let k = self.subgroup(&self.objects[to].representative);
        let c_elem = self
            .iso
            .element_of(c)
            .ok_or(Error::Invalid("conjugator is not a loop".into()))?;
        let a = h.conjugate(gx, c_elem);
        if !a.is_subset_of(&k) {
            return Err(Error::axiom("subconjugate", format!("conjugator {c}")));
        }
        let image_point = sg
            .space
            .index_of(&SectorPoint {
                base: self.base,
                group: arrows_of(&self.iso, &a),
            })
            .ok_or(Error::Invalid("image subgroup has no sector point".into()))?;
        let from_point = self.objects[to].point;
        let mut domain = Vec::new();
        let mut image = Vec::new();
        for n in gx.elements() {
            if k.conjugate(gx, n) == k && a.conjugate(gx, n) == a {
                let arrow = self.iso.arrows[n];
                domain.push(sg.arrow(arrow, from_point));
                image.push(sg.arrow(arrow, image_point));
            }
        }
        Ok(DiagramMorphism {
            from,
            to,
            conjugator: c,
            image_point,
            domain,
            image,
        })
    }

    /// `second ∘ first` with conjugator `c2 c1`.
    pub fn compose(
        &self,
        sg: &SectorGroupoid,
        g: &FiniteGroupoid,
        first: &DiagramMorphism,
        second: &DiagramMorphism,
    ) -> Result<DiagramMorphism> {
        if first.to != second.from {
            return Err(Error::Invalid("morphisms are not composable".into()));
        }
        self.build_morphism(
            sg,
            first.from,
            second.to,
            g.compose(second.conjugator, first.conjugator),
        )
    }

    /// Two morphisms with the same endpoints agree up to conjugation by a loop
    /// `d` that carries one image subgroup to the other and intertwines the
    /// local homomorphisms on their common domain.
    pub fn equivalent(&self, sg: &SectorGroupoid, m1: &DiagramMorphism, m2: &DiagramMorphism) -> bool {
        if (m1.from, m1.to) != (m2.from, m2.to) {
            return false;
        }
        let gx = &self.iso.group;
        let a1 = self.subgroup(&sg.space.points()[m1.image_point].group);
        let a2 = self.subgroup(&sg.space.points()[m2.image_point].group);
        gx.elements().any(|d| {
            if a1.conjugate(gx, d) != a2 {
                return false;
            }
            let d_arrow = self.iso.arrows[d];
            let shift = sg.arrow(d_arrow, m1.image_point);
            m1.domain
                .iter()
                .zip(&m1.image)
                .all(|(&src, &img)| match m2.domain.iter().position(|&s| s == src) {
                    Some(j) => sg.groupoid.conjugate(shift, img) == m2.image[j],
                    None => true,
                })
        })
    }

    /// Checks that every local map is a faithful homomorphism landing in the
    /// loops at its image point.
    pub fn check(&self, sg: &SectorGroupoid) -> Result<()> {
        let s = &sg.groupoid;
        for m in &self.morphisms {
            for (&a, &fa) in m.domain.iter().zip(&m.image) {
                if s.source(fa) != m.image_point || s.target(fa) != m.image_point {
                    return Err(Error::axiom("lands in image point", format!("arrow {a}")));
                }
                for (&b, &fb) in m.domain.iter().zip(&m.image) {
                    let ab = s.compose(a, b);
                    let j = m
                        .domain
                        .iter()
                        .position(|&d| d == ab)
                        .ok_or_else(|| Error::axiom("domain closed", format!("{a}∘{b}")))?;
                    if m.image[j] != s.compose(fa, fb) {
                        return Err(Error::axiom("preserves composition", format!("{a}∘{b}")));
                    }
                }
            }
            let mut sorted = m.image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m.image.len() {
                return Err(Error::axiom("faithful", format!("morphism {} -> {}", m.from, m.to)));
            }
        }
        Ok(())
    }
}

/// Builds the diagram at object `x` of `g`.
pub fn orbit_category_diagram(g: &FiniteGroupoid, sg: &SectorGroupoid, x: usize) -> Result<OrbitDiagram> {
    if x >= g.num_objects() {
        return Err(Error::NoSuchObject(x));
    }
    let iso = g.isotropy(x)?;
    let comps = sg.local_components();
    let classes = conjugacy_classes_of_subgroups(&iso.group);
    let objects: Vec<DiagramObject> = classes
        .iter()
        .map(|cl| {
            let least = cl.members.iter().min().unwrap_or(&cl.representative);
            let representative = arrows_of(&iso, least);
            let point = sg
                .space
                .index_of(&SectorPoint {
                    base: x,
                    group: representative.clone(),
                })
                .expect("every subgroup is a sector point");
            DiagramObject {
                representative,
                point,
                component: comps.of[point],
            }
        })
        .collect();
    let mut diagram = OrbitDiagram {
        base: x,
        objects,
        morphisms: Vec::new(),
        iso,
    };
    let n = diagram.objects.len();
    for i in 0..n {
        for j in 0..n {
            let h = diagram.subgroup(&diagram.objects[i].representative);
            let k = diagram.subgroup(&diagram.objects[j].representative);
            if let Some(c) = is_subconjugate(&diagram.iso.group, &h, &k) {
                let m = diagram.build_morphism(sg, i, j, diagram.iso.arrows[c])?;
                diagram.morphisms.push(m);
            }
        }
    }
    Ok(diagram)
}
