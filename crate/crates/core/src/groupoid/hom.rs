use std::collections::HashMap;

use super::FiniteGroupoid;
use crate::error::{Error, Result};

/// A homomorphism of finite groupoids, as object and arrow maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidHom {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl GroupoidHom {
    pub fn new(object_map: Vec<usize>, arrow_map: Vec<usize>) -> Self {
        GroupoidHom { object_map, arrow_map }
    }

    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidHom::new(g.objects().collect(), g.arrows().collect())
    }

    /// Checks that the maps preserve source, target, units and composition.
    pub fn validate(&self, from: &FiniteGroupoid, to: &FiniteGroupoid) -> Result<()> {
        if self.object_map.len() != from.num_objects() || self.arrow_map.len() != from.num_arrows() {
            return Err(Error::axiom(
                "homomorphism",
                "map sizes do not match the source groupoid",
            ));
        }
        if let Some(x) = self.object_map.iter().position(|&y| y >= to.num_objects()) {
            return Err(Error::axiom("homomorphism", format!("object {x} maps out of range")));
        }
        if let Some(a) = self.arrow_map.iter().position(|&b| b >= to.num_arrows()) {
            return Err(Error::axiom("homomorphism", format!("arrow {a} maps out of range")));
        }
        for a in from.arrows() {
            let b = self.arrow_map[a];
            if to.source(b) != self.object_map[from.source(a)] || to.target(b) != self.object_map[from.target(a)] {
                return Err(Error::axiom("preserves endpoints", format!("arrow {a}")));
            }
        }
        for x in from.objects() {
            if self.arrow_map[from.unit(x)] != to.unit(self.object_map[x]) {
                return Err(Error::axiom("preserves units", format!("object {x}")));
            }
        }
        for after in from.arrows() {
            for &before in from.incoming(from.source(after)) {
                let lhs = self.arrow_map[from.compose(after, before)];
                let rhs = to.compose(self.arrow_map[after], self.arrow_map[before]);
                if lhs != rhs {
                    return Err(Error::axiom("preserves composition", format!("{after}∘{before}")));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupoidHom) -> GroupoidHom {
        GroupoidHom::new(
            self.object_map.iter().map(|&x| other.object_map[x]).collect(),
            self.arrow_map.iter().map(|&a| other.arrow_map[a]).collect(),
        )
    }

    /// Injective on every hom-set. On failure returns two arrows with the
    /// same endpoints and the same image.
    pub fn check_faithful(&self, from: &FiniteGroupoid) -> Result<()> {
        let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for a in from.arrows() {
            let key = (from.source(a), from.target(a), self.arrow_map[a]);
            if let Some(&b) = seen.get(&key) {
                return Err(Error::Unfaithful(b, a));
            }
            seen.insert(key, a);
        }
        Ok(())
    }

    pub fn is_faithful(&self, from: &FiniteGroupoid) -> bool {
        self.check_faithful(from).is_ok()
    }

    /// Essentially surjective and fully faithful.
    ///
    /// For discrete groupoids the Cartesian-square condition on arrows reduces
    /// to bijectivity of `Hom(x, y) -> Hom(φx, φy)` for all `x, y`. Pairs in one
    /// component are compared by counting; pairs in different components need
    /// their images in different components.
    pub fn is_weak_equivalence(&self, from: &FiniteGroupoid, to: &FiniteGroupoid) -> Result<bool> {
        self.validate(from, to)?;
        Ok(self.weak_equivalence_defect(from, to).is_none())
    }

    /// Reason the homomorphism fails to be a weak equivalence, if any.
    pub fn weak_equivalence_defect(&self, from: &FiniteGroupoid, to: &FiniteGroupoid) -> Option<String> {
        let to_comp = to.components();
        let mut hit = vec![false; to_comp.len()];
        for &y in &self.object_map {
            hit[to_comp.of[y]] = true;
        }
        if let Some(c) = hit.iter().position(|h| !h) {
            return Some(format!(
                "not essentially surjective: object {} is not reached",
                to_comp.classes[c][0]
            ));
        }
        if let Err(Error::Unfaithful(a, b)) = self.check_faithful(from) {
            return Some(format!("not faithful: arrows {a} and {b}"));
        }
        let mut hom_count: HashMap<(usize, usize), usize> = HashMap::new();
        for a in from.arrows() {
            *hom_count.entry((from.source(a), from.target(a))).or_default() += 1;
        }
        for (&(x, y), &n) in &hom_count {
            let m = to.hom(self.object_map[x], self.object_map[y]).len();
            if m != n {
                return Some(format!("not full: |Hom({x},{y})| = {n} but its image hom-set has {m}"));
            }
        }
        let from_comp = from.components();
        let mut owner = vec![usize::MAX; to_comp.len()];
        for (c, class) in from_comp.classes.iter().enumerate() {
            let d = to_comp.of[self.object_map[class[0]]];
            if owner[d] != usize::MAX {
                return Some(format!(
                    "not full: objects {} and {} are unconnected but their images are connected",
                    from_comp.classes[owner[d]][0], class[0]
                ));
            }
            owner[d] = c;
        }
        None
    }
}
