use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::set::MultiFuzzySet;
use crate::universe::{Shape, Universe};

/// A total function between two finite universes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointMap {
    domain: Arc<Universe>,
    codomain: Arc<Universe>,
    assignment: Vec<usize>,
}

impl PointMap {
    /// Builds a map from `(from, to)` label pairs; every domain point must be
    /// assigned exactly once.
    pub fn new<'a, I>(domain: Arc<Universe>, codomain: Arc<Universe>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut assignment = vec![usize::MAX; domain.len()];
        for (from, to) in pairs {
            let x = domain.point(from)?;
            let y = codomain.point(to)?;
            if assignment[x] != usize::MAX {
                return Err(Error::DuplicatePoint(from.to_string()));
            }
            assignment[x] = y;
        }
        if let Some(x) = assignment.iter().position(|&y| y == usize::MAX) {
            return Err(Error::IncompleteMap(domain.label(x).to_string()));
        }
        Ok(PointMap {
            domain,
            codomain,
            assignment,
        })
    }

    /// Builds a map from codomain indices listed in domain order.
    pub fn from_indices(
        domain: Arc<Universe>,
        codomain: Arc<Universe>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != domain.len() {
            let missing = assignment.len().min(domain.len().saturating_sub(1));
            return Err(Error::IncompleteMap(domain.label(missing).to_string()));
        }
        if let Some(&y) = assignment.iter().find(|&&y| y >= codomain.len()) {
            return Err(Error::UnknownPoint(format!("#{y}")));
        }
        Ok(PointMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(universe: Arc<Universe>) -> Self {
        let assignment = (0..universe.len()).collect();
        PointMap {
            domain: universe.clone(),
            codomain: universe,
            assignment,
        }
    }

    /// `x -> target` for every `x`.
    pub fn constant(domain: Arc<Universe>, codomain: Arc<Universe>, target: &str) -> Result<Self> {
        let y = codomain.point(target)?;
        let assignment = vec![y; domain.len()];
        Ok(PointMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn domain(&self) -> &Arc<Universe> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Universe> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, point: usize) -> usize {
        self.assignment[point]
    }

    pub fn apply_label(&self, label: &str) -> Result<&str> {
        let x = self.domain.point(label)?;
        Ok(self.codomain.label(self.assignment[x]))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.assignment
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &y in &self.assignment {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Result<PointMap> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut assignment = vec![0; self.codomain.len()];
        for (x, &y) in self.assignment.iter().enumerate() {
            assignment[y] = x;
        }
        Ok(PointMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            assignment,
        })
    }

    /// `next . self`.
    pub fn then(&self, next: &PointMap) -> Result<PointMap> {
        if *self.codomain != *next.domain {
            return Err(Error::ShapeMismatch(
                "composed maps do not share the middle universe".into(),
            ));
        }
        Ok(PointMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            assignment: self
                .assignment
                .iter()
                .map(|&y| next.assignment[y])
                .collect(),
        })
    }

    fn check_domain(&self, shape: &Shape) -> Result<()> {
        if **shape.universe() == *self.domain {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(
                "set is not over the map's domain".into(),
            ))
        }
    }

    fn check_codomain(&self, shape: &Shape) -> Result<()> {
        if **shape.universe() == *self.codomain {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(
                "set is not over the map's codomain".into(),
            ))
        }
    }

    /// Image: at `y`, the coordinatewise supremum over the fibre `f^-1(y)`;
    /// an empty fibre yields the zero tuple.
    pub fn image(&self, set: &MultiFuzzySet) -> Result<MultiFuzzySet> {
        self.check_domain(set.shape())?;
        let target = set.shape().with_universe(self.codomain.clone());
        Ok(self.image_raw(set, &target))
    }

    /// Image into a caller-provided codomain shape.
    pub fn image_in(&self, set: &MultiFuzzySet, target: &Arc<Shape>) -> Result<MultiFuzzySet> {
        self.check_domain(set.shape())?;
        self.check_codomain(target)?;
        set.shape().ensure_compatible_grid(target, "image target")?;
        Ok(self.image_raw(set, target))
    }

    /// Preimage: `mu_{f^-1(B)}(x) = mu_B(f(x))`.
    pub fn preimage(&self, set: &MultiFuzzySet) -> Result<MultiFuzzySet> {
        self.check_codomain(set.shape())?;
        let target = set.shape().with_universe(self.domain.clone());
        Ok(self.preimage_raw(set, &target))
    }

    /// Preimage into a caller-provided domain shape.
    pub fn preimage_in(&self, set: &MultiFuzzySet, target: &Arc<Shape>) -> Result<MultiFuzzySet> {
        self.check_codomain(set.shape())?;
        self.check_domain(target)?;
        set.shape()
            .ensure_compatible_grid(target, "preimage target")?;
        Ok(self.preimage_raw(set, target))
    }

    pub(crate) fn image_raw(&self, set: &MultiFuzzySet, target: &Arc<Shape>) -> MultiFuzzySet {
        let n = target.dimension();
        let mut grades = vec![Grade::ZERO; target.cells()].into_boxed_slice();
        for (x, &y) in self.assignment.iter().enumerate() {
            for (slot, g) in grades[y * n..(y + 1) * n].iter_mut().zip(set.tuple(x)) {
                *slot = (*slot).max(*g);
            }
        }
        MultiFuzzySet::from_parts(target.clone(), grades)
    }

    pub(crate) fn preimage_raw(&self, set: &MultiFuzzySet, target: &Arc<Shape>) -> MultiFuzzySet {
        let grades = self
            .assignment
            .iter()
            .flat_map(|&y| set.tuple(y).iter().copied())
            .collect();
        MultiFuzzySet::from_parts(target.clone(), grades)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universes() -> (Arc<Universe>, Arc<Universe>) {
        (
            Arc::new(Universe::new(["a", "b"]).unwrap()),
            Arc::new(Universe::new(["y"]).unwrap()),
        )
    }

    #[test]
    fn image_takes_fibre_supremum() {
        let (x, y) = universes();
        let f = PointMap::constant(x.clone(), y.clone(), "y").unwrap();
        let shape = Shape::new(x, 2, crate::GradeChain::new(2).unwrap()).unwrap();
        let a = MultiFuzzySet::from_rows(shape.clone(), &[("a", &[1, 0]), ("b", &[0, 2])]).unwrap();
        let img = f.image(&a).unwrap();
        assert_eq!(img.to_string(), "[y:(1/2,2/2)]");
        assert!(f.image(&MultiFuzzySet::null(shape)).unwrap().is_null());
    }

    #[test]
    fn empty_fibre_is_zero() {
        let (x, y) = universes();
        let g = PointMap::new(y.clone(), x.clone(), [("y", "a")]).unwrap();
        let shape = Shape::new(y, 1, crate::GradeChain::new(2).unwrap()).unwrap();
        let img = g.image(&MultiFuzzySet::absolute(shape)).unwrap();
        assert_eq!(img.to_string(), "[a:(2/2), b:(0/2)]");
    }

    #[test]
    fn preimage_composes() {
        let (x, y) = universes();
        let f = PointMap::constant(x, y.clone(), "y").unwrap();
        let shape = Shape::new(y, 2, crate::GradeChain::new(2).unwrap()).unwrap();
        let b = MultiFuzzySet::from_rows(shape.clone(), &[("y", &[1, 2])]).unwrap();
        assert_eq!(
            f.preimage(&b).unwrap().to_string(),
            "[a:(1/2,2/2), b:(1/2,2/2)]"
        );
        assert_eq!(
            f.preimage(&b.complement()).unwrap(),
            f.preimage(&b).unwrap().complement()
        );
        assert!(f
            .preimage(&MultiFuzzySet::absolute(shape))
            .unwrap()
            .is_absolute());
    }

    #[test]
    fn map_validation() {
        let (x, y) = universes();
        assert!(matches!(
            PointMap::new(x.clone(), y.clone(), [("a", "y")]),
            Err(Error::IncompleteMap(_))
        ));
        assert!(matches!(
            PointMap::new(x.clone(), y.clone(), [("a", "y"), ("b", "q")]),
            Err(Error::UnknownPoint(_))
        ));
        let swap = PointMap::new(x.clone(), x.clone(), [("a", "b"), ("b", "a")]).unwrap();
        assert!(swap.is_bijective());
        assert_eq!(swap.inverse().unwrap(), swap);
        assert_eq!(swap.then(&swap).unwrap(), PointMap::identity(x.clone()));
        let c = PointMap::constant(x, y, "y").unwrap();
        assert!(c.is_surjective() && !c.is_injective());
        assert_eq!(c.inverse(), Err(Error::NotBijective));
    }

    #[test]
    fn wrong_universe_is_rejected() {
        let (x, y) = universes();
        let f = PointMap::constant(x, y.clone(), "y").unwrap();
        let over_y =
            MultiFuzzySet::null(Shape::new(y, 1, crate::GradeChain::new(2).unwrap()).unwrap());
        assert!(matches!(f.image(&over_y), Err(Error::ShapeMismatch(_))));
    }
}
