//! Binary products of multi-fuzzy topological spaces.

use std::sync::Arc;

use crate::cartesian::{product_set_raw, product_shape};
use crate::error::{Error, Result};
use crate::map::PointMap;
use crate::morphisms::SpaceMap;
use crate::set::{canonicalize, MultiFuzzySet};
use crate::topology::MultiFuzzyTopology;
use crate::universe::Shape;

/// Which factor of a binary product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    First,
    Second,
}

/// `(X1 x X2, tau1 x tau2)` with the generating family `{F x G}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpace {
    first: Arc<MultiFuzzyTopology>,
    second: Arc<MultiFuzzyTopology>,
    topology: Arc<MultiFuzzyTopology>,
    basis: Vec<MultiFuzzySet>,
    /// For each basis member, one factor pair producing it.
    provenance: Vec<(usize, usize)>,
}

/// Builds the product topology: the basis is every `F x G` with `F` and `G`
/// open in their factors, and the topology is the one it generates.
pub fn product_topology(
    first: Arc<MultiFuzzyTopology>,
    second: Arc<MultiFuzzyTopology>,
) -> Result<ProductSpace> {
    if first.kind() != second.kind() {
        return Err(Error::KindMismatch);
    }
    let shape = product_shape(first.shape(), second.shape())?;
    let mut tagged: Vec<(MultiFuzzySet, (usize, usize))> = Vec::new();
    for (i, f) in first.opens().iter().enumerate() {
        for (j, g) in second.opens().iter().enumerate() {
            tagged.push((product_set_raw(f, g, &shape), (i, j)));
        }
    }
    tagged.sort_by(|a, b| a.0.cmp(&b.0));
    tagged.dedup_by(|a, b| a.0 == b.0);
    let (basis, provenance): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
    let topology = MultiFuzzyTopology::generate_with_kind(shape, first.kind(), &basis)?;
    Ok(ProductSpace {
        first,
        second,
        topology: Arc::new(topology),
        basis,
        provenance,
    })
}

impl ProductSpace {
    pub fn factor(&self, factor: Factor) -> &Arc<MultiFuzzyTopology> {
        match factor {
            Factor::First => &self.first,
            Factor::Second => &self.second,
        }
    }

    pub fn topology(&self) -> &Arc<MultiFuzzyTopology> {
        &self.topology
    }

    pub fn shape(&self) -> &Arc<Shape> {
        self.topology.shape()
    }

    /// The deduplicated generating family `{F x G}`.
    pub fn basis(&self) -> &[MultiFuzzySet] {
        &self.basis
    }

    /// The factor opens `(F, G)` of one representation of `basis()[k]`.
    pub fn basis_factors(&self, k: usize) -> (&MultiFuzzySet, &MultiFuzzySet) {
        let (i, j) = self.provenance[k];
        (&self.first.opens()[i], &self.second.opens()[j])
    }

    /// Index of the pair point `(i, j)`.
    pub fn point_index(&self, first: usize, second: usize) -> usize {
        first * self.second.shape().points() + second
    }

    /// The generating family is an open base of the product topology.
    pub fn basis_is_open_base(&self) -> bool {
        self.topology
            .is_open_base(&self.basis)
            .expect("basis members are open")
    }

    /// `pi_j : X1 x X2 -> X_j`.
    pub fn projection(&self, factor: Factor) -> SpaceMap {
        let rows = self.second.shape().points();
        let target = self.factor(factor).clone();
        let assignment = (0..self.shape().points())
            .map(|p| match factor {
                Factor::First => p / rows,
                Factor::Second => p % rows,
            })
            .collect();
        let map = PointMap::from_indices(
            self.shape().universe().clone(),
            target.shape().universe().clone(),
            assignment,
        )
        .expect("projection indices are in range");
        SpaceMap::new(map, self.topology.clone(), target).expect("projection matches its spaces")
    }

    /// The topology generated by the preimages of the selected factors' opens
    /// under the projections.
    pub fn subbase_topology(&self, first: bool, second: bool) -> Result<MultiFuzzyTopology> {
        let mut subbase = Vec::new();
        for (factor, used) in [(Factor::First, first), (Factor::Second, second)] {
            if used {
                let pi = self.projection(factor);
                for u in self.factor(factor).opens() {
                    subbase.push(pi.preimage(u)?);
                }
            }
        }
        MultiFuzzyTopology::generate_with_kind(self.shape().clone(), self.topology.kind(), &subbase)
    }

    /// The product topology is the one generated by the projection
    /// preimages, hence the smallest making both projections continuous.
    pub fn smallest_topology_check(&self) -> Result<bool> {
        Ok(self.subbase_topology(true, true)? == *self.topology)
    }

    /// With `Factor::First`, `point` is in `X1` and the map is
    /// `x2 -> (point, x2)`; with `Factor::Second`, `point` is in `X2` and the
    /// map is `x1 -> (x1, point)`.
    pub fn slice_embedding(&self, point: &str, fixed: Factor) -> Result<SpaceMap> {
        let a = self.factor(fixed).shape().universe().point(point)?;
        let (source, assignment): (_, Vec<usize>) = match fixed {
            Factor::First => (
                self.second.clone(),
                (0..self.second.shape().points())
                    .map(|x2| self.point_index(a, x2))
                    .collect(),
            ),
            Factor::Second => (
                self.first.clone(),
                (0..self.first.shape().points())
                    .map(|x1| self.point_index(x1, a))
                    .collect(),
            ),
        };
        let map = PointMap::from_indices(
            source.shape().universe().clone(),
            self.shape().universe().clone(),
            assignment,
        )?;
        SpaceMap::new(map, source, self.topology.clone())
    }

    /// `{B x B'}` for open bases `B` of the first and `B'` of the second
    /// factor, deduplicated. Fails if either input is not an open base.
    pub fn product_base(
        &self,
        first: &[MultiFuzzySet],
        second: &[MultiFuzzySet],
    ) -> Result<Vec<MultiFuzzySet>> {
        for (factor, base) in [(&self.first, first), (&self.second, second)] {
            if !factor.is_open_base(base).map_err(|_| Error::NotABase)? {
                return Err(Error::NotABase);
            }
        }
        let mut out: Vec<MultiFuzzySet> = first
            .iter()
            .flat_map(|b| {
                second
                    .iter()
                    .map(move |c| product_set_raw(b, c, self.shape()))
            })
            .collect();
        canonicalize(&mut out);
        Ok(out)
    }
}

/// `f1 x f2` between product spaces, with both products built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMap {
    pub map: SpaceMap,
    pub domain: ProductSpace,
    pub codomain: ProductSpace,
}

/// `(x1, x2) -> (f1(x1), f2(x2))`.
pub fn product_map(first: &SpaceMap, second: &SpaceMap) -> Result<ProductMap> {
    let domain = product_topology(first.domain().clone(), second.domain().clone())?;
    let codomain = product_topology(first.codomain().clone(), second.codomain().clone())?;
    let map = product_map_between(first, second, &domain, &codomain)?;
    Ok(ProductMap {
        map,
        domain,
        codomain,
    })
}

/// [`product_map`] between already built product spaces.
pub fn product_map_between(
    first: &SpaceMap,
    second: &SpaceMap,
    domain: &ProductSpace,
    codomain: &ProductSpace,
) -> Result<SpaceMap> {
    if domain.first != *first.domain()
        || domain.second != *second.domain()
        || codomain.first != *first.codomain()
        || codomain.second != *second.codomain()
    {
        return Err(Error::ShapeMismatch(
            "product spaces do not match the factor maps".into(),
        ));
    }
    let rows = second.domain().shape().points();
    let assignment = (0..domain.shape().points())
        .map(|p| codomain.point_index(first.map().apply(p / rows), second.map().apply(p % rows)))
        .collect();
    let map = PointMap::from_indices(
        domain.shape().universe().clone(),
        codomain.shape().universe().clone(),
        assignment,
    )?;
    SpaceMap::new(map, domain.topology.clone(), codomain.topology.clone())
}

/// Every finite-grid space is second countable; the witness is the minimal
/// base.
pub fn is_second_countable(space: &MultiFuzzyTopology) -> (bool, Vec<MultiFuzzySet>) {
    let base = space.minimal_base();
    let ok = space.is_open_base(&base).unwrap_or(false);
    (ok, base)
}
