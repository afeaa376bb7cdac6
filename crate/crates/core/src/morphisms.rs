//! Maps between multi-fuzzy topological spaces.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::map::PointMap;
use crate::neighborhood::{nbd_from_topology, NbdSystem};
use crate::set::{family_contains, MultiFuzzySet};
use crate::topology::MultiFuzzyTopology;

/// A point map together with the spaces it runs between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    map: PointMap,
    domain: Arc<MultiFuzzyTopology>,
    codomain: Arc<MultiFuzzyTopology>,
}

/// The four equivalent formulations of continuity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContinuityCriterion {
    /// Preimages of opens are open.
    OpenPreimage,
    /// Preimages of closed sets are closed.
    ClosedPreimage,
    /// Preimages of neighbourhoods of `f(x)` are neighbourhoods of `x`.
    NbdPullback,
    /// Every neighbourhood `N` of `f(x)` has a neighbourhood `M` of `x` with
    /// `f(M) <= N` and `M(x) = f^-1(N)(x)`.
    NbdWitness,
}

impl ContinuityCriterion {
    pub const ALL: [ContinuityCriterion; 4] = [
        ContinuityCriterion::OpenPreimage,
        ContinuityCriterion::ClosedPreimage,
        ContinuityCriterion::NbdPullback,
        ContinuityCriterion::NbdWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ContinuityCriterion::OpenPreimage => "open-preimage",
            ContinuityCriterion::ClosedPreimage => "closed-preimage",
            ContinuityCriterion::NbdPullback => "nbd-pullback",
            ContinuityCriterion::NbdWitness => "nbd-witness",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        ContinuityCriterion::ALL
            .into_iter()
            .find(|c| c.name() == name)
    }
}

impl fmt::Display for ContinuityCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The two homeomorphism characterisations for a bijection, evaluated
/// separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomeomorphismCheck {
    pub bijective: bool,
    pub continuous: bool,
    /// `f^-1` is continuous (only evaluated for bijections).
    pub inverse_continuous: bool,
    pub open: bool,
}

impl HomeomorphismCheck {
    /// `f` and `f^-1` are both continuous.
    pub fn via_inverse(&self) -> bool {
        self.bijective && self.continuous && self.inverse_continuous
    }

    /// `f` is continuous and open.
    pub fn via_open_map(&self) -> bool {
        self.bijective && self.continuous && self.open
    }

    /// Both characterisations give the same answer.
    pub fn agree(&self) -> bool {
        self.via_inverse() == self.via_open_map()
    }
}

impl SpaceMap {
    pub fn new(
        map: PointMap,
        domain: Arc<MultiFuzzyTopology>,
        codomain: Arc<MultiFuzzyTopology>,
    ) -> Result<Self> {
        if **map.domain() != **domain.shape().universe() {
            return Err(Error::ShapeMismatch(
                "map domain differs from the domain space".into(),
            ));
        }
        if **map.codomain() != **codomain.shape().universe() {
            return Err(Error::ShapeMismatch(
                "map codomain differs from the codomain space".into(),
            ));
        }
        domain
            .shape()
            .ensure_compatible_grid(codomain.shape(), "spaces of a map")?;
        Ok(SpaceMap {
            map,
            domain,
            codomain,
        })
    }

    pub fn identity(space: Arc<MultiFuzzyTopology>) -> Self {
        SpaceMap {
            map: PointMap::identity(space.shape().universe().clone()),
            domain: space.clone(),
            codomain: space,
        }
    }

    /// `x -> target` for every `x`.
    pub fn constant(
        domain: Arc<MultiFuzzyTopology>,
        codomain: Arc<MultiFuzzyTopology>,
        target: &str,
    ) -> Result<Self> {
        let map = PointMap::constant(
            domain.shape().universe().clone(),
            codomain.shape().universe().clone(),
            target,
        )?;
        SpaceMap::new(map, domain, codomain)
    }

    pub fn map(&self) -> &PointMap {
        &self.map
    }

    pub fn domain(&self) -> &Arc<MultiFuzzyTopology> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<MultiFuzzyTopology> {
        &self.codomain
    }

    /// Preimage of a codomain set, over the domain shape.
    pub fn preimage(&self, set: &MultiFuzzySet) -> Result<MultiFuzzySet> {
        self.codomain.shape().ensure_same(set.shape(), "preimage")?;
        Ok(self.map.preimage_raw(set, self.domain.shape()))
    }

    /// Image of a domain set, over the codomain shape.
    pub fn image(&self, set: &MultiFuzzySet) -> Result<MultiFuzzySet> {
        self.domain.shape().ensure_same(set.shape(), "image")?;
        Ok(self.map.image_raw(set, self.codomain.shape()))
    }

    fn pre(&self, set: &MultiFuzzySet) -> MultiFuzzySet {
        self.map.preimage_raw(set, self.domain.shape())
    }

    fn img(&self, set: &MultiFuzzySet) -> MultiFuzzySet {
        self.map.image_raw(set, self.codomain.shape())
    }

    /// Preimage of every codomain open is a domain open.
    pub fn is_continuous(&self) -> bool {
        self.codomain
            .opens()
            .iter()
            .all(|a| self.domain.contains(&self.pre(a)))
    }

    /// Evaluates a single continuity criterion.
    pub fn is_continuous_via(&self, criterion: ContinuityCriterion) -> Result<bool> {
        match criterion {
            ContinuityCriterion::OpenPreimage => Ok(self.is_continuous()),
            ContinuityCriterion::ClosedPreimage => Ok(self.closed_preimage_criterion()),
            ContinuityCriterion::NbdPullback | ContinuityCriterion::NbdWitness => {
                let systems = NbdPair::new(self)?;
                Ok(if criterion == ContinuityCriterion::NbdPullback {
                    self.nbd_pullback_criterion(&systems)
                } else {
                    self.nbd_witness_criterion(&systems)
                })
            }
        }
    }

    /// Evaluates all four criteria, sharing the neighbourhood enumeration.
    pub fn continuity_criteria(&self) -> Result<[(ContinuityCriterion, bool); 4]> {
        let systems = NbdPair::new(self)?;
        Ok([
            (ContinuityCriterion::OpenPreimage, self.is_continuous()),
            (
                ContinuityCriterion::ClosedPreimage,
                self.closed_preimage_criterion(),
            ),
            (
                ContinuityCriterion::NbdPullback,
                self.nbd_pullback_criterion(&systems),
            ),
            (
                ContinuityCriterion::NbdWitness,
                self.nbd_witness_criterion(&systems),
            ),
        ])
    }

    fn closed_preimage_criterion(&self) -> bool {
        self.codomain
            .closed_sets()
            .iter()
            .all(|k| self.domain.contains(&self.pre(k).complement()))
    }

    fn nbd_pullback_criterion(&self, systems: &NbdPair) -> bool {
        (0..self.domain.shape().points()).all(|x| {
            let fx = self.map.apply(x);
            systems
                .codomain
                .family(fx)
                .iter()
                .all(|n| family_contains(systems.domain.family(x), &self.pre(n)))
        })
    }

    fn nbd_witness_criterion(&self, systems: &NbdPair) -> bool {
        (0..self.domain.shape().points()).all(|x| {
            let mut by_tuple: HashMap<&[Grade], Vec<MultiFuzzySet>> = HashMap::new();
            for m in systems.domain.family(x) {
                by_tuple.entry(m.tuple(x)).or_default().push(self.img(m));
            }
            let fx = self.map.apply(x);
            systems.codomain.family(fx).iter().all(|n| {
                // mu_{f^-1(N)}(x) = mu_N(f(x))
                by_tuple
                    .get(n.tuple(fx))
                    .is_some_and(|images| images.iter().any(|image| image.leq_raw(n)))
            })
        })
    }

    /// Images of opens are open.
    pub fn is_open_map(&self) -> bool {
        self.domain
            .opens()
            .iter()
            .all(|a| self.codomain.contains(&self.img(a)))
    }

    /// Images of closed sets are closed.
    pub fn is_closed_map(&self) -> bool {
        self.domain
            .closed_sets()
            .iter()
            .all(|k| self.codomain.contains(&self.img(k).complement()))
    }

    /// The inverse map between the swapped spaces.
    pub fn inverse(&self) -> Result<SpaceMap> {
        Ok(SpaceMap {
            map: self.map.inverse()?,
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
        })
    }

    pub fn homeomorphism(&self) -> HomeomorphismCheck {
        let bijective = self.map.is_bijective();
        HomeomorphismCheck {
            bijective,
            continuous: self.is_continuous(),
            inverse_continuous: bijective
                && self
                    .inverse()
                    .expect("bijective map has an inverse")
                    .is_continuous(),
            open: self.is_open_map(),
        }
    }

    /// Bijective with `f` and `f^-1` continuous.
    pub fn is_homeomorphism(&self) -> bool {
        self.homeomorphism().via_inverse()
    }

    /// `next . self`.
    pub fn then(&self, next: &SpaceMap) -> Result<SpaceMap> {
        compose(self, next)
    }
}

/// `second . first`; the middle spaces must coincide.
pub fn compose(first: &SpaceMap, second: &SpaceMap) -> Result<SpaceMap> {
    if *first.codomain != *second.domain {
        return Err(Error::ShapeMismatch(
            "composed maps do not share the middle space".into(),
        ));
    }
    Ok(SpaceMap {
        map: first.map.then(&second.map)?,
        domain: first.domain.clone(),
        codomain: second.codomain.clone(),
    })
}

struct NbdPair {
    domain: NbdSystem,
    codomain: NbdSystem,
}

impl NbdPair {
    fn new(map: &SpaceMap) -> Result<Self> {
        let domain = nbd_from_topology(&map.domain)?;
        let codomain = if Arc::ptr_eq(&map.domain, &map.codomain) {
            domain.clone()
        } else {
            nbd_from_topology(&map.codomain)?
        };
        Ok(NbdPair { domain, codomain })
    }
}
