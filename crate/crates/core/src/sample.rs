//! Seeded random spaces, sets and maps for property tests and mining.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::grade::Grade;
use crate::map::PointMap;
use crate::morphisms::SpaceMap;
use crate::set::MultiFuzzySet;
use crate::topology::{MultiFuzzyTopology, TopologyKind};
use crate::universe::Shape;

/// Inclusive bounds for generated spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_points: usize,
    pub max_dimension: usize,
    pub max_denominator: u32,
    /// Largest number of generating seeds per topology.
    pub max_seeds: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_points: 3,
            max_dimension: 2,
            max_denominator: 2,
            max_seeds: 3,
        }
    }
}

pub fn random_shape(rng: &mut impl Rng, bounds: &Bounds) -> Arc<Shape> {
    let points = rng.random_range(1..=bounds.max_points.max(1));
    let dimension = rng.random_range(1..=bounds.max_dimension.max(1));
    let denominator = rng.random_range(1..=bounds.max_denominator.max(1));
    Shape::build((0..points).map(point_label), dimension, denominator)
        .expect("bounds give a valid shape")
}

/// `a`, `b`, ..., `z`, `p26`, ...
pub fn point_label(index: usize) -> String {
    if index < 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("p{index}")
    }
}

/// Any grid set.
pub fn random_set(rng: &mut impl Rng, shape: &Arc<Shape>) -> MultiFuzzySet {
    let top = shape.chain().denominator() as u8;
    MultiFuzzySet::from_fn(shape.clone(), |_, _| Grade::raw(rng.random_range(0..=top)))
}

/// A set whose tuple at each point is all-positive or all-zero.
pub fn random_restricted_set(rng: &mut impl Rng, shape: &Arc<Shape>) -> MultiFuzzySet {
    let top = shape.chain().denominator() as u8;
    let n = shape.dimension();
    let support: Vec<bool> = (0..shape.points()).map(|_| rng.random_bool(0.6)).collect();
    let grades = (0..shape.cells())
        .map(|c| {
            if support[c / n] {
                Grade::raw(rng.random_range(1..=top))
            } else {
                Grade::ZERO
            }
        })
        .collect();
    MultiFuzzySet::from_grades(shape.clone(), grades).expect("grades are on the chain")
}

/// The Lowen topology generated by a few random restricted seeds.
pub fn random_topology(
    rng: &mut impl Rng,
    shape: &Arc<Shape>,
    max_seeds: usize,
) -> MultiFuzzyTopology {
    random_topology_with_kind(rng, shape, TopologyKind::Lowen, max_seeds)
}

pub fn random_topology_with_kind(
    rng: &mut impl Rng,
    shape: &Arc<Shape>,
    kind: TopologyKind,
    max_seeds: usize,
) -> MultiFuzzyTopology {
    let count = rng.random_range(0..=max_seeds);
    let seeds: Vec<MultiFuzzySet> = (0..count)
        .map(|_| random_restricted_set(rng, shape))
        .collect();
    MultiFuzzyTopology::generate_with_kind(shape.clone(), kind, &seeds)
        .expect("restricted seeds generate a topology")
}

pub fn random_point_map(
    rng: &mut impl Rng,
    domain: &Arc<Shape>,
    codomain: &Arc<Shape>,
) -> PointMap {
    let targets: Vec<usize> = (0..codomain.points()).collect();
    let assignment = (0..domain.points())
        .map(|_| *targets.choose(rng).expect("nonempty universe"))
        .collect();
    PointMap::from_indices(
        domain.universe().clone(),
        codomain.universe().clone(),
        assignment,
    )
    .expect("indices are in range")
}

/// A random bijection of the universe onto itself.
pub fn random_permutation(rng: &mut impl Rng, shape: &Arc<Shape>) -> PointMap {
    use rand::seq::SliceRandom;
    let mut assignment: Vec<usize> = (0..shape.points()).collect();
    assignment.shuffle(rng);
    PointMap::from_indices(
        shape.universe().clone(),
        shape.universe().clone(),
        assignment,
    )
    .expect("indices are in range")
}

pub fn random_space_map(
    rng: &mut impl Rng,
    domain: Arc<MultiFuzzyTopology>,
    codomain: Arc<MultiFuzzyTopology>,
) -> SpaceMap {
    let map = random_point_map(rng, domain.shape(), codomain.shape());
    SpaceMap::new(map, domain, codomain).expect("grids agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let shape = random_shape(&mut rng, &Bounds::default());
            assert!(random_restricted_set(&mut rng, &shape).in_restricted_class());
            let tau = random_topology(&mut rng, &shape, 3);
            assert!(tau.verify().is_ok());
            assert!(random_permutation(&mut rng, &shape).is_bijective());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let shape = Shape::build(["a", "b"], 2, 3).unwrap();
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_topology(&mut rng, &shape, 3)
        };
        assert_eq!(run(11), run(11));
    }

    #[test]
    fn labels() {
        assert_eq!(point_label(0), "a");
        assert_eq!(point_label(27), "p27");
    }
}
