//! Randomised checks of the structural theorems on small generated spaces.

use std::sync::Arc;

use mftop::product::{is_second_countable, product_map};
use mftop::sample::{self, Bounds};
use mftop::set::family_contains;
use mftop::topology::intersect_topologies;
use mftop::{
    compose, nbd_from_topology, product_topology, topology_from_nbd, verify_nbd_axioms,
    MultiFuzzySet, MultiFuzzyTopology, SpaceMap,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn generation_is_monotone_and_idempotent() {
    let mut rng = rng(1);
    for _ in 0..60 {
        let shape = sample::random_shape(&mut rng, &Bounds::default());
        let seeds: Vec<_> = (0..3)
            .map(|_| sample::random_restricted_set(&mut rng, &shape))
            .collect();
        let small = MultiFuzzyTopology::generate(shape.clone(), &seeds[..1]).unwrap();
        let large = MultiFuzzyTopology::generate(shape.clone(), &seeds).unwrap();
        assert!(small.verify().is_ok() && large.verify().is_ok());
        assert!(small.opens().iter().all(|g| large.contains(g)));
        assert_eq!(
            MultiFuzzyTopology::generate(shape, large.opens()).unwrap(),
            large
        );
    }
}

#[test]
fn minimal_base_is_irredundant() {
    let mut rng = rng(2);
    for _ in 0..40 {
        let shape = sample::random_shape(&mut rng, &Bounds::default());
        let tau = sample::random_topology(&mut rng, &shape, 3);
        let base = tau.minimal_base();
        assert!(tau.is_open_base(&base).unwrap());
        for skip in 0..base.len() {
            let smaller: Vec<_> = base
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, b)| b.clone())
                .collect();
            assert!(!tau.is_open_base(&smaller).unwrap());
        }
    }
}

#[test]
fn intersections_are_topologies_below_their_inputs() {
    let mut rng = rng(3);
    for _ in 0..40 {
        let shape = sample::random_shape(&mut rng, &Bounds::default());
        let t1 = sample::random_topology(&mut rng, &shape, 3);
        let t2 = sample::random_topology(&mut rng, &shape, 3);
        let meet = intersect_topologies(&[&t1, &t2]).unwrap();
        assert!(meet.verify().is_ok());
        assert!(meet
            .opens()
            .iter()
            .all(|g| t1.contains(g) && t2.contains(g)));
    }
}

#[test]
fn nbd_families_have_the_closure_properties() {
    let mut rng = rng(4);
    for _ in 0..25 {
        let shape = sample::random_shape(&mut rng, &Bounds::default());
        let tau = sample::random_topology(&mut rng, &shape, 3);
        let system = nbd_from_topology(&tau).unwrap();
        assert!(verify_nbd_axioms(&system).unwrap().is_ok());
        assert_eq!(topology_from_nbd(&system).unwrap(), tau);
        let all = mftop::grid::all_sets(&shape).unwrap();
        for x in 0..shape.points() {
            let family = system.family(x);
            for f in family.iter().take(12) {
                for g in family.iter().take(12) {
                    // meets and joins of neighbourhoods stay neighbourhoods
                    assert!(family_contains(family, &f.meet(g).unwrap()));
                    assert!(family_contains(family, &f.join_with(g).unwrap()));
                }
                // upward closure among sets agreeing at x
                for w in &all {
                    if f.leq(w).unwrap() && f.tuple(x) == w.tuple(x) {
                        assert!(family_contains(family, w));
                    }
                }
            }
        }
    }
}

#[test]
fn composition_preserves_continuity_and_openness() {
    let mut rng = rng(5);
    let mut continuous = 0;
    for _ in 0..200 {
        let shape = sample::random_shape(
            &mut rng,
            &Bounds {
                max_points: 2,
                ..Bounds::default()
            },
        );
        let spaces: Vec<Arc<MultiFuzzyTopology>> = (0..3)
            .map(|_| Arc::new(sample::random_topology(&mut rng, &shape, 2)))
            .collect();
        let f = sample::random_space_map(&mut rng, spaces[0].clone(), spaces[1].clone());
        let g = sample::random_space_map(&mut rng, spaces[1].clone(), spaces[2].clone());
        let gf = compose(&f, &g).unwrap();
        if f.is_continuous() && g.is_continuous() {
            continuous += 1;
            assert!(gf.is_continuous());
        }
        if f.is_open_map() && g.is_open_map() {
            assert!(gf.is_open_map());
        }
    }
    assert!(continuous > 10);
}

#[test]
fn homeomorphism_characterisations_agree() {
    let mut rng = rng(6);
    let mut homeomorphisms = 0;
    for _ in 0..200 {
        let shape = sample::random_shape(&mut rng, &Bounds::default());
        let tau = Arc::new(sample::random_topology(&mut rng, &shape, 2));
        let sigma = if rng_bool(&mut rng) {
            tau.clone()
        } else {
            Arc::new(sample::random_topology(&mut rng, &shape, 2))
        };
        let perm = sample::random_permutation(&mut rng, &shape);
        let m = SpaceMap::new(perm, tau, sigma).unwrap();
        let check = m.homeomorphism();
        assert!(check.agree());
        homeomorphisms += usize::from(check.via_inverse());
    }
    assert!(homeomorphisms > 10);
}

fn rng_bool(rng: &mut ChaCha8Rng) -> bool {
    use rand::Rng;
    rng.random_bool(0.5)
}

#[test]
fn product_constructions() {
    let mut rng = rng(7);
    let bounds = Bounds {
        max_points: 2,
        max_dimension: 2,
        max_denominator: 2,
        max_seeds: 2,
    };
    for _ in 0..20 {
        let s1 = sample::random_shape(&mut rng, &bounds);
        let s2 = mftop::Shape::build(
            (0..s1.points()).map(|i| format!("y{i}")),
            s1.dimension(),
            s1.chain().denominator(),
        )
        .unwrap();
        let t1 = Arc::new(sample::random_topology(&mut rng, &s1, 2));
        let t2 = Arc::new(sample::random_topology(&mut rng, &s2, 2));
        let p = product_topology(t1.clone(), t2.clone()).unwrap();
        assert!(p.basis_is_open_base());
        assert!(p.smallest_topology_check().unwrap());
        for factor in [mftop::Factor::First, mftop::Factor::Second] {
            let pi = p.projection(factor);
            assert!(pi.is_continuous() && pi.is_open_map());
        }
        let base = p
            .product_base(&t1.minimal_base(), &t2.minimal_base())
            .unwrap();
        assert!(p.topology().is_open_base(&base).unwrap());
        assert!(is_second_countable(p.topology()).0);
        for label in s1.universe().labels() {
            assert!(p
                .slice_embedding(label, mftop::Factor::First)
                .unwrap()
                .is_continuous());
        }

        let f1 = sample::random_space_map(&mut rng, t1.clone(), t1.clone());
        let f2 = sample::random_space_map(&mut rng, t2.clone(), t2.clone());
        let pm = product_map(&f1, &f2).unwrap();
        if f1.is_continuous() && f2.is_continuous() {
            assert!(pm.map.is_continuous());
        }
        if f1.is_open_map() && f2.is_open_map() {
            assert!(pm.map.is_open_map());
        }
        let null = MultiFuzzySet::null(p.shape().clone());
        assert!(pm.map.image(&null).unwrap().is_null());
    }
}
