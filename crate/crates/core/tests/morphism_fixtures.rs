mod common;
mod oracle;

use std::sync::Arc;

use common::*;
use mftop::{compose, ContinuityCriterion, MultiFuzzyTopology, PointMap, Shape, SpaceMap};
use oracle::Grid;

const AB: Grid = Grid {
    points: 2,
    n: 1,
    d: 2,
};

fn swap(space: Arc<MultiFuzzyTopology>) -> SpaceMap {
    let u = space.shape().universe().clone();
    let map = PointMap::new(u.clone(), u, [("a", "b"), ("b", "a")]).unwrap();
    SpaceMap::new(map, space.clone(), space).unwrap()
}

fn oracle_continuous(assign: &[usize], dom: &[Vec<u8>], cod: &[Vec<u8>], cod_grid: &Grid) -> bool {
    cod.iter()
        .all(|g| dom.contains(&oracle::preimage(assign, cod_grid, g)))
}

#[test]
fn continuity_examples() {
    let tau = tau4();
    let id = SpaceMap::identity(tau.clone());
    assert!(id.is_continuous());

    let target = minimal(y());
    let constant = SpaceMap::constant(tau.clone(), target.clone(), "y").unwrap();
    assert!(constant.is_continuous());
    for open in target.opens() {
        let pre = constant.preimage(open).unwrap();
        assert!(pre.is_null() || pre.is_non_null_constant());
    }

    let s_map = swap(tau.clone());
    assert!(!s_map.is_continuous());
    assert_eq!(s_map.preimage(&s(2, 1)).unwrap(), s(1, 2));
    let opens = raws(tau.opens());
    assert!(!oracle_continuous(&[1, 0], &opens, &opens, &AB));
    assert!(oracle_continuous(&[0, 1], &opens, &opens, &AB));
}

#[test]
fn criteria_examples() {
    let tau = tau4();
    for criterion in ContinuityCriterion::ALL {
        assert!(SpaceMap::identity(tau.clone())
            .is_continuous_via(criterion)
            .unwrap());
        assert!(
            !swap(tau.clone()).is_continuous_via(criterion).unwrap(),
            "{criterion}"
        );
    }
    let constant = SpaceMap::constant(tau.clone(), minimal(y()), "y").unwrap();
    assert!(constant
        .is_continuous_via(ContinuityCriterion::NbdPullback)
        .unwrap());
}

#[test]
fn criteria_agree_on_every_self_map_of_small_spaces() {
    let all: Vec<Arc<MultiFuzzyTopology>> = oracle::all_lowen_topologies(&AB)
        .into_iter()
        .map(|opens| {
            let sets = opens.iter().map(|r| from_raw(&ab(), r)).collect();
            Arc::new(MultiFuzzyTopology::new(ab(), mftop::TopologyKind::Lowen, sets).unwrap())
        })
        .collect();
    for dom in &all {
        for cod in &all {
            for assign in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                let map = PointMap::from_indices(
                    ab().universe().clone(),
                    ab().universe().clone(),
                    assign.to_vec(),
                )
                .unwrap();
                let m = SpaceMap::new(map, dom.clone(), cod.clone()).unwrap();
                let results = m.continuity_criteria().unwrap();
                let expected =
                    oracle_continuous(&assign, &raws(dom.opens()), &raws(cod.opens()), &AB);
                for (criterion, value) in results {
                    assert_eq!(value, expected, "{criterion} {assign:?}");
                }
            }
        }
    }
}

#[test]
fn open_map_examples() {
    let tau = tau4();
    let id = SpaceMap::identity(tau.clone());
    assert!(id.is_open_map() && id.is_closed_map());

    let collapse = SpaceMap::constant(tau.clone(), minimal(y()), "y").unwrap();
    assert!(collapse.is_open_map());
    assert_eq!(
        collapse.image(&s(2, 1)).unwrap(),
        mftop::MultiFuzzySet::from_rows(y(), &[("y", &[2])]).unwrap()
    );

    let single = Shape::build(["a"], 1, 2).unwrap();
    let inclusion = SpaceMap::new(
        PointMap::new(
            single.universe().clone(),
            ab().universe().clone(),
            [("a", "a")],
        )
        .unwrap(),
        minimal(single.clone()),
        minimal(ab()),
    )
    .unwrap();
    assert!(!inclusion.is_open_map());
    let half = mftop::MultiFuzzySet::from_rows(single, &[("a", &[1])]).unwrap();
    assert_eq!(inclusion.image(&half).unwrap(), s(1, 0));
}

#[test]
fn homeomorphism_examples() {
    let tau = tau4();
    assert!(SpaceMap::identity(tau.clone()).is_homeomorphism());
    let check = swap(tau).homeomorphism();
    assert!(!check.via_inverse() && check.agree());

    let symmetric = Arc::new(MultiFuzzyTopology::generate(ab(), &[s(2, 1), s(1, 2)]).unwrap());
    assert_eq!(
        raws(symmetric.opens()),
        oracle::generate(&AB, &[vec![2, 1], vec![1, 2]])
    );
    let check = swap(symmetric).homeomorphism();
    assert!(check.via_inverse() && check.via_open_map());

    let collapse = SpaceMap::constant(tau4(), minimal(y()), "y").unwrap();
    let check = collapse.homeomorphism();
    assert!(!check.bijective && !collapse.is_homeomorphism() && check.agree());
}

#[test]
fn composition_examples() {
    let tau = tau4();
    let id = SpaceMap::identity(tau.clone());
    let collapse = SpaceMap::constant(tau.clone(), minimal(y()), "y").unwrap();
    assert_eq!(compose(&id, &collapse).unwrap(), collapse);

    let symmetric = Arc::new(MultiFuzzyTopology::generate(ab(), &[s(2, 1), s(1, 2)]).unwrap());
    let twice = compose(&swap(symmetric.clone()), &swap(symmetric.clone())).unwrap();
    assert_eq!(twice, SpaceMap::identity(symmetric.clone()));
    assert!(twice.is_continuous() && twice.is_open_map());

    let g = swap(symmetric.clone());
    let h = SpaceMap::constant(symmetric, minimal(y()), "y").unwrap();
    let gh = compose(&g, &h).unwrap();
    let v = mftop::MultiFuzzySet::from_rows(y(), &[("y", &[1])]).unwrap();
    assert_eq!(
        gh.preimage(&v).unwrap(),
        g.preimage(&h.preimage(&v).unwrap()).unwrap()
    );
    assert!(compose(&h, &g).is_err());
}
