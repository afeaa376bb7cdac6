#![allow(dead_code)]

use std::sync::Arc;

use mftop::{MultiFuzzySet, MultiFuzzyTopology, Shape, TopologyKind};

/// `X = {a, b}`, one coordinate, grades in halves.
pub fn ab() -> Arc<Shape> {
    Shape::build(["a", "b"], 1, 2).unwrap()
}

pub fn y() -> Arc<Shape> {
    Shape::build(["y"], 1, 2).unwrap()
}

/// A set over `{a, b}` by numerators.
pub fn s(a: u32, b: u32) -> MultiFuzzySet {
    MultiFuzzySet::from_rows(ab(), &[("a", &[a]), ("b", &[b])]).unwrap()
}

/// `{Phi, C1/2, C1, U}` with `U = [a:1, b:1/2]`.
pub fn tau4() -> Arc<MultiFuzzyTopology> {
    Arc::new(
        MultiFuzzyTopology::new(
            ab(),
            TopologyKind::Lowen,
            vec![s(0, 0), s(1, 1), s(2, 2), s(2, 1)],
        )
        .unwrap(),
    )
}

/// `{Phi, C1/2, C1}` over `shape`.
pub fn minimal(shape: Arc<Shape>) -> Arc<MultiFuzzyTopology> {
    Arc::new(MultiFuzzyTopology::generate(shape, &[]).unwrap())
}

pub fn raw(set: &MultiFuzzySet) -> Vec<u8> {
    set.grades().iter().map(|g| g.numerator()).collect()
}

pub fn raws(family: &[MultiFuzzySet]) -> Vec<Vec<u8>> {
    let mut out: Vec<_> = family.iter().map(raw).collect();
    out.sort();
    out
}

pub fn from_raw(shape: &Arc<Shape>, grades: &[u8]) -> MultiFuzzySet {
    MultiFuzzySet::from_grades(
        shape.clone(),
        grades.iter().map(|&k| mftop::Grade::raw(k)).collect(),
    )
    .unwrap()
}
