//! Products of multi-fuzzy sets over `X x Y`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::set::MultiFuzzySet;
use crate::universe::{Shape, Universe};

/// The shape over `left.universe x right.universe` with the shared grid.
pub fn product_shape(left: &Shape, right: &Shape) -> Result<Arc<Shape>> {
    left.ensure_compatible_grid(right, "product factors")?;
    Ok(left.with_universe(Arc::new(Universe::product(
        left.universe(),
        right.universe(),
    ))))
}

/// `F x G`: coordinate `i` at `(x, y)` is `min(F_i(x), G_i(y))`.
pub fn product_set(left: &MultiFuzzySet, right: &MultiFuzzySet) -> Result<MultiFuzzySet> {
    let shape = product_shape(left.shape(), right.shape())?;
    Ok(product_set_raw(left, right, &shape))
}

/// [`product_set`] into an existing product shape.
pub fn product_set_in(
    left: &MultiFuzzySet,
    right: &MultiFuzzySet,
    shape: &Arc<Shape>,
) -> Result<MultiFuzzySet> {
    left.shape()
        .ensure_compatible_grid(right.shape(), "product factors")?;
    left.shape()
        .ensure_compatible_grid(shape, "product target")?;
    if shape.points() != left.shape().points() * right.shape().points() {
        return Err(Error::ShapeMismatch(
            "product target has the wrong size".into(),
        ));
    }
    Ok(product_set_raw(left, right, shape))
}

pub(crate) fn product_set_raw(
    left: &MultiFuzzySet,
    right: &MultiFuzzySet,
    shape: &Arc<Shape>,
) -> MultiFuzzySet {
    let rows = right.shape().points();
    MultiFuzzySet::from_fn(shape.clone(), |p, i| {
        left.grade(p / rows, i).min(right.grade(p % rows, i))
    })
}

/// A one-dimensional fuzzy set times a multi-fuzzy set: coordinate `i` at
/// `(x, y)` is `min(F(x), G_i(y))`.
pub fn product_mixed(fuzzy: &MultiFuzzySet, multi: &MultiFuzzySet) -> Result<MultiFuzzySet> {
    let dim = fuzzy.shape().dimension();
    if dim != 1 {
        return Err(Error::NotOneDimensional(dim));
    }
    if fuzzy.shape().chain() != multi.shape().chain() {
        return Err(Error::ShapeMismatch(
            "product factors use different chains".into(),
        ));
    }
    let shape = multi.shape().with_universe(Arc::new(Universe::product(
        fuzzy.shape().universe(),
        multi.shape().universe(),
    )));
    let rows = multi.shape().points();
    Ok(MultiFuzzySet::from_fn(shape, |p, i| {
        fuzzy.grade(p / rows, 0).min(multi.grade(p % rows, i))
    }))
}
