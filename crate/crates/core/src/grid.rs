//! Exhaustive enumeration of chain-valued sets of a shape.
//!
//! Every enumerator yields its sets in canonical (sorted) order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::set::MultiFuzzySet;
use crate::universe::Shape;

/// Refuse to materialise more sets than this.
pub const GRID_LIMIT: u128 = 1 << 22;

fn pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// `(D + 1)^(|X| n)`.
pub fn grid_count(shape: &Shape) -> u128 {
    pow(shape.chain().len() as u128, shape.cells())
}

/// `(1 + D^n)^|X|`, the number of chain-valued sets in the restricted class.
pub fn restricted_count(shape: &Shape) -> u128 {
    let positive = pow(u128::from(shape.chain().denominator()), shape.dimension());
    pow(1 + positive, shape.points())
}

/// All `n`-tuples over the chain, lexicographically.
pub fn all_tuples(shape: &Shape) -> Vec<Vec<Grade>> {
    tuples_from(shape, shape.chain().values().collect())
}

/// All tuples with every coordinate positive, lexicographically.
pub fn positive_tuples(shape: &Shape) -> Vec<Vec<Grade>> {
    tuples_from(shape, shape.chain().positive_values().collect())
}

fn tuples_from(shape: &Shape, values: Vec<Grade>) -> Vec<Vec<Grade>> {
    let mut out: Vec<Vec<Grade>> = vec![Vec::new()];
    for _ in 0..shape.dimension() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |g| {
                    let mut t = prefix.clone();
                    t.push(*g);
                    t
                })
            })
            .collect();
    }
    out
}

fn ensure_limit(count: u128) -> Result<()> {
    if count > GRID_LIMIT {
        Err(Error::GridTooLarge {
            count,
            limit: GRID_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Every set whose points each carry one of `choices`, in lexicographic order.
fn per_point_product(shape: &Arc<Shape>, choices: &[Vec<Grade>]) -> Vec<MultiFuzzySet> {
    let points = shape.points();
    let mut digits = vec![0usize; points];
    let total = pow(choices.len() as u128, points) as usize;
    let mut out = Vec::with_capacity(total);
    for _ in 0..total {
        let grades: Box<[Grade]> = digits
            .iter()
            .flat_map(|&d| choices[d].iter().copied())
            .collect();
        out.push(MultiFuzzySet::from_parts(shape.clone(), grades));
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < choices.len() {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// Every chain-valued set of the shape.
pub fn all_sets(shape: &Arc<Shape>) -> Result<Vec<MultiFuzzySet>> {
    ensure_limit(grid_count(shape))?;
    Ok(per_point_product(shape, &all_tuples(shape)))
}

/// Every chain-valued set of the restricted class (no mixed point).
pub fn restricted_sets(shape: &Arc<Shape>) -> Result<Vec<MultiFuzzySet>> {
    ensure_limit(restricted_count(shape))?;
    let mut choices = vec![vec![Grade::ZERO; shape.dimension()]];
    choices.extend(positive_tuples(shape));
    Ok(per_point_product(shape, &choices))
}

/// The `D^n` non-null constant sets.
pub fn non_null_constants(shape: &Arc<Shape>) -> Vec<MultiFuzzySet> {
    positive_tuples(shape)
        .iter()
        .map(|t| {
            MultiFuzzySet::constant(shape.clone(), t).expect("tuple has the shape's dimension")
        })
        .collect()
}
