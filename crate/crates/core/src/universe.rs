use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::GradeChain;

/// A finite, nonempty set of labelled points in canonical order.
///
/// Plain universes are sorted lexicographically by label. Product universes
/// built by [`Universe::product`] are ordered lexicographically by pair, so the
/// point `(i, j)` sits at index `i * right.len() + j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].clone()));
        }
        Ok(Universe { labels })
    }

    /// `left x right` with labels `"(x,y)"`.
    pub fn product(left: &Universe, right: &Universe) -> Universe {
        let labels = left
            .labels
            .iter()
            .flat_map(|x| right.labels.iter().map(move |y| format!("({x},{y})")))
            .collect();
        Universe { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn point(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

/// Everything two multi-fuzzy sets must agree on before they can be combined:
/// the universe, the dimension `n` and the grade chain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    universe: Arc<Universe>,
    dimension: usize,
    chain: GradeChain,
}

impl Shape {
    pub fn new(universe: Arc<Universe>, dimension: usize, chain: GradeChain) -> Result<Arc<Self>> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Arc::new(Shape {
            universe,
            dimension,
            chain,
        }))
    }

    /// Convenience constructor used heavily in tests and examples.
    pub fn build<I, S>(labels: I, dimension: usize, denominator: u32) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Shape::new(
            Arc::new(Universe::new(labels)?),
            dimension,
            GradeChain::new(denominator)?,
        )
    }

    /// Same dimension and chain over a different universe.
    pub fn with_universe(&self, universe: Arc<Universe>) -> Arc<Self> {
        Arc::new(Shape {
            universe,
            dimension: self.dimension,
            chain: self.chain,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn chain(&self) -> GradeChain {
        self.chain
    }

    pub fn points(&self) -> usize {
        self.universe.len()
    }

    /// Number of grade cells in a set of this shape, `|X| * n`.
    pub fn cells(&self) -> usize {
        self.universe.len() * self.dimension
    }

    pub(crate) fn ensure_same(&self, other: &Shape, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(what.to_string()))
        }
    }

    pub(crate) fn ensure_compatible_grid(&self, other: &Shape, what: &str) -> Result<()> {
        if self.dimension == other.dimension && self.chain == other.chain {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(what.to_string()))
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "X={} n={} D={}",
            self.universe,
            self.dimension,
            self.chain.denominator()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_is_sorted_and_unique() {
        let u = Universe::new(["b", "a", "c"]).unwrap();
        assert_eq!(u.labels(), ["a", "b", "c"]);
        assert_eq!(u.index_of("c"), Some(2));
        assert!(matches!(
            Universe::new(["a", "a"]),
            Err(Error::DuplicatePoint(_))
        ));
        assert!(matches!(
            Universe::new(Vec::<String>::new()),
            Err(Error::EmptyUniverse)
        ));
        assert!(matches!(u.point("z"), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn product_universe_is_pair_ordered() {
        let x = Universe::new(["a", "b"]).unwrap();
        let y = Universe::new(["u", "v", "w"]).unwrap();
        let xy = Universe::product(&x, &y);
        assert_eq!(xy.len(), 6);
        assert_eq!(xy.label(3 + 2), "(b,w)");
    }

    #[test]
    fn shapes_compare_by_value() {
        let a = Shape::build(["a", "b"], 2, 3).unwrap();
        let b = Shape::build(["b", "a"], 2, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Shape::build(["a", "b"], 1, 3).unwrap());
        assert!(Shape::build(["a"], 0, 3).is_err());
    }
}
