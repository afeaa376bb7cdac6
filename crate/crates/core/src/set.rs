//! Multi-fuzzy sets over a finite universe and their lattice algebra.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::universe::Shape;

/// Where a tuple `mu_F(x)` sits relative to the zero tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Positivity {
    /// Every coordinate is strictly positive.
    AllPositive,
    /// Every coordinate is zero.
    AllZero,
    /// Some coordinates are zero and some are not.
    Mixed,
}

impl Positivity {
    pub fn of(tuple: &[Grade]) -> Positivity {
        let positive = tuple.iter().filter(|g| g.is_positive()).count();
        if positive == tuple.len() {
            Positivity::AllPositive
        } else if positive == 0 {
            Positivity::AllZero
        } else {
            Positivity::Mixed
        }
    }
}

/// A multi-fuzzy set: one `n`-tuple of chain grades per universe point.
///
/// Grades are stored point-major in universe order, so the tuple of point `x`
/// is `grades[x * n .. (x + 1) * n]`. Equality is pointwise tuple equality;
/// the total order is lexicographic on that flat table and is what every
/// family in this crate is sorted by.
#[derive(Clone)]
pub struct MultiFuzzySet {
    shape: Arc<Shape>,
    grades: Box<[Grade]>,
}

impl PartialEq for MultiFuzzySet {
    fn eq(&self, other: &Self) -> bool {
        self.grades == other.grades
            && (Arc::ptr_eq(&self.shape, &other.shape) || self.shape == other.shape)
    }
}

impl Eq for MultiFuzzySet {}

impl Hash for MultiFuzzySet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.grades.hash(state);
    }
}

impl PartialOrd for MultiFuzzySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiFuzzySet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grades.cmp(&other.grades).then_with(|| {
            if Arc::ptr_eq(&self.shape, &other.shape) {
                Ordering::Equal
            } else {
                self.shape.cmp(&other.shape)
            }
        })
    }
}

impl MultiFuzzySet {
    /// Builds a set from its flat point-major grade table.
    pub fn from_grades(shape: Arc<Shape>, grades: Vec<Grade>) -> Result<Self> {
        if grades.len() != shape.cells() {
            return Err(Error::TupleLength {
                expected: shape.cells(),
                found: grades.len(),
            });
        }
        let chain = shape.chain();
        if let Some(g) = grades.iter().find(|g| !chain.contains(**g)) {
            return Err(Error::GradeOffChain {
                value: format!("{}/{}", g.numerator(), chain.denominator()),
                denominator: chain.denominator(),
            });
        }
        Ok(MultiFuzzySet {
            shape,
            grades: grades.into_boxed_slice(),
        })
    }

    /// Builds a set cell by cell. `grade(point, coordinate)` must return
    /// grades of the shape's chain.
    pub fn from_fn(shape: Arc<Shape>, mut grade: impl FnMut(usize, usize) -> Grade) -> Self {
        let n = shape.dimension();
        let grades: Box<[Grade]> = (0..shape.cells()).map(|c| grade(c / n, c % n)).collect();
        debug_assert!(grades.iter().all(|g| shape.chain().contains(*g)));
        MultiFuzzySet { shape, grades }
    }

    /// Builds a set from chain numerators, one row per point in universe order.
    pub fn from_numerators(shape: Arc<Shape>, rows: &[&[u32]]) -> Result<Self> {
        if rows.len() != shape.points() {
            return Err(Error::TupleLength {
                expected: shape.points(),
                found: rows.len(),
            });
        }
        let chain = shape.chain();
        let mut grades = Vec::with_capacity(shape.cells());
        for row in rows {
            if row.len() != shape.dimension() {
                return Err(Error::TupleLength {
                    expected: shape.dimension(),
                    found: row.len(),
                });
            }
            for &k in *row {
                grades.push(chain.grade(k)?);
            }
        }
        MultiFuzzySet::from_grades(shape, grades)
    }

    /// Builds a set from `(label, numerators)` rows. Every point must appear
    /// exactly once.
    pub fn from_rows(shape: Arc<Shape>, rows: &[(&str, &[u32])]) -> Result<Self> {
        let universe = shape.universe().clone();
        let mut table: Vec<Option<&[u32]>> = vec![None; universe.len()];
        for (label, tuple) in rows {
            let x = universe.point(label)?;
            if table[x].replace(tuple).is_some() {
                return Err(Error::DuplicatePoint((*label).to_string()));
            }
        }
        let ordered = table
            .iter()
            .enumerate()
            .map(|(x, t)| t.ok_or_else(|| Error::MissingPoint(universe.label(x).to_string())))
            .collect::<Result<Vec<_>>>()?;
        MultiFuzzySet::from_numerators(shape, &ordered)
    }

    /// The null set `Phi`.
    pub fn null(shape: Arc<Shape>) -> Self {
        MultiFuzzySet::from_fn(shape, |_, _| Grade::ZERO)
    }

    /// The absolute set `X-bar`.
    pub fn absolute(shape: Arc<Shape>) -> Self {
        let top = shape.chain().top();
        MultiFuzzySet::from_fn(shape, |_, _| top)
    }

    /// Every point carries `tuple`.
    pub fn constant(shape: Arc<Shape>, tuple: &[Grade]) -> Result<Self> {
        if tuple.len() != shape.dimension() {
            return Err(Error::TupleLength {
                expected: shape.dimension(),
                found: tuple.len(),
            });
        }
        let grades = (0..shape.points())
            .flat_map(|_| tuple.iter().copied())
            .collect();
        MultiFuzzySet::from_grades(shape, grades)
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn tuple(&self, point: usize) -> &[Grade] {
        let n = self.shape.dimension();
        &self.grades[point * n..(point + 1) * n]
    }

    pub fn grade(&self, point: usize, coordinate: usize) -> Grade {
        self.grades[point * self.shape.dimension() + coordinate]
    }

    pub fn tuple_of(&self, label: &str) -> Result<&[Grade]> {
        Ok(self.tuple(self.shape.universe().point(label)?))
    }

    /// Re-labels the set onto an equal shape (same universe by value).
    pub fn with_shape(&self, shape: Arc<Shape>) -> Result<Self> {
        self.shape.ensure_same(&shape, "re-shaping a set")?;
        Ok(MultiFuzzySet {
            shape,
            grades: self.grades.clone(),
        })
    }

    /// Pointwise, coordinatewise minimum.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.shape.ensure_same(&other.shape, "meet")?;
        Ok(self.meet_raw(other))
    }

    /// Pointwise, coordinatewise maximum over a nonempty family.
    pub fn join<'a, I>(family: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a MultiFuzzySet>,
    {
        let mut iter = family.into_iter();
        let first = iter.next().ok_or(Error::EmptyFamily)?;
        let mut grades = first.grades.to_vec();
        for set in iter {
            first.shape.ensure_same(&set.shape, "join")?;
            for (g, h) in grades.iter_mut().zip(set.grades.iter()) {
                *g = (*g).max(*h);
            }
        }
        Ok(MultiFuzzySet {
            shape: first.shape.clone(),
            grades: grades.into_boxed_slice(),
        })
    }

    /// Binary join.
    pub fn join_with(&self, other: &Self) -> Result<Self> {
        self.shape.ensure_same(&other.shape, "join")?;
        Ok(self.join_raw(other))
    }

    /// Each grade `k/D` becomes `(D - k)/D`.
    pub fn complement(&self) -> Self {
        let chain = self.shape.chain();
        MultiFuzzySet {
            shape: self.shape.clone(),
            grades: self.grades.iter().map(|g| chain.complement(*g)).collect(),
        }
    }

    /// `self` is a multi-fuzzy subset of `other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.shape.ensure_same(&other.shape, "inclusion")?;
        Ok(self.leq_raw(other))
    }

    pub fn positivity_at(&self, point: usize) -> Positivity {
        Positivity::of(self.tuple(point))
    }

    pub fn positivity_of(&self, label: &str) -> Result<Positivity> {
        Ok(self.positivity_at(self.shape.universe().point(label)?))
    }

    /// `mu_F(x)` is strictly positive in every coordinate.
    pub fn is_positive_at(&self, point: usize) -> bool {
        self.tuple(point).iter().all(|g| g.is_positive())
    }

    /// Membership in the restricted class: at every point the tuple is
    /// either all positive or all zero.
    pub fn in_restricted_class(&self) -> bool {
        self.first_mixed_point().is_none()
    }

    pub fn first_mixed_point(&self) -> Option<usize> {
        (0..self.shape.points()).find(|&x| self.positivity_at(x) == Positivity::Mixed)
    }

    pub fn is_null(&self) -> bool {
        self.grades.iter().all(|g| g.is_zero())
    }

    pub fn is_absolute(&self) -> bool {
        let chain = self.shape.chain();
        self.grades.iter().all(|g| chain.is_top(*g))
    }

    /// The common tuple if every point carries the same one.
    pub fn as_constant(&self) -> Option<&[Grade]> {
        let first = self.tuple(0);
        (1..self.shape.points())
            .all(|x| self.tuple(x) == first)
            .then_some(first)
    }

    /// A constant set whose tuple has no zero coordinate.
    pub fn is_non_null_constant(&self) -> bool {
        self.as_constant()
            .is_some_and(|t| t.iter().all(|g| g.is_positive()))
    }

    /// Canonical text form, e.g. `[a:(1/2,1/1), b:(0/1,1/1)]`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    pub(crate) fn meet_raw(&self, other: &Self) -> Self {
        MultiFuzzySet {
            shape: self.shape.clone(),
            grades: self
                .grades
                .iter()
                .zip(other.grades.iter())
                .map(|(g, h)| (*g).min(*h))
                .collect(),
        }
    }

    pub(crate) fn join_raw(&self, other: &Self) -> Self {
        MultiFuzzySet {
            shape: self.shape.clone(),
            grades: self
                .grades
                .iter()
                .zip(other.grades.iter())
                .map(|(g, h)| (*g).max(*h))
                .collect(),
        }
    }

    pub(crate) fn leq_raw(&self, other: &Self) -> bool {
        self.grades
            .iter()
            .zip(other.grades.iter())
            .all(|(g, h)| g <= h)
    }

    pub(crate) fn from_parts(shape: Arc<Shape>, grades: Box<[Grade]>) -> Self {
        debug_assert_eq!(grades.len(), shape.cells());
        MultiFuzzySet { shape, grades }
    }
}

impl fmt::Debug for MultiFuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiFuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain = self.shape.chain();
        let universe = self.shape.universe();
        write!(f, "[")?;
        for x in 0..universe.len() {
            if x > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:(", universe.label(x))?;
            for (i, g) in self.tuple(x).iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", chain.format(*g))?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

/// Sorts and deduplicates a family into canonical order.
pub fn canonicalize(family: &mut Vec<MultiFuzzySet>) {
    family.sort();
    family.dedup();
}

/// Membership in a canonically ordered family.
pub fn family_contains(family: &[MultiFuzzySet], set: &MultiFuzzySet) -> bool {
    family.binary_search(set).is_ok()
}
