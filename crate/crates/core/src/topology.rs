//! Lowen-type (and Chang-type) multi-fuzzy topologies on a finite grid.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid;
use crate::set::{canonicalize, family_contains, MultiFuzzySet};
use crate::universe::Shape;

/// Which axiom set a topology satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    /// Opens are in the restricted class; the null set and every non-null
    /// constant are open.
    Lowen,
    /// The null and absolute sets are open; no restriction on members.
    Chang,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::Lowen => "lowen",
            TopologyKind::Chang => "chang",
        })
    }
}

/// Violations past this count per category are dropped from a report.
pub const MAX_REPORTED: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum AxiomViolation {
    NotRestricted {
        set: MultiFuzzySet,
        point: String,
    },
    MissingNull,
    MissingAbsolute,
    MissingConstant(MultiFuzzySet),
    MeetNotClosed {
        left: MultiFuzzySet,
        right: MultiFuzzySet,
        meet: MultiFuzzySet,
    },
    JoinNotClosed {
        left: MultiFuzzySet,
        right: MultiFuzzySet,
        join: MultiFuzzySet,
    },
    TotalJoinMissing(MultiFuzzySet),
}

impl AxiomViolation {
    /// Short machine-readable category name.
    pub fn code(&self) -> &'static str {
        match self {
            AxiomViolation::NotRestricted { .. } => "not-restricted",
            AxiomViolation::MissingNull => "missing-null",
            AxiomViolation::MissingAbsolute => "missing-absolute",
            AxiomViolation::MissingConstant(_) => "missing-constant",
            AxiomViolation::MeetNotClosed { .. } => "meet-not-closed",
            AxiomViolation::JoinNotClosed { .. } => "join-not-closed",
            AxiomViolation::TotalJoinMissing(_) => "total-join-missing",
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NotRestricted { set, point } => {
                write!(f, "{set} has mixed positivity at {point}")
            }
            AxiomViolation::MissingNull => write!(f, "missing null set"),
            AxiomViolation::MissingAbsolute => write!(f, "missing absolute set"),
            AxiomViolation::MissingConstant(c) => write!(f, "missing constant {c}"),
            AxiomViolation::MeetNotClosed { left, right, meet } => {
                write!(f, "meet of {left} and {right} is {meet}, not a member")
            }
            AxiomViolation::JoinNotClosed { left, right, join } => {
                write!(f, "join of {left} and {right} is {join}, not a member")
            }
            AxiomViolation::TotalJoinMissing(j) => {
                write!(f, "join of the whole family {j} is not a member")
            }
        }
    }
}

/// Outcome of [`verify_axioms`].
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub kind: TopologyKind,
    pub violations: Vec<AxiomViolation>,
    /// Some closure violations were not recorded.
    pub truncated: bool,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        if self.truncated {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

/// Checks a candidate family against the axioms of `kind`.
///
/// Closure under unions of arbitrary subfamilies is checked as closure under
/// binary joins plus membership of the join of the whole family, which is
/// equivalent for a finite family.
pub fn verify_axioms(
    shape: &Arc<Shape>,
    candidate: &[MultiFuzzySet],
    kind: TopologyKind,
) -> Result<AxiomReport> {
    for set in candidate {
        shape.ensure_same(set.shape(), "candidate member")?;
    }
    let mut family = candidate.to_vec();
    canonicalize(&mut family);

    let mut violations = Vec::new();
    let mut truncated = false;

    if kind == TopologyKind::Lowen {
        for set in &family {
            if let Some(x) = set.first_mixed_point() {
                violations.push(AxiomViolation::NotRestricted {
                    set: set.clone(),
                    point: shape.universe().label(x).to_string(),
                });
            }
        }
    }
    if !family_contains(&family, &MultiFuzzySet::null(shape.clone())) {
        violations.push(AxiomViolation::MissingNull);
    }
    match kind {
        TopologyKind::Lowen => {
            for c in grid::non_null_constants(shape) {
                if !family_contains(&family, &c) {
                    violations.push(AxiomViolation::MissingConstant(c));
                }
            }
        }
        TopologyKind::Chang => {
            if !family_contains(&family, &MultiFuzzySet::absolute(shape.clone())) {
                violations.push(AxiomViolation::MissingAbsolute);
            }
        }
    }

    let mut meets = 0;
    let mut joins = 0;
    for (i, left) in family.iter().enumerate() {
        for right in &family[i + 1..] {
            let meet = left.meet_raw(right);
            if !family_contains(&family, &meet) {
                meets += 1;
                if meets <= MAX_REPORTED {
                    violations.push(AxiomViolation::MeetNotClosed {
                        left: left.clone(),
                        right: right.clone(),
                        meet,
                    });
                } else {
                    truncated = true;
                }
            }
            let join = left.join_raw(right);
            if !family_contains(&family, &join) {
                joins += 1;
                if joins <= MAX_REPORTED {
                    violations.push(AxiomViolation::JoinNotClosed {
                        left: left.clone(),
                        right: right.clone(),
                        join,
                    });
                } else {
                    truncated = true;
                }
            }
        }
    }
    if let Ok(total) = MultiFuzzySet::join(&family) {
        if !family_contains(&family, &total) {
            violations.push(AxiomViolation::TotalJoinMissing(total));
        }
    }

    Ok(AxiomReport {
        kind,
        violations,
        truncated,
    })
}

/// A finite multi-fuzzy topology: a canonically ordered family of open sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFuzzyTopology {
    shape: Arc<Shape>,
    kind: TopologyKind,
    opens: Vec<MultiFuzzySet>,
}

impl MultiFuzzyTopology {
    /// Validates `opens` against the axioms of `kind`.
    pub fn new(shape: Arc<Shape>, kind: TopologyKind, opens: Vec<MultiFuzzySet>) -> Result<Self> {
        let report = verify_axioms(&shape, &opens, kind)?;
        if !report.is_ok() {
            return Err(Error::InvalidTopology(Box::new(report)));
        }
        MultiFuzzyTopology::from_opens_unchecked(shape, kind, opens)
    }

    /// Canonicalises `opens` without checking the axioms. Shapes are still
    /// checked.
    pub fn from_opens_unchecked(
        shape: Arc<Shape>,
        kind: TopologyKind,
        opens: Vec<MultiFuzzySet>,
    ) -> Result<Self> {
        let mut family = opens
            .into_iter()
            .map(|s| s.with_shape(shape.clone()))
            .collect::<Result<Vec<_>>>()?;
        canonicalize(&mut family);
        Ok(MultiFuzzyTopology {
            shape,
            kind,
            opens: family,
        })
    }

    /// The smallest Lowen topology containing `seeds`.
    pub fn generate(shape: Arc<Shape>, seeds: &[MultiFuzzySet]) -> Result<Self> {
        MultiFuzzyTopology::generate_with_kind(shape, TopologyKind::Lowen, seeds)
    }

    /// The smallest topology of `kind` containing `seeds`: the required
    /// members are added and the family is closed under binary meets and
    /// joins.
    pub fn generate_with_kind(
        shape: Arc<Shape>,
        kind: TopologyKind,
        seeds: &[MultiFuzzySet],
    ) -> Result<Self> {
        let mut start = Vec::with_capacity(seeds.len() + 2);
        for seed in seeds {
            shape.ensure_same(seed.shape(), "seed")?;
            if kind == TopologyKind::Lowen {
                if let Some(x) = seed.first_mixed_point() {
                    return Err(Error::NotRestricted(shape.universe().label(x).to_string()));
                }
            }
            start.push(seed.with_shape(shape.clone())?);
        }
        start.push(MultiFuzzySet::null(shape.clone()));
        match kind {
            TopologyKind::Lowen => start.extend(grid::non_null_constants(&shape)),
            TopologyKind::Chang => start.push(MultiFuzzySet::absolute(shape.clone())),
        }
        let mut opens = close_under_meet_and_join(start);
        canonicalize(&mut opens);
        Ok(MultiFuzzyTopology { shape, kind, opens })
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn opens(&self) -> &[MultiFuzzySet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    /// Exact membership.
    pub fn contains(&self, set: &MultiFuzzySet) -> bool {
        family_contains(&self.opens, set)
    }

    pub fn verify(&self) -> AxiomReport {
        verify_axioms(&self.shape, &self.opens, self.kind)
            .expect("opens share the topology's shape")
    }

    /// `set` is closed iff its complement is open.
    pub fn is_closed(&self, set: &MultiFuzzySet) -> Result<bool> {
        self.shape.ensure_same(set.shape(), "closed-set test")?;
        Ok(self.contains(&set.complement()))
    }

    /// Complements of the opens, canonically ordered.
    pub fn closed_sets(&self) -> Vec<MultiFuzzySet> {
        let mut closed: Vec<_> = self.opens.iter().map(MultiFuzzySet::complement).collect();
        canonicalize(&mut closed);
        closed
    }

    /// Every open except the null set is the join of the members of `base`
    /// below it. The null set is the empty union.
    pub fn is_open_base(&self, base: &[MultiFuzzySet]) -> Result<bool> {
        for b in base {
            self.shape.ensure_same(b.shape(), "base member")?;
            if !self.contains(b) {
                return Err(Error::NotASubfamily);
            }
        }
        Ok(self
            .opens
            .iter()
            .filter(|g| !g.is_null())
            .all(|g| join_below(base, g).as_ref() == Some(g)))
    }

    /// The join-irreducible opens: those that differ from the join of all
    /// opens strictly below them. They form the smallest open base.
    pub fn minimal_base(&self) -> Vec<MultiFuzzySet> {
        self.opens
            .iter()
            .filter(|g| !g.is_null())
            .filter(|g| {
                let below = self.opens.iter().filter(|h| *h != *g && h.leq_raw(g)).fold(
                    None::<MultiFuzzySet>,
                    |acc, h| {
                        Some(match acc {
                            Some(a) => a.join_raw(h),
                            None => h.clone(),
                        })
                    },
                );
                below.as_ref() != Some(*g)
            })
            .cloned()
            .collect()
    }

    /// The join of every open below `set`, i.e. the largest open contained in
    /// it. Only meaningful for join-closed families.
    pub fn largest_open_below(&self, set: &MultiFuzzySet) -> MultiFuzzySet {
        join_below(&self.opens, set).unwrap_or_else(|| MultiFuzzySet::null(self.shape.clone()))
    }
}

/// Join of the members of `family` contained in `set`, if any.
fn join_below(family: &[MultiFuzzySet], set: &MultiFuzzySet) -> Option<MultiFuzzySet> {
    family
        .iter()
        .filter(|b| b.leq_raw(set))
        .fold(None, |acc: Option<MultiFuzzySet>, b| {
            Some(match acc {
                Some(a) => a.join_raw(b),
                None => b.clone(),
            })
        })
}

/// Closes a family under binary meets and joins. Each new element is
/// combined with everything found before it, so every pair is visited once.
pub(crate) fn close_under_meet_and_join(start: Vec<MultiFuzzySet>) -> Vec<MultiFuzzySet> {
    let mut seen: HashSet<MultiFuzzySet> = HashSet::with_capacity(start.len() * 2);
    let mut list = Vec::with_capacity(start.len() * 2);
    for s in start {
        if seen.insert(s.clone()) {
            list.push(s);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            for candidate in [list[i].meet_raw(&list[j]), list[i].join_raw(&list[j])] {
                if !seen.contains(&candidate) {
                    seen.insert(candidate.clone());
                    list.push(candidate);
                }
            }
        }
        i += 1;
    }
    list
}

/// Set intersection of topologies over one shape and kind.
pub fn intersect_topologies(family: &[&MultiFuzzyTopology]) -> Result<MultiFuzzyTopology> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    for t in &family[1..] {
        first
            .shape
            .ensure_same(&t.shape, "intersected topologies")?;
        if t.kind != first.kind {
            return Err(Error::KindMismatch);
        }
    }
    let opens: Vec<MultiFuzzySet> = first
        .opens
        .iter()
        .filter(|g| family[1..].iter().all(|t| t.contains(g)))
        .cloned()
        .collect();
    MultiFuzzyTopology::new(first.shape.clone(), first.kind, opens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape() -> Arc<Shape> {
        Shape::build(["a", "b"], 1, 2).unwrap()
    }

    fn s(a: u32, b: u32) -> MultiFuzzySet {
        MultiFuzzySet::from_rows(shape(), &[("a", &[a]), ("b", &[b])]).unwrap()
    }

    #[test]
    fn missing_constant_is_reported() {
        let report = verify_axioms(&shape(), &[s(0, 0), s(2, 2)], TopologyKind::Lowen).unwrap();
        assert_eq!(
            report.violations,
            vec![AxiomViolation::MissingConstant(s(1, 1))]
        );
        assert_eq!(report.to_string(), "missing constant [a:(1/2), b:(1/2)]");
    }

    #[test]
    fn chang_requires_absolute() {
        let report = verify_axioms(&shape(), &[s(0, 0), s(1, 1)], TopologyKind::Chang).unwrap();
        assert_eq!(report.violations, vec![AxiomViolation::MissingAbsolute]);
        assert!(
            verify_axioms(&shape(), &[s(0, 0), s(2, 2)], TopologyKind::Chang)
                .unwrap()
                .is_ok()
        );
    }

    #[test]
    fn closure_violations_name_the_pair() {
        let family = [s(0, 0), s(1, 1), s(2, 2), s(2, 0), s(0, 2)];
        let report = verify_axioms(&shape(), &family, TopologyKind::Lowen).unwrap();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            AxiomViolation::MeetNotClosed { meet, .. } if *meet == s(1, 0)
        )));
    }

    #[test]
    fn mixed_sets_are_not_lowen_open() {
        let shape = Shape::build(["a"], 2, 1).unwrap();
        let mixed = MultiFuzzySet::from_rows(shape.clone(), &[("a", &[1, 0])]).unwrap();
        assert!(matches!(
            MultiFuzzyTopology::generate(shape.clone(), std::slice::from_ref(&mixed)),
            Err(Error::NotRestricted(_))
        ));
        let chang =
            MultiFuzzyTopology::generate_with_kind(shape, TopologyKind::Chang, &[mixed]).unwrap();
        assert_eq!(chang.len(), 3);
        assert!(chang.verify().is_ok());
    }

    #[test]
    fn closed_sets() {
        let tau = MultiFuzzyTopology::generate(shape(), &[s(2, 1)]).unwrap();
        assert!(tau.is_closed(&s(1, 1)).unwrap());
        assert!(tau.is_closed(&s(0, 0)).unwrap());
        assert!(!tau.is_closed(&s(2, 1)).unwrap());
        assert_eq!(tau.closed_sets().len(), tau.len());
    }

    #[test]
    fn base_must_be_a_subfamily() {
        let tau = MultiFuzzyTopology::generate(shape(), &[]).unwrap();
        assert_eq!(tau.is_open_base(&[s(2, 1)]), Err(Error::NotASubfamily));
    }

    #[test]
    fn intersection_rejects_kind_mismatch() {
        let lowen = MultiFuzzyTopology::generate(shape(), &[]).unwrap();
        let chang =
            MultiFuzzyTopology::generate_with_kind(shape(), TopologyKind::Chang, &[]).unwrap();
        assert_eq!(
            intersect_topologies(&[&lowen, &chang]),
            Err(Error::KindMismatch)
        );
    }
}
