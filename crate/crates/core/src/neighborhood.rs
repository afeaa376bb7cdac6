//! Multi-fuzzy neighbourhoods and neighbourhood systems.
//!
//! Neighbourhood families are quantified over every chain-valued set of the
//! shape (mixed positivity included); only restricted-class sets can become
//! open when a topology is rebuilt from a system.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::grid;
use crate::set::{canonicalize, family_contains, MultiFuzzySet};
use crate::topology::{MultiFuzzyTopology, TopologyKind, MAX_REPORTED};
use crate::universe::Shape;

/// A map from points to families of multi-fuzzy sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbdSystem {
    shape: Arc<Shape>,
    families: Vec<Vec<MultiFuzzySet>>,
}

impl NbdSystem {
    /// `families[x]` is the family of point `x` in universe order.
    pub fn new(shape: Arc<Shape>, families: Vec<Vec<MultiFuzzySet>>) -> Result<Self> {
        if families.len() != shape.points() {
            return Err(Error::TupleLength {
                expected: shape.points(),
                found: families.len(),
            });
        }
        let families = families
            .into_iter()
            .map(|family| {
                let mut family = family
                    .into_iter()
                    .map(|s| s.with_shape(shape.clone()))
                    .collect::<Result<Vec<_>>>()?;
                canonicalize(&mut family);
                Ok(family)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NbdSystem { shape, families })
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn family(&self, point: usize) -> &[MultiFuzzySet] {
        &self.families[point]
    }

    pub fn family_of(&self, label: &str) -> Result<&[MultiFuzzySet]> {
        Ok(self.family(self.shape.universe().point(label)?))
    }

    pub fn families(&self) -> &[Vec<MultiFuzzySet>] {
        &self.families
    }

    pub fn contains(&self, point: usize, set: &MultiFuzzySet) -> bool {
        family_contains(&self.families[point], set)
    }

    /// A copy with the family of `point` replaced.
    pub fn with_family(&self, point: usize, family: Vec<MultiFuzzySet>) -> Result<Self> {
        let mut families = self.families.clone();
        families[point] = family;
        NbdSystem::new(self.shape.clone(), families)
    }
}

fn contains_grades(family: &[MultiFuzzySet], grades: &[Grade]) -> bool {
    family.binary_search_by(|s| s.grades().cmp(grades)).is_ok()
}

fn leq_grades(a: &[Grade], b: &[Grade]) -> bool {
    a.iter().zip(b).all(|(g, h)| g <= h)
}

/// Points at which some open below `set` agrees with `set` and `set` is
/// strictly positive.
fn nbd_points(set: &MultiFuzzySet, opens: &[MultiFuzzySet]) -> Vec<bool> {
    let points = set.shape().points();
    let mut hit = vec![false; points];
    let positive: Vec<bool> = (0..points).map(|x| set.is_positive_at(x)).collect();
    if !positive.iter().any(|p| *p) {
        return hit;
    }
    for g in opens.iter().filter(|g| g.leq_raw(set)) {
        for x in 0..points {
            if positive[x] && !hit[x] && g.tuple(x) == set.tuple(x) {
                hit[x] = true;
            }
        }
    }
    hit
}

/// `set` is a neighbourhood of `point`: some open `G` below it agrees with it
/// at `point`, and that tuple is strictly positive.
pub fn is_nbd(set: &MultiFuzzySet, point: &str, topology: &MultiFuzzyTopology) -> Result<bool> {
    let x = topology.shape().universe().point(point)?;
    is_nbd_at(set, x, topology)
}

pub fn is_nbd_at(set: &MultiFuzzySet, point: usize, topology: &MultiFuzzyTopology) -> Result<bool> {
    topology
        .shape()
        .ensure_same(set.shape(), "neighbourhood test")?;
    if point >= topology.shape().points() {
        return Err(Error::UnknownPoint(format!("#{point}")));
    }
    Ok(set.is_positive_at(point)
        && topology
            .opens()
            .iter()
            .any(|g| g.leq_raw(set) && g.tuple(point) == set.tuple(point)))
}

/// Every chain-valued neighbourhood of `point`, canonically ordered.
pub fn nbd_family(topology: &MultiFuzzyTopology, point: &str) -> Result<Vec<MultiFuzzySet>> {
    let x = topology.shape().universe().point(point)?;
    Ok(grid::all_sets(topology.shape())?
        .into_iter()
        .filter(|f| {
            f.is_positive_at(x)
                && topology
                    .opens()
                    .iter()
                    .any(|g| g.leq_raw(f) && g.tuple(x) == f.tuple(x))
        })
        .collect())
}

/// The system `x -> nbd_family(topology, x)`.
pub fn nbd_from_topology(topology: &MultiFuzzyTopology) -> Result<NbdSystem> {
    let shape = topology.shape().clone();
    let mut families = vec![Vec::new(); shape.points()];
    for f in grid::all_sets(&shape)? {
        let hits = nbd_points(&f, topology.opens());
        for (x, hit) in hits.into_iter().enumerate() {
            if hit {
                families[x].push(f.clone());
            }
        }
    }
    // grid order is canonical, so the families are already sorted
    Ok(NbdSystem { shape, families })
}

/// The five neighbourhood-system axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NbdAxiom {
    N1,
    N2,
    N3,
    N4,
    N5,
}

impl fmt::Display for NbdAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which axioms [`verify_nbd_axioms_with`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NbdChecks {
    pub n1: bool,
    pub n2: bool,
    pub n3: bool,
    pub n4: bool,
    pub n5: bool,
}

impl Default for NbdChecks {
    fn default() -> Self {
        NbdChecks {
            n1: true,
            n2: true,
            n3: true,
            n4: true,
            n5: true,
        }
    }
}

impl NbdChecks {
    pub fn without(mut self, axiom: NbdAxiom) -> Self {
        match axiom {
            NbdAxiom::N1 => self.n1 = false,
            NbdAxiom::N2 => self.n2 = false,
            NbdAxiom::N3 => self.n3 = false,
            NbdAxiom::N4 => self.n4 = false,
            NbdAxiom::N5 => self.n5 = false,
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NbdViolation {
    pub axiom: NbdAxiom,
    pub point: String,
    /// The offending sets: the missing constant (N1), the non-positive
    /// member (N2), the pair and their meet (N3), the forced set (N4), or the
    /// member without an inner witness (N5).
    pub sets: Vec<MultiFuzzySet>,
}

impl fmt::Display for NbdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}:", self.axiom, self.point)?;
        for s in &self.sets {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct NbdReport {
    pub violations: Vec<NbdViolation>,
    pub truncated: bool,
}

impl NbdReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: NbdAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, counts: &mut [usize; 5], violation: NbdViolation) {
        let slot = &mut counts[violation.axiom as usize];
        *slot += 1;
        if *slot <= MAX_REPORTED {
            self.violations.push(violation);
        } else {
            self.truncated = true;
        }
    }
}

impl fmt::Display for NbdReport {
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

/// How the premise of N4 is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum N4Premise {
    /// For each coordinate `i` some member below `F` reaches `F_i(x)`.
    Attainment,
    /// For each coordinate `i` and each threshold `0 < r < F_i(x)` some
    /// member below `F` exceeds `r` in coordinate `i`. Thresholds range over
    /// one representative per open gap of the chain, which covers every
    /// real `r`.
    Thresholds,
}

/// Whether the N4 premise holds for `set` at `point` against `family`.
pub fn n4_premise(
    family: &[MultiFuzzySet],
    set: &MultiFuzzySet,
    point: usize,
    form: N4Premise,
) -> bool {
    let below: Vec<&MultiFuzzySet> = family.iter().filter(|m| m.leq_raw(set)).collect();
    let target = set.tuple(point);
    match form {
        N4Premise::Attainment => {
            (0..target.len()).all(|i| below.iter().any(|m| m.grade(point, i) == target[i]))
        }
        N4Premise::Thresholds => (0..target.len()).all(|i| {
            // r = (2k + 1) / 2D for k < F_i(x); "grade > r" is "2 * grade > 2k + 1"
            let top = u32::from(target[i].numerator());
            (0..top).all(|k| {
                below
                    .iter()
                    .any(|m| 2 * u32::from(m.grade(point, i).numerator()) > 2 * k + 1)
            })
        }),
    }
}

/// Checks N1-N5 at every point.
pub fn verify_nbd_axioms(system: &NbdSystem) -> Result<NbdReport> {
    verify_nbd_axioms_with(system, NbdChecks::default())
}

/// Checks the selected axioms. N4 is evaluated on every chain-valued set
/// positive at the point, in its attainment form. The N5 witness must lie in
/// the restricted class so that it can be open in the rebuilt topology.
pub fn verify_nbd_axioms_with(system: &NbdSystem, checks: NbdChecks) -> Result<NbdReport> {
    let shape = system.shape.clone();
    let universe = shape.universe().clone();
    let mut report = NbdReport::default();
    let mut counts = [0usize; 5];
    let constants = grid::non_null_constants(&shape);
    let grid_sets = if checks.n4 {
        grid::all_sets(&shape)?
    } else {
        Vec::new()
    };
    let cells = shape.cells();
    let mut scratch = vec![Grade::ZERO; cells];

    for x in 0..shape.points() {
        let label = universe.label(x).to_string();
        let family = &system.families[x];
        let violation = |axiom, sets| NbdViolation {
            axiom,
            point: label.clone(),
            sets,
        };

        if checks.n1 {
            for c in constants.iter().filter(|c| !family_contains(family, c)) {
                report.push(&mut counts, violation(NbdAxiom::N1, vec![c.clone()]));
            }
        }
        if checks.n2 {
            for m in family.iter().filter(|m| !m.is_positive_at(x)) {
                report.push(&mut counts, violation(NbdAxiom::N2, vec![m.clone()]));
            }
        }
        if checks.n3 {
            for (i, a) in family.iter().enumerate() {
                for b in &family[i + 1..] {
                    for (slot, (g, h)) in scratch.iter_mut().zip(a.grades().iter().zip(b.grades()))
                    {
                        *slot = (*g).min(*h);
                    }
                    if !contains_grades(family, &scratch) {
                        let meet = a.meet_raw(b);
                        report.push(
                            &mut counts,
                            violation(NbdAxiom::N3, vec![a.clone(), b.clone(), meet]),
                        );
                    }
                }
            }
        }
        if checks.n4 {
            for f in grid_sets.iter().filter(|f| f.is_positive_at(x)) {
                if !contains_grades(family, f.grades())
                    && n4_premise(family, f, x, N4Premise::Attainment)
                {
                    report.push(&mut counts, violation(NbdAxiom::N4, vec![f.clone()]));
                }
            }
        }
        if checks.n5 {
            let witnesses: Vec<&MultiFuzzySet> = family
                .iter()
                .filter(|g| {
                    g.in_restricted_class()
                        && (0..shape.points()).all(|y| {
                            !g.is_positive_at(y) || family_contains(&system.families[y], g)
                        })
                })
                .collect();
            for n in family {
                let found = witnesses
                    .iter()
                    .any(|g| g.tuple(x) == n.tuple(x) && leq_grades(g.grades(), n.grades()));
                if !found {
                    report.push(&mut counts, violation(NbdAxiom::N5, vec![n.clone()]));
                }
            }
        }
    }
    Ok(report)
}

/// The topology of a neighbourhood system: the null set plus every
/// restricted-class set that belongs to the family of each point where it is
/// positive. Fails if the system violates N1-N5.
pub fn topology_from_nbd(system: &NbdSystem) -> Result<MultiFuzzyTopology> {
    let report = verify_nbd_axioms(system)?;
    if !report.is_ok() {
        return Err(Error::InvalidNbdSystem(Box::new(report)));
    }
    topology_from_nbd_unchecked(system)
}

/// [`topology_from_nbd`] without validating the system first. The result
/// is not guaranteed to satisfy the topology axioms.
pub fn topology_from_nbd_unchecked(system: &NbdSystem) -> Result<MultiFuzzyTopology> {
    let shape = system.shape.clone();
    let points = shape.points();
    let opens: Vec<MultiFuzzySet> = grid::restricted_sets(&shape)?
        .into_iter()
        .filter(|g| {
            g.is_null()
                || (0..points)
                    .all(|x| !g.is_positive_at(x) || family_contains(&system.families[x], g))
        })
        .collect();
    MultiFuzzyTopology::from_opens_unchecked(shape, TopologyKind::Lowen, opens)
}

/// Openness through neighbourhood witnesses: for every point where `set` is
/// positive some open below it agrees with it there. `set` must lie in the
/// restricted class.
pub fn open_via_nbd(set: &MultiFuzzySet, topology: &MultiFuzzyTopology) -> Result<bool> {
    topology.shape().ensure_same(set.shape(), "openness test")?;
    if let Some(x) = set.first_mixed_point() {
        return Err(Error::NotRestricted(
            topology.shape().universe().label(x).to_string(),
        ));
    }
    Ok((0..set.shape().points())
        .filter(|&x| set.is_positive_at(x))
        .all(|x| {
            topology
                .opens()
                .iter()
                .any(|f| f.leq_raw(set) && f.tuple(x) == set.tuple(x))
        }))
}
