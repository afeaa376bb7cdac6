//! Covers, finite subcovers and compactness checks.
//!
//! A family covers a target set `F` when `F <= join(family)`, and covers a
//! crisp subset `Q` of points when, for every `x` in `Q` and every coordinate,
//! some member reaches grade 1. Both reduce to a set-cover problem over grade
//! cells: a member covers cell `(x, i)` when its grade there reaches the
//! threshold of the cell.

use std::sync::Arc;

use itertools::Itertools;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::product::ProductSpace;
use crate::set::MultiFuzzySet;
use crate::topology::MultiFuzzyTopology;
use crate::universe::Shape;

/// What a cover has to cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverTarget {
    /// Domination of a multi-fuzzy set.
    Set(MultiFuzzySet),
    /// Grade 1 in every coordinate at each listed point.
    Points(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    shape: Arc<Shape>,
    target: CoverTarget,
    family: Vec<MultiFuzzySet>,
}

/// Exhaustive minimum search is used up to this many members.
pub const EXHAUSTIVE_SUBCOVER_LIMIT: usize = 12;

/// A fixed-width bitset over grade cells.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cells(Box<[u64]>);

impl Cells {
    fn empty(len: usize) -> Self {
        Cells(vec![0; len.div_ceil(64).max(1)].into_boxed_slice())
    }

    fn set(&mut self, bit: usize) {
        self.0[bit / 64] |= 1 << (bit % 64);
    }

    fn get(&self, bit: usize) -> bool {
        self.0[bit / 64] >> (bit % 64) & 1 == 1
    }

    fn or_assign(&mut self, other: &Cells) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a |= *b;
        }
    }

    fn count_new(&self, other: &Cells) -> u32 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (!a & b).count_ones())
            .sum()
    }

    fn contains(&self, other: &Cells) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & b == *b)
    }
}

impl Cover {
    /// A cover of the multi-fuzzy set `target`.
    pub fn of_set(target: MultiFuzzySet, family: Vec<MultiFuzzySet>) -> Result<Self> {
        let shape = target.shape().clone();
        Cover::build(shape, CoverTarget::Set(target), family)
    }

    /// A cover of the points `labels`.
    pub fn of_points(
        shape: Arc<Shape>,
        labels: &[&str],
        family: Vec<MultiFuzzySet>,
    ) -> Result<Self> {
        let mut points = labels
            .iter()
            .map(|l| shape.universe().point(l))
            .collect::<Result<Vec<_>>>()?;
        points.sort_unstable();
        points.dedup();
        Cover::build(shape, CoverTarget::Points(points), family)
    }

    /// A cover of the whole universe (every point, grade 1).
    pub fn of_space(shape: Arc<Shape>, family: Vec<MultiFuzzySet>) -> Result<Self> {
        let points = (0..shape.points()).collect();
        Cover::build(shape, CoverTarget::Points(points), family)
    }

    fn build(shape: Arc<Shape>, target: CoverTarget, family: Vec<MultiFuzzySet>) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for set in &family {
            shape.ensure_same(set.shape(), "cover member")?;
        }
        Ok(Cover {
            shape,
            target,
            family,
        })
    }

    pub fn target(&self) -> &CoverTarget {
        &self.target
    }

    pub fn family(&self) -> &[MultiFuzzySet] {
        &self.family
    }

    /// Per-cell thresholds; zero means the cell needs nothing.
    fn thresholds(&self) -> Vec<Grade> {
        match &self.target {
            CoverTarget::Set(f) => f.grades().to_vec(),
            CoverTarget::Points(points) => {
                let n = self.shape.dimension();
                let mut t = vec![Grade::ZERO; self.shape.cells()];
                for &x in points {
                    t[x * n..(x + 1) * n].fill(self.shape.chain().top());
                }
                t
            }
        }
    }

    fn masks(&self) -> (Cells, Vec<Cells>) {
        let thresholds = self.thresholds();
        let mut required = Cells::empty(thresholds.len());
        for (c, t) in thresholds.iter().enumerate() {
            if t.is_positive() {
                required.set(c);
            }
        }
        let members = self
            .family
            .iter()
            .map(|m| {
                let mut cells = Cells::empty(thresholds.len());
                for (c, (g, t)) in m.grades().iter().zip(&thresholds).enumerate() {
                    if t.is_positive() && g >= t {
                        cells.set(c);
                    }
                }
                cells
            })
            .collect();
        (required, members)
    }

    /// The first cell the family fails to cover, with the join's grade there.
    pub fn uncovered(&self) -> Option<(usize, usize, Grade)> {
        let (required, members) = self.masks();
        let mut union = Cells::empty(self.shape.cells());
        for m in &members {
            union.or_assign(m);
        }
        let n = self.shape.dimension();
        (0..self.shape.cells())
            .find(|&c| required.get(c) && !union.get(c))
            .map(|c| {
                let sup = self
                    .family
                    .iter()
                    .map(|m| m.grades()[c])
                    .max()
                    .unwrap_or(Grade::ZERO);
                (c / n, c % n, sup)
            })
    }

    pub fn is_cover(&self) -> bool {
        self.uncovered().is_none()
    }

    /// Indices of a smallest subfamily that still covers: exact search for
    /// families of at most [`EXHAUSTIVE_SUBCOVER_LIMIT`] members, otherwise a
    /// greedy cover pruned to be irredundant.
    pub fn find_finite_subcover(&self) -> Result<Vec<usize>> {
        if let Some((x, i, sup)) = self.uncovered() {
            return Err(Error::NotACover {
                point: self.shape.universe().label(x).to_string(),
                coordinate: i,
                sup: self.shape.chain().format(sup),
            });
        }
        let (required, members) = self.masks();
        Ok(minimum_subcover(&required, &members))
    }

    /// The members selected by `indices`.
    pub fn subfamily(&self, indices: &[usize]) -> Vec<MultiFuzzySet> {
        indices.iter().map(|&i| self.family[i].clone()).collect()
    }
}

fn covers(required: &Cells, members: &[Cells], pick: &[usize], width: usize) -> bool {
    let mut union = Cells::empty(width);
    for &i in pick {
        union.or_assign(&members[i]);
    }
    union.contains(required)
}

fn minimum_subcover(required: &Cells, members: &[Cells]) -> Vec<usize> {
    let width = required.0.len() * 64;
    if required.0.iter().all(|w| *w == 0) {
        return Vec::new();
    }
    if members.len() <= EXHAUSTIVE_SUBCOVER_LIMIT {
        for k in 1..=members.len() {
            if let Some(pick) = (0..members.len())
                .combinations(k)
                .find(|pick| covers(required, members, pick, width))
            {
                return pick;
            }
        }
        unreachable!("the full family covers");
    }
    let mut union = Cells::empty(width);
    let mut pick = Vec::new();
    while !union.contains(required) {
        let (best, _) = members
            .iter()
            .enumerate()
            .filter(|(i, _)| !pick.contains(i))
            .map(|(i, m)| (i, union.count_new(m)))
            .max_by_key(|&(i, gain)| (gain, std::cmp::Reverse(i)))
            .expect("the full family covers");
        union.or_assign(&members[best]);
        pick.push(best);
    }
    let mut k = pick.len();
    while k > 0 {
        k -= 1;
        let without: Vec<usize> = pick.iter().copied().filter(|&i| i != pick[k]).collect();
        if covers(required, members, &without, width) {
            pick = without;
        }
    }
    pick.sort_unstable();
    pick
}

/// Bounds for [`check_compact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompactnessConfig {
    /// Largest open family examined.
    pub max_family: usize,
    /// Enumerate exhaustively when the number of candidate families is at
    /// most this; sample otherwise.
    pub exhaustive_limit: u64,
    /// Number of sampled families above the limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for CompactnessConfig {
    fn default() -> Self {
        CompactnessConfig {
            max_family: 4,
            exhaustive_limit: 250_000,
            samples: 4_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CompactnessReport {
    /// Every examined open cover had a finite subcover.
    pub compact: bool,
    /// Some open family covers the space at all; when false, compactness
    /// holds vacuously.
    pub cover_exists: bool,
    pub exhaustive: bool,
    pub families_examined: u64,
    pub open_covers: u64,
    pub subcovers_found: u64,
    /// Largest size of a minimum subcover among the examined covers.
    pub largest_subcover: usize,
    /// The point-cover and set-domination readings of "cover the space"
    /// gave the same answer on every examined family.
    pub readings_agree: bool,
    /// Basic product covers examined (product checks only).
    pub basic_covers: u64,
    /// Every basic product cover had a subcover whose factor families cover
    /// the factors (product checks only).
    pub factor_pattern_holds: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn candidate_families(members: usize, config: &CompactnessConfig) -> (bool, Vec<Vec<usize>>) {
    let max = config.max_family.min(members);
    let total: u64 = (1..=max as u64).map(|k| binomial(members as u64, k)).sum();
    if total <= config.exhaustive_limit {
        let all = (1..=max)
            .flat_map(|k| (0..members).combinations(k))
            .collect();
        return (true, all);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sampled = (0..config.samples)
        .map(|_| {
            let k = rng.random_range(1..=max);
            let mut pick = index::sample(&mut rng, members, k).into_vec();
            pick.sort_unstable();
            pick
        })
        .collect();
    (false, sampled)
}

/// Examines open families of bounded size and extracts a finite subcover from
/// every one that covers the space.
pub fn check_compact(space: &MultiFuzzyTopology, config: &CompactnessConfig) -> CompactnessReport {
    let shape = space.shape().clone();
    let opens = space.opens();
    let absolute = MultiFuzzySet::absolute(shape.clone());
    let mut report = CompactnessReport {
        compact: true,
        readings_agree: true,
        factor_pattern_holds: true,
        ..Default::default()
    };
    if opens.is_empty() {
        return report;
    }
    report.cover_exists = Cover::of_space(shape.clone(), opens.to_vec())
        .map(|c| c.is_cover())
        .unwrap_or(false);

    let everything = Cover::of_space(shape.clone(), opens.to_vec()).expect("nonempty family");
    let (required, masks) = everything.masks();
    let width = shape.cells();
    let (exhaustive, families) = candidate_families(opens.len(), config);
    report.exhaustive = exhaustive;
    for pick in families {
        report.families_examined += 1;
        let point_reading = covers(&required, &masks, &pick, width);
        let set_reading = MultiFuzzySet::join(pick.iter().map(|&i| &opens[i]))
            .map(|j| absolute.leq_raw(&j))
            .unwrap_or(false);
        if point_reading != set_reading {
            report.readings_agree = false;
        }
        if !point_reading {
            continue;
        }
        report.open_covers += 1;
        let members: Vec<Cells> = pick.iter().map(|&i| masks[i].clone()).collect();
        let sub = minimum_subcover(&required, &members);
        if covers(&required, &members, &sub, width) {
            report.subcovers_found += 1;
            report.largest_subcover = report.largest_subcover.max(sub.len());
        } else {
            report.compact = false;
        }
    }
    report
}

/// [`check_compact`] on the product topology, plus the factor pattern:
/// every cover by basic opens `F x G` has a finite subcover whose first
/// factors cover `X1` and whose second factors cover `X2`.
pub fn check_product_compact(
    space: &ProductSpace,
    config: &CompactnessConfig,
) -> CompactnessReport {
    let mut report = check_compact(space.topology(), config);
    let shape = space.shape().clone();
    let basis = space.basis();
    let everything = match Cover::of_space(shape.clone(), basis.to_vec()) {
        Ok(c) => c,
        Err(_) => return report,
    };
    let (required, masks) = everything.masks();
    let width = shape.cells();
    let (_, families) = candidate_families(basis.len(), config);
    for pick in families {
        if !covers(&required, &masks, &pick, width) {
            continue;
        }
        report.basic_covers += 1;
        let members: Vec<Cells> = pick.iter().map(|&i| masks[i].clone()).collect();
        let sub = minimum_subcover(&required, &members);
        let chosen: Vec<usize> = sub.iter().map(|&k| pick[k]).collect();
        let (firsts, seconds): (Vec<_>, Vec<_>) = chosen
            .iter()
            .map(|&k| {
                let (f, g) = space.basis_factors(k);
                (f.clone(), g.clone())
            })
            .unzip();
        let factor_ok = |factor: &MultiFuzzyTopology, family: Vec<MultiFuzzySet>| {
            Cover::of_space(factor.shape().clone(), family)
                .map(|c| c.is_cover())
                .unwrap_or(false)
        };
        let ok = covers(&required, &members, &sub, width)
            && factor_ok(space.factor(crate::product::Factor::First), firsts)
            && factor_ok(space.factor(crate::product::Factor::Second), seconds);
        if !ok {
            report.factor_pattern_holds = false;
            report.compact = false;
        }
    }
    report
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
    fn cover_examples() {
        assert!(Cover::of_space(shape(), vec![s(2, 2)]).unwrap().is_cover());
        assert!(!Cover::of_space(shape(), vec![s(1, 1)]).unwrap().is_cover());
        let c = Cover::of_set(s(2, 1), vec![s(1, 1), s(2, 1), s(2, 2)]).unwrap();
        assert!(c.is_cover());
        assert_eq!(c.find_finite_subcover().unwrap().len(), 1);
    }

    #[test]
    fn subcover_of_the_space() {
        let c = Cover::of_space(shape(), vec![s(1, 1), s(2, 1), s(2, 2)]).unwrap();
        let sub = c.find_finite_subcover().unwrap();
        assert_eq!(c.subfamily(&sub), vec![s(2, 2)]);
    }

    #[test]
    fn non_cover_reports_a_witness() {
        let c = Cover::of_space(shape(), vec![s(1, 1)]).unwrap();
        assert_eq!(
            c.find_finite_subcover(),
            Err(Error::NotACover {
                point: "a".into(),
                coordinate: 0,
                sup: "1/2".into()
            })
        );
    }

    #[test]
    fn point_subsets() {
        let c = Cover::of_points(shape(), &["a"], vec![s(2, 0), s(1, 1)]).unwrap();
        assert!(c.is_cover());
        assert_eq!(c.find_finite_subcover().unwrap(), vec![0]);
        assert!(Cover::of_points(shape(), &["q"], vec![s(2, 0)]).is_err());
        assert_eq!(Cover::of_space(shape(), vec![]), Err(Error::EmptyFamily));
    }

    #[test]
    fn greedy_path_is_irredundant() {
        // 14 members: two that matter and twelve that add nothing new
        let mut family = vec![s(2, 0), s(0, 2)];
        family.extend(std::iter::repeat_n(s(1, 1), 12));
        let c = Cover::of_space(shape(), family).unwrap();
        assert_eq!(c.find_finite_subcover().unwrap(), vec![0, 1]);
    }

    #[test]
    fn sampling_kicks_in_above_the_limit() {
        let config = CompactnessConfig {
            exhaustive_limit: 3,
            samples: 10,
            ..Default::default()
        };
        let (exhaustive, families) = candidate_families(5, &config);
        assert!(!exhaustive);
        assert_eq!(families.len(), 10);
        assert!(families.iter().all(|f| (1..=4).contains(&f.len())));
    }
}
