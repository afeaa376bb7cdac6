//! Counterexample mining: evaluates one structural check over every small
//! instance within exhaustive bounds, or over seeded random instances beyond
//! them, and reports the smallest failing instance.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use mftop::cover::{check_product_compact, CompactnessConfig};
use mftop::neighborhood::{topology_from_nbd_unchecked, verify_nbd_axioms_with};
use mftop::product::{is_second_countable, product_map_between};
use mftop::sample::{self, Bounds};
use mftop::set::family_contains;
use mftop::{
    compose, grid, nbd_family, nbd_from_topology, open_via_nbd, product_topology, Factor,
    MultiFuzzySet, MultiFuzzyTopology, NbdChecks, NbdSystem, PointMap, Shape, SpaceMap,
};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::document::{family_to_json, map_to_json, set_to_json, space_to_json};

/// Every check the miner knows, by identifier.
pub const CHECK_IDS: [&str; 16] = [
    "image-preimage-laws",
    "composition",
    "homeomorphism-criteria",
    "nbd-meet",
    "open-via-nbd",
    "nbd-axioms",
    "nbd-topology",
    "nbd-roundtrip",
    "continuity-criteria",
    "product-base",
    "projections",
    "slice-embedding",
    "product-map-open",
    "product-map-continuous",
    "product-second-countable",
    "product-compact",
];

/// Exhaustive enumeration is used when the bounds stay within these.
pub const EXHAUSTIVE_POINTS: usize = 2;
pub const EXHAUSTIVE_DIMENSION: usize = 1;
pub const EXHAUSTIVE_DENOMINATOR: u32 = 2;

#[derive(Clone, Debug)]
pub struct MineConfig {
    pub bounds: Bounds,
    /// Random instances drawn when the bounds exceed the exhaustive range,
    /// and the sample size for pair and triple corpora that are too large.
    pub samples: usize,
    pub seed: u64,
    /// The neighbourhood axioms the checker under test evaluates.
    pub checks: NbdChecks,
    pub deadline: Option<Instant>,
    /// Pair and triple corpora larger than this are sampled.
    pub pair_limit: usize,
    /// Largest cover family examined by `product-compact`.
    pub max_family: usize,
}

impl Default for MineConfig {
    fn default() -> Self {
        MineConfig {
            bounds: Bounds {
                max_points: EXHAUSTIVE_POINTS,
                max_dimension: EXHAUSTIVE_DIMENSION,
                max_denominator: EXHAUSTIVE_DENOMINATOR,
                max_seeds: 3,
            },
            samples: 200,
            seed: 0,
            checks: NbdChecks::default(),
            deadline: None,
            pair_limit: 20_000,
            max_family: 4,
        }
    }
}

impl MineConfig {
    pub fn exhaustive(&self) -> bool {
        self.bounds.max_points <= EXHAUSTIVE_POINTS
            && self.bounds.max_dimension <= EXHAUSTIVE_DIMENSION
            && self.bounds.max_denominator <= EXHAUSTIVE_DENOMINATOR
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Total grade cells of the instance; the reported witness minimises it.
    pub size: usize,
    pub message: String,
    pub instance: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MineReport {
    pub check: String,
    /// "exhaustive", "random", or "sampled" when an exhaustive corpus was too
    /// large and had to be sampled.
    pub mode: &'static str,
    pub instances: u64,
    /// Instances where the check's hypothesis held.
    pub applicable: u64,
    pub counterexamples: u64,
    pub witness: Option<Witness>,
    /// False when the time budget ran out.
    pub complete: bool,
}

impl MineReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "mode": self.mode,
            "instances": self.instances,
            "applicable": self.applicable,
            "counterexamples": self.counterexamples,
            "complete": self.complete,
            "witness": self.witness.as_ref().map(|w| json!({
                "size": w.size,
                "message": w.message,
                "instance": w.instance,
            })),
        })
    }
}

enum Outcome {
    /// The hypothesis of the check does not hold for this instance.
    Skip,
    Pass,
    Fail(String, Value),
}

struct Miner<'a> {
    config: &'a MineConfig,
    report: MineReport,
}

impl Miner<'_> {
    fn expired(&mut self) -> bool {
        if self.config.deadline.is_some_and(|d| Instant::now() >= d) {
            self.report.complete = false;
        }
        !self.report.complete
    }

    fn record(&mut self, size: usize, outcome: Outcome) {
        self.report.instances += 1;
        match outcome {
            Outcome::Skip => {}
            Outcome::Pass => self.report.applicable += 1,
            Outcome::Fail(message, instance) => {
                self.report.applicable += 1;
                self.report.counterexamples += 1;
                if self.report.witness.as_ref().is_none_or(|w| size < w.size) {
                    self.report.witness = Some(Witness {
                        size,
                        message,
                        instance,
                    });
                }
            }
        }
    }

    /// Evaluates `eval` on each item until the budget runs out.
    fn run<T>(
        &mut self,
        items: impl IntoIterator<Item = T>,
        size: impl Fn(&T) -> usize,
        eval: impl Fn(&T) -> Outcome,
    ) {
        for item in items {
            if self.expired() {
                return;
            }
            let outcome = eval(&item);
            self.record(size(&item), outcome);
        }
    }
}

type Space = Arc<MultiFuzzyTopology>;

fn space_json(space: &MultiFuzzyTopology) -> Value {
    space_to_json(space, &BTreeMap::new())
}

fn map_json(map: &SpaceMap) -> Value {
    json!({
        "domain": space_json(map.domain()),
        "codomain": space_json(map.codomain()),
        "map": map_to_json(map.map()),
    })
}

fn system_json(system: &NbdSystem) -> Value {
    let shape = system.shape();
    let families: serde_json::Map<String, Value> = shape
        .universe()
        .labels()
        .iter()
        .enumerate()
        .map(|(x, label)| (label.clone(), family_to_json(system.family(x))))
        .collect();
    json!({
        "universe": shape.universe().labels(),
        "n": shape.dimension(),
        "D": shape.chain().denominator(),
        "families": families,
    })
}

fn check(ok: bool, message: impl FnOnce() -> (String, Value)) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        let (m, v) = message();
        Outcome::Fail(m, v)
    }
}

// ---- corpora ---------------------------------------------------------------

fn exhaustive_shapes(bounds: &Bounds) -> Vec<Arc<Shape>> {
    let mut out = Vec::new();
    for points in 1..=bounds.max_points.max(1) {
        for n in 1..=bounds.max_dimension.max(1) {
            for d in 1..=bounds.max_denominator.max(1) {
                out.push(
                    Shape::build((0..points).map(sample::point_label), n, d)
                        .expect("bounds give valid shapes"),
                );
            }
        }
    }
    out
}

/// Every topology generated by a subset of the restricted grid sets, with the
/// number of seed subsets examined.
pub fn generated_topologies(shape: &Arc<Shape>) -> (u64, Vec<MultiFuzzyTopology>) {
    let sets = grid::restricted_sets(shape).expect("exhaustive shapes are small");
    assert!(sets.len() <= 16, "too many seed subsets to enumerate");
    let mut out: Vec<MultiFuzzyTopology> = Vec::new();
    let subsets = 1u64 << sets.len();
    for mask in 0..subsets {
        let seeds: Vec<MultiFuzzySet> = sets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s.clone())
            .collect();
        out.push(MultiFuzzyTopology::generate(shape.clone(), &seeds).expect("restricted seeds"));
    }
    out.sort_by(|a, b| (a.len(), a.opens()).cmp(&(b.len(), b.opens())));
    out.dedup();
    (subsets, out)
}

fn topologies(config: &MineConfig, rng: &mut ChaCha8Rng) -> Vec<Space> {
    if config.exhaustive() {
        exhaustive_shapes(&config.bounds)
            .iter()
            .flat_map(|shape| generated_topologies(shape).1)
            .map(Arc::new)
            .collect()
    } else {
        (0..config.samples)
            .map(|_| {
                let shape = sample::random_shape(rng, &config.bounds);
                Arc::new(sample::random_topology(
                    rng,
                    &shape,
                    config.bounds.max_seeds,
                ))
            })
            .collect()
    }
}

fn compatible(a: &Shape, b: &Shape) -> bool {
    a.dimension() == b.dimension() && a.chain() == b.chain()
}

fn all_point_maps(domain: &Shape, codomain: &Shape) -> Vec<PointMap> {
    let (p, q) = (domain.points(), codomain.points());
    let total = q.pow(p as u32);
    (0..total)
        .map(|mut code| {
            let assignment = (0..p)
                .map(|_| {
                    let y = code % q;
                    code /= q;
                    y
                })
                .collect();
            PointMap::from_indices(
                domain.universe().clone(),
                codomain.universe().clone(),
                assignment,
            )
            .expect("indices are in range")
        })
        .collect()
}

/// A shape with the same grid as `like` and a random number of points.
fn random_partner(rng: &mut ChaCha8Rng, like: &Shape, bounds: &Bounds) -> Arc<Shape> {
    let points = rng.random_range(1..=bounds.max_points.max(1));
    Shape::build(
        (0..points).map(sample::point_label),
        like.dimension(),
        like.chain().denominator(),
    )
    .expect("valid shape")
}

/// Maps between spaces, exhaustive over corpus pairs and point maps within
/// the bounds, random otherwise.
fn maps(config: &MineConfig, rng: &mut ChaCha8Rng, corpus: &[Space]) -> Vec<SpaceMap> {
    if config.exhaustive() {
        let mut out = Vec::new();
        for dom in corpus {
            for cod in corpus {
                if compatible(dom.shape(), cod.shape()) {
                    for map in all_point_maps(dom.shape(), cod.shape()) {
                        out.push(
                            SpaceMap::new(map, dom.clone(), cod.clone()).expect("grids agree"),
                        );
                    }
                }
            }
        }
        out
    } else {
        (0..config.samples)
            .map(|_| random_map(config, rng))
            .collect()
    }
}

fn random_map(config: &MineConfig, rng: &mut ChaCha8Rng) -> SpaceMap {
    let dom_shape = sample::random_shape(rng, &config.bounds);
    let cod_shape = random_partner(rng, &dom_shape, &config.bounds);
    let dom = Arc::new(sample::random_topology(
        rng,
        &dom_shape,
        config.bounds.max_seeds,
    ));
    let cod = Arc::new(sample::random_topology(
        rng,
        &cod_shape,
        config.bounds.max_seeds,
    ));
    sample::random_space_map(rng, dom, cod)
}

/// Ordered pairs `(a, b)` with `related(a, b)`: all of them when there are
/// at most `pair_limit`, otherwise `samples` drawn at random.
fn pairs<T: Clone>(
    config: &MineConfig,
    rng: &mut ChaCha8Rng,
    items: &[T],
    related: impl Fn(&T, &T) -> bool,
) -> (bool, Vec<(T, T)>) {
    let partners: Vec<Vec<usize>> = items
        .iter()
        .map(|a| {
            (0..items.len())
                .filter(|&j| related(a, &items[j]))
                .collect()
        })
        .collect();
    let total: usize = partners.iter().map(Vec::len).sum();
    if total <= config.pair_limit {
        let all = partners
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
            .map(|(i, j)| (items[i].clone(), items[j].clone()))
            .collect();
        return (true, all);
    }
    let starts: Vec<usize> = (0..items.len())
        .filter(|&i| !partners[i].is_empty())
        .collect();
    let sampled = (0..config.samples)
        .map(|_| {
            let i = *starts.choose(rng).expect("some pair exists");
            let j = *partners[i].choose(rng).expect("nonempty");
            (items[i].clone(), items[j].clone())
        })
        .collect();
    (false, sampled)
}

fn factor_pairs(
    config: &MineConfig,
    rng: &mut ChaCha8Rng,
    corpus: &[Space],
) -> (bool, Vec<(Space, Space)>) {
    if config.exhaustive() {
        pairs(config, rng, corpus, |a, b| compatible(a.shape(), b.shape()))
    } else {
        let out = (0..config.samples)
            .map(|_| {
                let s1 = sample::random_shape(rng, &config.bounds);
                let s2 = random_partner(rng, &s1, &config.bounds);
                (
                    Arc::new(sample::random_topology(rng, &s1, config.bounds.max_seeds)),
                    Arc::new(sample::random_topology(rng, &s2, config.bounds.max_seeds)),
                )
            })
            .collect();
        (true, out)
    }
}

fn cells(space: &MultiFuzzyTopology) -> usize {
    space.shape().cells()
}

// ---- checks ----------------------------------------------------------------

/// Runs one check. Unknown identifiers return `None`.
pub fn mine_counterexamples(check_id: &str, config: &MineConfig) -> Option<MineReport> {
    if !CHECK_IDS.contains(&check_id) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut miner = Miner {
        config,
        report: MineReport {
            check: check_id.to_string(),
            mode: if config.exhaustive() {
                "exhaustive"
            } else {
                "random"
            },
            instances: 0,
            applicable: 0,
            counterexamples: 0,
            witness: None,
            complete: true,
        },
    };
    let topology_size = |t: &Space| cells(t) * 64 + t.len();
    let map_size = |m: &SpaceMap| {
        (cells(m.domain()) + cells(m.codomain())) * 64 + m.domain().len() + m.codomain().len()
    };
    let pair_size = |p: &(Space, Space)| (cells(&p.0) + cells(&p.1)) * 64 + p.0.len() + p.1.len();
    let mut sampled = false;

    match check_id {
        "image-preimage-laws" => {
            let items = law_instances(config, &mut rng);
            miner.run(
                items,
                |c| c.map.domain().len() + c.map.codomain().len() + c.a.shape().cells(),
                eval_laws,
            );
        }
        "composition" => {
            let corpus = topologies(config, &mut rng);
            let maps = maps(config, &mut rng, &corpus);
            let (all, chains) = pairs(config, &mut rng, &maps, |f, g| f.codomain() == g.domain());
            sampled |= !all;
            miner.run(
                chains,
                |(f, g)| map_size(f) + cells(g.codomain()) * 64,
                |(f, g)| {
                    let gf = compose(f, g).expect("composable");
                    let cont = f.is_continuous() && g.is_continuous();
                    let open = f.is_open_map() && g.is_open_map();
                    if !cont && !open {
                        return Outcome::Skip;
                    }
                    let ok = (!cont || gf.is_continuous()) && (!open || gf.is_open_map());
                    check(ok, || {
                        (
                            "composite loses continuity or openness".into(),
                            json!({"first": map_json(f), "second": map_json(g)}),
                        )
                    })
                },
            );
        }
        "homeomorphism-criteria" => {
            let corpus = topologies(config, &mut rng);
            let maps = maps(config, &mut rng, &corpus);
            let bijections: Vec<SpaceMap> = if config.exhaustive() {
                maps.into_iter()
                    .filter(|m| m.map().is_bijective())
                    .collect()
            } else {
                (0..config.samples)
                    .map(|_| {
                        let shape = sample::random_shape(&mut rng, &config.bounds);
                        let dom = Arc::new(sample::random_topology(
                            &mut rng,
                            &shape,
                            config.bounds.max_seeds,
                        ));
                        let cod = if rng.random_bool(0.5) {
                            dom.clone()
                        } else {
                            Arc::new(sample::random_topology(
                                &mut rng,
                                &shape,
                                config.bounds.max_seeds,
                            ))
                        };
                        let perm = sample::random_permutation(&mut rng, &shape);
                        SpaceMap::new(perm, dom, cod).expect("same shape")
                    })
                    .collect()
            };
            miner.run(bijections, map_size, |m| {
                let h = m.homeomorphism();
                check(h.agree(), || {
                    (format!("characterisations disagree: {h:?}"), map_json(m))
                })
            });
        }
        "nbd-meet" => {
            let corpus = topologies(config, &mut rng);
            miner.run(corpus, topology_size, |t| {
                let system = nbd_from_topology(t).expect("grid within limits");
                for x in 0..t.shape().points() {
                    let family = system.family(x);
                    for (i, f) in family.iter().enumerate() {
                        for g in &family[i..] {
                            let m = f.meet(g).expect("same shape");
                            if !family_contains(family, &m) {
                                return Outcome::Fail(
                                    format!("meet of two neighbourhoods of {} is not one", t.shape().universe().label(x)),
                                    json!({"space": space_json(t), "left": set_to_json(f), "right": set_to_json(g)}),
                                );
                            }
                        }
                    }
                }
                Outcome::Pass
            });
        }
        "open-via-nbd" => {
            let corpus = topologies(config, &mut rng);
            miner.run(corpus, topology_size, |t| {
                for g in grid::restricted_sets(t.shape()).expect("small grid") {
                    if open_via_nbd(&g, t).expect("restricted") != t.contains(&g) {
                        return Outcome::Fail(
                            "neighbourhood criterion disagrees with membership".into(),
                            json!({"space": space_json(t), "set": set_to_json(&g)}),
                        );
                    }
                }
                Outcome::Pass
            });
        }
        "nbd-axioms" => {
            let corpus = topologies(config, &mut rng);
            miner.run(corpus, topology_size, |t| {
                let system = nbd_from_topology(t).expect("grid within limits");
                let report = verify_nbd_axioms_with(&system, config.checks).expect("checker runs");
                check(report.is_ok(), || {
                    (format!("derived system violates {report}"), space_json(t))
                })
            });
        }
        "nbd-topology" => {
            let corpus = topologies(config, &mut rng);
            miner.run(corpus, topology_size, |t| {
                let system = nbd_from_topology(t).expect("grid within limits");
                eval_system(&system, config.checks)
            });
        }
        "nbd-roundtrip" => {
            let corpus = topologies(config, &mut rng);
            let derived: Vec<(Space, NbdSystem)> = corpus
                .iter()
                .map(|t| (t.clone(), nbd_from_topology(t).expect("grid within limits")))
                .collect();
            miner.run(
                derived.iter(),
                |(t, _)| topology_size(t),
                |(t, system)| {
                    let report =
                        verify_nbd_axioms_with(system, config.checks).expect("checker runs");
                    if !report.is_ok() {
                        return Outcome::Fail(
                            format!("derived system rejected: {report}"),
                            space_json(t),
                        );
                    }
                    let back = topology_from_nbd_unchecked(system).expect("same shape");
                    check(back == **t, || {
                        (
                            "rebuilt topology differs".into(),
                            json!({"space": space_json(t), "rebuilt": space_json(&back)}),
                        )
                    })
                },
            );
            let systems = candidate_systems(config, &mut rng, &derived);
            miner.run(
                systems,
                |s| s.shape().cells() * 64 + s.families().iter().map(Vec::len).sum::<usize>(),
                |s| eval_system(s, config.checks),
            );
        }
        "continuity-criteria" => {
            let corpus = topologies(config, &mut rng);
            let maps = maps(config, &mut rng, &corpus);
            miner.run(maps, map_size, |m| {
                let results = m.continuity_criteria().expect("grid within limits");
                let first = results[0].1;
                check(results.iter().all(|(_, v)| *v == first), || {
                    let verdicts: serde_json::Map<String, Value> = results
                        .iter()
                        .map(|(c, v)| (c.name().to_string(), Value::from(*v)))
                        .collect();
                    (
                        "continuity criteria disagree".into(),
                        json!({"map": map_json(m), "verdicts": verdicts}),
                    )
                })
            });
        }
        "product-base"
        | "projections"
        | "slice-embedding"
        | "product-second-countable"
        | "product-compact" => {
            let corpus = topologies(config, &mut rng);
            let (all, factors) = factor_pairs(config, &mut rng, &corpus);
            sampled |= !all;
            let compact = CompactnessConfig {
                max_family: config.max_family,
                seed: config.seed,
                ..CompactnessConfig::default()
            };
            miner.run(factors, pair_size, |(t1, t2)| {
                let p = product_topology(t1.clone(), t2.clone()).expect("compatible factors");
                let instance = || json!({"first": space_json(t1), "second": space_json(t2)});
                match check_id {
                    "product-base" => check(p.basis_is_open_base(), || {
                        ("basis is not an open base".into(), instance())
                    }),
                    "projections" => {
                        let ok = [Factor::First, Factor::Second].iter().all(|&f| {
                            let pi = p.projection(f);
                            pi.is_continuous() && pi.is_open_map()
                        }) && p.smallest_topology_check().expect("same shape");
                        check(ok, || ("projection check failed".into(), instance()))
                    }
                    "slice-embedding" => {
                        let mut ok = true;
                        for (fixed, other) in [
                            (Factor::First, Factor::Second),
                            (Factor::Second, Factor::First),
                        ] {
                            for label in p.factor(fixed).shape().universe().labels() {
                                let slice = p.slice_embedding(label, fixed).expect("known point");
                                let back = slice.then(&p.projection(other)).expect("composable");
                                let to_point =
                                    slice.then(&p.projection(fixed)).expect("composable");
                                ok &= slice.is_continuous()
                                    && back == SpaceMap::identity(p.factor(other).clone())
                                    && to_point
                                        == SpaceMap::constant(
                                            p.factor(other).clone(),
                                            p.factor(fixed).clone(),
                                            label,
                                        )
                                        .expect("known point");
                            }
                        }
                        check(ok, || ("slice embedding check failed".into(), instance()))
                    }
                    "product-second-countable" => {
                        let base = p
                            .product_base(&t1.minimal_base(), &t2.minimal_base())
                            .expect("minimal bases are bases");
                        let ok = p
                            .topology()
                            .is_open_base(&base)
                            .expect("basic sets are open")
                            && is_second_countable(p.topology()).0;
                        check(ok, || {
                            ("product of minimal bases is not a base".into(), instance())
                        })
                    }
                    _ => {
                        let report = check_product_compact(&p, &compact);
                        let ok = report.compact
                            && report.factor_pattern_holds
                            && report.readings_agree
                            && report.subcovers_found == report.open_covers;
                        check(ok, || {
                            (format!("compactness check failed: {report:?}"), instance())
                        })
                    }
                }
            });
        }
        "product-map-open" | "product-map-continuous" => {
            let corpus = topologies(config, &mut rng);
            let maps = maps(config, &mut rng, &corpus);
            let (all, map_pairs) = pairs(config, &mut rng, &maps, |a, b| {
                compatible(a.domain().shape(), b.domain().shape())
            });
            sampled |= !all;
            let want_open = check_id == "product-map-open";
            miner.run(
                map_pairs,
                |(f1, f2)| map_size(f1) + map_size(f2),
                |(f1, f2)| {
                    let holds = |m: &SpaceMap| {
                        if want_open {
                            m.is_open_map()
                        } else {
                            m.is_continuous()
                        }
                    };
                    if !holds(f1) || !holds(f2) {
                        return Outcome::Skip;
                    }
                    let dom = product_topology(f1.domain().clone(), f2.domain().clone())
                        .expect("compatible");
                    let cod = product_topology(f1.codomain().clone(), f2.codomain().clone())
                        .expect("compatible");
                    let pm = product_map_between(f1, f2, &dom, &cod).expect("matching spaces");
                    check(holds(&pm), || {
                        (
                            "product map loses the property".into(),
                            json!({"first": map_json(f1), "second": map_json(f2)}),
                        )
                    })
                },
            );
        }
        _ => unreachable!("identifier was checked"),
    }
    if sampled {
        miner.report.mode = "sampled";
    }
    Some(miner.report)
}

/// When the checker accepts `system`, the rebuilt family must be a topology
/// whose neighbourhood families are exactly the system's.
fn eval_system(system: &NbdSystem, checks: NbdChecks) -> Outcome {
    let report = verify_nbd_axioms_with(system, checks).expect("checker runs");
    if !report.is_ok() {
        return Outcome::Skip;
    }
    let rebuilt = topology_from_nbd_unchecked(system).expect("same shape");
    let axioms = rebuilt.verify();
    if !axioms.is_ok() {
        return Outcome::Fail(
            format!("accepted system rebuilds a non-topology: {axioms}"),
            json!({"system": system_json(system), "rebuilt": space_json(&rebuilt)}),
        );
    }
    for (x, label) in system.shape().universe().labels().iter().enumerate() {
        let family = nbd_family(&rebuilt, label).expect("known point");
        if family != system.family(x) {
            return Outcome::Fail(
                format!("neighbourhoods of {label} in the rebuilt topology differ from the system"),
                json!({"system": system_json(system), "rebuilt": space_json(&rebuilt)}),
            );
        }
    }
    Outcome::Pass
}

/// Every system of the exhaustive shapes (each family any subset of the sets
/// positive at its point), or random perturbations of derived systems.
fn candidate_systems(
    config: &MineConfig,
    rng: &mut ChaCha8Rng,
    derived: &[(Space, NbdSystem)],
) -> Vec<NbdSystem> {
    if config.exhaustive() {
        let mut out = Vec::new();
        for shape in exhaustive_shapes(&config.bounds) {
            let all = grid::all_sets(&shape).expect("small grid");
            let positive: Vec<Vec<MultiFuzzySet>> = (0..shape.points())
                .map(|x| {
                    all.iter()
                        .filter(|s| s.is_positive_at(x))
                        .cloned()
                        .collect()
                })
                .collect();
            let bits: usize = positive.iter().map(Vec::len).sum();
            assert!(bits <= 16, "too many candidate systems");
            for mask in 0u64..(1 << bits) {
                let mut offset = 0;
                let families = positive
                    .iter()
                    .map(|sets| {
                        let family = sets
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> (offset + i) & 1 == 1)
                            .map(|(_, s)| s.clone())
                            .collect();
                        offset += sets.len();
                        family
                    })
                    .collect();
                out.push(NbdSystem::new(shape.clone(), families).expect("same shape"));
            }
        }
        out
    } else {
        let mut out = Vec::new();
        for (_, system) in derived {
            let shape = system.shape();
            let mut current = system.clone();
            for _ in 0..rng.random_range(1..=2) {
                let x = rng.random_range(0..shape.points());
                let mut family = current.family(x).to_vec();
                if !family.is_empty() && rng.random_bool(0.5) {
                    family.remove(rng.random_range(0..family.len()));
                } else {
                    family.push(sample::random_set(rng, shape));
                }
                current = current.with_family(x, family).expect("same shape");
            }
            out.push(current);
        }
        out
    }
}

#[derive(Clone, Debug)]
struct LawCase {
    map: PointMap,
    a: MultiFuzzySet,
    b: MultiFuzzySet,
    g: MultiFuzzySet,
    h: MultiFuzzySet,
}

fn law_instances(config: &MineConfig, rng: &mut ChaCha8Rng) -> Vec<LawCase> {
    if config.exhaustive() {
        let shapes = exhaustive_shapes(&config.bounds);
        let mut out = Vec::new();
        for dom in &shapes {
            for cod in shapes.iter().filter(|c| compatible(dom, c)) {
                let dom_sets = grid::all_sets(dom).expect("small grid");
                let cod_sets = grid::all_sets(cod).expect("small grid");
                for map in all_point_maps(dom, cod) {
                    // every pair on each side; the two sides are zipped so the
                    // corpus stays linear in the number of pairs
                    let dom_pairs = dom_sets
                        .iter()
                        .flat_map(|a| dom_sets.iter().map(move |b| (a, b)));
                    let cod_pairs: Vec<_> = cod_sets
                        .iter()
                        .flat_map(|g| cod_sets.iter().map(move |h| (g, h)))
                        .collect();
                    for (k, (a, b)) in dom_pairs.enumerate() {
                        let (g, h) = cod_pairs[k % cod_pairs.len()];
                        out.push(LawCase {
                            map: map.clone(),
                            a: a.clone(),
                            b: b.clone(),
                            g: g.clone(),
                            h: h.clone(),
                        });
                    }
                    for (k, (g, h)) in cod_pairs.iter().enumerate() {
                        let (a, b) = (
                            &dom_sets[k % dom_sets.len()],
                            &dom_sets[(k / dom_sets.len()) % dom_sets.len()],
                        );
                        out.push(LawCase {
                            map: map.clone(),
                            a: a.clone(),
                            b: b.clone(),
                            g: (*g).clone(),
                            h: (*h).clone(),
                        });
                    }
                }
            }
        }
        out
    } else {
        (0..config.samples)
            .map(|_| {
                let dom = sample::random_shape(rng, &config.bounds);
                let cod = random_partner(rng, &dom, &config.bounds);
                LawCase {
                    map: sample::random_point_map(rng, &dom, &cod),
                    a: sample::random_set(rng, &dom),
                    b: sample::random_set(rng, &dom),
                    g: sample::random_set(rng, &cod),
                    h: sample::random_set(rng, &cod),
                }
            })
            .collect()
    }
}

/// The eleven image/preimage laws; returns the first that fails.
pub fn failed_law(
    f: &PointMap,
    a: &MultiFuzzySet,
    b: &MultiFuzzySet,
    g: &MultiFuzzySet,
    h: &MultiFuzzySet,
) -> Option<&'static str> {
    let dom = a.shape();
    let cod = g.shape();
    let img = |s: &MultiFuzzySet| f.image(s).expect("domain set");
    let pre = |s: &MultiFuzzySet| f.preimage(s).expect("codomain set");
    let leq = |x: &MultiFuzzySet, y: &MultiFuzzySet| x.leq(y).expect("same shape");
    let meet = |x: &MultiFuzzySet, y: &MultiFuzzySet| x.meet(y).expect("same shape");
    let join = |x: &MultiFuzzySet, y: &MultiFuzzySet| x.join_with(y).expect("same shape");
    let laws: [(&'static str, bool); 11] = [
        (
            "image of the null set is null",
            img(&MultiFuzzySet::null(dom.clone())).is_null(),
        ),
        ("image is monotone", !leq(a, b) || leq(&img(a), &img(b))),
        (
            "image of a meet lies below the meet of images",
            leq(&img(&meet(a, b)), &meet(&img(a), &img(b))),
        ),
        (
            "image preserves joins",
            img(&join(a, b)) == join(&img(a), &img(b)),
        ),
        (
            "preimage of the absolute set is absolute",
            pre(&MultiFuzzySet::absolute(cod.clone())).is_absolute(),
        ),
        ("preimage is monotone", !leq(g, h) || leq(&pre(g), &pre(h))),
        (
            "preimage preserves joins",
            pre(&join(g, h)) == join(&pre(g), &pre(h)),
        ),
        (
            "preimage preserves meets",
            pre(&meet(g, h)) == meet(&pre(g), &pre(h)),
        ),
        (
            "preimage commutes with complement",
            pre(&g.complement()) == pre(g).complement(),
        ),
        (
            "a set lies below the preimage of its image (equal when injective)",
            {
                let back = pre(&img(a));
                leq(a, &back) && (!f.is_injective() || back == *a)
            },
        ),
        (
            "the image of a preimage lies below the set (equal when surjective)",
            {
                let forth = img(&pre(g));
                leq(&forth, g) && (!f.is_surjective() || forth == *g)
            },
        ),
    ];
    laws.iter().find(|(_, ok)| !ok).map(|(name, _)| *name)
}

fn eval_laws(c: &LawCase) -> Outcome {
    match failed_law(&c.map, &c.a, &c.b, &c.g, &c.h) {
        None => Outcome::Pass,
        Some(law) => Outcome::Fail(
            law.to_string(),
            json!({
                "map": map_to_json(&c.map),
                "a": set_to_json(&c.a), "b": set_to_json(&c.b),
                "g": set_to_json(&c.g), "h": set_to_json(&c.h),
            }),
        ),
    }
}
