//! Argument parsing and the check drivers behind each subcommand.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use mftop::cover::{check_compact, check_product_compact, CompactnessConfig, CompactnessReport};
use mftop::neighborhood::verify_nbd_axioms_with;
use mftop::product::is_second_countable;
use mftop::sample::Bounds;
use mftop::{
    nbd_family, nbd_from_topology, product_topology, verify_axioms, ContinuityCriterion, Factor,
    NbdAxiom, NbdChecks, SpaceMap,
};
use serde_json::{json, Value};

use crate::document::{family_to_json, map_to_json, parse_set, parse_space, SpaceDocument};
use crate::error::CliError;
use crate::mine::{mine_counterexamples, MineConfig, CHECK_IDS};
use crate::report::{Format, Report};

/// Budget override read from the environment.
pub const BUDGET_ENV: &str = "MFTOP_BUDGET_MS";

#[derive(Debug, Parser)]
#[command(
    name = "mftop",
    version,
    about = "Check finite multi-fuzzy topological spaces"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Time budget in milliseconds for mining; MFTOP_BUDGET_MS overrides it.
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Load spaces without checking the topology axioms.
    #[arg(long, global = true)]
    pub no_verify: bool,
    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the topology axioms of a space document.
    Verify { space: PathBuf },
    /// Neighbourhood families of every point (or one) and the N1-N5 checks.
    Nbd {
        space: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Rebuild the topology from its neighbourhood system.
    Roundtrip { space: PathBuf },
    /// Evaluate the continuity criteria of a map.
    Continuity {
        space: PathBuf,
        /// Codomain document; defaults to the domain.
        #[arg(long)]
        codomain: Option<PathBuf>,
        /// Map name inside the domain document.
        #[arg(long)]
        map: Option<String>,
        /// "all" or a comma list of open-preimage, closed-preimage,
        /// nbd-pullback, nbd-witness.
        #[arg(long, default_value = "all")]
        criteria: String,
    },
    /// Compare the homeomorphism characterisations of a map.
    Homeo {
        space: PathBuf,
        #[arg(long)]
        codomain: Option<PathBuf>,
        #[arg(long)]
        map: Option<String>,
    },
    /// Build the product of two spaces and run the product checks.
    Product {
        first: PathBuf,
        second: PathBuf,
        /// "all" or a comma list of base, projections, slices,
        /// second-countable, compact.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value_t = 4)]
        max_family: usize,
    },
    /// Minimal base and second countability; optionally test a candidate
    /// base given as the opens of another document.
    Base {
        space: PathBuf,
        #[arg(long)]
        candidate: Option<PathBuf>,
    },
    /// Enumerate open covers and extract finite subcovers.
    Compact {
        space: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_family: usize,
    },
    /// Search small instances for counterexamples to one check.
    Mine {
        /// One of the check identifiers, or "list".
        check: String,
        #[arg(long, default_value_t = 2)]
        max_points: usize,
        #[arg(long, default_value_t = 1)]
        max_dimension: usize,
        #[arg(long, default_value_t = 2)]
        max_denominator: u32,
        #[arg(long, default_value_t = 3)]
        max_seeds: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Neighbourhood axioms to leave out of the checker (N1..N5).
        #[arg(long, value_delimiter = ',')]
        drop: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Nbd { .. } => "nbd",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Continuity { .. } => "continuity",
            Command::Homeo { .. } => "homeo",
            Command::Product { .. } => "product",
            Command::Base { .. } => "base",
            Command::Compact { .. } => "compact",
            Command::Mine { .. } => "mine",
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path, verify: bool) -> Result<SpaceDocument, CliError> {
    parse_space(&read(path)?, verify).map_err(|e| match e {
        CliError::Input {
            path: field,
            message,
        } => CliError::Input {
            path: format!("{}: {field}", path.display()),
            message,
        },
        other => other,
    })
}

fn budget(cli: &Cli) -> Result<Option<u64>, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(text) => text.trim().parse().map(Some).map_err(|_| {
            CliError::Usage(format!(
                "{BUDGET_ENV} must be a whole number of milliseconds"
            ))
        }),
        Err(_) => Ok(cli.budget_ms),
    }
}

fn parse_axiom(name: &str) -> Result<NbdAxiom, CliError> {
    match name.trim().to_ascii_uppercase().as_str() {
        "N1" => Ok(NbdAxiom::N1),
        "N2" => Ok(NbdAxiom::N2),
        "N3" => Ok(NbdAxiom::N3),
        "N4" => Ok(NbdAxiom::N4),
        "N5" => Ok(NbdAxiom::N5),
        other => Err(CliError::Usage(format!("unknown axiom {other}"))),
    }
}

fn selection<'a>(text: &'a str, known: &[&str]) -> Result<Vec<&'a str>, CliError> {
    if text == "all" {
        return Ok(Vec::new());
    }
    let picked: Vec<&str> = text.split(',').map(str::trim).collect();
    if let Some(bad) = picked.iter().find(|p| !known.contains(p)) {
        return Err(CliError::Usage(format!(
            "unknown check {bad}; expected one of {}",
            known.join(", ")
        )));
    }
    Ok(picked)
}

fn wants(selected: &[&str], name: &str) -> bool {
    selected.is_empty() || selected.contains(&name)
}

fn compactness_json(r: &CompactnessReport) -> Value {
    json!({
        "compact": r.compact,
        "cover_exists": r.cover_exists,
        "vacuous": !r.cover_exists,
        "exhaustive": r.exhaustive,
        "families_examined": r.families_examined,
        "open_covers": r.open_covers,
        "subcovers_found": r.subcovers_found,
        "largest_subcover": r.largest_subcover,
        "readings_agree": r.readings_agree,
        "basic_covers": r.basic_covers,
        "factor_pattern_holds": r.factor_pattern_holds,
    })
}

fn resolve_map(
    cli: &Cli,
    space: &Path,
    codomain: Option<&Path>,
    name: Option<&str>,
) -> Result<SpaceMap, CliError> {
    let verify = !cli.no_verify;
    let dom = load(space, verify)?;
    let cod = match codomain {
        Some(path) => load(path, verify)?,
        None => dom.clone(),
    };
    let map = dom.point_map(name, cod.topology.shape().universe())?;
    SpaceMap::new(map, dom.topology.clone(), cod.topology.clone()).map_err(|e| CliError::Input {
        path: "map".into(),
        message: e.to_string(),
    })
}

/// Runs the parsed command and builds its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let started = Instant::now();
    let verify = !cli.no_verify;
    let mut report = Report::new(cli.command.name(), cli.seed);
    match &cli.command {
        Command::Verify { space } => {
            let doc = load(space, false)?;
            let t = &doc.topology;
            let axioms = verify_axioms(t.shape(), t.opens(), t.kind()).expect("shapes agree");
            let violations: Vec<Value> = axioms
                .violations
                .iter()
                .map(|v| json!({"code": v.code(), "message": v.to_string()}))
                .collect();
            report.check(
                &format!("{} axioms", t.kind()),
                axioms.is_ok(),
                if axioms.is_ok() {
                    Value::Null
                } else {
                    json!({"violations": violations, "truncated": axioms.truncated})
                },
            );
            report.data("opens", t.len().into());
        }
        Command::Nbd { space, point } => {
            let doc = load(space, verify)?;
            let t = &doc.topology;
            let system = nbd_from_topology(t).map_err(|e| CliError::Input {
                path: "space".into(),
                message: e.to_string(),
            })?;
            let axioms =
                verify_nbd_axioms_with(&system, NbdChecks::default()).expect("checker runs");
            for axiom in [
                NbdAxiom::N1,
                NbdAxiom::N2,
                NbdAxiom::N3,
                NbdAxiom::N4,
                NbdAxiom::N5,
            ] {
                let witnesses: Vec<String> = axioms
                    .violations
                    .iter()
                    .filter(|v| v.axiom == axiom)
                    .map(|v| v.to_string())
                    .collect();
                let ok = witnesses.is_empty();
                report.check(
                    &axiom.to_string(),
                    ok,
                    if ok { Value::Null } else { json!(witnesses) },
                );
            }
            let labels = t.shape().universe().labels();
            let mut families = serde_json::Map::new();
            for (x, label) in labels.iter().enumerate() {
                if point.as_deref().is_none_or(|p| p == label) {
                    families.insert(label.clone(), family_to_json(system.family(x)));
                }
            }
            if let Some(p) = point {
                if !labels.contains(p) {
                    return Err(CliError::Usage(format!("unknown point {p}")));
                }
            }
            report.data("families", Value::Object(families));
        }
        Command::Roundtrip { space } => {
            let doc = load(space, verify)?;
            let t = &doc.topology;
            let system = nbd_from_topology(t).map_err(|e| CliError::Input {
                path: "space".into(),
                message: e.to_string(),
            })?;
            let axioms =
                verify_nbd_axioms_with(&system, NbdChecks::default()).expect("checker runs");
            report.check(
                "neighbourhood system satisfies N1-N5",
                axioms.is_ok(),
                if axioms.is_ok() {
                    Value::Null
                } else {
                    json!(axioms.to_string())
                },
            );
            let rebuilt =
                mftop::neighborhood::topology_from_nbd_unchecked(&system).expect("same shape");
            let same = rebuilt == **t;
            report.check(
                "topology rebuilt from the neighbourhood system equals the original",
                same,
                if same {
                    Value::Null
                } else {
                    json!({"rebuilt": family_to_json(rebuilt.opens())})
                },
            );
            let families_match = t
                .shape()
                .universe()
                .labels()
                .iter()
                .enumerate()
                .all(|(x, label)| nbd_family(&rebuilt, label).is_ok_and(|f| f == system.family(x)));
            report.check(
                "neighbourhoods of the rebuilt topology equal the system",
                families_match,
                Value::Null,
            );
        }
        Command::Continuity {
            space,
            codomain,
            map,
            criteria,
        } => {
            let m = resolve_map(cli, space, codomain.as_deref(), map.as_deref())?;
            let names: Vec<&str> = ContinuityCriterion::ALL.iter().map(|c| c.name()).collect();
            let picked = selection(criteria, &names)?;
            let results = m.continuity_criteria().map_err(|e| CliError::Input {
                path: "space".into(),
                message: e.to_string(),
            })?;
            let chosen: Vec<(ContinuityCriterion, bool)> = results
                .into_iter()
                .filter(|(c, _)| wants(&picked, c.name()))
                .collect();
            let mut verdicts = serde_json::Map::new();
            for (c, v) in &chosen {
                verdicts.insert(c.name().to_string(), (*v).into());
            }
            let agree = chosen.windows(2).all(|w| w[0].1 == w[1].1);
            report.check("criteria agree", agree, Value::Object(verdicts));
            report.data(
                "continuous",
                chosen.first().map(|c| c.1).unwrap_or(false).into(),
            );
            report.data("open_map", m.is_open_map().into());
            report.data("closed_map", m.is_closed_map().into());
            report.data("map", map_to_json(m.map()));
        }
        Command::Homeo {
            space,
            codomain,
            map,
        } => {
            let m = resolve_map(cli, space, codomain.as_deref(), map.as_deref())?;
            let h = m.homeomorphism();
            report.check(
                "homeomorphism characterisations agree",
                h.agree(),
                json!({
                    "bijective": h.bijective,
                    "continuous": h.continuous,
                    "inverse_continuous": h.inverse_continuous,
                    "open": h.open,
                }),
            );
            report.data("homeomorphism", h.via_inverse().into());
        }
        Command::Product {
            first,
            second,
            check,
            max_family,
        } => {
            let picked = selection(
                check,
                &[
                    "base",
                    "projections",
                    "slices",
                    "second-countable",
                    "compact",
                ],
            )?;
            let t1 = load(first, verify)?.topology;
            let t2 = load(second, verify)?.topology;
            let p = product_topology(t1.clone(), t2.clone()).map_err(|e| CliError::Input {
                path: "spaces".into(),
                message: e.to_string(),
            })?;
            if wants(&picked, "base") {
                report.check(
                    "basis is an open base",
                    p.basis_is_open_base(),
                    json!({"basis_size": p.basis().len()}),
                );
            }
            if wants(&picked, "projections") {
                for (name, f) in [("first", Factor::First), ("second", Factor::Second)] {
                    let pi = p.projection(f);
                    report.check(
                        &format!("{name} projection continuous"),
                        pi.is_continuous(),
                        Value::Null,
                    );
                    report.check(
                        &format!("{name} projection open"),
                        pi.is_open_map(),
                        Value::Null,
                    );
                }
                report.check(
                    "generated by the projection preimages",
                    p.smallest_topology_check().expect("same shape"),
                    Value::Null,
                );
            }
            if wants(&picked, "slices") {
                let mut ok = true;
                for fixed in [Factor::First, Factor::Second] {
                    for label in p.factor(fixed).shape().universe().labels() {
                        ok &= p
                            .slice_embedding(label, fixed)
                            .expect("known point")
                            .is_continuous();
                    }
                }
                report.check("slice embeddings continuous", ok, Value::Null);
            }
            if wants(&picked, "second-countable") {
                let base = p
                    .product_base(&t1.minimal_base(), &t2.minimal_base())
                    .expect("minimal bases");
                let ok = p
                    .topology()
                    .is_open_base(&base)
                    .expect("basic sets are open");
                report.check(
                    "product of minimal bases is a base",
                    ok,
                    json!({"size": base.len()}),
                );
                let (countable, minimal) = is_second_countable(p.topology());
                report.check(
                    "second countable",
                    countable,
                    json!({"minimal_base_size": minimal.len()}),
                );
            }
            if wants(&picked, "compact") {
                let config = CompactnessConfig {
                    max_family: *max_family,
                    seed: cli.seed,
                    ..CompactnessConfig::default()
                };
                let r = check_product_compact(&p, &config);
                let ok = r.compact && r.factor_pattern_holds && r.subcovers_found == r.open_covers;
                report.check("compact", ok, compactness_json(&r));
            }
            report.data("points", p.shape().points().into());
            report.data("opens", p.topology().len().into());
        }
        Command::Base { space, candidate } => {
            let t = load(space, verify)?.topology;
            let base = t.minimal_base();
            report.check(
                "minimal base is an open base",
                t.is_open_base(&base).expect("members are open"),
                json!({"size": base.len()}),
            );
            let (countable, _) = is_second_countable(&t);
            report.check("second countable", countable, Value::Null);
            if let Some(path) = candidate {
                let text = read(path)?;
                let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input {
                    path: format!(
                        "{}: line {} column {}",
                        path.display(),
                        e.line(),
                        e.column()
                    ),
                    message: e.to_string(),
                })?;
                let sets = value
                    .get("opens")
                    .and_then(Value::as_array)
                    .ok_or_else(|| CliError::Input {
                        path: format!("{}: opens", path.display()),
                        message: "expected an array".into(),
                    })?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| parse_set(t.shape(), v, &format!("opens[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let ok = t.is_open_base(&sets).unwrap_or_default();
                report.check("candidate is an open base", ok, json!({"size": sets.len()}));
            }
            report.data("minimal_base", family_to_json(&base));
        }
        Command::Compact { space, max_family } => {
            let t = load(space, verify)?.topology;
            let config = CompactnessConfig {
                max_family: *max_family,
                seed: cli.seed,
                ..CompactnessConfig::default()
            };
            let r = check_compact(&t, &config);
            report.check(
                "compact",
                r.compact && r.subcovers_found == r.open_covers,
                compactness_json(&r),
            );
            report.check("cover readings agree", r.readings_agree, Value::Null);
        }
        Command::Mine {
            check,
            max_points,
            max_dimension,
            max_denominator,
            max_seeds,
            samples,
            drop,
        } => {
            if check == "list" {
                report.data("checks", json!(CHECK_IDS));
            } else {
                let mut checks = NbdChecks::default();
                for name in drop {
                    checks = checks.without(parse_axiom(name)?);
                }
                let config = MineConfig {
                    bounds: Bounds {
                        max_points: *max_points,
                        max_dimension: *max_dimension,
                        max_denominator: *max_denominator,
                        max_seeds: *max_seeds,
                    },
                    samples: *samples,
                    seed: cli.seed,
                    checks,
                    deadline: budget(cli)?.map(|ms| started + Duration::from_millis(ms)),
                    ..MineConfig::default()
                };
                if *max_points == 0
                    || *max_dimension == 0
                    || *max_denominator == 0
                    || *max_denominator > 255
                {
                    return Err(CliError::Usage(
                        "bounds must be positive (denominator at most 255)".into(),
                    ));
                }
                let mined = mine_counterexamples(check, &config).ok_or_else(|| {
                    CliError::Usage(format!("unknown check {check}; try `mftop mine list`"))
                })?;
                report.check(
                    "no counterexamples",
                    mined.counterexamples == 0,
                    Value::Null,
                );
                report.check("search complete", mined.complete, Value::Null);
                report.data("mined", mined.to_json());
                let dropped: Vec<String> =
                    drop.iter().map(|d| d.trim().to_ascii_uppercase()).collect();
                report.data("dropped_axioms", json!(dropped));
            }
        }
    }
    if cli.timing {
        report.elapsed_ms = Some(started.elapsed().as_millis());
    }
    Ok(report)
}
