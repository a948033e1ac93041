mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use finitype::bracelets::{realize_as_link, to_chord_diagram, HopfPairBracelet};
use finitype::chord_algebra::{dim_a_bounded, enumerate, ChordError};
use finitype::diagram::{mark_singular, serialize_pd};
use finitype::goussarov::{
    encode_singular_as_bracelet, goussarov_type_check, theorem1_identity_check,
};
use finitype::invariants::{linking_matrix, Invariant};
use finitype::selftest;
use finitype::vassiliev::{vassiliev_type_check, TypeCheckReport};

use input::{input_err, load_diagram, load_family, load_suite, parse_err, parse_list, CliError};

#[derive(Parser)]
#[command(
    name = "finitype",
    version,
    about = "Finite-type knot invariant toolkit"
)]
struct Cli {
    /// Structured output instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    /// Largest chord-diagram degree accepted.
    #[arg(long, global = true, default_value_t = 7)]
    max_degree: usize,
    /// Largest crossing count accepted for input diagrams.
    #[arg(long, global = true, default_value_t = 16)]
    max_crossings: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate jones, conway, c2, j3 or the linking matrix (lk).
    Invariant {
        #[arg(long)]
        name: String,
        /// File, `file#name` table row, or inline PD/Gauss code.
        #[arg(long)]
        pd: String,
    },
    /// Alternating sums over crossing switches.
    Vtype(VtypeArgs),
    /// Alternating sum over the regions of a detour family.
    Gtype {
        #[arg(long)]
        invariant: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        family: PathBuf,
    },
    /// PD code of one resolution of a detour family.
    Resolve {
        #[arg(long)]
        family: PathBuf,
        /// 1-based region numbers whose detours are taken.
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// Detour family encoding the double points of a marked diagram.
    Encode {
        #[arg(long)]
        pd: String,
        #[arg(long)]
        singular: String,
    },
    /// Compare the switching sum with the detour sum of the encoding.
    Theorem1 {
        #[arg(long)]
        pd: String,
        #[arg(long)]
        singular: String,
        #[arg(long)]
        invariant: String,
    },
    /// Dimension of chord diagrams of degree n modulo 4T and FI.
    DimA {
        #[arg(long)]
        n: usize,
    },
    /// Chord diagrams of degree n up to rotation.
    Chords {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        list: bool,
    },
    /// Hopf-pair bracelet from a matching such as 1:3,2:4.
    Bracelet {
        #[arg(long)]
        matching: String,
        /// Number of rings; defaults to twice the number of pairs.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "chord")]
        emit_link: bool,
        #[arg(long)]
        chord: bool,
    },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Args)]
struct VtypeArgs {
    #[arg(long)]
    invariant: String,
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "suite", requires = "crossings")]
    pd: Option<String>,
    #[arg(long)]
    crossings: Option<String>,
    /// Manifest of `pdfile<TAB>crossings` lines.
    #[arg(long, required_unless_present = "pd")]
    suite: Option<PathBuf>,
}

struct Report {
    lines: Vec<String>,
    json: Json,
    failed: bool,
}

impl Report {
    fn ok(lines: Vec<String>, json: Json) -> Self {
        Report {
            lines,
            json,
            failed: false,
        }
    }
}

fn invariant_arg(name: &str) -> Result<Invariant, CliError> {
    name.parse().map_err(input_err)
}

fn type_report(r: &TypeCheckReport) -> Report {
    let cases: Vec<Json> = r
        .cases
        .iter()
        .map(|c| json!({"case": c.label, "value": c.value.to_string()}))
        .collect();
    Report {
        lines: r.to_string().lines().map(str::to_string).collect(),
        json: json!({"invariant": r.invariant.name(), "degree": r.degree, "passed": r.passed(), "cases": cases}),
        failed: !r.passed(),
    }
}

fn here() -> &'static Path {
    Path::new("")
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let maxc = cli.max_crossings;
    match &cli.command {
        Command::Invariant { name, pd } => {
            let k = load_diagram(pd, here(), maxc)?;
            if name == "lk" {
                let m = linking_matrix(&k).map_err(input_err)?;
                let lines = m
                    .iter()
                    .map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                return Ok(Report::ok(lines, json!({"invariant": "lk", "matrix": m})));
            }
            let inv = invariant_arg(name)?;
            let v = inv.evaluate(&k).map_err(input_err)?;
            Ok(Report::ok(
                vec![v.to_string()],
                json!({"invariant": inv.name(), "value": v.to_string()}),
            ))
        }
        Command::Vtype(a) => {
            let inv = invariant_arg(&a.invariant)?;
            let (sources, corpus): (Vec<String>, Vec<_>) = match (&a.pd, &a.suite) {
                (Some(pd), _) => {
                    let crossings = parse_list(a.crossings.as_deref().unwrap_or_default())?;
                    (
                        vec![pd.clone()],
                        vec![(load_diagram(pd, here(), maxc)?, crossings)],
                    )
                }
                (None, Some(suite)) => load_suite(suite, maxc)?
                    .into_iter()
                    .map(|c| (c.source, (c.diagram, c.crossings)))
                    .unzip(),
                (None, None) => {
                    return Err(CliError::Input("one of --pd or --suite is required".into()))
                }
            };
            let mut r = vassiliev_type_check(inv, a.n, &corpus).map_err(input_err)?;
            for (case, source) in r.cases.iter_mut().zip(&sources) {
                case.label = format!("{} {source}", case.label);
            }
            Ok(type_report(&r))
        }
        Command::Gtype {
            invariant,
            n,
            family,
        } => {
            let inv = invariant_arg(invariant)?;
            let f = load_family(family)?;
            let r = goussarov_type_check(inv, *n, &[f]).map_err(input_err)?;
            Ok(type_report(&r))
        }
        Command::Resolve { family, subset } => {
            let f = load_family(family)?;
            let mut regions = Vec::new();
            for r in parse_list(subset)? {
                if r == 0 || r > f.region_count() {
                    return Err(CliError::Input(format!(
                        "region {r} outside 1..{}",
                        f.region_count()
                    )));
                }
                regions.push(r - 1);
            }
            let pd = serialize_pd(&f.resolve(&regions).map_err(input_err)?);
            Ok(Report::ok(vec![pd.clone()], json!({"pd": pd})))
        }
        Command::Encode { pd, singular } => {
            let k = load_diagram(pd, here(), maxc)?;
            let s = mark_singular(&k, &parse_list(singular)?).map_err(input_err)?;
            let f = encode_singular_as_bracelet(&s).map_err(input_err)?;
            let text = f.to_json();
            let value: Json = serde_json::from_str(&text).map_err(parse_err)?;
            Ok(Report::ok(vec![text], value))
        }
        Command::Theorem1 {
            pd,
            singular,
            invariant,
        } => {
            let inv = invariant_arg(invariant)?;
            let k = load_diagram(pd, here(), maxc)?;
            let s = mark_singular(&k, &parse_list(singular)?).map_err(input_err)?;
            let c = theorem1_identity_check(&s, inv).map_err(input_err)?;
            let verdict = if c.equal { "PASS" } else { "FAIL" };
            Ok(Report {
                lines: vec![
                    format!("vassiliev={}", c.lhs),
                    format!("goussarov={}", c.rhs),
                    format!("{verdict} {inv} with {} double points", s.degree()),
                ],
                json: json!({"invariant": inv.name(), "vassiliev": c.lhs.to_string(),
                             "goussarov": c.rhs.to_string(), "equal": c.equal}),
                failed: !c.equal,
            })
        }
        Command::DimA { n } => {
            let r = dim_a_bounded(*n, cli.max_degree).map_err(input_err)?;
            Ok(Report::ok(
                vec![format!("dim={}", r.dimension)],
                json!({"degree": r.degree, "dim": r.dimension, "diagrams": r.diagram_count,
                       "relations": r.relation_count, "rank": r.rank}),
            ))
        }
        Command::Chords { n, list } => {
            if *n > cli.max_degree {
                return Err(input_err(ChordError::DegreeTooLarge {
                    degree: *n,
                    bound: cli.max_degree,
                }));
            }
            let all = enumerate(*n);
            let words: Vec<String> = all.iter().map(|d| d.to_string()).collect();
            let mut lines = vec![format!("count={}", all.len())];
            if *list {
                lines.extend(words.iter().cloned());
            }
            let json = if *list {
                json!({"degree": n, "count": all.len(), "diagrams": words})
            } else {
                json!({"degree": n, "count": all.len()})
            };
            Ok(Report::ok(lines, json))
        }
        Command::Bracelet {
            matching,
            n,
            emit_link,
            chord,
        } => {
            let pairs = matching.split(',').filter(|s| !s.trim().is_empty()).count();
            let b = HopfPairBracelet::parse(n.unwrap_or(2 * pairs), matching).map_err(input_err)?;
            let d = to_chord_diagram(&b);
            let link = realize_as_link(&b);
            let pd = serialize_pd(link.link());
            let mut lines = Vec::new();
            if *chord || !*emit_link {
                lines.push(d.to_string());
            }
            if *emit_link || !*chord {
                lines.push(pd.clone());
            }
            Ok(Report::ok(
                lines,
                json!({"matching": b.to_string(), "chord": d.to_string(), "pd": pd}),
            ))
        }
        Command::Selftest { criterion } => {
            let outcomes = match criterion {
                Some(c) if selftest::CRITERIA.contains(c) => vec![selftest::run(*c)],
                Some(c) => return Err(CliError::Input(format!("no criterion {c}"))),
                None => selftest::run_all(),
            };
            let json: Vec<Json> = outcomes
                .iter()
                .map(|o| json!({"criterion": o.number, "passed": o.passed, "summary": o.summary}))
                .collect();
            Ok(Report {
                lines: outcomes.iter().map(|o| o.to_string()).collect(),
                json: Json::Array(json),
                failed: outcomes.iter().any(|o| !o.passed),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("json")
                );
            } else {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
