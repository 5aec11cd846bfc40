//! `etsa`: trapping-set bounds, existence certificates and code scanning.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use etsa::bounds;
use etsa::constructions;
use etsa::extremal::{ExQuery, Extremal};
use etsa::feasibility;
use etsa::irregular;
use etsa::oracle::{self, DegreeSpec, Existence, ExistenceQuery};
use etsa::tanner;
use etsa::types::{ColumnWeight, DegreeSet, Girth};
use etsa::{Budget, Error};

#[derive(Parser)]
#[command(
    name = "etsa",
    about = "Lower bounds, exhaustive existence certificates and scanners for \
             elementary trapping sets of LDPC codes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Emit a single JSON document instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Node-expansion budget per search.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_LIMIT)]
    budget: u64,
    /// Worker threads for table computations (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Size and deficiency lower bounds for a column weight and girth.
    Bounds {
        #[arg(long)]
        gamma: u32,
        /// Tanner girth (even, >= 6).
        #[arg(long)]
        girth: u32,
        /// Largest size to report rows for (default: the size bound itself).
        #[arg(long)]
        a_max: Option<u32>,
    },
    /// Girth-independent infeasible deficiencies per (a, gamma).
    Feasibility {
        #[arg(long)]
        gamma: u32,
        /// Upper end of a gamma range starting at --gamma.
        #[arg(long)]
        gamma_max: Option<u32>,
        #[arg(long, default_value_t = 4)]
        a_min: u32,
        #[arg(long)]
        a_max: u32,
    },
    /// Certified existence of (a, b) signatures up to a size cap.
    Existence {
        #[arg(long, conflicts_with = "degrees")]
        gamma: Option<u32>,
        /// Comma-separated degree set for irregular codes, e.g. 2,3.
        #[arg(long)]
        degrees: Option<String>,
        /// Tanner girth (even, >= 6).
        #[arg(long)]
        girth: u32,
        /// Largest size to decide.
        #[arg(long = "a")]
        a_max: u32,
        /// Largest deficiency to decide (default: a-1 per size).
        #[arg(long = "b")]
        b_max: Option<u32>,
    },
    /// Minimum ETS sizes for codes with a set of column weights (girth 8).
    Irregular {
        /// Comma-separated degree set, e.g. 2,3,5.
        #[arg(long, required_unless_present = "table_universe")]
        degrees: Option<String>,
        /// Build the whole subset table over a universe, e.g. 2-6.
        #[arg(long)]
        table_universe: Option<String>,
    },
    /// Deterministic tight instances (normal graph or lifted Tanner graph).
    Construct {
        #[arg(long)]
        gamma: u32,
        /// 8 for the complete-bipartite instance, 10 for the stored
        /// girth-10 witness.
        #[arg(long)]
        girth: u32,
        #[arg(long, value_enum, default_value_t = ConstructFormat::Dot)]
        format: ConstructFormat,
    },
    /// Maximum edge count of an n-vertex graph with a girth floor.
    Extremal {
        #[arg(long)]
        n: u64,
        /// Minimum girth of the graph itself (not the Tanner lift).
        #[arg(long)]
        girth_min: u32,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Override the exact-search size threshold.
        #[arg(long)]
        exact_limit: Option<usize>,
    },
    /// Scan a parity-check code for small elementary trapping sets.
    Scan {
        #[arg(long)]
        alist: PathBuf,
        #[arg(long)]
        a_max: u32,
        #[arg(long)]
        b_max: Option<u32>,
        /// Keep only b < a classes and enumerate connected subsets only.
        #[arg(long)]
        dominant_only: bool,
    },
    /// Girth of a parity-check code.
    Girth {
        #[arg(long)]
        alist: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructFormat {
    Dot,
    Alist,
    Json,
}

fn parse_degree_list(s: &str) -> Result<DegreeSet, Error> {
    let degrees: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
    let degrees =
        degrees.map_err(|_| Error::InvalidInput(format!("bad degree list `{s}`")))?;
    DegreeSet::new(degrees)
}

fn parse_universe(s: &str) -> Result<DegreeSet, Error> {
    if let Some((lo, hi)) = s.split_once('-') {
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad universe `{s}`")))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad universe `{s}`")))?;
        if hi < lo {
            return Err(Error::InvalidInput(format!("empty universe `{s}`")));
        }
        DegreeSet::new((lo..=hi).collect())
    } else {
        parse_degree_list(s)
    }
}

fn extremal_with_cache() -> Extremal {
    match std::env::var_os("ETSA_CACHE_DIR") {
        Some(dir) => Extremal::with_cache_dir(std::path::Path::new(&dir)),
        None => Extremal::new(),
    }
}

fn tanner_girth(girth: u32) -> Result<Girth, Error> {
    let g = Girth::new(girth)?;
    if girth < 6 {
        return Err(Error::InvalidInput(
            "trapping-set analyses need Tanner girth >= 6".into(),
        ));
    }
    Ok(g)
}

fn run(cli: Cli) -> Result<(), Error> {
    if let Some(threads) = cli.common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    }
    let budget = Budget::new(cli.common.budget);
    let json = cli.common.json;
    match cli.command {
        Command::Bounds { gamma, girth, a_max } => {
            let gamma = ColumnWeight::new(gamma)?;
            let girth = tanner_girth(girth)?;
            let extremal = extremal_with_cache();
            let size = bounds::min_size(gamma, girth)?;
            let a_max = a_max.unwrap_or(size.value as u32);
            let report = bounds::bound_report(gamma, girth, a_max, &extremal, &budget)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", report.render_text());
            }
        }
        Command::Feasibility {
            gamma,
            gamma_max,
            a_min,
            a_max,
        } => {
            let hi = gamma_max.unwrap_or(gamma);
            if hi < gamma || a_max < a_min {
                return Err(Error::InvalidInput("empty table range".into()));
            }
            let gammas: Result<Vec<ColumnWeight>, Error> =
                (gamma..=hi).map(ColumnWeight::new).collect();
            let table = feasibility::nonexistence_table(gammas?, a_min..=a_max)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&table).unwrap());
            } else {
                print!("{}", table.render_text());
            }
        }
        Command::Existence {
            gamma,
            degrees,
            girth,
            a_max,
            b_max,
        } => {
            let girth = tanner_girth(girth)?;
            let spec = match (gamma, degrees) {
                (Some(g), None) => DegreeSpec::Regular(ColumnWeight::new(g)?),
                (None, Some(d)) => DegreeSpec::Irregular(parse_degree_list(&d)?),
                _ => {
                    return Err(Error::InvalidInput(
                        "pass exactly one of --gamma or --degrees".into(),
                    ))
                }
            };
            let extremal = extremal_with_cache();
            let min_girth = girth.normal_girth();
            let mut cells = Vec::new();
            for a in 1..=a_max {
                // Default to the dominant regime b < a; an explicit --b cap
                // may reach past it.
                let hi = match b_max {
                    Some(explicit) => explicit,
                    None => a.saturating_sub(1),
                };
                for b in 0..=hi {
                    if b >= a && b_max.is_none() {
                        continue;
                    }
                    let q = ExistenceQuery {
                        a,
                        b,
                        degree_spec: spec.clone(),
                        min_normal_girth: min_girth,
                        require_all_degrees: matches!(spec, DegreeSpec::Irregular(_)),
                    };
                    let result = oracle::exists_ets(&q, &extremal, &budget);
                    cells.push((a, b, result));
                }
            }
            if json {
                let cells: Vec<serde_json::Value> = cells
                    .iter()
                    .map(|(a, b, r)| match r {
                        Ok(Existence::Yes(w)) => json!({
                            "a": a, "b": b, "exists": true,
                            "witness": w,
                        }),
                        Ok(Existence::No) => json!({"a": a, "b": b, "exists": false}),
                        Err(_) => json!({"a": a, "b": b, "exists": null}),
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "spec": spec.to_string(),
                        "tanner_girth": girth.get(),
                        "cells": cells,
                    }))
                    .unwrap()
                );
            } else {
                println!("{spec}, Tanner girth {}", girth.get());
                let mut budget_hit = false;
                for a in 1..=a_max {
                    let row: Vec<String> = cells
                        .iter()
                        .filter(|(ca, _, _)| *ca == a)
                        .filter_map(|(_, b, r)| match r {
                            Ok(Existence::Yes(_)) => Some(b.to_string()),
                            Ok(Existence::No) => None,
                            Err(_) => {
                                budget_hit = true;
                                Some(format!("{b}?"))
                            }
                        })
                        .collect();
                    if !row.is_empty() {
                        println!("a={a}: b={}", row.join(","));
                    }
                }
                if budget_hit {
                    println!("(? = undecided within budget)");
                }
            }
            if cells.iter().any(|(_, _, r)| r.is_err()) {
                return Err(Error::BudgetExceeded);
            }
        }
        Command::Irregular {
            degrees,
            table_universe,
        } => {
            let extremal = extremal_with_cache();
            if let Some(universe) = table_universe {
                let universe = parse_universe(&universe)?;
                let table = irregular::irregular_table(&universe, &extremal, &budget)?;
                if json {
                    println!("{}", serde_json::to_string_pretty(&table).unwrap());
                } else {
                    print!("{}", table.render_text());
                }
                if table
                    .entries
                    .iter()
                    .any(|e| matches!(e, irregular::IrregularEntry::Unknown { .. }))
                {
                    return Err(Error::BudgetExceeded);
                }
            } else {
                let degrees = parse_degree_list(&degrees.expect("clap: required"))?;
                let min = irregular::min_size_irregular(&degrees, &extremal, &budget)?;
                if json {
                    println!("{}", serde_json::to_string_pretty(&min).unwrap());
                } else {
                    println!(
                        "d(v) in {}: minimum size {} with {} ETS",
                        min.degrees, min.signature.a, min.signature
                    );
                }
            }
        }
        Command::Construct {
            gamma,
            girth,
            format,
        } => {
            let gamma = ColumnWeight::new(gamma)?;
            let graph = match girth {
                8 => constructions::tight_girth8(gamma),
                10 => constructions::girth10_witness(gamma)?,
                g => {
                    return Err(Error::InvalidInput(format!(
                        "constructions exist for girth 8 and 10, got {g}"
                    )))
                }
            };
            match format {
                ConstructFormat::Dot => print!("{}", graph.to_dot()),
                ConstructFormat::Json => println!("{}", graph.to_json()),
                ConstructFormat::Alist => {
                    print!("{}", tanner::serialize_alist(&constructions::lift_to_tanner(&graph)))
                }
            }
        }
        Command::Extremal {
            n,
            girth_min,
            max_degree,
            exact_limit,
        } => {
            if girth_min < 3 {
                return Err(Error::InvalidInput("girth floor must be >= 3".into()));
            }
            let mut extremal = extremal_with_cache();
            if let Some(limit) = exact_limit {
                extremal.exact_threshold_triangle_free = limit;
                extremal.exact_threshold_higher_girth = limit;
            }
            let threshold = if girth_min == 4 {
                extremal.exact_threshold_triangle_free
            } else {
                extremal.exact_threshold_higher_girth
            };
            let witness = if girth_min >= 4 && n as usize <= threshold.min(16) {
                let q = ExQuery::new(n as usize, girth_min, max_degree)?;
                Some(extremal.exact_ex(&q, &budget)?.1)
            } else {
                None
            };
            let bound = extremal.max_edges(n, girth_min, max_degree, &budget);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "n": n,
                        "min_girth": girth_min,
                        "max_degree": max_degree,
                        "value": bound.value,
                        "exact": bound.exact,
                        "source": bound.source.to_string(),
                        "witness": witness,
                    }))
                    .unwrap()
                );
            } else {
                let kind = if bound.exact { "maximum" } else { "upper bound" };
                println!(
                    "n={n} girth>={girth_min}{}: {kind} {} [{}]",
                    max_degree.map_or(String::new(), |d| format!(" max-degree {d}")),
                    bound.value,
                    bound.source
                );
                if let Some(w) = witness {
                    println!("witness edges: {:?}", w.edges());
                }
            }
        }
        Command::Scan {
            alist,
            a_max,
            b_max,
            dominant_only,
        } => {
            let text = std::fs::read_to_string(&alist)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", alist.display())))?;
            let t = tanner::parse_alist(&text)?;
            let report = tanner::scan_ets(
                &t,
                a_max,
                b_max.unwrap_or(u32::MAX),
                dominant_only,
                &budget,
            )?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", report.render_text());
            }
        }
        Command::Girth { alist } => {
            let text = std::fs::read_to_string(&alist)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", alist.display())))?;
            let t = tanner::parse_alist(&text)?;
            let girth = tanner::girth_of(&t);
            if json {
                println!("{}", json!({ "girth": girth }));
            } else {
                match girth {
                    Some(g) => println!("girth: {g}"),
                    None => println!("girth: infinity"),
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::BudgetExceeded) => {
            eprintln!("error: {}", Error::BudgetExceeded);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
