//! Command-line surface of the engine.
//!
//! Every command buffers its whole artifact and writes it once, so
//! output bytes never depend on scheduling. Machine formats keep
//! rationals exact as `num/den` strings; decimals appear only inside
//! SVG. Exit codes: 0 success, 1 runtime error, 2 usage error (from
//! argument parsing), 3 verification failure.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use farey_tess::continuants::{eval_p, ValenceChain};
use farey_tess::enumeration::{compute_c_table, count_chains, enumerate_chains, tessellation};
use farey_tess::error::Error;
use farey_tess::farey::{valence_windows, FareySequence};
use farey_tess::rational::rat_str;
use farey_tess::report;
use farey_tess::svg::render_svg;
use farey_tess::tiles::tile_of_chain;
use farey_tess::verify::{self, VerifyOptions};

const EXIT_VERIFICATION_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "farey-tess",
    version,
    about = "Exact enumeration of Farey valence chains and their tessellation tiles"
)]
struct Cli {
    /// Worker threads for enumeration and scanning (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the recurrence polynomials on integer tuples and check
    /// their symmetry and reduction identities
    Polys {
        /// Tuples like 2,1,6
        #[arg(required = true)]
        tuples: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the Farey sequence of order Q, or its valence windows
    Farey {
        #[arg(long = "Q")]
        q: u64,
        /// Window length; when given, chains are emitted instead of fractions
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate or count admissible chains of a given length and norm cap
    Chains {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        cap: u64,
        /// Also list every chain, not just the count report
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit exact tile vertices for one chain or a whole tessellation
    Tiles {
        /// A single chain like 2,1,6
        #[arg(long, conflicts_with_all = ["r", "cap"])]
        chain: Option<String>,
        #[arg(long, requires = "cap")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        cap: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute the stabilization constants C(r) with their thresholds
    Constants {
        #[arg(long = "r-max", default_value_t = 10)]
        r_max: usize,
        /// Stabilization is confirmed over [n*, confirm-window * n*]
        #[arg(long = "confirm-window", default_value_t = 2)]
        confirm_window: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the full invariant suite and print a pass/fail ledger
    Verify {
        #[arg(long = "constants-r-max", default_value_t = 20)]
        constants_r_max: usize,
        #[arg(long = "oracle-norm-max", default_value_t = 10)]
        oracle_norm_max: u64,
        #[arg(long = "q-witness", default_value_t = 1000)]
        q_witness: u64,
        #[arg(long = "q-absence", default_value_t = 300)]
        q_absence: u64,
        #[arg(long, default_value_t = 500)]
        points: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Render the order-r tessellation as an SVG figure
    Render {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        cap: u64,
        #[arg(long, default_value_t = 800)]
        viewport: u32,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(1);
        }
        // Sets the global pool once, before any parallel work starts.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Polys {
            tuples,
            format,
            output,
        } => cmd_polys(&tuples, format, output.as_deref()),
        Command::Farey {
            q,
            r,
            format,
            output,
        } => cmd_farey(q, r, format, output.as_deref()),
        Command::Chains {
            r,
            cap,
            list,
            format,
            output,
        } => cmd_chains(r, cap, list, format, output.as_deref()),
        Command::Tiles {
            chain,
            r,
            cap,
            format,
            output,
        } => cmd_tiles(chain.as_deref(), r, cap, format, output.as_deref()),
        Command::Constants {
            r_max,
            confirm_window,
            format,
            output,
        } => cmd_constants(r_max, confirm_window, format, output.as_deref()),
        Command::Verify {
            constants_r_max,
            oracle_norm_max,
            q_witness,
            q_absence,
            points,
            trials,
            format,
            output,
        } => {
            let opts = VerifyOptions {
                constants_r_max,
                oracle_norm_max,
                oracle_q_witness: q_witness,
                oracle_q_absence: q_absence,
                partition_points: points,
                random_chain_trials: trials,
                ..VerifyOptions::default()
            };
            cmd_verify(&opts, format, output.as_deref())
        }
        Command::Render {
            r,
            cap,
            viewport,
            format,
            output,
        } => {
            if format != Format::Svg {
                return Err(Error::InvalidArgument("render emits svg only".into()));
            }
            let tiles = tessellation(r, cap)?;
            let svg = render_svg(&tiles, viewport)?;
            write_output(&svg, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_int_tuple(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("bad integer `{part}`")))
        })
        .collect()
}

fn cmd_polys(tuples: &[String], format: Format, output: Option<&Path>) -> Result<ExitCode, Error> {
    let mut rows = Vec::new();
    for raw in tuples {
        let values = parse_int_tuple(raw)?;
        let p = eval_p(&values);
        let mut rev = values.clone();
        rev.reverse();
        let symmetry = eval_p(&rev) == p;
        let reduction = if values.len() >= 2 {
            let head = num_bigint::BigInt::from(values[0]);
            Some(p.clone() == head * eval_p(&values[1..]) - eval_p(&values[2..]))
        } else {
            None
        };
        rows.push((values, p, symmetry, reduction));
    }
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            for (values, p, symmetry, reduction) in &rows {
                let tuple = values
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(&format!("p({tuple}) = {p}\n"));
                out.push_str(&format!(
                    "  symmetry: {}\n",
                    if *symmetry { "ok" } else { "FAILED" }
                ));
                if let Some(red) = reduction {
                    out.push_str(&format!(
                        "  reduction: {}\n",
                        if *red { "ok" } else { "FAILED" }
                    ));
                }
            }
            out
        }
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(values, p, symmetry, reduction)| {
                    json!({
                        "tuple": values,
                        "p": p.to_string(),
                        "symmetry": symmetry,
                        "reduction": reduction,
                    })
                })
                .collect();
            report::to_json_string(&report::envelope(
                "polys",
                json!({ "tuples": tuples }),
                json!({ "evaluations": entries }),
            ))
        }
        _ => return Err(Error::InvalidArgument("polys supports text or json".into())),
    };
    write_output(&text, output)?;
    let all_ok = rows.iter().all(|(_, _, s, r)| *s && r.unwrap_or(true));
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION_FAILED)
    })
}

fn cmd_farey(
    q: u64,
    r: Option<usize>,
    format: Format,
    output: Option<&Path>,
) -> Result<ExitCode, Error> {
    let text = match r {
        None => {
            let fractions: Vec<_> = FareySequence::new(q)?.collect();
            match format {
                Format::Text => fractions
                    .iter()
                    .map(|f| f.to_string() + "\n")
                    .collect::<String>(),
                Format::Json => report::to_json_string(&report::envelope(
                    "farey",
                    json!({ "q": q }),
                    json!({
                        "fractions": fractions.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    }),
                )),
                Format::Csv => report::fractions_csv(&fractions)?,
                Format::Svg => {
                    return Err(Error::InvalidArgument("farey has no svg format".into()))
                }
            }
        }
        Some(r) => {
            let windows: Vec<ValenceChain> = valence_windows(q, r)?.into_iter().collect();
            match format {
                Format::Text => windows
                    .iter()
                    .map(|c| c.to_string() + "\n")
                    .collect::<String>(),
                Format::Json => report::to_json_string(&report::envelope(
                    "farey",
                    json!({ "q": q, "r": r }),
                    json!({
                        "chains": windows.iter().map(report::chain_json).collect::<Vec<_>>(),
                    }),
                )),
                Format::Csv => report::chains_csv(&windows)?,
                Format::Svg => {
                    return Err(Error::InvalidArgument("farey has no svg format".into()))
                }
            }
        }
    };
    write_output(&text, output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_chains(
    r: usize,
    cap: u64,
    list: bool,
    format: Format,
    output: Option<&Path>,
) -> Result<ExitCode, Error> {
    let counts = count_chains(r, cap)?;
    let chains = if list || format == Format::Csv {
        Some(enumerate_chains(r, cap)?)
    } else {
        None
    };
    let text = match format {
        Format::Text => {
            let mut out = format!("count = {}\ndelta = {}\n", counts.count, counts.delta);
            if let Some(chains) = &chains {
                for c in chains {
                    out.push_str(&format!("{c}\n"));
                }
            }
            out
        }
        Format::Json => {
            let mut results = report::count_json(&counts);
            if let Some(chains) = &chains {
                results.as_object_mut().expect("object").insert(
                    "chains".into(),
                    Value::Array(chains.iter().map(report::chain_json).collect()),
                );
            }
            report::to_json_string(&report::envelope(
                "chains",
                json!({ "r": r, "cap": cap }),
                results,
            ))
        }
        Format::Csv => report::chains_csv(chains.as_deref().unwrap_or(&[]))?,
        Format::Svg => return Err(Error::InvalidArgument("chains has no svg format".into())),
    };
    write_output(&text, output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_tiles(
    chain: Option<&str>,
    r: Option<usize>,
    cap: Option<u64>,
    format: Format,
    output: Option<&Path>,
) -> Result<ExitCode, Error> {
    let (tiles, params) = match (chain, r, cap) {
        (Some(text), None, None) => {
            let c = ValenceChain::parse(text)?;
            if c.is_empty() {
                return Err(Error::EmptyChain);
            }
            let params = json!({ "chain": report::chain_json(&c) });
            (vec![tile_of_chain(&c)?], params)
        }
        (None, Some(r), Some(cap)) => (tessellation(r, cap)?, json!({ "r": r, "cap": cap })),
        _ => {
            return Err(Error::InvalidArgument(
                "pass either --chain, or both --r and --cap".into(),
            ))
        }
    };
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            for tile in &tiles {
                out.push_str(&format!("chain {}\n", tile.chain()));
                out.push_str(&format!("status {}\n", tile.status()));
                for v in tile.closure_vertices() {
                    out.push_str(&format!("  {} {}\n", rat_str(&v.x), rat_str(&v.y)));
                }
            }
            out
        }
        Format::Json => {
            let entries: Vec<Value> = tiles.iter().map(report::tile_json).collect();
            let results = if chain.is_some() {
                entries.into_iter().next().expect("one tile")
            } else {
                json!({ "tiles": entries })
            };
            report::to_json_string(&report::envelope("tiles", params, results))
        }
        _ => return Err(Error::InvalidArgument("tiles supports text or json".into())),
    };
    write_output(&text, output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_constants(
    r_max: usize,
    confirm_window: u64,
    format: Format,
    output: Option<&Path>,
) -> Result<ExitCode, Error> {
    let table = compute_c_table(r_max, confirm_window)?;
    let rows: Vec<_> = table
        .into_iter()
        .map(|s| {
            let reference = verify::KNOWN_C.get(s.r - 1).copied();
            (s, reference)
        })
        .collect();
    let text = match format {
        Format::Text => {
            let mut out = String::from("r\tC(r)\tstabilized_at\treference\n");
            for (s, reference) in &rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    s.r,
                    s.constant,
                    s.stabilized_at,
                    match reference {
                        Some(v) if v == &s.constant => format!("{v} (match)"),
                        Some(v) => format!("{v} (MISMATCH)"),
                        None => "computed (no reference)".to_owned(),
                    }
                ));
            }
            out
        }
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(s, reference)| report::stabilization_json(s, *reference))
                .collect();
            report::to_json_string(&report::envelope(
                "constants",
                json!({ "r_max": r_max, "confirm_window": confirm_window }),
                json!({ "rows": entries }),
            ))
        }
        Format::Csv => report::constants_csv(&rows)?,
        Format::Svg => return Err(Error::InvalidArgument("constants has no svg format".into())),
    };
    write_output(&text, output)?;
    let all_match = rows
        .iter()
        .all(|(s, reference)| reference.map(|v| v == s.constant).unwrap_or(true));
    Ok(if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION_FAILED)
    })
}

fn cmd_verify(
    opts: &VerifyOptions,
    format: Format,
    output: Option<&Path>,
) -> Result<ExitCode, Error> {
    let ledger = verify::run_all(opts);
    let passed = ledger.iter().filter(|c| c.passed).count();
    let failed = ledger.len() - passed;
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            for c in &ledger {
                out.push_str(&format!(
                    "{} {} - {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                ));
            }
            out.push_str(&format!("{passed} passed, {failed} failed\n"));
            out
        }
        Format::Json => report::to_json_string(&report::envelope_with_ledger(
            "verify",
            json!({
                "constants_r_max": opts.constants_r_max,
                "oracle_norm_max": opts.oracle_norm_max,
                "q_witness": opts.oracle_q_witness,
                "q_absence": opts.oracle_q_absence,
                "points": opts.partition_points,
                "trials": opts.random_chain_trials,
            }),
            json!({ "passed": passed, "failed": failed }),
            &ledger,
        )),
        _ => {
            return Err(Error::InvalidArgument(
                "verify supports text or json".into(),
            ))
        }
    };
    write_output(&text, output)?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION_FAILED)
    })
}

fn write_output(text: &str, path: Option<&Path>) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
