//! `drg` — resistance distances on distance-regular resistor networks.
//!
//! Subcommands: `resist` (exact per-stratum resistance table), `spectral`
//! (eigenvalues, masses, multiplicities), `verify` (independent cross-check
//! of the recursion), `walk` (Monte Carlo commute time vs analytic) and
//! `families` (the supported catalog).
//!
//! Exit status: 0 on success, 1 on any validation or usage error, 2 when a
//! verification run finds a mismatch.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use drg_core::families::{family_array, list_families, Family, FamilySpec};
use drg_core::format::significant;
use drg_core::graph::build_graph;
use drg_core::oracle::{verify_graph, VerifyOutcome};
use drg_core::resistance::resistance_table;
use drg_core::spectral::{resistance_spectral, SpectralData};
use drg_core::walk::mc_commute_time;
use drg_core::IntersectionArray;

#[derive(Parser)]
#[command(
    name = "drg",
    version,
    about = "Resistance distances on distance-regular networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the per-stratum resistance and commute-time table
    Resist {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Eigenvalues, spectral masses and multiplicities of the network
    Spectral {
        #[command(flatten)]
        input: InputOpts,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Cross-check the recursion against an independent path
    Verify {
        #[command(flatten)]
        input: InputOpts,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Estimate a commute time by seeded random walks and compare with
    /// the analytic value
    Walk {
        #[command(flatten)]
        input: InputOpts,
        /// Walk endpoints as vertex indices "alpha/beta"
        #[arg(long, default_value = "0/1")]
        source: String,
        /// Number of round trips to sample
        #[arg(long, default_value_t = 100_000)]
        walks: u64,
        /// Random generator seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// List the supported family catalog
    Families {
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct InputOpts {
    /// Named family from the catalog (see `drg families`)
    #[arg(long)]
    family: Option<String>,
    /// Family parameter, repeatable: --param d=4 --param q=2
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Raw intersection array as JSON: {"b":[...],"c":[...]}
    #[arg(long, value_name = "JSON")]
    array: Option<String>,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Render rationals as exact numerator/denominator strings in JSON
    #[arg(long)]
    exact: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

enum Failure {
    /// Bad input of any kind; exit 1.
    Validation(String),
    /// A cross-check found a real disagreement; exit 2.
    Mismatch(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Validation(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not errors
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("verification mismatch: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Resist { input, output } => resist(&input, &output),
        Command::Spectral { input, format } => spectral(&input, format),
        Command::Verify { input, format } => verify(&input, format),
        Command::Walk {
            input,
            source,
            walks,
            seed,
            format,
        } => walk(&input, &source, walks, seed, format),
        Command::Families { format } => families(format),
    }
}

/// Resolved input: the array, and the family spec when one was named.
struct Input {
    label: String,
    spec: Option<FamilySpec>,
    array: IntersectionArray,
}

fn resolve_input(opts: &InputOpts) -> Result<Input, Failure> {
    match (&opts.family, &opts.array) {
        (Some(_), Some(_)) => Err(Failure::Validation(
            "--family and --array are mutually exclusive".into(),
        )),
        (None, None) => Err(Failure::Validation(
            "one input source is required: --family <name> or --array <json>".into(),
        )),
        (Some(name), None) => {
            let family: Family = name.parse()?;
            let mut spec = FamilySpec::new(family);
            for raw in &opts.params {
                let (key, value) = raw.split_once('=').ok_or_else(|| {
                    Failure::Validation(format!("--param {raw:?} is not of the form key=value"))
                })?;
                let value: i64 = value.trim().parse().map_err(|_| {
                    Failure::Validation(format!("--param {raw:?} has a non-integer value"))
                })?;
                spec.params.insert(key.trim().to_owned(), value);
            }
            let array = family_array(&spec)?;
            Ok(Input {
                label: spec.to_string(),
                spec: Some(spec),
                array,
            })
        }
        (None, Some(json)) => {
            if !opts.params.is_empty() {
                return Err(Failure::Validation(
                    "--param only applies to --family input".into(),
                ));
            }
            let array: IntersectionArray = serde_json::from_str(json)?;
            Ok(Input {
                label: format!("array {array}"),
                spec: None,
                array,
            })
        }
    }
}

fn resist(input: &InputOpts, output: &OutputOpts) -> Result<(), Failure> {
    let input = resolve_input(input)?;
    let table = resistance_table(&input.array);
    match output.format {
        Format::Table => print!("{}", table.to_text()),
        Format::Json => println!("{}", table.to_json(output.exact)),
        Format::Csv => print!("{}", table.to_csv()),
    }
    Ok(())
}

fn spectral(input: &InputOpts, format: Format) -> Result<(), Failure> {
    let input = resolve_input(input)?;
    let sd = SpectralData::compute(&input.array)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string(&sd).expect("serializable")),
        Format::Table => {
            println!("{}   N={}", input.label, input.array.order());
            println!(
                "{:>3}  {:>22}  {:>22}  {:>16}",
                "l", "eigenvalue", "mass", "multiplicity"
            );
            for l in 0..sd.eigenvalues.len() {
                println!(
                    "{l:>3}  {:>22}  {:>22}  {:>16}",
                    significant(sd.eigenvalues[l], 15),
                    significant(sd.masses[l], 15),
                    significant(sd.multiplicities[l], 15),
                );
            }
        }
        Format::Csv => {
            println!("l,eigenvalue,mass,multiplicity");
            for l in 0..sd.eigenvalues.len() {
                println!(
                    "{l},{},{},{}",
                    significant(sd.eigenvalues[l], 15),
                    significant(sd.masses[l], 15),
                    significant(sd.multiplicities[l], 15),
                );
            }
        }
    }
    Ok(())
}

fn verify(input: &InputOpts, format: Format) -> Result<(), Failure> {
    let input = resolve_input(input)?;
    let explicit = input
        .spec
        .as_ref()
        .is_some_and(|s| s.family.has_explicit_construction());

    if explicit {
        let spec = input.spec.as_ref().expect("explicit family");
        let graph = build_graph(spec)?;
        let report = verify_graph(&graph, 0, spec.family.name())?;
        match format {
            Format::Json | Format::Csv => {
                println!("{}", serde_json::to_string(&report).expect("serializable"))
            }
            Format::Table => {
                println!("family: {}", input.label);
                println!("array: {}", report.array);
                println!("strata sizes: {:?}", report.strata_sizes);
                match &report.oracle_vs_recursion {
                    VerifyOutcome::Summary(s) => println!("oracle vs recursion: {s}"),
                    VerifyOutcome::Mismatches(list) => {
                        println!("oracle vs recursion: {} mismatches", list.len());
                        for line in list {
                            println!("  {line}");
                        }
                    }
                }
            }
        }
        if !report.passed() {
            return Err(Failure::Mismatch(format!(
                "oracle disagrees with the recursion for {}",
                input.label
            )));
        }
        return Ok(());
    }

    // no explicit construction: cross-check the recursion against the
    // spectral path instead
    let table = resistance_table(&input.array);
    let mut max_deviation: f64 = 0.0;
    for m in 1..=input.array.diameter() {
        let spectral = resistance_spectral(&input.array, m)?;
        let exact = table.resistance(m).expect("m within diameter").to_f64();
        max_deviation = max_deviation.max((spectral - exact).abs());
    }
    let ok = max_deviation < 1e-9;
    let verdict = if ok {
        "spectral-match"
    } else {
        "spectral-mismatch"
    };
    match format {
        Format::Json | Format::Csv => {
            println!(
                "{}",
                serde_json::json!({
                    "family": input.label,
                    "array": input.array.to_string(),
                    "check": "spectral",
                    "max_abs_deviation": max_deviation,
                    "oracle_vs_recursion": verdict,
                })
            );
        }
        Format::Table => {
            println!("family: {}", input.label);
            println!("array: {}", input.array);
            println!("check: spectral path (no explicit construction for this family)");
            println!("max |spectral - recursion| = {max_deviation:e}");
            println!("spectral vs recursion: {verdict}");
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "spectral path deviates by {max_deviation:e} for {}",
            input.label
        )))
    }
}

fn walk(
    input: &InputOpts,
    source: &str,
    walks: u64,
    seed: u64,
    format: Format,
) -> Result<(), Failure> {
    let input = resolve_input(input)?;
    let spec = input
        .spec
        .as_ref()
        .filter(|s| s.family.has_explicit_construction());
    let Some(spec) = spec else {
        return Err(Failure::Validation(
            "walk needs --family with an explicit construction \
             (cycle, complete, hypercube, johnson)"
                .into(),
        ));
    };
    let (alpha, beta) = parse_source(source)?;
    let graph = build_graph(spec)?;
    if alpha >= graph.n() || beta >= graph.n() {
        return Err(Failure::Validation(format!(
            "--source {source}: vertex index out of range for {} vertices",
            graph.n()
        )));
    }
    if alpha == beta {
        return Err(Failure::Validation(
            "--source needs two distinct vertices".into(),
        ));
    }
    if walks == 0 {
        return Err(Failure::Validation("--walks must be at least 1".into()));
    }

    let stratum = graph
        .stratify(alpha)
        .stratum_of(beta)
        .expect("connected graph");
    let table = resistance_table(&input.array);
    let analytic = table.commute_times()[stratum - 1].clone();
    let estimate = mc_commute_time(&graph, alpha, beta, walks, seed);
    let analytic_f = analytic.to_f64();
    let sigma = if estimate.stderr > 0.0 {
        (estimate.mean - analytic_f).abs() / estimate.stderr
    } else {
        0.0
    };

    match format {
        Format::Json | Format::Csv => {
            println!(
                "{}",
                serde_json::json!({
                    "family": input.label,
                    "alpha": alpha,
                    "beta": beta,
                    "stratum": stratum,
                    "walks": estimate.walks,
                    "seed": estimate.seed,
                    "mean": estimate.mean,
                    "stderr": estimate.stderr,
                    "analytic": { "num": analytic.numer().to_string(),
                                   "den": analytic.denom().to_string(),
                                   "value": analytic_f },
                    "sigma_distance": sigma,
                })
            );
        }
        Format::Table => {
            println!(
                "family: {}   alpha={alpha} beta={beta} (stratum {stratum})",
                input.label
            );
            println!("walks: {}   seed: {}", estimate.walks, estimate.seed);
            println!(
                "estimated commute time: {} +/- {}",
                estimate.mean, estimate.stderr
            );
            println!(
                "analytic commute time:  {} = {}",
                analytic,
                significant(analytic_f, 15)
            );
            println!("deviation: {} standard errors", significant(sigma, 3));
        }
    }
    Ok(())
}

fn parse_source(source: &str) -> Result<(usize, usize), Failure> {
    let (a, b) = source.split_once('/').ok_or_else(|| {
        Failure::Validation(format!("--source {source:?} is not of the form alpha/beta"))
    })?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Failure::Validation(format!("--source {source:?}: bad vertex index")))
    };
    Ok((parse(a)?, parse(b)?))
}

fn families(format: Format) -> Result<(), Failure> {
    let templates = list_families();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&templates).expect("serializable")
        ),
        Format::Csv => {
            println!("name,params,order,description");
            for t in &templates {
                let params: Vec<String> = t
                    .params
                    .iter()
                    .map(|p| format!("{} ({})", p.name, p.domain))
                    .collect();
                println!(
                    "{},{:?},{:?},{:?}",
                    t.name,
                    params.join("; "),
                    t.order,
                    t.description
                );
            }
        }
        Format::Table => {
            for t in &templates {
                println!("{}", t.name);
                if t.params.is_empty() {
                    println!("  params: none");
                } else {
                    let params: Vec<String> = t
                        .params
                        .iter()
                        .map(|p| format!("{} ({})", p.name, p.domain))
                        .collect();
                    println!("  params: {}", params.join(", "));
                }
                println!("  order: {}", t.order);
                println!("  {}", t.description);
            }
        }
    }
    Ok(())
}
