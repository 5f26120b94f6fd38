mod commands;
mod document;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{ChartChoice, Directions, Suite};

/// Exact solver for horizontally polynomial functions on nilpotent Lie groups.
#[derive(Parser)]
#[command(name = "nilpoly", version)]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Lie algebra axioms and print the lower central series.
    Validate {
        /// `builtin:NAME` or a JSON algebra document.
        input: String,
    },
    /// Compute the space of S-polynomial functions.
    Solve {
        input: String,
        /// Directions with orders, e.g. `X1:1,X2:2`.
        #[arg(long = "S", value_name = "NAME:ORDER,...", conflicts_with = "subspace")]
        s: Option<String>,
        /// `V1` or a comma-separated list spanning the subspace.
        #[arg(long, requires = "k")]
        subspace: Option<String>,
        /// Uniform order for `--subspace`.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum)]
        chart: Option<ChartChoice>,
        /// Solve only up to this degree and check stabilization above it.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run property suites over the built-in algebras.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
        /// Random instances per algebra in the representation suite.
        #[arg(long, default_value_t = 50)]
        instances: usize,
    },
    /// Print the degree bound recursion for k, s, l.
    Bound { k: u64, s: u64, l: u64 },
    /// Print the left-invariant vector fields of the basis.
    Fields {
        input: String,
        #[arg(long, value_enum)]
        chart: Option<ChartChoice>,
    },
    /// Rewrite a function between first- and second-kind coordinates.
    Convert {
        input: String,
        #[arg(long, value_enum, default_value = "second")]
        from: ChartChoice,
        #[arg(long, value_enum, default_value = "first")]
        to: ChartChoice,
        expr: String,
    },
    /// List the built-in algebras.
    Examples,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match cli.command {
        Command::Validate { input } => commands::validate(&input),
        Command::Solve {
            input,
            s,
            subspace,
            k,
            chart,
            degree,
        } => {
            let dirs = match (s, subspace) {
                (Some(s), None) => Ok(Directions::PerDirection(s)),
                (None, Some(spec)) => Ok(Directions::Subspace { spec, k: k.unwrap_or(0) }),
                _ => Err(nilpoly_core::Error::Input("give either --S or --subspace with --k".into())),
            };
            dirs.and_then(|d| commands::solve(&input, d, chart, degree))
        }
        Command::Verify { suite, seed, instances } => commands::verify(suite, seed, instances, cli.timing),
        Command::Bound { k, s, l } => commands::bound(k, s, l),
        Command::Fields { input, chart } => commands::fields(&input, chart),
        Command::Convert { input, from, to, expr } => commands::convert(&input, from, to, &expr),
        Command::Examples => Ok(commands::examples()),
    };
    match result {
        Ok(out) => {
            if cli.json {
                let mut value = out.json;
                if cli.timing {
                    if let Some(map) = value.as_object_mut() {
                        map.insert("elapsed_ms".into(), (start.elapsed().as_millis() as u64).into());
                    }
                }
                println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            } else {
                print!("{}", out.text);
                if cli.timing {
                    println!("elapsed {} ms", start.elapsed().as_millis());
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
