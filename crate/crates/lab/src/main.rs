use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use prodseq::artifacts::{cantor_tree_json, circle_cantor_tree, families_json, hp_json};
use prodseq::config::{load_config, run_config};
use prodseq::suites::run_suite;
use prodseq::trace::trace_to_string;
use prodseq::{to_pretty, write_file, LabError};

#[derive(Debug, Parser)]
#[command(name = "prodseq", version, about = "Productive and summable sequences in topological groups")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "PRODSEQ_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a named verification suite and print its JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the analysis described by a JSON config.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// Write the distance profile as CSV next to the report.
        #[arg(long)]
        csv: bool,
    },
    /// Emit one of the constructions as JSON.
    Construct {
        #[arg(value_enum)]
        what: Construction,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    Hp,
    Cantor,
    Families,
}

fn prefix_for(config: &Path, output: Option<&str>) -> PathBuf {
    match output {
        Some(o) => PathBuf::from(o),
        None => config.with_extension(""),
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn run(cli: Cli) -> Result<bool, LabError> {
    match cli.command {
        Command::Verify { suite, out } => {
            let report = run_suite(&suite, cli.seed.unwrap_or(0))?;
            let text = to_pretty(&report.to_json());
            if let Some(path) = out {
                write_file(path, &text)?;
            }
            print!("{text}");
            Ok(report.all_pass())
        }
        Command::Analyze { config, csv } => {
            let cfg = load_config(&config)?;
            let outcome = run_config(&cfg, cli.seed)?;
            let text = to_pretty(&outcome.report);
            if cfg.output.is_some() || csv {
                let prefix = prefix_for(&config, cfg.output.as_deref());
                write_file(with_suffix(&prefix, ".report.json"), &text)?;
                if csv {
                    write_file(with_suffix(&prefix, ".trace.csv"), &trace_to_string(&outcome.trace))?;
                }
            }
            print!("{text}");
            Ok(outcome.pass != Some(false))
        }
        Command::Construct { what, depth, out } => {
            let json = match what {
                Construction::Hp => hp_json(depth)?,
                Construction::Cantor => cantor_tree_json(&circle_cantor_tree(depth, cli.seed.unwrap_or(0))?),
                Construction::Families => families_json(depth, (depth * depth).max(64), Default::default()),
            };
            write_file(&out, &to_pretty(&json))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
