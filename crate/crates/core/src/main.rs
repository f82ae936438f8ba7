use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use whkit::cli::{self, AlgebraChoice, InputKind, SuiteOptions};
use whkit::frobenius::{DEFAULT_RANDOM_IDEALS, DEFAULT_SEED};
use whkit::integrals::{classify_report, Side};
use whkit::report::Report;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

/// Exact verification of weak Hopf algebras built from groupoids,
/// separability idempotents or structure constants.
#[derive(Parser, Debug)]
#[command(name = "whkit", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Override the `kind` field of the input.
    #[arg(long, global = true, value_enum)]
    kind: Option<InputKind>,
    /// Algebra built from a groupoid input.
    #[arg(long, global = true, value_enum, default_value = "function")]
    algebra: AlgebraChoice,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the structure-constant bundle.
    Build { input: PathBuf },
    /// Run the axiom suite.
    Verify { input: PathBuf },
    /// Solve for cointegrals and check their characterisations.
    Cointegrals {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Solve for integrals and check faithfulness.
    Integrals {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Compact/discrete classification.
    Classify { input: PathBuf },
    /// Dual bundle and duality checks.
    Dual { input: PathBuf },
    /// Frobenius, quasi-Frobenius and separability checks.
    Frobenius {
        input: PathBuf,
        #[arg(long, env = "WHKIT_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RANDOM_IDEALS)]
        random_ideals: usize,
    },
    /// Every suite in order, stopping early only on axiom failure.
    CheckAll {
        input: PathBuf,
        #[arg(long, env = "WHKIT_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Output {
    Report(Report),
    Bundle(serde_json::Value),
}

fn run(cli: &Cli) -> whkit::Result<Output> {
    let choice = cli.algebra;
    let load = |p: &PathBuf| cli::load(p, cli.kind);
    Ok(match &cli.command {
        Command::Build { input } => Output::Bundle(cli::build(&load(input)?, choice)?),
        Command::Verify { input } => Output::Report(cli::verify(&load(input)?, choice)?),
        Command::Cointegrals { input, side } => {
            Output::Report(cli::cointegrals(&cli::weak_hopf(&load(input)?, choice)?, (*side).into()))
        }
        Command::Integrals { input, side } => {
            Output::Report(cli::integrals(&cli::weak_hopf(&load(input)?, choice)?, (*side).into()))
        }
        Command::Classify { input } => Output::Report(classify_report(&cli::weak_hopf(&load(input)?, choice)?)),
        Command::Dual { input } => Output::Report(cli::dual(&load(input)?, choice)?),
        Command::Frobenius { input, seed, random_ideals } => {
            let opts = SuiteOptions { seed: *seed, random_ideals: *random_ideals };
            Output::Report(cli::frobenius(&load(input)?, choice, opts)?)
        }
        Command::CheckAll { input, seed } => {
            let opts = SuiteOptions { seed: *seed, random_ideals: DEFAULT_RANDOM_IDEALS };
            Output::Report(cli::check_all(&load(input)?, choice, opts)?)
        }
    })
}

fn render(out: &Output, format: Format) -> String {
    match (out, format) {
        (Output::Report(r), Format::Text) => r.to_string(),
        (Output::Report(r), Format::Json) => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        (Output::Bundle(v), _) => serde_json::to_string_pretty(v).expect("bundle serializes") + "\n",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = render(&out, cli.format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match &out {
        Output::Report(r) => match r.first_failure() {
            Some(c) => {
                eprintln!("first failing check: {} ({})", c.name, c.paper_ref);
                let names: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                eprintln!("failing checks: {}", names.join(", "));
                ExitCode::from(1)
            }
            None => ExitCode::SUCCESS,
        },
        Output::Bundle(_) => ExitCode::SUCCESS,
    }
}
