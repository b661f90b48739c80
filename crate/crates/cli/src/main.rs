use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frobcheck_core::dsl::{parse_spec, run_checks, RunOptions};
use frobcheck_core::{format_report, ReportMode};

#[derive(Parser)]
#[command(name = "frobcheck", version, about = "Exact checks of Frobenius monoidal functor specs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a spec file and run its directives.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        report: Format,
        /// Skip directives whose matrices would exceed this dimension.
        #[arg(long, env = "FROBCHECK_MAX_DIM")]
        max_dim: Option<usize>,
        /// Stop after the first directive that does not fully pass.
        #[arg(long)]
        fail_fast: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let Cli {
        command: Command::Run {
            file,
            report,
            max_dim,
            fail_fast,
        },
    } = Cli::parse();

    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let model = match parse_spec(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let result = run_checks(&model, &RunOptions { max_dim, fail_fast });
    let mode = match report {
        Format::Text => ReportMode::Text,
        Format::Json => ReportMode::Json,
    };
    let mut out = format_report(&result, mode);
    if !out.ends_with('\n') {
        out.push('\n');
    }
    print!("{out}");
    for e in result.errors() {
        eprintln!("error: {} {} at {}: {}", e.suite, e.check, e.location, e.detail.as_deref().unwrap_or(""));
    }
    ExitCode::from(result.exit_code() as u8)
}
