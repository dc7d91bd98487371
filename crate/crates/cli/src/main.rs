use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use colour3_cli::commands::{self, report_lines};
use colour3_cli::{verify, CliError, Format, Overrides, RunConfig, Source};

#[derive(Parser)]
#[command(name = "colour3", version, about = "Planar two-point function of the three-colour model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true)]
    grid_size: Option<usize>,
    #[arg(long, global = true)]
    panels: Option<usize>,
    #[arg(long, global = true)]
    points: Option<usize>,
    #[arg(long, global = true)]
    max_order: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Colour factor of the recursion; only for checking that verification notices.
    #[arg(long, global = true, hide = true)]
    colour_factor: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of G(0,0) in powers of the coupling.
    Series,
    /// One coefficient function at a momentum pair.
    Eval {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        p1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        p2: f64,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Source::Closed)]
        source: Source,
    },
    /// Graph classes, amplitudes and their sum.
    Graphs {
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        p1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        p2: f64,
    },
    /// Run the verification suite.
    Verify,
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes()).ok();
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let overrides = Overrides {
        grid_size: cli.grid_size,
        panels: cli.panels,
        points: cli.points,
        max_order: cli.max_order,
        format: cli.format,
        out: cli.out,
        colour_factor: cli.colour_factor,
    };
    let config = RunConfig::resolve(None, &overrides).map_err(CliError::Usage)?;
    match cli.command {
        Command::Series => emit(&config, &commands::series(&config)?),
        Command::Eval { p1, p2, order, source } => emit(&config, &commands::eval(&config, p1, p2, order, source)?),
        Command::Graphs { order, p1, p2 } => emit(&config, &commands::graphs(&config, order, p1, p2)?),
        Command::Verify => {
            if cli.format.is_none() && config.out.is_none() {
                // human-readable report on the terminal
                let criteria = verify::run(&config);
                let ok = criteria.iter().all(|c| c.passed());
                let _ = writeln!(std::io::stdout(), "{}", report_lines(&criteria).join("\n"));
                return if ok { Ok(()) } else { Err(CliError::Failure("verification failed".into())) };
            }
            let (text, ok) = commands::verify(&config);
            emit(&config, &text)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Failure("verification failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("colour3: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
