use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use unicurve::characters::cache::ENV_VAR;
use unicurve::sections::MapKind;
use unicurve_cli::{render, run, CliError, Command, Format, RunConfig, Span};

#[derive(Parser)]
#[command(
    name = "unicurve",
    version,
    about = "Exact checks of graded Lie algebras of universal curves"
)]
struct Cli {
    /// Genus, a single value or an inclusive range a..b.
    #[arg(long, global = true)]
    g: Option<Span>,
    /// Number of marked points, a single value or an inclusive range a..b.
    #[arg(long, global = true)]
    n: Option<Span>,
    /// Highest bracket length computed in presentations.
    #[arg(long, global = true, default_value_t = unicurve::presentation::DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Directory of the character decomposition cache.
    #[arg(long, global = true, env = ENV_VAR)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every processor.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Include per-case wall-clock times (makes reports nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Gamma,
    #[value(name = "gamma-o")]
    GammaO,
}

#[derive(Subcommand)]
enum Sub {
    /// Check the relations and low-weight dimensions of Gr p_{g,n}.
    VerifyPresentation,
    /// Search for equivariant Lie sections of gamma_n or gamma_n^o.
    Classify {
        #[arg(long, value_enum)]
        map: MapArg,
    },
    /// Decompose a character expression such as "Λ2(std) - trivial(1)".
    Chars { expression: String },
    /// Run every suite over the grid.
    Report,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Sub::VerifyPresentation => Command::VerifyPresentation,
        Sub::Classify { map } => Command::Classify {
            map: match map {
                MapArg::Gamma => MapKind::Gamma,
                MapArg::GammaO => MapKind::GammaO,
            },
        },
        Sub::Chars { expression } => Command::Chars { expression },
        Sub::Report => Command::Report,
    };
    let mut config = RunConfig::new(command);
    let (g, n) = (
        cli.g.unwrap_or(config.g.clone()),
        cli.n.unwrap_or(config.n.clone()),
    );
    config = config.with_grid(g, n);
    config.cutoff = cli.cutoff;
    config.cache_dir = cli.cache_dir;
    config.format = cli.format;
    config.jobs = cli.jobs;
    config.timings = cli.timings;

    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = render(&report, config.format);
    match &cli.out {
        Some(path) => {
            if let Err(source) = std::fs::write(path, &text) {
                let e = CliError::Output {
                    path: path.clone(),
                    source,
                };
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
