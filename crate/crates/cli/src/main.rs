use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Rendered};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "basechange", version, about = "Exact base change computations for GL(n) tempered duals")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Components of the extended quotient (C^x)^n // S_n.
    Extquot {
        #[arg(long)]
        n: u32,
    },
    /// Tabulate psi and phi of a ramification filtration.
    Psi {
        /// Orders |G_0|, |G_1|, ...; omit for an unramified extension.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u64>,
        /// Points, as integers or fractions p/q.
        #[arg(long = "x", value_delimiter = ',', required = true)]
        xs: Vec<String>,
    },
    /// Level of U_F hit by the norm of U_E^level.
    NormLevel {
        /// Extension as inline JSON or a path to a JSON file.
        #[arg(long)]
        extension: String,
        #[arg(long)]
        level: u64,
    },
    /// Base change on the tempered dual of GL(1), truncated at conductor M.
    BcGl1 {
        #[arg(long)]
        extension: String,
        #[arg(long = "bound", short = 'M')]
        bound: u64,
    },
    /// Base change of a cuspidal GL(2) circle along an unramified odd-degree L/F.
    BcGl2 {
        /// Admissible pair as inline JSON or a path.
        #[arg(long)]
        pair: String,
        /// The extension L/F as inline JSON or a path.
        #[arg(long = "l")]
        l: String,
    },
    /// K-theory of a proper map of circle spaces, or of the reduced map on Sym^n.
    Kmap {
        /// Proper circle map as inline JSON or a path.
        #[arg(long, conflicts_with_all = ["sym", "degree"], required_unless_present = "sym")]
        map: Option<String>,
        /// Symmetric power n of a Sym^n component.
        #[arg(long, requires = "degree")]
        sym: Option<u32>,
        /// Coordinatewise degree f.
        #[arg(long)]
        degree: Option<u64>,
        /// Samples for the winding-number check; defaults to 8f.
        #[arg(long)]
        samples: Option<u32>,
    },
    /// Certificate that base change on Sym^r is a finite morphism.
    Finiteness {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        f: u32,
        /// Exponent window D; defaults to 2f + 2.
        #[arg(long)]
        window: Option<u32>,
    },
}

fn dispatch(command: Command) -> Result<Rendered, CliError> {
    match command {
        Command::Extquot { n } => commands::extquot(n),
        Command::Psi { orders, xs } => commands::psi(orders, &xs),
        Command::NormLevel { extension, level } => commands::norm_level(&extension, level),
        Command::BcGl1 { extension, bound } => commands::bc_gl1(&extension, bound),
        Command::BcGl2 { pair, l } => commands::bc_gl2(&pair, &l),
        Command::Kmap { map: Some(map), .. } => commands::kmap(&map),
        Command::Kmap { sym: Some(n), degree: Some(f), samples, .. } => {
            commands::kmap_sym(n, f, samples)
        }
        Command::Kmap { .. } => Err(CliError::Usage("kmap needs --map or --sym with --degree".into())),
        Command::Finiteness { r, f, window } => {
            commands::finiteness(r, f, window.unwrap_or(2 * f + 2))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rendered = match dispatch(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let body = match cli.format {
        Format::Text => rendered.text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rendered.json).expect("values serialize");
            s.push('\n');
            s
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
