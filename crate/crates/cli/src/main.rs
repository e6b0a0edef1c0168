use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cyclozeta_cli::commands::{self, SeriesKind};
use cyclozeta_cli::output::Outcome;
use cyclozeta_cli::parse::{parse_seifert, parse_weights, parse_zeta};
use cyclozeta_cli::suite::{Scope, SuiteConfig, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact identities for cyclotomic products prod_(d|n) (q^d - 1)^e(d).
#[derive(Debug, Parser)]
#[command(name = "cyclozeta", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Truncation order of Dirichlet and power series.
    #[arg(long, global = true, default_value_t = 200)]
    order: usize,
    /// Seed for every random e-vector.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// m, p, m*, p*, Ramanujan coefficients, generating functions and zeta for one input.
    Analyze {
        /// `n=<int>; e={d:v,...}` or `{"n":..,"e":{..}}`.
        input: String,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// Largest n in the per-n sweeps.
        #[arg(long, default_value_t = 60)]
        nmax: u64,
        /// Random e-vectors per instance.
        #[arg(long, default_value_t = 2)]
        trials: usize,
        /// Only this example (1..=12).
        #[arg(long)]
        index: Option<u32>,
        /// Only this conductor in the example suite.
        #[arg(long)]
        n: Option<u64>,
        /// Only this example parameter r.
        #[arg(long)]
        r: Option<u64>,
        /// Order of the eta expansions.
        #[arg(long, default_value_t = 100)]
        eta_order: usize,
        /// Largest family index for A_l and D_l.
        #[arg(long, default_value_t = 12)]
        lmax: u64,
    },
    /// Saito transform and dual.
    Dual { input: String },
    /// Truncated G-transforms m_G, p_G, m*_G, p*_G.
    Series {
        input: String,
        /// zeta, unit, or a named function (mobius, euler_phi, liouville, klee, ...).
        #[arg(long = "G", default_value = "zeta")]
        g: String,
        /// Parameters of the named function.
        #[arg(long = "param")]
        params: Vec<u64>,
        #[arg(long, value_enum, default_value_t = SeriesKind::Dirichlet)]
        kind: SeriesKind,
    },
    /// Built-in singularity tables.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Spectrum and generating functions of a weight system `a,b,c;n`.
    Weights {
        system: String,
        /// Seifert invariants `g; a1/b1,a2/b2,...`.
        #[arg(long)]
        seifert: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, default_value_t = 12)]
        lmax: u64,
    },
    Get {
        name: String,
        /// Family index for `A_l`, `D_l`.
        #[arg(long)]
        l: Option<u64>,
    },
    Verify {
        #[arg(long, default_value_t = 12)]
        lmax: u64,
    },
    /// Writes the versioned catalog JSON.
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Saito transform and dual of every entry, matched against the catalog.
    Pairs {
        #[arg(long, default_value_t = 12)]
        lmax: u64,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    commands::require_positive("--order", cli.order)?;
    match &cli.command {
        Command::Analyze { input } => commands::analyze(&parse_zeta(input)?),
        Command::Dual { input } => Ok(commands::dual(&parse_zeta(input)?)),
        Command::Series { input, g, params, kind } => commands::series(&parse_zeta(input)?, g, params, cli.order, *kind),
        Command::Verify {
            scope,
            nmax,
            trials,
            index,
            n,
            r,
            eta_order,
            lmax,
        } => {
            if let Some(i) = index {
                anyhow::ensure!((1..=12).contains(i), "--index must be in 1..=12");
            }
            anyhow::ensure!(n.is_none_or(|n| n > 0) && *nmax > 0, "--n and --nmax must be positive");
            commands::require_positive("--trials", *trials)?;
            let cfg = SuiteConfig {
                seed: cli.seed,
                nmax: *nmax,
                trials: *trials,
                order: cli.order,
                eta_order: *eta_order,
                index: *index,
                n: *n,
                r: *r,
                lmax: *lmax,
            };
            Ok(commands::verify(*scope, &cfg))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { lmax } => Ok(commands::catalog_list(*lmax)),
            CatalogAction::Get { name, l } => commands::catalog_get(name, *l),
            CatalogAction::Verify { lmax } => Ok(commands::catalog_verify(*lmax)),
            CatalogAction::Export { out } => {
                let (outcome, body) = commands::catalog_export()?;
                match out {
                    Some(path) => {
                        std::fs::write(path, body + "\n")?;
                        Ok(Outcome {
                            text: format!("wrote {}", path.display()),
                            ..outcome
                        })
                    }
                    None => Ok(outcome),
                }
            }
            CatalogAction::Pairs { lmax } => Ok(commands::catalog_pairs(*lmax)),
        },
        Command::Weights { system, seifert } => {
            let w = parse_weights(system)?;
            let sd = seifert.as_deref().map(parse_seifert).transpose()?;
            commands::weights(&w, sd.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let printed = match cli.format {
        Format::Text => writeln!(stdout, "{}", outcome.text),
        Format::Json => serde_json::to_string_pretty(&outcome.envelope())
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(stdout, "{s}")),
    };
    if printed.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
