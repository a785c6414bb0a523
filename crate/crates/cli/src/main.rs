use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mixcurve_cli::{cmd_invariants, cmd_verify, RunConfig, Suite, EXIT_MISCONFIG};

#[derive(Parser)]
#[command(name = "mixcurve", version, about = "Exact Hochschild, de Rham and monodromy computations for a potential W")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Milnor number, cohomology dimensions, HP rank and connection data.
    Invariants(Common),
    /// Check one family of chain-level identities on seeded samples.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Koszul factors "a,b" for the mf suite (default: x_1 and W/x_1).
        #[arg(long)]
        koszul: Option<String>,
        /// Drop the homotopy from weak-morphism suites (debugging aid).
        #[arg(long, hide = true)]
        no_homotopy: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// The potential, e.g. "x^3 + y^3".
    #[arg(long = "W", alias = "w")]
    w: String,
    /// Comma-separated variables; inferred from W when omitted.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Largest tensor weight a chain may have.
    #[arg(long, default_value_t = 4)]
    window: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, env = "MIXCURVE_SEED", default_value_t = 0)]
    seed: u64,
    /// Polynomial degree bound for truncated computations.
    #[arg(long, default_value_t = 12)]
    degree_bound: u32,
    /// Report monodromy of the connection with the Γ/u term.
    #[arg(long)]
    sign_twisted: bool,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Mixed,
    Connection,
    Hkr,
    Opposite,
    Functorial,
    Mf,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Mixed => Suite::Mixed,
            SuiteArg::Connection => Suite::Connection,
            SuiteArg::Hkr => Suite::Hkr,
            SuiteArg::Opposite => Suite::Opposite,
            SuiteArg::Functorial => Suite::Functorial,
            SuiteArg::Mf => Suite::Mf,
        }
    }
}

fn config(c: &Common) -> RunConfig {
    let mut cfg = RunConfig::new(&c.w);
    cfg.vars = c.vars.clone();
    cfg.window = c.window;
    cfg.samples = c.samples;
    cfg.seed = c.seed;
    cfg.degree_bound = c.degree_bound;
    cfg.sign_twisted = c.sign_twisted;
    cfg
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors; here 2 means a domain error
            return ExitCode::from(if e.use_stderr() { EXIT_MISCONFIG as u8 } else { 0 });
        }
    };
    let (outcome, common) = match &cli.command {
        Command::Invariants(c) => (cmd_invariants(&config(c)), c),
        Command::Verify { suite, koszul, no_homotopy, common } => {
            let mut cfg = config(common);
            cfg.no_homotopy = *no_homotopy;
            if let Some(k) = koszul {
                let Some((a, b)) = k.split_once(',') else {
                    eprintln!("--koszul expects two factors separated by a comma");
                    return ExitCode::from(EXIT_MISCONFIG as u8);
                };
                cfg.koszul = Some((a.trim().to_string(), b.trim().to_string()));
            }
            (cmd_verify(&cfg, (*suite).into()), common)
        }
    };
    let text = outcome.render(common.pretty);
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_MISCONFIG as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.exit as u8)
}
