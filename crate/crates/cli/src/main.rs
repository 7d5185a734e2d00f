mod commands;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frobenius_core::{Error, Result};

use commands::{DMethod, Surface};
use render::{Format, Report, Style};

/// Exact Frobenius invariants of diagonal hypersurfaces over F_p.
#[derive(Parser)]
#[command(name = "frobenius", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Print rationals as decimals with this many digits.
    #[arg(long, global = true, value_name = "K")]
    decimal: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Exponents d_1,...,d_n of x_1^d_1 + ... + x_n^d_n.
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u64>>,
    /// A polynomial such as "x^2*y + z^3".
    #[arg(long)]
    poly: Option<String>,
    /// File holding a polynomial.
    #[arg(long)]
    poly_file: Option<PathBuf>,
}

impl SurfaceArgs {
    fn resolve(&self) -> Result<Surface> {
        Surface::resolve(self.degrees.as_deref(), self.poly.as_deref(), self.poly_file.as_deref())
    }
}

#[derive(Args)]
struct Level {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    e: u32,
}

#[derive(Args)]
struct Fermat {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// φ_f(a/p^e), or the whole table when --a is omitted.
    Phi {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        a: Option<u64>,
    },
    /// ψ_f = 1 - φ_f.
    Psi {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        a: Option<u64>,
    },
    /// Hilbert-Kunz function at p^e.
    Hk {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        level: Level,
    },
    /// F-signature function at p^e.
    Fs {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        level: Level,
    },
    /// Bracket of the F-pure threshold at level e.
    Fpt {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        level: Level,
    },
    /// Limit of φ_f as p grows, piece by piece.
    LimitPhi {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
        /// Also tabulate the limit at k/N for k = 0..N.
        #[arg(long, value_name = "N")]
        grid: Option<u64>,
    },
    /// Limit Hilbert-Kunz multiplicity.
    LimitHk {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
    },
    /// Limit F-signature.
    LimitFs {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
    },
    /// Log canonical threshold and the limit near it.
    Lct {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
    },
    /// Limits for the quadric x_1^2 + ... + x_n^2.
    Quadric {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "N")]
        grid: Option<u64>,
    },
    /// D-number of k_1,...,k_s over F_p.
    DNumber {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
        #[arg(long, value_enum, default_value_t = DMethod::All)]
        method: DMethod,
    },
    /// Closed form of the Fermat F-signature function.
    FsClosed {
        #[command(flatten)]
        fermat: Fermat,
    },
    /// F-signature series from a rule file or a Fermat hypersurface.
    FsSeries {
        #[arg(long, conflicts_with_all = ["p", "d", "n"])]
        rules: Option<PathBuf>,
        #[arg(long, requires_all = ["d", "n"])]
        p: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 6)]
        terms: usize,
    },
    /// F-purity class of a Fermat hypersurface.
    Classify {
        #[command(flatten)]
        fermat: Fermat,
    },
    /// Count odd d with 3 < d < BOUND and d^2 - d - 1 prime.
    Census {
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
    },
    /// Compare the F-signature of x_0^d + ... + x_d^d with its limit.
    WatanabeYoshida {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
    },
    /// How fast φ_{f,p} approaches its limit.
    Convergence {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Recompute the published values and report pass/fail per check.
    VerifyPaper {
        /// Run only checks whose name contains this string.
        #[arg(long)]
        only: Option<String>,
    },
}

fn run(command: &Command) -> Result<(Report, bool)> {
    let ok = |r: Report| Ok((r, true));
    match command {
        Command::Phi { surface, level, a } => ok(commands::phi(&surface.resolve()?, level.p, level.e, *a, false)?),
        Command::Psi { surface, level, a } => ok(commands::phi(&surface.resolve()?, level.p, level.e, *a, true)?),
        Command::Hk { surface, level } => ok(commands::hk(&surface.resolve()?, level.p, level.e)?),
        Command::Fs { surface, level } => ok(commands::fs(&surface.resolve()?, level.p, level.e)?),
        Command::Fpt { surface, level } => ok(commands::fpt(&surface.resolve()?, level.p, level.e)?),
        Command::LimitPhi { degrees, grid } => ok(commands::limit_phi_cmd(degrees, *grid)?),
        Command::LimitHk { degrees } => ok(commands::limit_hk_cmd(degrees)?),
        Command::LimitFs { degrees } => ok(commands::limit_fs_cmd(degrees)?),
        Command::Lct { degrees } => ok(commands::lct_cmd(degrees)?),
        Command::Quadric { n, grid } => ok(commands::quadric(*n, *grid)?),
        Command::DNumber { p, k, method } => ok(commands::d_number_cmd(*p, k, *method)?),
        Command::FsClosed { fermat: f } => ok(commands::fs_closed(f.p, f.d, f.n)?),
        Command::FsSeries { rules, p, d, n, terms } => {
            let fermat = match (p, d, n) {
                (Some(p), Some(d), Some(n)) => Some((*p, *d, *n)),
                (None, None, None) => None,
                _ => return Err(Error::InvalidInput("--p, --d and --n go together".into())),
            };
            ok(commands::fs_series(rules.as_deref(), fermat, *terms)?)
        }
        Command::Classify { fermat: f } => ok(commands::classify(f.p, f.d, f.n)?),
        Command::Census { bound } => ok(commands::census(*bound)?),
        Command::WatanabeYoshida { p, d } => ok(commands::wy(*p, *d)?),
        Command::Convergence { degrees, primes, e } => ok(commands::convergence(degrees, primes, *e)?),
        Command::VerifyPaper { only } => {
            let outcomes = verify::run(&verify::checks(), only.as_deref());
            let all = outcomes.iter().all(|o| o.pass);
            Ok((verify::report(&outcomes, only.as_deref()), all))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style { format: cli.format, decimal: cli.decimal };
    match run(&cli.command) {
        Ok((report, passed)) => {
            print!("{}", style.render(&report));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_hypothesis() { 2 } else { 1 })
        }
    }
}
