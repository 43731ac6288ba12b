use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ldrcubic_cli::{self as cli, CliError, Format};

#[derive(Parser, Debug)]
#[command(name = "ldrcubic", version, about = "Linear determinantal representations of plane cubics over finite fields")]
struct Args {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for the census and equivalence searches.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a finite field, e.g. `2^2` or `9`.
    Field {
        spec: String,
        /// Modulus coefficients, low degree first (comma separated).
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// List the rational points of a curve with flex flags.
    Points {
        curve: PathBuf,
        #[arg(long)]
        p0: Option<String>,
    },
    /// All determinantal representations of a smooth cubic.
    Detrep {
        curve: PathBuf,
        #[arg(long)]
        p0: Option<String>,
        /// Representation file (one or a list); prints an equivalence witness for each.
        #[arg(long, value_name = "REPS")]
        witness: Option<PathBuf>,
    },
    /// Check det(M) = lambda * F.
    Verify { curve: PathBuf, rep: PathBuf },
    /// Hurwitz class numbers H(delta) of negative discriminants.
    Classnum {
        #[arg(allow_negative_numbers = true, required_unless_present = "from")]
        delta: Vec<i64>,
        #[arg(long, allow_negative_numbers = true, requires = "to")]
        from: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<i64>,
    },
    /// Classes of smooth cubics with n points, or a whole count table.
    Count {
        #[arg(long, required_unless_present = "table", requires = "n")]
        q: Option<u64>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long, conflicts_with_all = ["q", "n"], value_parser = ["1", "2", "3"])]
        table: Option<String>,
    },
    /// Brute-force orbit census of smooth cubics over F_q (q = 2, 3; 4 with --slow).
    Classify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        slow: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Regenerate a table: 1, 2, 3, 5, 6, sym, 7, 8, 9, 10 or two-3.
    Tables { selector: String },
}

fn run(args: Args) -> Result<String, CliError> {
    let format = if args.json {
        Format::Json
    } else if args.csv {
        Format::Csv
    } else {
        Format::Text
    };
    if let Some(n) = args.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match args.command {
        Command::Field { spec, modulus } => cli::cmd_field(&spec, modulus.as_deref(), format),
        Command::Points { curve, p0 } => {
            let c = cli::load_curve(&curve)?;
            let p0 = p0.map(|s| cli::parse_point(&c, &s)).transpose()?;
            cli::cmd_points(&c, p0.as_ref(), format)
        }
        Command::Detrep { curve, p0, witness } => {
            let c = cli::load_curve(&curve)?;
            let p0 = p0.map(|s| cli::parse_point(&c, &s)).transpose()?;
            let given = witness.map(|w| cli::load_reps(&w)).transpose()?.unwrap_or_default();
            cli::cmd_detrep(&c, p0.as_ref(), &given, format)
        }
        Command::Verify { curve, rep } => {
            let c = cli::load_curve(&curve)?;
            let reps = cli::load_reps(&rep)?;
            let [rep] = reps.as_slice() else {
                return Err(CliError::Parse("expected exactly one representation".into()));
            };
            cli::cmd_verify(&c, rep, format)
        }
        Command::Classnum { delta, from, to } => {
            let mut all = delta;
            if let (Some(a), Some(b)) = (from, to) {
                all.extend(cli::discriminant_range(a, b));
            }
            cli::cmd_classnum(&all, format)
        }
        Command::Count { q, n, table } => match (table, q, n) {
            (Some(t), _, _) => cli::cmd_tables(&t, format),
            (None, Some(q), Some(n)) => cli::cmd_count(q, n, format),
            _ => Err(CliError::Usage("count needs --q and --n, or --table".into())),
        },
        Command::Classify { q, slow, out } => cli::cmd_classify(q, slow, out.as_deref(), format),
        Command::Tables { selector } => cli::cmd_tables(&selector, format),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
