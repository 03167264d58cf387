mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ffzeta_core::error::ErrorClass;

use crate::commands::CliError;

/// Multizeta values, Carlitz polylogarithms and Anderson–Thakur polynomials
/// over F_q[θ].
#[derive(Parser, Debug)]
#[command(name = "ffzeta", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for cached power sums and AT polynomials.
    #[arg(long, global = true, env = "FFZETA_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct SeriesArgs {
    /// Field size (a prime power).
    #[arg(long)]
    q: u32,
    /// Index entries, e.g. 2,1.
    #[arg(long)]
    index: String,
    /// Absolute precision: digits through θ^{−N}.
    #[arg(long)]
    prec: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ζ_A(s) through the given precision.
    Zeta {
        #[command(flatten)]
        series: SeriesArgs,
    },
    /// Alternating MZV ζ_A(s; ε).
    Amzv {
        #[command(flatten)]
        series: SeriesArgs,
        /// Signs ε_j ∈ F_q^×, e.g. -1,1.
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
    },
    /// Carlitz multiple polylogarithm at k-rational points.
    Cmpl {
        #[command(flatten)]
        series: SeriesArgs,
        /// Points in θ, e.g. 1,1/theta.
        #[arg(long)]
        points: String,
    },
    /// The Anderson–Thakur polynomial H_n.
    Atpoly {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u64,
    },
    /// g-maps, admissible partitions, families and dimension bounds.
    #[command(subcommand)]
    Indices(IndicesCmd),
    /// Search, verify and report F_q[θ]-linear relations.
    #[command(subcommand)]
    Relations(RelationsCmd),
    /// Acceptance checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum IndicesCmd {
    /// q-admissible partitions of {1, …, w−1} and their families.
    Partitions {
        #[arg(long)]
        w: u32,
        #[arg(long)]
        q: u32,
        /// Stop after this many partitions.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Dimension lower bounds for weight w and depth r.
    Bound {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        r: u32,
    },
    /// The constructive g-independent family of weight w and depth r.
    Family {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        r: u32,
    },
    /// g(s) for an index s.
    Gmap {
        /// Expected weight; checked against the index.
        #[arg(long)]
        w: Option<u32>,
        #[arg(long)]
        index: String,
    },
}

#[derive(Subcommand, Debug)]
enum RelationsCmd {
    /// Search for relations among labeled values, keeping those that
    /// reverify at twice the precision.
    Hunt {
        #[arg(long)]
        q: u32,
        /// Values such as zeta:2,1  amzv:2,1:-1,1  cmpl:1:theta  log:1  pi:1  gz:3,1  zeta:1*zeta:2
        #[arg(long, num_args = 1.., required = true)]
        labels: Vec<String>,
        /// Coefficient degree bound D.
        #[arg(long)]
        deg_bound: usize,
        #[arg(long)]
        prec: i64,
        /// Also write the outcome (with certificates) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute values at a multiple of a certificate's precision and recheck it.
    Verify {
        /// A certificate, or a hunt/report output containing certificates.
        #[arg(long)]
        cert: PathBuf,
        /// Precision multiple for the recheck (at least 2).
        #[arg(long, default_value_t = 2)]
        factor: i64,
    },
    /// Independence report for a family of indices.
    Report {
        #[arg(long)]
        q: u32,
        /// Indices separated by ';', e.g. "6;1,2,2,1;2,2,2".
        #[arg(long, conflicts_with_all = ["w", "r"])]
        family: Option<String>,
        /// Use the constructive family of this weight ...
        #[arg(long, requires = "r")]
        w: Option<u32>,
        /// ... and depth.
        #[arg(long, requires = "w")]
        r: Option<u32>,
        #[arg(long)]
        deg_bound: usize,
        #[arg(long)]
        prec: i64,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Run the acceptance criteria and print one line per criterion.
    Suite {
        /// Smaller randomized and largest instances.
        #[arg(long)]
        quick: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let ctx = match commands::Context::new(cli.cache_dir.as_deref()) {
        Ok(c) => c,
        Err(e) => return report(e),
    };
    let result = match cli.cmd {
        Command::Zeta { series } => ctx.zeta(series.q, &series.index, series.prec, None, None),
        Command::Amzv { series, signs } => {
            ctx.zeta(series.q, &series.index, series.prec, Some(&signs), None)
        }
        Command::Cmpl { series, points } => {
            ctx.zeta(series.q, &series.index, series.prec, None, Some(&points))
        }
        Command::Atpoly { q, n } => ctx.atpoly(q, n),
        Command::Indices(c) => match c {
            IndicesCmd::Partitions { w, q, limit } => commands::partitions(w, q, limit),
            IndicesCmd::Bound { q, w, r } => commands::bound(q, w, r),
            IndicesCmd::Family { q, w, r } => commands::family(q, w, r),
            IndicesCmd::Gmap { w, index } => commands::gmap(w, &index),
        },
        Command::Relations(c) => match c {
            RelationsCmd::Hunt { q, labels, deg_bound, prec, out } => {
                ctx.hunt(q, &labels, deg_bound, prec, out.as_deref())
            }
            RelationsCmd::Verify { cert, factor } => ctx.verify(&cert, factor),
            RelationsCmd::Report { q, family, w, r, deg_bound, prec } => {
                ctx.report(q, family.as_deref(), w.zip(r), deg_bound, prec)
            }
        },
        Command::Verify(VerifyCmd::Suite { quick }) => commands::suite(quick),
    };
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("plain data"));
            } else {
                print!("{}", out.text);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => report(e),
    }
}

/// 2 for domain and input errors, 3 for budget, margin and resolution
/// limits, 1 for internal failures.
fn report(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    let code = match &e {
        CliError::Core(c) => match c.class() {
            ErrorClass::Domain => 2,
            ErrorClass::Resource => 3,
            ErrorClass::Internal => 1,
        },
        CliError::Input(_) => 2,
    };
    ExitCode::from(code)
}
