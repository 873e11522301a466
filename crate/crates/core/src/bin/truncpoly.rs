use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use truncpoly::cli::{run_command, Command, Options};

#[derive(Parser)]
#[command(name = "truncpoly", version, about = "Truncated-ring tools for polynomial endomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Working field, e.g. "p=7", "p=2;mod=t^2+t+1", "rational"
    #[arg(long, global = true)]
    field: Option<String>,
    /// Map document
    #[arg(long, global = true, value_name = "FILE")]
    map: Option<PathBuf>,
    /// Base point a1,...,an
    #[arg(long, global = true, allow_hyphen_values = true)]
    point: Option<String>,
    /// Truncation level
    #[arg(long, global = true)]
    level: Option<u32>,
    /// Highest level tried by invert / shown by project
    #[arg(long, global = true)]
    max_level: Option<u32>,
    /// Give up once a candidate inverse exceeds this degree
    #[arg(long, global = true)]
    degree_bound: Option<u64>,
    /// Use m-adic truncations with base order N (level s uses N*2^(s-1))
    #[arg(long, global = true, value_name = "N")]
    madic: Option<u32>,
    /// Emit a JSON report
    #[arg(long, global = true)]
    json: bool,
    /// Number of variables (dim without a map)
    #[arg(long, global = true)]
    vars: Option<usize>,
    /// Truncation descriptor for dim, e.g. "frob:p=2,s=2,n=1,a=0"
    #[arg(long, global = true)]
    spec: Option<String>,
    /// Include fibers in the points report
    #[arg(long, global = true)]
    fibers: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Automorphism criterion at one truncation level
    Check,
    /// Invert the truncated endomorphism at one level
    TruncInvert,
    /// Lift truncated inverses to an exact polynomial inverse
    Invert,
    /// Project to levels 1..S and check coherence
    Project,
    /// Brute-force point map report over a finite field
    Points,
    /// Dimension and nilpotency index of a truncated ring
    Dim,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Check => Command::Check,
        Cmd::TruncInvert => Command::TruncInvert,
        Cmd::Invert => Command::Invert,
        Cmd::Project => Command::Project,
        Cmd::Points => Command::Points,
        Cmd::Dim => Command::Dim,
    };
    let map = match &cli.map {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(err) => {
                eprintln!("error: cannot read {}: {err}", path.display());
                return ExitCode::from(1);
            }
        },
        None => None,
    };
    let options = Options {
        field: cli.field,
        map,
        point: cli.point,
        level: cli.level,
        max_level: cli.max_level,
        degree_bound: cli.degree_bound,
        madic: cli.madic,
        json: cli.json,
        vars: cli.vars,
        spec: cli.spec,
        fibers: cli.fibers,
    };
    let out = run_command(command, &options);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.exit_code as u8)
}
