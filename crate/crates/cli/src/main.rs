//! `incrank`: ranks of subset-inclusion matrices over GF(p) and Q.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use incrank_core::MemoryBudget;

pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_RESOURCE: u8 = 70;

#[derive(Debug, Parser)]
#[command(
    name = "incrank",
    version,
    about = "Rank of set-inclusion matrices over GF(p) and Q"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Cap on dense matrix storage, in bytes; accepts K, M and G suffixes.
    #[arg(
        long,
        global = true,
        env = "INCRANK_MEMORY_BUDGET",
        value_parser = parse_budget,
        default_value = "1G"
    )]
    pub memory_budget: MemoryBudget,

    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Triple {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub i: u32,
    /// Field characteristic: 0 for Q, otherwise a prime.
    #[arg(long)]
    pub p: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Eliminate,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormatArg {
    Csv,
    Json,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of A_i^n(m) by formula, by elimination, or both.
    Rank {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        /// Print the per-term breakdown of the formula.
        #[arg(short, long)]
        verbose: bool,
        /// Eliminate column by column instead of building the dense matrix.
        #[arg(long)]
        streaming: bool,
    },
    /// Compare formula and elimination over every i <= n <= m <= max-m.
    Verify {
        #[arg(long)]
        max_m: u32,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        /// Also check psi on this many random polytabloids.
        #[arg(long, default_value_t = 0)]
        tableaux: u32,
        #[arg(long, default_value_t = commands::DEFAULT_SEED)]
        seed: u64,
        /// Flip the j = 0 term of the formula (harness self-test).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Formula ranks for a range of m, optionally checked by elimination.
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        min_m: u32,
        #[arg(long)]
        max_m: u32,
        #[arg(long, value_enum, default_value_t = TableFormatArg::Csv)]
        format: TableFormatArg,
        /// Every i <= n instead of i <= min(n, m - n).
        #[arg(long)]
        all_pairs: bool,
        /// Skip the elimination column.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Layer dimensions of the column space filtration.
    Filtration {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Print A_i^n(m) as a `rows cols p` header followed by its rows.
    Dump {
        #[command(flatten)]
        triple: Triple,
    },
    /// Time dense against streaming elimination on a ladder of m.
    Bench {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        i: u32,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        min_m: u32,
        #[arg(long, default_value_t = 14)]
        max_m: u32,
    },
}

fn parse_budget(s: &str) -> Result<MemoryBudget, String> {
    let s = s.trim();
    let (digits, shift) = match s.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&s[..s.len() - 1], 10),
        Some('M') => (&s[..s.len() - 1], 20),
        Some('G') => (&s[..s.len() - 1], 30),
        _ => (s, 0),
    };
    let value: u128 = digits
        .parse()
        .map_err(|_| format!("`{s}` is not a byte count"))?;
    value
        .checked_mul(1 << shift)
        .map(MemoryBudget)
        .ok_or_else(|| format!("`{s}` is too large"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match commands::run(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("incrank: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
