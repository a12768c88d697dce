mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bs_core::orbit::Limits;
use bs_core::Error;
use clap::{Parser, Subcommand};

use report::{Output, Status};

#[derive(Parser)]
#[command(name = "bs", version, about = "Exact reports on Bulgarian Solitaire orbits and their limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write a TSV table instead of JSON
    #[arg(long, global = true)]
    tsv: bool,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Add the elapsed wall time to the report
    #[arg(long, global = true)]
    timing: bool,
    /// Cap on orbit states (default 10^7, or BS_MAX_STATES)
    #[arg(long, global = true, value_name = "N")]
    max_states: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Size and height of the orbit of P^k
    Orbit {
        #[arg(long)]
        necklace: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Level census D(x) of the orbit of P^k
    Dseries {
        #[arg(long)]
        necklace: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Leading coefficients of H_P read off censuses of growing powers
    Hseries {
        #[arg(long)]
        necklace: String,
        /// Highest coefficient index
        #[arg(long, default_value_t = 5)]
        coeffs: usize,
    },
    /// Closed form of H_P from the degenerate forest
    Hlimit {
        #[arg(long)]
        necklace: String,
        #[arg(long)]
        depth_cap: Option<usize>,
        /// Also expand the series up to this index
        #[arg(long)]
        coeffs: Option<usize>,
    },
    /// Fuse weights u_k and v_k
    Ufuse {
        #[arg(long, default_value_t = 8)]
        max_k: usize,
    },
    /// Orbit sizes of P^k and their common ratio
    Cratio {
        #[arg(long)]
        necklace: String,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Check a stated identity or probe a conjecture
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Recompute the orbit-size tables
    Tables {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, default_value_t = 3)]
        max_power: u32,
    },
}

#[derive(Subcommand)]
enum Check {
    /// B(WB)^k and W(BW)^k have isomorphic trees and equal H
    #[command(name = "thm12")]
    AlternatingFamilies {
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// The two recurrences for the g_1 coefficient of BW^k agree
    #[command(name = "thm13")]
    Recurrences {
        #[arg(long, default_value_t = 10)]
        max_k: usize,
    },
    /// A necklace and its dual share the denominator of H
    #[command(name = "conj11")]
    DualDenominators {
        #[arg(long, default_value_t = 7)]
        max_size: usize,
    },
    /// Necklaces with equal orbit ratio share the denominator of H
    #[command(name = "conj64")]
    RatioDenominators {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Walks from the cycle count the partial sums of the level census
    #[command(name = "lemma216")]
    PathCounts {
        #[arg(long)]
        necklace: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, default_value_t = 5)]
        coeffs: usize,
    },
    /// Brandt images of every necklace form its recurrent cycle
    #[command(name = "brandt")]
    BrandtCycles {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Orbit { .. } => "orbit",
            Command::Dseries { .. } => "dseries",
            Command::Hseries { .. } => "hseries",
            Command::Hlimit { .. } => "hlimit",
            Command::Ufuse { .. } => "ufuse",
            Command::Cratio { .. } => "cratio",
            Command::Verify { check } => match check {
                Check::AlternatingFamilies { .. } => "verify thm12",
                Check::Recurrences { .. } => "verify thm13",
                Check::DualDenominators { .. } => "verify conj11",
                Check::RatioDenominators { .. } => "verify conj64",
                Check::PathCounts { .. } => "verify lemma216",
                Check::BrandtCycles { .. } => "verify brandt",
            },
            Command::Tables { .. } => "tables",
        }
    }

    fn run(&self, limits: &Limits) -> bs_core::Result<Output> {
        use commands::*;
        match self {
            Command::Orbit { necklace, power } => orbit(necklace, *power, limits),
            Command::Dseries { necklace, power } => dseries(necklace, *power, limits),
            Command::Hseries { necklace, coeffs } => hseries(necklace, *coeffs, limits),
            Command::Hlimit {
                necklace,
                depth_cap,
                coeffs,
            } => hlimit(necklace, *depth_cap, *coeffs),
            Command::Ufuse { max_k } => ufuse(*max_k),
            Command::Cratio { necklace, max_k } => cratio(necklace, *max_k, limits),
            Command::Verify { check } => match check {
                Check::AlternatingFamilies { max_k, depth } => alternating_families(*max_k, *depth),
                Check::Recurrences { max_k } => recurrences(*max_k),
                Check::DualDenominators { max_size } => dual_denominators(*max_size),
                Check::RatioDenominators { max_size } => ratio_denominators(*max_size),
                Check::PathCounts {
                    necklace,
                    power,
                    coeffs,
                } => path_counts(necklace, *power, *coeffs, limits),
                Check::BrandtCycles { max_size } => brandt_cycles(*max_size),
            },
            Command::Tables {
                max_size,
                max_power,
            } => tables(*max_size, *max_power, limits),
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut limits = Limits::from_env();
    if let Some(n) = cli.max_states {
        limits.max_states = n;
    }

    let start = Instant::now();
    let output = match cli.command.run(&limits) {
        Ok(out) => out,
        Err(e @ Error::Capped { .. }) => Output::failure(Status::Capped, &e),
        Err(e @ Error::NonClosing { .. }) => Output::failure(Status::NonClosing, &e),
        Err(e) => return usage_error(e),
    };
    let elapsed = cli.timing.then(|| start.elapsed());

    let text = if cli.tsv {
        output.to_tsv()
    } else {
        output.to_json(cli.command.name(), elapsed)
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return usage_error(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(output.status.exit_code())
}
