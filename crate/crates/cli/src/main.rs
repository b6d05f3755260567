use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mqk::driver::{self, Command, DemazureOp, Format, RunConfig};
use mqk::random::seed_from_env;
use mqk::select::{Coeff, Theory};
use mqk::verify::Suite;
use mqk::weyl::RootType;

#[derive(Parser)]
#[command(name = "mqk", version, about = "Exact checks for formal group laws, quadrics and Demazure operators")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    format: OutFormat,

    /// Repeat to list passing checks too.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    /// Seed for random inputs; defaults to MQK_SEED.
    #[arg(long, global = true, value_parser = parse_seed)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Duality,
    Braid,
    Charmap,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a formal group law, its [2]-series and [P^i] classes.
    Fgl {
        #[arg(long, default_value = "k2")]
        theory: Theory,
        #[arg(long, default_value = "z2loc")]
        coeff: Coeff,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// Multiplication table and pushforward column of a split quadric.
    QuadricTable {
        #[arg(long)]
        theory: Theory,
        #[arg(long)]
        coeff: Coeff,
        #[arg(long = "dim")]
        dim: u32,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// Decompose the diagonal of a quadric in K(n) mod 2.
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dim: u32,
        #[arg(long, default_value = "f2")]
        coeff: Coeff,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// Demazure operators for the Weyl groups of type B and D.
    Demazure {
        #[arg(long = "type")]
        root_type: RootType,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum)]
        op: Option<Op>,
        /// Comma-separated letters; the last letter acts first.
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
        #[arg(long)]
        poly: Option<String>,
        /// Law used with --word.
        #[arg(long, default_value = "chow")]
        theory: Theory,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// Run property suites over a grid of heights and dimensions.
    Verify {
        /// Comma-separated suite names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        dmax: u32,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    mqk::random::parse_seed(s).ok_or_else(|| format!("bad seed `{s}`"))
}

fn suites(names: &[String]) -> Result<Vec<Suite>, mqk::Error> {
    if names.iter().any(|s| s == "all") {
        return Ok(Suite::ALL.to_vec());
    }
    names.iter().map(|s| s.parse()).collect()
}

fn config(cli: Cli) -> Result<RunConfig, mqk::Error> {
    let command = match cli.command {
        Cmd::Fgl { theory, coeff, trunc } => Command::Fgl { theory, coeff, trunc },
        Cmd::QuadricTable { theory, coeff, dim, trunc } => Command::QuadricTable { theory, coeff, dim, trunc },
        Cmd::Decompose { n, dim, coeff, trunc } => Command::Decompose { n, dim, coeff, trunc },
        Cmd::Demazure { root_type, rank, op, word, poly, theory, trunc } => Command::Demazure {
            root_type,
            rank,
            op: op.map(|o| match o {
                Op::Duality => DemazureOp::Duality,
                Op::Braid => DemazureOp::Braid,
                Op::Charmap => DemazureOp::Charmap,
            }),
            word,
            poly,
            theory,
            trunc,
        },
        Cmd::Verify { suite, n, dmax } => Command::Verify { suites: suites(&suite)?, ns: n, dmax },
    };
    Ok(RunConfig {
        command,
        format: match cli.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        },
        verbosity: cli.verbose,
        seed: cli.seed.unwrap_or_else(seed_from_env),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = config(cli).and_then(|c| driver::run(&c));
    match report {
        Ok(r) => {
            print!("{}", r.render());
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("mqk: {e}");
            ExitCode::from(2)
        }
    }
}
