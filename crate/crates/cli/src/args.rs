use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypertope::{DEFAULT_CAPACITY, DEFAULT_ELEMENT_CEILING};

#[derive(Debug, Parser)]
#[command(
    name = "hypertope",
    version,
    about = "Verify regular 3-hypertopes of 2-power order"
)]
pub struct Cli {
    #[command(flatten)]
    pub run: RunOptions,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunOptions {
    /// Maximum number of cosets during enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAPACITY, value_parser = positive)]
    pub capacity: usize,

    /// Maximum group order held as an element table.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CEILING, value_parser = positive)]
    pub ceiling: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Leave out per-stage timings, making the output byte-deterministic.
    #[arg(long, global = true)]
    pub no_timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orders of M1 and M2 and the two element orders.
    Prop23 {
        #[arg(long, value_parser = range)]
        b_range: RangeInclusive<u32>,
    },
    /// Direct-product decomposition witnesses of M1 and M2.
    Lemma31 {
        #[arg(long, value_parser = range)]
        b_range: RangeInclusive<u32>,
    },
    /// Full pipeline for G(n, s, t, l).
    Theorem {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        l: u32,
        /// Also check the quotient chain down to G/K.
        #[arg(long)]
        deep: bool,
        /// Write the incidence graph as an edge list.
        #[arg(long, value_name = "PATH")]
        dump_incidence: Option<PathBuf>,
    },
    /// The pipeline over every admissible tuple in the given ranges.
    Sweep {
        #[arg(long, value_parser = range)]
        n_range: RangeInclusive<u32>,
        #[arg(long, value_parser = range)]
        s_range: RangeInclusive<u32>,
        #[arg(long, value_parser = range)]
        t_range: RangeInclusive<u32>,
        #[arg(long, value_parser = range)]
        l_range: RangeInclusive<u32>,
        #[arg(long)]
        deep: bool,
    },
    /// The pipeline on a presentation file.
    Analyze {
        #[arg(long, value_name = "PATH")]
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        dump_incidence: Option<PathBuf>,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// `a..b` (inclusive) or a single value.
pub fn range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("`{v}`: {e}"));
    let r = match s.split_once("..") {
        Some((a, b)) => parse(a)?..=parse(b.trim_start_matches('='))?,
        None => {
            let v = parse(s)?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(r)
}
