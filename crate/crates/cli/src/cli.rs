use std::path::PathBuf;

use clap::{Parser, Subcommand};

/// Coherence, p-consistency and p-entailment for conditional knowledge bases.
///
/// Exit status: 0 for an affirmative verdict, 1 for a negative one, 2 on error.
#[derive(Debug, Parser)]
#[command(name = "cohere", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Include the per-iteration log of the coherence procedure.
    #[arg(long, global = true)]
    pub trace: bool,

    /// Largest number of atoms accepted for world enumeration.
    #[arg(long, global = true, value_name = "N")]
    pub guard_atoms: Option<usize>,

    /// Largest family for procedures that enumerate every subfamily.
    #[arg(long, global = true, value_name = "N")]
    pub guard_subsets: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether an assessment on the family is coherent.
    CheckCoherence {
        kbfile: PathBuf,
        /// Comma-separated probabilities, one per conditional (p/q or decimal).
        #[arg(long, allow_hyphen_values = true)]
        assessment: String,
    },
    /// Decide whether the family is p-consistent.
    PConsistent { kbfile: PathBuf },
    /// Decide whether the family p-entails a query.
    PEntails {
        kbfile: PathBuf,
        /// A conditional such as "C | A", or the name of a query in the file.
        #[arg(long)]
        query: String,
    },
    /// List the subfamilies whose quasi conjunction is included in the query.
    ClassK {
        kbfile: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Place a query in one of the three cases A1, A2, A3.
    Classify {
        kbfile: PathBuf,
        #[arg(long)]
        query: String,
    },
    /// Print the quasi conjunction of a subfamily.
    Qc {
        kbfile: PathBuf,
        /// Comma-separated 1-based indices; the whole family by default.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Decide whether the first conditional is included in the second.
    Includes {
        first: String,
        second: String,
        /// Atom names, separated by commas or spaces.
        #[arg(long)]
        atoms: String,
    },
    /// Range of coherent values for the quasi conjunction of two conditionals.
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Print the constituents of the family and their points.
    Constituents {
        kbfile: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        assessment: Option<String>,
    },
}
