//! Exact construction, analysis, and verification of almost Beatty partitions.

pub mod analysis;
pub mod beatty;
pub mod cli;
pub mod constructions;
pub mod exact_reals;
pub mod oeis;

/// Entry point for the command-line binary; returns the process exit code.
pub fn run() -> i32 {
    cli::run()
}
