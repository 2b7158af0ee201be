//! `sdg`: exact infinitesimal calculus from the command line.
//!
//! Results go to stdout as JSON (CSV where noted). Exit status is 0 on
//! success, 1 when the computation fails and 2 on a usage error.

mod combinat;
mod envelope;
mod jet;
mod verify;
mod wavefront;
mod weil;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "sdg", version, about = "Weil algebras, jets, envelopes, combinatorial connections and wave fronts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lift an expression to a Weil algebra at a base point.
    Jet(jet::JetArgs),
    /// Describe a Weil algebra and multiply elements in it.
    Weil(weil::WeilArgs),
    /// Eliminate the parameter t from a family F(x, y, t) = 0.
    Envelope(envelope::EnvelopeArgs),
    /// Closedness, coboundary and involutivity of the 1-form in a model file.
    Forms(combinat::FormsArgs),
    /// Curvature and Bianchi identity of the connections in a model file.
    Connection(combinat::ConnectionArgs),
    /// Offset a front along its normals and report cusps.
    Wavefront(wavefront::WavefrontArgs),
    /// Run a randomized property suite.
    Verify(verify::VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Pretty JSON on stdout.
pub fn emit(value: &impl Serialize) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Jet(a) => jet::run(a),
        Command::Weil(a) => weil::run(a),
        Command::Envelope(a) => envelope::run(a),
        Command::Forms(a) => combinat::forms(a),
        Command::Connection(a) => combinat::connection(a),
        Command::Wavefront(a) => wavefront::run(a),
        Command::Verify(a) => verify::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
