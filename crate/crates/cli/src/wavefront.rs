use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Args;
use sdg_core::wavefront::{offset_front, Orientation, OrientedFront, DEFAULT_TOLERANCE};
use serde::Serialize;

use crate::Format;

#[derive(Args)]
pub struct WavefrontArgs {
    /// CSV with rows x,y,nx,ny (header optional).
    #[arg(long)]
    front: PathBuf,
    /// Offset distance, positive.
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    /// `outer` moves along the normals, `inner` against them.
    #[arg(long, default_value = "outer", value_parser = |s: &str| s.parse::<Orientation>().map_err(|e| e.to_string()))]
    orientation: Orientation,
    /// The polyline is open (no segment from the last vertex to the first).
    #[arg(long)]
    open: bool,
    /// Cusp tolerance: a segment is flagged when d'.d <= tol |d|^2.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Write the offset front to this CSV file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `json` prints the cusp report; `csv` prints the offset front and
    /// sends the report to stderr.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Serialize)]
struct CuspReport {
    s: f64,
    orientation: String,
    vertices: usize,
    has_cusps: bool,
    /// Start vertices of segments whose direction reverses.
    cusps: Vec<usize>,
}

pub fn run(a: WavefrontArgs) -> anyhow::Result<ExitCode> {
    let file = File::open(&a.front).with_context(|| format!("reading {}", a.front.display()))?;
    let front = OrientedFront::read_csv(file, !a.open)?;
    let offset = offset_front(&front, a.s, a.orientation, a.tol)?;
    if let Some(path) = &a.out {
        let file = File::create(path).with_context(|| format!("writing {}", path.display()))?;
        offset.front.write_csv(BufWriter::new(file))?;
    }
    let report = CuspReport {
        s: a.s,
        orientation: a.orientation.to_string(),
        vertices: offset.front.len(),
        has_cusps: offset.has_cusps(),
        cusps: offset.cusps.clone(),
    };
    match a.format {
        Format::Json => crate::emit(&report)?,
        Format::Csv => {
            offset.front.write_csv(std::io::stdout().lock())?;
            eprintln!("{}", serde_json::to_string(&report)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}
