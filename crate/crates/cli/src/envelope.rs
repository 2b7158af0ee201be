use std::process::ExitCode;

use anyhow::bail;
use clap::Args;
use sdg_core::envelope::{envelope_eliminate, EnvelopeOptions, Family, Sample, Sampling};
use serde::Serialize;

use crate::Format;

#[derive(Args)]
pub struct EnvelopeArgs {
    /// F(x, y, t), polynomial or elementary.
    #[arg(long)]
    family: String,
    /// Exact elimination only; fails for non-polynomial families.
    #[arg(long, conflicts_with = "sample")]
    exact: bool,
    /// Reduce the eliminant to its squarefree part.
    #[arg(long)]
    squarefree: bool,
    /// Parameter grid "t_min:t_max:steps" for numeric sampling.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    sample: Option<Sampling>,
    /// `csv` prints the sampled points as t,x,y rows.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

fn parse_grid(s: &str) -> Result<Sampling, String> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [lo, hi, steps] = parts[..] else { return Err("expected t_min:t_max:steps".into()) };
    let num = |v: &str| v.parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    let (lo, hi) = (num(lo)?, num(hi)?);
    let steps: usize = steps.parse().map_err(|e| format!("`{steps}`: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) || steps == 0 {
        return Err(format!("invalid grid `{s}`"));
    }
    Ok(Sampling::range(lo, hi, steps))
}

#[derive(Serialize)]
struct EnvelopeOut {
    eliminant: Option<String>,
    degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<Vec<SampleOut>>,
}

#[derive(Serialize)]
struct SampleOut {
    t: f64,
    x: f64,
    y: f64,
}

pub fn run(a: EnvelopeArgs) -> anyhow::Result<ExitCode> {
    let fam = Family::parse(&a.family)?;
    if a.exact && fam.polynomial().is_none() {
        bail!("--exact needs a polynomial family");
    }
    let opts = EnvelopeOptions {
        squarefree: a.squarefree,
        sampling: if a.exact { None } else { Some(a.sample.unwrap_or_default()) },
    };
    let locus = envelope_eliminate(&fam, &opts)?;
    if a.format == Format::Csv {
        print_csv(&locus.samples);
        return Ok(ExitCode::SUCCESS);
    }
    let out = EnvelopeOut {
        eliminant: locus.eliminant_string(),
        degenerate: locus.degenerate,
        samples: (!a.exact).then(|| locus.samples.iter().map(|s| SampleOut { t: s.t, x: s.x, y: s.y }).collect()),
    };
    crate::emit(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn print_csv(samples: &[Sample]) {
    println!("t,x,y");
    for s in samples {
        println!("{},{},{}", s.t, s.x, s.y);
    }
}
