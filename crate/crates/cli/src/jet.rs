use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Args;
use sdg_core::algebra::{parse_rational, Rational};
use sdg_core::expr::{self, variable_index, variable_name};
use sdg_core::jet::{taylor_lift, JetPoint};
use sdg_core::scalar::{Float, Scalar};
use sdg_core::weil::parse_algebra;
use serde::Serialize;
use serde_json::Map;

#[derive(Args)]
pub struct JetArgs {
    /// Expression in x, y, t or x1, x2, ...
    #[arg(long)]
    expr: String,
    /// Base point, e.g. "x=1,y=-2/3".
    #[arg(long, value_parser = parse_base)]
    base: Base,
    /// Weil algebra: D, D(n), Dk(k,n), DL, D2, a tensor product A⊗B, or
    /// `weil n=2 rels="..."`.
    #[arg(long, default_value = "D")]
    algebra: String,
    /// Evaluate with binary floats of this many bits instead of exactly.
    #[arg(long)]
    precision: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Base(Vec<(usize, String, Rational)>);

fn parse_base(s: &str) -> Result<Base, String> {
    let mut out: Vec<(usize, String, Rational)> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| format!("expected name=value, got `{part}`"))?;
        let name = name.trim();
        let i = variable_index(name).ok_or_else(|| format!("unknown variable `{name}`"))?;
        if out.iter().any(|(j, _, _)| *j == i) {
            return Err(format!("`{name}` given twice"));
        }
        let v = parse_rational(value.trim()).map_err(|e| e.to_string())?;
        out.push((i, name.to_string(), v));
    }
    if out.is_empty() {
        return Err("empty base point".into());
    }
    Ok(Base(out))
}

#[derive(Serialize)]
struct JetOut {
    value: String,
    coeffs: Map<String, serde_json::Value>,
}

pub fn run(a: JetArgs) -> anyhow::Result<ExitCode> {
    let parsed = expr::parse(&a.expr).context("parsing --expr")?;
    let alg = parse_algebra(&a.algebra)?;
    let arity = a.base.0.iter().map(|(i, _, _)| i + 1).max().unwrap_or(0).max(parsed.expr.arity());
    let mut base = vec![None; arity];
    let mut names: Vec<String> = (0..arity).map(|i| variable_name(i, arity <= 3)).collect();
    for (i, name, v) in &a.base.0 {
        base[*i] = Some(v.clone());
        names[*i] = name.clone();
    }
    for (i, n) in &parsed.names {
        names[*i] = n.clone();
    }
    let base: Vec<Rational> = base
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.with_context(|| format!("--base has no value for `{}`", names[i])))
        .collect::<anyhow::Result<_>>()?;
    let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("e{}", i + 1));

    let strings: Vec<String> = match a.precision {
        None => lift(&parsed.expr, &alg, base).context("exact evaluation failed; --precision evaluates numerically")?,
        Some(0) => bail!("--precision must be positive"),
        Some(p) => lift(&parsed.expr, &alg, base.iter().map(|r| Float::from_rational_prec(r, p)).collect())?,
    };
    let mut coeffs = Map::new();
    for (m, c) in alg.basis().iter().zip(&strings).skip(1) {
        coeffs.insert(m.fmt_with(&name), c.clone().into());
    }
    crate::emit(&JetOut { value: strings[0].clone(), coeffs })?;
    Ok(ExitCode::SUCCESS)
}

fn lift<S: Scalar>(f: &sdg_core::expr::Expr, alg: &std::sync::Arc<sdg_core::weil::WeilAlgebra>, base: Vec<S>) -> anyhow::Result<Vec<String>> {
    let point = JetPoint::generic(alg, base)?;
    Ok(taylor_lift(f, &point)?.coeffs().iter().map(|c| c.to_string()).collect())
}
