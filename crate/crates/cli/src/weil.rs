use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Args;
use sdg_core::algebra::{parse_polynomial, Rational};
use sdg_core::expr::Expr;
use sdg_core::weil::{monad_check, parse_algebra, WeilAlgebra, WeilElement};
use serde::Serialize;
use serde_json::Map;

#[derive(Args)]
pub struct WeilArgs {
    /// Algebra, as for `sdg jet --algebra`.
    #[arg(long, default_value = "D")]
    algebra: String,
    /// Element as a polynomial in the generators x1, x2, ...; repeat to
    /// multiply several.
    #[arg(long = "element", value_name = "POLY")]
    elements: Vec<String>,
    /// Whether this polynomial map carries the generic point of the algebra
    /// into a first-order neighbourhood of its value at 0.
    #[arg(long, value_name = "EXPR")]
    monad: Option<String>,
}

#[derive(Serialize)]
struct WeilOut {
    name: String,
    generators: usize,
    dim: usize,
    order: u32,
    depth: u32,
    basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<Map<String, serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nilpotency_order: Option<Option<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monad: Option<bool>,
}

fn generator_name(i: usize) -> String {
    format!("x{}", i + 1)
}

pub fn run(a: WeilArgs) -> anyhow::Result<ExitCode> {
    let alg = parse_algebra(&a.algebra)?;
    let mut out = WeilOut {
        name: alg.name().to_string(),
        generators: alg.nvars(),
        dim: alg.dim(),
        order: alg.order(),
        depth: alg.depth(),
        basis: alg.basis().iter().map(|m| m.fmt_with(&generator_name)).collect(),
        product: None,
        nilpotency_order: None,
        monad: None,
    };
    if !a.elements.is_empty() {
        let mut acc = WeilElement::<Rational>::one(&alg, &());
        for text in &a.elements {
            acc = acc.mul(&element(&alg, text)?)?;
        }
        let mut coords = Map::new();
        for (m, c) in alg.basis().iter().zip(acc.coeffs()) {
            coords.insert(m.fmt_with(&generator_name), c.to_string().into());
        }
        out.product = Some(coords);
        out.nilpotency_order = Some(acc.nilpotency_order());
    }
    if let Some(text) = &a.monad {
        let alpha: Expr = text.parse().context("parsing --monad")?;
        out.monad = Some(monad_check(&alpha, &alg)?);
    }
    crate::emit(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn element(alg: &std::sync::Arc<WeilAlgebra>, text: &str) -> anyhow::Result<WeilElement<Rational>> {
    let p = parse_polynomial(text).with_context(|| format!("parsing element `{text}`"))?;
    if let Some(v) = p.max_var().filter(|&v| v >= alg.nvars()) {
        bail!("`{text}` uses x{} but {} has {} generators", v + 1, alg.name(), alg.nvars());
    }
    Ok(WeilElement::from_polynomial(alg, &p.with_nvars(alg.nvars()), &()))
}
