use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Args;
use sdg_core::combinat::{coboundary1, distribution_from_form, is_closed, load_model, Arrows, GroupoidConnection, Model, NeighbourSpace};
use serde::Serialize;

#[derive(Args)]
pub struct FormsArgs {
    /// Model file (JSON) with a "form1".
    #[arg(long)]
    model: PathBuf,
}

#[derive(Args)]
pub struct ConnectionArgs {
    /// Model file (JSON) with a "connection" and/or "lambda".
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated points to test for being geodesic under lambda.
    #[arg(long, value_delimiter = ',')]
    geodesic: Vec<String>,
}

fn read_model(path: &PathBuf) -> anyhow::Result<Model> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(load_model(&text)?)
}

fn names(space: &NeighbourSpace, pts: &[usize]) -> Vec<String> {
    pts.iter().map(|&p| space.name(p).to_string()).collect()
}

#[derive(Serialize)]
struct Entry {
    simplex: Vec<String>,
    value: String,
}

#[derive(Serialize)]
struct FormsOut {
    points: usize,
    group: String,
    closed: bool,
    involutive: bool,
    /// Diagnostic only: alternating under transpositions of the 2-form dω.
    alternating: bool,
    /// Nontrivial values of dω on 2-simplices.
    coboundary: Vec<Entry>,
    /// A triple (x, y, z) with x ≈ y, x ≈ z, y ~ z but not y ≈ z.
    witness: Option<Vec<String>>,
}

pub fn forms(a: FormsArgs) -> anyhow::Result<ExitCode> {
    let model = read_model(&a.model)?;
    let Some(w) = &model.form1 else { bail!("model has no \"form1\"") };
    let space = &model.space;
    let group = w.group();
    let dw = coboundary1(w);
    let coboundary = space
        .simplices(2)
        .into_iter()
        .filter_map(|s| {
            let v = dw.get(s[0], s[1], s[2])?;
            (v != group.identity()).then(|| Entry { simplex: names(space, &s), value: group.element_name(v).to_string() })
        })
        .collect();
    let witness = distribution_from_form(w).involutivity_witness().map(|(x, y, z)| names(space, &[x, y, z]));
    let out = FormsOut {
        points: space.len(),
        group: group.name().to_string(),
        closed: is_closed(w),
        involutive: witness.is_none(),
        alternating: dw.is_alternating(),
        coboundary,
        witness,
    };
    crate::emit(&out)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ConnectionReport {
    arrows: String,
    flat: bool,
    /// Nontrivial curvature values R(x, y, z) on 2-simplices.
    curvature: Vec<Entry>,
    simplices_checked: usize,
    bianchi_failures: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct AffineEntry {
    simplex: Vec<String>,
    /// z -> z' around the simplex, for z in the monad of its first point.
    map: serde_json::Map<String, serde_json::Value>,
}

#[derive(Serialize)]
struct AffineReport {
    symmetric: bool,
    flat: bool,
    curvature: Vec<AffineEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    geodesic: Option<bool>,
}

#[derive(Serialize)]
struct ConnectionOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    connection: Option<ConnectionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<AffineReport>,
}

fn report<A: Arrows>(conn: &GroupoidConnection<A>, label: String) -> anyhow::Result<ConnectionReport> {
    let space = conn.space();
    let arrows = conn.arrows();
    let mut curvature = Vec::new();
    for s in space.simplices(2) {
        let r = conn.curvature(s[0], s[1], s[2])?;
        if r != arrows.identity_at(s[0]) {
            curvature.push(Entry { simplex: names(space, &s), value: arrows.arrow_name(r) });
        }
    }
    let failures = conn.bianchi_failures();
    Ok(ConnectionReport {
        arrows: label,
        flat: curvature.is_empty(),
        curvature,
        simplices_checked: space.simplices(3).len(),
        bianchi_failures: failures.iter().map(|s| names(space, s)).collect(),
    })
}

pub fn connection(a: ConnectionArgs) -> anyhow::Result<ExitCode> {
    let model = read_model(&a.model)?;
    let space = &model.space;
    let mut out = ConnectionOut { connection: None, lambda: None };
    if let Some(conn) = &model.connection {
        out.connection = Some(report(conn, conn.arrows().name().to_string())?);
    } else if let Some(conn) = &model.groupoid_connection {
        out.connection = Some(report(conn, "groupoid".to_string())?);
    }
    if let Some(lambda) = &model.lambda {
        let mut curvature = Vec::new();
        for s in space.simplices(2) {
            let k = lambda.curvature(s[0], s[1], s[2])?;
            if !k.is_identity() {
                let map = k.map.iter().map(|(&z, &w)| (space.name(z).to_string(), space.name(w).into())).collect();
                curvature.push(AffineEntry { simplex: names(space, &s), map });
            }
        }
        let geodesic = if a.geodesic.is_empty() {
            None
        } else {
            let subset: Vec<usize> = a
                .geodesic
                .iter()
                .map(|p| space.point(p.trim()).with_context(|| format!("no point `{p}`")))
                .collect::<anyhow::Result<_>>()?;
            Some(lambda.is_geodesic(&subset)?)
        };
        out.lambda = Some(AffineReport { symmetric: lambda.is_symmetric(), flat: curvature.is_empty(), curvature, geodesic });
    } else if !a.geodesic.is_empty() {
        bail!("--geodesic needs a \"lambda\" in the model");
    }
    if out.connection.is_none() && out.lambda.is_none() {
        bail!("model has neither a \"connection\" nor a \"lambda\"");
    }
    crate::emit(&out)?;
    let failed = out.connection.as_ref().is_some_and(|c| !c.bianchi_failures.is_empty());
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
