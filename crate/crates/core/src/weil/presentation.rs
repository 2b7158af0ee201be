//! Text form of Weil algebras.
//!
//! ```text
//! D | D(n) | Dk(k,n) | DL | D2 | Q
//! weil n=2 rels="x1^2=0; x2^2=0; x1*x2=0"
//! A ⊗ B        (also written A (x) B)
//! ```

use std::sync::Arc;

use crate::algebra::parse_polynomial;

use super::{WeilAlgebra, WeilError};

pub fn parse_algebra(text: &str) -> Result<Arc<WeilAlgebra>, WeilError> {
    let normalized = text.replace("(x)", "⊗");
    let mut factors = normalized.split('⊗').map(str::trim);
    let first = parse_factor(factors.next().unwrap_or(""))?;
    factors.try_fold(first, |acc, f| Ok(WeilAlgebra::tensor(&acc, &*parse_factor(f)?)))
}

fn parse_factor(text: &str) -> Result<Arc<WeilAlgebra>, WeilError> {
    let bad = || WeilError::Presentation(format!("unrecognized algebra `{text}`"));
    let args = |inner: &str| -> Result<Vec<usize>, WeilError> {
        inner
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect()
    };
    match text {
        "D" => return Ok(WeilAlgebra::dual()),
        "DL" | "D_L" => return Ok(WeilAlgebra::laplace()),
        "D2" | "D_2" => return Ok(WeilAlgebra::second_order()),
        "Q" => return Ok(WeilAlgebra::trivial()),
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("weil") {
        return parse_presentation(rest.trim());
    }
    if let Some(inner) = text.strip_prefix("Dk(").and_then(|r| r.strip_suffix(')')) {
        return match args(inner)?[..] {
            [k, n] if k >= 1 && n >= 1 => Ok(WeilAlgebra::order_k(k as u32, n)),
            _ => Err(bad()),
        };
    }
    if let Some(inner) = text.strip_prefix("D(").and_then(|r| r.strip_suffix(')')) {
        return match args(inner)?[..] {
            [n] if n >= 1 => Ok(WeilAlgebra::first_order(n)),
            _ => Err(bad()),
        };
    }
    Err(bad())
}

fn parse_presentation(rest: &str) -> Result<Arc<WeilAlgebra>, WeilError> {
    let bad = |msg: &str| WeilError::Presentation(msg.to_string());
    let rest = rest.strip_prefix("n=").ok_or_else(|| bad("expected `n=<count>`"))?;
    let (n, rest) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let nvars: usize = n.parse().map_err(|_| bad("invalid variable count"))?;
    let rels = rest
        .trim()
        .strip_prefix("rels=")
        .ok_or_else(|| bad("expected `rels=\"...\"`"))?
        .trim_matches('"');
    let mut relations = Vec::new();
    for rel in rels.split(';').map(str::trim).filter(|r| !r.is_empty()) {
        let (l, r) = rel.split_once('=').ok_or_else(|| bad(&format!("relation `{rel}` lacks `=`")))?;
        let lhs = parse_polynomial(l)?;
        let rhs = parse_polynomial(r)?;
        if lhs.max_var().max(rhs.max_var()).is_some_and(|v| v >= nvars) {
            return Err(bad(&format!("relation `{rel}` uses a variable beyond x{nvars}")));
        }
        relations.push((lhs.with_nvars(nvars), rhs.with_nvars(nvars)));
    }
    let alg = WeilAlgebra::build(nvars, &relations)?;
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    #[test]
    fn named_shortcuts() {
        assert_eq!(parse_algebra("D").unwrap().dim(), 2);
        assert_eq!(parse_algebra("D(3)").unwrap().dim(), 4);
        assert_eq!(parse_algebra("Dk(2,2)").unwrap().dim(), 6);
        assert_eq!(parse_algebra("DL").unwrap().dim(), 4);
        assert_eq!(parse_algebra("D ⊗ D").unwrap().dim(), 4);
        assert_eq!(parse_algebra("D(2) (x) D").unwrap().dim(), 6);
        assert!(parse_algebra("E(2)").is_err());
    }

    #[test]
    fn explicit_presentation_matches_named_algebra() {
        let a = parse_algebra(r#"weil n=2 rels="x1^2=0; x2^2=0; x1*x2=0""#).unwrap();
        assert_eq!(*a, *WeilAlgebra::first_order(2));
        let l = parse_algebra(r#"weil n=2 rels="x1^2=x2^2; x1*x2=0""#).unwrap();
        assert_eq!(*l, *WeilAlgebra::laplace());
        assert_eq!(l.basis()[3], Monomial::var_pow(0, 2));
    }

    #[test]
    fn presentation_errors() {
        assert!(parse_algebra(r#"weil n=2 rels="x1^2=0""#).is_err());
        assert!(parse_algebra(r#"weil n=1 rels="x2^2=0""#).is_err());
        assert!(parse_algebra(r#"weil rels="x1^2=0""#).is_err());
    }
}
