use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdg_core::algebra::{ratio, Rational};
use sdg_core::combinat::{coboundary0, coboundary1, distribution_from_form, is_closed, FiniteGroup, Form1, GroupoidConnection, NeighbourSpace};
use sdg_core::weil::{parse_algebra, WeilAlgebra, WeilElement};
use serde::Serialize;

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Group for the combinatorial suites: Zn, S3, S4, D4, Q8.
    #[arg(long, default_value = "S3")]
    group: String,
    /// Algebra for the ring suite.
    #[arg(long, default_value = "DL")]
    algebra: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    /// Bianchi identity for random connections on random graphs.
    Bianchi,
    /// Closed 1-forms define involutive distributions.
    Involutive,
    /// d(df) is the identity for random 0-forms.
    Coboundary,
    /// Commutative-ring axioms in a Weil algebra.
    Ring,
}

#[derive(Serialize)]
struct Summary {
    suite: String,
    seed: u64,
    trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebra: Option<String>,
    /// Individual checks made (simplices, closed forms, identities).
    checked: usize,
    failures: usize,
    counterexamples: Vec<String>,
}

/// Counterexamples kept in the summary.
const SHOWN: usize = 10;

struct Tally {
    checked: usize,
    failures: usize,
    counterexamples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < SHOWN {
                self.counterexamples.push(describe());
            }
        }
    }
}

fn random_space(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Arc<NeighbourSpace> {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(0.4..0.95);
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
    Arc::new(NeighbourSpace::new(n, edges).expect("indices in range"))
}

pub fn run(a: VerifyArgs) -> anyhow::Result<ExitCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut tally = Tally { checked: 0, failures: 0, counterexamples: Vec::new() };
    let (mut group_name, mut algebra_name) = (None, None);
    match a.suite {
        Suite::Ring => {
            let alg = parse_algebra(&a.algebra)?;
            algebra_name = Some(alg.name().to_string());
            for _ in 0..a.trials {
                ring_trial(&mut rng, &alg, &mut tally)?;
            }
        }
        suite => {
            let group = Arc::new(FiniteGroup::named(&a.group)?);
            group_name = Some(group.name().to_string());
            for _ in 0..a.trials {
                match suite {
                    Suite::Bianchi => bianchi_trial(&mut rng, &group, &mut tally)?,
                    Suite::Involutive => involutive_trial(&mut rng, &group, &mut tally),
                    _ => coboundary_trial(&mut rng, &group, &mut tally)?,
                }
            }
        }
    }
    let summary = Summary {
        suite: format!("{:?}", a.suite).to_lowercase(),
        seed: a.seed,
        trials: a.trials,
        group: group_name,
        algebra: algebra_name,
        checked: tally.checked,
        failures: tally.failures,
        counterexamples: tally.counterexamples,
    };
    crate::emit(&summary)?;
    Ok(if summary.failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn bianchi_trial(rng: &mut ChaCha8Rng, group: &Arc<FiniteGroup>, tally: &mut Tally) -> anyhow::Result<()> {
    let space = random_space(rng, 4, 6);
    let mut values = Vec::new();
    let conn = GroupoidConnection::from_fn(&space, group, |x, y| {
        let g = rng.gen_range(0..group.order());
        values.push(format!("{x}{y}:{}", group.element_name(g)));
        g
    })?;
    let failures = conn.bianchi_failures();
    for s in space.simplices(3) {
        let bad = failures.iter().any(|f| f[..] == s[..]);
        tally.check(!bad, || format!("simplex {s:?} of connection [{}]", values.join(" ")));
    }
    Ok(())
}

fn involutive_trial(rng: &mut ChaCha8Rng, group: &Arc<FiniteGroup>, tally: &mut Tally) {
    let space = random_space(rng, 3, 6);
    let w = if rng.gen_bool(0.5) {
        let f: Vec<usize> = space.points().map(|_| rng.gen_range(0..group.order())).collect();
        coboundary0(&space, group, &f).expect("one value per point")
    } else {
        Form1::from_fn(&space, group, |_, _| rng.gen_range(0..group.order()))
    };
    if is_closed(&w) {
        let witness = distribution_from_form(&w).involutivity_witness();
        tally.check(witness.is_none(), || format!("closed form on {:?} fails at {witness:?}", space.edges()));
    }
}

fn coboundary_trial(rng: &mut ChaCha8Rng, group: &Arc<FiniteGroup>, tally: &mut Tally) -> anyhow::Result<()> {
    let space = random_space(rng, 2, 6);
    let f: Vec<usize> = space.points().map(|_| rng.gen_range(0..group.order())).collect();
    let ddf = coboundary1(&coboundary0(&space, group, &f)?);
    tally.check(ddf.is_identity(), || format!("f = {f:?} on {:?}", space.edges()));
    Ok(())
}

fn ring_trial(rng: &mut ChaCha8Rng, alg: &Arc<WeilAlgebra>, tally: &mut Tally) -> anyhow::Result<()> {
    let mut element = || -> anyhow::Result<WeilElement<Rational>> {
        let coeffs = (0..alg.dim()).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
        Ok(WeilElement::from_coeffs(alg, coeffs)?)
    };
    let (u, v, w) = (element()?, element()?, element()?);
    let show = |u: &WeilElement<Rational>| format!("{:?}", u.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let describe = || format!("u = {}, v = {}, w = {}", show(&u), show(&v), show(&w));
    tally.check(u.mul(&v)? == v.mul(&u)?, || format!("uv != vu for {}", describe()));
    tally.check(u.mul(&v)?.mul(&w)? == u.mul(&v.mul(&w)?)?, || format!("(uv)w != u(vw) for {}", describe()));
    tally.check(u.mul(&v.add(&w)?)? == u.mul(&v)?.add(&u.mul(&w)?)?, || format!("u(v+w) != uv+uw for {}", describe()));
    Ok(())
}
