use crate::jet::{taylor_lift, JetPoint};
use crate::weil::WeilAlgebra;

use super::{EnvelopeError, EnvelopeLocus, Family, Sample};

/// Default tolerance for [`touching_check`].
pub const TOUCH_TOLERANCE: f64 = 1e-9;

/// Whether the member `S_t0` of the family and the envelope locus have
/// first-order contact at `pt`: both pass through `pt` and their gradients
/// there are parallel (sine of the angle at most `tol`).
///
/// The locus gradient comes from the eliminant when there is one; otherwise
/// the tangent of the sampled branch through `pt` is estimated from the
/// neighbouring samples.
pub fn touching_check(
    fam: &Family,
    t0: f64,
    pt: (f64, f64),
    locus: &EnvelopeLocus,
    tol: f64,
) -> Result<bool, EnvelopeError> {
    let p = JetPoint::generic(&WeilAlgebra::first_order(2), vec![pt.0, pt.1, t0])?;
    let lifted = taylor_lift(fam.expr(), &p)?;
    if lifted.augmentation().abs() > tol {
        return Err(EnvelopeError::OffCurve("the family member"));
    }
    let g_member = [lifted.coeffs()[1], lifted.coeffs()[2]];
    let g_locus = match &locus.eliminant {
        Some(e) => {
            let at = [pt.0, pt.1, t0];
            if e.eval_f64(&at).abs() > tol {
                return Err(EnvelopeError::OffCurve("the envelope locus"));
            }
            [e.partial(0).eval_f64(&at), e.partial(1).eval_f64(&at)]
        }
        None => sampled_normal(&locus.samples, pt, tol)?,
    };
    let (n1, n2) = (g_member[0].hypot(g_member[1]), g_locus[0].hypot(g_locus[1]));
    if n1 <= tol || n2 <= tol {
        return Err(EnvelopeError::Singular);
    }
    let sine = (g_member[0] * g_locus[1] - g_member[1] * g_locus[0]).abs() / (n1 * n2);
    Ok(sine <= tol)
}

/// Normal of the sampled branch at the sample nearest `pt`, from the closest
/// samples at the adjacent grid parameters.
fn sampled_normal(samples: &[Sample], pt: (f64, f64), tol: f64) -> Result<[f64; 2], EnvelopeError> {
    let dist = |s: &Sample, q: (f64, f64)| (s.x - q.0).hypot(s.y - q.1);
    let here = samples
        .iter()
        .min_by(|a, b| dist(a, pt).total_cmp(&dist(b, pt)))
        .filter(|s| dist(s, pt) <= tol.sqrt())
        .ok_or(EnvelopeError::NoLocus)?;
    let neighbour = |before: bool| {
        let t = samples
            .iter()
            .map(|s| s.t)
            .filter(|&t| if before { t < here.t } else { t > here.t })
            .min_by(|a, b| (a - here.t).abs().total_cmp(&(b - here.t).abs()))?;
        samples
            .iter()
            .filter(|s| s.t == t)
            .min_by(|a, b| dist(a, (here.x, here.y)).total_cmp(&dist(b, (here.x, here.y))))
    };
    let (a, b) = match (neighbour(true), neighbour(false)) {
        (Some(a), Some(b)) => (a, b),
        (Some(a), None) => (a, here),
        (None, Some(b)) => (here, b),
        (None, None) => return Err(EnvelopeError::NoLocus),
    };
    Ok([-(b.y - a.y), b.x - a.x])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{envelope_eliminate, EnvelopeOptions, Sampling};

    fn locus(fam: &Family) -> EnvelopeLocus {
        envelope_eliminate(fam, &EnvelopeOptions::default()).unwrap()
    }

    #[test]
    fn parabola_tangents_touch() {
        let fam = Family::parse("y-2*t*x+t^2").unwrap();
        let l = locus(&fam);
        assert!(touching_check(&fam, 1.0, (1.0, 1.0), &l, TOUCH_TOLERANCE).unwrap());
        assert!(touching_check(&fam, -0.5, (-0.5, 0.25), &l, TOUCH_TOLERANCE).unwrap());
    }

    #[test]
    fn circles_touch_their_envelope() {
        let fam = Family::parse("(x-t)^2+y^2-1").unwrap();
        assert!(touching_check(&fam, 0.0, (0.0, 1.0), &locus(&fam), TOUCH_TOLERANCE).unwrap());
    }

    #[test]
    fn courant_origin_is_singular() {
        let fam = Family::parse("y-(x-t)^3").unwrap();
        assert_eq!(touching_check(&fam, 0.0, (0.0, 0.0), &locus(&fam), TOUCH_TOLERANCE), Err(EnvelopeError::Singular));
    }

    #[test]
    fn crossing_is_not_touching() {
        let fam = Family::parse("y-2*t*x+t^2").unwrap();
        assert!(matches!(
            touching_check(&fam, 2.0, (1.0, 3.0), &locus(&fam), TOUCH_TOLERANCE),
            Err(EnvelopeError::OffCurve(_))
        ));
        // the line y = x crosses y = x^2 at (1, 1) without touching it
        let lines = Family::parse("y - t*x").unwrap();
        let parabola = EnvelopeLocus {
            eliminant: Some(crate::algebra::parse_polynomial("y - x^2").unwrap()),
            ..Default::default()
        };
        assert!(!touching_check(&lines, 1.0, (1.0, 1.0), &parabola, TOUCH_TOLERANCE).unwrap());
    }

    #[test]
    fn sampled_locus_supports_touching() {
        let fam = Family::parse("(x-t)^2+y^2-1").unwrap();
        let opts = EnvelopeOptions { squarefree: false, sampling: Some(Sampling::range(-1.0, 1.0, 21)) };
        let mut l = envelope_eliminate(&fam, &opts).unwrap();
        l.eliminant = None;
        assert!(touching_check(&fam, 0.0, (0.0, -1.0), &l, 1e-9).unwrap());
    }
}
