use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::WavefrontError;

/// Unit normals are accepted when their length is within this of 1.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// A point, or a vector, of the Euclidean plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// The z-component of the 3-d cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// Rotation by a quarter turn counterclockwise.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Result<Point2, WavefrontError> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Ok(self * (1.0 / n))
        } else {
            Err(WavefrontError::NotUnit(n))
        }
    }

    fn require_finite(self) -> Result<Point2, WavefrontError> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(WavefrontError::NonFinite)
        }
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The circle of points at distance `radius` from `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sphere {
    center: Point2,
    radius: f64,
}

impl Sphere {
    pub fn new(center: Point2, radius: f64) -> Result<Self, WavefrontError> {
        center.require_finite()?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(WavefrontError::NonPositive(radius));
        }
        Ok(Sphere { center, radius })
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The point at angle `theta` from the positive x-axis.
    pub fn point_at(&self, theta: f64) -> Point2 {
        self.center + Point2::new(theta.cos(), theta.sin()) * self.radius
    }

    /// The circle through three points.
    pub fn circumcircle(a: Point2, b: Point2, c: Point2) -> Result<Self, WavefrontError> {
        let (ab, ac) = (b - a, c - a);
        let d = 2.0 * ab.cross(ac);
        let scale = ab.norm().max(ac.norm());
        if d.abs() <= f64::EPSILON * scale * scale {
            return Err(WavefrontError::Degenerate("the points are collinear".into()));
        }
        let (p, q) = (ab.dot(ab), ac.dot(ac));
        let offset = Point2::new(ac.y * p - ab.y * q, ab.x * q - ac.x * p) * (1.0 / d);
        Sphere::new(a + offset, offset.norm())
    }

    /// Least-squares circle through three or more points: solves
    /// `x^2 + y^2 + Dx + Ey + F = 0` about the centroid.
    pub fn fit(points: &[Point2]) -> Result<Self, WavefrontError> {
        if points.len() < 3 {
            return Err(WavefrontError::Degenerate(format!("{} points do not determine a circle", points.len())));
        }
        let k = 1.0 / points.len() as f64;
        let mean = points.iter().fold(Point2::ORIGIN, |acc, &p| acc + p) * k;
        let mut m = [[0.0; 3]; 3];
        let mut rhs = [0.0; 3];
        for &p in points {
            let q = p - mean;
            let row = [q.x, q.y, 1.0];
            let r = -q.dot(q);
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] += row[i] * row[j];
                }
                rhs[i] += row[i] * r;
            }
        }
        let [d, e, f] = solve3(m, rhs).ok_or_else(|| WavefrontError::Degenerate("the points are collinear".into()))?;
        let center = Point2::new(-d / 2.0, -e / 2.0);
        let r2 = center.dot(center) - f;
        if !(r2 > 0.0) {
            return Err(WavefrontError::Degenerate("no real circle fits the points".into()));
        }
        Sphere::new(mean + center, r2.sqrt())
    }
}

/// Gaussian elimination with partial pivoting.
fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    let scale = m.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / m[row][row];
    }
    Some(x)
}

/// Which side of a contact element counts as outside.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Orientation {
    #[default]
    Outer,
    Inner,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Outer => 1.0,
            Orientation::Inner => -1.0,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Outer => "outer",
            Orientation::Inner => "inner",
        })
    }
}

impl std::str::FromStr for Orientation {
    type Err = WavefrontError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "outer" | "out" | "+1" | "1" => Ok(Orientation::Outer),
            "inner" | "in" | "-1" => Ok(Orientation::Inner),
            other => Err(WavefrontError::Parse(format!("unknown orientation {other:?}"))),
        }
    }
}

/// A focus with a unit normal line through it, and a choice of side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContactElement {
    focus: Point2,
    normal: Point2,
    orientation: Orientation,
}

impl ContactElement {
    /// `normal` must have length 1 within [`UNIT_TOLERANCE`].
    pub fn new(focus: Point2, normal: Point2, orientation: Orientation) -> Result<Self, WavefrontError> {
        focus.require_finite()?;
        normal.require_finite()?;
        let n = normal.norm();
        if (n - 1.0).abs() > UNIT_TOLERANCE {
            return Err(WavefrontError::NotUnit(n));
        }
        Ok(ContactElement { focus, normal, orientation })
    }

    /// Normalizes `direction` first.
    pub fn from_direction(focus: Point2, direction: Point2, orientation: Orientation) -> Result<Self, WavefrontError> {
        Self::new(focus, direction.normalized()?, orientation)
    }

    pub fn focus(&self) -> Point2 {
        self.focus
    }

    pub fn normal(&self) -> Point2 {
        self.normal
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
}

fn check_tol(tol: f64) -> Result<(), WavefrontError> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(WavefrontError::Parse(format!("invalid tolerance {tol}")))
    }
}

/// The common point of two spheres that touch externally.
pub fn external_touch_point(a: &Sphere, c: &Sphere, tol: f64) -> Result<Point2, WavefrontError> {
    check_tol(tol)?;
    let d = a.center.dist(c.center);
    if (a.radius + c.radius - d).abs() > tol || d == 0.0 {
        return Err(WavefrontError::NotTouching);
    }
    // from the larger sphere's side so swapping the arguments gives the same point
    let (p, q) = if (a.radius, a.center.x, a.center.y) >= (c.radius, c.center.x, c.center.y) { (a, c) } else { (c, a) };
    let t = p.radius / (p.radius + q.radius);
    Ok(p.center + (q.center - p.center) * t)
}

/// For externally touching spheres `S(a, r)` and `S(c, s)` with contact
/// point `b`, any `b'` on `S(a, r)` has `|b'c - bc| <= C |b' - b|^2` with
/// `C = (r + s) / (2 r s)`. Returns `C`.
pub fn external_touch_constant(a: &Sphere, c: &Sphere) -> f64 {
    (a.radius + c.radius) / (2.0 * a.radius * c.radius)
}

/// The point `c` beyond `b` on the ray from `a` with `bc = s`, where
/// `S(a, ab + s)` and `S(b, s)` touch.
pub fn internal_touch_point(a: Point2, b: Point2, s: f64) -> Result<Point2, WavefrontError> {
    a.require_finite()?;
    b.require_finite()?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(WavefrontError::NonPositive(s));
    }
    let d = b.dist(a);
    if d == 0.0 {
        return Err(WavefrontError::Coincident);
    }
    Ok(b + (b - a) * (s / d))
}

/// Whether `c` lies on the normal line of `p`: its distance from that line
/// is at most `tol`.
pub fn perpendicular_check(c: Point2, p: &ContactElement, tol: f64) -> Result<bool, WavefrontError> {
    check_tol(tol)?;
    let v = c - p.focus;
    if v.norm() <= tol {
        return Err(WavefrontError::Coincident);
    }
    Ok(v.cross(p.normal).abs() <= tol)
}

/// The point at distance `s` from the focus along the oriented normal.
pub fn ray_point(p: &ContactElement, s: f64) -> Result<Point2, WavefrontError> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(WavefrontError::NonPositive(s));
    }
    Ok(p.focus + p.normal * (s * p.orientation.sign()))
}

/// `|ab + bc - ac| <= tol`.
pub fn collinearity_check(a: Point2, b: Point2, c: Point2, tol: f64) -> Result<bool, WavefrontError> {
    check_tol(tol)?;
    let (ab, bc, ac) = (a.dist(b), b.dist(c), a.dist(c));
    if ab <= tol || bc <= tol || ac <= tol {
        return Err(WavefrontError::Coincident);
    }
    Ok((ab + bc - ac).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn external_touch() {
        let a = Sphere::new(p(0.0, 0.0), 1.0).unwrap();
        let c = Sphere::new(p(3.0, 0.0), 2.0).unwrap();
        let b = external_touch_point(&a, &c, TOL).unwrap();
        assert!(b.dist(p(1.0, 0.0)) < 1e-15);
        assert_eq!(external_touch_point(&c, &a, TOL).unwrap(), b);
        assert!((a.center().dist(b) + b.dist(c.center()) - a.center().dist(c.center())).abs() <= TOL);
        let far = Sphere::new(p(4.0, 0.0), 2.0).unwrap();
        assert_eq!(external_touch_point(&a, &far, TOL), Err(WavefrontError::NotTouching));
    }

    #[test]
    fn touch_is_second_order() {
        let a = Sphere::new(p(0.5, -1.0), 1.5).unwrap();
        let dir = p(0.6, 0.8);
        let c = Sphere::new(a.center() + dir * 2.0, 0.5).unwrap();
        let b = external_touch_point(&a, &c, TOL).unwrap();
        let k = external_touch_constant(&a, &c);
        let theta0 = dir.y.atan2(dir.x);
        for i in 1..50 {
            let bp = a.point_at(theta0 + 1e-3 * i as f64);
            let lhs = (bp.dist(c.center()) - b.dist(c.center())).abs();
            assert!(lhs <= k * bp.dist(b).powi(2) + 1e-12);
        }
    }

    #[test]
    fn internal_touch() {
        let c = internal_touch_point(p(0.0, 0.0), p(1.0, 0.0), 2.0).unwrap();
        assert_eq!(c, p(3.0, 0.0));
        let near = internal_touch_point(p(0.0, 0.0), p(1.0, 0.0), 1e-9).unwrap();
        assert!(near.dist(p(1.0, 0.0)) <= 2e-9);
        let c = internal_touch_point(p(-1.0, 2.0), p(0.5, 0.1), 0.7).unwrap();
        assert!(collinearity_check(p(-1.0, 2.0), p(0.5, 0.1), c, TOL).unwrap());
        assert_eq!(internal_touch_point(p(1.0, 1.0), p(1.0, 1.0), 1.0), Err(WavefrontError::Coincident));
    }

    #[test]
    fn perpendicularity() {
        let e = ContactElement::new(p(0.0, 0.0), p(0.0, 1.0), Orientation::Outer).unwrap();
        assert!(perpendicular_check(p(0.0, 3.0), &e, TOL).unwrap());
        assert!(!perpendicular_check(p(1.0, 0.0), &e, TOL).unwrap());
        assert!(perpendicular_check(p(1e-6, 1e-3), &e, 1e-4).unwrap());
        assert_eq!(perpendicular_check(p(0.0, 0.0), &e, TOL), Err(WavefrontError::Coincident));
    }

    #[test]
    fn rays() {
        let e = ContactElement::new(p(0.0, 0.0), p(1.0, 0.0), Orientation::Outer).unwrap();
        assert_eq!(ray_point(&e, 2.0).unwrap(), p(2.0, 0.0));
        let inner = ContactElement::new(p(0.0, 0.0), p(1.0, 0.0), Orientation::Inner).unwrap();
        assert_eq!(ray_point(&inner, 2.0).unwrap(), p(-2.0, 0.0));
        assert!(ray_point(&e, 0.0).is_err());
        let f = ContactElement::from_direction(p(1.0, -2.0), p(3.0, 4.0), Orientation::Outer).unwrap();
        let [a, b, c] = [1.0, 2.0, 3.0].map(|s| ray_point(&f, s).unwrap());
        assert!((f.focus().dist(c) - 3.0).abs() <= 1e-12);
        assert!(collinearity_check(a, b, c, TOL).unwrap());
    }

    #[test]
    fn collinearity() {
        assert!(collinearity_check(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), TOL).unwrap());
        assert!(!collinearity_check(p(0.0, 0.0), p(0.0, 1.0), p(1.0, 0.0), TOL).unwrap());
        assert!(collinearity_check(p(0.0, 0.0), p(0.0, 0.0), p(1.0, 0.0), TOL).is_err());
    }

    #[test]
    fn sphere_reconstruction() {
        let s = Sphere::new(p(2.0, -3.0), 0.75).unwrap();
        let pts: Vec<Point2> = [0.1, 1.7, 4.0].iter().map(|&t| s.point_at(t)).collect();
        let c = Sphere::circumcircle(pts[0], pts[1], pts[2]).unwrap();
        assert!(c.center().dist(s.center()) < 1e-12 && (c.radius() - s.radius()).abs() < 1e-12);
        let many: Vec<Point2> = (0..17).map(|i| s.point_at(0.3 * i as f64)).collect();
        let f = Sphere::fit(&many).unwrap();
        assert!(f.center().dist(s.center()) < 1e-9 && (f.radius() - s.radius()).abs() < 1e-9);
        assert!(Sphere::circumcircle(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)).is_err());
        assert!(Sphere::new(p(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn unit_normals_are_enforced() {
        assert!(ContactElement::new(p(0.0, 0.0), p(1.0, 1e-5), Orientation::Outer).is_err());
        assert!("inner".parse::<Orientation>().unwrap() == Orientation::Inner);
    }
}
