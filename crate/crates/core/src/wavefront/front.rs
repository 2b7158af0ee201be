use std::io::{Read, Write};

use super::geometry::UNIT_TOLERANCE;
use super::{Orientation, Point2, Sphere, WavefrontError};

/// A polyline with a unit normal at each vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedFront {
    vertices: Vec<Point2>,
    normals: Vec<Point2>,
    closed: bool,
}

/// The result of offsetting a front.
#[derive(Clone, Debug, PartialEq)]
pub struct Offset {
    pub front: OrientedFront,
    /// Start vertices of the segments whose direction reversed.
    pub cusps: Vec<usize>,
}

impl Offset {
    pub fn has_cusps(&self) -> bool {
        !self.cusps.is_empty()
    }
}

impl OrientedFront {
    /// Normals must be unit within [`UNIT_TOLERANCE`] and consecutive
    /// vertices distinct (last and first too, when `closed`).
    pub fn new(vertices: Vec<Point2>, normals: Vec<Point2>, closed: bool) -> Result<Self, WavefrontError> {
        if vertices.len() != normals.len() {
            return Err(WavefrontError::Shape(format!("{} vertices but {} normals", vertices.len(), normals.len())));
        }
        if vertices.iter().chain(&normals).any(|p| !p.is_finite()) {
            return Err(WavefrontError::NonFinite);
        }
        if let Some(n) = normals.iter().map(|n| n.norm()).find(|n| (n - 1.0).abs() > UNIT_TOLERANCE) {
            return Err(WavefrontError::NotUnit(n));
        }
        let front = OrientedFront { vertices, normals, closed };
        if let Some(i) = front.segments().find(|&(i, j)| front.vertices[i] == front.vertices[j]).map(|(i, _)| i) {
            return Err(WavefrontError::Shape(format!("vertex {i} repeats its successor")));
        }
        Ok(front)
    }

    /// A regular `n`-gon inscribed in `sphere`, normals pointing outward.
    pub fn circle(sphere: &Sphere, n: usize) -> Result<Self, WavefrontError> {
        if n < 3 {
            return Err(WavefrontError::Shape(format!("a closed front needs 3 vertices, got {n}")));
        }
        let step = std::f64::consts::TAU / n as f64;
        let normals: Vec<Point2> = (0..n).map(|i| Point2::new((i as f64 * step).cos(), (i as f64 * step).sin())).collect();
        let vertices = normals.iter().map(|&u| sphere.center() + u * sphere.radius()).collect();
        Self::new(vertices, normals, true)
    }

    /// The ellipse `(a cos t, b sin t)` sampled at `n` equally spaced
    /// parameters, normals pointing outward.
    pub fn ellipse(a: f64, b: f64, n: usize) -> Result<Self, WavefrontError> {
        if !(a > 0.0 && b > 0.0) {
            return Err(WavefrontError::NonPositive(a.min(b)));
        }
        if n < 3 {
            return Err(WavefrontError::Shape(format!("a closed front needs 3 vertices, got {n}")));
        }
        let step = std::f64::consts::TAU / n as f64;
        let (mut vertices, mut normals) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for i in 0..n {
            let t = i as f64 * step;
            vertices.push(Point2::new(a * t.cos(), b * t.sin()));
            normals.push(Point2::new(b * t.cos(), a * t.sin()).normalized()?);
        }
        Self::new(vertices, normals, true)
    }

    /// The open segment from `a` to `b` in `n` pieces with the left normal
    /// throughout.
    pub fn segment(a: Point2, b: Point2, n: usize) -> Result<Self, WavefrontError> {
        let normal = (b - a).perp().normalized()?;
        let n = n.max(1);
        let vertices = (0..=n).map(|i| a + (b - a) * (i as f64 / n as f64)).collect();
        Self::new(vertices, vec![normal; n + 1], false)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn normals(&self) -> &[Point2] {
        &self.normals
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Index pairs of consecutive vertices.
    pub fn segments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        let count = if self.closed && n > 1 { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (i, (i + 1) % n))
    }

    /// Parses rows `x,y,nx,ny`, with an optional header row. Normals not
    /// already unit are rescaled, so rounded decimals are accepted.
    pub fn read_csv(reader: impl Read, closed: bool) -> Result<Self, WavefrontError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
        let (mut vertices, mut normals) = (Vec::new(), Vec::new());
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| WavefrontError::Parse(e.to_string()))?;
            if record.len() != 4 {
                return Err(WavefrontError::Parse(format!("row {}: expected x,y,nx,ny", line + 1)));
            }
            let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
            let v = match parsed {
                Ok(v) => v,
                Err(_) if line == 0 => continue,
                Err(e) => return Err(WavefrontError::Parse(format!("row {}: {e}", line + 1))),
            };
            vertices.push(Point2::new(v[0], v[1]));
            let n = Point2::new(v[2], v[3]);
            normals.push(if (n.norm() - 1.0).abs() <= UNIT_TOLERANCE { n } else { n.normalized()? });
        }
        Self::new(vertices, normals, closed)
    }

    /// Writes `x,y,nx,ny` with a header row.
    pub fn write_csv(&self, writer: impl Write) -> Result<(), WavefrontError> {
        let mut w = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| WavefrontError::Parse(e.to_string());
        w.write_record(["x", "y", "nx", "ny"]).map_err(io)?;
        for (v, n) in self.vertices.iter().zip(&self.normals) {
            w.write_record([v.x, v.y, n.x, n.y].map(|c| c.to_string())).map_err(io)?;
        }
        w.flush().map_err(|e| WavefrontError::Parse(e.to_string()))
    }
}

/// Moves each vertex by `s` along its oriented normal, carrying normals
/// over. A segment whose offset image points against the original
/// (`d' . d <= tol |d|^2`) is reported as a cusp.
pub fn offset_front(front: &OrientedFront, s: f64, orientation: Orientation, tol: f64) -> Result<Offset, WavefrontError> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(WavefrontError::NonPositive(s));
    }
    let k = s * orientation.sign();
    let vertices: Vec<Point2> = front.vertices.iter().zip(&front.normals).map(|(&v, &n)| v + n * k).collect();
    let cusps = front
        .segments()
        .filter(|&(i, j)| {
            let d = front.vertices[j] - front.vertices[i];
            let e = vertices[j] - vertices[i];
            e.dot(d) <= tol * d.dot(d)
        })
        .map(|(i, _)| i)
        .collect();
    let front = OrientedFront { vertices, normals: front.normals.clone(), closed: front.closed };
    Ok(Offset { front, cusps })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn circle_offsets() {
        let c = Sphere::new(Point2::ORIGIN, 2.0).unwrap();
        let front = OrientedFront::circle(&c, 256).unwrap();
        let out = offset_front(&front, 0.5, Orientation::Outer, TOL).unwrap();
        assert!(!out.has_cusps());
        assert!(out.front.vertices().iter().all(|v| (v.norm() - 2.5).abs() <= 1e-9));
        let inward = offset_front(&front, 0.5, Orientation::Inner, TOL).unwrap();
        assert!(inward.front.vertices().iter().all(|v| (v.norm() - 1.5).abs() <= 1e-9));
        // past the center every segment turns around
        let through = offset_front(&front, 3.0, Orientation::Inner, TOL).unwrap();
        assert_eq!(through.cusps.len(), 256);
    }

    #[test]
    fn segment_translates() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(3.0, 4.0);
        let front = OrientedFront::segment(a, b, 5).unwrap();
        let out = offset_front(&front, 2.0, Orientation::Outer, TOL).unwrap();
        let shift = Point2::new(-4.0, 3.0) * (2.0 / 5.0);
        for (v, w) in front.vertices().iter().zip(out.front.vertices()) {
            assert!((*w - *v - shift).norm() < 1e-12);
        }
        assert_eq!(front.segments().count(), 5);
    }

    #[test]
    fn csv_round_trip() {
        let front = OrientedFront::ellipse(2.0, 1.0, 12).unwrap();
        let mut buf = Vec::new();
        front.write_csv(&mut buf).unwrap();
        let back = OrientedFront::read_csv(buf.as_slice(), true).unwrap();
        assert_eq!(back, front);
        assert!(OrientedFront::read_csv("1,2,3\n".as_bytes(), false).is_err());
        let rounded = OrientedFront::read_csv("0,0,0.6,0.8\n1,0,0.60000001,0.8\n".as_bytes(), false).unwrap();
        assert!((rounded.normals()[1].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invariants_checked() {
        let p = Point2::new(1.0, 0.0);
        assert!(OrientedFront::new(vec![p, p], vec![p, p], false).is_err());
        assert!(OrientedFront::new(vec![p], vec![Point2::new(2.0, 0.0)], false).is_err());
        assert!(OrientedFront::new(vec![p], vec![], false).is_err());
    }
}
