use std::collections::HashMap;
use std::sync::Arc;

use super::{AffineConnection, CombinatError, NeighbourSpace};

/// A bundle `π: E -> M` over a neighbour space with transport maps
/// `∇(x, y): E_x -> E_y` for `x ~ y`.
///
/// `∇(x, x)` is the identity and `∇(y, x)` inverts `∇(x, y)`; both are
/// checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleConnection {
    base: Arc<NeighbourSpace>,
    proj: Vec<usize>,
    names: Vec<String>,
    table: HashMap<(usize, usize, usize), usize>,
}

impl BundleConnection {
    /// `proj[e]` is the base point under `e`; `entries[(x, y, e)]` is
    /// `∇(x, y)(e)`. Identity transports may be omitted, and so may one
    /// direction of each pair when the other is a bijection of fibers.
    pub fn new(
        base: &Arc<NeighbourSpace>,
        proj: Vec<usize>,
        names: Option<Vec<String>>,
        entries: &HashMap<(usize, usize, usize), usize>,
    ) -> Result<Self, CombinatError> {
        let m = base.len();
        if let Some(&p) = proj.iter().find(|&&p| p >= m) {
            return Err(CombinatError::NoSuchPoint(p));
        }
        let size = proj.len();
        let names = match names {
            Some(v) if v.len() == size => v,
            Some(v) => return Err(CombinatError::Shape(format!("{} names for {size} elements", v.len()))),
            None => (0..size).map(|e| e.to_string()).collect(),
        };
        let mut table = HashMap::new();
        for (e, &x) in proj.iter().enumerate() {
            table.insert((x, x, e), e);
        }
        for (&(x, y, e), &f) in entries {
            if e >= size || f >= size {
                return Err(CombinatError::Shape(format!("no element {}", e.max(f))));
            }
            if x >= m || y >= m {
                return Err(CombinatError::NoSuchPoint(x.max(y)));
            }
            if !base.is_nbr(x, y) {
                return Err(CombinatError::NotSimplex(vec![x, y]));
            }
            if proj[e] != x {
                return Err(CombinatError::WrongFiber { element: e, point: x });
            }
            if proj[f] != y {
                return Err(CombinatError::WrongFiber { element: f, point: y });
            }
            if x == y && e != f {
                return Err(CombinatError::Normalization(format!("∇({x}, {x}) moves {}", names[e])));
            }
            table.insert((x, y, e), f);
        }
        let fiber = |x: usize| -> Vec<usize> { (0..size).filter(|&e| proj[e] == x).collect() };
        // fill a missing direction from the reverse one
        for x in base.points() {
            for y in base.monad(x) {
                let missing: Vec<usize> = fiber(x).into_iter().filter(|&e| !table.contains_key(&(x, y, e))).collect();
                for e in missing {
                    let back: Vec<usize> = fiber(y).into_iter().filter(|&f| table.get(&(y, x, f)) == Some(&e)).collect();
                    match back.as_slice() {
                        [f] => {
                            table.insert((x, y, e), *f);
                        }
                        _ => {
                            return Err(CombinatError::NotTransportable(format!(
                                "∇({x}, {y}) is undefined on {}",
                                names[e]
                            )))
                        }
                    }
                }
            }
        }
        for x in base.points() {
            for y in base.monad(x) {
                for e in fiber(x) {
                    let f = table[&(x, y, e)];
                    if table.get(&(y, x, f)) != Some(&e) {
                        return Err(CombinatError::Normalization(format!(
                            "∇({y}, {x}) does not undo ∇({x}, {y}) on {}",
                            names[e]
                        )));
                    }
                }
            }
        }
        Ok(BundleConnection { base: base.clone(), proj, names, table })
    }

    /// The bundle `M_(1) -> M`, `(x, z) -> x`, with `∇(x, y)(x, z) = (y, λ(x, y, z))`.
    /// The element over `x` for `z` is named `"x,z"`.
    pub fn from_affine(lambda: &AffineConnection) -> Result<Self, CombinatError> {
        let base = lambda.space();
        let pairs: Vec<(usize, usize)> = base.points().flat_map(|x| base.monad(x).into_iter().map(move |z| (x, z))).collect();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut entries = HashMap::new();
        for &(x, z) in &pairs {
            for y in base.monad(x) {
                let w = lambda.lambda(x, y, z)?;
                let f = index.get(&(y, w)).ok_or_else(|| {
                    CombinatError::NotTransportable(format!("λ({x}, {y}, {z}) = {w} is not a neighbour of {y}"))
                })?;
                entries.insert((x, y, index[&(x, z)]), *f);
            }
        }
        let names = pairs.iter().map(|&(x, z)| format!("{},{}", base.name(x), base.name(z))).collect();
        Self::new(base, pairs.iter().map(|p| p.0).collect(), Some(names), &entries)
    }

    pub fn base(&self) -> &Arc<NeighbourSpace> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.proj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proj.is_empty()
    }

    pub fn projection(&self, e: usize) -> usize {
        self.proj[e]
    }

    pub fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.proj[e] == x).collect()
    }

    pub fn element_name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name.trim())
    }

    /// `∇(x, y)(e)`.
    pub fn transport(&self, x: usize, y: usize, e: usize) -> Result<usize, CombinatError> {
        if x >= self.base.len() || y >= self.base.len() {
            return Err(CombinatError::NoSuchPoint(x.max(y)));
        }
        if !self.base.is_nbr(x, y) {
            return Err(CombinatError::NotSimplex(vec![x, y]));
        }
        if self.proj.get(e) != Some(&x) {
            return Err(CombinatError::WrongFiber { element: e, point: x });
        }
        Ok(self.table[&(x, y, e)])
    }
}

/// [`BundleConnection::transport`] as a free function.
pub fn bundle_transport(conn: &BundleConnection, x: usize, y: usize, e: usize) -> Result<usize, CombinatError> {
    conn.transport(x, y, e)
}
