use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{CombinatError, FiniteGroup, NeighbourSpace};

/// Infinitesimal parallelogram completion: for `x ~ y` and `x ~ z`, the point
/// `λ(x, y, z)` is where `z` is carried by transport along `x -> y`.
///
/// The table is partial; `λ(x, x, z) = z` and `λ(x, y, x) = y` are always
/// present, and reading any other missing entry is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConnection {
    space: Arc<NeighbourSpace>,
    table: HashMap<(usize, usize, usize), usize>,
}

/// The self-map of the monad of `x0` obtained by transport around a 2-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCurvature {
    /// `(z, z')` for each `z` in the monad of `x0`.
    pub map: BTreeMap<usize, usize>,
    pub bijective: bool,
    pub fixes_base: bool,
}

impl AffineCurvature {
    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(z, w)| z == w)
    }
}

impl AffineConnection {
    pub fn new(space: &Arc<NeighbourSpace>, entries: &HashMap<(usize, usize, usize), usize>) -> Result<Self, CombinatError> {
        let n = space.len();
        let mut table = HashMap::new();
        for x in space.points() {
            for y in space.monad(x) {
                table.insert((x, x, y), y);
                table.insert((x, y, x), y);
            }
        }
        for (&(x, y, z), &w) in entries {
            if let Some(&p) = [x, y, z, w].iter().find(|&&p| p >= n) {
                return Err(CombinatError::NoSuchPoint(p));
            }
            if !space.is_nbr(x, y) || !space.is_nbr(x, z) {
                return Err(CombinatError::NotSimplex(vec![x, y, z]));
            }
            if !space.is_nbr(w, y) || !space.is_nbr(w, z) {
                return Err(CombinatError::NotTransportable(format!(
                    "λ({x}, {y}, {z}) = {w} is not a neighbour of both {y} and {z}"
                )));
            }
            match table.get(&(x, y, z)) {
                Some(&old) if old != w => {
                    return Err(CombinatError::Normalization(format!("λ({x}, {y}, {z}) must be {old}")));
                }
                _ => {
                    table.insert((x, y, z), w);
                }
            }
        }
        Ok(AffineConnection { space: space.clone(), table })
    }

    /// The group acting on itself with every pair neighbours:
    /// `λ(x, y, z) = z x^-1 y`.
    pub fn translation_model(group: &FiniteGroup) -> Self {
        let space = Arc::new(NeighbourSpace::complete(group.order()));
        let mut entries = HashMap::new();
        for x in group.elements() {
            for y in group.elements() {
                for z in group.elements() {
                    entries.insert((x, y, z), group.product([z, group.inv(x), y]));
                }
            }
        }
        Self::new(&space, &entries).expect("translations satisfy the axioms")
    }

    pub fn space(&self) -> &Arc<NeighbourSpace> {
        &self.space
    }

    pub fn lambda(&self, x: usize, y: usize, z: usize) -> Result<usize, CombinatError> {
        self.table.get(&(x, y, z)).copied().ok_or_else(|| {
            CombinatError::NotTransportable(format!("λ({x}, {y}, {z}) is undefined"))
        })
    }

    /// `λ(x, y, z) = λ(x, z, y)` wherever both are defined, and one is
    /// defined exactly when the other is.
    pub fn is_symmetric(&self) -> bool {
        self.table.iter().all(|(&(x, y, z), &w)| self.table.get(&(x, z, y)) == Some(&w))
    }

    /// `z -> λ(x2, x0, λ(x1, x2, λ(x0, x1, z)))` on the monad of `x0`.
    pub fn curvature(&self, x0: usize, x1: usize, x2: usize) -> Result<AffineCurvature, CombinatError> {
        if !self.space.is_simplex(&[x0, x1, x2]) {
            return Err(CombinatError::NotSimplex(vec![x0, x1, x2]));
        }
        let monad = self.space.monad(x0);
        let mut map = BTreeMap::new();
        for &z in &monad {
            let z1 = self.lambda(x0, x1, z)?;
            let z2 = self.lambda(x1, x2, z1)?;
            let z3 = self.lambda(x2, x0, z2)?;
            if !self.space.is_nbr(x0, z3) {
                return Err(CombinatError::NotTransportable(format!("transport of {z} leaves the monad of {x0}")));
            }
            map.insert(z, z3);
        }
        let mut images: Vec<usize> = map.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        let bijective = images.len() == monad.len();
        let fixes_base = map.get(&x0) == Some(&x0);
        Ok(AffineCurvature { map, bijective, fixes_base })
    }

    /// Whether `subset` is closed under `λ`: `x, y, z` in it with `x ~ y` and
    /// `x ~ z` give `λ(x, y, z)` in it. Requires a symmetric connection.
    pub fn is_geodesic(&self, subset: &[usize]) -> Result<bool, CombinatError> {
        if !self.is_symmetric() {
            return Err(CombinatError::NotSymmetric);
        }
        for &x in subset {
            for &y in subset.iter().filter(|&&y| self.space.is_nbr(x, y)) {
                for &z in subset.iter().filter(|&&z| self.space.is_nbr(x, z)) {
                    if !subset.contains(&self.lambda(x, y, z)?) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// [`AffineConnection::curvature`] as a free function.
pub fn affine_curvature(lambda: &AffineConnection, x0: usize, x1: usize, x2: usize) -> Result<AffineCurvature, CombinatError> {
    lambda.curvature(x0, x1, x2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_model_is_flat() {
        for g in [FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)] {
            let lambda = AffineConnection::translation_model(&g);
            for s in lambda.space().simplices(2) {
                let r = lambda.curvature(s[0], s[1], s[2]).unwrap();
                assert!(r.is_identity() && r.bijective && r.fixes_base);
            }
        }
    }

    #[test]
    fn back_and_forth_is_identity() {
        let lambda = AffineConnection::translation_model(&FiniteGroup::symmetric(3));
        assert!(lambda.curvature(2, 4, 2).unwrap().is_identity());
    }

    #[test]
    fn nontrivial_circuit() {
        // transport along x -> y swaps x and y and fixes everything else
        let m = Arc::new(NeighbourSpace::complete(4));
        let swap = |x, y, z| if z == x { y } else if z == y { x } else { z };
        let mut e = HashMap::new();
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    e.insert((x, y, z), swap(x, y, z));
                }
            }
        }
        let lambda = AffineConnection::new(&m, &e).unwrap();
        let r = lambda.curvature(0, 1, 2).unwrap();
        assert_eq!(r.map, BTreeMap::from([(0, 0), (1, 2), (2, 1), (3, 3)]));
        assert!(r.bijective && r.fixes_base && !r.is_identity());
        e.remove(&(1, 2, 3));
        let partial = AffineConnection::new(&m, &e).unwrap();
        assert!(matches!(partial.curvature(0, 1, 2), Err(CombinatError::NotTransportable(_))));
    }

    #[test]
    fn geodesic_subsets() {
        let g = FiniteGroup::cyclic(6);
        let lambda = AffineConnection::translation_model(&g);
        let all: Vec<usize> = g.elements().collect();
        assert!(lambda.is_geodesic(&all).unwrap());
        assert!(lambda.is_geodesic(&[4]).unwrap());
        assert!(lambda.is_geodesic(&[0, 2, 4]).unwrap());
        assert!(lambda.is_geodesic(&[1, 3, 5]).unwrap());
        assert!(!lambda.is_geodesic(&[0, 1]).unwrap());
        let s3 = AffineConnection::translation_model(&FiniteGroup::symmetric(3));
        assert_eq!(s3.is_geodesic(&[0]), Err(CombinatError::NotSymmetric));
    }

    #[test]
    fn normalization_is_enforced() {
        let m = Arc::new(NeighbourSpace::complete(3));
        assert!(AffineConnection::new(&m, &HashMap::from([((0, 0, 1), 2)])).is_err());
        let path = Arc::new(NeighbourSpace::path(3));
        assert!(AffineConnection::new(&path, &HashMap::from([((1, 0, 2), 1)])).is_ok());
        assert!(AffineConnection::new(&path, &HashMap::from([((1, 0, 2), 2)])).is_err());
    }
}
