use std::collections::HashMap;
use std::sync::Arc;

use super::{CombinatError, FiniteGroup, NeighbourSpace};

/// Arrows a connection can take values in. Composition is written left to
/// right: `compose(a, b)` is "first `a`, then `b`".
pub trait Arrows {
    fn arrow_count(&self) -> usize;
    /// Identity arrow at a point.
    fn identity_at(&self, x: usize) -> usize;
    fn compose(&self, a: usize, b: usize) -> Option<usize>;
    fn inverse(&self, a: usize) -> usize;
    /// Whether `a` can serve as an arrow from `x` to `y`.
    fn connects(&self, a: usize, x: usize, y: usize) -> bool;
    fn arrow_name(&self, a: usize) -> String;
}

/// All vertex groups identified with one group.
impl Arrows for FiniteGroup {
    fn arrow_count(&self) -> usize {
        self.order()
    }
    fn identity_at(&self, _: usize) -> usize {
        self.identity()
    }
    fn compose(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.mul(a, b))
    }
    fn inverse(&self, a: usize) -> usize {
        self.inv(a)
    }
    fn connects(&self, a: usize, _: usize, _: usize) -> bool {
        a < self.order()
    }
    fn arrow_name(&self, a: usize) -> String {
        self.element_name(a).to_string()
    }
}

/// A finite groupoid: arrows with source and target objects and a partial
/// composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    ends: Vec<(usize, usize)>,
    table: Vec<Vec<Option<usize>>>,
    identities: Vec<usize>,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroupoid {
    /// Validates and builds a groupoid from arrow ends `(source, target)` and
    /// a composition table defined exactly on composable pairs.
    pub fn new(objects: usize, ends: Vec<(usize, usize)>, table: Vec<Vec<Option<usize>>>, names: Option<Vec<String>>) -> Result<Self, CombinatError> {
        let n = ends.len();
        let bad = |m: String| CombinatError::NotAGroup(m);
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(bad(format!("composition table is not {n}x{n}")));
        }
        for a in 0..n {
            for b in 0..n {
                let composable = ends[a].1 == ends[b].0;
                match table[a][b] {
                    Some(c) if composable && c < n && ends[c] == (ends[a].0, ends[b].1) => {}
                    None if !composable => {}
                    _ => return Err(bad(format!("bad composite of arrows {a} and {b}"))),
                }
            }
        }
        let identities = (0..objects)
            .map(|x| {
                (0..n)
                    .find(|&e| {
                        ends[e] == (x, x)
                            && (0..n).all(|a| (ends[a].0 != x || table[e][a] == Some(a)) && (ends[a].1 != x || table[a][e] == Some(a)))
                    })
                    .ok_or_else(|| bad(format!("object {x} has no identity")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let inverse = (0..n)
            .map(|a| {
                let (s, t) = ends[a];
                (0..n)
                    .find(|&b| table[a][b] == Some(identities[s]) && table[b][a] == Some(identities[t]))
                    .ok_or_else(|| bad(format!("arrow {a} has no inverse")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = table[a][b].and_then(|ab| table[ab][c]);
                    let right = table[b][c].and_then(|bc| table[a][bc]);
                    if left != right {
                        return Err(bad(format!("composition of {a}, {b}, {c} is not associative")));
                    }
                }
            }
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        Ok(FiniteGroupoid { ends, table, identities, inverse, names })
    }

    /// `objects x G x objects`, arrows `(x, g, y)` composing as
    /// `(x, g, y)(y, h, z) = (x, gh, z)`.
    pub fn from_group(group: &FiniteGroup, objects: usize) -> Self {
        let k = group.order();
        let code = |x: usize, g: usize, y: usize| (x * k + g) * objects + y;
        let n = objects * k * objects;
        let mut ends = vec![(0, 0); n];
        let mut names = vec![String::new(); n];
        for x in 0..objects {
            for g in 0..k {
                for y in 0..objects {
                    ends[code(x, g, y)] = (x, y);
                    names[code(x, g, y)] = format!("{x}:{}:{y}", group.element_name(g));
                }
            }
        }
        let table = (0..n)
            .map(|a| {
                let (x, g, y) = (a / objects / k, a / objects % k, a % objects);
                (0..n)
                    .map(|b| {
                        let (y2, h, z) = (b / objects / k, b / objects % k, b % objects);
                        (y == y2).then(|| code(x, group.mul(g, h), z))
                    })
                    .collect()
            })
            .collect();
        Self::new(objects, ends, table, Some(names)).expect("product groupoid")
    }

    pub fn ends(&self, a: usize) -> (usize, usize) {
        self.ends[a]
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name.trim())
    }
}

impl Arrows for FiniteGroupoid {
    fn arrow_count(&self) -> usize {
        self.ends.len()
    }
    fn identity_at(&self, x: usize) -> usize {
        self.identities[x]
    }
    fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }
    fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
    fn connects(&self, a: usize, x: usize, y: usize) -> bool {
        self.ends.get(a) == Some(&(x, y))
    }
    fn arrow_name(&self, a: usize) -> String {
        self.names[a].clone()
    }
}

/// An arrow `∇(x, y): x -> y` for each pair of neighbours, with
/// `∇(x, x) = id` and `∇(y, x) = ∇(x, y)^-1`.
#[derive(Clone, Debug)]
pub struct GroupoidConnection<A: Arrows> {
    space: Arc<NeighbourSpace>,
    arrows: Arc<A>,
    values: Vec<Option<usize>>,
}

impl<A: Arrows> GroupoidConnection<A> {
    /// Values on some ordered pairs; the rest follow from the identity and
    /// inverse laws, or default to identities (vertex-group model only).
    pub fn new(space: &Arc<NeighbourSpace>, arrows: &Arc<A>, given: &HashMap<(usize, usize), usize>) -> Result<Self, CombinatError> {
        let n = space.len();
        let mut values = vec![None; n * n];
        for x in space.points() {
            values[x * n + x] = Some(arrows.identity_at(x));
        }
        for (&(x, y), &a) in given {
            if x >= n || y >= n {
                return Err(CombinatError::NoSuchPoint(x.max(y)));
            }
            if !space.is_nbr(x, y) {
                return Err(CombinatError::NotSimplex(vec![x, y]));
            }
            if a >= arrows.arrow_count() || !arrows.connects(a, x, y) {
                return Err(CombinatError::Normalization(format!("arrow {} does not go from {x} to {y}", arrows.arrow_name(a))));
            }
            for (i, v) in [(x * n + y, a), (y * n + x, arrows.inverse(a))] {
                match values[i] {
                    Some(old) if old != v => {
                        return Err(CombinatError::Normalization(format!("conflicting values on ({x}, {y})")));
                    }
                    _ => values[i] = Some(v),
                }
            }
        }
        for (x, y) in space.edges() {
            if values[x * n + y].is_none() {
                let id = arrows.identity_at(x);
                if !arrows.connects(id, x, y) {
                    return Err(CombinatError::Normalization(format!("no value given on ({x}, {y})")));
                }
                values[x * n + y] = Some(id);
                values[y * n + x] = Some(arrows.inverse(id));
            }
        }
        Ok(GroupoidConnection { space: space.clone(), arrows: arrows.clone(), values })
    }

    /// Takes `f(x, y)` for neighbours `x < y`.
    pub fn from_fn(space: &Arc<NeighbourSpace>, arrows: &Arc<A>, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self, CombinatError> {
        let given: HashMap<_, _> = space.edges().into_iter().map(|(x, y)| ((x, y), f(x, y))).collect();
        Self::new(space, arrows, &given)
    }

    pub fn space(&self) -> &Arc<NeighbourSpace> {
        &self.space
    }

    pub fn arrows(&self) -> &Arc<A> {
        &self.arrows
    }

    /// `∇(x, y)`, `None` unless `x ~ y`.
    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.space.len();
        (x < n && y < n).then(|| self.values[x * n + y]).flatten()
    }

    fn chain(&self, arrows: &[usize]) -> usize {
        arrows[1..]
            .iter()
            .fold(arrows[0], |acc, &a| self.arrows.compose(acc, a).expect("composable by construction"))
    }

    fn simplex<const K: usize>(&self, pts: [usize; K]) -> Result<(), CombinatError> {
        if self.space.is_simplex(&pts) {
            Ok(())
        } else {
            Err(CombinatError::NotSimplex(pts.to_vec()))
        }
    }

    /// `R(x, y, z) = ∇(x, y) ∇(y, z) ∇(z, x)`, an arrow from `x` to itself.
    pub fn curvature(&self, x: usize, y: usize, z: usize) -> Result<usize, CombinatError> {
        self.simplex([x, y, z])?;
        Ok(self.curv(x, y, z))
    }

    fn curv(&self, x: usize, y: usize, z: usize) -> usize {
        let v = |a, b| self.get(a, b).expect("neighbours");
        self.chain(&[v(x, y), v(y, z), v(z, x)])
    }

    /// Evaluates `R(y,z,u)^∇(y,x) R(x,y,u) R(x,u,z) R(x,z,y)`, with
    /// `g^h = h^-1 g h`, and reports whether it is the identity at `x`.
    pub fn bianchi_check(&self, x: usize, y: usize, z: usize, u: usize) -> Result<bool, CombinatError> {
        self.simplex([x, y, z, u])?;
        Ok(self.bianchi_value(x, y, z, u) == self.arrows.identity_at(x))
    }

    fn bianchi_value(&self, x: usize, y: usize, z: usize, u: usize) -> usize {
        let h = self.get(y, x).expect("neighbours");
        let conj = self.chain(&[self.arrows.inverse(h), self.curv(y, z, u), h]);
        self.chain(&[conj, self.curv(x, y, u), self.curv(x, u, z), self.curv(x, z, y)])
    }

    /// Every ordered 3-simplex on which the identity fails.
    pub fn bianchi_failures(&self) -> Vec<[usize; 4]> {
        self.space
            .simplices(3)
            .into_iter()
            .map(|s| [s[0], s[1], s[2], s[3]])
            .filter(|&[x, y, z, u]| self.bianchi_value(x, y, z, u) != self.arrows.identity_at(x))
            .collect()
    }
}

impl GroupoidConnection<FiniteGroup> {
    /// All vertex-group connections on `space` with values in `group`.
    pub fn all<'a>(space: &'a Arc<NeighbourSpace>, group: &'a Arc<FiniteGroup>) -> impl Iterator<Item = Self> + 'a {
        let edges = space.edges();
        let order = group.order() as u64;
        (0..order.pow(edges.len() as u32)).map(move |mut code| {
            Self::from_fn(space, group, |_, _| {
                let g = (code % order) as usize;
                code /= order;
                g
            })
            .expect("group-valued")
        })
    }
}
