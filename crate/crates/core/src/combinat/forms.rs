use std::collections::HashMap;
use std::sync::Arc;

use super::{CombinatError, FiniteGroup, NeighbourSpace};

/// A group-valued function on ordered pairs of neighbours with
/// `w(x, x) = e` and `w(y, x) = w(x, y)^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form1 {
    space: Arc<NeighbourSpace>,
    group: Arc<FiniteGroup>,
    values: Vec<Option<usize>>,
}

impl Form1 {
    /// Builds a 1-form from values on some ordered pairs. A pair left out
    /// takes the inverse of its reverse when that is given and the identity
    /// otherwise.
    pub fn new(
        space: &Arc<NeighbourSpace>,
        group: &Arc<FiniteGroup>,
        given: &HashMap<(usize, usize), usize>,
    ) -> Result<Self, CombinatError> {
        let n = space.len();
        for (&(x, y), &g) in given {
            if x >= n || y >= n {
                return Err(CombinatError::NoSuchPoint(x.max(y)));
            }
            if !space.is_nbr(x, y) {
                return Err(CombinatError::NotSimplex(vec![x, y]));
            }
            if g >= group.order() {
                return Err(CombinatError::NoSuchElement(g.to_string()));
            }
            if x == y && g != group.identity() {
                return Err(CombinatError::Normalization(format!("value at ({x}, {x}) is not the identity")));
            }
            if let Some(&h) = given.get(&(y, x)) {
                if group.inv(g) != h {
                    return Err(CombinatError::Normalization(format!("values at ({x}, {y}) and ({y}, {x}) are not inverse")));
                }
            }
        }
        Ok(Self::from_fn(space, group, |x, y| {
            given
                .get(&(x, y))
                .copied()
                .or_else(|| given.get(&(y, x)).map(|&g| group.inv(g)))
                .unwrap_or(group.identity())
        }))
    }

    /// Takes `f(x, y)` for `x < y`, neighbours, and fills in the rest.
    pub fn from_fn(space: &Arc<NeighbourSpace>, group: &Arc<FiniteGroup>, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let n = space.len();
        let mut values = vec![None; n * n];
        for x in space.points() {
            values[x * n + x] = Some(group.identity());
        }
        for (x, y) in space.edges() {
            let g = f(x, y);
            values[x * n + y] = Some(g);
            values[y * n + x] = Some(group.inv(g));
        }
        Form1 { space: space.clone(), group: group.clone(), values }
    }

    /// The constant identity form.
    pub fn trivial(space: &Arc<NeighbourSpace>, group: &Arc<FiniteGroup>) -> Self {
        Self::from_fn(space, group, |_, _| group.identity())
    }

    /// Every 1-form on `space` with values in `group`.
    pub fn all<'a>(space: &'a Arc<NeighbourSpace>, group: &'a Arc<FiniteGroup>) -> impl Iterator<Item = Form1> + 'a {
        let edges = space.edges().len();
        let order = group.order() as u64;
        (0..order.pow(edges as u32)).map(move |mut code| {
            Self::from_fn(space, group, |_, _| {
                let g = (code % order) as usize;
                code /= order;
                g
            })
        })
    }

    pub fn space(&self) -> &Arc<NeighbourSpace> {
        &self.space
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// The value on `(x, y)`, `None` unless `x ~ y`.
    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.space.len();
        if x >= n || y >= n {
            return None;
        }
        self.values[x * n + y]
    }

    fn at(&self, x: usize, y: usize) -> usize {
        self.get(x, y).expect("neighbours")
    }
}

/// A group-valued function on 2-simplices.
#[derive(Clone, Debug, PartialEq)]
pub struct Form2 {
    space: Arc<NeighbourSpace>,
    group: Arc<FiniteGroup>,
    values: HashMap<[usize; 3], usize>,
}

impl Form2 {
    pub fn get(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        self.values.get(&[x, y, z]).copied()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn space(&self) -> &Arc<NeighbourSpace> {
        &self.space
    }

    /// Whether every value is the identity.
    pub fn is_identity(&self) -> bool {
        self.values.values().all(|&g| g == self.group.identity())
    }

    /// Identity on every simplex with a repeated entry.
    pub fn is_normalized(&self) -> bool {
        self.values
            .iter()
            .all(|(s, &g)| !(s[0] == s[1] || s[1] == s[2] || s[0] == s[2]) || g == self.group.identity())
    }

    /// Whether swapping two entries inverts the value. Reported, not
    /// required: it can fail for non-abelian groups.
    pub fn is_alternating(&self) -> bool {
        self.values.iter().all(|(&[x, y, z], &g)| {
            let inv = self.group.inv(g);
            [[y, x, z], [x, z, y], [z, y, x]].iter().all(|s| self.values[s] == inv)
        })
    }
}

/// `df(x, y) = f(x)^-1 f(y)`.
pub fn coboundary0(space: &Arc<NeighbourSpace>, group: &Arc<FiniteGroup>, f: &[usize]) -> Result<Form1, CombinatError> {
    if f.len() != space.len() {
        return Err(CombinatError::Shape(format!("0-form has {} values for {} points", f.len(), space.len())));
    }
    if let Some(&g) = f.iter().find(|&&g| g >= group.order()) {
        return Err(CombinatError::NoSuchElement(g.to_string()));
    }
    Ok(Form1::from_fn(space, group, |x, y| group.mul(group.inv(f[x]), f[y])))
}

/// `dw(x, y, z) = w(x, y) w(y, z) w(z, x)`.
pub fn coboundary1(w: &Form1) -> Form2 {
    let g = &w.group;
    let values = w
        .space
        .simplices(2)
        .into_iter()
        .map(|s| {
            let (x, y, z) = (s[0], s[1], s[2]);
            ([x, y, z], g.product([w.at(x, y), w.at(y, z), w.at(z, x)]))
        })
        .collect();
    Form2 { space: w.space.clone(), group: g.clone(), values }
}

/// `dw` is identically `e`.
pub fn is_closed(w: &Form1) -> bool {
    let g = &w.group;
    w.space.simplices(2).iter().all(|s| {
        let (x, y, z) = (s[0], s[1], s[2]);
        g.product([w.at(x, y), w.at(y, z), w.at(z, x)]) == g.identity()
    })
}

/// A reflexive symmetric relation refining the neighbour relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    space: Arc<NeighbourSpace>,
    strong: Vec<Vec<bool>>,
}

impl Distribution {
    pub fn new(space: &Arc<NeighbourSpace>, strong: Vec<Vec<bool>>) -> Result<Self, CombinatError> {
        let n = space.len();
        if strong.len() != n || strong.iter().any(|r| r.len() != n) {
            return Err(CombinatError::Shape(format!("relation is not {n}x{n}")));
        }
        for x in 0..n {
            if !strong[x][x] {
                return Err(CombinatError::Distribution(format!("not reflexive at {}", space.name(x))));
            }
            for y in 0..n {
                if strong[x][y] != strong[y][x] {
                    return Err(CombinatError::Distribution(format!("not symmetric at ({x}, {y})")));
                }
                if strong[x][y] && !space.is_nbr(x, y) {
                    return Err(CombinatError::Distribution(format!("({x}, {y}) related but not neighbours")));
                }
            }
        }
        Ok(Distribution { space: space.clone(), strong })
    }

    /// `x ≈ y` iff `x ~ y` and `related(x, y)`; `related` must be symmetric.
    pub fn from_fn(space: &Arc<NeighbourSpace>, related: impl Fn(usize, usize) -> bool) -> Result<Self, CombinatError> {
        let strong = space
            .points()
            .map(|x| space.points().map(|y| x == y || (space.is_nbr(x, y) && related(x, y))).collect())
            .collect();
        Self::new(space, strong)
    }

    /// Neighbours with equal values under `f`.
    pub fn from_fibers(space: &Arc<NeighbourSpace>, f: &[usize]) -> Result<Self, CombinatError> {
        if f.len() != space.len() {
            return Err(CombinatError::Shape(format!("{} values for {} points", f.len(), space.len())));
        }
        Self::from_fn(space, |x, y| f[x] == f[y])
    }

    pub fn space(&self) -> &Arc<NeighbourSpace> {
        &self.space
    }

    pub fn is_strong(&self, x: usize, y: usize) -> bool {
        self.strong[x][y]
    }

    /// `x ≈ y`, `x ≈ z` and `y ~ z` imply `y ≈ z`.
    pub fn is_involutive(&self) -> bool {
        self.involutivity_witness().is_none()
    }

    /// A triple `(x, y, z)` violating involutivity, if any.
    pub fn involutivity_witness(&self) -> Option<(usize, usize, usize)> {
        let pts = self.space.points();
        for x in pts.clone() {
            for y in pts.clone().filter(|&y| self.strong[x][y]) {
                for z in pts.clone().filter(|&z| self.strong[x][z]) {
                    if self.space.is_nbr(y, z) && !self.strong[y][z] {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// On `subset`, `~` and `≈` agree.
    pub fn is_integral_subset(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&x| subset.iter().all(|&y| self.space.is_nbr(x, y) == self.strong[x][y]))
    }
}

/// `x ≈ y` iff `x ~ y` and `w(x, y) = e`.
pub fn distribution_from_form(w: &Form1) -> Distribution {
    Distribution::from_fn(&w.space, |x, y| w.at(x, y) == w.group.identity()).expect("symmetric by inverse law")
}
