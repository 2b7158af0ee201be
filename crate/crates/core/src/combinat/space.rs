use super::CombinatError;

/// A finite set with a reflexive, symmetric (not necessarily transitive)
/// neighbour relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourSpace {
    names: Vec<String>,
    nbr: Vec<Vec<bool>>,
}

impl NeighbourSpace {
    /// Points `0..n` with the given neighbour pairs; the relation is closed
    /// under reflexivity and symmetry.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CombinatError> {
        Self::named((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn named(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CombinatError> {
        let n = names.len();
        let mut nbr = vec![vec![false; n]; n];
        for (i, row) in nbr.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(CombinatError::NoSuchPoint(a.max(b)));
            }
            nbr[a][b] = true;
            nbr[b][a] = true;
        }
        Ok(NeighbourSpace { names, nbr })
    }

    /// Every pair of points are neighbours.
    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        Self::new(n, edges).expect("indices in range")
    }

    /// `0 ~ 1 ~ ... ~ n-1`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("indices in range")
    }

    /// Only the reflexive pairs.
    pub fn discrete(n: usize) -> Self {
        Self::new(n, []).expect("no edges")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        self.names
            .iter()
            .position(|n| n == name)
            .or_else(|| name.parse::<usize>().ok().filter(|&i| i < self.len()))
    }

    pub fn is_nbr(&self, x: usize, y: usize) -> bool {
        self.nbr[x][y]
    }

    /// The neighbours of `x`, including `x`.
    pub fn monad(&self, x: usize) -> Vec<usize> {
        self.points().filter(|&y| self.nbr[x][y]).collect()
    }

    /// Unordered pairs of distinct neighbours.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.points()
            .flat_map(|a| (a + 1..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| self.nbr[a][b])
            .collect()
    }

    /// Whether the entries are pairwise neighbours.
    pub fn is_simplex(&self, pts: &[usize]) -> bool {
        pts.iter().all(|&a| a < self.len())
            && pts.iter().enumerate().all(|(i, &a)| pts[i + 1..].iter().all(|&b| self.nbr[a][b]))
    }

    /// All ordered `(k+1)`-tuples of mutual neighbours, repetitions allowed.
    pub fn simplices(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k + 1);
        self.extend_simplices(k + 1, &mut cur, &mut out);
        out
    }

    fn extend_simplices(&self, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for p in self.points() {
            if cur.iter().all(|&q| self.nbr[p][q]) {
                cur.push(p);
                self.extend_simplices(len, cur, out);
                cur.pop();
            }
        }
    }

    /// Checks that `map` (point `i` goes to `map[i]`) preserves the neighbour
    /// relation into `target`.
    pub fn check_morphism(&self, target: &NeighbourSpace, map: &[usize]) -> Result<(), CombinatError> {
        if map.len() != self.len() {
            return Err(CombinatError::Morphism(format!("map has {} entries for {} points", map.len(), self.len())));
        }
        if let Some(&bad) = map.iter().find(|&&m| m >= target.len()) {
            return Err(CombinatError::NoSuchPoint(bad));
        }
        for (a, b) in self.edges() {
            if !target.is_nbr(map[a], map[b]) {
                return Err(CombinatError::Morphism(format!(
                    "{} ~ {} but their images {} and {} are not neighbours",
                    self.name(a),
                    self.name(b),
                    target.name(map[a]),
                    target.name(map[b])
                )));
            }
        }
        Ok(())
    }

    /// Every neighbour space on `n` points (one per graph on `0..n`).
    pub fn all(n: usize) -> impl Iterator<Item = NeighbourSpace> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            NeighbourSpace::new(n, edges).expect("indices in range")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        assert_eq!(NeighbourSpace::complete(3).simplices(2).len(), 27);
        assert_eq!(NeighbourSpace::complete(1).simplices(2), vec![vec![0, 0, 0]]);
        let path = NeighbourSpace::path(3);
        assert!(path.simplices(2).iter().all(|s| !(s.contains(&0) && s.contains(&2))));
        assert_eq!(path.simplices(0).len(), 3);
        assert_eq!(path.simplices(1).len(), 3 + 4);
    }

    #[test]
    fn relation_is_reflexive_and_symmetric() {
        let m = NeighbourSpace::new(3, [(0, 1)]).unwrap();
        assert!(m.is_nbr(1, 0) && m.is_nbr(2, 2) && !m.is_nbr(0, 2));
        assert_eq!(m.monad(0), vec![0, 1]);
        assert!(NeighbourSpace::new(2, [(0, 5)]).is_err());
    }

    #[test]
    fn morphisms_must_preserve_neighbours() {
        let path = NeighbourSpace::path(3);
        let complete = NeighbourSpace::complete(2);
        assert!(path.check_morphism(&complete, &[0, 1, 0]).is_ok());
        assert!(complete.check_morphism(&NeighbourSpace::discrete(2), &[0, 1]).is_err());
        assert!(complete.check_morphism(&NeighbourSpace::discrete(2), &[1, 1]).is_ok());
    }

    #[test]
    fn all_spaces() {
        assert_eq!(NeighbourSpace::all(4).count(), 64);
        assert_eq!(NeighbourSpace::all(1).count(), 1);
    }
}
