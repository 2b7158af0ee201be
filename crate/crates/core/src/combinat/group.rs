use std::collections::HashMap;
use std::fmt;

use super::CombinatError;

/// A finite group given by its multiplication table. Elements are indices
/// `0..order`; `table[a][b]` is the product `a*b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the group axioms and builds the group. Element names
    /// default to the indices.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, CombinatError> {
        let n = table.len();
        let bad = |msg: String| CombinatError::NotAGroup(msg);
        if n == 0 {
            return Err(bad("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&g| g >= n)) {
            return Err(bad(format!("table is not a closed {n}x{n} table")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| bad("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| bad(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => return Err(bad(format!("{} names for {n} elements", v.len()))),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup { name: name.into(), names, table, identity, inverse })
    }

    /// The cyclic group `Z_n`, written additively: element `k` is `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("Z{n}"), table, None).expect("cyclic group")
    }

    /// The symmetric group on `n` letters, elements in lexicographic order of
    /// their images and named in cycle notation.
    pub fn symmetric(n: usize) -> Self {
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        Self::from_permutations(format!("S{n}"), perms)
    }

    /// Symmetries of a square with vertices `0, 1, 2, 3` in cyclic order.
    pub fn dihedral4() -> Self {
        Self::generated("D4", &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // units 1, i, j, k as indices 0..4; unit products with sign
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        // element 2u + s is (-1)^s * unit u
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, u) = UNIT[a / 2][b / 2];
                        let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
                        2 * u + sign
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
        Self::from_table("Q8", table, Some(names)).expect("quaternion group")
    }

    /// Built-in groups by name: `Z1`..`Z12` (also `Z_n`), `S3`, `S4`, `D4`,
    /// `Q8`.
    pub fn named(name: &str) -> Result<Self, CombinatError> {
        let key: String = name.chars().filter(|c| *c != '_').collect::<String>().to_uppercase();
        match key.as_str() {
            "S3" => Ok(Self::symmetric(3)),
            "S4" => Ok(Self::symmetric(4)),
            "D4" => Ok(Self::dihedral4()),
            "Q8" => Ok(Self::quaternion()),
            k => match k.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if (1..=12).contains(&n) => Ok(Self::cyclic(n)),
                _ => Err(CombinatError::UnknownGroup(name.to_string())),
            },
        }
    }

    fn from_permutations(name: String, perms: Vec<Vec<usize>>) -> Self {
        let index: HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        // left-to-right composition: (p*q)(i) = q(p(i))
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index[&p.iter().map(|&i| q[i]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(name, table, Some(names)).expect("permutation group")
    }

    fn generated(name: &str, gens: &[Vec<usize>]) -> Self {
        let n = gens[0].len();
        let mut elems = vec![(0..n).collect::<Vec<_>>()];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let next: Vec<usize> = elems[i].iter().map(|&k| g[k]).collect();
                if !elems.contains(&next) {
                    elems.push(next);
                }
            }
            i += 1;
        }
        elems.sort();
        Self::from_permutations(name.to_string(), elems)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `h^-1 g h`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// Left-to-right product of a sequence.
    pub fn product(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.identity, |acc, g| self.mul(acc, g))
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.names[g]
    }

    /// Looks an element up by name, falling back to its index.
    pub fn element(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        self.names
            .iter()
            .position(|n| n == name)
            .or_else(|| name.parse::<usize>().ok().filter(|&i| i < self.order()))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = p[start];
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = p[i];
        }
        let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}
