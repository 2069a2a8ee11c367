//! Finite groups given by Cayley tables.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite group stored as a validated Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

pub type Permutation = Vec<usize>;

impl FiniteGroup {
    /// Validates the group axioms exhaustively.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&c| c >= n) {
                return Err(Error::IndexError { what: "group element", index: bad, size: n });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(b);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let names = (0..n).map(|i| if i == identity { "e".to_string() } else { format!("g{i}") }).collect();
        Ok(FiniteGroup { name: name.into(), table, identity, inverse, names })
    }

    /// Closes a set of permutations under composition. Element 0 is the identity;
    /// other elements are named by the shortest generator word reaching them.
    pub fn from_permutations(name: impl Into<String>, generators: &[Permutation]) -> Result<Self> {
        let degree = generators.first().map_or(0, |g| g.len());
        for g in generators {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of degree {degree}")));
            }
        }
        let identity: Permutation = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut words = vec!["e".to_string()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elements.len() {
            for (k, g) in generators.iter().enumerate() {
                let next = compose_perm(&elements[head], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    let letter = (b'a' + k as u8) as char;
                    let word = if head == 0 { letter.to_string() } else { format!("{}{letter}", words[head]) };
                    elements.push(next);
                    words.push(word);
                }
            }
            head += 1;
        }
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&compose_perm(a, b)]).collect())
            .collect();
        let mut group = Self::from_table(name, table)?;
        group.names = words;
        Ok(group)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = Self::from_table(format!("Z{n}"), table).expect("cyclic table");
        g.names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{k}"),
            })
            .collect();
        g
    }

    pub fn klein_four() -> Self {
        let mut g = Self::direct_product(&Self::cyclic(2), &Self::cyclic(2));
        g.name = "V4".into();
        g
    }

    /// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3, "dihedral groups need n >= 3");
        let rotation: Permutation = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Permutation = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(format!("D{n}"), &[rotation, reflection]).expect("dihedral")
    }

    pub fn symmetric(n: usize) -> Self {
        if n <= 1 {
            let mut g = Self::trivial();
            g.name = format!("S{n}");
            return g;
        }
        let transposition: Permutation = (0..n).map(|i| match i { 0 => 1, 1 => 0, _ => i }).collect();
        let cycle: Permutation = (0..n).map(|i| (i + 1) % n).collect();
        let gens = if n == 2 { vec![transposition] } else { vec![transposition, cycle] };
        Self::from_permutations(format!("S{n}"), &gens).expect("symmetric")
    }

    pub fn quaternion() -> Self {
        // index = unit + 4 * negative, units ordered 1, i, j, k
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (u, flip) = UNIT[a % 4][b % 4];
                        let negative = (a >= 4) ^ (b >= 4) ^ flip;
                        u + if negative { 4 } else { 0 }
                    })
                    .collect()
            })
            .collect();
        let mut g = Self::from_table("Q8", table).expect("quaternion table");
        g.names = ["e", "i", "j", "k", "-1", "-i", "-j", "-k"].iter().map(|s| s.to_string()).collect();
        g
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.order(), b.order());
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(format!("{}x{}", a.name, b.name), table).expect("product table");
        g.names = (0..na * nb)
            .map(|x| {
                let (p, q) = (x / nb, x % nb);
                if p == a.identity && q == b.identity {
                    "e".to_string()
                } else {
                    format!("({},{})", a.names[p], b.names[q])
                }
            })
            .collect();
        g
    }

    /// Looks up a built-in group by name: `Z<n>`, `V4`, `D<n>`, `S<n>`, `Q8`,
    /// `Z2xZ4`, `Z2xZ2xZ2`, `trivial`.
    pub fn preset(name: &str) -> Result<Self> {
        let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("unknown group preset `{name}`")));
        match name {
            "trivial" | "1" => Ok(Self::trivial()),
            "V4" | "Klein4" | "Z2xZ2" => Ok(Self::klein_four()),
            "Q8" => Ok(Self::quaternion()),
            "Z2xZ4" => Ok(Self::direct_product(&Self::cyclic(2), &Self::cyclic(4))),
            "Z2xZ2xZ2" => Ok(Self::direct_product(&Self::klein_four(), &Self::cyclic(2))),
            _ if name.starts_with('Z') => Ok(Self::cyclic(parse(&name[1..])?.max(1))),
            _ if name.starts_with('D') => {
                let n = parse(&name[1..])?;
                if n < 3 {
                    return Err(Error::Parse(format!("dihedral preset `{name}` needs n >= 3")));
                }
                Ok(Self::dihedral(n))
            }
            _ if name.starts_with('S') => Ok(Self::symmetric(parse(&name[1..])?)),
            _ => Err(Error::Parse(format!("unknown group preset `{name}`"))),
        }
    }

    /// Built-in catalog: every group of order at most 8, plus D5, D6 and S4.
    /// Returns those of order `<= max_order`, sorted by order.
    pub fn catalog(max_order: usize) -> Vec<Self> {
        let mut all = vec![
            Self::trivial(),
            Self::cyclic(2),
            Self::cyclic(3),
            Self::cyclic(4),
            Self::klein_four(),
            Self::cyclic(5),
            Self::cyclic(6),
            Self::dihedral(3),
            Self::cyclic(7),
            Self::cyclic(8),
            Self::preset("Z2xZ4").unwrap(),
            Self::preset("Z2xZ2xZ2").unwrap(),
            Self::dihedral(4),
            Self::quaternion(),
            Self::dihedral(5),
            Self::dihedral(6),
            Self::symmetric(4),
        ];
        all.retain(|g| g.order() <= max_order);
        all.sort_by_key(|g| g.order());
        all
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
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

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements ordered with the identity first, then by index.
    pub fn elements_identity_first(&self) -> Vec<usize> {
        std::iter::once(self.identity)
            .chain((0..self.order()).filter(|&g| g != self.identity))
            .collect()
    }

    /// Smallest subgroup containing `elems`, sorted.
    pub fn subgroup_generated(&self, elems: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in elems {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order()).filter(|&g| members[g]).collect()
    }

    /// A small generating set, chosen greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.subgroup_generated(&gens);
        while span.len() < self.order() {
            // the element enlarging the span the most
            let best = (0..self.order())
                .filter(|g| span.binary_search(g).is_err())
                .max_by_key(|&g| {
                    let mut trial = gens.clone();
                    trial.push(g);
                    (self.subgroup_generated(&trial).len(), std::cmp::Reverse(g))
                })
                .expect("span is proper");
            gens.push(best);
            span = self.subgroup_generated(&gens);
        }
        gens
    }
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose_perm(a: &[usize], b: &[usize]) -> Permutation {
    b.iter().map(|&x| a[x]).collect()
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let orders: Vec<usize> = FiniteGroup::catalog(8).iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        assert_eq!(FiniteGroup::catalog(24).last().unwrap().name(), "S4");
    }

    #[test]
    fn nonabelian_members() {
        assert!(!FiniteGroup::dihedral(3).is_abelian());
        assert!(!FiniteGroup::quaternion().is_abelian());
        assert!(!FiniteGroup::dihedral(4).is_abelian());
        assert!(FiniteGroup::klein_four().is_abelian());
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroup::quaternion();
        let minus_one = 4;
        for u in 1..4 {
            assert_eq!(q.mul(u, u), minus_one);
        }
        assert_eq!(q.mul(1, 2), 3); // ij = k
        assert_eq!(q.mul(2, 1), 7); // ji = -k
    }

    #[test]
    fn rejects_non_group() {
        let table = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table("bad", table), Err(Error::InvalidGroup(_))));
        let table = vec![vec![0, 2], vec![1, 0]];
        assert!(matches!(FiniteGroup::from_table("bad", table), Err(Error::IndexError { .. })));
    }

    #[test]
    fn generators_generate() {
        for g in FiniteGroup::catalog(24) {
            let gens = g.generators();
            assert_eq!(g.subgroup_generated(&gens).len(), g.order(), "{}", g.name());
            assert!(gens.len() <= 3);
        }
    }
}
