//! Finite (hence discrete, étale) groupoids.
//!
//! A [`FiniteGroupoid`] is a validated set of composition tables. Element ids
//! are dense indices `0..n`; the id order is the canonical order used for
//! tie-breaking and for every set-valued output. Groupoids built by this crate
//! list their units before their arrows.
//!
//! Because every finite Hausdorff space is discrete, "open", "dense" and
//! "interior" all specialize: every subset is open, only the whole unit space
//! is dense, and the interior of the isotropy is the isotropy itself.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub type ElementId = usize;

/// Raw tables as they appear in groupoid spec files.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RawGroupoid {
    pub elements: usize,
    pub units: Vec<usize>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub inv: Vec<usize>,
    pub mul: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n: usize,
    units: Vec<ElementId>,
    is_unit: Vec<bool>,
    r: Vec<ElementId>,
    s: Vec<ElementId>,
    inv: Vec<ElementId>,
    mul: Vec<Option<ElementId>>,
    labels: Vec<String>,
}

/// Partition of the unit space into orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    /// `orbit_of[i]` is the orbit index of `units[i]`; orbits are numbered in
    /// order of their smallest unit.
    pub units: Vec<ElementId>,
    pub orbit_of: Vec<usize>,
    pub count: usize,
}

impl OrbitPartition {
    pub fn orbit_of_unit(&self, u: ElementId) -> Option<usize> {
        self.units.iter().position(|&v| v == u).map(|i| self.orbit_of[i])
    }

    pub fn orbits(&self) -> Vec<Vec<ElementId>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, &u) in self.units.iter().enumerate() {
            out[self.orbit_of[i]].push(u);
        }
        out
    }
}

/// The isotropy group `u G u` at one unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub unit: ElementId,
    /// Sorted element ids; the unit comes first.
    pub elements: Vec<ElementId>,
    /// Cayley table in local indices of `elements`.
    pub table: Vec<Vec<usize>>,
}

impl IsotropyGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn local_index(&self, gamma: ElementId) -> Option<usize> {
        self.elements.iter().position(|&x| x == gamma)
    }

    pub fn to_group(&self) -> FiniteGroup {
        FiniteGroup::from_table(format!("iso@{}", self.unit), self.table.clone()).expect("isotropy is a group")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyData {
    pub groups: Vec<IsotropyGroup>,
    pub is_group_bundle: bool,
}

/// A subgroupoid together with its embedding into the parent's element ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroupoid {
    pub groupoid: FiniteGroupoid,
    /// `parent[i]` is the parent id of local element `i`.
    pub parent: Vec<ElementId>,
}

impl Subgroupoid {
    pub fn local_of(&self, parent_id: ElementId) -> Option<ElementId> {
        self.parent.iter().position(|&p| p == parent_id)
    }
}

fn axiom(axiom: &'static str, detail: String) -> Error {
    Error::AxiomViolation { axiom, detail }
}

fn check_index(what: &'static str, index: usize, size: usize) -> Result<()> {
    if index >= size {
        Err(Error::IndexError { what, index, size })
    } else {
        Ok(())
    }
}

impl FiniteGroupoid {
    /// Validates the tables exhaustively and returns the groupoid.
    pub fn build(raw: RawGroupoid) -> Result<Self> {
        let n = raw.elements;
        for (name, len) in [("r", raw.r.len()), ("s", raw.s.len()), ("inv", raw.inv.len())] {
            if len != n {
                return Err(axiom("table-shape", format!("map `{name}` has {len} entries for {n} elements")));
            }
        }
        let mut is_unit = vec![false; n];
        for &u in &raw.units {
            check_index("unit", u, n)?;
            if std::mem::replace(&mut is_unit[u], true) {
                return Err(axiom("units-distinct", format!("unit {u} listed twice")));
            }
        }
        if n > 0 && raw.units.is_empty() {
            return Err(axiom("units-nonempty", "a nonempty groupoid needs units".into()));
        }
        for g in 0..n {
            check_index("range", raw.r[g], n)?;
            check_index("source", raw.s[g], n)?;
            check_index("inverse", raw.inv[g], n)?;
        }
        for &[a, b, c] in &raw.mul {
            check_index("mul operand", a, n)?;
            check_index("mul operand", b, n)?;
            check_index("mul product", c, n)?;
        }
        let mut units = raw.units.clone();
        units.sort_unstable();
        for &u in &units {
            if raw.r[u] != u || raw.s[u] != u {
                return Err(axiom("unit-fixed", format!("unit {u} has r = {}, s = {}", raw.r[u], raw.s[u])));
            }
        }
        for g in 0..n {
            if !is_unit[raw.r[g]] || !is_unit[raw.s[g]] {
                return Err(axiom("range-source-units", format!("element {g} has r or s outside the units")));
            }
        }
        let mut mul = vec![None; n * n];
        for &[a, b, c] in &raw.mul {
            if raw.s[a] != raw.r[b] {
                return Err(axiom("composability", format!("product ({a}, {b}) given but s({a}) != r({b})")));
            }
            if mul[a * n + b].replace(c).is_some() {
                return Err(axiom("mul-unique", format!("product ({a}, {b}) given twice")));
            }
        }
        let g = FiniteGroupoid {
            n,
            units,
            is_unit,
            r: raw.r,
            s: raw.s,
            inv: raw.inv,
            mul,
            labels: (0..n).map(|i| i.to_string()).collect(),
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let composable = self.s[a] == self.r[b];
                match (composable, self.mul[a * n + b]) {
                    (true, None) => return Err(axiom("mul-total", format!("composable pair ({a}, {b}) has no product"))),
                    (true, Some(c)) => {
                        if self.r[c] != self.r[a] || self.s[c] != self.s[b] {
                            return Err(axiom("mul-range-source", format!("{a}·{b} = {c} has wrong range or source")));
                        }
                    }
                    _ => {}
                }
            }
        }
        for g in 0..n {
            if self.product(self.r[g], g) != Some(g) || self.product(g, self.s[g]) != Some(g) {
                return Err(axiom("unit-law", format!("units do not act trivially on {g}")));
            }
            let h = self.inv[g];
            if self.inv[h] != g {
                return Err(axiom("inverse-involutive", format!("inv(inv({g})) = {}", self.inv[h])));
            }
            if self.r[h] != self.s[g] || self.s[h] != self.r[g] {
                return Err(axiom("inverse-range-source", format!("r(inv({g})) != s({g})")));
            }
            if self.product(g, h) != Some(self.r[g]) || self.product(h, g) != Some(self.s[g]) {
                return Err(axiom("inverse-law", format!("{g}·inv({g}) != r({g}) or inv({g})·{g} != s({g})")));
            }
        }
        let by_range = self.elements_by_range();
        for a in 0..n {
            for &b in &by_range[self.s[a]] {
                let ab = self.mul[a * n + b].expect("composable");
                for &c in &by_range[self.s[b]] {
                    let bc = self.mul[b * n + c].expect("composable");
                    if self.mul[ab * n + c] != self.mul[a * n + bc] {
                        return Err(axiom("associativity", format!("({a}·{b})·{c} != {a}·({b}·{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn elements_by_range(&self) -> Vec<Vec<ElementId>> {
        let mut out = vec![Vec::new(); self.n];
        for g in 0..self.n {
            out[self.r[g]].push(g);
        }
        out
    }

    pub fn to_raw(&self) -> RawGroupoid {
        RawGroupoid {
            elements: self.n,
            units: self.units.clone(),
            r: self.r.clone(),
            s: self.s.clone(),
            inv: self.inv.clone(),
            mul: self.composable_pairs().map(|(a, b, c)| [a, b, c]).collect(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn units(&self) -> &[ElementId] {
        &self.units
    }

    pub fn is_unit(&self, g: ElementId) -> bool {
        self.is_unit[g]
    }

    pub fn r(&self, g: ElementId) -> ElementId {
        self.r[g]
    }

    pub fn s(&self, g: ElementId) -> ElementId {
        self.s[g]
    }

    pub fn inv(&self, g: ElementId) -> ElementId {
        self.inv[g]
    }

    pub fn label(&self, g: ElementId) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Product when `s(a) = r(b)`.
    pub fn product(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        self.mul[a * self.n + b]
    }

    pub fn compose(&self, a: ElementId, b: ElementId) -> Result<ElementId> {
        check_index("element", a, self.n)?;
        check_index("element", b, self.n)?;
        self.product(a, b).ok_or(Error::NotComposable(a, b))
    }

    /// All `(a, b, a·b)` with `s(a) = r(b)`, in lexicographic order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (ElementId, ElementId, ElementId)> + '_ {
        (0..self.n).flat_map(move |a| (0..self.n).filter_map(move |b| self.product(a, b).map(|c| (a, b, c))))
    }

    /// Elements with source `u`.
    pub fn source_fiber(&self, u: ElementId) -> Vec<ElementId> {
        (0..self.n).filter(|&g| self.s[g] == u).collect()
    }

    /// Elements with range `u`.
    pub fn range_fiber(&self, u: ElementId) -> Vec<ElementId> {
        (0..self.n).filter(|&g| self.r[g] == u).collect()
    }

    pub fn is_group_bundle(&self) -> bool {
        (0..self.n).all(|g| self.r[g] == self.s[g])
    }

    /// Least `Y ⊇ X` with `r(s⁻¹(Y)) ⊆ Y`.
    pub fn invariant_closure(&self, x: &[ElementId]) -> Result<Vec<ElementId>> {
        let mut inside = vec![false; self.n];
        for &u in x {
            check_index("unit", u, self.n)?;
            if !self.is_unit[u] {
                return Err(Error::NotAUnit(u));
            }
            inside[u] = true;
        }
        loop {
            let mut grew = false;
            for g in 0..self.n {
                if inside[self.s[g]] && !inside[self.r[g]] {
                    inside[self.r[g]] = true;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        Ok(self.units.iter().copied().filter(|&u| inside[u]).collect())
    }

    pub fn orbits(&self) -> OrbitPartition {
        let mut orbit_of = vec![usize::MAX; self.units.len()];
        let mut count = 0;
        for i in 0..self.units.len() {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let orbit = self.invariant_closure(&[self.units[i]]).expect("unit");
            for u in orbit {
                let j = self.units.binary_search(&u).expect("unit");
                orbit_of[j] = count;
            }
            count += 1;
        }
        OrbitPartition { units: self.units.clone(), orbit_of, count }
    }

    /// Every nonempty invariant set of units is the whole unit space.
    pub fn is_minimal(&self) -> bool {
        self.orbits().count <= 1
    }

    pub fn isotropy(&self) -> IsotropyData {
        let groups = self
            .units
            .iter()
            .map(|&u| {
                let elements: Vec<ElementId> = (0..self.n).filter(|&g| self.r[g] == u && self.s[g] == u).collect();
                let local = |g: ElementId| elements.iter().position(|&x| x == g).expect("closed");
                let table = elements
                    .iter()
                    .map(|&a| elements.iter().map(|&b| local(self.product(a, b).expect("composable"))).collect())
                    .collect();
                IsotropyGroup { unit: u, elements, table }
            })
            .collect();
        IsotropyData { groups, is_group_bundle: self.is_group_bundle() }
    }

    /// Interior of the isotropy subgroupoid; with the discrete topology this is
    /// `{γ : r(γ) = s(γ)}`.
    pub fn interior_isotropy(&self) -> Subgroupoid {
        let support: Vec<ElementId> = (0..self.n).filter(|&g| self.r[g] == self.s[g]).collect();
        self.restrict_to_open_subgroupoid(&support).expect("isotropy is a subgroupoid")
    }

    /// All isotropy groups are trivial.
    pub fn is_topologically_principal(&self) -> bool {
        (0..self.n).all(|g| self.is_unit[g] || self.r[g] != self.s[g])
    }

    /// Restricts the tables to `support`, which must contain `r(S) ∪ s(S)` and
    /// be closed under products and inverses. Local ids list units first.
    pub fn restrict_to_open_subgroupoid(&self, support: &[ElementId]) -> Result<Subgroupoid> {
        let mut inside = vec![false; self.n];
        for &g in support {
            check_index("element", g, self.n)?;
            inside[g] = true;
        }
        for g in 0..self.n {
            if !inside[g] {
                continue;
            }
            if !inside[self.r[g]] || !inside[self.s[g]] {
                return Err(Error::NotSubgroupoid(format!("range or source of {g} is missing")));
            }
            if !inside[self.inv[g]] {
                return Err(Error::NotSubgroupoid(format!("inverse of {g} is missing")));
            }
            for h in 0..self.n {
                if inside[h] {
                    if let Some(c) = self.product(g, h) {
                        if !inside[c] {
                            return Err(Error::NotSubgroupoid(format!("product {g}·{h} = {c} is missing")));
                        }
                    }
                }
            }
        }
        let parent: Vec<ElementId> = (0..self.n)
            .filter(|&g| inside[g] && self.is_unit[g])
            .chain((0..self.n).filter(|&g| inside[g] && !self.is_unit[g]))
            .collect();
        Ok(Subgroupoid { groupoid: self.relabel(&parent), parent })
    }

    /// Sub-tables on `order`, where `order[new] = old`; `order` must be a
    /// subgroupoid's element set.
    fn relabel(&self, order: &[ElementId]) -> FiniteGroupoid {
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &g) in order.iter().enumerate() {
            new_of[g] = i;
        }
        let m = order.len();
        let mut mul = vec![None; m * m];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                mul[i * m + j] = self.product(a, b).map(|c| new_of[c]);
            }
        }
        let is_unit: Vec<bool> = order.iter().map(|&g| self.is_unit[g]).collect();
        FiniteGroupoid {
            n: m,
            units: (0..m).filter(|&i| is_unit[i]).collect(),
            is_unit,
            r: order.iter().map(|&g| new_of[self.r[g]]).collect(),
            s: order.iter().map(|&g| new_of[self.s[g]]).collect(),
            inv: order.iter().map(|&g| new_of[self.inv[g]]).collect(),
            mul,
            labels: order.iter().map(|&g| self.labels[g].clone()).collect(),
        }
    }

    /// Renumbers so that units come first, keeping relative order otherwise.
    pub fn canonicalize(&self) -> FiniteGroupoid {
        let order: Vec<ElementId> = (0..self.n)
            .filter(|&g| self.is_unit[g])
            .chain((0..self.n).filter(|&g| !self.is_unit[g]))
            .collect();
        self.relabel(&order)
    }

    /// The pair groupoid on `n` points: elements `(i, j)`, `r = i`, `s = j`.
    pub fn pair(n: usize) -> FiniteGroupoid {
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    pairs.push((i, j));
                }
            }
        }
        let id = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("pair");
        let mut mul = Vec::new();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(j2, k)) in pairs.iter().enumerate() {
                if j == j2 {
                    mul.push([a, b, id((i, k))]);
                }
            }
        }
        let raw = RawGroupoid {
            elements: pairs.len(),
            units: (0..n).collect(),
            r: pairs.iter().map(|&(i, _)| i).collect(),
            s: pairs.iter().map(|&(_, j)| j).collect(),
            inv: pairs.iter().map(|&(i, j)| id((j, i))).collect(),
            mul,
        };
        let labels = pairs.iter().map(|&(i, j)| format!("({},{})", i + 1, j + 1)).collect();
        FiniteGroupoid::build(raw).expect("pair groupoid").with_labels(labels)
    }

    /// `n` units and no other arrows.
    pub fn trivial(n: usize) -> FiniteGroupoid {
        Self::group_bundle(&vec![FiniteGroup::trivial(); n])
    }

    /// A group as a one-unit groupoid; the identity becomes element 0.
    pub fn from_group(group: &FiniteGroup) -> FiniteGroupoid {
        Self::group_bundle(std::slice::from_ref(group))
    }

    /// Disjoint union of groups, one over each unit.
    pub fn group_bundle(fibers: &[FiniteGroup]) -> FiniteGroupoid {
        let mut ids = Vec::new(); // (fiber, group element)
        for (p, _) in fibers.iter().enumerate() {
            ids.push((p, fibers[p].identity()));
        }
        for (p, g) in fibers.iter().enumerate() {
            for x in 0..g.order() {
                if x != g.identity() {
                    ids.push((p, x));
                }
            }
        }
        let id = |p: usize, x: usize| ids.iter().position(|&q| q == (p, x)).expect("fiber element");
        let mut mul = Vec::new();
        for (a, &(p, x)) in ids.iter().enumerate() {
            for (b, &(q, y)) in ids.iter().enumerate() {
                if p == q {
                    mul.push([a, b, id(p, fibers[p].mul(x, y))]);
                }
            }
        }
        let k = fibers.len();
        let raw = RawGroupoid {
            elements: ids.len(),
            units: (0..k).collect(),
            r: ids.iter().map(|&(p, _)| p).collect(),
            s: ids.iter().map(|&(p, _)| p).collect(),
            inv: ids.iter().map(|&(p, x)| id(p, fibers[p].inv(x))).collect(),
            mul,
        };
        let labels = ids
            .iter()
            .map(|&(p, x)| {
                if k == 1 {
                    fibers[p].element_name(x).to_string()
                } else {
                    format!("{}@{}", fibers[p].element_name(x), p)
                }
            })
            .collect();
        FiniteGroupoid::build(raw).expect("group bundle").with_labels(labels)
    }

    /// Disjoint union; the result lists all units first.
    pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
        let (na, nb) = (a.n, b.n);
        let shift = |g: usize| g + na;
        let mut mul: Vec<[usize; 3]> = a.composable_pairs().map(|(x, y, z)| [x, y, z]).collect();
        mul.extend(b.composable_pairs().map(|(x, y, z)| [shift(x), shift(y), shift(z)]));
        let raw = RawGroupoid {
            elements: na + nb,
            units: a.units.iter().copied().chain(b.units.iter().map(|&u| shift(u))).collect(),
            r: a.r.iter().copied().chain(b.r.iter().map(|&u| shift(u))).collect(),
            s: a.s.iter().copied().chain(b.s.iter().map(|&u| shift(u))).collect(),
            inv: a.inv.iter().copied().chain(b.inv.iter().map(|&u| shift(u))).collect(),
            mul,
        };
        let labels = a
            .labels
            .iter()
            .map(|l| format!("L{l}"))
            .chain(b.labels.iter().map(|l| format!("R{l}")))
            .collect();
        FiniteGroupoid::build(raw).expect("disjoint union").with_labels(labels).canonicalize()
    }

    /// Smallest subgroupoid containing `seeds`.
    pub fn generated_subgroupoid(&self, seeds: &[ElementId]) -> Result<Subgroupoid> {
        let mut inside: BTreeSet<ElementId> = BTreeSet::new();
        let mut frontier: Vec<ElementId> = Vec::new();
        let push = |g: ElementId, inside: &mut BTreeSet<ElementId>, frontier: &mut Vec<ElementId>| {
            if inside.insert(g) {
                frontier.push(g);
            }
        };
        for &g in seeds {
            check_index("element", g, self.n)?;
            push(g, &mut inside, &mut frontier);
        }
        while let Some(g) = frontier.pop() {
            push(self.r[g], &mut inside, &mut frontier);
            push(self.s[g], &mut inside, &mut frontier);
            push(self.inv[g], &mut inside, &mut frontier);
            let current: Vec<ElementId> = inside.iter().copied().collect();
            for h in current {
                if let Some(c) = self.product(g, h) {
                    push(c, &mut inside, &mut frontier);
                }
                if let Some(c) = self.product(h, g) {
                    push(c, &mut inside, &mut frontier);
                }
            }
        }
        let support: Vec<ElementId> = inside.into_iter().collect();
        self.restrict_to_open_subgroupoid(&support)
    }
}
