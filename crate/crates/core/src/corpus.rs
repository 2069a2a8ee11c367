//! Deterministic desk-scale corpus of groupoids.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{all_permutations, compose_perm, FiniteGroup, Permutation};
use crate::groupoid::{FiniteGroupoid, RawGroupoid};
use crate::transformation::{GroupAction, TransformationGroupoid};

pub const DEFAULT_SEED: u64 = 0xC57A;
pub const CORPUS_CAP: usize = 10_000;
pub const SEED_ENV: &str = "GPDLAB_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub group_bound: usize,
    pub space_bound: usize,
    pub bundle_bound: usize,
    pub pair_bound: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { group_bound: 8, space_bound: 4, bundle_bound: 3, pair_bound: 4, samples: 100, seed: DEFAULT_SEED }
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
pub fn parse_seed(s: &str) -> Result<u64> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| Error::Parse(format!("bad seed `{s}`")))
}

impl CorpusSpec {
    /// Defaults with the seed taken from `GPDLAB_SEED` when set.
    pub fn from_env() -> Result<Self> {
        let mut spec = Self::default();
        if let Ok(s) = std::env::var(SEED_ENV) {
            spec.seed = parse_seed(&s)?;
        }
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bounds = [
            ("group", self.group_bound),
            ("space", self.space_bound),
            ("bundle", self.bundle_bound),
            ("pair", self.pair_bound),
        ];
        match bounds.iter().find(|(_, b)| *b == 0) {
            Some((name, _)) => Err(Error::Parse(format!("{name} bound must be at least 1"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Action,
    Bundle,
    Pair,
    Union,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: usize,
    pub name: String,
    pub family: Family,
    pub groupoid: FiniteGroupoid,
    pub action: Option<GroupAction>,
}

impl Instance {
    pub fn transformation(&self) -> Option<TransformationGroupoid> {
        self.action.clone().map(TransformationGroupoid::new)
    }
}

/// All homomorphisms `G → Sym(m)` as full image tables, found by extending
/// every assignment of the generators along the Cayley graph.
pub fn homomorphisms_to_sym(group: &FiniteGroup, m: usize) -> Vec<Vec<Permutation>> {
    let gens = group.generators();
    let perms = all_permutations(m);
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(images) = extend(group, m, &gens, &choice.iter().map(|&c| perms[c].clone()).collect::<Vec<_>>()) {
            out.push(images);
        }
        // odometer over generator images
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < perms.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            return out;
        }
    }
}

fn extend(group: &FiniteGroup, m: usize, gens: &[usize], images: &[Permutation]) -> Option<Vec<Permutation>> {
    let mut phi: Vec<Option<Permutation>> = vec![None; group.order()];
    phi[group.identity()] = Some((0..m).collect());
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        let px = phi[x].clone().expect("assigned");
        for (s, ps) in gens.iter().zip(images) {
            let y = group.mul(x, *s);
            let py = compose_perm(&px, ps);
            match &phi[y] {
                Some(existing) if *existing != py => return None,
                Some(_) => {}
                None => {
                    phi[y] = Some(py);
                    frontier.push(y);
                }
            }
        }
    }
    phi.into_iter().collect()
}

/// Lexicographically least table among all relabelings of the points.
fn canonical_table(table: &[Permutation], relabelings: &[Permutation]) -> Vec<Permutation> {
    relabelings
        .iter()
        .map(|sigma| {
            let mut sigma_inv = vec![0; sigma.len()];
            for (i, &j) in sigma.iter().enumerate() {
                sigma_inv[j] = i;
            }
            table.iter().map(|p| compose_perm(sigma, &compose_perm(p, &sigma_inv))).collect::<Vec<_>>()
        })
        .min()
        .expect("at least the identity relabeling")
}

/// Actions of `group` on `m` points, one per relabeling class.
pub fn actions_up_to_relabeling(group: &FiniteGroup, m: usize) -> Vec<GroupAction> {
    let relabelings = all_permutations(m);
    let classes: BTreeSet<Vec<Permutation>> =
        homomorphisms_to_sym(group, m).iter().map(|t| canonical_table(t, &relabelings)).collect();
    classes
        .into_iter()
        .map(|t| GroupAction::new(group.clone(), m, t).expect("homomorphism gives an action"))
        .collect()
}

fn multisets(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, max_len, &mut Vec::new(), &mut out);
    out.sort_by_key(|v| v.len());
    out
}

/// Exact tables after putting units first; equal fingerprints mean
/// identical groupoids.
pub fn fingerprint(g: &FiniteGroupoid) -> RawGroupoid {
    let mut raw = g.canonicalize().to_raw();
    raw.mul.sort_unstable();
    raw
}

struct Builder {
    seen: BTreeSet<RawGroupoid>,
    out: Vec<Instance>,
}

impl Builder {
    fn push(&mut self, name: String, family: Family, groupoid: FiniteGroupoid, action: Option<GroupAction>) -> Result<()> {
        if self.seen.insert(fingerprint(&groupoid)) {
            if self.out.len() == CORPUS_CAP {
                return Err(Error::BoundTooLarge(CORPUS_CAP + 1, CORPUS_CAP));
            }
            let id = self.out.len();
            self.out.push(Instance { id, name, family, groupoid, action });
        }
        Ok(())
    }
}

/// Actions, group bundles, pair groupoids and two-atom disjoint unions,
/// in that order, with duplicates dropped.
pub fn enumerate_corpus(spec: &CorpusSpec) -> Result<Vec<Instance>> {
    spec.validate()?;
    let groups = FiniteGroup::catalog(spec.group_bound);
    let mut b = Builder { seen: BTreeSet::new(), out: Vec::new() };

    for g in &groups {
        for m in 1..=spec.space_bound {
            for (k, a) in actions_up_to_relabeling(g, m).into_iter().enumerate() {
                let t = TransformationGroupoid::new(a.clone());
                b.push(format!("act:{}:{m}:{k}", g.name()), Family::Action, t.into_groupoid(), Some(a))?;
            }
        }
    }

    for fibers in multisets(groups.len(), spec.bundle_bound) {
        let chosen: Vec<FiniteGroup> = fibers.iter().map(|&i| groups[i].clone()).collect();
        let names: Vec<&str> = chosen.iter().map(|g| g.name()).collect();
        b.push(format!("bundle:{}", names.join(",")), Family::Bundle, FiniteGroupoid::group_bundle(&chosen), None)?;
    }

    for n in 1..=spec.pair_bound {
        b.push(format!("pair:{n}"), Family::Pair, FiniteGroupoid::pair(n), None)?;
    }

    // atoms for unions: small pairs, small groups, and the two actions on two points
    let mut atoms: Vec<(String, FiniteGroupoid)> =
        (1..=spec.pair_bound.min(3)).map(|n| (format!("pair:{n}"), FiniteGroupoid::pair(n))).collect();
    for g in groups.iter().filter(|g| g.order() > 1 && g.order() <= 3) {
        atoms.push((format!("group:{}", g.name()), FiniteGroupoid::from_group(g)));
    }
    if spec.group_bound >= 2 && spec.space_bound >= 2 {
        atoms.push(("swap".into(), TransformationGroupoid::new(GroupAction::swap()).into_groupoid()));
        let z2 = FiniteGroup::cyclic(2);
        atoms.push(("trivZ2:2".into(), TransformationGroupoid::new(GroupAction::trivial(z2, 2)).into_groupoid()));
    }
    let max_units = spec.space_bound.max(spec.pair_bound).max(spec.bundle_bound);
    for i in 0..atoms.len() {
        for j in i..atoms.len() {
            let (a, b2) = (&atoms[i].1, &atoms[j].1);
            if a.units().len() + b2.units().len() <= max_units {
                let u = FiniteGroupoid::disjoint_union(a, b2);
                b.push(format!("union:{}+{}", atoms[i].0, atoms[j].0), Family::Union, u, None)?;
            }
        }
    }

    log::info!("corpus: {} instances", b.out.len());
    Ok(b.out)
}
