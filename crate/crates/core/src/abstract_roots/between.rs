use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::window::Window;
use super::{AbstractRoot, Sign};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::CoxeterGroup;
use crate::real_roots::{cone2, generate_roots, BasedRootDatum, RootSlice};

/// A root slice of a based root datum together with the reflection map to `T x {+-1}`.
#[derive(Clone, Debug)]
pub struct Realization {
    group: CoxeterGroup,
    slice: RootSlice,
    abstract_roots: Vec<AbstractRoot>,
    lookup: HashMap<AbstractRoot, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    /// Slice indices of the members.
    pub members: Vec<usize>,
    /// False when the interval reaches the slice boundary (infinite interval).
    pub bounded: bool,
}

impl Interval {
    /// Cardinality, `None` for unbounded.
    pub fn size(&self) -> Option<usize> {
        self.bounded.then_some(self.members.len())
    }
}

impl Realization {
    /// Requires the datum's Coxeter matrix to equal the group's (up to names).
    pub fn new(group: &CoxeterGroup, datum: &BasedRootDatum, depth: usize, cap: usize) -> Result<Self> {
        if datum.coxeter_matrix()?.rows() != group.matrix().rows() {
            return Err(Error::Invalid("datum does not realize this Coxeter matrix".into()));
        }
        let slice = generate_roots(datum, depth, cap)?;
        let mut abstract_roots = Vec::with_capacity(slice.len());
        let mut lookup = HashMap::new();
        for i in 0..slice.len() {
            let t = slice.reflection_of(group, i);
            let r = AbstractRoot::new(t, Sign::from_bool_neg(!slice.get(i).positive));
            lookup.entry(r.clone()).or_insert(i);
            abstract_roots.push(r);
        }
        Ok(Self { group: group.clone(), slice, abstract_roots, lookup })
    }

    /// The standard symmetric datum of `group`.
    pub fn standard(group: &CoxeterGroup, depth: usize) -> Result<Self> {
        Self::new(group, &BasedRootDatum::standard(group.matrix()), depth, crate::DEFAULT_ELEMENT_CAP)
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn slice(&self) -> &RootSlice {
        &self.slice
    }

    /// `theta` of slice root `i`.
    pub fn abstract_root(&self, i: usize) -> &AbstractRoot {
        &self.abstract_roots[i]
    }

    /// A real lift of an abstract root.
    pub fn lift(&self, r: &AbstractRoot) -> Result<usize> {
        self.lookup
            .get(r)
            .copied()
            .ok_or_else(|| Error::WindowExhausted(format!("root ({}, {}) has no lift in the slice", self.group.format(&r.reflection), r.sign)))
    }

    /// Whether `theta` restricted to the slice is injective.
    pub fn theta_injective(&self) -> bool {
        self.lookup.len() == self.abstract_roots.len()
    }

    fn at_boundary(&self, i: usize) -> bool {
        !self.slice.complete && self.slice.get(i).depth >= self.slice.depth_bound
    }

    /// `[a, b]` on slice indices.
    pub fn interval_idx(&self, a: usize, b: usize) -> Interval {
        if a == b {
            return Interval { members: vec![a], bounded: true };
        }
        if self.slice.negation(a) == b {
            let mut m = vec![a, b];
            m.sort();
            return Interval { members: m, bounded: true };
        }
        let (ra, rb) = (&self.slice.get(a).root, &self.slice.get(b).root);
        let members: Vec<usize> = (0..self.slice.len())
            .filter(|&g| g == a || g == b || cone2(&self.slice.get(g).root, ra, rb))
            .collect();
        let bounded = !members.iter().any(|&g| self.at_boundary(g));
        Interval { members, bounded }
    }

    /// `[a, b]` as abstract roots, with the boundedness flag.
    pub fn interval(&self, a: &AbstractRoot, b: &AbstractRoot) -> Result<(Vec<AbstractRoot>, bool)> {
        let iv = self.interval_idx(self.lift(a)?, self.lift(b)?);
        let mut roots: Vec<AbstractRoot> = iv.members.iter().map(|&i| self.abstract_roots[i].clone()).collect();
        roots.sort();
        roots.dedup();
        Ok((roots, iv.bounded))
    }

    /// Lemma det: `s_b(a)` from interval cardinalities only.
    pub fn reflect_from_betweenness(&self, alpha: &AbstractRoot, beta: &AbstractRoot) -> Result<AbstractRoot> {
        let (a, b) = (self.lift(alpha)?, self.lift(beta)?);
        if alpha.reflection == beta.reflection {
            return Err(Error::Precondition("alpha = +-beta".into()));
        }
        let nb = self.slice.negation(b);
        // the dihedral root set, closed under intervals
        let mut fan: BTreeSet<usize> = [a, self.slice.negation(a), b, nb].into_iter().collect();
        loop {
            let cur: Vec<usize> = fan.iter().copied().collect();
            let before = fan.len();
            for (i, &x) in cur.iter().enumerate() {
                for &y in &cur[i + 1..] {
                    fan.extend(self.interval_idx(x, y).members);
                }
            }
            if fan.len() == before {
                break;
            }
        }
        let size = |x, y| self.interval_idx(x, y).size();
        let gamma: Vec<usize> = fan
            .iter()
            .copied()
            .filter(|&x| x != b && x != nb)
            .filter(|&x| self.interval_idx(b, x).members.contains(&a))
            .filter(|&x| size(x, nb) == Some(2))
            .collect();
        let &[gamma] = gamma.as_slice() else {
            return Err(Error::WindowExhausted("dihedral fan incomplete in slice".into()));
        };
        let m = size(b, a);
        let n = size(a, gamma);
        let inf = usize::MAX;
        let (mv, nv) = (m.unwrap_or(inf), n.unwrap_or(inf));
        let delta = if m.is_some() && n.is_some() && mv == nv + 1 {
            Some(a)
        } else if mv < nv.saturating_add(1) {
            let span = self.interval_idx(b, gamma).members;
            span.into_iter().find(|&d| size(gamma, d) == Some(mv - 1))
        } else {
            let span = self.interval_idx(b, gamma).members;
            span.into_iter().find(|&d| size(b, d) == Some(nv + 1))
        };
        let d = delta.ok_or_else(|| Error::WindowExhausted("dihedral fan incomplete in slice".into()))?;
        Ok(self.abstract_roots[d].clone())
    }
}

/// Betweenness restricted to a window, as bitsets over window root ids.
#[derive(Clone, Debug)]
pub struct BetweennessTable {
    n_roots: usize,
    // table[x * n_roots + y] = [x, y] cap window
    table: Vec<fixedbitset::FixedBitSet>,
}

impl BetweennessTable {
    pub fn new(window: &Window, real: &Realization, exec: Exec) -> Result<Self> {
        let n_roots = 2 * window.len();
        let lifts: Vec<usize> = (0..n_roots)
            .map(|id| real.lift(&window.root_of_id(id)))
            .collect::<Result<_>>()?;
        let back: HashMap<usize, usize> = lifts.iter().enumerate().map(|(id, &l)| (l, id)).collect();
        let rows: Vec<Vec<fixedbitset::FixedBitSet>> = exec.map_range(n_roots, |x| {
            (0..n_roots)
                .map(|y| {
                    let mut bits = fixedbitset::FixedBitSet::with_capacity(n_roots);
                    for m in real.interval_idx(lifts[x], lifts[y]).members {
                        if let Some(&id) = back.get(&m) {
                            bits.insert(id);
                        } else if let Some(id) = window.id_of_root(real.abstract_root(m)) {
                            bits.insert(id);
                        }
                    }
                    bits
                })
                .collect()
        });
        Ok(Self { n_roots, table: rows.into_iter().flatten().collect() })
    }

    pub fn between(&self, x: usize, y: usize) -> &fixedbitset::FixedBitSet {
        &self.table[x * self.n_roots + y]
    }

    /// Closed under betweenness inside the window.
    pub fn is_closed(&self, set: &fixedbitset::FixedBitSet) -> bool {
        let members: Vec<usize> = set.ones().collect();
        members
            .iter()
            .all(|&x| members.iter().all(|&y| self.between(x, y).is_subset(set)))
    }

    pub fn is_biclosed(&self, set: &fixedbitset::FixedBitSet) -> bool {
        let mut complement = set.clone();
        complement.toggle_range(..);
        self.is_closed(set) && self.is_closed(&complement)
    }

    pub fn is_biclosed_roots(&self, window: &Window, roots: &[AbstractRoot]) -> Result<bool> {
        let mut set = fixedbitset::FixedBitSet::with_capacity(self.n_roots);
        for r in roots {
            let id = window
                .id_of_root(r)
                .ok_or_else(|| Error::Precondition("root outside window".into()))?;
            set.insert(id);
        }
        Ok(self.is_biclosed(&set))
    }

    pub fn is_biclosed_system(&self, q: &super::QuasiPositiveSystem) -> bool {
        let mut set = fixedbitset::FixedBitSet::with_capacity(self.n_roots);
        for id in q.root_ids() {
            set.insert(id);
        }
        self.is_biclosed(&set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstract_roots::{act, QuasiPositiveSystem};
    use crate::group::CoxeterMatrix;
    use std::sync::Arc;

    fn b2() -> CoxeterGroup {
        CoxeterGroup::new(CoxeterMatrix::from_type("B2").unwrap().with_names(&["r", "s"]).unwrap())
    }

    fn root(g: &CoxeterGroup, t: &str, s: i8) -> AbstractRoot {
        AbstractRoot::new(g.parse(t).unwrap(), Sign::try_from(s).unwrap())
    }

    #[test]
    fn interval_examples() {
        let g = b2();
        let real = Realization::standard(&g, 8).unwrap();
        let r = root(&g, "r", 1);
        assert_eq!(real.interval(&r, &r).unwrap().0, vec![r.clone()]);
        let (iv, bounded) = real.interval(&r, &root(&g, "s", 1)).unwrap();
        assert!(bounded);
        assert_eq!(iv, vec![r.clone(), root(&g, "s", 1), root(&g, "rsr", 1), root(&g, "srs", 1)]);
        let (iv, _) = real.interval(&r, &root(&g, "rsr", 1)).unwrap();
        assert_eq!(iv, vec![r.clone(), root(&g, "rsr", 1)]);
    }

    #[test]
    fn reflect_from_betweenness_examples() {
        let g = b2();
        let real = Realization::standard(&g, 8).unwrap();
        assert_eq!(real.reflect_from_betweenness(&root(&g, "r", 1), &root(&g, "s", 1)).unwrap(), root(&g, "srs", 1));
        assert_eq!(real.reflect_from_betweenness(&root(&g, "s", 1), &root(&g, "r", 1)).unwrap(), root(&g, "rsr", 1));
        let a2 = CoxeterGroup::from_type("A2").unwrap();
        let real = Realization::standard(&a2, 8).unwrap();
        assert_eq!(real.reflect_from_betweenness(&root(&a2, "a", 1), &root(&a2, "b", 1)).unwrap(), root(&a2, "aba", 1));
    }

    #[test]
    fn reflect_from_betweenness_matches_action_on_all_pairs() {
        for ty in ["B2", "G2", "I2(5)", "A3"] {
            let g = CoxeterGroup::from_type(ty).unwrap();
            let real = Realization::standard(&g, 20).unwrap();
            let roots: Vec<AbstractRoot> = (0..real.slice().len()).map(|i| real.abstract_root(i).clone()).collect();
            for x in &roots {
                for y in &roots {
                    if x.reflection == y.reflection {
                        continue;
                    }
                    let expect = act(&g, &y.reflection, x).unwrap();
                    assert_eq!(real.reflect_from_betweenness(x, y).unwrap(), expect, "{ty}");
                }
            }
        }
    }

    #[test]
    fn biclosedness_examples() {
        let g = b2();
        let w = Arc::new(Window::full(&g, 100, Exec::Sequential).unwrap());
        let real = Realization::standard(&g, 8).unwrap();
        let table = BetweennessTable::new(&w, &real, Exec::Sequential).unwrap();
        assert!(table.is_biclosed_system(&QuasiPositiveSystem::standard(w.clone())));
        let paper = [root(&g, "s", 1), root(&g, "srs", 1), root(&g, "r", 1), root(&g, "rsr", -1)];
        assert!(!table.is_biclosed_roots(&w, &paper).unwrap());
    }

    #[test]
    fn exotic_infinite_dihedral_system_is_biclosed_in_window() {
        let g = CoxeterGroup::new(CoxeterMatrix::from_type("I2(0)").unwrap().with_names(&["r", "s"]).unwrap());
        let w = Arc::new(Window::new(&g, 7, 1000, Exec::Sequential).unwrap());
        let real = Realization::standard(&g, 16).unwrap();
        let table = BetweennessTable::new(&w, &real, Exec::Sequential).unwrap();
        let r = g.parse("r").unwrap();
        let exotic = QuasiPositiveSystem::from_fn(w.clone(), |t| Sign::from_bool_neg(!g.in_inversion_set(&r, t)));
        assert!(table.is_biclosed_system(&exotic));
        assert!(!exotic.is_generative().unwrap().generative);
    }
}
