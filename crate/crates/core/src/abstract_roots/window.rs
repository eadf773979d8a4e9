use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{AbstractRoot, Certainty, Sign};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{CoxeterGroup, GroupElement};

const NONE: u32 = u32::MAX;

/// A finite set of reflections with precomputed conjugation and cocycle tables.
///
/// Either all of `T` (finite W), the reflections of length at most `L`, or the
/// reflections of a reflection subgroup.
#[derive(Clone, Debug)]
pub struct Window {
    group: CoxeterGroup,
    bound: Option<usize>,
    exact: bool,
    reflections: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    // conj[t * n + u] = index of t u t
    conj: Vec<u32>,
    // flips[t] = N(t) restricted to the window
    flips: Vec<FixedBitSet>,
}

impl Window {
    /// Reflections of length at most `max_len`.
    pub fn new(group: &CoxeterGroup, max_len: usize, cap: usize, exec: Exec) -> Result<Self> {
        let refl = group.reflections(max_len, cap, exec)?;
        let mut w = Self::build(group, refl, false, Some(max_len), exec);
        w.exact = group.is_finite() && w.closed_under_generators();
        Ok(w)
    }

    /// All of `T`; requires a finite group.
    pub fn full(group: &CoxeterGroup, cap: usize, exec: Exec) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::Precondition("full window needs a finite group".into()));
        }
        let refl = group.reflections(usize::MAX, cap, exec)?;
        let bound = refl.iter().map(|t| t.len()).max();
        Ok(Self::build(group, refl, true, bound, exec))
    }

    /// An explicit reflection set, e.g. the reflections of a subgroup.
    pub fn from_reflections(group: &CoxeterGroup, mut refl: Vec<GroupElement>, exact: bool, exec: Exec) -> Result<Self> {
        for t in &refl {
            group.check(t)?;
            if !group.is_reflection(t) {
                return Err(Error::Invalid(format!("{} is not a reflection", group.format(t))));
            }
        }
        refl.sort();
        refl.dedup();
        let bound = refl.iter().map(|t| t.len()).max();
        Ok(Self::build(group, refl, exact, bound, exec))
    }

    fn build(group: &CoxeterGroup, reflections: Vec<GroupElement>, exact: bool, bound: Option<usize>, exec: Exec) -> Self {
        let n = reflections.len();
        let index: HashMap<GroupElement, usize> = reflections.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let rows: Vec<(Vec<u32>, FixedBitSet)> = exec.map_range(n, |t| {
            let tt = &reflections[t];
            let row = reflections
                .iter()
                .map(|u| {
                    let c = group.conjugate(tt, u).expect("same group");
                    index.get(&c).map_or(NONE, |&i| i as u32)
                })
                .collect();
            let mut flips = FixedBitSet::with_capacity(n);
            for u in group.inversion_set(tt) {
                if let Some(&i) = index.get(&u) {
                    flips.insert(i);
                }
            }
            (row, flips)
        });
        let mut conj = Vec::with_capacity(n * n);
        let mut flips = Vec::with_capacity(n);
        for (row, f) in rows {
            conj.extend(row);
            flips.push(f);
        }
        Self { group: group.clone(), bound, exact, reflections, index, conj, flips }
    }

    fn closed_under_generators(&self) -> bool {
        self.group.generators().iter().all(|s| {
            self.reflections
                .iter()
                .all(|t| self.index.contains_key(&self.group.conjugate(s, t).expect("same group")))
        })
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    /// Whether the window is all of `T` (or all reflections of the subgroup it was built from).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn certainty(&self) -> Certainty {
        if self.exact {
            Certainty::Exact
        } else {
            Certainty::WindowOnly
        }
    }

    /// Largest reflection length covered.
    pub fn bound(&self) -> usize {
        self.bound.unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.reflections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflections.is_empty()
    }

    pub fn reflections(&self) -> &[GroupElement] {
        &self.reflections
    }

    pub fn reflection(&self, t: usize) -> &GroupElement {
        &self.reflections[t]
    }

    pub fn index_of(&self, t: &GroupElement) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn require(&self, t: &GroupElement) -> Result<usize> {
        self.index_of(t)
            .ok_or_else(|| Error::WindowExhausted(format!("reflection {} outside window", self.group.format(t))))
    }

    /// Index of `t u t`, if it is in the window.
    pub fn conj(&self, t: usize, u: usize) -> Option<usize> {
        match self.conj[t * self.len() + u] {
            NONE => None,
            v => Some(v as usize),
        }
    }

    /// `u` in `N(t)`: the sign flips when `t` acts on `(u, e)`.
    pub fn flips(&self, t: usize, u: usize) -> bool {
        self.flips[t].contains(u)
    }

    pub fn inversions(&self, t: usize) -> &FixedBitSet {
        &self.flips[t]
    }

    /// Window root id of `(t, sign)`: `2t` for `+`, `2t + 1` for `-`.
    pub fn root_id(t: usize, sign: Sign) -> usize {
        2 * t + usize::from(sign.is_neg())
    }

    pub fn root_of_id(&self, id: usize) -> AbstractRoot {
        AbstractRoot::new(self.reflections[id / 2].clone(), Sign::from_bool_neg(id % 2 == 1))
    }

    pub fn id_of_root(&self, r: &AbstractRoot) -> Option<usize> {
        self.index_of(&r.reflection).map(|t| Self::root_id(t, r.sign))
    }

    /// Orbits of the window under conjugation by generators, ordered by their
    /// ShortLex-least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut class = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        let gens = self.group.generators();
        for start in 0..n {
            if class[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            class[start] = c;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let t = &self.reflections[members[k]];
                for s in &gens {
                    let u = self.group.conjugate(s, t).expect("same group");
                    if let Some(i) = self.index_of(&u) {
                        if class[i] == usize::MAX {
                            class[i] = c;
                            members.push(i);
                        }
                    }
                }
                k += 1;
            }
            members.sort();
            out.push(members);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CoxeterMatrix;

    fn b2() -> CoxeterGroup {
        CoxeterGroup::new(CoxeterMatrix::from_type("B2").unwrap().with_names(&["r", "s"]).unwrap())
    }

    #[test]
    fn full_window_tables() {
        let g = b2();
        let w = Window::full(&g, 1000, Exec::Sequential).unwrap();
        assert!(w.is_exact());
        assert_eq!(w.len(), 4);
        let r = w.index_of(&g.parse("r").unwrap()).unwrap();
        let s = w.index_of(&g.parse("s").unwrap()).unwrap();
        let srs = w.index_of(&g.parse("srs").unwrap()).unwrap();
        assert_eq!(w.conj(s, r), Some(srs));
        assert!(w.flips(srs, s) && w.flips(srs, srs) && !w.flips(srs, r));
    }

    #[test]
    fn classes_of_b2_and_a2() {
        let g = b2();
        let w = Window::full(&g, 1000, Exec::Sequential).unwrap();
        let names: Vec<Vec<String>> = w
            .conjugacy_classes()
            .iter()
            .map(|c| c.iter().map(|&t| g.format(w.reflection(t))).collect())
            .collect();
        assert_eq!(names, vec![vec!["r", "srs"], vec!["s", "rsr"]]);
        let a2 = CoxeterGroup::from_type("A2").unwrap();
        assert_eq!(Window::full(&a2, 100, Exec::Sequential).unwrap().conjugacy_classes().len(), 1);
    }

    #[test]
    fn length_windows_on_infinite_groups() {
        let g = CoxeterGroup::from_type("I2(0)").unwrap();
        let w = Window::new(&g, 6, 1000, Exec::Sequential).unwrap();
        assert_eq!(w.len(), 6);
        assert!(!w.is_exact());
        assert_eq!(w.certainty(), Certainty::WindowOnly);
        assert!(Window::full(&g, 1000, Exec::Sequential).is_err());
        let fin = Window::new(&b2(), 10, 1000, Exec::Sequential).unwrap();
        assert!(fin.is_exact());
    }
}
