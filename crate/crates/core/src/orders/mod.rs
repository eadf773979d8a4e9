//! Weak and twisted Bruhat pre-orders on finite groups from a reflection cocycle.

mod lex;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

pub use lex::{lex_system, standard_basis, LexSystem, OrthonormalRealization};

use crate::abstract_roots::{QuasiPositiveSystem, Window};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{CoxeterGroup, GroupElement};

/// Anything that assigns each group element its reflection cocycle value `N(w)`,
/// as indices into a window that holds all of `T`.
pub trait CocycleProvider: Sync {
    fn window(&self) -> &Arc<Window>;
    fn cocycle(&self, w: &GroupElement) -> Result<Vec<usize>>;
}

impl CocycleProvider for QuasiPositiveSystem {
    fn window(&self) -> &Arc<Window> {
        QuasiPositiveSystem::window(self)
    }

    fn cocycle(&self, w: &GroupElement) -> Result<Vec<usize>> {
        self.cocycle_of(w)
    }
}

/// `N(x) subset N(y)` for the standard cocycle.
pub fn weak_leq(g: &CoxeterGroup, x: &GroupElement, y: &GroupElement) -> Result<bool> {
    g.check(x)?;
    g.check(y)?;
    Ok(g.inversion_set(x).iter().all(|t| g.in_inversion_set(t, y)))
}

/// `w.A = N(w) + w A w^{-1}` for the standard cocycle, ShortLex sorted.
pub fn twisted_dot(g: &CoxeterGroup, w: &GroupElement, a: &[GroupElement]) -> Result<Vec<GroupElement>> {
    let mut set: std::collections::BTreeSet<GroupElement> = g.inversion_set(w).into_iter().collect();
    for t in a {
        if !g.is_reflection(t) {
            return Err(Error::Invalid(format!("{} is not a reflection", g.format(t))));
        }
        let c = g.conjugate(w, t)?;
        if !set.remove(&c) {
            set.insert(c);
        }
    }
    Ok(set.into_iter().collect())
}

/// Tables for a finite group: elements, cocycle values, conjugation and left multiplication by `T`.
pub struct CocycleTable {
    window: Arc<Window>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    cocycle: Vec<FixedBitSet>,
    /// `conj[w][t]` = index of `w t w^{-1}`.
    conj: Vec<Vec<u32>>,
    /// `left[w][t]` = index of `t w`.
    left: Vec<Vec<u32>>,
    exec: Exec,
}

impl CocycleTable {
    pub fn new<P: CocycleProvider>(provider: &P, cap: usize, exec: Exec) -> Result<Self> {
        let window = provider.window().clone();
        let g = window.group();
        if !g.is_finite() || !window.is_exact() {
            return Err(Error::Precondition("order tables need a finite group and an exact window".into()));
        }
        let elements = g.enumerate_all(cap, exec)?;
        let index: HashMap<GroupElement, usize> = elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let nt = window.len();
        let cocycle = exec
            .map(&elements, |w| {
                let mut b = FixedBitSet::with_capacity(nt);
                for t in provider.cocycle(w)? {
                    b.insert(t);
                }
                Ok(b)
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let rows = exec
            .map(&elements, |w| -> Result<(Vec<u32>, Vec<u32>)> {
                let mut c = Vec::with_capacity(nt);
                let mut l = Vec::with_capacity(nt);
                for t in window.reflections() {
                    c.push(window.require(&g.conjugate(w, t)?)? as u32);
                    l.push(index[&g.multiply(t, w)?] as u32);
                }
                Ok((c, l))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let (conj, left) = rows.into_iter().unzip();
        Ok(Self { window, elements, index, cocycle, conj, left, exec })
    }

    pub fn standard(group: &CoxeterGroup, cap: usize, exec: Exec) -> Result<Self> {
        let window = Arc::new(Window::full(group, cap, exec)?);
        Self::new(&QuasiPositiveSystem::standard(window), cap, exec)
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.window.group()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn cocycle(&self, w: usize) -> &FixedBitSet {
        &self.cocycle[w]
    }

    /// Reflection set as a bitset over the window.
    pub fn twist_set(&self, a: &[GroupElement]) -> Result<FixedBitSet> {
        let mut b = FixedBitSet::with_capacity(self.window.len());
        for t in a {
            b.insert(self.window.require(t)?);
        }
        Ok(b)
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.window.len());
        b.insert_range(..);
        b
    }

    /// `w.A = N(w) + w A w^{-1}`.
    pub fn twisted_dot(&self, w: usize, a: &FixedBitSet) -> FixedBitSet {
        let mut out = self.cocycle[w].clone();
        for t in a.ones() {
            out.toggle(self.conj[w][t] as usize);
        }
        out
    }

    pub fn weak(&self) -> OrderRelation {
        let n = self.elements.len();
        let below = self.exec.map_range(n, |y| {
            let mut b = FixedBitSet::with_capacity(n);
            for x in 0..n {
                if self.cocycle[x].is_subset(&self.cocycle[y]) {
                    b.insert(x);
                }
            }
            b
        });
        OrderRelation::new(self.elements.clone(), OrderKind::Weak, below, self.exec)
    }

    /// `x <=_A y` iff `x` is reached from `y` by steps `x' = t x''` with `t` in `x''.A`.
    pub fn bruhat(&self, a: &FixedBitSet) -> OrderRelation {
        let n = self.elements.len();
        let step: Vec<Vec<usize>> = self.exec.map_range(n, |x| {
            self.twisted_dot(x, a).ones().map(|t| self.left[x][t] as usize).collect()
        });
        let below = self.exec.map_range(n, |y| {
            let mut seen = FixedBitSet::with_capacity(n);
            let mut queue = VecDeque::from([y]);
            seen.insert(y);
            while let Some(x) = queue.pop_front() {
                for &z in &step[x] {
                    if !seen.put(z) {
                        queue.push_back(z);
                    }
                }
            }
            seen
        });
        let refl = a.ones().map(|t| self.window.reflection(t).clone()).collect();
        OrderRelation::new(self.elements.clone(), OrderKind::Bruhat(refl), below, self.exec)
    }

    pub fn bruhat_leq(&self, x: &GroupElement, y: &GroupElement, a: &FixedBitSet) -> Result<bool> {
        let (xi, yi) = (self.require(x)?, self.require(y)?);
        Ok(self.bruhat(a).leq(xi, yi))
    }

    fn require(&self, w: &GroupElement) -> Result<usize> {
        self.group().check(w)?;
        self.index_of(w).ok_or_else(|| Error::Invalid("element not in table".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Weak,
    Bruhat(Vec<GroupElement>),
}

/// Reachability relation on a finite group; `below[y]` holds every `x <= y`.
#[derive(Clone, Debug)]
pub struct OrderRelation {
    pub elements: Vec<GroupElement>,
    pub kind: OrderKind,
    below: Vec<FixedBitSet>,
    partial_order: bool,
}

impl OrderRelation {
    fn new(elements: Vec<GroupElement>, kind: OrderKind, below: Vec<FixedBitSet>, exec: Exec) -> Self {
        let n = elements.len();
        let bad = exec.map_range(n, |y| below[y].ones().any(|x| x != y && below[x].contains(y)));
        Self { elements, kind, below, partial_order: !bad.into_iter().any(|b| b) }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    /// Antisymmetry, checked over all pairs.
    pub fn is_partial_order(&self) -> bool {
        self.partial_order
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.len()).all(|y| self.below[y].ones().all(|x| self.below[x].is_subset(&self.below[y])))
    }

    /// Covering pairs `(x, y)` with `x < y`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.len() {
            let strict: Vec<usize> = self.below[y].ones().filter(|&x| x != y && !self.leq(y, x)).collect();
            for &x in &strict {
                if !strict.iter().any(|&z| z != x && self.leq(x, z) && !self.leq(z, x)) {
                    out.push((x, y));
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_dot(&self, g: &CoxeterGroup) -> String {
        let name = match self.kind {
            OrderKind::Weak => "weak",
            OrderKind::Bruhat(_) => "bruhat",
        };
        let mut s = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, w) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", g.format(w));
        }
        let max = self.elements.iter().map(|w| w.len()).max().unwrap_or(0);
        for len in 0..=max {
            let ids: Vec<String> =
                (0..self.len()).filter(|&i| self.elements[i].len() == len).map(|i| format!("n{i};")).collect();
            if !ids.is_empty() {
                let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join(" "));
            }
        }
        for (x, y) in self.hasse() {
            let _ = writeln!(s, "  n{x} -> n{y};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, g: &CoxeterGroup) -> Value {
        let kind = match &self.kind {
            OrderKind::Weak => json!("WEAK"),
            OrderKind::Bruhat(a) => json!({ "BRUHAT": a.iter().map(|t| g.format(t)).collect::<Vec<_>>() }),
        };
        let matrix: Vec<Vec<u8>> =
            (0..self.len()).map(|x| (0..self.len()).map(|y| self.leq(x, y) as u8).collect()).collect();
        json!({
            "kind": kind,
            "elements": self.elements.iter().map(|w| g.format(w)).collect::<Vec<_>>(),
            "matrix": matrix,
            "partial_order": self.partial_order,
            "hasse": self.hasse(),
        })
    }
}
