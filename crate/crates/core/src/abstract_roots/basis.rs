use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::between::BetweennessTable;
use super::qps::QuasiPositiveSystem;
use super::subgroup::chi;
use super::window::Window;
use super::{act, AbstractRoot, Certainty, Sign};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::DEFAULT_ELEMENT_CAP;

fn fmt_root(w: &Window, r: &AbstractRoot) -> String {
    format!("({},{})", w.group().format(&r.reflection), r.sign)
}

/// Elements of `<x, y>`: all of it when finite, else alternating words up to `bound` letters.
fn dihedral_elements(w: &Window, x: &GroupElement, y: &GroupElement, bound: usize) -> Result<Vec<GroupElement>> {
    let g = w.group();
    let order = g.reflection_product_order(x, y)?;
    let limit = order.map_or(bound, |m| m);
    let mut out = vec![g.identity()];
    for first in [x, y] {
        let mut cur = g.identity();
        for k in 0..limit {
            let next = if k % 2 == 0 { first } else if first == x { y } else { x };
            cur = g.multiply(&cur, next)?;
            out.push(cur.clone());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Thm abchar(ii): `{a, b} = w(chi(W_ab) x {e})` for some `w` in `W_ab` and sign `e`.
pub fn dihedral_basis_check(window: &Window, alpha: &AbstractRoot, beta: &AbstractRoot) -> Result<bool> {
    if alpha.reflection == beta.reflection {
        return Err(Error::Precondition("s_alpha = s_beta".into()));
    }
    let g = window.group();
    let (c, _) = chi(window, &[alpha.reflection.clone(), beta.reflection.clone()])?;
    if c.len() != 2 {
        return Err(Error::WindowExhausted("dihedral subgroup not resolved in window".into()));
    }
    let (c1, c2) = (window.reflection(c[0]).clone(), window.reflection(c[1]).clone());
    let target: HashSet<&AbstractRoot> = [alpha, beta].into_iter().collect();
    let bound = 2 * window.bound().max(1) + 2;
    for w in dihedral_elements(window, &alpha.reflection, &beta.reflection, bound)? {
        for eps in [Sign::Pos, Sign::Neg] {
            let a = act(g, &w, &AbstractRoot::new(c1.clone(), eps))?;
            let b = act(g, &w, &AbstractRoot::new(c2.clone(), eps))?;
            if target.contains(&a) && target.contains(&b) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Prop 3.15: `(rt)^m(a_r) = a_t` whenever `rt` has odd order `2m + 1`.
pub fn verify_simple_family(window: &Window, family: &[AbstractRoot]) -> Result<bool> {
    let g = window.group();
    for a in family {
        for b in family {
            if a.reflection == b.reflection {
                continue;
            }
            let rt = g.multiply(&a.reflection, &b.reflection)?;
            if let Some(o) = g.reflection_product_order(&a.reflection, &b.reflection)? {
                if o % 2 == 1 {
                    let mut x = g.identity();
                    for _ in 0..(o - 1) / 2 {
                        x = g.multiply(&x, &rt)?;
                    }
                    if act(g, &x, a)? != *b {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `{w(a_r) : l'(w r) > l'(w)}` with `l'` the word length over the family's reflections.
pub fn system_from_family(window: &Arc<Window>, family: &[AbstractRoot]) -> Result<QuasiPositiveSystem> {
    let g = window.group();
    let gens: Vec<&GroupElement> = family.iter().map(|a| &a.reflection).collect();
    let (depth, max_len) = if g.is_finite() {
        (usize::MAX, usize::MAX)
    } else {
        let b = window.bound().max(1);
        (2 * b + 2, 2 * b + 2)
    };
    let mut dist: HashMap<GroupElement, usize> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    dist.insert(g.identity(), 0);
    queue.push_back(g.identity());
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        order.push(w.clone());
        if d >= depth {
            continue;
        }
        for r in &gens {
            let x = g.multiply(&w, r)?;
            if x.len() <= max_len && !dist.contains_key(&x) {
                dist.insert(x.clone(), d + 1);
                queue.push_back(x);
            }
        }
        if dist.len() > DEFAULT_ELEMENT_CAP {
            return Err(Error::ResourceCap { what: "Cayley graph vertices".into(), cap: DEFAULT_ELEMENT_CAP });
        }
    }
    let mut signs: Vec<Option<Sign>> = vec![None; window.len()];
    for w in &order {
        let d = dist[w];
        if d >= depth {
            continue;
        }
        for (a, r) in family.iter().zip(&gens) {
            let x = g.multiply(w, r)?;
            if dist.get(&x).is_some_and(|&dx| dx > d) {
                let img = act(g, w, a)?;
                if let Some(t) = window.index_of(&img.reflection) {
                    match signs[t] {
                        None => signs[t] = Some(img.sign),
                        Some(s) if s != img.sign => {
                            return Err(Error::Invalid("family does not define a quasi-positive system".into()))
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    if signs.iter().any(Option::is_none) {
        return Err(Error::WindowExhausted("constructed system does not cover the window".into()));
    }
    QuasiPositiveSystem::from_signs(window.clone(), signs.into_iter().map(Option::unwrap).collect())
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    pub basis: bool,
    pub generates: bool,
    pub pairs_ok: bool,
    pub rank_ok: bool,
    pub failures: Vec<String>,
    /// The positive system with `Delta` as simple roots, when `basis`.
    pub system: Option<QuasiPositiveSystem>,
    pub biclosed: Option<bool>,
    pub certainty: Certainty,
}

/// Cor abchar2 (finite rank): generation, pairwise dihedral checks and `|Delta| = |S|`;
/// when all hold the positive system is built and, given a table, checked for biclosedness.
pub fn is_abstract_root_basis(
    window: &Arc<Window>,
    delta: &[AbstractRoot],
    table: Option<&BetweennessTable>,
) -> Result<BasisReport> {
    let g = window.group();
    let mut failures = Vec::new();
    let refl: Vec<GroupElement> = delta.iter().map(|a| a.reflection.clone()).collect();
    let distinct: HashSet<&GroupElement> = refl.iter().collect();
    if distinct.len() != refl.len() {
        failures.push("repeated reflection in delta".into());
    }
    for r in &refl {
        if !g.is_reflection(r) {
            return Err(Error::Invalid(format!("{} is not a reflection", g.format(r))));
        }
    }
    let generates = if g.is_finite() {
        g.generates(&refl, usize::MAX, usize::MAX, DEFAULT_ELEMENT_CAP)?
    } else {
        let b = 2 * window.bound().max(1) + 2;
        g.generates(&refl, b, b, DEFAULT_ELEMENT_CAP)?
    };
    if !generates {
        failures.push("reflections do not generate W".into());
    }
    let mut pairs_ok = true;
    for (i, a) in delta.iter().enumerate() {
        for b in &delta[i + 1..] {
            if a.reflection != b.reflection && !dihedral_basis_check(window, a, b)? {
                pairs_ok = false;
                failures.push(format!(
                    "pair {{{},{}}} fails dihedral basis check",
                    fmt_root(window, a),
                    fmt_root(window, b)
                ));
            }
        }
    }
    let rank_ok = delta.len() == g.rank();
    if !rank_ok {
        failures.push(format!("|delta| = {} but |S| = {}", delta.len(), g.rank()));
    }
    let mut system = None;
    let mut biclosed = None;
    if failures.is_empty() {
        let q = system_from_family(window, delta)?;
        let mut simple: Vec<AbstractRoot> = q.simple_roots().roots.iter().map(|&t| q.root(t)).collect();
        simple.sort();
        let mut want = delta.to_vec();
        want.sort();
        if simple != want {
            failures.push("constructed system has different simple roots".into());
        }
        if let Some(table) = table {
            let b = table.is_biclosed_system(&q);
            if !b {
                failures.push("constructed system not biclosed".into());
            }
            biclosed = Some(b);
        }
        system = Some(q);
    }
    let certainty = if g.is_finite() && window.is_exact() { Certainty::Exact } else { Certainty::WindowOnly };
    Ok(BasisReport { basis: failures.is_empty(), generates, pairs_ok, rank_ok, failures, system, biclosed, certainty })
}
