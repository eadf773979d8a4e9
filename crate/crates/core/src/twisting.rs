//! Diagram twists (ss:3.16) and the sign solver of Cor 3.18.

use std::collections::HashSet;

use serde::Serialize;

use crate::abstract_roots::{AbstractRoot, Sign};
use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, CoxeterMatrix, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Block {
    J,
    K,
    L,
    M,
}

/// A partition `S = J u K u L u M` of the generators of `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistSpec {
    pub base: CoxeterMatrix,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    pub m: Vec<usize>,
}

impl TwistSpec {
    pub fn from_names(base: CoxeterMatrix, j: &[&str], k: &[&str], l: &[&str], m: &[&str]) -> Result<Self> {
        let idx = |v: &[&str]| -> Result<Vec<usize>> {
            v.iter()
                .map(|n| base.index_of(n).ok_or_else(|| Error::UnknownGenerator(n.to_string())))
                .collect()
        };
        let (j, k, l, m) = (idx(j)?, idx(k)?, idx(l)?, idx(m)?);
        Ok(Self { base, j, k, l, m })
    }

    /// Block of each generator; `Err` if the blocks do not partition `S`.
    pub fn blocks(&self) -> Result<Vec<Block>> {
        let mut out: Vec<Option<Block>> = vec![None; self.base.rank()];
        for (b, part) in [(Block::J, &self.j), (Block::K, &self.k), (Block::L, &self.l), (Block::M, &self.m)] {
            for &s in part {
                let slot = out
                    .get_mut(s)
                    .ok_or(Error::IndexOutOfRange { index: s, rank: self.base.rank() })?;
                if slot.is_some() {
                    return Err(Error::Invalid(format!("generator {} in two blocks", self.base.names()[s])));
                }
                *slot = Some(b);
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(s, b)| b.ok_or_else(|| Error::Invalid(format!("generator {} in no block", self.base.names()[s]))))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistReport {
    pub valid: bool,
    pub problems: Vec<String>,
    pub w_k: Option<GroupElement>,
}

/// Longest element of the parabolic subgroup `W_K`.
pub fn longest_element(g: &CoxeterGroup, k: &[usize]) -> Result<GroupElement> {
    if let Some(&s) = k.iter().find(|&&s| s >= g.rank()) {
        return Err(Error::IndexOutOfRange { index: s, rank: g.rank() });
    }
    if !k.is_empty() && !g.matrix().submatrix(k)?.is_finite_type() {
        return Err(Error::Precondition("W_K is infinite".into()));
    }
    let mut w = g.identity();
    while let Some(&s) = k.iter().find(|&&s| !g.right_descents(&w).contains(&s)) {
        w = g.mul_gen_right(&w, s);
    }
    Ok(w)
}

pub fn validate_twist(spec: &TwistSpec) -> Result<TwistReport> {
    let g = CoxeterGroup::new(spec.base.clone());
    let mut problems = Vec::new();
    if let Err(e) = spec.blocks() {
        problems.push(e.to_string());
        return Ok(TwistReport { valid: false, problems, w_k: None });
    }
    let names = spec.base.names();
    let w_k = match longest_element(&g, &spec.k) {
        Ok(w) => Some(w),
        Err(Error::Precondition(_)) => {
            problems.push("W_K is infinite".into());
            None
        }
        Err(e) => return Err(e),
    };
    for &s in &spec.m {
        for &r in &spec.j {
            if spec.base.order(s, r).is_some() {
                problems.push(format!("m({},{}) must be infinite for {} in M", names[s], names[r], names[s]));
            }
        }
    }
    for &r in &spec.l {
        for &s in &spec.k {
            if spec.base.order(r, s) != Some(2) {
                problems.push(format!("m({},{}) must be 2 for L x K", names[r], names[s]));
            }
        }
    }
    Ok(TwistReport { valid: problems.is_empty(), problems, w_k })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistResult {
    pub group: CoxeterGroup,
    pub blocks: Vec<Block>,
    /// `S'` in the generator order of the base; entries in `J` are replaced by `w_K r w_K`.
    pub generators: Vec<GroupElement>,
    /// Coxeter matrix of `(W, S')`; `J` generators are renamed with a trailing `'`.
    pub matrix: CoxeterMatrix,
    pub w_k: GroupElement,
}

impl TwistResult {
    /// `w_K r w_K` spelled out for `r` in `J`, else the generator name.
    pub fn expression(&self, i: usize) -> String {
        if self.blocks[i] != Block::J {
            return self.group.matrix().names()[i].clone();
        }
        let wk = self.w_k.word();
        let word: Vec<usize> = wk.iter().copied().chain([i]).chain(wk.iter().rev().copied()).collect();
        self.group.format_word(&word)
    }

    /// Pairs `(r, eps_r)` as abstract roots of `W`.
    pub fn family(&self, signs: &[Sign]) -> Vec<AbstractRoot> {
        self.generators.iter().zip(signs).map(|(r, &e)| AbstractRoot::new(r.clone(), e)).collect()
    }
}

/// Builds `S'` and its Coxeter matrix. `w_K` conjugates `J'` back to `J` and permutes `K`,
/// so `m'(r', s) = m(r, w_K s w_K)` for `s` in `K`.
pub fn apply_twist(spec: &TwistSpec) -> Result<TwistResult> {
    let report = validate_twist(spec)?;
    if !report.valid {
        return Err(Error::Precondition(format!("invalid twist: {}", report.problems.join("; "))));
    }
    let g = CoxeterGroup::new(spec.base.clone());
    let blocks = spec.blocks()?;
    let w_k = report.w_k.expect("valid twist has w_K");
    let n = g.rank();
    let generators: Vec<GroupElement> = (0..n)
        .map(|s| {
            let x = g.generator(s)?;
            if blocks[s] == Block::J { g.conjugate(&w_k, &x) } else { Ok(x) }
        })
        .collect::<Result<_>>()?;
    // image of each generator index under conjugation by w_K, for s in K
    let perm: Vec<usize> = (0..n)
        .map(|s| {
            if blocks[s] != Block::K {
                return Ok(s);
            }
            let y = g.conjugate(&w_k, &g.generator(s)?)?;
            Ok(y.word()[0])
        })
        .collect::<Result<_>>()?;
    let is_j = |s: usize| blocks[s] == Block::J;
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|s| {
                    let (a, b) = match (is_j(r), is_j(s)) {
                        (true, false) => (r, perm[s]),
                        (false, true) => (perm[r], s),
                        _ => (r, s),
                    };
                    if a == b { 1 } else { g.matrix().order(a, b).unwrap_or(0) }
                })
                .collect()
        })
        .collect();
    let names = spec
        .base
        .names()
        .iter()
        .enumerate()
        .map(|(s, nm)| if is_j(s) { format!("{nm}'") } else { nm.clone() })
        .collect();
    let matrix = CoxeterMatrix::new(names, rows)?;
    Ok(TwistResult { group: g, blocks, generators, matrix, w_k })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignSolution {
    pub feasible: bool,
    /// One sign per element of `S'` when feasible.
    pub signs: Option<Vec<Sign>>,
}

struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Records `eps_x * eps_y = (-1)^odd`; false on contradiction.
    fn union(&mut self, x: usize, y: usize, odd: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == odd;
        }
        self.parent[rx] = ry;
        self.parity[rx] = px ^ py ^ odd;
        true
    }
}

/// Cor 3.18 constraints on pairs with odd finite `m'`: equal signs within `K u L u M`,
/// within `J'`, and across `J' x L`; opposite signs across `J' x K`.
pub fn twist_sign_solve(spec: &TwistSpec) -> Result<SignSolution> {
    let tw = apply_twist(spec)?;
    let n = tw.matrix.rank();
    let mut dsu = ParityDsu::new(n);
    for r in 0..n {
        for s in r + 1..n {
            let Some(m) = tw.matrix.order(r, s) else { continue };
            if m % 2 == 0 {
                continue;
            }
            let flip = matches!(
                (tw.blocks[r], tw.blocks[s]),
                (Block::J, Block::K) | (Block::K, Block::J)
            );
            if !dsu.union(r, s, flip) {
                return Ok(SignSolution { feasible: false, signs: None });
            }
        }
    }
    // each component is anchored at +1 on its first generator outside J'
    let mut anchored = HashSet::new();
    let mut root_sign = vec![Sign::Pos; n];
    for s in (0..n).filter(|&s| tw.blocks[s] != Block::J).chain(0..n) {
        let (root, p) = dsu.find(s);
        if anchored.insert(root) {
            root_sign[root] = if p { Sign::Neg } else { Sign::Pos };
        }
    }
    let signs = (0..n)
        .map(|s| {
            let (root, p) = dsu.find(s);
            if p { -root_sign[root] } else { root_sign[root] }
        })
        .collect();
    Ok(SignSolution { feasible: true, signs: Some(signs) })
}

/// The two graphs of Example 3.19 with their twist partitions.
pub fn example_319(second: bool) -> TwistSpec {
    if !second {
        // generators r, s, t, u
        let base = CoxeterMatrix::new(
            ["r", "s", "t", "u"].map(String::from).to_vec(),
            vec![vec![1, 3, 0, 0], vec![3, 1, 3, 0], vec![0, 3, 1, 3], vec![0, 0, 3, 1]],
        )
        .expect("static matrix");
        TwistSpec::from_names(base, &["r"], &["s", "t"], &[], &["u"]).expect("static spec")
    } else {
        let base = CoxeterMatrix::new(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            vec![vec![1, 2, 3, 3], vec![2, 1, 3, 3], vec![3, 3, 1, 0], vec![3, 3, 0, 1]],
        )
        .expect("static matrix");
        TwistSpec::from_names(base, &["d"], &["a"], &["b"], &["c"]).expect("static spec")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abstract_roots::{verify_simple_family, Window};
    use crate::exec::Exec;

    #[test]
    fn longest_elements() {
        let g = CoxeterGroup::new(example_319(false).base);
        assert_eq!(g.format(&longest_element(&g, &[1, 2]).unwrap()), "sts");
        let g2 = CoxeterGroup::new(example_319(true).base);
        assert_eq!(g2.format(&longest_element(&g2, &[0]).unwrap()), "a");
        let b2 = CoxeterGroup::new(CoxeterMatrix::from_type("B2").unwrap().with_names(&["r", "s"]).unwrap());
        assert_eq!(b2.format(&longest_element(&b2, &[0, 1]).unwrap()), "rsrs");
        assert!(longest_element(&g, &[0, 2]).is_err());
    }

    #[test]
    fn validation() {
        let a = validate_twist(&example_319(false)).unwrap();
        assert!(a.valid, "{:?}", a.problems);
        let b = validate_twist(&example_319(true)).unwrap();
        assert!(b.valid, "{:?}", b.problems);
        let mut bad = example_319(false);
        bad.k = vec![0, 2];
        bad.j = vec![1];
        assert!(!validate_twist(&bad).unwrap().valid);
        let mut missing = example_319(false);
        missing.m.clear();
        assert!(!validate_twist(&missing).unwrap().valid);
    }

    #[test]
    fn example_319_twists() {
        let a = apply_twist(&example_319(false)).unwrap();
        assert_eq!(a.generators[0], a.group.parse("stsrsts").unwrap());
        assert_eq!(a.expression(0), "stsrsts");
        assert_eq!(a.matrix.order(0, 1), None);
        assert_eq!(a.matrix.order(0, 2), Some(3));
        assert_eq!(a.matrix.order(0, 3), None);
        assert_eq!(a.matrix.names()[0], "r'");
        let b = apply_twist(&example_319(true)).unwrap();
        assert_eq!(b.generators[3], b.group.parse("ada").unwrap());
        assert_eq!(b.expression(3), "ada");
        for tw in [&a, &b] {
            let g = &tw.group;
            for r in 0..4 {
                for s in r + 1..4 {
                    let x = g.multiply(&tw.generators[r], &tw.generators[s]).unwrap();
                    let got = g.element_order(&x, 7).map(|o| o as u32);
                    let want = tw.matrix.order(r, s).filter(|&m| m <= 6);
                    assert_eq!(got, want, "pair {r} {s}");
                }
            }
            assert!(g.generates(&tw.generators, 8, 24, 100_000).unwrap());
        }
    }

    #[test]
    fn identity_twist() {
        let base = CoxeterMatrix::from_type("B3").unwrap();
        let spec = TwistSpec { base: base.clone(), j: vec![], k: vec![0, 1], l: vec![2], m: vec![] };
        let spec = TwistSpec { l: vec![], m: vec![2], ..spec };
        let t = apply_twist(&spec).unwrap();
        assert_eq!(t.matrix, base);
        assert_eq!(t.generators, t.group.generators());
    }

    #[test]
    fn sign_solutions() {
        let a = twist_sign_solve(&example_319(false)).unwrap();
        assert_eq!(a.signs, Some(vec![Sign::Neg, Sign::Pos, Sign::Pos, Sign::Pos]));
        let tw = apply_twist(&example_319(false)).unwrap();
        let w = Window::new(&tw.group, 7, 100_000, Exec::default()).unwrap();
        assert!(verify_simple_family(&w, &tw.family(a.signs.as_ref().unwrap())).unwrap());
        let flipped: Vec<Sign> = a.signs.unwrap().into_iter().map(|s| -s).collect();
        assert!(verify_simple_family(&w, &tw.family(&flipped)).unwrap());
        let b = twist_sign_solve(&example_319(true)).unwrap();
        assert!(!b.feasible && b.signs.is_none());
        let even = TwistSpec {
            base: CoxeterMatrix::from_type("B2").unwrap(),
            j: vec![],
            k: vec![],
            l: vec![],
            m: vec![0, 1],
        };
        assert_eq!(twist_sign_solve(&even).unwrap().signs, Some(vec![Sign::Pos, Sign::Pos]));
    }
}
