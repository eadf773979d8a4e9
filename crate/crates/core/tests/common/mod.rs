//! Independent oracles used by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rootforge::abstract_roots::{AbstractRoot, Sign};
use rootforge::{CoxeterGroup, CoxeterMatrix, GroupElement};

pub fn named(ty: &str, names: &[&str]) -> CoxeterGroup {
    CoxeterGroup::new(CoxeterMatrix::from_type(ty).unwrap().with_names(names).unwrap())
}

pub fn group(ty: &str) -> CoxeterGroup {
    CoxeterGroup::from_type(ty).unwrap()
}

/// Bruhat order by the subword property: `x <= y` iff `x` is the product of a subword
/// of one fixed reduced word of `y`.
pub fn subword_leq(g: &CoxeterGroup, x: &GroupElement, y: &GroupElement) -> bool {
    let word = y.word();
    (0u64..1 << word.len()).any(|mask| {
        let sub: Vec<usize> = (0..word.len()).filter(|&i| mask >> i & 1 == 1).map(|i| word[i]).collect();
        g.normalize(&sub).unwrap() == *x
    })
}

/// Cyclic angular position of a root of a rank-2 group in `0..2 * half`: positive roots are
/// `a_k` (alternating reflection word of length `2k+1` starting with generator 0) at `k` and
/// `b_k` (starting with generator 1) at `half - 1 - k`; negatives sit half a turn later.
/// For infinite dihedral groups `half` is any bound above the window's root count.
pub fn dihedral_position(r: &AbstractRoot, half: usize) -> usize {
    let w = r.reflection.word();
    let k = (w.len() - 1) / 2;
    let pos = if w[0] == 0 { k } else { half - 1 - k };
    if r.sign == Sign::Neg {
        pos + half
    } else {
        pos
    }
}

/// `[a, b]` of a rank-2 group from the cyclic order alone: the roots on the arc of less
/// than half a turn between `a` and `b`, restricted to `roots`.
pub fn dihedral_interval(
    roots: &[AbstractRoot],
    a: &AbstractRoot,
    b: &AbstractRoot,
    half: usize,
) -> BTreeSet<AbstractRoot> {
    let full = 2 * half;
    let (pa, pb) = (dihedral_position(a, half), dihedral_position(b, half));
    let d = (pb + full - pa) % full;
    let on_arc = |p: usize| -> bool {
        if d == 0 {
            p == pa
        } else if d == half {
            p == pa || p == pb
        } else if d < half {
            (p + full - pa) % full <= d
        } else {
            (pa + full - p) % full <= full - d
        }
    };
    roots.iter().filter(|r| on_arc(dihedral_position(r, half))).cloned().collect()
}

/// Finite `W` as permutations of the roots of its geometric representation, built by orbit
/// closure with plain floating point coordinates.
pub struct PermRep {
    pub roots: Vec<Vec<f64>>,
    pub gens: Vec<Vec<usize>>,
}

fn key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * 1e6).round() as i64).collect()
}

impl PermRep {
    pub fn new(m: &CoxeterMatrix) -> Self {
        let n = m.rank();
        let b: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match m.order(i, j) {
                        Some(1) => 1.0,
                        Some(k) => -(std::f64::consts::PI / k as f64).cos(),
                        None => -1.0,
                    })
                    .collect()
            })
            .collect();
        let reflect = |s: usize, v: &[f64]| -> Vec<f64> {
            let c: f64 = 2.0 * (0..n).map(|j| v[j] * b[j][s]).sum::<f64>();
            let mut out = v.to_vec();
            out[s] -= c;
            out
        };
        let mut roots: Vec<Vec<f64>> = Vec::new();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        for s in 0..n {
            for sign in [1.0, -1.0] {
                let v: Vec<f64> = (0..n).map(|j| if j == s { sign } else { 0.0 }).collect();
                index.insert(key(&v), roots.len());
                roots.push(v);
            }
        }
        let mut k = 0;
        while k < roots.len() {
            for s in 0..n {
                let v = reflect(s, &roots[k]);
                if !index.contains_key(&key(&v)) {
                    index.insert(key(&v), roots.len());
                    roots.push(v);
                }
            }
            k += 1;
            assert!(roots.len() < 100_000, "infinite group");
        }
        let gens = (0..n).map(|s| roots.iter().map(|v| index[&key(&reflect(s, v))]).collect()).collect();
        Self { roots, gens }
    }

    /// Permutation of `s_1 ... s_k`, acting as `s_1(s_2(...))`.
    pub fn perm(&self, word: &[usize]) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.roots.len()).collect();
        for &s in word.iter().rev() {
            p = p.iter().map(|&i| self.gens[s][i]).collect();
        }
        p
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.roots[i].iter().all(|&x| x >= -1e-9)
    }

    /// `l(w)` = number of positive roots sent negative by `w`.
    pub fn length(&self, word: &[usize]) -> usize {
        let p = self.perm(word);
        (0..self.roots.len()).filter(|&i| self.is_positive(i) && !self.is_positive(p[i])).count()
    }
}
