//! Coxeter matrices and group elements in ShortLex normal form.
//!
//! The word problem is solved geometrically in the standard reflection
//! representation: `s` is a left descent of `w` iff `w^{-1}(alpha_s)` is negative.

mod conjugacy;
mod element;
mod exact;
mod matrix;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

pub use conjugacy::{ChainStep, ConjugacyChain};
pub use element::GroupElement;
pub use matrix::CoxeterMatrix;
pub(crate) use matrix::cholesky;

use crate::error::{Error, Result};
use crate::exec::Exec;

#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    // cartan[u * n + s] = <alpha_u, coroot_s> = -2 cos(pi / m_us)
    cartan: Vec<f64>,
    // f64 rounding stays bounded only for finite and affine components
    semidefinite: bool,
    exact: Arc<OnceLock<exact::ExactRing>>,
    id: u64,
}

impl PartialEq for CoxeterGroup {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl CoxeterGroup {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let mut cartan = vec![0.0; n * n];
        for u in 0..n {
            for s in 0..n {
                cartan[u * n + s] = match matrix.order(u, s) {
                    None => -2.0,
                    Some(1) => 2.0,
                    Some(m) => -2.0 * (std::f64::consts::PI / m as f64).cos(),
                };
            }
        }
        let id = matrix.fingerprint();
        let semidefinite = matrix.is_semidefinite();
        Self { matrix, cartan, semidefinite, exact: Arc::default(), id }
    }

    pub fn from_type(ty: &str) -> Result<Self> {
        Ok(Self::new(CoxeterMatrix::from_type(ty)?))
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn is_finite(&self) -> bool {
        self.matrix.is_finite_type()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { word: Vec::new(), group: self.id }
    }

    pub fn generator(&self, s: usize) -> Result<GroupElement> {
        self.check_index(s)?;
        Ok(GroupElement { word: vec![s], group: self.id })
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|s| GroupElement { word: vec![s], group: self.id }).collect()
    }

    fn check_index(&self, s: usize) -> Result<()> {
        if s >= self.rank() {
            return Err(Error::IndexOutOfRange { index: s, rank: self.rank() });
        }
        Ok(())
    }

    pub(crate) fn check(&self, x: &GroupElement) -> Result<()> {
        if x.group != self.id {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    fn exact(&self) -> &exact::ExactRing {
        self.exact.get_or_init(|| exact::ExactRing::new(&self.matrix))
    }

    // Column-major n x n matrix of the action of (s_1 ... s_k)^{-1} on the simple roots.
    fn inverse_action(&self, word: &[usize]) -> Vec<f64> {
        let n = self.rank();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 1.0;
        }
        for &s in word {
            // left multiplication by s_s applied to each column
            for col in m.chunks_mut(n) {
                let p: f64 = (0..n).map(|u| col[u] * self.cartan[u * n + s]).sum();
                col[s] -= p;
            }
        }
        m
    }

    // Nonzero root coordinates are at least 1, so a root's coordinate sum is >= 1 or <= -1.
    fn negative_column(&self, m: &[f64], s: usize) -> bool {
        let n = self.rank();
        m[s * n..s * n + n].iter().sum::<f64>() < -0.5
    }

    // m <- m * s_s, i.e. w^{-1} <- w^{-1} s.
    fn right_mul_action(&self, m: &mut [f64], s: usize) {
        let n = self.rank();
        let col_s: Vec<f64> = m[s * n..s * n + n].to_vec();
        for t in 0..n {
            let a = if t == s { 2.0 } else { self.cartan[t * n + s] };
            if a != 0.0 {
                for (x, c) in m[t * n..t * n + n].iter_mut().zip(&col_s) {
                    *x -= a * c;
                }
            }
        }
    }

    fn float_normal_form(&self, word: &[usize]) -> Vec<usize> {
        let n = self.rank();
        let mut m = self.inverse_action(word);
        let mut out = Vec::new();
        while out.len() <= word.len() {
            match (0..n).find(|&s| self.negative_column(&m, s)) {
                Some(s) => {
                    out.push(s);
                    self.right_mul_action(&mut m, s);
                }
                None => break,
            }
        }
        out
    }

    fn reduce(&self, word: &[usize]) -> Vec<usize> {
        if self.semidefinite {
            self.float_normal_form(word)
        } else {
            self.exact().normal_form(word)
        }
    }

    // Left descents of the element spelled by `word`.
    fn descents_of_word(&self, word: &[usize]) -> Vec<usize> {
        if self.semidefinite {
            let m = self.inverse_action(word);
            (0..self.rank()).filter(|&s| self.negative_column(&m, s)).collect()
        } else {
            self.exact().left_descents(word)
        }
    }

    /// ShortLex normal form of an arbitrary word.
    pub fn normalize(&self, word: &[usize]) -> Result<GroupElement> {
        for &s in word {
            self.check_index(s)?;
        }
        Ok(self.normalize_unchecked(word))
    }

    pub(crate) fn normalize_unchecked(&self, word: &[usize]) -> GroupElement {
        GroupElement { word: self.reduce(word), group: self.id }
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        let mut w = x.word.clone();
        w.extend_from_slice(&y.word);
        Ok(self.normalize_unchecked(&w))
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        let w: Vec<usize> = x.word.iter().rev().copied().collect();
        self.normalize_unchecked(&w)
    }

    /// `w x w^{-1}`.
    pub fn conjugate(&self, w: &GroupElement, x: &GroupElement) -> Result<GroupElement> {
        self.check(w)?;
        self.check(x)?;
        let mut word = w.word.clone();
        word.extend_from_slice(&x.word);
        word.extend(w.word.iter().rev());
        Ok(self.normalize_unchecked(&word))
    }

    pub(crate) fn mul_gen_left(&self, s: usize, x: &GroupElement) -> GroupElement {
        let mut w = Vec::with_capacity(x.len() + 1);
        w.push(s);
        w.extend_from_slice(&x.word);
        self.normalize_unchecked(&w)
    }

    pub(crate) fn mul_gen_right(&self, x: &GroupElement, s: usize) -> GroupElement {
        let mut w = x.word.clone();
        w.push(s);
        self.normalize_unchecked(&w)
    }

    /// `{s : l(s w) < l(w)}`, ascending.
    pub fn left_descents(&self, w: &GroupElement) -> Vec<usize> {
        self.descents_of_word(&w.word)
    }

    /// `{s : l(w s) < l(w)}`, ascending.
    pub fn right_descents(&self, w: &GroupElement) -> Vec<usize> {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.descents_of_word(&rev)
    }

    /// All elements of length at most `max_len`, ShortLex sorted (hence grouped by length).
    pub fn enumerate(&self, max_len: usize, cap: usize, exec: Exec) -> Result<Vec<GroupElement>> {
        let mut all = vec![self.identity()];
        let mut level = vec![self.identity()];
        let mut len = 0;
        while len < max_len && !level.is_empty() {
            let next: Vec<Vec<GroupElement>> = exec.map(&level, |w| {
                let desc = self.left_descents(w);
                (0..self.rank())
                    .filter(|s| !desc.contains(s))
                    .map(|s| self.mul_gen_left(s, w))
                    .collect()
            });
            let set: BTreeSet<GroupElement> = next.into_iter().flatten().collect();
            level = set.into_iter().collect();
            all.extend(level.iter().cloned());
            if all.len() > cap {
                return Err(Error::ResourceCap { what: "group elements".into(), cap });
            }
            len += 1;
        }
        Ok(all)
    }

    /// The whole group; fails for infinite groups.
    pub fn enumerate_all(&self, cap: usize, exec: Exec) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::Precondition("group is infinite".into()));
        }
        self.enumerate(usize::MAX, cap, exec)
    }

    /// Connected components of the Coxeter graph (edges where `m >= 3` or infinite).
    pub fn irreducible_components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.matrix.order(i, j) != Some(2) {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a.max(b)] = a.min(b);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut comp, i);
            if root_of[r] == usize::MAX {
                root_of[r] = out.len();
                out.push(Vec::new());
            }
            out[root_of[r]].push(i);
        }
        out
    }

    /// Order of `x`, or `None` if it exceeds `cap`.
    pub fn element_order(&self, x: &GroupElement, cap: usize) -> Option<usize> {
        let mut p = x.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = self.normalize_unchecked(&[p.word.as_slice(), x.word.as_slice()].concat());
        }
        None
    }

    /// Order of `r t` for reflections `r != t`, `None` when infinite.
    ///
    /// `<r, t>` is finite iff `|B(beta_r, beta_t)| < 1`; the order is then read off
    /// the angle between the roots and confirmed by multiplication.
    pub fn reflection_product_order(&self, r: &GroupElement, t: &GroupElement) -> Result<Option<usize>> {
        self.check(r)?;
        self.check(t)?;
        let not_reflection = || Error::Precondition("reflection_product_order needs two distinct reflections".into());
        let (wr, sr) = self.reflection_witness(r).ok_or_else(not_reflection)?;
        let (wt, st) = self.reflection_witness(t).ok_or_else(not_reflection)?;
        if r == t {
            return Err(not_reflection());
        }
        let ring = self.exact();
        let (finite, b) = ring.pairing(&ring.root(&wr.word, sr), &ring.root(&wt.word, st));
        if !finite {
            return Ok(None);
        }
        let x = self.multiply(r, t)?;
        let phi = b.clamp(-1.0, 1.0).acos() / std::f64::consts::PI;
        for m in 2..=1000usize {
            let k = phi * m as f64;
            if (k - k.round()).abs() < 1e-6 {
                let mut p = self.identity();
                for _ in 0..m {
                    p = self.multiply(&p, &x)?;
                }
                if p.is_identity() {
                    return Ok(Some(m));
                }
            }
        }
        Ok(self.element_order(&x, 1000))
    }

    /// Returns `(w, s)` with `x = w s w^{-1}` and `l(x) = 2 l(w) + 1` when `x` is a reflection.
    pub fn reflection_witness(&self, x: &GroupElement) -> Option<(GroupElement, usize)> {
        let mut cur = x.clone();
        let mut prefix = Vec::new();
        while cur.len() > 1 {
            let s = cur.word[0];
            let next = self.normalize_unchecked(&[&[s], cur.word.as_slice(), &[s]].concat());
            if next.len() + 2 != cur.len() {
                return None;
            }
            prefix.push(s);
            cur = next;
        }
        if cur.len() != 1 {
            return None;
        }
        Some((self.normalize_unchecked(&prefix), cur.word[0]))
    }

    pub fn is_reflection(&self, x: &GroupElement) -> bool {
        self.reflection_witness(x).is_some()
    }

    /// All reflections of length at most `max_len`, ShortLex sorted.
    pub fn reflections(&self, max_len: usize, cap: usize, exec: Exec) -> Result<Vec<GroupElement>> {
        let half = max_len.saturating_sub(1) / 2;
        let ws = self.enumerate(half, cap, exec)?;
        let found: Vec<Vec<GroupElement>> = exec.map(&ws, |w| {
            (0..self.rank())
                .filter_map(|s| {
                    let mut word = w.word.clone();
                    word.push(s);
                    word.extend(w.word.iter().rev());
                    let t = self.normalize_unchecked(&word);
                    (t.len() <= max_len).then_some(t)
                })
                .collect()
        });
        let set: BTreeSet<GroupElement> = found.into_iter().flatten().collect();
        Ok(set.into_iter().collect())
    }

    /// `N(w) = {t : l(t w) < l(w)}`, read off a reduced word; ShortLex sorted.
    pub fn inversion_set(&self, w: &GroupElement) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = (0..w.len())
            .map(|i| {
                let mut word = w.word[..=i].to_vec();
                word.extend(w.word[..i].iter().rev());
                self.normalize_unchecked(&word)
            })
            .collect();
        out.sort();
        out
    }

    /// Whether `t` lies in `N(w)`, i.e. `l(t w) < l(w)`.
    pub fn in_inversion_set(&self, t: &GroupElement, w: &GroupElement) -> bool {
        let tw = self.normalize_unchecked(&[t.word.as_slice(), w.word.as_slice()].concat());
        tw.len() < w.len()
    }

    /// Whether every generator lies in the subgroup generated by `gens`, searching
    /// subgroup elements up to `bound` letters in `gens` and up to `max_len` in `S`.
    pub fn generates(&self, gens: &[GroupElement], bound: usize, max_len: usize, cap: usize) -> Result<bool> {
        let mut missing: BTreeSet<usize> = (0..self.rank()).collect();
        let mut seen = std::collections::HashSet::new();
        let mut level = vec![self.identity()];
        seen.insert(self.identity());
        for _ in 0..bound {
            let mut next = Vec::new();
            for x in &level {
                for g in gens {
                    let y = self.multiply(x, g)?;
                    if y.len() <= max_len && seen.insert(y.clone()) {
                        if y.len() == 1 {
                            missing.remove(&y.word[0]);
                        }
                        next.push(y);
                    }
                }
            }
            if missing.is_empty() {
                return Ok(true);
            }
            if seen.len() > cap {
                return Err(Error::ResourceCap { what: "subgroup elements".into(), cap });
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        Ok(missing.is_empty())
    }

    /// Parses a word: single-character names may be juxtaposed; otherwise names are
    /// separated by `.`. `e` (when not a generator name) and the empty string denote the identity.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || ((text == "e" || text == "1") && self.matrix.index_of(text).is_none()) {
            return Ok(Vec::new());
        }
        let lookup = |name: &str| self.matrix.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()));
        if text.contains('.') || !self.single_char_names() {
            text.split('.').map(|p| lookup(p.trim())).collect()
        } else {
            text.chars().map(|c| lookup(&c.to_string())).collect()
        }
    }

    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        let w = self.parse_word(text)?;
        self.normalize(&w)
    }

    fn single_char_names(&self) -> bool {
        self.matrix.names().iter().all(|n| n.chars().count() == 1)
    }

    pub fn format(&self, x: &GroupElement) -> String {
        self.format_word(&x.word)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return if self.matrix.index_of("e").is_none() { "e".into() } else { "1".into() };
        }
        let names = self.matrix.names();
        let sep = if self.single_char_names() { "" } else { "." };
        word.iter().map(|&s| names[s].as_str()).collect::<Vec<_>>().join(sep)
    }
}
