use super::{CoxeterGroup, GroupElement};
use crate::error::{Error, Result};

/// One rank-two move of a [`ConjugacyChain`]: `w a_prev w^{-1} = a_next`, with
/// `w` in the parabolic subgroup generated by `pair` and `l(w a_prev) = l(w) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub pair: [usize; 2],
    pub element: GroupElement,
    pub from: usize,
    pub to: usize,
}

/// Factorisation `w = w_k ... w_1` of a conjugator between two simple reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyChain {
    pub start: usize,
    pub end: usize,
    pub steps: Vec<ChainStep>,
}

impl ConjugacyChain {
    pub fn k(&self) -> usize {
        self.steps.len()
    }

    /// Checks every chain invariant against `w`.
    pub fn verify(&self, g: &CoxeterGroup, w: &GroupElement) -> Result<bool> {
        let mut a = self.start;
        let mut product = g.identity();
        let mut total = 0;
        for step in &self.steps {
            if step.from != a || !step.pair.contains(&step.from) || !step.pair.contains(&step.to) {
                return Ok(false);
            }
            if step.element.word.iter().any(|x| !step.pair.contains(x)) {
                return Ok(false);
            }
            let ga = g.generator(a)?;
            if g.conjugate(&step.element, &ga)? != g.generator(step.to)? {
                return Ok(false);
            }
            if g.multiply(&step.element, &ga)?.len() != step.element.len() + 1 {
                return Ok(false);
            }
            total += step.element.len();
            product = g.multiply(&step.element, &product)?;
            a = step.to;
        }
        Ok(a == self.end && &product == w && total == w.len())
    }
}

impl CoxeterGroup {
    /// Splits a conjugator `w` with `w r w^{-1} = s`, `l(wr) = l(w) + 1` into
    /// rank-two moves.
    ///
    /// Each round picks a right descent `b` of the remaining element `x`, writes
    /// `x = x' y` with `y` in `W_{a,b}` and `x'` minimal in its `W_{a,b}` coset; then
    /// `y a y^{-1}` is again a generator of the pair.
    pub fn simple_conjugacy_witness(&self, w: &GroupElement, r: usize, s: usize) -> Result<ConjugacyChain> {
        self.check(w)?;
        let gr = self.generator(r)?;
        let gs = self.generator(s)?;
        if self.conjugate(w, &gr)? != gs {
            return Err(Error::Precondition("w r w^-1 != s".into()));
        }
        if self.multiply(w, &gr)?.len() != w.len() + 1 {
            return Err(Error::Precondition("l(w r) != l(w) + 1".into()));
        }
        let mut steps = Vec::new();
        let mut cur = w.clone();
        let mut a = r;
        while !cur.is_identity() {
            let b = *self
                .right_descents(&cur)
                .first()
                .expect("non-identity element has a right descent");
            if b == a {
                return Err(Error::Precondition("l(w r) != l(w) + 1".into()));
            }
            let pair = if a < b { [a, b] } else { [b, a] };
            let mut x = cur.clone();
            let mut y = self.identity();
            'peel: loop {
                for &t in &pair {
                    let xt = self.mul_gen_right(&x, t);
                    if xt.len() < x.len() {
                        x = xt;
                        y = self.mul_gen_left(t, &y);
                        continue 'peel;
                    }
                }
                break;
            }
            let image = self.conjugate(&y, &self.generator(a)?)?;
            let to = pair
                .into_iter()
                .find(|&p| image.word == [p])
                .ok_or_else(|| Error::Precondition("rank-two move left the pair".into()))?;
            steps.push(ChainStep { pair, element: y, from: a, to });
            a = to;
            cur = x;
        }
        Ok(ConjugacyChain { start: r, end: s, steps })
    }
}
