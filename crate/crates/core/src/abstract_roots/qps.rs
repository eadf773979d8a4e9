use std::sync::Arc;

use serde::Serialize;

use super::window::Window;
use super::{AbstractRoot, Certainty, Sign};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::DEFAULT_ELEMENT_CAP;

/// One sign per window reflection: the system is `{(t, signs[t])}`.
#[derive(Clone, Debug)]
pub struct QuasiPositiveSystem {
    window: Arc<Window>,
    signs: Vec<Sign>,
}

impl PartialEq for QuasiPositiveSystem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.window, &other.window) && self.signs == other.signs
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimpleRoots {
    pub roots: Vec<usize>,
    pub certainty: Certainty,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generativity {
    pub generative: bool,
    pub simple_reflections: Vec<usize>,
    pub certainty: Certainty,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Compatibility {
    pub compatible: bool,
    /// `A = {s_a : a in Psi cap -Psi'}`.
    pub witness: Vec<usize>,
    /// Number of group elements on which the Prop 2.5(a) identity was checked.
    pub identity_checked: usize,
    pub identity_holds: bool,
}

impl QuasiPositiveSystem {
    /// The standard system `T x {1}`.
    pub fn standard(window: Arc<Window>) -> Self {
        let n = window.len();
        Self { window, signs: vec![Sign::Pos; n] }
    }

    pub fn from_signs(window: Arc<Window>, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != window.len() {
            return Err(Error::Invalid("one sign per window reflection required".into()));
        }
        Ok(Self { window, signs })
    }

    pub fn from_fn(window: Arc<Window>, f: impl Fn(&GroupElement) -> Sign) -> Self {
        let signs = window.reflections().iter().map(f).collect();
        Self { window, signs }
    }

    /// Explicit list of roots; must name every window reflection exactly once.
    pub fn from_roots(window: Arc<Window>, roots: &[AbstractRoot]) -> Result<Self> {
        let mut signs: Vec<Option<Sign>> = vec![None; window.len()];
        let g = window.group();
        for r in roots {
            let t = window.require(&r.reflection)?;
            if signs[t].replace(r.sign).is_some() {
                return Err(Error::Invalid(format!("reflection {} listed twice", g.format(&r.reflection))));
            }
        }
        let missing: Vec<String> = signs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(t, _)| g.format(window.reflection(t)))
            .collect();
        if !missing.is_empty() {
            return Err(Error::Invalid(format!("no sign given for {}", missing.join(", "))));
        }
        Ok(Self { window, signs: signs.into_iter().map(Option::unwrap).collect() })
    }

    /// `e * w(T x {1})`: the sign at `u` is `e * (-1)^[u in N(w)]`.
    pub fn conjugate(window: Arc<Window>, w: &GroupElement, eps: Sign) -> Result<Self> {
        let g = window.group().clone();
        g.check(w)?;
        Ok(Self::from_fn(window, |u| eps * Sign::from_bool_neg(g.in_inversion_set(u, w))))
    }

    /// Example 3.14: one sign per conjugacy class, classes ordered as in
    /// [`Window::conjugacy_classes`].
    pub fn class_signs(window: Arc<Window>, class_signs: &[Sign]) -> Result<Self> {
        let classes = window.conjugacy_classes();
        if classes.len() != class_signs.len() {
            return Err(Error::Invalid(format!(
                "expected {} class signs, got {}",
                classes.len(),
                class_signs.len()
            )));
        }
        let mut signs = vec![Sign::Pos; window.len()];
        for (c, &e) in classes.iter().zip(class_signs) {
            for &t in c {
                signs[t] = e;
            }
        }
        Ok(Self { window, signs })
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, t: usize) -> Sign {
        self.signs[t]
    }

    pub fn negated(&self) -> Self {
        Self { window: self.window.clone(), signs: self.signs.iter().map(|&s| -s).collect() }
    }

    pub fn roots(&self) -> Vec<AbstractRoot> {
        self.signs
            .iter()
            .enumerate()
            .map(|(t, &s)| AbstractRoot::new(self.window.reflection(t).clone(), s))
            .collect()
    }

    pub fn root(&self, t: usize) -> AbstractRoot {
        AbstractRoot::new(self.window.reflection(t).clone(), self.signs[t])
    }

    pub fn contains(&self, r: &AbstractRoot) -> Option<bool> {
        self.window.index_of(&r.reflection).map(|t| self.signs[t] == r.sign)
    }

    /// Window root ids of the members.
    pub fn root_ids(&self) -> Vec<usize> {
        self.signs.iter().enumerate().map(|(t, &s)| Window::root_id(t, s)).collect()
    }

    /// Reflections where the system is negative, i.e. `Psi cap -T_+`.
    pub fn negative_reflections(&self) -> Vec<usize> {
        (0..self.signs.len()).filter(|&t| self.signs[t].is_neg()).collect()
    }

    /// `a` in the system is simple iff `s_a` maps every other member into the system.
    pub fn simple_roots(&self) -> SimpleRoots {
        let w = &self.window;
        let n = w.len();
        let roots = (0..n)
            .filter(|&t| {
                (0..n).all(|u| {
                    if u == t {
                        return true;
                    }
                    match w.conj(t, u) {
                        Some(v) => {
                            let eta = Sign::from_bool_neg(w.flips(t, u));
                            self.signs[v] == eta * self.signs[u]
                        }
                        None => true,
                    }
                })
            })
            .collect();
        SimpleRoots { roots, certainty: w.certainty() }
    }

    /// Whether the simple reflections generate W.
    pub fn is_generative(&self) -> Result<Generativity> {
        let simple = self.simple_roots().roots;
        let g = self.window.group();
        let gens: Vec<GroupElement> = simple.iter().map(|&t| self.window.reflection(t).clone()).collect();
        let generative = if g.is_finite() {
            g.generates(&gens, usize::MAX, usize::MAX, DEFAULT_ELEMENT_CAP)?
        } else {
            let b = self.window.bound().max(1);
            g.generates(&gens, 2 * b, 2 * b, DEFAULT_ELEMENT_CAP)?
        };
        let certainty = if g.is_finite() && self.window.is_exact() { Certainty::Exact } else { Certainty::WindowOnly };
        Ok(Generativity { generative, simple_reflections: simple, certainty })
    }

    /// `N_Psi(w) = {s_a : a in Psi cap w(-Psi)}`.
    pub fn cocycle_of(&self, w: &GroupElement) -> Result<Vec<usize>> {
        let win = &self.window;
        let g = win.group();
        g.check(w)?;
        let wi = g.inverse(w);
        let mut out = Vec::new();
        for t in 0..win.len() {
            // w^{-1}(t, e) = (w^{-1} t w, eta e), eta = -1 iff t in N(w)
            let u = g.conjugate(&wi, win.reflection(t))?;
            let ui = win.index_of(&u).ok_or_else(|| {
                Error::WindowExhausted(format!("{} moves {} outside the window", g.format(w), g.format(win.reflection(t))))
            })?;
            let eta = Sign::from_bool_neg(g.in_inversion_set(win.reflection(t), w));
            if self.signs[ui] == -(eta * self.signs[t]) {
                out.push(t);
            }
        }
        Ok(out)
    }

    /// The image `w(Psi)` over the same window.
    pub fn act(&self, w: &GroupElement) -> Result<Self> {
        let win = &self.window;
        let g = win.group();
        let mut signs = vec![Sign::Pos; win.len()];
        let mut seen = vec![false; win.len()];
        for t in 0..win.len() {
            let img = super::act(g, w, &self.root(t))?;
            let i = win.require(&img.reflection)?;
            signs[i] = img.sign;
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::WindowExhausted("image does not cover the window".into()));
        }
        Ok(Self { window: win.clone(), signs })
    }

    /// Compatibility witness and a check of `N_Psi(x) + x A x^{-1} = N_Psi'(x) + A`.
    pub fn compatibility(&self, other: &Self, samples: &[GroupElement]) -> Result<Compatibility> {
        if !Arc::ptr_eq(&self.window, &other.window) && self.window.reflections() != other.window.reflections() {
            return Err(Error::Invalid("systems live on different windows".into()));
        }
        let win = &self.window;
        let g = win.group();
        let witness: Vec<usize> = (0..win.len()).filter(|&t| self.signs[t] != other.signs[t]).collect();
        let mut checked = 0;
        let mut holds = true;
        'sample: for x in samples {
            let (Ok(a), Ok(b)) = (self.cocycle_of(x), other.cocycle_of(x)) else { continue };
            let mut lhs = vec![false; win.len()];
            for t in a {
                lhs[t] ^= true;
            }
            for &t in &witness {
                match win.index_of(&g.conjugate(x, win.reflection(t))?) {
                    Some(i) => lhs[i] ^= true,
                    None => continue 'sample,
                }
            }
            let mut rhs = vec![false; win.len()];
            for t in b {
                rhs[t] ^= true;
            }
            for &t in &witness {
                rhs[t] ^= true;
            }
            checked += 1;
            holds &= lhs == rhs;
        }
        Ok(Compatibility { compatible: true, witness, identity_checked: checked, identity_holds: holds })
    }

    /// Theorem 5.4: `(w, e)` with `Psi = e w(T_+)`, found by peeling simple reflections
    /// off `A = {t : e Psi(t) = -1}`. `e = +1` whenever W is finite.
    pub fn find_conjugator(&self) -> Result<(GroupElement, Sign)> {
        let win = &self.window;
        let g = win.group();
        let candidates = if g.is_finite() { vec![Sign::Pos] } else { vec![Sign::Pos, Sign::Neg] };
        let mut best: Option<(GroupElement, Sign)> = None;
        let mut last_err = Error::Precondition("system is not conjugate to the standard one".into());
        for eps in candidates {
            match self.peel(eps) {
                Ok(w) => {
                    if best.as_ref().is_none_or(|(b, _)| w.len() < b.len()) {
                        best = Some((w, eps));
                    }
                }
                Err(e) => last_err = e,
            }
        }
        let (w, eps) = best.ok_or(last_err)?;
        if Self::conjugate(win.clone(), &w, eps)?.signs != self.signs {
            return Err(Error::Precondition("system is not conjugate to the standard one".into()));
        }
        Ok((w, eps))
    }

    fn peel(&self, eps: Sign) -> Result<GroupElement> {
        let win = &self.window;
        let g = win.group();
        let mut a: Vec<bool> = self.signs.iter().map(|&s| (eps * s).is_neg()).collect();
        let mut word = Vec::new();
        loop {
            let simple = (0..win.len()).find(|&t| a[t] && win.reflection(t).len() == 1);
            let Some(s) = simple else { break };
            let mut next = vec![false; win.len()];
            for u in 0..win.len() {
                if a[u] && u != s {
                    let v = win.conj(s, u).ok_or_else(|| Error::WindowExhausted("conjugator search left the window".into()))?;
                    next[v] = true;
                }
            }
            word.push(win.reflection(s).word()[0]);
            a = next;
            if word.len() > DEFAULT_ELEMENT_CAP {
                return Err(Error::ResourceCap { what: "conjugator length".into(), cap: DEFAULT_ELEMENT_CAP });
            }
        }
        if a.iter().any(|&x| x) {
            return Err(Error::Precondition("system is not conjugate to the standard one".into()));
        }
        g.normalize(&word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::group::{CoxeterGroup, CoxeterMatrix};

    fn b2() -> (CoxeterGroup, Arc<Window>) {
        let g = CoxeterGroup::new(CoxeterMatrix::from_type("B2").unwrap().with_names(&["r", "s"]).unwrap());
        let w = Arc::new(Window::full(&g, 1000, Exec::Sequential).unwrap());
        (g, w)
    }

    fn root(g: &CoxeterGroup, t: &str, s: i8) -> AbstractRoot {
        AbstractRoot::new(g.parse(t).unwrap(), Sign::try_from(s).unwrap())
    }

    fn paper(g: &CoxeterGroup, w: &Arc<Window>) -> QuasiPositiveSystem {
        let roots = [root(g, "s", 1), root(g, "srs", 1), root(g, "r", 1), root(g, "rsr", -1)];
        QuasiPositiveSystem::from_roots(w.clone(), &roots).unwrap()
    }

    fn names(g: &CoxeterGroup, q: &QuasiPositiveSystem, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&t| format!("({},{})", g.format(q.window().reflection(t)), q.sign(t))).collect()
    }

    #[test]
    fn simple_roots_examples() {
        let (g, w) = b2();
        let std = QuasiPositiveSystem::standard(w.clone());
        assert_eq!(names(&g, &std, &std.simple_roots().roots), vec!["(r,1)", "(s,1)"]);
        let p = paper(&g, &w);
        let s = p.simple_roots();
        assert_eq!(names(&g, &p, &s.roots), vec!["(s,1)", "(srs,1)"]);
        assert_eq!(s.certainty, Certainty::Exact);
        let cls = QuasiPositiveSystem::class_signs(w.clone(), &[Sign::Neg, Sign::Pos]).unwrap();
        assert_eq!(names(&g, &cls, &cls.simple_roots().roots), vec!["(r,-1)", "(s,1)"]);
    }

    #[test]
    fn generativity() {
        let (g, w) = b2();
        assert!(QuasiPositiveSystem::standard(w.clone()).is_generative().unwrap().generative);
        let gp = paper(&g, &w).is_generative().unwrap();
        assert!(gp.generative);
        assert_eq!(gp.simple_reflections.len(), 2);
    }

    #[test]
    fn cocycle_of_examples() {
        let (g, w) = b2();
        let std = QuasiPositiveSystem::standard(w.clone());
        let rs = g.parse("rs").unwrap();
        let got: Vec<String> = std.cocycle_of(&rs).unwrap().iter().map(|&t| g.format(w.reflection(t))).collect();
        assert_eq!(got, vec!["r", "rsr"]);
        let p = paper(&g, &w);
        let got: Vec<String> = p.cocycle_of(&g.parse("s").unwrap()).unwrap().iter().map(|&t| g.format(w.reflection(t))).collect();
        assert_eq!(got, vec!["s"]);
        assert!(p.cocycle_of(&g.identity()).unwrap().is_empty());
    }

    #[test]
    fn compatibility_examples() {
        let (g, w) = b2();
        let all = g.enumerate_all(100, Exec::Sequential).unwrap();
        let std = QuasiPositiveSystem::standard(w.clone());
        let c = std.compatibility(&std, &all).unwrap();
        assert!(c.compatible && c.witness.is_empty() && c.identity_holds && c.identity_checked == 8);
        let c = std.compatibility(&std.negated(), &all).unwrap();
        assert_eq!(c.witness.len(), 4);
        assert!(c.identity_holds);
        let c = std.compatibility(&paper(&g, &w), &all).unwrap();
        assert_eq!(c.witness.iter().map(|&t| g.format(w.reflection(t))).collect::<Vec<_>>(), vec!["rsr"]);
        assert!(c.identity_holds);
    }

    #[test]
    fn conjugator_examples() {
        let (g, w) = b2();
        let std = QuasiPositiveSystem::standard(w.clone());
        assert_eq!(std.find_conjugator().unwrap(), (g.identity(), Sign::Pos));
        assert_eq!(std.negated().find_conjugator().unwrap(), (g.parse("rsrs").unwrap(), Sign::Pos));
        let r = g.parse("r").unwrap();
        let q = QuasiPositiveSystem::conjugate(w.clone(), &r, Sign::Pos).unwrap();
        assert_eq!(q.find_conjugator().unwrap(), (r, Sign::Pos));
        assert!(paper(&g, &w).find_conjugator().is_err());
    }

    #[test]
    fn class_sign_on_a2() {
        let g = CoxeterGroup::from_type("A2").unwrap();
        let w = Arc::new(Window::full(&g, 100, Exec::Sequential).unwrap());
        let q = QuasiPositiveSystem::class_signs(w.clone(), &[Sign::Neg]).unwrap();
        assert_eq!(q, QuasiPositiveSystem::standard(w).negated());
    }

    #[test]
    fn from_roots_rejects_gaps_and_duplicates() {
        let (g, w) = b2();
        assert!(QuasiPositiveSystem::from_roots(w.clone(), &[root(&g, "s", 1)]).is_err());
        let dup = [root(&g, "s", 1), root(&g, "s", -1), root(&g, "r", 1), root(&g, "rsr", 1)];
        assert!(QuasiPositiveSystem::from_roots(w, &dup).is_err());
    }
}
