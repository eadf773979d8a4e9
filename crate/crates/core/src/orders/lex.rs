use std::cmp::Ordering;
use std::sync::Arc;

use crate::abstract_roots::{QuasiPositiveSystem, Sign, Window};
use crate::error::{Error, Result};
use crate::group::{cholesky, CoxeterGroup, GroupElement};
use crate::TOL;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Finite Coxeter group acting on `R^n` by orthogonal reflections in unit simple roots.
#[derive(Clone, Debug)]
pub struct OrthonormalRealization {
    group: CoxeterGroup,
    simple: Vec<Vec<f64>>,
}

impl OrthonormalRealization {
    pub fn new(group: &CoxeterGroup) -> Result<Self> {
        let simple = cholesky(&group.matrix().cosine_form())
            .ok_or_else(|| Error::Precondition("cosine form not positive definite".into()))?;
        Ok(Self { group: group.clone(), simple })
    }

    pub fn dim(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_root(&self, s: usize) -> &[f64] {
        &self.simple[s]
    }

    fn reflect(&self, s: usize, v: &mut [f64]) {
        let a = &self.simple[s];
        let c = 2.0 * dot(v, a);
        v.iter_mut().zip(a).for_each(|(x, y)| *x -= c * y);
    }

    /// `w(v)`.
    pub fn apply(&self, w: &GroupElement, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        for &s in w.word().iter().rev() {
            self.reflect(s, &mut out);
        }
        out
    }

    /// The positive unit root of the reflection `t`.
    pub fn root_of(&self, t: &GroupElement) -> Result<Vec<f64>> {
        let (w, s) = self
            .group
            .reflection_witness(t)
            .ok_or_else(|| Error::Invalid(format!("{} is not a reflection", self.group.format(t))))?;
        Ok(self.apply(&w, &self.simple[s]))
    }
}

/// Sign of `v` in the lexicographic order given by pairing with `family`.
fn lex_cmp(v: &[f64], family: &[Vec<f64>]) -> Ordering {
    for f in family {
        let x = dot(v, f);
        if x > TOL {
            return Ordering::Greater;
        }
        if x < -TOL {
            return Ordering::Less;
        }
    }
    Ordering::Equal
}

fn spans(family: &[Vec<f64>], dim: usize) -> bool {
    let mut rows: Vec<Vec<f64>> = family.iter().filter(|f| f.len() == dim).cloned().collect();
    if rows.len() != family.len() {
        return false;
    }
    let mut rank = 0;
    for c in 0..dim {
        let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs())) else {
            break;
        };
        if rows[p][c].abs() < TOL {
            continue;
        }
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank {
                let f = rows[r][c] / rows[rank][c];
                let pivot = rows[rank].clone();
                rows[r].iter_mut().zip(&pivot).for_each(|(x, y)| *x -= f * y);
            }
        }
        rank += 1;
    }
    rank == dim
}

pub fn standard_basis(dim: usize) -> Vec<Vec<f64>> {
    (0..dim).map(|i| (0..dim).map(|j| (i == j) as u8 as f64).collect()).collect()
}

/// App B lexicographic data: `Psi+` from the total order `prec` on coroots,
/// `Phi+` = lex-negative roots under `omega`, and `A = T(Phi+ cap -Psi+)`.
#[derive(Clone, Debug)]
pub struct LexSystem {
    pub realization: OrthonormalRealization,
    pub psi: QuasiPositiveSystem,
    pub phi: QuasiPositiveSystem,
    pub a: Vec<usize>,
    pub prec: Vec<Vec<f64>>,
    pub omega: Vec<Vec<f64>>,
}

pub fn lex_system(window: Arc<Window>, prec: Vec<Vec<f64>>, omega: Vec<Vec<f64>>) -> Result<LexSystem> {
    let g = window.group().clone();
    if !window.is_exact() {
        return Err(Error::Precondition("lex_system needs the full reflection set".into()));
    }
    let real = OrthonormalRealization::new(&g)?;
    let n = real.dim();
    if !spans(&omega, n) {
        return Err(Error::Invalid("omega does not span V".into()));
    }
    if !spans(&prec, n) {
        return Err(Error::Invalid("prec family does not span V".into()));
    }
    let roots: Vec<Vec<f64>> = window.reflections().iter().map(|t| real.root_of(t)).collect::<Result<_>>()?;
    let psi_signs: Vec<Sign> =
        roots.iter().map(|a| Sign::from_bool_neg(lex_cmp(a, &prec) == Ordering::Less)).collect();
    let phi_signs: Vec<Sign> =
        roots.iter().map(|a| Sign::from_bool_neg(lex_cmp(a, &omega) == Ordering::Greater)).collect();
    let a = (0..roots.len()).filter(|&t| phi_signs[t] == -psi_signs[t]).collect();
    Ok(LexSystem {
        realization: real,
        psi: QuasiPositiveSystem::from_signs(window.clone(), psi_signs)?,
        phi: QuasiPositiveSystem::from_signs(window, phi_signs)?,
        a,
        prec,
        omega,
    })
}

impl LexSystem {
    fn cmp_tuples(&self, x: &[Vec<f64>], y: &[Vec<f64>]) -> Ordering {
        for (u, v) in x.iter().zip(y) {
            let d: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
            match lex_cmp(&d, &self.prec) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Prop B.5(a) at `w`: for every `a` in `Psi+`, `(s_a w(omega_i))_i < (w(omega_i))_i`
    /// iff `s_a` lies in `w.A`, where `N` is the cocycle of `Psi+`.
    pub fn proposition_a_holds(&self, w: &GroupElement) -> Result<bool> {
        let win = self.psi.window();
        let g = win.group();
        let wo: Vec<Vec<f64>> = self.omega.iter().map(|o| self.realization.apply(w, o)).collect();
        let mut dot_a = vec![false; win.len()];
        for t in self.psi.cocycle_of(w)? {
            dot_a[t] = true;
        }
        for &t in &self.a {
            let c = win.require(&g.conjugate(w, win.reflection(t))?)?;
            dot_a[c] ^= true;
        }
        for (t, refl) in win.reflections().iter().enumerate() {
            let tw = g.multiply(refl, w)?;
            let lhs: Vec<Vec<f64>> = self.omega.iter().map(|o| self.realization.apply(&tw, o)).collect();
            let below = self.cmp_tuples(&lhs, &wo) == Ordering::Less;
            if below != dot_a[t] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
