use serde::{Deserialize, Serialize};

use super::ngcm::{coxeter_order, Ngcm};
use crate::error::{Error, Result};
use crate::group::CoxeterMatrix;
use crate::lp::positively_independent_f64;
use crate::TOL;

/// Simple roots in `V`, simple coroots in `V'` and the pairing `V x V' -> R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasedRootDatum {
    pub labels: Vec<String>,
    /// `pairing[p][q] = <e_p, e'_q>` on coordinate bases of `V` and `V'`.
    pub pairing: Vec<Vec<f64>>,
    pub roots: Vec<Vec<f64>>,
    pub coroots: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DatumProperties {
    pub reduced: bool,
    pub symmetrizable: bool,
    /// Rescaling `c` making the NGCM symmetric, when one exists.
    pub witness: Option<Vec<f64>>,
}

impl BasedRootDatum {
    pub fn new(labels: Vec<String>, pairing: Vec<Vec<f64>>, roots: Vec<Vec<f64>>, coroots: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        let dv = pairing.len();
        let dvp = pairing.first().map_or(0, |r| r.len());
        if n == 0 || dv == 0 || dvp == 0 || pairing.iter().any(|r| r.len() != dvp) {
            return Err(Error::Invalid("pairing must be a nonempty rectangular matrix".into()));
        }
        if roots.len() != n || coroots.len() != n {
            return Err(Error::Invalid(format!("expected {n} roots and {n} coroots")));
        }
        if roots.iter().any(|r| r.len() != dv) || coroots.iter().any(|r| r.len() != dvp) {
            return Err(Error::Invalid("root or coroot has the wrong dimension".into()));
        }
        Ok(Self { labels, pairing, roots, coroots })
    }

    /// The realization with `V = V' = R^n`, identity bases and pairing `A`.
    pub fn from_ngcm(a: &Ngcm) -> Self {
        let n = a.rank();
        let id: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        Self { labels: a.labels.clone(), pairing: a.a.clone(), roots: id.clone(), coroots: id }
    }

    /// Symmetric datum of the standard geometric representation of `m`.
    pub fn standard(m: &CoxeterMatrix) -> Self {
        Self::from_ngcm(&Ngcm::standard(m))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn dim_v(&self) -> usize {
        self.pairing.len()
    }

    pub fn dim_vp(&self) -> usize {
        self.pairing[0].len()
    }

    pub fn pair(&self, v: &[f64], vp: &[f64]) -> f64 {
        let mut s = 0.0;
        for (p, row) in self.pairing.iter().enumerate() {
            if v[p] != 0.0 {
                s += v[p] * row.iter().zip(vp).map(|(a, b)| a * b).sum::<f64>();
            }
        }
        s
    }

    pub fn ngcm(&self) -> Ngcm {
        let n = self.rank();
        let a = (0..n)
            .map(|i| (0..n).map(|j| self.pair(&self.roots[i], &self.coroots[j])).collect())
            .collect();
        Ngcm { labels: self.labels.clone(), a }
    }

    pub fn coxeter_matrix(&self) -> Result<CoxeterMatrix> {
        self.ngcm().coxeter_matrix()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut problems = self.ngcm().problems();
        if !positively_independent_f64(&self.roots) {
            problems.push("roots not positively independent".into());
        }
        if !positively_independent_f64(&self.coroots) {
            problems.push("coroots not positively independent".into());
        }
        ValidationReport { valid: problems.is_empty(), problems }
    }

    /// Replaces `alpha` by `c_alpha alpha` and its coroot by `c_alpha^{-1}` times it.
    pub fn rescale(&self, c: &[f64]) -> Result<Self> {
        if c.len() != self.rank() {
            return Err(Error::Invalid("one scale factor per simple root required".into()));
        }
        if let Some(&bad) = c.iter().find(|&&x| !(x > 0.0)) {
            return Err(Error::NonPositiveScale(bad));
        }
        let mut out = self.clone();
        for (i, &k) in c.iter().enumerate() {
            out.roots[i].iter_mut().for_each(|x| *x *= k);
            out.coroots[i].iter_mut().for_each(|x| *x /= k);
        }
        Ok(out)
    }

    pub fn properties(&self) -> DatumProperties {
        let a = self.ngcm().a;
        let n = a.len();
        let mut reduced = true;
        for i in 0..n {
            for j in i + 1..n {
                if let Ok(Some(m)) = coxeter_order(a[i][j] * a[j][i]) {
                    if m % 2 == 1 && (a[i][j] - a[j][i]).abs() > TOL {
                        reduced = false;
                    }
                }
            }
        }
        let witness = symmetrizing_scale(&a);
        DatumProperties { reduced, symmetrizable: witness.is_some(), witness }
    }
}

/// Spanning-tree propagation of `c_j^2 = c_i^2 A_ij / A_ji`, then a check of every edge.
pub fn symmetrizing_scale(a: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = a.len();
    let mut sq: Vec<Option<f64>> = vec![None; n];
    for start in 0..n {
        if sq[start].is_some() {
            continue;
        }
        sq[start] = Some(1.0);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if j != i && sq[j].is_none() && a[i][j].abs() > TOL && a[j][i].abs() > TOL {
                    sq[j] = Some(sq[i].unwrap() * a[i][j] / a[j][i]);
                    stack.push(j);
                }
            }
        }
    }
    let sq: Vec<f64> = sq.into_iter().map(|x| x.unwrap()).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = sq[i] * a[i][j];
            let rhs = sq[j] * a[j][i];
            if (lhs - rhs).abs() > 1e-7 * (1.0 + lhs.abs()) {
                return None;
            }
        }
    }
    Some(sq.into_iter().map(f64::sqrt).collect())
}
