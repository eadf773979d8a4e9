use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::CoxeterMatrix;
use crate::TOL;

/// Possibly non-integral generalized Cartan matrix, `a[i][j] = <alpha_i, coroot_j>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ngcm {
    pub labels: Vec<String>,
    #[serde(rename = "ngcm")]
    pub a: Vec<Vec<f64>>,
}

/// Coxeter order attached to `c = A_ij A_ji`: `Ok(None)` for infinity, `Err(())` in a gap of P.
pub fn coxeter_order(c: f64) -> std::result::Result<Option<u32>, ()> {
    if c >= 4.0 - TOL {
        return Ok(None);
    }
    if c < -TOL {
        return Err(());
    }
    let c = c.max(0.0);
    let m = PI / (c.sqrt() / 2.0).acos();
    let mr = m.round();
    if mr < 2.0 || mr > 1e6 {
        return Err(());
    }
    let back = 4.0 * (PI / mr).cos().powi(2);
    if (back - c).abs() <= TOL {
        Ok(Some(mr as u32))
    } else {
        Err(())
    }
}

impl Ngcm {
    pub fn new(labels: Vec<String>, a: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("NGCM must be a {n}x{n} matrix with n >= 1")));
        }
        Ok(Self { labels, a })
    }

    /// Symmetric NGCM of the standard geometric representation, `-2 cos(pi/m)`.
    pub fn standard(m: &CoxeterMatrix) -> Self {
        let n = m.rank();
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match m.order(i, j) {
                        Some(1) => 2.0,
                        Some(k) => -2.0 * (PI / k as f64).cos(),
                        None => -2.0,
                    })
                    .map(|x: f64| if x.abs() < 1e-15 { 0.0 } else { x })
                    .collect()
            })
            .collect();
        Self { labels: m.names().to_vec(), a }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, i: usize, j: usize) -> f64 {
        self.a[i][j] * self.a[j][i]
    }

    /// Every violated NGCM condition, as human readable lines.
    pub fn problems(&self) -> Vec<String> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            if (self.a[i][i] - 2.0).abs() > TOL {
                out.push(format!("diagonal entry ({i}, {i}) is {} not 2", self.a[i][i]));
            }
            for j in i + 1..n {
                let (x, y) = (self.a[i][j], self.a[j][i]);
                if x > TOL || y > TOL {
                    out.push(format!("off-diagonal entry at ({i}, {j}) is positive"));
                }
                if (x.abs() <= TOL) != (y.abs() <= TOL) {
                    out.push(format!("zero pattern not symmetric at ({i}, {j})"));
                }
                if coxeter_order(x * y).is_err() {
                    out.push(format!("product not in P at ({i}, {j}): {}", x * y));
                }
            }
        }
        out
    }

    pub fn coxeter_matrix(&self) -> Result<CoxeterMatrix> {
        let n = self.rank();
        let mut rows = vec![vec![1u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let c = self.product(i, j);
                    rows[i][j] = match coxeter_order(c) {
                        Ok(Some(m)) => m,
                        Ok(None) => 0,
                        Err(()) => return Err(Error::NotInP { row: i, col: j, value: c }),
                    };
                }
            }
        }
        CoxeterMatrix::new(self.labels.clone(), rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_from_products() {
        assert_eq!(coxeter_order(0.0), Ok(Some(2)));
        assert_eq!(coxeter_order(1.0), Ok(Some(3)));
        assert_eq!(coxeter_order(2.0), Ok(Some(4)));
        assert_eq!(coxeter_order(3.0), Ok(Some(6)));
        assert_eq!(coxeter_order(4.5), Ok(None));
        assert_eq!(coxeter_order(4.0), Ok(None));
        assert_eq!(coxeter_order(2.6180339887), Ok(Some(5)));
        assert_eq!(coxeter_order(2.5), Err(()));
        assert_eq!(coxeter_order(3.5), Err(()));
    }

    #[test]
    fn coxeter_matrix_reports_gap_entry() {
        let a = Ngcm::new(vec!["a".into(), "b".into()], vec![vec![2.0, -1.0], vec![-2.5, 2.0]]).unwrap();
        assert!(matches!(a.coxeter_matrix(), Err(Error::NotInP { row: 0, col: 1, .. })));
        assert!(a.problems().iter().any(|p| p.contains("product not in P")));
    }

    #[test]
    fn standard_round_trips_through_coxeter_matrix() {
        for ty in ["A3", "B3", "H3", "G2", "~A2", "I2(0)", "I2(7)"] {
            let m = CoxeterMatrix::from_type(ty).unwrap();
            let a = Ngcm::standard(&m);
            assert!(a.problems().is_empty(), "{ty}");
            assert_eq!(a.coxeter_matrix().unwrap(), m, "{ty}");
        }
    }
}
