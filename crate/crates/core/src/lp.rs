//! Small linear feasibility problems: Gaussian elimination on the equalities,
//! then Fourier-Motzkin on the free variables. Generic over the scalar so the
//! same code runs in binary64 with a tolerance or exactly over the rationals.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero_ish(&self) -> bool;
    fn is_neg(&self) -> bool {
        !self.is_zero_ish() && self.magnitude() < 0.0
    }
    fn is_pos(&self) -> bool {
        !self.is_zero_ish() && self.magnitude() > 0.0
    }
    /// Signed value as f64, used for pivot choice and sign tests.
    fn magnitude(&self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero_ish(&self) -> bool {
        self.abs() <= crate::TOL
    }
    fn magnitude(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero_ish(&self) -> bool {
        self.is_zero()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().unwrap_or(0.0)
    }
}

/// Recognises `x` as a rational with denominator at most `max_den`.
pub fn small_rational(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    for den in 1..=max_den {
        let num = (x * den as f64).round();
        if (num / den as f64 - x).abs() <= 1e-12 * (1.0 + x.abs()) {
            return Some(BigRational::new(BigInt::from(num as i64), BigInt::from(den)));
        }
    }
    None
}

/// Converts a float matrix to exact rationals if every entry is a small rational.
pub fn to_rational(rows: &[Vec<f64>]) -> Option<Vec<Vec<BigRational>>> {
    rows.iter().map(|r| r.iter().map(|&x| small_rational(x, 64)).collect()).collect()
}

/// Is there `c >= 0` with `sum_i c_i gens[i] = target` (and `sum c_i = 1` if `normalized`)?
pub fn cone_feasible<S: Scalar>(gens: &[Vec<S>], target: &[S], normalized: bool) -> bool {
    let k = gens.len();
    let dim = target.len();
    let mut rows: Vec<Vec<S>> = (0..dim)
        .map(|d| {
            let mut row: Vec<S> = gens.iter().map(|g| g[d].clone()).collect();
            row.push(target[d].clone());
            row
        })
        .collect();
    if normalized {
        let mut row = vec![S::one(); k];
        row.push(S::one());
        rows.push(row);
    }
    // reduced row echelon form
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..k {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero_ish())
            .max_by(|&a, &b| rows[a][col].magnitude().abs().total_cmp(&rows[b][col].magnitude().abs()));
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let piv = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero_ish() {
                let f = rows[i][col].clone();
                for j in 0..=k {
                    let v = rows[i][j].clone() - f.clone() * rows[r][j].clone();
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero_ish()) {
        return false;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    // inequalities  sum_f a_f x_f <= b over the free variables
    let mut ineqs: Vec<(Vec<S>, S)> = Vec::new();
    for (i, _) in pivots.iter().enumerate() {
        let coeffs = free.iter().map(|&f| rows[i][f].clone()).collect();
        ineqs.push((coeffs, rows[i][k].clone()));
    }
    for j in 0..free.len() {
        let mut coeffs = vec![S::zero(); free.len()];
        coeffs[j] = -S::one();
        ineqs.push((coeffs, S::zero()));
    }
    for v in 0..free.len() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in ineqs {
            if q.0[v].is_pos() {
                pos.push(q);
            } else if q.0[v].is_neg() {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let (sp, sn) = (pa[v].clone(), -na[v].clone());
                let coeffs = pa
                    .iter()
                    .zip(na)
                    .map(|(x, y)| x.clone() / sp.clone() + y.clone() / sn.clone())
                    .collect();
                rest.push((coeffs, pb.clone() / sp.clone() + nb.clone() / sn.clone()));
            }
        }
        ineqs = rest;
    }
    ineqs.iter().all(|(_, b)| !b.is_neg())
}

/// No nontrivial nonnegative combination of `vectors` vanishes.
pub fn positively_independent<S: Scalar>(vectors: &[Vec<S>]) -> bool {
    let Some(first) = vectors.first() else { return true };
    let zero = vec![S::zero(); first.len()];
    !cone_feasible(vectors, &zero, true)
}

/// Positive independence, exactly when all coordinates are small rationals.
pub fn positively_independent_f64(vectors: &[Vec<f64>]) -> bool {
    match to_rational(vectors) {
        Some(q) => positively_independent(&q),
        None => positively_independent(vectors),
    }
}

/// Cone membership, exactly when all coordinates are small rationals.
pub fn in_cone_f64(gens: &[Vec<f64>], target: &[f64]) -> bool {
    match (to_rational(gens), to_rational(&[target.to_vec()])) {
        (Some(g), Some(t)) => cone_feasible(&g, &t[0], false),
        _ => cone_feasible(gens, target, false),
    }
}
