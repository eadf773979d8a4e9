//! Exact fallback for the word problem: the geometric representation over
//! `Z[c]`, `c = 2cos(pi/M)`, `M` the lcm of the finite Coxeter orders.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CoxeterMatrix;

type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Exact division by a monic polynomial.
fn poly_div_monic(num: &[BigInt], den: &[BigInt]) -> Poly {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    if r.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            r[k + j] -= &c * d;
        }
        q[k] = c;
    }
    trim(q)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cyclotomic(n: u64) -> Poly {
    // z^n - 1 divided by every Phi_d, d | n, d < n
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_monic(&p, &cyclotomic(d));
        }
    }
    p
}

/// `P_k` with `P_k(z + 1/z) = z^k + z^-k` (and `P_0 = 2`).
fn chebyshev(k: usize) -> Poly {
    let mut prev: Poly = vec![BigInt::from(2)];
    let mut cur: Poly = vec![BigInt::zero(), BigInt::one()];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of `2cos(pi/m)`, monic, low degree first.
fn min_poly(m: u64) -> Poly {
    if m == 1 {
        return vec![BigInt::from(2), BigInt::one()];
    }
    let phi = cyclotomic(2 * m);
    let d = (phi.len() - 1) / 2;
    let mut out = vec![phi[d].clone()];
    for k in 1..=d {
        let t = chebyshev(k);
        if out.len() < t.len() {
            out.resize(t.len(), BigInt::zero());
        }
        for (i, c) in t.iter().enumerate() {
            out[i] += &phi[d + k] * c;
        }
    }
    trim(out)
}

/// Integer coefficients; `None` signals overflow.
trait Coef: Clone {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn bits(&self) -> u64;
    /// `self / 2^shift`, rounded.
    fn to_f64_shifted(&self, shift: u64) -> f64;
}

impl Coef for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn bits(&self) -> u64 {
        128 - self.unsigned_abs().leading_zeros() as u64
    }
    fn to_f64_shifted(&self, shift: u64) -> f64 {
        *self as f64 / 2f64.powi(shift as i32)
    }
}

impl Coef for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn bits(&self) -> u64 {
        num_bigint::BigInt::bits(self)
    }
    fn to_f64_shifted(&self, shift: u64) -> f64 {
        num_traits::ToPrimitive::to_f64(&(self >> shift)).unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ExactRing {
    n: usize,
    deg: usize,
    min_poly: Vec<i64>,
    // cartan[u * n + s] in Z[c]; scalar[u * n + s] when it is an integer
    cartan: Vec<Vec<i64>>,
    scalar: Vec<Option<i64>>,
    c_pow: Vec<f64>,
    // isolating interval of c, both ends positive unless deg == 1
    lo: BigRational,
    hi: BigRational,
}

fn small(p: &[BigInt]) -> Vec<i64> {
    p.iter().map(|x| num_traits::ToPrimitive::to_i64(x).expect("small coefficient")).collect()
}

impl ExactRing {
    pub(crate) fn new(m: &CoxeterMatrix) -> Self {
        let n = m.rank();
        let mut big_m = 1u64;
        for u in 0..n {
            for s in 0..n {
                if let Some(k) = m.order(u, s) {
                    if k >= 3 {
                        let k = k as u64;
                        big_m = big_m / gcd(big_m, k) * k;
                    }
                }
            }
        }
        let mp = min_poly(big_m);
        let deg = mp.len() - 1;
        let reduce = |mut p: Poly| -> Vec<i64> {
            for k in (deg..p.len()).rev() {
                let c = std::mem::take(&mut p[k]);
                for j in 0..deg {
                    p[k - deg + j] -= &c * &mp[j];
                }
            }
            p.resize(deg, BigInt::zero());
            small(&p)
        };
        let constant = |v: i64| -> Vec<i64> {
            let mut p = vec![0; deg];
            p[0] = v;
            p
        };
        let mut cartan = Vec::with_capacity(n * n);
        for u in 0..n {
            for s in 0..n {
                cartan.push(match m.order(u, s) {
                    None => constant(-2),
                    Some(1) => constant(2),
                    Some(2) => constant(0),
                    Some(k) => reduce(chebyshev(big_m as usize / k as usize).into_iter().map(|x| -x).collect()),
                });
            }
        }
        let scalar = cartan.iter().map(|p| p[1..].iter().all(|&x| x == 0).then_some(p[0])).collect();
        let c = 2.0 * (std::f64::consts::PI / big_m as f64).cos();
        let c_pow = (0..deg).map(|k| c.powi(k as i32)).collect();
        Self {
            n,
            deg,
            min_poly: small(&mp[..deg]),
            cartan,
            scalar,
            c_pow,
            lo: BigRational::from_float(c - 1e-12).unwrap(),
            hi: BigRational::from_float(c + 1e-12).unwrap(),
        }
    }

    fn mul_poly<T: Coef>(&self, a: &[T], b: &[T]) -> Option<Vec<T>> {
        let d = self.deg;
        let mut tmp = vec![T::from_i64(0); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.vanishes() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.vanishes() {
                    tmp[i + j] = tmp[i + j].add(&x.mul(y)?)?;
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = tmp[k].clone();
            if c.vanishes() {
                continue;
            }
            for j in 0..d {
                if self.min_poly[j] != 0 {
                    tmp[k - d + j] = tmp[k - d + j].sub(&c.mul(&T::from_i64(self.min_poly[j]))?)?;
                }
            }
        }
        tmp.truncate(d);
        Some(tmp)
    }

    // acc -= a * x, `a` an element of Z[c] given as (scalar, poly)
    fn sub_scaled<T: Coef>(&self, acc: &mut [T], scalar: Option<i64>, a: &[i64], x: &[T]) -> Option<()> {
        match scalar {
            Some(0) => {}
            Some(k) => {
                let k = T::from_i64(k);
                for (u, v) in acc.iter_mut().zip(x) {
                    if !v.vanishes() {
                        *u = u.sub(&v.mul(&k)?)?;
                    }
                }
            }
            None => {
                let a: Vec<T> = a.iter().map(|&v| T::from_i64(v)).collect();
                for (u, v) in acc.iter_mut().zip(self.mul_poly(&a, x)?) {
                    *u = u.sub(&v)?;
                }
            }
        }
        Some(())
    }

    fn eval_rat(p: &[BigInt], x: &BigRational) -> BigRational {
        p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    fn sign<T: Coef>(&self, p: &[T]) -> Ordering {
        if p.iter().all(|x| x.vanishes()) {
            return Ordering::Equal;
        }
        if self.deg == 1 {
            return p[0].to_big().cmp(&BigInt::zero());
        }
        // the shift keeps f64 finite; its rounding costs at most c^k per term
        let shift = p.iter().map(Coef::bits).max().unwrap_or(0).saturating_sub(900);
        let (mut v, mut mag) = (0.0, 0.0);
        for (a, c) in p.iter().zip(&self.c_pow) {
            let t = a.to_f64_shifted(shift) * c;
            v += t;
            mag += t.abs() + if shift > 0 { *c } else { 0.0 };
        }
        if v.is_finite() && v.abs() > mag * 4.0 * (self.deg as f64 + 2.0) * f64::EPSILON {
            return v.partial_cmp(&0.0).unwrap();
        }
        let p: Vec<BigInt> = p.iter().map(Coef::to_big).collect();
        let mp: Vec<BigInt> = self.min_poly.iter().map(|&x| BigInt::from(x)).chain([BigInt::one()]).collect();
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        let lo_sign = Self::eval_rat(&mp, &lo).is_positive();
        loop {
            // c > 0, so each term's range is spanned by its values at lo and hi
            let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
            let (mut pl, mut ph) = (BigRational::one(), BigRational::one());
            for coef in &p {
                let c = BigRational::from_integer(coef.clone());
                let (x, y) = (&c * &pl, &c * &ph);
                if x <= y {
                    a += x;
                    b += y;
                } else {
                    a += y;
                    b += x;
                }
                pl *= &lo;
                ph *= &hi;
            }
            if a.is_positive() {
                return Ordering::Greater;
            }
            if b.is_negative() {
                return Ordering::Less;
            }
            for _ in 0..32 {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                if Self::eval_rat(&mp, &mid).is_positive() == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
    }

    // Flat column-major matrix of the inverse word's action; cell (col, row) is
    // data[(col * n + row) * deg ..][..deg].
    fn inverse_action<T: Coef>(&self, word: &[usize]) -> Option<Vec<T>> {
        let (n, d) = (self.n, self.deg);
        let mut m = vec![T::from_i64(0); n * n * d];
        for i in 0..n {
            m[(i * n + i) * d] = T::from_i64(1);
        }
        for &s in word {
            for col in m.chunks_mut(n * d) {
                let mut p = vec![T::from_i64(0); d];
                for u in 0..n {
                    let k = u * n + s;
                    let x = &col[u * d..u * d + d];
                    if x.iter().all(Coef::vanishes) {
                        continue;
                    }
                    // p += x * cartan, via p -= x * (-cartan)
                    let neg: Vec<i64> = self.cartan[k].iter().map(|v| -v).collect();
                    self.sub_scaled(&mut p, self.scalar[k].map(|v| -v), &neg, x)?;
                }
                for (u, v) in col[s * d..s * d + d].iter_mut().zip(&p) {
                    *u = u.sub(v)?;
                }
            }
        }
        Some(m)
    }

    fn negative_column<T: Coef>(&self, m: &[T], s: usize) -> Option<bool> {
        let (n, d) = (self.n, self.deg);
        let mut sum = vec![T::from_i64(0); d];
        for cell in m[s * n * d..(s + 1) * n * d].chunks(d) {
            for (x, y) in sum.iter_mut().zip(cell) {
                *x = x.add(y)?;
            }
        }
        Some(self.sign(&sum) == Ordering::Less)
    }

    fn right_mul_action<T: Coef>(&self, m: &mut [T], s: usize) -> Option<()> {
        let (n, d) = (self.n, self.deg);
        let col_s: Vec<T> = m[s * n * d..(s + 1) * n * d].to_vec();
        let two = {
            let mut p = vec![0; d];
            p[0] = 2;
            p
        };
        for t in 0..n {
            let (scalar, a) = if t == s { (Some(2), &two) } else { (self.scalar[t * n + s], &self.cartan[t * n + s]) };
            if scalar == Some(0) {
                continue;
            }
            let col_t = &mut m[t * n * d..(t + 1) * n * d];
            for (x, c) in col_t.chunks_mut(d).zip(col_s.chunks(d)) {
                self.sub_scaled(x, scalar, a, c)?;
            }
        }
        Some(())
    }

    fn normal_form_with<T: Coef>(&self, word: &[usize]) -> Option<Vec<usize>> {
        let mut m = self.inverse_action::<T>(word)?;
        let mut out = Vec::new();
        'peel: while out.len() <= word.len() {
            for s in 0..self.n {
                if self.negative_column(&m, s)? {
                    out.push(s);
                    self.right_mul_action(&mut m, s)?;
                    continue 'peel;
                }
            }
            break;
        }
        Some(out)
    }

    fn left_descents_with<T: Coef>(&self, word: &[usize]) -> Option<Vec<usize>> {
        let m = self.inverse_action::<T>(word)?;
        let mut out = Vec::new();
        for s in 0..self.n {
            if self.negative_column(&m, s)? {
                out.push(s);
            }
        }
        Some(out)
    }

    /// `w(alpha_s)` in simple-root coordinates.
    pub(crate) fn root(&self, w: &[usize], s: usize) -> Vec<Vec<BigInt>> {
        let (n, d) = (self.n, self.deg);
        let mut v = vec![BigInt::zero(); n * d];
        v[s * d] = BigInt::one();
        for &u in w.iter().rev() {
            let mut p = vec![BigInt::zero(); d];
            for x in 0..n {
                let k = x * n + u;
                let neg: Vec<i64> = self.cartan[k].iter().map(|c| -c).collect();
                self.sub_scaled(&mut p, self.scalar[k].map(|c| -c), &neg, &v[x * d..x * d + d]);
            }
            for (a, b) in v[u * d..u * d + d].iter_mut().zip(&p) {
                *a -= b;
            }
        }
        v.chunks(d).map(<[BigInt]>::to_vec).collect()
    }

    /// `2 B(a, b)` against `2`: whether `|B(a, b)| < 1`, and `B(a, b)` as f64.
    pub(crate) fn pairing(&self, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> (bool, f64) {
        let (n, d) = (self.n, self.deg);
        let mut acc = vec![BigInt::zero(); d];
        for x in 0..n {
            for y in 0..n {
                if a[x].iter().all(Zero::is_zero) || b[y].iter().all(Zero::is_zero) {
                    continue;
                }
                let k = x * n + y;
                let neg: Vec<i64> = self.cartan[k].iter().map(|c| -c).collect();
                let ab = self.mul_poly(&a[x], &b[y]).expect("no overflow");
                self.sub_scaled(&mut acc, self.scalar[k].map(|c| -c), &neg, &ab);
            }
        }
        let shifted = |k: i64| {
            let mut p = acc.clone();
            p[0] += k;
            p
        };
        let inside = self.sign(&shifted(-2)) == Ordering::Less && self.sign(&shifted(2)) == Ordering::Greater;
        let value: f64 = acc.iter().zip(&self.c_pow).map(|(x, c)| x.to_f64_shifted(0) * c).sum();
        (inside, value / 2.0)
    }

    pub(crate) fn normal_form(&self, word: &[usize]) -> Vec<usize> {
        self.normal_form_with::<i128>(word)
            .or_else(|| self.normal_form_with::<BigInt>(word))
            .expect("big integers do not overflow")
    }

    pub(crate) fn left_descents(&self, word: &[usize]) -> Vec<usize> {
        self.left_descents_with::<i128>(word)
            .or_else(|| self.left_descents_with::<BigInt>(word))
            .expect("big integers do not overflow")
    }
}
