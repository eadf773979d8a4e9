use std::collections::HashMap;

use serde::Serialize;

use super::datum::BasedRootDatum;
use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, GroupElement};
use crate::lp::in_cone_f64;
use crate::TOL;

/// A real root with its coroot; `root = sign * w(alpha_i)` for the recorded witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootPair {
    pub root: Vec<f64>,
    pub coroot: Vec<f64>,
    /// Formal coefficients over the simple roots.
    pub coeffs: Vec<f64>,
    /// Least `l(w)` with `+-root` in `w(Pi)`.
    pub depth: usize,
    pub positive: bool,
    pub word: Vec<usize>,
    pub simple: usize,
}

impl RootPair {
    pub fn negated(&self) -> Self {
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect();
        RootPair {
            root: neg(&self.root),
            coroot: neg(&self.coroot),
            coeffs: neg(&self.coeffs),
            positive: !self.positive,
            ..self.clone()
        }
    }
}

/// `v - <v, p.coroot> p.root`.
pub fn reflect(datum: &BasedRootDatum, v: &[f64], p: &RootPair) -> Vec<f64> {
    let k = datum.pair(v, &p.coroot);
    v.iter().zip(&p.root).map(|(x, r)| x - k * r).collect()
}

fn reflect_pair(datum: &BasedRootDatum, x: &RootPair, p: &RootPair) -> RootPair {
    let k = datum.pair(&x.root, &p.coroot);
    let kc = datum.pair(&p.root, &x.coroot);
    let sub = |a: &[f64], b: &[f64], f: f64| a.iter().zip(b).map(|(u, v)| u - f * v).collect::<Vec<f64>>();
    let coeffs = sub(&x.coeffs, &p.coeffs, k);
    let positive = coeffs.iter().sum::<f64>() > 0.0;
    RootPair {
        root: sub(&x.root, &p.root, k),
        coroot: sub(&x.coroot, &p.coroot, kc),
        coeffs,
        depth: x.depth,
        positive,
        word: x.word.clone(),
        simple: x.simple,
    }
}

fn key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x / TOL).round() as i64).collect()
}

/// Roots of depth at most `depth_bound`: positives first in BFS order, then their negatives.
#[derive(Clone, Debug)]
pub struct RootSlice {
    pub datum: BasedRootDatum,
    pub depth_bound: usize,
    /// Closure terminated before reaching the depth bound (all of Phi is present).
    pub complete: bool,
    roots: Vec<RootPair>,
    positive_count: usize,
    index: HashMap<(Vec<i64>, Vec<i64>), usize>,
}

/// BFS closure of the simple roots under simple reflections.
pub fn generate_roots(datum: &BasedRootDatum, depth_bound: usize, cap: usize) -> Result<RootSlice> {
    let n = datum.rank();
    let mut pos: Vec<RootPair> = Vec::new();
    let mut index = HashMap::new();
    for i in 0..n {
        let mut coeffs = vec![0.0; n];
        coeffs[i] = 1.0;
        let p = RootPair {
            root: datum.roots[i].clone(),
            coroot: datum.coroots[i].clone(),
            coeffs,
            depth: 0,
            positive: true,
            word: Vec::new(),
            simple: i,
        };
        let k = (key(&p.root), key(&p.coroot));
        if index.contains_key(&k) {
            return Err(Error::Invalid("repeated simple root".into()));
        }
        index.insert(k, pos.len());
        pos.push(p);
    }
    let simple: Vec<RootPair> = pos.clone();
    let mut frontier: Vec<usize> = (0..n).collect();
    let mut depth = 0;
    while depth < depth_bound && !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for (j, sj) in simple.iter().enumerate() {
                let mut r = reflect_pair(datum, &pos[i], sj);
                if !r.positive {
                    continue;
                }
                let k = (key(&r.root), key(&r.coroot));
                if index.contains_key(&k) {
                    continue;
                }
                r.depth = depth + 1;
                r.word.insert(0, j);
                index.insert(k, pos.len());
                next.push(pos.len());
                pos.push(r);
                if 2 * pos.len() > cap {
                    return Err(Error::ResourceCap { what: "roots".into(), cap });
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    let complete = frontier.is_empty();
    let positive_count = pos.len();
    let mut roots = pos;
    for i in 0..positive_count {
        let neg = roots[i].negated();
        index.insert((key(&neg.root), key(&neg.coroot)), roots.len());
        roots.push(neg);
    }
    Ok(RootSlice { datum: datum.clone(), depth_bound, complete, roots, positive_count, index })
}

impl RootSlice {
    pub fn roots(&self) -> &[RootPair] {
        &self.roots
    }

    pub fn positives(&self) -> &[RootPair] {
        &self.roots[..self.positive_count]
    }

    pub fn positive_count(&self) -> usize {
        self.positive_count
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn get(&self, i: usize) -> &RootPair {
        &self.roots[i]
    }

    /// Index of `-root(i)`.
    pub fn negation(&self, i: usize) -> usize {
        if i < self.positive_count {
            i + self.positive_count
        } else {
            i - self.positive_count
        }
    }

    /// Index of the positive root among `+-root(i)`.
    pub fn positive_form(&self, i: usize) -> usize {
        if i < self.positive_count {
            i
        } else {
            i - self.positive_count
        }
    }

    pub fn find(&self, root: &[f64], coroot: &[f64]) -> Option<usize> {
        self.index.get(&(key(root), key(coroot))).copied()
    }

    /// Index of `s_{root(p)}(root(x))`, when it lies in the slice.
    pub fn reflect_index(&self, x: usize, p: usize) -> Option<usize> {
        let r = reflect_pair(&self.datum, &self.roots[x], &self.roots[p]);
        self.find(&r.root, &r.coroot)
    }

    /// Reflection `w s_i w^{-1}` attached to root `i` in a group whose generators
    /// are indexed like the simple roots.
    pub fn reflection_of(&self, g: &CoxeterGroup, i: usize) -> GroupElement {
        let r = &self.roots[i];
        let mut word = r.word.clone();
        word.push(r.simple);
        word.extend(r.word.iter().rev());
        g.normalize_unchecked(&word)
    }

    /// Positive roots are in the cone over the simple roots (checked by linear feasibility).
    pub fn cone_check(&self, i: usize) -> bool {
        let r = &self.roots[i];
        let gens = if r.positive {
            self.datum.roots.clone()
        } else {
            self.datum.roots.iter().map(|v| v.iter().map(|x| -x).collect()).collect()
        };
        in_cone_f64(&gens, &r.root)
    }

    pub fn to_tsv(&self) -> String {
        let fmt = |v: &[f64]| v.iter().map(|x| format!("{}", clean(*x))).collect::<Vec<_>>().join(",");
        let mut out = String::from("depth\troot\tcoroot\tpositive\n");
        for r in &self.roots {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.depth, fmt(&r.root), fmt(&r.coroot), u8::from(r.positive)));
        }
        out
    }
}

fn clean(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// `gamma in R>=0 alpha + R>=0 beta`.
pub fn cone2(gamma: &[f64], alpha: &[f64], beta: &[f64]) -> bool {
    let d = gamma.len();
    let mut best = (0.0, 0, 0);
    for i in 0..d {
        for j in i + 1..d {
            let det = alpha[i] * beta[j] - alpha[j] * beta[i];
            if det.abs() > best.0 {
                best = (det.abs(), i, j);
            }
        }
    }
    if best.0 <= TOL {
        return in_cone_f64(&[alpha.to_vec(), beta.to_vec()], gamma);
    }
    let (_, i, j) = best;
    let det = alpha[i] * beta[j] - alpha[j] * beta[i];
    let x = (gamma[i] * beta[j] - gamma[j] * beta[i]) / det;
    let y = (alpha[i] * gamma[j] - alpha[j] * gamma[i]) / det;
    if x < -TOL || y < -TOL {
        return false;
    }
    let scale = 1.0 + gamma.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (0..d).all(|k| (gamma[k] - x * alpha[k] - y * beta[k]).abs() <= 1e-7 * scale)
}

pub fn is_between_real(gamma: &RootPair, alpha: &RootPair, beta: &RootPair) -> bool {
    cone2(&gamma.root, &alpha.root, &beta.root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CoxeterMatrix;
    use crate::real_roots::Ngcm;

    fn datum(a: Vec<Vec<f64>>) -> BasedRootDatum {
        let labels = (0..a.len()).map(|i| format!("a{i}")).collect();
        BasedRootDatum::from_ngcm(&Ngcm::new(labels, a).unwrap())
    }

    fn coeff_set(s: &RootSlice) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = s.positives().iter().map(|r| r.coeffs.iter().map(|x| x.round() as i64).collect()).collect();
        v.sort();
        v
    }

    #[test]
    fn a2_closure() {
        let s = generate_roots(&BasedRootDatum::standard(&CoxeterMatrix::from_type("A2").unwrap()), 2, 1000).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(coeff_set(&s), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn b2_crystallographic_closure() {
        let s = generate_roots(&datum(vec![vec![2.0, -1.0], vec![-2.0, 2.0]]), 4, 1000).unwrap();
        assert!(s.complete);
        assert_eq!(coeff_set(&s), vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn affine_a1_closure() {
        let s = generate_roots(&datum(vec![vec![2.0, -2.0], vec![-2.0, 2.0]]), 3, 1000).unwrap();
        assert!(!s.complete);
        let depths: Vec<usize> = s.positives().iter().map(|r| r.depth).collect();
        assert_eq!(depths, vec![0, 0, 1, 1, 2, 2, 3, 3]);
        assert_eq!(coeff_set(&s)[..3], [vec![0, 1], vec![1, 0], vec![1, 2]]);
    }

    #[test]
    fn reflect_examples() {
        let d = datum(vec![vec![2.0, -1.0], vec![-2.0, 2.0]]);
        let s = generate_roots(&d, 4, 1000).unwrap();
        let a = s.get(0);
        assert_eq!(reflect(&d, &a.root, a), vec![-1.0, 0.0]);
        assert_eq!(reflect(&d, &d.roots[1], a), vec![2.0, 1.0]);
        let v = vec![0.3, -1.7];
        let back = reflect(&d, &reflect(&d, &v, a), a);
        assert!(back.iter().zip(&v).all(|(x, y)| (x - y).abs() < 1e-12));
    }

    #[test]
    fn betweenness_examples() {
        let d = datum(vec![vec![2.0, -1.0], vec![-2.0, 2.0]]);
        let s = generate_roots(&d, 4, 1000).unwrap();
        let find = |c: [f64; 2]| s.roots().iter().find(|r| r.root == c.to_vec()).unwrap();
        let (a, b) = (find([1.0, 0.0]), find([0.0, 1.0]));
        assert!(is_between_real(a, a, b));
        assert!(is_between_real(find([1.0, 1.0]), a, b));
        assert!(!is_between_real(find([-1.0, 0.0]), a, b));
    }

    #[test]
    fn coroot_transport_in_non_reduced_datum() {
        let d = datum(vec![vec![2.0, -2.0], vec![-0.5, 2.0]]);
        let s = generate_roots(&d, 8, 1000).unwrap();
        assert!(s.complete);
        // alpha and 2 beta are both roots, with coroots scaled inversely
        for r in s.roots() {
            assert!((d.pair(&r.root, &r.coroot) - 2.0).abs() < 1e-9);
        }
        assert_eq!(s.positive_count(), 6);
    }

    #[test]
    fn tsv_has_header_and_rows() {
        let s = generate_roots(&BasedRootDatum::standard(&CoxeterMatrix::from_type("A2").unwrap()), 4, 100).unwrap();
        let tsv = s.to_tsv();
        assert_eq!(tsv.lines().count(), 7);
        assert!(tsv.starts_with("depth\troot\tcoroot\tpositive"));
    }
}
