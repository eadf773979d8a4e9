use super::slice::{cone2, RootSlice};
use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, GroupElement};
use crate::lp::positively_independent_f64;
use crate::DEFAULT_ELEMENT_CAP;
use crate::TOL;

const ITERATION_CAP: usize = 10_000;

/// Positive roots of the dihedral subgroup generated by the reflections in two roots.
fn dihedral_positive_orbit(slice: &RootSlice, a: usize, b: usize) -> Result<Vec<usize>> {
    let mut orbit = vec![slice.positive_form(a), slice.positive_form(b)];
    let mut k = 0;
    while k < orbit.len() {
        for p in [a, b] {
            let r = slice
                .reflect_index(orbit[k], p)
                .ok_or_else(|| Error::WindowExhausted("dihedral orbit leaves the root slice".into()))?;
            let r = slice.positive_form(r);
            if !orbit.contains(&r) {
                orbit.push(r);
            }
        }
        k += 1;
        if orbit.len() > 4 * ITERATION_CAP {
            return Err(Error::WindowExhausted("dihedral orbit too large".into()));
        }
    }
    Ok(orbit)
}

/// Two roots of `orbit` whose cone contains all of it.
fn extreme_pair(slice: &RootSlice, orbit: &[usize]) -> (usize, usize) {
    for (i, &x) in orbit.iter().enumerate() {
        for &y in &orbit[i + 1..] {
            let (rx, ry) = (&slice.get(x).root, &slice.get(y).root);
            if orbit.iter().all(|&z| cone2(&slice.get(z).root, rx, ry)) {
                return (x, y);
            }
        }
    }
    unreachable!("a finite dihedral root orbit always has two extreme rays")
}

/// Canonical simple roots of the reflection subgroup generated by positive roots `gens`.
///
/// Finite dihedral pairs are replaced by the extreme rays of their positive orbit;
/// infinite pairs with positive pairing have the deeper root reflected in the other.
pub fn reflection_subgroup_basis(slice: &RootSlice, gens: &[usize]) -> Result<Vec<usize>> {
    let datum = &slice.datum;
    let mut basis: Vec<usize> = Vec::new();
    for &g in gens {
        let g = slice.positive_form(g);
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    let proportional = |x: usize, y: usize| {
        let (a, b) = (&slice.get(x).root, &slice.get(y).root);
        cone2(a, b, b) || cone2(b, a, a)
    };
    for _ in 0..ITERATION_CAP {
        // drop proportional duplicates, keeping the shallower root
        let mut i = 0;
        while i < basis.len() {
            if let Some(j) = (0..basis.len()).find(|&j| j != i && proportional(basis[i], basis[j])) {
                let drop = if slice.get(basis[i]).depth > slice.get(basis[j]).depth { i } else { j };
                basis.remove(drop);
                i = 0;
            } else {
                i += 1;
            }
        }
        let mut changed = false;
        'pairs: for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let (x, y) = (slice.get(basis[i]), slice.get(basis[j]));
                let a = datum.pair(&x.root, &y.coroot);
                let b = datum.pair(&y.root, &x.coroot);
                if a * b < 4.0 - TOL {
                    let orbit = dihedral_positive_orbit(slice, basis[i], basis[j])?;
                    let (p, q) = extreme_pair(slice, &orbit);
                    if !((p == basis[i] && q == basis[j]) || (p == basis[j] && q == basis[i])) {
                        basis[i] = p;
                        basis[j] = q;
                        changed = true;
                        break 'pairs;
                    }
                } else if a > TOL {
                    let (deep, other) = if x.depth >= y.depth { (i, j) } else { (j, i) };
                    let r = slice
                        .reflect_index(basis[deep], basis[other])
                        .ok_or_else(|| Error::WindowExhausted("subgroup basis outside window".into()))?;
                    basis[deep] = slice.positive_form(r);
                    changed = true;
                    break 'pairs;
                }
            }
        }
        if !changed {
            basis.sort_by_key(|&i| (slice.get(i).depth, i));
            return Ok(basis);
        }
    }
    Err(Error::WindowExhausted("subgroup basis outside window (iteration cap)".into()))
}

/// The pairwise Lemma 4.3(iii) condition on a candidate set of simple roots.
pub fn satisfies_pairwise_criterion(slice: &RootSlice, basis: &[usize]) -> bool {
    let datum = &slice.datum;
    for (k, &i) in basis.iter().enumerate() {
        for &j in &basis[k + 1..] {
            let (x, y) = (slice.get(i), slice.get(j));
            let a = datum.pair(&x.root, &y.coroot);
            let b = datum.pair(&y.root, &x.coroot);
            if a > TOL || b > TOL || (a.abs() <= TOL) != (b.abs() <= TOL) {
                return false;
            }
            if super::ngcm::coxeter_order(a * b).is_err() {
                return false;
            }
        }
    }
    true
}

/// Thm 5.3 test for a candidate root basis: `|basis| = |S|`, pairwise criterion,
/// positive independence, and the reflections generate `W`.
pub fn is_real_root_basis(slice: &RootSlice, g: &CoxeterGroup, basis: &[usize]) -> Result<bool> {
    if basis.len() != g.rank() || !satisfies_pairwise_criterion(slice, basis) {
        return Ok(false);
    }
    let roots: Vec<Vec<f64>> = basis.iter().map(|&i| slice.get(i).root.clone()).collect();
    if !positively_independent_f64(&roots) {
        return Ok(false);
    }
    let refl: Vec<GroupElement> = basis.iter().map(|&i| slice.reflection_of(g, i)).collect();
    let bound = 2 * slice.depth_bound + 2;
    g.generates(&refl, bound, 2 * bound + 1, DEFAULT_ELEMENT_CAP)
}
