use std::sync::Arc;

use super::qps::QuasiPositiveSystem;
use super::window::Window;
use super::{act, AbstractRoot, Certainty, Sign};
use crate::error::Result;
use crate::exec::Exec;
use crate::group::GroupElement;

/// Reflections of the subgroup generated by `gens`, as window indices
/// (conjugation closure of the generators inside the window).
pub fn reflection_closure(window: &Window, gens: &[GroupElement]) -> Result<Vec<usize>> {
    let mut members: Vec<usize> = Vec::new();
    let mut inside = vec![false; window.len()];
    for g in gens {
        let i = window.require(g)?;
        if !inside[i] {
            inside[i] = true;
            members.push(i);
        }
    }
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        let mut j = 0;
        while j < members.len() {
            let y = members[j];
            for (a, b) in [(x, y), (y, x)] {
                if let Some(z) = window.conj(a, b) {
                    if !inside[z] {
                        inside[z] = true;
                        members.push(z);
                    }
                }
            }
            j += 1;
        }
        k += 1;
    }
    members.sort();
    Ok(members)
}

/// Canonical Coxeter generators `chi(W') = {t in T' : N(t) cap T' = {t}}`.
pub fn chi(window: &Window, gens: &[GroupElement]) -> Result<(Vec<usize>, Certainty)> {
    let closure = reflection_closure(window, gens)?;
    let mut inside = fixedbitset::FixedBitSet::with_capacity(window.len());
    for &t in &closure {
        inside.insert(t);
    }
    let out = closure
        .iter()
        .copied()
        .filter(|&t| window.inversions(t).intersection(&inside).count() == 1)
        .collect();
    Ok((out, window.certainty()))
}

/// `Psi cap T'^` as a system on the subgroup's own window.
pub fn induced_subsystem(psi: &QuasiPositiveSystem, gens: &[GroupElement]) -> Result<QuasiPositiveSystem> {
    let window = psi.window();
    let closure = reflection_closure(window, gens)?;
    let refl: Vec<GroupElement> = closure.iter().map(|&t| window.reflection(t).clone()).collect();
    let sub = Arc::new(Window::from_reflections(window.group(), refl, window.is_exact(), Exec::Sequential)?);
    let signs = sub
        .reflections()
        .iter()
        .map(|t| psi.sign(window.index_of(t).expect("closure lies in window")))
        .collect();
    QuasiPositiveSystem::from_signs(sub, signs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    /// Minimal element of the coset `w W'`.
    pub y: GroupElement,
    pub chi_source: Vec<GroupElement>,
    pub chi_target: Vec<GroupElement>,
    /// `chi(w W' w^{-1}) = y chi(W') y^{-1}`.
    pub consistent: bool,
    /// `y` maps every positive root of `W'` to a positive root.
    pub positive_preserved: bool,
    pub certainty: Certainty,
}

/// Carries the reflection subgroup `W'` to `w W' w^{-1}` through the minimal coset element.
pub fn transport_subgroup(window: &Window, gens: &[GroupElement], w: &GroupElement) -> Result<Transport> {
    let g = window.group();
    g.check(w)?;
    let closure = reflection_closure(window, gens)?;
    let mut y = w.clone();
    'descend: loop {
        for &t in &closure {
            let yt = g.multiply(&y, window.reflection(t))?;
            if yt.len() < y.len() {
                y = yt;
                continue 'descend;
            }
        }
        break;
    }
    let (src, _) = chi(window, gens)?;
    let chi_source: Vec<GroupElement> = src.iter().map(|&t| window.reflection(t).clone()).collect();
    let conj_gens: Vec<GroupElement> = gens.iter().map(|x| g.conjugate(w, x)).collect::<Result<_>>()?;
    let (dst, _) = chi(window, &conj_gens)?;
    let chi_target: Vec<GroupElement> = dst.iter().map(|&t| window.reflection(t).clone()).collect();
    let mut image: Vec<GroupElement> = chi_source.iter().map(|c| g.conjugate(&y, c)).collect::<Result<_>>()?;
    image.sort();
    let mut positive_preserved = true;
    for &t in &closure {
        let img = act(g, &y, &AbstractRoot::new(window.reflection(t).clone(), Sign::Pos))?;
        positive_preserved &= img.sign == Sign::Pos;
    }
    Ok(Transport {
        consistent: image == chi_target,
        y,
        chi_source,
        chi_target,
        positive_preserved,
        certainty: window.certainty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CoxeterGroup, CoxeterMatrix};

    fn b2() -> (CoxeterGroup, Arc<Window>) {
        let g = CoxeterGroup::new(CoxeterMatrix::from_type("B2").unwrap().with_names(&["r", "s"]).unwrap());
        let w = Arc::new(Window::full(&g, 1000, Exec::Sequential).unwrap());
        (g, w)
    }

    fn els(g: &CoxeterGroup, ws: &[&str]) -> Vec<GroupElement> {
        ws.iter().map(|w| g.parse(w).unwrap()).collect()
    }

    fn fmt(g: &CoxeterGroup, w: &Window, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&t| g.format(w.reflection(t))).collect()
    }

    #[test]
    fn chi_examples() {
        let (g, w) = b2();
        assert_eq!(fmt(&g, &w, &chi(&w, &els(&g, &["r", "s"])).unwrap().0), vec!["r", "s"]);
        assert_eq!(fmt(&g, &w, &chi(&w, &els(&g, &["s", "srs"])).unwrap().0), vec!["r", "s"]);
        assert_eq!(fmt(&g, &w, &chi(&w, &els(&g, &["rsr"])).unwrap().0), vec!["rsr"]);
        assert_eq!(fmt(&g, &w, &chi(&w, &els(&g, &["r", "srs"])).unwrap().0), vec!["r", "srs"]);
    }

    #[test]
    fn induced_examples() {
        let (g, w) = b2();
        let std = QuasiPositiveSystem::standard(w.clone());
        let all = induced_subsystem(&std, &els(&g, &["s", "srs"])).unwrap();
        assert_eq!(all.roots(), std.roots());
        let one = induced_subsystem(&std, &els(&g, &["rsr"])).unwrap();
        assert_eq!(one.roots(), vec![AbstractRoot::new(g.parse("rsr").unwrap(), Sign::Pos)]);
        let sub = induced_subsystem(&std, &els(&g, &["r", "srs"])).unwrap();
        let simple: Vec<String> = sub.simple_roots().roots.iter().map(|&t| g.format(sub.window().reflection(t))).collect();
        assert_eq!(simple, vec!["r", "srs"]);
    }

    #[test]
    fn transport_examples() {
        let (g, w) = b2();
        let wp = els(&g, &["r"]);
        let t = transport_subgroup(&w, &wp, &g.parse("r").unwrap()).unwrap();
        assert!(t.y.is_identity() && t.consistent);
        let t = transport_subgroup(&w, &wp, &g.parse("s").unwrap()).unwrap();
        assert_eq!(g.format(&t.y), "s");
        assert_eq!(t.chi_target, els(&g, &["srs"]));
        assert!(t.consistent && t.positive_preserved);
        let t = transport_subgroup(&w, &wp, &g.parse("rs").unwrap()).unwrap();
        assert_eq!(g.format(&t.y), "rs");
        assert!(t.consistent && t.positive_preserved);
    }
}
