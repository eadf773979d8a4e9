//! Acceptance criteria, one pass/fail line each. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{dihedral_interval, group, named, subword_leq};
use rootforge::abstract_roots::{
    act, biclosed_census, is_abstract_root_basis, AbstractRoot, BetweennessTable, QuasiPositiveSystem, Realization,
    Sign, Window,
};
use rootforge::io::read_datum;
use rootforge::orders::{lex_system, standard_basis, CocycleTable};
use rootforge::real_roots::{generate_roots, is_real_root_basis, BasedRootDatum};
use rootforge::twisting::{apply_twist, example_319, twist_sign_solve};
use rootforge::{CoxeterGroup, Exec};

const CAP: usize = 100_000;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn root(g: &CoxeterGroup, t: &str, s: i8) -> AbstractRoot {
    AbstractRoot::new(g.parse(t).unwrap(), Sign::try_from(s).unwrap())
}

fn c1_b2_paper_system() -> Check {
    let g = named("B2", &["r", "s"]);
    let w = Arc::new(Window::full(&g, CAP, Exec::default()).map_err(e)?);
    let psi = QuasiPositiveSystem::from_roots(
        w.clone(),
        &[root(&g, "s", 1), root(&g, "srs", 1), root(&g, "r", 1), root(&g, "rsr", -1)],
    )
    .map_err(e)?;
    let simple: BTreeSet<AbstractRoot> = psi.simple_roots().roots.iter().map(|&t| psi.root(t)).collect();
    let want: BTreeSet<AbstractRoot> = [root(&g, "s", 1), root(&g, "srs", 1)].into();
    ensure(simple == want, "simple roots differ")?;
    let gen = psi.is_generative().map_err(e)?;
    let sprime: BTreeSet<String> = gen.simple_reflections.iter().map(|&t| g.format(w.reflection(t))).collect();
    ensure(gen.generative && sprime == ["s".to_string(), "srs".to_string()].into(), "not generative with S'={s,srs}")?;
    let real = Realization::standard(&g, 8).map_err(e)?;
    let table = BetweennessTable::new(&w, &real, Exec::default()).map_err(e)?;
    ensure(!table.is_biclosed_system(&psi), "system reported biclosed")?;
    let elements = g.enumerate_all(CAP, Exec::default()).map_err(e)?;
    for x in &elements {
        ensure(QuasiPositiveSystem::conjugate(w.clone(), x, Sign::Pos).map_err(e)? != psi, "equals a conjugate")?;
    }
    Ok(format!("simple={{(s,1),(srs,1)}}, generative, not biclosed, 0/{} conjugates match", elements.len()))
}

fn c2_census() -> Check {
    let mut parts = Vec::new();
    for (ty, total, want) in [("A2", 8, 6), ("B2", 16, 8), ("G2", 64, 12)] {
        let g = group(ty);
        let w = Arc::new(Window::full(&g, CAP, Exec::default()).map_err(e)?);
        let real = Realization::standard(&g, 16).map_err(e)?;
        let table = BetweennessTable::new(&w, &real, Exec::default()).map_err(e)?;
        let c = biclosed_census(&w, &table, Exec::default()).map_err(e)?;
        ensure(c.candidates == total, format!("{ty}: {} candidates", c.candidates))?;
        ensure(c.biclosed.len() == want, format!("{ty}: {} biclosed", c.biclosed.len()))?;
        ensure(c.matches_conjugates(), format!("{ty}: biclosed != conjugates"))?;
        parts.push(format!("{ty} {want}/{total}"));
    }
    Ok(parts.join(", "))
}

fn c3_affine_b2() -> Check {
    let g = named("~B2", &["r", "s", "t"]);
    let w = Arc::new(Window::new(&g, 8, CAP, Exec::default()).map_err(e)?);
    let delta = [root(&g, "s", 1), root(&g, "srs", 1), root(&g, "t", 1)];
    let rep = is_abstract_root_basis(&w, &delta, None).map_err(e)?;
    ensure(rep.generates, "<S'> != W")?;
    ensure(rep.rank_ok, "|delta| != |S|")?;
    ensure(!rep.basis && !rep.pairs_ok, "accepted as a basis")?;
    ensure(rep.failures.iter().any(|f| f.contains("(s,1),(srs,1)")), "wrong failing pair")?;
    Ok(format!("rejected at L=8: {}", rep.failures.join("; ")))
}

fn c4_twists() -> Check {
    let a = apply_twist(&example_319(false)).map_err(e)?;
    ensure(a.generators[0] == a.group.parse("stsrsts").map_err(e)?, "r' != stsrsts")?;
    let b = apply_twist(&example_319(true)).map_err(e)?;
    ensure(b.generators[3] == b.group.parse("ada").map_err(e)?, "d' != ada")?;
    let sa = twist_sign_solve(&example_319(false)).map_err(e)?;
    let want = vec![Sign::Neg, Sign::Pos, Sign::Pos, Sign::Pos];
    let flipped: Vec<Sign> = want.iter().map(|&s| -s).collect();
    ensure(sa.signs == Some(want.clone()) || sa.signs == Some(flipped), "graph 1 sign pattern")?;
    let sb = twist_sign_solve(&example_319(true)).map_err(e)?;
    ensure(!sb.feasible, "graph 2 reported feasible")?;
    Ok("r'=stsrsts, d'=ada, signs (r',-1),(s,1),(t,1),(u,1), graph 2 infeasible".into())
}

fn c5_example_58() -> Check {
    let datum = |sign: f64| {
        let text = format!(
            r#"{{"labels":["a0","a1","b0","b1"],"pairing":[[2,0,0],[0,2,0],[0,0,0]],
            "roots":[[1,0,0],[-1,0,1],[0,{s},0],[0,{m},{s}]],
            "coroots":[[1,0,0],[-1,0,1],[0,{s},0],[0,{m},{s}]]}}"#,
            s = sign,
            m = -sign
        );
        read_datum(&text)
    };
    let mixed = datum(-1.0).map_err(e)?.validate();
    ensure(!mixed.valid, "mixed signs accepted")?;
    ensure(mixed.problems.iter().any(|p| p.contains("not positively independent")), "wrong message")?;
    let constant = datum(1.0).map_err(e)?.validate();
    ensure(constant.valid, format!("constant signs rejected: {:?}", constant.problems))?;
    Ok("mixed rejected (not positively independent), constant accepted".into())
}

fn c6_cocycle() -> Check {
    let mut parts = Vec::new();
    for ty in ["A2", "B2", "G2", "A3"] {
        let g = group(ty);
        let els = g.enumerate_all(CAP, Exec::default()).map_err(e)?;
        let bad = Exec::default().map(&els, |x| {
            let nx: BTreeSet<_> = g.inversion_set(x).into_iter().collect();
            if nx.len() != x.len() {
                return true;
            }
            els.iter().any(|y| {
                let xy = g.multiply(x, y).unwrap();
                let mut rhs = nx.clone();
                for t in g.inversion_set(y) {
                    let c = g.conjugate(x, &t).unwrap();
                    if !rhs.remove(&c) {
                        rhs.insert(c);
                    }
                }
                rhs != g.inversion_set(&xy).into_iter().collect()
            })
        });
        ensure(!bad.iter().any(|&b| b), format!("{ty}: cocycle identity fails"))?;
        parts.push(format!("{ty} |W|={}", els.len()));
    }
    Ok(parts.join(", "))
}

fn c7_root_counts() -> Check {
    let mut parts = Vec::new();
    for (ty, want) in [("A2", 3), ("B2", 4), ("G2", 6), ("A3", 6), ("B3", 9), ("H3", 15)] {
        let g = group(ty);
        let d = BasedRootDatum::standard(g.matrix());
        let slice = generate_roots(&d, 32, CAP).map_err(e)?;
        ensure(slice.complete, format!("{ty}: closure incomplete"))?;
        ensure(slice.positive_count() == want, format!("{ty}: {} positive roots", slice.positive_count()))?;
        ensure(d.properties().reduced, format!("{ty}: not reduced"))?;
        let refl: BTreeSet<_> = (0..slice.len())
            .filter(|&i| slice.get(i).positive)
            .map(|i| slice.reflection_of(&g, i))
            .collect();
        let t = g.reflections(usize::MAX, CAP, Exec::default()).map_err(e)?;
        ensure(refl.len() == want && refl == t.into_iter().collect(), format!("{ty}: reflection map not bijective"))?;
        parts.push(format!("{ty}={want}"));
    }
    Ok(parts.join(", "))
}

fn c8_betweenness() -> Check {
    let mut parts = Vec::new();
    for (label, ty, len, half) in [("B2", "B2", usize::MAX, 4), ("G2", "G2", usize::MAX, 6), ("I2(inf) L=6", "I2(0)", 6, 1000)] {
        let g = group(ty);
        let ty = label;
        let w = if g.is_finite() {
            Window::full(&g, CAP, Exec::default())
        } else {
            Window::new(&g, len, CAP, Exec::default())
        }
        .map_err(e)?;
        let real = Realization::standard(&g, 12).map_err(e)?;
        let roots: Vec<AbstractRoot> = (0..2 * w.len()).map(|i| w.root_of_id(i)).collect();
        let (mut pairs, mut reflected) = (0, 0);
        for a in &roots {
            for b in &roots {
                let (got, _) = real.interval(a, b).map_err(e)?;
                let got: BTreeSet<AbstractRoot> = got.into_iter().filter(|r| w.index_of(&r.reflection).is_some()).collect();
                let want = dihedral_interval(&roots, a, b, half);
                ensure(got == want, format!("{ty}: interval mismatch"))?;
                pairs += 1;
                if a.reflection != b.reflection {
                    match real.reflect_from_betweenness(a, b) {
                        Ok(r) => {
                            ensure(r == act(&g, &b.reflection, a).map_err(e)?, format!("{ty}: reflect mismatch"))?;
                            reflected += 1;
                        }
                        Err(err) if g.is_finite() => return Err(format!("{ty}: {err}")),
                        Err(_) => {}
                    }
                }
            }
        }
        parts.push(format!("{ty} {pairs} intervals/{reflected} reflections"));
    }
    Ok(parts.join(", "))
}

fn c9_find_conjugator() -> Check {
    let mut parts = Vec::new();
    for ty in ["A2", "B2", "G2", "A3"] {
        let g = group(ty);
        let w = Arc::new(Window::full(&g, CAP, Exec::default()).map_err(e)?);
        let els = g.enumerate_all(CAP, Exec::default()).map_err(e)?;
        for x in &els {
            let q = QuasiPositiveSystem::conjugate(w.clone(), x, Sign::Pos).map_err(e)?;
            let (y, eps) = q.find_conjugator().map_err(e)?;
            ensure(y == *x && eps == Sign::Pos, format!("{ty}: wrong conjugator for {}", g.format(x)))?;
        }
        parts.push(format!("{ty} {}", els.len()));
    }
    Ok(parts.join(", "))
}

fn c10_orders() -> Check {
    for ty in ["A2", "B2", "A3"] {
        let g = group(ty);
        let t = CocycleTable::standard(&g, CAP, Exec::default()).map_err(e)?;
        let o = t.bruhat(&fixedbitset::FixedBitSet::with_capacity(t.window().len()));
        let els = t.elements();
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate() {
                ensure(o.leq(i, j) == subword_leq(&g, x, y), format!("{ty}: Bruhat != subword order"))?;
            }
        }
    }
    let g = group("B2");
    let t = CocycleTable::standard(&g, CAP, Exec::default()).map_err(e)?;
    let nt = t.window().len();
    for mask in 0u32..1 << nt {
        let mut a = fixedbitset::FixedBitSet::with_capacity(nt);
        (0..nt).filter(|&i| mask >> i & 1 == 1).for_each(|i| a.insert(i));
        let mut ta = t.full_set();
        ta.symmetric_difference_with(&a);
        let (o, d) = (t.bruhat(&a), t.bruhat(&ta));
        for x in 0..t.elements().len() {
            for y in 0..t.elements().len() {
                ensure(o.leq(x, y) == d.leq(y, x), "B2 duality fails")?;
            }
        }
    }
    for ty in ["B2", "G2", "H3"] {
        let g = group(ty);
        let w = Arc::new(Window::full(&g, CAP, Exec::default()).map_err(e)?);
        let n = g.rank();
        let mut prec = standard_basis(n);
        prec.reverse();
        for (p, om) in [(prec, standard_basis(n)), (standard_basis(n), standard_basis(n))] {
            let lex = lex_system(w.clone(), p, om).map_err(e)?;
            let table = CocycleTable::new(&lex.psi, CAP, Exec::default()).map_err(e)?;
            let refl: Vec<_> = lex.a.iter().map(|&t| w.reflection(t).clone()).collect();
            let o = table.bruhat(&table.twist_set(&refl).map_err(e)?);
            ensure(o.is_partial_order() && o.is_transitive(), format!("{ty}: lex order not a partial order"))?;
        }
    }
    Ok("subword oracle A2/B2/A3, duality over 16 subsets of T(B2), lex partial orders B2/G2/H3".into())
}

fn c11_root_bases() -> Check {
    let mut parts = Vec::new();
    for (ty, want) in [("B2", 8), ("A3", 24)] {
        let g = group(ty);
        let slice = generate_roots(&BasedRootDatum::standard(g.matrix()), 32, CAP).map_err(e)?;
        let n = g.rank();
        // orbit sets eps * w(Pi) as sorted slice indices
        let simple: Vec<usize> = (0..n).map(|s| (0..slice.len()).find(|&i| slice.get(i).depth == 0 && slice.get(i).positive && slice.get(i).simple == s).unwrap()).collect();
        let mut orbit: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in g.enumerate_all(CAP, Exec::default()).map_err(e)? {
            let image: Vec<usize> = simple
                .iter()
                .map(|&i| x.word().iter().rev().fold(i, |cur, &s| slice.reflect_index(cur, simple[s]).unwrap()))
                .collect();
            for neg in [false, true] {
                let mut set: Vec<usize> = image.iter().map(|&i| if neg { slice.negation(i) } else { i }).collect();
                set.sort();
                orbit.insert(set);
            }
        }
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let m = slice.len();
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            if is_real_root_basis(&slice, &g, &idx).map_err(e)? {
                found.insert(idx.clone());
            }
            // next n-subset of 0..m
            let Some(k) = (0..n).rev().find(|&k| idx[k] < m - n + k) else { break };
            idx[k] += 1;
            for j in k + 1..n {
                idx[j] = idx[j - 1] + 1;
            }
        }
        ensure(found == orbit, format!("{ty}: {} bases found, {} orbit sets", found.len(), orbit.len()))?;
        ensure(found.len() == want, format!("{ty}: expected {want} bases"))?;
        parts.push(format!("{ty} {want} bases = eps*w(Pi)"));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 11] = [
        ("B2 paper system", Duration::from_secs(1), c1_b2_paper_system),
        ("biclosed census", Duration::from_secs(5), c2_census),
        ("B~2 counterexample", Duration::from_secs(2), c3_affine_b2),
        ("twist examples", Duration::from_secs(1), c4_twists),
        ("Example 5.8", Duration::from_secs(1), c5_example_58),
        ("cocycle suite", Duration::from_secs(10), c6_cocycle),
        ("root counts", Duration::from_secs(10), c7_root_counts),
        ("betweenness cross-validation", Duration::from_secs(10), c8_betweenness),
        ("find_conjugator", Duration::from_secs(10), c9_find_conjugator),
        ("orders", Duration::from_secs(30), c10_orders),
        ("Theorem 5.3 root bases", Duration::from_secs(60), c11_root_bases),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > *limit => Err(format!("{msg}; took {took:.2?} > {limit:?}")),
            r => r,
        };
        match result {
            Ok(msg) => println!("PASS {:>2} {name} [{took:.2?} / {limit:?}]: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{took:.2?} / {limit:?}]: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
