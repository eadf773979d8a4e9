//! JSON file formats shared by the library and the command line.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abstract_roots::{AbstractRoot, QuasiPositiveSystem, Sign, Window};
use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, CoxeterMatrix, GroupElement};
use crate::real_roots::{BasedRootDatum, Ngcm};
use crate::twisting::{TwistResult, TwistSpec};

fn invalid(e: impl std::fmt::Display) -> Error {
    Error::Invalid(e.to_string())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(invalid)
}

#[derive(Debug, Deserialize, Serialize)]
struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<u32>>>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    ty: Option<String>,
}

/// `{"generators": [...], "matrix": [[...]]}` with 0 for infinity, or `{"type": "B2"}`.
pub fn coxeter_matrix_from_value(v: &Value) -> Result<CoxeterMatrix> {
    let f: MatrixFile = serde_json::from_value(v.clone()).map_err(invalid)?;
    let m = match (f.matrix, f.ty) {
        (Some(rows), _) => match &f.generators {
            Some(names) => return CoxeterMatrix::new(names.clone(), rows),
            None => CoxeterMatrix::from_rows(rows)?,
        },
        (None, Some(ty)) => CoxeterMatrix::from_type(&ty)?,
        (None, None) => return Err(Error::Invalid("group needs \"matrix\" or \"type\"".into())),
    };
    match f.generators {
        Some(names) => m.with_names(&names.iter().map(String::as_str).collect::<Vec<_>>()),
        None => Ok(m),
    }
}

pub fn read_coxeter_matrix(text: &str) -> Result<CoxeterMatrix> {
    coxeter_matrix_from_value(&parse_json(text)?)
}

pub fn coxeter_matrix_json(m: &CoxeterMatrix) -> Value {
    json!({ "generators": m.names(), "matrix": m.rows() })
}

#[derive(Debug, Deserialize)]
struct DatumFile {
    labels: Vec<String>,
    #[serde(default)]
    ngcm: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pairing: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    roots: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    coroots: Option<Vec<Vec<f64>>>,
}

/// NGCM (`labels`, `ngcm`) or datum (`labels`, `roots`, `coroots`, optional `pairing`, which
/// defaults to the dot product).
pub fn read_datum(text: &str) -> Result<BasedRootDatum> {
    let f: DatumFile = serde_json::from_str(text).map_err(invalid)?;
    match (f.roots, f.coroots) {
        (Some(roots), Some(coroots)) => {
            let pairing = match f.pairing {
                Some(p) => p,
                None => {
                    let d = roots.first().map_or(0, Vec::len);
                    if coroots.first().map_or(0, Vec::len) != d {
                        return Err(Error::Invalid("default pairing needs dim V = dim V'".into()));
                    }
                    (0..d).map(|i| (0..d).map(|j| (i == j) as u8 as f64).collect()).collect()
                }
            };
            let datum = BasedRootDatum::new(f.labels, pairing, roots, coroots)?;
            if let Some(a) = f.ngcm {
                let got = datum.ngcm().a;
                let ok = a.len() == got.len()
                    && a.iter().zip(&got).all(|(x, y)| {
                        x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p - q).abs() <= crate::TOL)
                    });
                if !ok {
                    return Err(Error::Invalid("\"ngcm\" disagrees with roots, coroots and pairing".into()));
                }
            }
            Ok(datum)
        }
        (None, None) => {
            let a = f.ngcm.ok_or_else(|| Error::Invalid("datum needs \"ngcm\" or \"roots\"/\"coroots\"".into()))?;
            Ok(BasedRootDatum::from_ngcm(&Ngcm::new(f.labels, a)?))
        }
        _ => Err(Error::Invalid("\"roots\" and \"coroots\" must be given together".into())),
    }
}

pub fn datum_json(d: &BasedRootDatum) -> Value {
    json!({
        "labels": d.labels,
        "ngcm": d.ngcm().a,
        "pairing": d.pairing,
        "roots": d.roots,
        "coroots": d.coroots,
    })
}

#[derive(Debug, Deserialize, Serialize)]
struct RootJson {
    refl: String,
    sign: i8,
}

pub fn root_json(g: &CoxeterGroup, r: &AbstractRoot) -> Value {
    json!({ "refl": g.format(&r.reflection), "sign": i8::from(r.sign) })
}

pub fn roots_json(g: &CoxeterGroup, roots: &[AbstractRoot]) -> Value {
    Value::Array(roots.iter().map(|r| root_json(g, r)).collect())
}

pub fn root_from_value(g: &CoxeterGroup, v: &Value) -> Result<AbstractRoot> {
    let r: RootJson = serde_json::from_value(v.clone()).map_err(invalid)?;
    let t = g.parse(&r.refl)?;
    if !g.is_reflection(&t) {
        return Err(Error::Invalid(format!("`{}` is not a reflection", r.refl)));
    }
    let sign = Sign::try_from(r.sign).map_err(|_| Error::Invalid(format!("bad sign {}", r.sign)))?;
    Ok(AbstractRoot::new(t, sign))
}

pub fn roots_from_value(g: &CoxeterGroup, v: &Value) -> Result<Vec<AbstractRoot>> {
    v.as_array()
        .ok_or_else(|| Error::Invalid("expected an array of roots".into()))?
        .iter()
        .map(|r| root_from_value(g, r))
        .collect()
}

fn sign_from_value(v: &Value) -> Result<Sign> {
    let s = v.as_i64().ok_or_else(|| Error::Invalid("sign must be 1 or -1".into()))?;
    Sign::try_from(s as i8).map_err(|_| Error::Invalid(format!("bad sign {s}")))
}

/// A quasi-positive system: an array of roots naming every window reflection once, or one of
/// `{"standard": true}`, `{"conjugate": "w", "sign": e}`, `{"class_signs": [...]}`,
/// `{"roots": [...], "default": e}`.
pub fn qps_from_value(window: &Arc<Window>, v: &Value) -> Result<QuasiPositiveSystem> {
    let g = window.group();
    if v.is_array() {
        return QuasiPositiveSystem::from_roots(window.clone(), &roots_from_value(g, v)?);
    }
    let obj = v.as_object().ok_or_else(|| Error::Invalid("system must be an array or object".into()))?;
    if obj.get("standard").and_then(Value::as_bool) == Some(true) {
        return Ok(QuasiPositiveSystem::standard(window.clone()));
    }
    if let Some(w) = obj.get("conjugate") {
        let w = g.parse(w.as_str().ok_or_else(|| Error::Invalid("\"conjugate\" must be a word".into()))?)?;
        let eps = obj.get("sign").map(sign_from_value).transpose()?.unwrap_or(Sign::Pos);
        return QuasiPositiveSystem::conjugate(window.clone(), &w, eps);
    }
    if let Some(cs) = obj.get("class_signs") {
        let cs = cs.as_array().ok_or_else(|| Error::Invalid("\"class_signs\" must be an array".into()))?;
        let signs = cs.iter().map(sign_from_value).collect::<Result<Vec<_>>>()?;
        return QuasiPositiveSystem::class_signs(window.clone(), &signs);
    }
    if let Some(roots) = obj.get("roots") {
        let default = obj.get("default").map(sign_from_value).transpose()?.unwrap_or(Sign::Pos);
        let mut signs = vec![default; window.len()];
        let mut seen = vec![false; window.len()];
        for r in roots_from_value(g, roots)? {
            let t = window.require(&r.reflection)?;
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::Invalid(format!("reflection {} listed twice", g.format(&r.reflection))));
            }
            signs[t] = r.sign;
        }
        return QuasiPositiveSystem::from_signs(window.clone(), signs);
    }
    Err(Error::Invalid("unrecognized system description".into()))
}

pub fn qps_json(q: &QuasiPositiveSystem) -> Value {
    roots_json(q.window().group(), &q.roots())
}

/// `{"J": [...], "K": [...], "L": [...], "M": [...]}`, generators by name; the base group may be
/// embedded with `"generators"`/`"matrix"`/`"type"` or supplied separately.
pub fn twist_spec_from_value(v: &Value, base: Option<CoxeterMatrix>) -> Result<TwistSpec> {
    let base = match base {
        Some(b) => b,
        None => coxeter_matrix_from_value(v)
            .map_err(|e| Error::Invalid(format!("twist spec needs a base group: {e}")))?,
    };
    let block = |key: &str| -> Result<Vec<String>> {
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(x) => serde_json::from_value(x.clone()).map_err(invalid),
        }
    };
    let (j, k, l, m) = (block("J")?, block("K")?, block("L")?, block("M")?);
    fn r(v: &[String]) -> Vec<&str> {
        v.iter().map(String::as_str).collect()
    }
    TwistSpec::from_names(base, &r(&j), &r(&k), &r(&l), &r(&m))
}

pub fn twist_spec_json(spec: &TwistSpec) -> Value {
    let names = spec.base.names();
    let part = |v: &[usize]| v.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
    json!({
        "generators": names,
        "matrix": spec.base.rows(),
        "J": part(&spec.j),
        "K": part(&spec.k),
        "L": part(&spec.l),
        "M": part(&spec.m),
    })
}

pub fn twist_result_json(r: &TwistResult) -> Value {
    let g = &r.group;
    json!({
        "w_K": g.format(&r.w_k),
        "s_prime": r.matrix.names().iter().zip(&r.generators).enumerate()
            .map(|(i, (n, w))| json!({ "name": n, "word": g.format(w), "expression": r.expression(i) }))
            .collect::<Vec<_>>(),
        "generators": r.matrix.names(),
        "matrix": r.matrix.rows(),
    })
}

/// Twist set `A`: an array of reflection words, or `{"A": [...]}`; `{"all": true}` for `T`.
pub fn twist_set_from_value(g: &CoxeterGroup, window: &Window, v: &Value) -> Result<Vec<GroupElement>> {
    if v.get("all").and_then(Value::as_bool) == Some(true) {
        return Ok(window.reflections().to_vec());
    }
    let arr = v.get("A").unwrap_or(v);
    let words: Vec<String> = serde_json::from_value(arr.clone()).map_err(invalid)?;
    words
        .iter()
        .map(|w| {
            let t = g.parse(w)?;
            if !g.is_reflection(&t) {
                return Err(Error::Invalid(format!("`{w}` is not a reflection")));
            }
            Ok(t)
        })
        .collect()
}

pub fn twist_set_json(g: &CoxeterGroup, a: &[GroupElement]) -> Value {
    json!({ "A": a.iter().map(|t| g.format(t)).collect::<Vec<_>>() })
}
