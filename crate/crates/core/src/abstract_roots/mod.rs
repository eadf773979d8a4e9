//! The abstract root system `T x {+1,-1}` of a Coxeter system, with the
//! W-action twisted by the reflection cocycle `N(w) = {t : l(tw) < l(w)}`.

mod basis;
mod between;
mod census;
mod qps;
mod subgroup;
mod window;

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

pub use basis::{dihedral_basis_check, is_abstract_root_basis, system_from_family, verify_simple_family, BasisReport};
pub use between::{BetweennessTable, Interval, Realization};
pub use census::{biclosed_census, Census};
pub use qps::{Compatibility, Generativity, QuasiPositiveSystem, SimpleRoots};
pub use subgroup::{chi, induced_subsystem, reflection_closure, transport_subgroup, Transport};
pub use window::Window;

use crate::error::Result;
use crate::group::{CoxeterGroup, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_bool_neg(neg: bool) -> Self {
        if neg {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn is_neg(self) -> bool {
        self == Sign::Neg
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        Sign::from_bool_neg(self.is_neg() != o.is_neg())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", i8::from(*self))
    }
}

/// Whether a window computation covers all of `T` or only the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certainty {
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "WINDOW_ONLY")]
    WindowOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractRoot {
    pub reflection: GroupElement,
    pub sign: Sign,
}

impl AbstractRoot {
    pub fn new(reflection: GroupElement, sign: Sign) -> Self {
        Self { reflection, sign }
    }
}

impl Neg for AbstractRoot {
    type Output = AbstractRoot;
    fn neg(self) -> AbstractRoot {
        AbstractRoot { reflection: self.reflection, sign: -self.sign }
    }
}

/// `N(w)`, ShortLex sorted.
pub fn cocycle(g: &CoxeterGroup, w: &GroupElement) -> Result<Vec<GroupElement>> {
    g.check(w)?;
    Ok(g.inversion_set(w))
}

/// `w(t, e) = (w t w^{-1}, eta e)` with `eta = -1` iff `t` lies in `N(w^{-1})`.
pub fn act(g: &CoxeterGroup, w: &GroupElement, root: &AbstractRoot) -> Result<AbstractRoot> {
    let reflection = g.conjugate(w, &root.reflection)?;
    // t in N(w^{-1}) iff l(w t) < l(w)
    let flip = g.multiply(w, &root.reflection)?.len() < w.len();
    Ok(AbstractRoot { reflection, sign: if flip { -root.sign } else { root.sign } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CoxeterMatrix;

    fn b2() -> CoxeterGroup {
        CoxeterGroup::new(CoxeterMatrix::from_type("B2").unwrap().with_names(&["r", "s"]).unwrap())
    }

    #[test]
    fn cocycle_examples() {
        let g = b2();
        assert!(cocycle(&g, &g.identity()).unwrap().is_empty());
        let n: Vec<String> = cocycle(&g, &g.parse("rs").unwrap()).unwrap().iter().map(|t| g.format(t)).collect();
        assert_eq!(n, vec!["r", "rsr"]);
        assert_eq!(cocycle(&g, &g.parse("rsrs").unwrap()).unwrap().len(), 4);
    }

    #[test]
    fn act_examples() {
        let g = b2();
        let p = |s| g.parse(s).unwrap();
        let s1 = AbstractRoot::new(p("s"), Sign::Pos);
        assert_eq!(act(&g, &p("s"), &s1).unwrap(), AbstractRoot::new(p("s"), Sign::Neg));
        assert_eq!(act(&g, &p("r"), &s1).unwrap(), AbstractRoot::new(p("rsr"), Sign::Pos));
        let w = p("rs");
        let wi = g.inverse(&w);
        for t in ["r", "s", "rsr", "srs"] {
            for e in [Sign::Pos, Sign::Neg] {
                let rho = AbstractRoot::new(p(t), e);
                assert_eq!(act(&g, &w, &act(&g, &wi, &rho).unwrap()).unwrap(), rho);
            }
        }
    }

    #[test]
    fn sign_serde() {
        assert_eq!(serde_json::to_string(&Sign::Neg).unwrap(), "-1");
        assert_eq!(serde_json::from_str::<Sign>("1").unwrap(), Sign::Pos);
        assert!(serde_json::from_str::<Sign>("0").is_err());
        assert_eq!(serde_json::to_string(&Certainty::WindowOnly).unwrap(), "\"WINDOW_ONLY\"");
    }
}
