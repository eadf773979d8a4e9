use std::sync::Arc;

use serde::Serialize;

use super::between::BetweennessTable;
use super::qps::QuasiPositiveSystem;
use super::window::Window;
use super::Sign;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Result of checking all `2^|T|` quasi-positive systems of a finite group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Census {
    pub candidates: usize,
    /// Sign masks (bit `t` set = negative at `t`) of the biclosed systems, ascending.
    pub biclosed: Vec<u64>,
    /// Masks of the systems `w(T_+)`, ascending.
    pub conjugates: Vec<u64>,
    pub all_biclosed_generative: bool,
}

impl Census {
    /// The biclosed systems are exactly the conjugates of the standard one.
    pub fn matches_conjugates(&self) -> bool {
        self.biclosed == self.conjugates
    }
}

const MAX_REFLECTIONS: usize = 24;

pub fn biclosed_census(window: &Arc<Window>, table: &BetweennessTable, exec: Exec) -> Result<Census> {
    let n = window.len();
    if !window.is_exact() {
        return Err(Error::Precondition("census needs the full reflection set of a finite group".into()));
    }
    if n > MAX_REFLECTIONS {
        return Err(Error::ResourceCap { what: "reflections for census".into(), cap: MAX_REFLECTIONS });
    }
    let roots = 2 * n;
    // between[x][y] as u64 masks over window root ids
    let between: Vec<u64> = (0..roots * roots)
        .map(|k| table.between(k / roots, k % roots).ones().fold(0u64, |m, b| m | (1 << b)))
        .collect();
    let root_mask = |mask: u64| -> u64 {
        (0..n).fold(0u64, |m, t| m | 1 << (2 * t + ((mask >> t) & 1) as usize))
    };
    let closed = |set: u64| -> bool {
        let ids: Vec<usize> = (0..roots).filter(|&i| set >> i & 1 == 1).collect();
        ids.iter().all(|&x| ids.iter().all(|&y| between[x * roots + y] & !set == 0))
    };
    let full = if roots == 64 { u64::MAX } else { (1u64 << roots) - 1 };
    let candidates = 1usize << n;
    let flags = exec.map_range(candidates, |mask| {
        let set = root_mask(mask as u64);
        closed(set) && closed(full & !set)
    });
    let biclosed: Vec<u64> = (0..candidates).filter(|&m| flags[m]).map(|m| m as u64).collect();
    let g = window.group();
    let elements = g.enumerate_all(crate::DEFAULT_ELEMENT_CAP, exec)?;
    let mut conjugates: Vec<u64> = exec.map(&elements, |w| {
        (0..n).fold(0u64, |m, t| if g.in_inversion_set(window.reflection(t), w) { m | 1 << t } else { m })
    });
    conjugates.sort();
    conjugates.dedup();
    let gens = exec.map(&biclosed, |&mask| {
        let signs = (0..n).map(|t| Sign::from_bool_neg(mask >> t & 1 == 1)).collect();
        QuasiPositiveSystem::from_signs(window.clone(), signs)
            .and_then(|q| q.is_generative())
            .map(|r| r.generative)
    });
    let all_biclosed_generative = gens.into_iter().collect::<Result<Vec<bool>>>()?.into_iter().all(|x| x);
    Ok(Census { candidates, biclosed, conjugates, all_biclosed_generative })
}
