//! Waring numbers by iterated sumsets: g_a(e, p) for Dickson value sets over
//! F_p and G(k, p) for k-th powers of norm-one elements over F_{p^2}, plus
//! exact representation counts N_s(c).

use serde_json::{json, Map, Value};

use crate::dickson::{dickson_value_set, power_value_set};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::valueset::{Ambient, ValueSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverageStatus {
    /// Full coverage first reached at s = g.
    Covered { g: u32 },
    /// A sumset step added no new element short of full coverage; by Kneser's
    /// theorem the cardinality can never grow again, so g = infinity.
    Stabilized { card: u64 },
    /// Neither coverage nor stabilization within `cap` steps.
    CapReached { cap: u64 },
}

/// Per-step sumset cardinalities |S_1|, |S_2|, ... and the terminal status.
#[derive(Debug, Clone)]
pub struct CoverageProfile {
    pub p: u64,
    pub ambient: Ambient,
    pub cards: Vec<u64>,
    pub status: CoverageStatus,
}

impl CoverageProfile {
    pub fn g(&self) -> Option<u32> {
        match self.status {
            CoverageStatus::Covered { g } => Some(g),
            _ => None,
        }
    }

    pub fn status_label(&self) -> &'static str {
        match self.status {
            CoverageStatus::Covered { .. } => "covered",
            CoverageStatus::Stabilized { .. } => "stabilized",
            CoverageStatus::CapReached { .. } => "cap",
        }
    }

    /// JSON record with the frozen key order p, ambient, params, status, g, cards.
    pub fn to_record(&self, params: Value) -> Value {
        let mut m = Map::new();
        m.insert("p".into(), json!(self.p));
        m.insert("ambient".into(), json!(self.ambient.label()));
        m.insert("params".into(), params);
        m.insert("status".into(), json!(self.status_label()));
        m.insert("g".into(), match self.g() {
            Some(g) => json!(g),
            None => Value::Null,
        });
        m.insert("cards".into(), json!(self.cards));
        Value::Object(m)
    }
}

/// Iterates S_{s+1} = S_s + A from S_1 = A until full coverage,
/// stabilization, or `cap` steps. `cap = None` defaults to the ambient size,
/// which Cauchy-Davenport makes always sufficient over Z/p.
pub fn waring_number(a: &ValueSet, cap: Option<u64>) -> Result<CoverageProfile> {
    if a.card() == 0 {
        return Err(Error::InvalidInput("empty value set has no Waring number".into()));
    }
    let ambient = a.ambient();
    let cap = cap.unwrap_or_else(|| ambient.size());
    let mut profile = CoverageProfile {
        p: ambient.p(),
        ambient,
        cards: vec![a.card()],
        status: CoverageStatus::CapReached { cap },
    };
    if a.is_full() {
        profile.status = CoverageStatus::Covered { g: 1 };
        return Ok(profile);
    }
    let mut cur = a.clone();
    for s in 2..=cap {
        let next = cur.sumset(a)?;
        profile.cards.push(next.card());
        if next.is_full() {
            profile.status = CoverageStatus::Covered { g: s as u32 };
            return Ok(profile);
        }
        if next.card() == cur.card() {
            profile.status = CoverageStatus::Stabilized { card: next.card() };
            return Ok(profile);
        }
        cur = next;
    }
    Ok(profile)
}

/// g_a(e, p): Waring iteration over the Dickson value set.
pub fn waring_dickson(p: u64, e: u64, a: u64, cap: Option<u64>) -> Result<CoverageProfile> {
    waring_number(&dickson_value_set(p, e, a)?, cap)
}

/// G(k, p): Waring iteration over {u^k : u in N_{p^2}} inside F_{p^2}.
pub fn waring_norm_one(ctx: &FieldCtx, k: u64, cap: Option<u64>) -> Result<CoverageProfile> {
    waring_number(&power_value_set(ctx, k)?, cap)
}

/// Exact counts N_s(c) for every c in the ambient group: the number of
/// ordered s-tuples from A summing to c, by repeated schoolbook integer
/// convolution of the indicator vector. Index order is canonical.
pub fn representation_counts(a: &ValueSet, s: u32) -> Result<Vec<u128>> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be >= 1".into()));
    }
    let ambient = a.ambient();
    let size = ambient.size() as usize;
    let members: Vec<u64> = a.iter_indices().collect();
    let mut cur = vec![0u128; size];
    for &m in &members {
        cur[m as usize] = 1;
    }
    for _ in 1..s {
        let mut next = vec![0u128; size];
        for (i, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &m in &members {
                let t = ambient.add_indices(i as u64, m) as usize;
                next[t] += c;
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// N_s(c) for one target.
pub fn representation_count(a: &ValueSet, s: u32, c: u64) -> Result<u128> {
    Ok(representation_counts(a, s)?[c as usize])
}
