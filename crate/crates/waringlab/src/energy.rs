//! Exact additive-energy counts over subgroups: R_tau for the Kloosterman
//! equation u + u^{-1} + v + v^{-1} = x + x^{-1} + y + y^{-1} over F_p^*,
//! T_tau for u + v = x + y over the norm-one group, and the trace-energy
//! count Tr(u + v) = Tr(x + y) from the open question.
//!
//! All counts are of ORDERED quadruples (u, v, x, y); an unordered
//! convention differs by symmetry factors.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{inv_mod, FpSubgroup, NormOneSubgroup};

/// Pairs (u, v) grouped by their key value never exceed tau^2 total, and the
/// O(tau^2) histogram is the whole cost; this cap keeps it desk-scale.
pub const DEFAULT_TAU_LIMIT: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyKind {
    /// R_tau over F_p^*.
    Kloosterman,
    /// T_tau over N_{p^2}.
    AdditiveFp2,
    /// Trace energy over N_{p^2} (open question; no proven bound).
    TraceFp2,
}

impl EnergyKind {
    pub fn csv_label(&self) -> &'static str {
        match self {
            EnergyKind::Kloosterman => "R",
            EnergyKind::AdditiveFp2 => "T",
            EnergyKind::TraceFp2 => "trace",
        }
    }

    pub fn ambient_label(&self) -> &'static str {
        match self {
            EnergyKind::Kloosterman => "fp",
            _ => "fp2",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnergyReport {
    pub p: u64,
    pub tau: u64,
    pub kind: EnergyKind,
    /// Exact ordered-quadruple count.
    pub count: u128,
    /// The lemma's right-hand side without its unknown constant; None for the
    /// trace energy, which has no proven bound.
    pub bound_value: Option<f64>,
    /// Reference curves reported alongside the trace energy for exploration.
    pub reference: Vec<(&'static str, f64)>,
}

impl EnergyReport {
    pub const CSV_HEADER: &'static str = "p,tau,ambient,kind,count,bound_value,ratio";

    pub fn ratio(&self) -> Option<f64> {
        self.bound_value.map(|b| self.count as f64 / b)
    }

    pub fn csv_row(&self) -> String {
        let (bound, ratio) = match self.bound_value {
            Some(b) => (format!("{:.9}", b), format!("{:.9}", self.ratio().unwrap())),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{}",
            self.p,
            self.tau,
            self.kind.ambient_label(),
            self.kind.csv_label(),
            self.count,
            bound,
            ratio
        )
    }
}

fn check_limit(tau: u64, limit: u64) -> Result<()> {
    if tau > limit {
        return Err(Error::RefuseQuadratic(format!(
            "tau = {tau} exceeds the O(tau^2) limit {limit}"
        )));
    }
    Ok(())
}

/// R_tau: exact count for u + u^{-1} + v + v^{-1} = x + x^{-1} + y + y^{-1}.
pub fn energy_kloosterman(h: &FpSubgroup, limit: Option<u64>) -> Result<EnergyReport> {
    check_limit(h.tau, limit.unwrap_or(DEFAULT_TAU_LIMIT))?;
    let p = h.p;
    // s(u) = u + u^{-1}; key for the pair (u, v) is s(u) + s(v) mod p.
    let s_vals: Vec<u64> = h
        .elements
        .iter()
        .map(|&u| (u + inv_mod(u, p).expect("nonzero")) % p)
        .collect();
    let mut hist: HashMap<u64, u64> = HashMap::new();
    for &su in &s_vals {
        for &sv in &s_vals {
            *hist.entry((su + sv) % p).or_insert(0) += 1;
        }
    }
    assert_eq!(hist.values().sum::<u64>(), h.tau * h.tau);
    let count: u128 = hist.values().map(|&m| (m as u128) * (m as u128)).sum();
    let (tf, pf) = (h.tau as f64, p as f64);
    Ok(EnergyReport {
        p,
        tau: h.tau,
        kind: EnergyKind::Kloosterman,
        count,
        bound_value: Some(tf.powf(8.0 / 3.0) + tf.powi(4) / pf),
        reference: Vec::new(),
    })
}

/// T_tau: exact count for u + v = x + y over a subgroup of N_{p^2}.
pub fn energy_additive_fp2(h: &NormOneSubgroup, limit: Option<u64>) -> Result<EnergyReport> {
    check_limit(h.tau, limit.unwrap_or(DEFAULT_TAU_LIMIT))?;
    let p = h.p;
    let mut hist: HashMap<u64, u64> = HashMap::new();
    for &u in &h.elements {
        for &v in &h.elements {
            let w = (u.a + v.a) % p + ((u.b + v.b) % p) * p;
            *hist.entry(w).or_insert(0) += 1;
        }
    }
    assert_eq!(hist.values().sum::<u64>(), h.tau * h.tau);
    let count: u128 = hist.values().map(|&m| (m as u128) * (m as u128)).sum();
    let (tf, pf) = (h.tau as f64, p as f64);
    Ok(EnergyReport {
        p,
        tau: h.tau,
        kind: EnergyKind::AdditiveFp2,
        count,
        bound_value: Some(tf.powf(14.0 / 5.0) + tf.powi(4) / pf),
        reference: Vec::new(),
    })
}

/// Trace energy: exact count for Tr(u + v) = Tr(x + y) over a subgroup of
/// N_{p^2}. No bound is asserted; the report carries reference curves only.
pub fn trace_energy_fp2(h: &NormOneSubgroup, limit: Option<u64>) -> Result<EnergyReport> {
    check_limit(h.tau, limit.unwrap_or(DEFAULT_TAU_LIMIT))?;
    let p = h.p;
    // Tr(u) = 2 * u.a; key is Tr(u) + Tr(v) mod p.
    let traces: Vec<u64> = h.elements.iter().map(|&u| (2 * u.a) % p).collect();
    let mut hist: HashMap<u64, u64> = HashMap::new();
    for &tu in &traces {
        for &tv in &traces {
            *hist.entry((tu + tv) % p).or_insert(0) += 1;
        }
    }
    assert_eq!(hist.values().sum::<u64>(), h.tau * h.tau);
    let count: u128 = hist.values().map(|&m| (m as u128) * (m as u128)).sum();
    let (tf, pf) = (h.tau as f64, p as f64);
    Ok(EnergyReport {
        p,
        tau: h.tau,
        kind: EnergyKind::TraceFp2,
        count,
        bound_value: None,
        reference: vec![
            ("tau_8_3_plus_tau4_over_p", tf.powf(8.0 / 3.0) + tf.powi(4) / pf),
            ("tau_cubed", tf.powi(3)),
        ],
    })
}

/// Least-squares slope of log y against log x; used to report empirical
/// exponents for the trace-energy data. Asserts nothing.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
