//! Experiment sweeps, theorem-threshold scans, and reproducible CSV/JSONL
//! reporting. Sweeps are deterministic: the same config and seed produce
//! byte-identical output at any parallelism degree, and every row is sorted
//! by (p, parameters) regardless of schedule.

use num_rational::Ratio;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::curves::count_dickson_curve;
use crate::energy::{energy_additive_fp2, energy_kloosterman, trace_energy_fp2, EnergyReport};
use crate::error::{Error, Result};
use crate::expsums::{
    gauss_spectrum, kloosterman_spectrum, CharTable, Mode, SpectrumOptions, SumSpectrum,
};
use crate::field::{divisors, is_prime, is_quadratic_residue, mul_mod, FieldCtx};
use crate::rng::SplitMix64;
use crate::valueset::Ambient;
use crate::waring::{waring_dickson, waring_norm_one, CoverageProfile};
use crate::curves::CurveCountReport;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?} (csv|jsonl)"))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Jsonl => "jsonl",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    DicksonWaring,
    NormWaring,
    Kloosterman,
    Gauss,
    EnergyR,
    EnergyT,
    TraceEnergy,
    CurveDickson,
}

impl TaskKind {
    pub fn parse(s: &str) -> Result<TaskKind> {
        Ok(match s {
            "dickson-waring" => TaskKind::DicksonWaring,
            "norm-waring" => TaskKind::NormWaring,
            "kloosterman" => TaskKind::Kloosterman,
            "gauss" => TaskKind::Gauss,
            "energy-r" => TaskKind::EnergyR,
            "energy-t" => TaskKind::EnergyT,
            "trace-energy" => TaskKind::TraceEnergy,
            "curve-dickson" => TaskKind::CurveDickson,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown sweep kind {s:?}"
                )))
            }
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            TaskKind::DicksonWaring => "dickson-waring",
            TaskKind::NormWaring => "norm-waring",
            TaskKind::Kloosterman => "kloosterman",
            TaskKind::Gauss => "gauss",
            TaskKind::EnergyR => "energy-r",
            TaskKind::EnergyT => "energy-t",
            TaskKind::TraceEnergy => "trace-energy",
            TaskKind::CurveDickson => "curve-dickson",
        }
    }

    fn csv_header(&self) -> &'static str {
        match self {
            TaskKind::DicksonWaring | TaskKind::NormWaring => WARING_CSV_HEADER,
            TaskKind::Kloosterman | TaskKind::Gauss => SumSpectrum::CSV_HEADER,
            TaskKind::EnergyR | TaskKind::EnergyT | TaskKind::TraceEnergy => {
                EnergyReport::CSV_HEADER
            }
            TaskKind::CurveDickson => CurveCountReport::CSV_HEADER,
        }
    }
}

pub const WARING_CSV_HEADER: &str = "p,ambient,e_or_k,a,status,g,steps";

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub kind: TaskKind,
    /// Cap on the divisor-derived e/k/tau grids (None: no cap).
    pub grid_max: Option<u64>,
    /// Number of seeded a-samples per (p, e) for the Dickson kinds.
    pub a_samples: u64,
    /// Draws for sampled-mode spectra when exhaustive is out of range.
    pub samples: u64,
    pub jobs: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl SweepConfig {
    pub fn new(kind: TaskKind, p_min: u64, p_max: u64) -> SweepConfig {
        SweepConfig {
            p_min,
            p_max,
            kind,
            grid_max: None,
            a_samples: 4,
            samples: 100,
            jobs: 1,
            seed: 0,
            format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_min > self.p_max {
            return Err(Error::InvalidParameter("p_min must be <= p_max".into()));
        }
        if self.jobs == 0 {
            return Err(Error::InvalidParameter("jobs must be >= 1".into()));
        }
        if self.a_samples == 0 || self.samples == 0 {
            return Err(Error::InvalidParameter("sample grids must be non-empty".into()));
        }
        Ok(())
    }

    /// Canonical one-line form, hashed into the output trailer.
    pub fn canonical_string(&self) -> String {
        format!(
            "kind={};p_min={};p_max={};grid_max={};a_samples={};samples={};seed={};format={}",
            self.kind.label(),
            self.p_min,
            self.p_max,
            self.grid_max.map_or("none".to_string(), |g| g.to_string()),
            self.a_samples,
            self.samples,
            self.seed,
            self.format.label(),
        )
    }

    pub fn config_hash(&self) -> u64 {
        fnv1a64(self.canonical_string().as_bytes())
    }

    /// Apply `key=value` lines from a config file; unknown keys are errors.
    /// Blank lines and lines starting with '#' are skipped.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("bad config line {line:?}")))?;
            let parse_u64 = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad value in {line:?}")))
            };
            match k.trim() {
                "kind" => self.kind = TaskKind::parse(v.trim())?,
                "p_min" => self.p_min = parse_u64(v.trim())?,
                "p_max" => self.p_max = parse_u64(v.trim())?,
                "grid_max" => self.grid_max = Some(parse_u64(v.trim())?),
                "a_samples" => self.a_samples = parse_u64(v.trim())?,
                "samples" => self.samples = parse_u64(v.trim())?,
                "jobs" => self.jobs = parse_u64(v.trim())? as usize,
                "seed" => self.seed = parse_u64(v.trim())?,
                "format" => self.format = OutputFormat::parse(v.trim())?,
                other => {
                    return Err(Error::InvalidParameter(format!("unknown config key {other:?}")))
                }
            }
        }
        Ok(())
    }
}

pub fn fnv1a64(data: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| is_prime(n)).collect()
}

/// Seeded a-samples in F_p^*, always containing at least one quadratic
/// residue and one non-residue (for p >= 5), deduplicated and sorted.
pub fn sample_a_values(p: u64, n: u64, seed: u64) -> Vec<u64> {
    let mut rng = SplitMix64::new(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut out: Vec<u64> = Vec::new();
    if p >= 5 {
        let g = crate::field::find_generator(p);
        out.push(mul_mod(g, g, p)); // a residue
        out.push(crate::field::least_nonresidue(p));
    }
    while (out.len() as u64) < n.min(p - 1) {
        let a = 1 + rng.below(p - 1);
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// One sweep row: the CSV cells and the JSONL record for a single task.
struct Row {
    csv: String,
    jsonl: Value,
}

fn waring_row(prof: &CoverageProfile, e_or_k: u64, a: Option<u64>, params: Value) -> Row {
    let g_cell = prof.g().map_or(String::new(), |g| g.to_string());
    let csv = format!(
        "{},{},{},{},{},{},{}",
        prof.p,
        prof.ambient.label(),
        e_or_k,
        a.map_or(String::new(), |a| a.to_string()),
        prof.status_label(),
        g_cell,
        prof.cards.len(),
    );
    Row { csv, jsonl: prof.to_record(params) }
}

fn spectrum_row(s: &SumSpectrum) -> Row {
    let mut m = Map::new();
    m.insert("p".into(), json!(s.p));
    m.insert("tau".into(), json!(s.tau));
    m.insert("ambient".into(), json!(s.ambient));
    m.insert("mode".into(), json!(s.mode));
    m.insert("max_modulus".into(), json!(s.max_modulus));
    m.insert("argmax".into(), json!(s.argmax));
    m.insert("bounds".into(), Value::Object(
        s.bound_menu.iter().map(|&(l, v)| (l.to_string(), json!(v))).collect(),
    ));
    m.insert("ratio_min".into(), json!(s.ratio_min()));
    Row { csv: s.csv_row(), jsonl: Value::Object(m) }
}

fn energy_row(r: &EnergyReport) -> Row {
    let mut m = Map::new();
    m.insert("p".into(), json!(r.p));
    m.insert("tau".into(), json!(r.tau));
    m.insert("ambient".into(), json!(r.kind.ambient_label()));
    m.insert("kind".into(), json!(r.kind.csv_label()));
    m.insert("count".into(), json!(r.count.to_string()));
    m.insert("bound_value".into(), r.bound_value.map_or(Value::Null, |b| json!(b)));
    m.insert("ratio".into(), r.ratio().map_or(Value::Null, |x| json!(x)));
    if !r.reference.is_empty() {
        m.insert("reference".into(), Value::Object(
            r.reference.iter().map(|&(l, v)| (l.to_string(), json!(v))).collect(),
        ));
    }
    Row { csv: r.csv_row(), jsonl: Value::Object(m) }
}

fn curve_row(r: &CurveCountReport) -> Row {
    let mut m = Map::new();
    m.insert("family".into(), json!(r.family.csv_label()));
    m.insert("p".into(), json!(r.p));
    m.insert("e_or_k".into(), json!(r.e_or_k));
    m.insert("A_or_a".into(), json!(r.a_param));
    m.insert("count".into(), json!(r.affine_count.to_string()));
    m.insert("bound_value".into(), json!(r.bound_value));
    m.insert("within_bound".into(), r.within_bound.map_or(Value::Null, |b| json!(b)));
    Row { csv: r.csv_row(), jsonl: Value::Object(m) }
}

/// A single sweep task; tasks are generated in sorted (p, parameter) order
/// and evaluated independently.
#[derive(Debug, Clone)]
enum Task {
    DicksonWaring { p: u64, e: u64, a: u64 },
    NormWaring { p: u64, k: u64 },
    Kloosterman { p: u64, tau: u64 },
    Gauss { p: u64, tau: u64 },
    Energy { p: u64, tau: u64, kind: TaskKind },
    CurveDickson { p: u64, e: u64, a_cap: u64 },
}

fn build_tasks(config: &SweepConfig) -> Vec<Task> {
    let mut tasks = Vec::new();
    let cap = |vals: Vec<u64>| -> Vec<u64> {
        match config.grid_max {
            Some(m) => vals.into_iter().filter(|&v| v <= m).collect(),
            None => vals,
        }
    };
    for p in primes_in(config.p_min, config.p_max) {
        match config.kind {
            TaskKind::DicksonWaring => {
                for e in cap(divisors(p - 1)) {
                    for a in sample_a_values(p, config.a_samples, config.seed) {
                        tasks.push(Task::DicksonWaring { p, e, a });
                    }
                }
            }
            TaskKind::NormWaring => {
                for k in cap(divisors(p + 1)) {
                    tasks.push(Task::NormWaring { p, k });
                }
            }
            TaskKind::Kloosterman => {
                for tau in cap(divisors(p - 1)) {
                    tasks.push(Task::Kloosterman { p, tau });
                }
            }
            TaskKind::Gauss => {
                for tau in cap(divisors(p + 1)) {
                    tasks.push(Task::Gauss { p, tau });
                }
            }
            TaskKind::EnergyR => {
                for tau in cap(divisors(p - 1)) {
                    tasks.push(Task::Energy { p, tau, kind: TaskKind::EnergyR });
                }
            }
            TaskKind::EnergyT | TaskKind::TraceEnergy => {
                for tau in cap(divisors(p + 1)) {
                    tasks.push(Task::Energy { p, tau, kind: config.kind });
                }
            }
            TaskKind::CurveDickson => {
                for e in cap(divisors(p - 1)) {
                    if e % p == 0 {
                        continue;
                    }
                    for a_cap in sample_a_values(p, config.a_samples, config.seed) {
                        tasks.push(Task::CurveDickson { p, e, a_cap });
                    }
                }
            }
        }
    }
    tasks
}

fn run_task(task: &Task, config: &SweepConfig) -> Result<Row> {
    match *task {
        Task::DicksonWaring { p, e, a } => {
            let prof = waring_dickson(p, e, a, None)?;
            Ok(waring_row(&prof, e, Some(a), json!({"e": e, "a": a})))
        }
        Task::NormWaring { p, k } => {
            let ctx = FieldCtx::new(p)?;
            let prof = waring_norm_one(&ctx, k, None)?;
            Ok(waring_row(&prof, k, None, json!({"k": k})))
        }
        Task::Kloosterman { p, tau } => {
            let ctx = FieldCtx::new(p)?;
            let table = CharTable::new(p);
            let h = ctx.subgroup_fp(tau)?;
            let opts = SpectrumOptions::kloosterman_default();
            let mode = if p <= opts.exhaustive_limit {
                Mode::Exhaustive
            } else {
                Mode::Sampled { n: config.samples, seed: config.seed ^ p ^ (tau << 32) }
            };
            Ok(spectrum_row(&kloosterman_spectrum(&h, &table, mode, opts)?))
        }
        Task::Gauss { p, tau } => {
            let ctx = FieldCtx::new(p)?;
            let table = CharTable::new(p);
            let h = ctx.subgroup_norm_one(tau)?;
            let opts = SpectrumOptions::gauss_default();
            let mode = if p <= opts.exhaustive_limit {
                Mode::Exhaustive
            } else {
                Mode::Sampled { n: config.samples, seed: config.seed ^ p ^ (tau << 32) }
            };
            Ok(spectrum_row(&gauss_spectrum(&ctx, &h, &table, mode, opts)?))
        }
        Task::Energy { p, tau, kind } => {
            let ctx = FieldCtx::new(p)?;
            let rep = match kind {
                TaskKind::EnergyR => energy_kloosterman(&ctx.subgroup_fp(tau)?, None)?,
                TaskKind::EnergyT => energy_additive_fp2(&ctx.subgroup_norm_one(tau)?, None)?,
                _ => trace_energy_fp2(&ctx.subgroup_norm_one(tau)?, None)?,
            };
            Ok(energy_row(&rep))
        }
        Task::CurveDickson { p, e, a_cap } => {
            Ok(curve_row(&count_dickson_curve(p, e, a_cap)?))
        }
    }
}

/// Executes the task grid with `jobs`-way parallelism and writes the report.
/// Output is independent of the parallelism degree; a trailer line records
/// the config hash, seed, and tool version.
pub fn run_sweep<W: std::io::Write>(config: &SweepConfig, out: &mut W) -> Result<()> {
    config.validate()?;
    let tasks = build_tasks(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let rows: Vec<Result<Row>> =
        pool.install(|| tasks.par_iter().map(|t| run_task(t, config)).collect());
    let io = |source: std::io::Error| Error::Io { path: "<sweep output>".into(), source };
    if config.format == OutputFormat::Csv {
        writeln!(out, "{}", config.kind.csv_header()).map_err(io)?;
    }
    for row in rows {
        let row = row?;
        match config.format {
            OutputFormat::Csv => writeln!(out, "{}", row.csv).map_err(io)?,
            OutputFormat::Jsonl => writeln!(out, "{}", row.jsonl).map_err(io)?,
        }
    }
    match config.format {
        OutputFormat::Csv => writeln!(
            out,
            "# config_hash={:016x} seed={} version={}",
            config.config_hash(),
            config.seed,
            TOOL_VERSION
        )
        .map_err(io)?,
        OutputFormat::Jsonl => {
            let trailer = json!({
                "config_hash": format!("{:016x}", config.config_hash()),
                "seed": config.seed,
                "version": TOOL_VERSION,
            });
            writeln!(out, "{trailer}").map_err(io)?
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Theorem-threshold scans

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremKind {
    /// gcd(e, p-1) clause with the subgroup-sum bounds.
    MediumPMinus,
    /// gcd(e, p+1) clause (quadratic-residue a).
    MediumPPlus,
    /// gcd(e, p-1) clause from the classical square-root bound.
    SmallE,
    /// Monomials over the norm-one subgroup: G(k, p).
    Monomial,
}

impl TheoremKind {
    pub fn parse(s: &str) -> Result<TheoremKind> {
        Ok(match s {
            "medium_pminus" => TheoremKind::MediumPMinus,
            "medium_pplus" => TheoremKind::MediumPPlus,
            "small_e" => TheoremKind::SmallE,
            "monomial" => TheoremKind::Monomial,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown theorem kind {s:?} (medium_pminus|medium_pplus|small_e|monomial)"
                )))
            }
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            TheoremKind::MediumPMinus => "medium_pminus",
            TheoremKind::MediumPPlus => "medium_pplus",
            TheoremKind::SmallE => "small_e",
            TheoremKind::Monomial => "monomial",
        }
    }

    /// The scanned gcd is taken against p-1 or p+1.
    pub fn uses_p_plus_one(&self) -> bool {
        matches!(self, TheoremKind::MediumPPlus | TheoremKind::Monomial)
    }
}

fn require_even_s(s: u64) -> Result<i64> {
    if s % 2 != 0 || s < 4 {
        return Err(Error::InvalidParameter(format!(
            "theorem scans require even s >= 4 (got {s})"
        )));
    }
    Ok(s as i64)
}

/// The threshold exponents of the theorem statement at the given s, as exact
/// rationals. Multi-term statements return every term.
pub fn theorem_exponents(kind: TheoremKind, s: u64) -> Result<Vec<Ratio<i64>>> {
    let s = require_even_s(s)?;
    Ok(match kind {
        TheoremKind::MediumPMinus => vec![Ratio::new(4 * s - 7, 7 * s + 8)],
        TheoremKind::MediumPPlus => vec![
            Ratio::new(11 * s - 82, 21 * s - 42),
            Ratio::new(6 * s - 57, 11 * s - 22),
        ],
        // 1/2 - 1/(3s - 8)
        TheoremKind::SmallE => vec![Ratio::new(1, 2) - Ratio::new(1, 3 * s - 8)],
        TheoremKind::Monomial => vec![
            Ratio::new(6 * s - 186, 11 * s - 116),
            Ratio::new(5 * s - 56, 10 * s - 56),
        ],
    })
}

/// The single combined exponent of the statement: max of the terms for the
/// gcd(e, p+1) clause, min for the monomial theorem.
pub fn threshold_exponent(kind: TheoremKind, s: u64) -> Result<Ratio<i64>> {
    let terms = theorem_exponents(kind, s)?;
    Ok(match kind {
        TheoremKind::MediumPPlus => *terms.iter().max().expect("non-empty"),
        TheoremKind::Monomial => *terms.iter().min().expect("non-empty"),
        _ => terms[0],
    })
}

#[derive(Debug, Clone)]
pub struct TheoremScanRecord {
    pub p: u64,
    pub s: u64,
    /// The target gcd value; the canonical representative is e = d.
    pub d: u64,
    pub e: u64,
    /// Worst g over all sampled a (None: infinite or cap reached). For the
    /// monomial scan this is G(k, p) itself.
    pub worst_g: Option<u64>,
    /// Worst g restricted to quadratic-residue a (empty for monomial scans).
    pub worst_g_qr: Option<u64>,
    pub worst_g_nqr: Option<u64>,
    pub satisfied: bool,
    pub threshold_exponent: Ratio<i64>,
    /// The statement's range is empty when the exponent is non-positive;
    /// reported as-is, never clamped.
    pub vacuous: bool,
    /// min(gcd(e, p-1), gcd(e, p+1)) <= p^{1/4} / 8: the regime where the
    /// prior strong bound g <= 3 already applies.
    pub small_gcd_regime: bool,
}

pub const THEOREM_CSV_HEADER: &str =
    "p,s,d,e,worst_g,worst_g_qr,worst_g_nqr,satisfied,threshold_exponent,vacuous,small_gcd_regime";

impl TheoremScanRecord {
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<u64>| v.map_or("inf".to_string(), |g| g.to_string());
        let opt_empty = |v: Option<u64>| v.map_or(String::new(), |g| g.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{}/{},{},{}",
            self.p,
            self.s,
            self.d,
            self.e,
            opt(self.worst_g),
            opt_empty(self.worst_g_qr),
            opt_empty(self.worst_g_nqr),
            self.satisfied,
            self.threshold_exponent.numer(),
            self.threshold_exponent.denom(),
            self.vacuous,
            self.small_gcd_regime,
        )
    }

    pub fn to_record(&self) -> Value {
        let opt = |v: Option<u64>| v.map_or(Value::Null, |g| json!(g));
        let mut m = Map::new();
        m.insert("p".into(), json!(self.p));
        m.insert("s".into(), json!(self.s));
        m.insert("d".into(), json!(self.d));
        m.insert("e".into(), json!(self.e));
        m.insert("worst_g".into(), opt(self.worst_g));
        m.insert("worst_g_qr".into(), opt(self.worst_g_qr));
        m.insert("worst_g_nqr".into(), opt(self.worst_g_nqr));
        m.insert("satisfied".into(), json!(self.satisfied));
        m.insert(
            "threshold_exponent".into(),
            json!(format!("{}/{}", self.threshold_exponent.numer(), self.threshold_exponent.denom())),
        );
        m.insert("vacuous".into(), json!(self.vacuous));
        m.insert("small_gcd_regime".into(), json!(self.small_gcd_regime));
        Value::Object(m)
    }
}

#[derive(Debug, Clone)]
pub struct TheoremScan {
    pub records: Vec<TheoremScanRecord>,
    /// Slope of log d* against log p, d* the largest satisfied d per prime;
    /// None when fewer than two primes contribute.
    pub empirical_exponent: Option<f64>,
}

fn gcd64(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// For each prime in range and each divisor d of p-1 (or p+1), compute the
/// worst Waring number over sampled a with the canonical representative
/// e = d, and compare against s. Exhaustive a for p <= 101, else 32 seeded
/// samples always containing a residue and a non-residue.
pub fn theorem_check(
    p_min: u64,
    p_max: u64,
    s: u64,
    kind: TheoremKind,
    seed: u64,
    explicit_e: Option<&[u64]>,
) -> Result<TheoremScan> {
    require_even_s(s)?;
    let exponent = threshold_exponent(kind, s)?;
    let vacuous = exponent <= Ratio::new(0, 1);
    let mut records = Vec::new();
    let mut fit_points = Vec::new();
    for p in primes_in(p_min, p_max) {
        let base = if kind.uses_p_plus_one() { p + 1 } else { p - 1 };
        let es: Vec<u64> = match explicit_e {
            Some(list) => list.to_vec(),
            None => divisors(base),
        };
        let mut best_satisfied_d = 0u64;
        for e in es {
            let d = gcd64(e, base);
            let record = match kind {
                TheoremKind::Monomial => {
                    let ctx = FieldCtx::new(p)?;
                    let prof = waring_norm_one(&ctx, e, None)?;
                    let g = prof.g().map(u64::from);
                    TheoremScanRecord {
                        p,
                        s,
                        d,
                        e,
                        worst_g: g,
                        worst_g_qr: None,
                        worst_g_nqr: None,
                        satisfied: g.is_some_and(|g| g <= s),
                        threshold_exponent: exponent,
                        vacuous,
                        small_gcd_regime: small_gcd_regime(p, e),
                    }
                }
                _ => {
                    let a_values = if p <= 101 {
                        (1..p).collect::<Vec<u64>>()
                    } else {
                        sample_a_values(p, 32, seed)
                    };
                    let mut worst: Option<u64> = Some(0);
                    let mut worst_qr: Option<u64> = Some(0);
                    let mut worst_nqr: Option<u64> = Some(0);
                    let mut any_qr = false;
                    let mut any_nqr = false;
                    let fold = |acc: &mut Option<u64>, g: Option<u64>| match (acc.as_mut(), g) {
                        (Some(w), Some(g)) => *w = (*w).max(g),
                        _ => *acc = None,
                    };
                    for a in a_values {
                        let g = waring_dickson(p, e, a, None)?.g().map(u64::from);
                        fold(&mut worst, g);
                        if is_quadratic_residue(a, p) {
                            any_qr = true;
                            fold(&mut worst_qr, g);
                        } else {
                            any_nqr = true;
                            fold(&mut worst_nqr, g);
                        }
                    }
                    TheoremScanRecord {
                        p,
                        s,
                        d,
                        e,
                        worst_g: worst,
                        worst_g_qr: any_qr.then_some(worst_qr).flatten(),
                        worst_g_nqr: any_nqr.then_some(worst_nqr).flatten(),
                        satisfied: worst.is_some_and(|g| g <= s),
                        threshold_exponent: exponent,
                        vacuous,
                        small_gcd_regime: small_gcd_regime(p, e),
                    }
                }
            };
            if record.satisfied {
                best_satisfied_d = best_satisfied_d.max(d);
            }
            records.push(record);
        }
        if best_satisfied_d >= 1 {
            fit_points.push((p as f64, best_satisfied_d as f64));
        }
    }
    let distinct_p = {
        let mut ps: Vec<u64> = fit_points.iter().map(|&(p, _)| p as u64).collect();
        ps.dedup();
        ps.len()
    };
    let empirical_exponent =
        (distinct_p >= 2).then(|| crate::energy::loglog_slope(&fit_points));
    Ok(TheoremScan { records, empirical_exponent })
}

/// Flags the small-gcd regime min(gcd(e, p-1), gcd(e, p+1)) <= p^{1/4} / 8.
pub fn small_gcd_regime(p: u64, e: u64) -> bool {
    let m = gcd64(e, p - 1).min(gcd64(e, p + 1)) as f64;
    m <= (p as f64).powf(0.25) / 8.0
}

/// Shared helper for single-shot CLI records: ambient label for a prime.
pub fn ambient_for(p: u64, fp2: bool) -> Ambient {
    if fp2 {
        Ambient::Fp2(p)
    } else {
        Ambient::Fp(p)
    }
}
