//! Kloosterman sums K_p(H; alpha, beta) = sum_{u in H} e_p(alpha u + beta u^{-1})
//! over subgroups of F_p^*, and Gauss sums G_{p^2}(H; alpha) =
//! sum_{u in H} e_p(Tr(alpha u)) over subgroups of the norm-one group,
//! with max-modulus spectra compared against the lemma bound menus.

use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, FieldCtx, Fp2, FpSubgroup, NormOneSubgroup};
use crate::rng::SplitMix64;

/// Precomputed table of the p-th roots of unity e_p(j) = exp(2 pi i j / p).
pub struct CharTable {
    pub p: u64,
    roots: Vec<Complex64>,
}

impl CharTable {
    pub fn new(p: u64) -> CharTable {
        let roots = (0..p)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / p as f64;
                Complex64::new(t.cos(), t.sin())
            })
            .collect();
        CharTable { p, roots }
    }

    #[inline]
    pub fn e(&self, j: u64) -> Complex64 {
        self.roots[(j % self.p) as usize]
    }
}

/// Pairwise (tree) summation; error grows like log n instead of n.
pub fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 32 {
        let mut s = Complex64::new(0.0, 0.0);
        for &x in v {
            s += x;
        }
        return s;
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Kloosterman sum evaluator with the subgroup's inverses precomputed.
pub struct KloostermanEval<'a> {
    h: &'a FpSubgroup,
    inv: Vec<u64>,
    table: &'a CharTable,
}

impl<'a> KloostermanEval<'a> {
    pub fn new(h: &'a FpSubgroup, table: &'a CharTable) -> KloostermanEval<'a> {
        assert_eq!(h.p, table.p);
        let inv = h
            .elements
            .iter()
            .map(|&u| inv_mod(u, h.p).expect("subgroup elements are nonzero"))
            .collect();
        KloostermanEval { h, inv, table }
    }

    pub fn sum_with(&self, alpha: u64, beta: u64, scratch: &mut Vec<Complex64>) -> Complex64 {
        let p = self.h.p;
        scratch.clear();
        for (&u, &ui) in self.h.elements.iter().zip(&self.inv) {
            let arg = (mul_mod(alpha, u, p) + mul_mod(beta, ui, p)) % p;
            scratch.push(self.table.e(arg));
        }
        pairwise_sum(scratch)
    }
}

/// K_p(H; alpha, beta) as a complex number.
pub fn kloosterman(h: &FpSubgroup, table: &CharTable, alpha: u64, beta: u64) -> Complex64 {
    KloostermanEval::new(h, table).sum_with(alpha, beta, &mut Vec::new())
}

/// G_{p^2}(H; alpha) as a complex number.
pub fn gauss(ctx: &FieldCtx, h: &NormOneSubgroup, table: &CharTable, alpha: Fp2) -> Complex64 {
    let terms: Vec<Complex64> = h
        .elements
        .iter()
        .map(|&u| table.e(ctx.trace(ctx.fp2_mul(alpha, u))))
        .collect();
    pairwise_sum(&terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { n: u64, seed: u64 },
}

impl Mode {
    pub fn label(&self) -> String {
        match self {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Sampled { n, seed } => format!("sampled({n};{seed})"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SpectrumOptions {
    /// Largest p for which exhaustive enumeration is accepted.
    pub exhaustive_limit: u64,
    /// Restrict character parameters to orbit/coset representatives; the max
    /// modulus is unchanged by reindexing invariance.
    pub reduce: bool,
}

impl SpectrumOptions {
    pub fn kloosterman_default() -> SpectrumOptions {
        SpectrumOptions { exhaustive_limit: 500, reduce: false }
    }

    pub fn gauss_default() -> SpectrumOptions {
        SpectrumOptions { exhaustive_limit: 150, reduce: true }
    }
}

/// Max-modulus summary of a sum family, with the lemma's bound menu.
#[derive(Debug, Clone)]
pub struct SumSpectrum {
    pub p: u64,
    pub tau: u64,
    pub ambient: &'static str,
    pub mode: String,
    pub max_modulus: f64,
    /// Character parameters attaining the max: (alpha, beta) for Kloosterman,
    /// the canonical index of alpha for Gauss. Ties break toward the smallest
    /// canonical index.
    pub argmax: Vec<u64>,
    pub bound_menu: Vec<(&'static str, f64)>,
}

impl SumSpectrum {
    pub const CSV_HEADER: &'static str =
        "p,tau,ambient,mode,max_modulus,argmax,bound_weil,bound_t1,bound_t2,ratio_min";

    fn bound(&self, label: &str) -> f64 {
        self.bound_menu
            .iter()
            .find(|(l, _)| *l == label)
            .map(|&(_, v)| v)
            .unwrap_or(f64::NAN)
    }

    /// max_modulus over the smallest term of the lemma menu.
    pub fn ratio_min(&self) -> f64 {
        let menu_min = [self.bound("p_half"), self.bound("t1"), self.bound("t2")]
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        self.max_modulus / menu_min
    }

    pub fn csv_row(&self) -> String {
        let argmax = self
            .argmax
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("|");
        format!(
            "{},{},{},{},{:.9},{},{:.9},{:.9},{:.9},{:.9}",
            self.p,
            self.tau,
            self.ambient,
            self.mode,
            self.max_modulus,
            argmax,
            self.bound("p_half"),
            self.bound("t1"),
            self.bound("t2"),
            self.ratio_min(),
        )
    }
}

fn kloosterman_bound_menu(p: u64, tau: u64) -> Vec<(&'static str, f64)> {
    let (pf, tf) = (p as f64, tau as f64);
    vec![
        ("p_half", pf.sqrt()),
        ("t1", tf.powf(23.0 / 36.0) * pf.powf(1.0 / 6.0)),
        ("t2", tf.powf(20.0 / 27.0) * pf.powf(1.0 / 9.0)),
        ("weil_2sqrtp", 2.0 * pf.sqrt()),
    ]
}

fn gauss_bound_menu(p: u64, tau: u64) -> Vec<(&'static str, f64)> {
    let (pf, tf) = (p as f64, tau as f64);
    vec![
        ("p_half", pf.sqrt()),
        ("t1", tf.powf(13.0 / 20.0) * pf.powf(1.0 / 6.0)),
        ("t2", tf.powf(34.0 / 45.0) * pf.powf(1.0 / 9.0)),
        ("weil_2sqrtp", 2.0 * pf.sqrt()),
    ]
}

/// Order-free max with deterministic tie-break toward the smaller index.
fn better(cand: (f64, u64), best: (f64, u64)) -> bool {
    cand.0 > best.0 || (cand.0 == best.0 && cand.1 < best.1)
}

/// Max |K_p(H; alpha, beta)| over (alpha, beta) != (0, 0), exhaustively or
/// over seeded samples. The argmax canonical index is alpha * p + beta.
pub fn kloosterman_spectrum(
    h: &FpSubgroup,
    table: &CharTable,
    mode: Mode,
    opts: SpectrumOptions,
) -> Result<SumSpectrum> {
    let p = h.p;
    let eval = KloostermanEval::new(h, table);
    let (max_modulus, arg_idx) = match mode {
        Mode::Exhaustive => {
            if p > opts.exhaustive_limit {
                return Err(Error::RefuseExhaustive(format!(
                    "p = {p} exceeds the exhaustive limit {} (p^2 character pairs)",
                    opts.exhaustive_limit
                )));
            }
            // Orbit reduction: |K(alpha h, beta h^{-1})| = |K(alpha, beta)|,
            // so alpha != 0 can be restricted to coset representatives of H.
            let coset_count = (p - 1) / h.tau;
            let alphas: Vec<u64> = if opts.reduce {
                let mut v = vec![0u64];
                let mut x = 1u64;
                let g = crate::field::find_generator(p);
                for _ in 0..coset_count {
                    v.push(x);
                    x = mul_mod(x, g, p);
                }
                v
            } else {
                (0..p).collect()
            };
            alphas
                .par_iter()
                .map(|&alpha| {
                    let mut scratch = Vec::with_capacity(h.tau as usize);
                    let mut best = (f64::NEG_INFINITY, u64::MAX);
                    let betas: Box<dyn Iterator<Item = u64>> = if opts.reduce && alpha == 0 {
                        // (0, beta) orbits: beta up to H-cosets as well.
                        let g = crate::field::find_generator(p);
                        let mut x = 1u64;
                        let mut v = Vec::new();
                        for _ in 0..coset_count {
                            v.push(x);
                            x = mul_mod(x, g, p);
                        }
                        Box::new(v.into_iter())
                    } else {
                        Box::new(0..p)
                    };
                    for beta in betas {
                        if alpha == 0 && beta == 0 {
                            continue;
                        }
                        let m = eval.sum_with(alpha, beta, &mut scratch).norm();
                        let cand = (m, alpha * p + beta);
                        if better(cand, best) {
                            best = cand;
                        }
                    }
                    best
                })
                .reduce(
                    || (f64::NEG_INFINITY, u64::MAX),
                    |a, b| if better(b, a) { b } else { a },
                )
        }
        Mode::Sampled { n, seed } => {
            let mut rng = SplitMix64::new(seed);
            let mut scratch = Vec::with_capacity(h.tau as usize);
            let mut best = (f64::NEG_INFINITY, u64::MAX);
            for _ in 0..n {
                let (mut alpha, mut beta) = (rng.below(p), rng.below(p));
                while alpha == 0 && beta == 0 {
                    alpha = rng.below(p);
                    beta = rng.below(p);
                }
                let m = eval.sum_with(alpha, beta, &mut scratch).norm();
                let cand = (m, alpha * p + beta);
                if better(cand, best) {
                    best = cand;
                }
            }
            best
        }
    };
    Ok(SumSpectrum {
        p,
        tau: h.tau,
        ambient: "fp",
        mode: mode.label(),
        max_modulus,
        argmax: vec![arg_idx / p, arg_idx % p],
        bound_menu: kloosterman_bound_menu(p, h.tau),
    })
}

/// Max |G_{p^2}(H; alpha)| over alpha in F_{p^2}^*. With `opts.reduce`, alpha
/// runs over the (p^2 - 1)/tau coset representatives ext_gen^i only.
pub fn gauss_spectrum(
    ctx: &FieldCtx,
    h: &NormOneSubgroup,
    table: &CharTable,
    mode: Mode,
    opts: SpectrumOptions,
) -> Result<SumSpectrum> {
    let p = ctx.p;
    let (max_modulus, arg_idx) = match mode {
        Mode::Exhaustive => {
            if p > opts.exhaustive_limit {
                return Err(Error::RefuseExhaustive(format!(
                    "p = {p} exceeds the exhaustive limit {} (p^2 - 1 characters)",
                    opts.exhaustive_limit
                )));
            }
            let alphas: Vec<Fp2> = if opts.reduce {
                let reps = (p * p - 1) / h.tau;
                let mut v = Vec::with_capacity(reps as usize);
                let mut x = Fp2::ONE;
                for _ in 0..reps {
                    v.push(x);
                    x = ctx.fp2_mul(x, ctx.ext_gen);
                }
                v
            } else {
                (1..p * p).map(|i| Fp2::from_index(i, p)).collect()
            };
            alphas
                .par_iter()
                .map(|&alpha| (gauss(ctx, h, table, alpha).norm(), alpha.index(p)))
                .reduce(
                    || (f64::NEG_INFINITY, u64::MAX),
                    |a, b| if better(b, a) { b } else { a },
                )
        }
        Mode::Sampled { n, seed } => {
            let mut rng = SplitMix64::new(seed);
            let mut best = (f64::NEG_INFINITY, u64::MAX);
            for _ in 0..n {
                let idx = 1 + rng.below(p * p - 1);
                let alpha = Fp2::from_index(idx, p);
                let cand = (gauss(ctx, h, table, alpha).norm(), idx);
                if better(cand, best) {
                    best = cand;
                }
            }
            best
        }
    };
    Ok(SumSpectrum {
        p,
        tau: h.tau,
        ambient: "fp2",
        mode: mode.label(),
        max_modulus,
        argmax: vec![arg_idx],
        bound_menu: gauss_bound_menu(p, h.tau),
    })
}

/// With tau = p^t, the exponent of p in each term of the Kloosterman lemma
/// menu, as exact rationals: (label, exponent).
pub fn kloosterman_menu_exponents(t: Ratio<i64>) -> Vec<(&'static str, Ratio<i64>)> {
    vec![
        ("p_half", Ratio::new(1, 2)),
        ("t1", Ratio::new(23, 36) * t + Ratio::new(1, 6)),
        ("t2", Ratio::new(20, 27) * t + Ratio::new(1, 9)),
    ]
}

/// Same for the Gauss lemma menu.
pub fn gauss_menu_exponents(t: Ratio<i64>) -> Vec<(&'static str, Ratio<i64>)> {
    vec![
        ("p_half", Ratio::new(1, 2)),
        ("t1", Ratio::new(13, 20) * t + Ratio::new(1, 6)),
        ("t2", Ratio::new(34, 45) * t + Ratio::new(1, 9)),
    ]
}

/// Smallest menu term at tau = p^t, by exact rational comparison.
pub fn smallest_menu_term(menu: &[(&'static str, Ratio<i64>)]) -> (&'static str, Ratio<i64>) {
    menu.iter().copied().min_by_key(|&(_, e)| e).expect("menu is non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::divisors;

    #[test]
    fn trivial_character_gives_tau() {
        let ctx = FieldCtx::new(31).unwrap();
        let table = CharTable::new(31);
        for tau in divisors(30) {
            let h = ctx.subgroup_fp(tau).unwrap();
            let k = kloosterman(&h, &table, 0, 0);
            assert!((k.re - tau as f64).abs() < 1e-9 && k.im.abs() < 1e-9);
        }
    }

    #[test]
    fn complete_sum_is_minus_one() {
        for p in [7u64, 101, 199] {
            let ctx = FieldCtx::new(p).unwrap();
            let table = CharTable::new(p);
            let h = ctx.subgroup_fp(p - 1).unwrap();
            for alpha in [1, 2, p - 1] {
                let k = kloosterman(&h, &table, alpha, 0);
                assert!((k.re + 1.0).abs() < 1e-8 && k.im.abs() < 1e-8, "p={p} alpha={alpha}");
            }
        }
    }

    #[test]
    fn reindexing_invariance() {
        let ctx = FieldCtx::new(61).unwrap();
        let table = CharTable::new(61);
        let h = ctx.subgroup_fp(12).unwrap();
        let base = kloosterman(&h, &table, 5, 17).norm();
        for &hm in &h.elements {
            let a = mul_mod(5, hm, 61);
            let b = mul_mod(17, inv_mod(hm, 61).unwrap(), 61);
            assert!((kloosterman(&h, &table, a, b).norm() - base).abs() < 1e-8);
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let ctx = FieldCtx::new(43).unwrap();
        let table = CharTable::new(43);
        let h = ctx.subgroup_fp(21).unwrap();
        let k = kloosterman(&h, &table, 7, 11);
        let kc = kloosterman(&h, &table, 43 - 7, 43 - 11);
        assert!((k.re - kc.re).abs() < 1e-9 && (k.im + kc.im).abs() < 1e-9);
        let hn = ctx.subgroup_norm_one(44).unwrap();
        let alpha = Fp2::new(3, 5);
        let g1 = gauss(&ctx, &hn, &table, alpha).norm();
        let g2 = gauss(&ctx, &hn, &table, ctx.fp2_neg(alpha)).norm();
        assert!((g1 - g2).abs() < 1e-9);
    }

    #[test]
    fn gauss_invariances() {
        let ctx = FieldCtx::new(31).unwrap();
        let table = CharTable::new(31);
        let h = ctx.subgroup_norm_one(16).unwrap();
        let alpha = Fp2::new(4, 9);
        let base = gauss(&ctx, &h, &table, alpha);
        // G(alpha^p) = G(alpha): u -> u^p permutes H and preserves traces.
        let frob = gauss(&ctx, &h, &table, ctx.frobenius(alpha));
        assert!((base.norm() - frob.norm()).abs() < 1e-9);
        assert!((base.re - frob.re).abs() < 1e-9);
        // G(alpha h) = G(alpha) for h in H.
        for &hm in &h.elements {
            let shifted = gauss(&ctx, &h, &table, ctx.fp2_mul(alpha, hm));
            assert!((base.re - shifted.re).abs() < 1e-8);
            assert!((base.im - shifted.im).abs() < 1e-8);
        }
        // tau = 1: single unit-modulus term.
        let triv = ctx.subgroup_norm_one(1).unwrap();
        assert!((gauss(&ctx, &triv, &table, alpha).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parseval_identities() {
        for p in [13u64, 31, 101] {
            let ctx = FieldCtx::new(p).unwrap();
            let table = CharTable::new(p);
            for tau in divisors(p - 1) {
                let h = ctx.subgroup_fp(tau).unwrap();
                let total: f64 = (0..p)
                    .map(|alpha| {
                        let terms: Vec<Complex64> =
                            h.elements.iter().map(|&u| table.e(mul_mod(alpha, u, p))).collect();
                        pairwise_sum(&terms).norm_sqr()
                    })
                    .sum();
                let expect = (p * tau) as f64;
                assert!((total - expect).abs() / expect < 1e-6, "p={p} tau={tau}");
            }
        }
        // F_{p^2} analogue with all p^2 additive characters.
        let p = 13u64;
        let ctx = FieldCtx::new(p).unwrap();
        let table = CharTable::new(p);
        for tau in divisors(p + 1) {
            let h = ctx.subgroup_norm_one(tau).unwrap();
            let total: f64 = (0..p * p)
                .map(|i| gauss(&ctx, &h, &table, Fp2::from_index(i, p)).norm_sqr())
                .sum();
            let expect = (p * p * tau) as f64;
            assert!((total - expect).abs() / expect < 1e-6, "tau={tau}");
        }
    }

    #[test]
    fn spectrum_trivial_subgroup() {
        let ctx = FieldCtx::new(31).unwrap();
        let table = CharTable::new(31);
        let h = ctx.subgroup_fp(1).unwrap();
        let spec = kloosterman_spectrum(
            &h,
            &table,
            Mode::Exhaustive,
            SpectrumOptions::kloosterman_default(),
        )
        .unwrap();
        assert!((spec.max_modulus - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kloosterman_orbit_reduction_preserves_max() {
        let ctx = FieldCtx::new(61).unwrap();
        let table = CharTable::new(61);
        for tau in [5u64, 12, 60] {
            let h = ctx.subgroup_fp(tau).unwrap();
            let full = kloosterman_spectrum(
                &h,
                &table,
                Mode::Exhaustive,
                SpectrumOptions { exhaustive_limit: 500, reduce: false },
            )
            .unwrap();
            let reduced = kloosterman_spectrum(
                &h,
                &table,
                Mode::Exhaustive,
                SpectrumOptions { exhaustive_limit: 500, reduce: true },
            )
            .unwrap();
            assert!((full.max_modulus - reduced.max_modulus).abs() < 1e-8, "tau={tau}");
        }
    }

    #[test]
    fn gauss_coset_reduction_preserves_max() {
        let ctx = FieldCtx::new(23).unwrap();
        let table = CharTable::new(23);
        for tau in [4u64, 8, 24] {
            let h = ctx.subgroup_norm_one(tau).unwrap();
            let full = gauss_spectrum(
                &ctx,
                &h,
                &table,
                Mode::Exhaustive,
                SpectrumOptions { exhaustive_limit: 150, reduce: false },
            )
            .unwrap();
            let reduced = gauss_spectrum(
                &ctx,
                &h,
                &table,
                Mode::Exhaustive,
                SpectrumOptions { exhaustive_limit: 150, reduce: true },
            )
            .unwrap();
            assert!((full.max_modulus - reduced.max_modulus).abs() < 1e-8, "tau={tau}");
        }
    }

    #[test]
    fn refusal_over_limit() {
        let ctx = FieldCtx::new(1009).unwrap();
        let table = CharTable::new(1009);
        let h = ctx.subgroup_fp(1008).unwrap();
        assert!(matches!(
            kloosterman_spectrum(
                &h,
                &table,
                Mode::Exhaustive,
                SpectrumOptions::kloosterman_default()
            ),
            Err(Error::RefuseExhaustive(_))
        ));
    }

    #[test]
    fn sampled_mode_is_reproducible() {
        let ctx = FieldCtx::new(101).unwrap();
        let table = CharTable::new(101);
        let h = ctx.subgroup_fp(20).unwrap();
        let a = kloosterman_spectrum(
            &h,
            &table,
            Mode::Sampled { n: 50, seed: 7 },
            SpectrumOptions::kloosterman_default(),
        )
        .unwrap();
        let b = kloosterman_spectrum(
            &h,
            &table,
            Mode::Sampled { n: 50, seed: 7 },
            SpectrumOptions::kloosterman_default(),
        )
        .unwrap();
        assert_eq!(a.max_modulus, b.max_modulus);
        assert_eq!(a.argmax, b.argmax);
    }

    #[test]
    fn menu_exponent_arithmetic() {
        let t = Ratio::new(3i64, 4);
        let menu = kloosterman_menu_exponents(t);
        assert_eq!(menu[1].1, Ratio::new(31, 48)); // 23/36 * 3/4 + 1/6
        assert_eq!(menu[2].1, Ratio::new(2, 3)); // 20/27 * 3/4 + 1/9
        assert_eq!(smallest_menu_term(&menu), ("p_half", Ratio::new(1, 2)));
        let g = gauss_menu_exponents(Ratio::new(5, 6));
        assert_eq!(g[1].1, Ratio::new(13, 20) * Ratio::new(5, 6) + Ratio::new(1, 6));
    }

    #[test]
    fn csv_header_golden() {
        assert_eq!(
            SumSpectrum::CSV_HEADER,
            "p,tau,ambient,mode,max_modulus,argmax,bound_weil,bound_t1,bound_t2,ratio_min"
        );
    }
}
