//! Command-line front end: single-shot computations print a one-line result
//! or a small JSON record; `sweep` and `theorem-check` emit CSV/JSONL
//! reports. Exit codes: 0 success, 2 invalid arguments or parameters,
//! 3 computation refused at the requested scale.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use waringlab::curves::{count_dickson_curve, count_fermat_norm_curve};
use waringlab::dickson::{dickson_eval, dickson_value_set};
use waringlab::energy::{energy_additive_fp2, energy_kloosterman, trace_energy_fp2, EnergyReport};
use waringlab::error::Error;
use waringlab::expsums::{
    gauss_spectrum, kloosterman_spectrum, CharTable, Mode, SpectrumOptions, SumSpectrum,
};
use waringlab::field::Fp2;
use waringlab::harness::{
    run_sweep, theorem_check, OutputFormat, SweepConfig, TaskKind, TheoremKind,
    THEOREM_CSV_HEADER,
};
use waringlab::waring::{waring_dickson, waring_norm_one};
use waringlab::FieldCtx;

#[derive(Parser)]
#[command(name = "waringlab", version, about = "Waring problems with Dickson polynomials modulo a prime", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print generators, the quadratic non-residue, and group orders for p.
    FieldInfo {
        #[arg(long)]
        p: u64,
    },
    /// Evaluate the degree-e Dickson polynomial at x with parameter a.
    DicksonEval {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        x: u64,
    },
    /// Waring profile of the Dickson value set over the prime field.
    DicksonWaring {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        a: u64,
        /// Stop after this many sumset steps (default: field size).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Waring profile of k-th powers of the norm-one subgroup.
    NormWaring {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Incomplete Kloosterman sums over the order-tau subgroup.
    Kloosterman(SpectrumArgs),
    /// Gauss sums over the order-tau norm-one subgroup.
    Gauss(SpectrumArgs),
    /// Additive energy of a subgroup (kinds: r, t, trace).
    Energy {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        tau: u64,
        #[arg(long, default_value = "r")]
        kind: String,
        /// Override the refusal threshold on tau.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Affine point counts for the studied curve families.
    Curve {
        #[arg(long)]
        p: u64,
        /// dickson-fe or fermat-norm.
        #[arg(long, default_value = "dickson-fe")]
        family: String,
        /// Exponent e (dickson-fe) or k (fermat-norm).
        #[arg(long)]
        e: u64,
        /// Curve parameter: A in the prime field, or "a,b" coordinates of a
        /// nonzero element of the quadratic extension.
        #[arg(long = "A")]
        a_param: String,
    },
    /// Parameter sweep over a prime range; deterministic CSV/JSONL output.
    Sweep {
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        p_min: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
        #[arg(long)]
        grid_max: Option<u64>,
        #[arg(long)]
        a_samples: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        format: Option<String>,
        /// key=value config file; command-line flags override it.
        #[arg(long)]
        config: Option<String>,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<String>,
    },
    /// Scan theorem thresholds: worst Waring numbers per divisor against s.
    TheoremCheck {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated explicit e list (default: all divisors).
        #[arg(long)]
        e: Option<String>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    tau: u64,
    /// exhaustive or sampled.
    #[arg(long, default_value = "exhaustive")]
    mode: String,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restrict to orbit/coset representatives.
    #[arg(long)]
    reduce: bool,
}

fn parse_mode(args: &SpectrumArgs) -> Result<Mode, Error> {
    match args.mode.as_str() {
        "exhaustive" => Ok(Mode::Exhaustive),
        "sampled" => Ok(Mode::Sampled { n: args.samples, seed: args.seed }),
        other => Err(Error::InvalidParameter(format!("unknown mode {other:?} (exhaustive|sampled)"))),
    }
}

fn print_spectrum(s: &SumSpectrum) {
    println!("{}", SumSpectrum::CSV_HEADER);
    println!("{}", s.csv_row());
}

fn print_energy(r: &EnergyReport) {
    println!("{}", EnergyReport::CSV_HEADER);
    println!("{}", r.csv_row());
}

fn write_report(out: Option<&str>, text: &str) -> Result<(), Error> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text).map_err(|source| Error::Io { path: path.into(), source }),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::FieldInfo { p } => {
            let ctx = FieldCtx::new(p)?;
            let n1 = ctx.norm_one_generator();
            let rec = json!({
                "p": ctx.p,
                "generator": ctx.g,
                "nonresidue": ctx.d,
                "ext_generator": [ctx.ext_gen.a, ctx.ext_gen.b],
                "norm_one_generator": [n1.a, n1.b],
                "mult_order_fp": p - 1,
                "norm_one_order": p + 1,
            });
            println!("{rec}");
        }
        Command::DicksonEval { p, e, a, x } => {
            // dickson_eval assumes reduced inputs; validate p via FieldCtx.
            let _ = FieldCtx::new(p)?;
            println!("{}", dickson_eval(p, e, a % p, x % p));
        }
        Command::DicksonWaring { p, e, a, cap } => {
            let prof = waring_dickson(p, e, a, cap)?;
            let card = dickson_value_set(p, e, a)?.card();
            let mut rec = prof.to_record(json!({"e": e, "a": a}));
            rec.as_object_mut()
                .expect("record is an object")
                .insert("value_set_card".into(), json!(card));
            println!("{rec}");
        }
        Command::NormWaring { p, k, cap } => {
            let ctx = FieldCtx::new(p)?;
            let prof = waring_norm_one(&ctx, k, cap)?;
            println!("{}", prof.to_record(json!({"k": k})));
        }
        Command::Kloosterman(args) => {
            let ctx = FieldCtx::new(args.p)?;
            let h = ctx.subgroup_fp(args.tau)?;
            let table = CharTable::new(args.p);
            let mut opts = SpectrumOptions::kloosterman_default();
            opts.reduce = args.reduce;
            let spectrum = kloosterman_spectrum(&h, &table, parse_mode(&args)?, opts)?;
            print_spectrum(&spectrum);
        }
        Command::Gauss(args) => {
            let ctx = FieldCtx::new(args.p)?;
            let h = ctx.subgroup_norm_one(args.tau)?;
            let table = CharTable::new(args.p);
            let mut opts = SpectrumOptions::gauss_default();
            opts.reduce = args.reduce;
            let spectrum = gauss_spectrum(&ctx, &h, &table, parse_mode(&args)?, opts)?;
            print_spectrum(&spectrum);
        }
        Command::Energy { p, tau, kind, limit } => {
            let ctx = FieldCtx::new(p)?;
            let report = match kind.as_str() {
                "r" => energy_kloosterman(&ctx.subgroup_fp(tau)?, limit)?,
                "t" => energy_additive_fp2(&ctx.subgroup_norm_one(tau)?, limit)?,
                "trace" => trace_energy_fp2(&ctx.subgroup_norm_one(tau)?, limit)?,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown energy kind {other:?} (r|t|trace)"
                    )))
                }
            };
            print_energy(&report);
        }
        Command::Curve { p, family, e, a_param } => {
            let report = match family.as_str() {
                "dickson-fe" => {
                    let a: u64 = a_param.parse().map_err(|_| {
                        Error::InvalidParameter(format!("A must be an integer, got {a_param:?}"))
                    })?;
                    count_dickson_curve(p, e, a % p)?
                }
                "fermat-norm" => {
                    let ctx = FieldCtx::new(p)?;
                    let (a, b) = a_param.split_once(',').ok_or_else(|| {
                        Error::InvalidParameter(
                            "fermat-norm expects --A a,b coordinates".into(),
                        )
                    })?;
                    let parse = |v: &str| {
                        v.trim().parse::<u64>().map_err(|_| {
                            Error::InvalidParameter(format!("bad coordinate {v:?}"))
                        })
                    };
                    count_fermat_norm_curve(&ctx, e, Fp2::new(parse(a)? % p, parse(b)? % p))?
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown family {other:?} (dickson-fe|fermat-norm)"
                    )))
                }
            };
            println!("{}", waringlab::curves::CurveCountReport::CSV_HEADER);
            println!("{}", report.csv_row());
        }
        Command::Sweep {
            kind,
            p_min,
            p_max,
            grid_max,
            a_samples,
            samples,
            jobs,
            seed,
            format,
            config,
            out,
        } => {
            let mut cfg = SweepConfig::new(TaskKind::DicksonWaring, 3, 3);
            let mut have_kind = false;
            let mut have_range = false;
            if let Some(path) = config {
                let text = fs::read_to_string(&path)
                    .map_err(|source| Error::Io { path: path.clone(), source })?;
                have_kind = text.contains("kind=");
                have_range = text.contains("p_min=") && text.contains("p_max=");
                cfg.apply_kv(&text)?;
            }
            if let Some(k) = kind {
                cfg.kind = TaskKind::parse(&k)?;
                have_kind = true;
            }
            if let Some(v) = p_min {
                cfg.p_min = v;
            }
            if let Some(v) = p_max {
                cfg.p_max = v;
            }
            if p_min.is_some() && p_max.is_some() {
                have_range = true;
            }
            if !have_kind || !have_range {
                return Err(Error::InvalidParameter(
                    "sweep requires --kind, --p-min, and --p-max (flags or config file)".into(),
                ));
            }
            if let Some(v) = grid_max {
                cfg.grid_max = Some(v);
            }
            if let Some(v) = a_samples {
                cfg.a_samples = v;
            }
            if let Some(v) = samples {
                cfg.samples = v;
            }
            if let Some(v) = jobs {
                cfg.jobs = v;
            }
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(f) = format {
                cfg.format = OutputFormat::parse(&f)?;
            }
            let mut buf = Vec::new();
            run_sweep(&cfg, &mut buf)?;
            let text = String::from_utf8(buf).expect("report is UTF-8");
            write_report(out.as_deref(), &text)?;
        }
        Command::TheoremCheck { kind, p_min, p_max, s, seed, e, format, out } => {
            let kind = TheoremKind::parse(&kind)?;
            let format = OutputFormat::parse(&format)?;
            let explicit: Option<Vec<u64>> = match e {
                None => None,
                Some(list) => Some(
                    list.split(',')
                        .map(|v| {
                            v.trim().parse::<u64>().map_err(|_| {
                                Error::InvalidParameter(format!("bad e value {v:?}"))
                            })
                        })
                        .collect::<Result<Vec<u64>, Error>>()?,
                ),
            };
            let scan = theorem_check(p_min, p_max, s, kind, seed, explicit.as_deref())?;
            let mut text = String::new();
            match format {
                OutputFormat::Csv => {
                    text.push_str(THEOREM_CSV_HEADER);
                    text.push('\n');
                    for r in &scan.records {
                        text.push_str(&r.csv_row());
                        text.push('\n');
                    }
                    if let Some(slope) = scan.empirical_exponent {
                        text.push_str(&format!("# empirical_exponent={slope:.6}\n"));
                    }
                }
                OutputFormat::Jsonl => {
                    for r in &scan.records {
                        text.push_str(&r.to_record().to_string());
                        text.push('\n');
                    }
                    let trailer = json!({
                        "empirical_exponent": scan.empirical_exponent,
                        "kind": kind.label(),
                        "s": s,
                    });
                    text.push_str(&trailer.to_string());
                    text.push('\n');
                }
            }
            write_report(out.as_deref(), &text)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = match err {
                Error::RefuseExhaustive(_) | Error::RefuseQuadratic(_) => 3u8,
                _ => 2u8,
            };
            let mut stderr = std::io::stderr();
            let _ = writeln!(stderr, "error: {err}");
            ExitCode::from(code)
        }
    }
}
