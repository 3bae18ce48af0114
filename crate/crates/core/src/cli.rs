//! Command-line front end: deterministic, scriptable subcommands over the
//! library. Exit codes: 0 success, 1 mathematical-consistency failure,
//! 2 usage/parse error.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::field::FieldCtx;
use crate::algebra::ratfn::RatFn;
use crate::artifact;
use crate::cover::{cover_pipeline, verify_descent};
use crate::drinfeld::{
    atkin_lehner, flag_to_phi, motive_det_zeta, motive_matrix, DrinfeldModule, FlagPoint,
};
use crate::error::Error;
use crate::galois::chebotarev_report;
use crate::modforms::h_prec_cap;
use crate::ore::{CoeffField, OrePoly, RatField};
use crate::parse::{parse_ratfn, parse_upoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "drinfeld-forge",
    about = "Exact Drinfeld-module computations and PSL(2,q^2)-cover construction over F_q(T)",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    /// field size q = p^m (odd prime power)
    #[arg(long, default_value_t = 3)]
    pub q: u64,
    /// output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Find a monic irreducible polynomial with a prescribed constant term
    /// or quadratic-character condition
    SearchPrime {
        #[command(flatten)]
        common: Common,
        /// degree of the prime
        #[arg(long)]
        d: usize,
        /// constant term (Hansen-Mullen search)
        #[arg(long = "const", value_name = "XI")]
        constant: Option<String>,
        /// search for [zeta*T / p] = sign instead
        #[arg(long)]
        zeta: Option<String>,
        /// target character value (+1 or -1), with --zeta
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<i32>,
    },
    /// Evaluate phi_a for a Drinfeld module given by coefficients or a
    /// flag point
    Phi {
        #[command(flatten)]
        common: Common,
        /// comma-separated g_1,...,g_r of phi_T (rational functions in T)
        #[arg(long, conflicts_with = "point")]
        dm: Option<String>,
        /// comma-separated flag coordinates a_1,...,a_r instead
        #[arg(long)]
        point: Option<String>,
        /// the ring element a
        #[arg(long)]
        a: String,
    },
    /// Apply the Atkin-Lehner involution to a flag point
    AtkinLehner {
        #[command(flatten)]
        common: Common,
        /// comma-separated projective coordinates a_1,...,a_r (r even)
        #[arg(long)]
        point: String,
    },
    /// Motive determinant data of the Atkin-Lehner isogeny at a moduli
    /// point: the matrix for rank 2, det(u) and the normalized zeta
    MotiveDet {
        #[command(flatten)]
        common: Common,
        /// comma-separated moduli-point coordinates (even rank)
        #[arg(long)]
        point: String,
    },
    /// Build the cover polynomial for a degree-2 prime N
    Cover {
        #[command(flatten)]
        common: Common,
        /// monic irreducible polynomial of degree 2 with square constant
        /// term, e.g. "T^2+1"
        #[arg(long = "N")]
        n: String,
        /// series precision override (default: the h-expansion cap)
        #[arg(long)]
        prec: Option<i64>,
        /// write the JSON artifact here
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// print coefficients as raw T-polynomials instead of N-powers
        #[arg(long)]
        expand_n: bool,
    },
    /// Sample specializations of a cover and compare cycle types against
    /// the brute-force PSL(2, q^2) oracle
    Galois {
        #[command(flatten)]
        common: Common,
        /// cover artifact written by `cover --out`
        #[arg(long)]
        cover_file: std::path::PathBuf,
        /// number of specializations
        #[arg(long, default_value_t = 500)]
        trials: u64,
        /// RNG seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn ctx_for(q: u64) -> Result<Arc<FieldCtx>, Error> {
    FieldCtx::from_q(q)
}

fn parse_coords(ctx: &Arc<FieldCtx>, s: &str) -> Result<Vec<RatFn>, Error> {
    s.split(',').map(|part| parse_ratfn(ctx, part.trim())).collect()
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::InvalidArgument(_) | Error::Oversize(_)
        | Error::NotMonic(_) | Error::NotIrreducible(_) => EXIT_USAGE,
        _ => EXIT_MATH,
    }
}

/// Run a command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::SearchPrime { common, d, constant, zeta, sign } => {
            let ctx = ctx_for(common.q)?;
            let prime = match (constant, zeta, sign) {
                (Some(xi), None, None) => {
                    let xi = artifact::fq_from_string(&ctx, &xi)?;
                    crate::algebra::hansen_mullen_search(&ctx, d, &xi)?
                }
                (None, Some(z), Some(s)) => {
                    let z = artifact::fq_from_string(&ctx, &z)?;
                    crate::algebra::choose_prime(&ctx, d, &z, s)?
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "use either --const XI, or --zeta Z with --sign ±1".into(),
                    ))
                }
            };
            match common.format {
                Format::Text => println!("{prime}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "prime": prime.to_string(),
                        "coeffs": artifact::upoly_to_json(&prime),
                    })
                ),
            }
            Ok(EXIT_OK)
        }
        Command::Phi { common, dm, point, a } => {
            let ctx = ctx_for(common.q)?;
            let kf = RatField::new(&ctx);
            let module = if let Some(gs) = dm {
                let gs = parse_coords(&ctx, &gs)?;
                DrinfeldModule::new(kf.clone(), gs)?
            } else if let Some(pt) = point {
                let coords = parse_coords(&ctx, &pt)?;
                flag_to_phi(&FlagPoint::new(kf.clone(), coords)?)?
            } else {
                return Err(Error::InvalidArgument("need --dm or --point".into()));
            };
            let a = parse_upoly(&ctx, &a)?;
            let w = module.phi_a(&a);
            match common.format {
                Format::Text => println!("{w}"),
                Format::Json => {
                    let coeffs: Vec<String> = w.coeffs().iter().map(|c| c.to_string()).collect();
                    let gs: Vec<String> =
                        (1..=module.rank()).map(|i| module.g(i).to_string()).collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "dm": { "rank": module.rank(), "coeffs": gs },
                            "tau_coeffs": coeffs,
                        })
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::AtkinLehner { common, point } => {
            let ctx = ctx_for(common.q)?;
            let kf = RatField::new(&ctx);
            let coords = parse_coords(&ctx, &point)?;
            let pt = FlagPoint::new(kf, coords)?;
            let image = atkin_lehner(&pt)?;
            match common.format {
                Format::Text => {
                    let parts: Vec<String> =
                        image.coords().iter().map(|c| c.to_string()).collect();
                    println!("({})", parts.join(" : "));
                }
                Format::Json => {
                    let parts: Vec<String> =
                        image.coords().iter().map(|c| c.to_string()).collect();
                    println!("{}", serde_json::json!({ "coords": parts }));
                }
            }
            Ok(EXIT_OK)
        }
        Command::MotiveDet { common, point } => {
            let ctx = ctx_for(common.q)?;
            let kf = RatField::new(&ctx);
            let coords = parse_coords(&ctx, &point)?;
            let pt = FlagPoint::new(kf.clone(), coords)?;
            let zeta = motive_det_zeta(&pt)?;
            // also expose the matrix and raw determinant of the isogeny
            let s = pt.rank() / 2;
            let source = flag_to_phi(&pt)?;
            let target = flag_to_phi(&atkin_lehner(&pt)?)?;
            let factors: Vec<(RatFn, RatFn)> =
                pt.coords()[s..].iter().map(|a| (a.clone(), kf.one())).collect();
            let u = OrePoly::product_of_linears(kf.clone(), &factors)?;
            let m = motive_matrix(&u, &source, &target)?;
            let det = m.det();
            match common.format {
                Format::Text => {
                    println!("zeta = {zeta}");
                    println!("det(u) = {det}");
                    for i in 0..m.rank() {
                        let row: Vec<String> =
                            (0..m.rank()).map(|j| m.entry(i, j).to_string()).collect();
                        println!("[{}]", row.join(", "));
                    }
                }
                Format::Json => {
                    let rows: Vec<Vec<String>> = (0..m.rank())
                        .map(|i| (0..m.rank()).map(|j| m.entry(i, j).to_string()).collect())
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "zeta": zeta.to_string(),
                            "det": det.to_string(),
                            "matrix": rows,
                        })
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Cover { common, n, prec, out, expand_n } => {
            let ctx = ctx_for(common.q)?;
            let n = parse_upoly(&ctx, &n)?;
            let prec = prec.unwrap_or_else(|| h_prec_cap(&ctx));
            let (cp, rel) = cover_pipeline(&ctx, &n, prec)?;
            let report = verify_descent(&cp)?;
            let doc = artifact::cover_to_json(&cp, prec, &rel.diagnostics);
            if let Some(path) = &out {
                std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap())
                    .map_err(|e| Error::InvalidArgument(format!("cannot write {path:?}: {e}")))?;
            }
            match common.format {
                Format::Text => {
                    println!("{}", artifact::cover_to_text(&cp, expand_n));
                    for (name, ok) in report.checks() {
                        println!("# {} {}", if ok { "PASS" } else { "FAIL" }, name);
                    }
                }
                Format::Json => {
                    let mut v = serde_json::to_value(&doc).unwrap();
                    v["text"] =
                        serde_json::Value::String(artifact::cover_to_text(&cp, expand_n));
                    v["checks"] = serde_json::json!(report
                        .checks()
                        .into_iter()
                        .collect::<std::collections::BTreeMap<String, bool>>());
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_MATH })
        }
        Command::Galois { common, cover_file, trials, seed } => {
            if trials == 0 {
                return Err(Error::InvalidArgument("trials must be >= 1".into()));
            }
            let text = std::fs::read_to_string(&cover_file).map_err(|e| Error::Parse {
                pos: 0,
                msg: format!("cannot read {cover_file:?}: {e}"),
            })?;
            let doc: artifact::CoverJson = serde_json::from_str(&text)
                .map_err(|e| Error::Parse { pos: 0, msg: format!("bad cover artifact: {e}") })?;
            if doc.q != common.q {
                return Err(Error::InvalidArgument(format!(
                    "artifact has q = {}, command asked for q = {}",
                    doc.q, common.q
                )));
            }
            let (poly, n) = artifact::cover_from_json(&doc)?;
            let rep = chebotarev_report(&poly, &n, trials, seed)?;
            let json = artifact::report_to_json(&rep);
            match common.format {
                Format::Text => {
                    println!("oracle: {} (order {})", json.oracle_label, json.oracle_order);
                    println!("valid specializations: {} (discarded {})", rep.valid, rep.discarded);
                    for (t, c) in &rep.observed {
                        let freq = *c as f64 / rep.valid as f64;
                        let exp = rep.oracle.frequency(t);
                        println!("  [{t}] observed {c} ({freq:.3}), expected frequency {exp:.3}");
                    }
                    println!("containment: {}", rep.containment);
                    println!("coverage (identity exempt): {}", rep.coverage);
                    println!("distance (chi-square): {:.2}", rep.distance);
                    println!("max |empirical - expected| frequency: {:.3}", rep.max_freq_gap);
                    println!("group fit: {}", rep.group_fit);
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&json).unwrap()),
            }
            Ok(if rep.passes() { EXIT_OK } else { EXIT_MATH })
        }
    }
}

