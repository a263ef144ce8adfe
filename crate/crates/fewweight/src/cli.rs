//! Command-line interface.
//!
//! Deliverables go to stdout (a bare enumerator line, a JSON document,
//! report lines); context and progress go to stderr. Exit codes: 0 success,
//! 1 a verification produced a FAIL, 2 configuration or usage error,
//! 3 inadmissible exponents without --no-check, 4 field-size bound exceeded.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{self, VerificationReport};
use crate::codes::{self, CodeSpec};
use crate::fields::{self, FieldContext};
use crate::{Error, Result};

/// Codeword enumerations above this size are refused; closed-form routes
/// are unaffected.
const MAX_ENUMERATION: u64 = 1 << 26;

#[derive(Parser)]
#[command(
    name = "fewweight",
    version,
    about = "Few-weight cyclic codes of length q^2-1: construction, weight \
             distributions, complete weight distributions, duals, and \
             exhaustive verification of their closed forms."
)]
pub struct Cli {
    /// Emit JSON on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Size of the worker thread pool (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Largest allowed q; raise explicitly for bigger fields.
    #[arg(long, global = true, default_value_t = fields::DEFAULT_MAX_Q)]
    pub max_q: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build the canonical field tables for F_{q^2} over F_q and print them.
    Field {
        /// Field size as a prime power.
        #[arg(long, conflicts_with_all = ["p", "m"])]
        q: Option<u64>,
        /// Characteristic (with --m).
        #[arg(long, requires = "m")]
        p: Option<u64>,
        /// Extension degree over the prime field (with --p).
        #[arg(long, requires = "p")]
        m: Option<u32>,
    },
    /// Weight distribution of one code.
    Weights(CodeSelector),
    /// Complete weight distribution of one code.
    Cwe(CodeSelector),
    /// Dual parameters and dual weight distribution of one code.
    Dual(CodeSelector),
    /// Distribution of the root count Z(a, b, c) over all coefficients.
    Sums {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        e1: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        e2: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        e3: i64,
    },
    /// Re-verify the closed-form claims by exhaustive computation.
    Verify {
        /// Field sizes to verify (repeatable; default 3 4 5).
        #[arg(long = "q")]
        qs: Vec<u64>,
        /// Every distinct member of both families.
        #[arg(long)]
        families: bool,
        /// Character-sum tables and root-count distributions.
        #[arg(long)]
        sums: bool,
        /// Distinct-member counting formulas.
        #[arg(long)]
        counting: bool,
        /// The q = 3 same-distribution non-member.
        #[arg(long)]
        counterexample: bool,
        /// The degree-(1,2) census.
        #[arg(long)]
        census: bool,
        /// All of the above (default when no selector is given).
        #[arg(long)]
        all: bool,
    },
    /// Survey all codes with one degree-1 and one degree-2 check factor.
    Census {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args)]
pub struct CodeSelector {
    /// Field size as a prime power.
    #[arg(long)]
    pub q: u64,

    /// Four-dimensional family parameters e1 e2 e3.
    #[arg(long, num_args = 3, value_names = ["E1", "E2", "E3"],
          allow_hyphen_values = true, conflicts_with_all = ["dim3", "check_exps"])]
    pub dim4: Option<Vec<i64>>,

    /// Three-dimensional family parameters e2 e3.
    #[arg(long, num_args = 2, value_names = ["E2", "E3"],
          allow_hyphen_values = true, conflicts_with = "check_exps")]
    pub dim3: Option<Vec<i64>>,

    /// Raw check exponents, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub check_exps: Option<Vec<i64>>,

    /// Build family codes without the admissibility gate.
    #[arg(long)]
    pub no_check: bool,
}

struct Selection {
    spec: CodeSpec,
    dim4_params: Option<(i64, i64, i64)>,
}

/// Runs one parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("note: worker pool already initialized ({e})");
        }
    }
    match cli.command {
        Command::Field { q, p, m } => cmd_field(q, p, m, cli.max_q, cli.json),
        Command::Weights(sel) => cmd_weights(sel, cli.max_q, cli.json),
        Command::Cwe(sel) => cmd_cwe(sel, cli.max_q, cli.json),
        Command::Dual(sel) => cmd_dual(sel, cli.max_q, cli.json),
        Command::Sums { q, e1, e2, e3 } => cmd_sums(q, e1, e2, e3, cli.max_q, cli.json),
        Command::Verify {
            qs,
            families,
            sums,
            counting,
            counterexample,
            census,
            all,
        } => {
            let none = !(families || sums || counting || counterexample || census);
            let all = all || none;
            cmd_verify(
                if qs.is_empty() { vec![3, 4, 5] } else { qs },
                all || families,
                all || sums,
                all || counting,
                all || counterexample,
                all || census,
                cli.max_q,
                cli.json,
            )
        }
        Command::Census { q } => cmd_census(q, cli.max_q, cli.json),
    }
}

/// The exit code an error maps to.
pub fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Inadmissible(_, _) => 3,
        Error::BoundExceeded { .. } => 4,
        Error::NonIntegralDual(_) => 1,
        _ => 2,
    }
}

fn build_ctx(q: u64, max_q: u64) -> Result<FieldContext> {
    let (p, m) = fields::prime_power_decompose(q)?;
    FieldContext::build_with_max_q(p, m, max_q)
}

fn resolve(ctx: &FieldContext, sel: &CodeSelector) -> Result<Selection> {
    match (&sel.dim4, &sel.dim3, &sel.check_exps) {
        (Some(e), None, None) => {
            let (e1, e2, e3) = (e[0], e[1], e[2]);
            let spec = if sel.no_check {
                codes::build_code(ctx, &codes::dim4_family_exponents(ctx, e1, e2, e3))?
            } else {
                codes::dim4_code(ctx, e1, e2, e3)?
            };
            Ok(Selection {
                spec,
                dim4_params: Some((e1, e2, e3)),
            })
        }
        (None, Some(e), None) => {
            let (e2, e3) = (e[0], e[1]);
            let spec = if sel.no_check {
                codes::build_code(ctx, &codes::dim3_family_exponents(ctx, e2, e3))?
            } else {
                codes::dim3_code(ctx, e2, e3)?
            };
            Ok(Selection {
                spec,
                dim4_params: None,
            })
        }
        (None, None, Some(exps)) => Ok(Selection {
            spec: codes::build_code(ctx, exps)?,
            dim4_params: None,
        }),
        _ => Err(Error::InvalidParameter(
            "choose exactly one of --dim4, --dim3, --check-exps".into(),
        )),
    }
}

fn guard_enumeration(ctx: &FieldContext, spec: &CodeSpec) -> Result<()> {
    let count = codes::message_count(ctx, spec);
    if count > MAX_ENUMERATION {
        return Err(Error::InvalidParameter(format!(
            "enumerating {count} codewords exceeds the supported size"
        )));
    }
    Ok(())
}

fn describe(ctx: &FieldContext, spec: &CodeSpec) {
    eprintln!(
        "code over F_{}: length {}, dimension {}, check exponents {:?}",
        ctx.q(),
        spec.n(),
        spec.k(),
        spec.exponents()
    );
}

fn with_extras(mut v: Value, extras: Vec<(&str, Value)>) -> Value {
    let obj = v.as_object_mut().expect("object");
    for (key, val) in extras {
        obj.insert(key.to_string(), val);
    }
    v
}

fn exponents_json(spec: &CodeSpec) -> Value {
    json!(spec.exponents())
}

fn cmd_field(
    q: Option<u64>,
    p: Option<u64>,
    m: Option<u32>,
    max_q: u64,
    as_json: bool,
) -> Result<i32> {
    let (p, m) = match (q, p, m) {
        (Some(q), None, None) => fields::prime_power_decompose(q)?,
        (None, Some(p), Some(m)) => (p, m),
        _ => {
            return Err(Error::InvalidParameter(
                "give either --q, or both --p and --m".into(),
            ))
        }
    };
    let ctx = FieldContext::build_with_max_q(p, m, max_q)?;
    let gamma = ctx.gamma_pow(1);
    let delta = ctx.delta_pow(1);
    if as_json {
        let doc = json!({
            "p": ctx.p(),
            "m": ctx.m(),
            "q": ctx.q(),
            "n": ctx.ext_order(),
            "modulus": ctx.modulus_coeffs(),
            "gamma_encoding": ctx.encoding(gamma),
            "delta_encoding": ctx.encoding(delta),
            "delta_display": ctx.format_element(delta),
            "zech_checksum": format!("{:#018x}", ctx.zech_checksum()),
        });
        println!("{doc}");
    } else {
        println!("q = {} (p = {}, m = {}), n = q^2 - 1 = {}", ctx.q(), ctx.p(), ctx.m(), ctx.ext_order());
        println!(
            "modulus of F_{} over F_{} (coefficients low to high): {:?}",
            ctx.q() * ctx.q(),
            ctx.p(),
            ctx.modulus_coeffs()
        );
        println!("gamma encoding: {}", ctx.encoding(gamma));
        println!(
            "delta = gamma^{} = {}, encoding: {}",
            ctx.q() + 1,
            ctx.format_element(delta),
            ctx.encoding(delta)
        );
        println!("zech checksum: {:#018x}", ctx.zech_checksum());
    }
    Ok(0)
}

fn compute_weights(ctx: &FieldContext, sel: &Selection) -> Result<codes::WeightDistribution> {
    if let Some((e1, e2, e3)) = sel.dim4_params {
        codes::dim4_weight_distribution(ctx, e1, e2, e3)
    } else {
        guard_enumeration(ctx, &sel.spec)?;
        Ok(codes::weight_distribution(ctx, &sel.spec))
    }
}

fn cmd_weights(sel: CodeSelector, max_q: u64, as_json: bool) -> Result<i32> {
    let ctx = build_ctx(sel.q, max_q)?;
    let selection = resolve(&ctx, &sel)?;
    describe(&ctx, &selection.spec);
    let w = compute_weights(&ctx, &selection)?;
    if as_json {
        let doc = with_extras(
            w.to_json(),
            vec![
                ("check_exponents", exponents_json(&selection.spec)),
                ("enumerator", json!(w.enumerator_string())),
            ],
        );
        println!("{doc}");
    } else {
        println!("{}", w.enumerator_string());
    }
    Ok(0)
}

fn cmd_cwe(sel: CodeSelector, max_q: u64, as_json: bool) -> Result<i32> {
    let ctx = build_ctx(sel.q, max_q)?;
    let selection = resolve(&ctx, &sel)?;
    describe(&ctx, &selection.spec);
    guard_enumeration(&ctx, &selection.spec)?;
    let cwe = codes::complete_weight_distribution(&ctx, &selection.spec);
    if as_json {
        let doc = with_extras(
            cwe.to_json(&ctx),
            vec![
                ("check_exponents", exponents_json(&selection.spec)),
                ("rendered", json!(cwe.cwe_string())),
            ],
        );
        println!("{doc}");
    } else {
        println!("{}", cwe.cwe_string());
    }
    Ok(0)
}

fn cmd_dual(sel: CodeSelector, max_q: u64, as_json: bool) -> Result<i32> {
    let ctx = build_ctx(sel.q, max_q)?;
    let selection = resolve(&ctx, &sel)?;
    describe(&ctx, &selection.spec);
    let w = compute_weights(&ctx, &selection)?;
    let dual = codes::macwilliams_dual(&w)?;
    let d = dual.min_nonzero_weight().unwrap_or(0);
    if as_json {
        let doc = json!({
            "q": ctx.q(),
            "check_exponents": selection.spec.exponents(),
            "primal": w.to_json(),
            "dual": dual.to_json(),
            "dual_parameters": [dual.n, dual.k, d],
        });
        println!("{doc}");
    } else {
        println!("[{}, {}, {}] over F_{}", dual.n, dual.k, d, ctx.q());
        println!("{}", dual.enumerator_string());
    }
    Ok(0)
}

fn cmd_sums(q: u64, e1: i64, e2: i64, e3: i64, max_q: u64, as_json: bool) -> Result<i32> {
    let ctx = build_ctx(q, max_q)?;
    let counts = crate::charsums::value_distribution(&ctx, e1, e2, e3)?;
    let expected = crate::charsums::expected_z_distribution(q);
    let matches = counts == expected;
    if as_json {
        let to_map = |m: &std::collections::BTreeMap<u64, u64>| -> Value {
            json!(m
                .iter()
                .map(|(z, c)| (z.to_string(), c.to_string()))
                .collect::<std::collections::BTreeMap<String, String>>())
        };
        let doc = json!({
            "q": q,
            "e": [e1, e2, e3],
            "counts": to_map(&counts),
            "expected": to_map(&expected),
            "matches": matches,
        });
        println!("{doc}");
    } else {
        for (z, c) in &counts {
            let want = expected.get(z).copied().unwrap_or(0);
            println!("Z={z} count={c} expected={want}");
        }
        println!(
            "conformance: {}",
            if matches { "exact" } else { "MISMATCH" }
        );
    }
    Ok(if matches { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    qs: Vec<u64>,
    families: bool,
    sums: bool,
    counting: bool,
    counterexample: bool,
    census: bool,
    max_q: u64,
    as_json: bool,
) -> Result<i32> {
    let mut reports: Vec<VerificationReport> = vec![];
    for &q in &qs {
        let ctx = build_ctx(q, max_q)?;
        if sums {
            eprintln!("verifying character sums at q = {q}");
            reports.push(analysis::verify_z_distributions(&ctx)?);
            reports.push(analysis::verify_t_table(&ctx));
        }
        if counting {
            eprintln!("verifying member counts at q = {q}");
            reports.push(analysis::verify_counting(&ctx));
        }
        if families && q > 2 {
            for ((e1, e2, e3), _) in analysis::distinct_dim4_members(&ctx) {
                eprintln!("verifying dim-4 member ({e1},{e2},{e3}) at q = {q}");
                reports.push(analysis::verify_dim4_member(&ctx, e1, e2, e3)?);
            }
            for ((e2, e3), _) in analysis::distinct_dim3_members(&ctx) {
                eprintln!("verifying dim-3 member ({e2},{e3}) at q = {q}");
                reports.push(analysis::verify_dim3_member(&ctx, e2, e3)?);
            }
        }
        if counterexample {
            if q == 3 {
                eprintln!("verifying the q = 3 non-member");
                reports.push(analysis::verify_counterexample(&ctx)?);
            } else {
                eprintln!("note: the non-member example only exists at q = 3; skipping for q = {q}");
            }
        }
        if census {
            eprintln!("verifying the census at q = {q}");
            reports.push(analysis::verify_census(&ctx));
        }
    }
    let mut all_passed = true;
    for report in &reports {
        if as_json {
            println!("{}", serde_json::to_string(report).expect("serializable"));
        } else {
            println!("{}", report.summary_line());
            for check in report.checks.iter().filter(|c| !c.passed) {
                println!(
                    "  FAIL {}: expected {}, computed {}",
                    check.name, check.expected, check.computed
                );
            }
        }
        all_passed &= report.passed();
    }
    if !as_json {
        println!(
            "{} of {} reports passed",
            reports.iter().filter(|r| r.passed()).count(),
            reports.len()
        );
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_census(q: u64, max_q: u64, as_json: bool) -> Result<i32> {
    let ctx = build_ctx(q, max_q)?;
    let census = analysis::cwe_census(&ctx);
    if as_json {
        println!("{}", census.to_json(&ctx));
    } else {
        println!(
            "q={} pairs={} qualifying={} distinct_cwes={} conjecture(q-1={}): {}",
            census.q,
            census.pair_count,
            census.qualifying_count,
            census.distinct_cwe_count(),
            census.conjectured_distinct,
            if census.matches_conjecture() {
                "match"
            } else {
                "no match"
            }
        );
        for (i, (cwe, members)) in census.groups.iter().enumerate() {
            let list = members
                .iter()
                .map(|(a1, a2)| format!("({a1},{a2})"))
                .collect::<Vec<_>>()
                .join(" ");
            println!("group {} ({} codes): {}", i + 1, members.len(), list);
            println!("  {}", cwe.cwe_string());
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn selector_parses_each_route() {
        let cli = Cli::parse_from(["fewweight", "weights", "--q", "3", "--dim4", "0", "1", "1"]);
        match cli.command {
            Command::Weights(sel) => assert_eq!(sel.dim4, Some(vec![0, 1, 1])),
            _ => panic!("wrong subcommand"),
        }
        let cli = Cli::parse_from(["fewweight", "cwe", "--q", "4", "--dim3", "1", "1"]);
        match cli.command {
            Command::Cwe(sel) => assert_eq!(sel.dim3, Some(vec![1, 1])),
            _ => panic!("wrong subcommand"),
        }
        let cli = Cli::parse_from([
            "fewweight",
            "dual",
            "--q",
            "3",
            "--check-exps",
            "2,5",
            "--no-check",
        ]);
        match cli.command {
            Command::Dual(sel) => {
                assert_eq!(sel.check_exps, Some(vec![2, 5]));
                assert!(sel.no_check);
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn error_codes_follow_the_contract() {
        assert_eq!(
            error_exit_code(&Error::Inadmissible(vec![0, 1, 2], "x".into())),
            3
        );
        assert_eq!(error_exit_code(&Error::BoundExceeded { q: 32, max: 16 }), 4);
        assert_eq!(error_exit_code(&Error::NotPrimePower(12)), 2);
        assert_eq!(error_exit_code(&Error::NonIntegralDual(3)), 1);
    }
}
