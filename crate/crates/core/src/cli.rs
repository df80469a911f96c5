//! The `posipoly` command line.
//!
//! Exit status is `0` on success, `1` when a mathematical check fails (a
//! witness is printed), and `2` for usage and parse errors. With `--json`
//! every subcommand prints one object
//! `{"command", "verdict", "witnesses", "seed", "samples", "result"}`; for a
//! fixed seed the output is byte-for-byte reproducible.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinatorics::StirlingTable;
use crate::components::{
    component_by_scaling, components_by_interpolation, components_by_stirling, least_degree,
};
use crate::diff::{difference_var_names, mixed_diff_at, pure_diff_at, symbolic_mixed_diff, symbolic_pure_diff};
use crate::kantorovich::{kantorovich_extend, kantorovich_extend_search, ExtensionResult};
use crate::parse::{format_with_vars, parse_named, parse_with_vars};
use crate::positivity::{counterexample_suite, is_positive, pure_diff_nonneg_check, PositivityCertificate};
use crate::report::{SamplerConfig, Verdict, Witness};
use crate::vector::{self, Vector};
use crate::{ConeRestriction, Error, Mapping, SymTensor, TableFunction, VectorPoly};

#[derive(Debug, Parser)]
#[command(name = "posipoly", version, about = "Exact finite-difference calculus for polynomial mappings")]
struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random samples per check.
    #[arg(long, global = true, default_value_t = 64)]
    samples: usize,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Comma-separated variable names, in order (default: x1, x2, ...).
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComponentMethod {
    Interp,
    Stirling,
    Scaling,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolarizeMethod {
    Signs,
    Mo,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a polynomial at a point.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Point such as `1/2,-3`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Forward differences, numeric or symbolic.
    Diff {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Pure difference with a repeated increment (default).
        #[arg(long, conflicts_with = "mixed")]
        pure: bool,
        /// Mixed difference with one increment per order.
        #[arg(long)]
        mixed: bool,
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Expand in the variables `[x | h1 | ... | hr]` instead of evaluating.
        #[arg(long)]
        symbolic: bool,
        /// Base point (default: origin).
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Increment; repeat once per order for mixed differences (default: all ones).
        #[arg(long = "inc", allow_hyphen_values = true)]
        incs: Vec<String>,
    },
    /// Homogeneous components at a point.
    Components {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = ComponentMethod::All)]
        method: ComponentMethod,
        /// Degree bound (default: degree of the polynomial).
        #[arg(long)]
        degree: Option<usize>,
        /// Evaluation point (default: all ones).
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Symmetric multilinear form of a homogeneous polynomial.
    Polarize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = PolarizeMethod::Signs)]
        method: PolarizeMethod,
        /// Base point of the vertex formula (default: origin).
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
    /// Least degree whose pure differences vanish.
    Degree {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Positivity via polarization, optionally with the pure-difference cone check.
    Positivity {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        pure_check: bool,
        /// Highest difference order checked (default: degree).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Extend a cone function to a positive polynomial.
    Extend {
        /// Polynomial whose restriction to the cone is the input.
        #[arg(allow_hyphen_values = true, required_unless_present = "table")]
        expr: Option<String>,
        /// JSON file of tabulated cone values instead of an expression.
        #[arg(long, conflicts_with = "expr")]
        table: Option<std::path::PathBuf>,
        /// Degree bound; searched up to `--max` when omitted.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// The cubic separating positivity from pure-difference nonnegativity.
    Counterexample {
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Stirling number triangle.
    Stirling {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        /// Last row.
        #[arg(default_value_t = 8)]
        rows: usize,
    },
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    verdict: Verdict,
    witnesses: Vec<Witness>,
    seed: u64,
    samples: usize,
    result: Value,
}

struct Outcome {
    verdict: Verdict,
    witnesses: Vec<Witness>,
    samples: usize,
    result: Value,
    text: String,
    randomized: bool,
}

impl Outcome {
    fn exact(result: Value, text: String) -> Self {
        Outcome { verdict: Verdict::Pass, witnesses: Vec::new(), samples: 0, result, text, randomized: false }
    }
}

struct Ctx {
    cfg: SamplerConfig,
    vars: Option<Vec<String>>,
}

impl Ctx {
    fn parse(&self, text: &str) -> crate::Result<(VectorPoly, Vec<String>)> {
        match &self.vars {
            Some(names) => Ok((parse_with_vars(text, names)?, names.clone())),
            None => {
                let parsed = parse_named(text)?;
                Ok((parsed.poly, parsed.names))
            }
        }
    }
}

fn point(text: &str, n: usize) -> crate::Result<Vector> {
    let v = vector::parse_list(text).map_err(Error::InvalidArgument)?;
    Error::check_dim(n, v.len())?;
    Ok(v)
}

fn vec_json(v: &[crate::Rat]) -> Value {
    json!(vector::to_strings(v))
}

fn tensor_json(a: &SymTensor) -> Value {
    let map: serde_json::Map<String, Value> = a
        .entries()
        .map(|(t, v)| {
            let key: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
            (key.join(","), vec_json(v))
        })
        .collect();
    Value::Object(map)
}

fn tensor_text(a: &SymTensor) -> String {
    if a.is_zero() {
        return "A = 0\n".into();
    }
    let mut out = String::new();
    for (t, v) in a.entries() {
        let key: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "A({}) = {}", key.join(","), show(v));
    }
    out
}

/// A scalar prints bare, a longer vector in parentheses.
fn show(v: &[crate::Rat]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        vector::format(v)
    }
}

fn witness_text(w: &Witness) -> String {
    let points: Vec<String> = w.points.iter().map(|p| vector::format(p)).collect();
    format!("witness: {} at {} = {}", w.label, points.join("; "), show(&w.value))
}

fn positivity_json(cert: &PositivityCertificate) -> Value {
    let comps: Vec<Value> = cert
        .components
        .iter()
        .map(|c| {
            json!({
                "degree": c.degree,
                "witness": c.witness.as_ref().map(|(t, v)| json!({
                    "indices": t.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "value": vec_json(v),
                })),
            })
        })
        .collect();
    json!({ "is_positive": cert.positive, "components": comps })
}

fn tensor_witness(cert: &PositivityCertificate, n: usize) -> Option<Witness> {
    cert.witness().map(|(k, t, v)| {
        Witness::new(
            format!("negative value of the symmetric form of degree {k}"),
            t.iter().map(|&i| vector::basis(n, i)).collect(),
            v.clone(),
        )
    })
}

fn extension_outcome(names: &[String], result: &ExtensionResult, searched: Option<usize>) -> Outcome {
    let poly_text = format_with_vars(&result.polynomial, names);
    let mut text = format!("{poly_text}\n");
    if let Some(m) = searched {
        let _ = writeln!(text, "degree found: {m}");
    }
    let _ = writeln!(text, "hypotheses: {}", result.hypothesis_report.verdict.as_str());
    let _ = writeln!(text, "agreement: {}", result.agreement_report.verdict.as_str());
    let verdict = result.hypothesis_report.verdict.and(result.agreement_report.verdict);
    Outcome {
        verdict,
        witnesses: Vec::new(),
        samples: result.hypothesis_report.samples_used + result.agreement_report.samples_used,
        result: json!({
            "polynomial": poly_text,
            "degree": result.components.len() - 1,
            "components": result.components.iter().map(tensor_json).collect::<Vec<_>>(),
            "hypotheses": result.hypothesis_report.verdict,
            "agreement": result.agreement_report.verdict,
        }),
        text,
        randomized: true,
    }
}

fn execute(cmd: &Command, ctx: &Ctx) -> crate::Result<Outcome> {
    let cfg = &ctx.cfg;
    match cmd {
        Command::Eval { expr, at } => {
            let (p, _) = ctx.parse(expr)?;
            let value = p.evaluate(&point(at, p.nvars())?)?;
            Ok(Outcome::exact(vec_json(&value), format!("{}\n", show(&value))))
        }
        Command::Diff { expr, pure: _, mixed, order, symbolic, at, incs } => {
            let (p, names) = ctx.parse(expr)?;
            let n = p.nvars();
            if *symbolic {
                let (d, dnames) = if *mixed {
                    (symbolic_mixed_diff(&p, *order)?, difference_var_names(&names, *order))
                } else {
                    (symbolic_pure_diff(&p, *order)?, difference_var_names(&names, 1))
                };
                let text = format_with_vars(&d, &dnames);
                return Ok(Outcome::exact(json!({ "polynomial": text, "variables": dnames }), format!("{text}\n")));
            }
            let x = match at {
                Some(s) => point(s, n)?,
                None => vector::zeros(n),
            };
            let mut hs = incs.iter().map(|s| point(s, n)).collect::<crate::Result<Vec<_>>>()?;
            let value = if *mixed {
                if hs.is_empty() {
                    hs = vec![vec![crate::poly::rat(1); n]; *order];
                }
                if hs.len() != *order {
                    return Err(Error::InvalidArgument(format!(
                        "a mixed difference of order {order} needs {order} increments, got {}",
                        hs.len()
                    )));
                }
                mixed_diff_at(&p, &x, &hs)?
            } else {
                let h = match hs.as_slice() {
                    [] => vec![crate::poly::rat(1); n],
                    [h] => h.clone(),
                    _ => return Err(Error::InvalidArgument("a pure difference takes one increment".into())),
                };
                pure_diff_at(&p, &x, &h, *order)?
            };
            Ok(Outcome::exact(vec_json(&value), format!("{}\n", show(&value))))
        }
        Command::Components { expr, method, degree, at } => {
            let (p, names) = ctx.parse(expr)?;
            let n = p.nvars();
            let m = degree.unwrap_or_else(|| p.degree().unwrap_or(0));
            let x = match at {
                Some(s) => point(s, n)?,
                None => vec![crate::poly::rat(1); n],
            };
            let (interp, stirling, scaling) = match method {
                ComponentMethod::Interp => (true, false, false),
                ComponentMethod::Stirling => (false, true, false),
                ComponentMethod::Scaling => (false, false, true),
                ComponentMethod::All => (true, true, true),
            };
            let mut lists: Vec<(&str, Vec<Vector>)> = Vec::new();
            if interp {
                lists.push(("interp", components_by_interpolation(&p, m, &x)?));
            }
            if stirling {
                lists.push(("stirling", components_by_stirling(&p, m, &x)?));
            }
            let mut polys = Vec::new();
            if scaling {
                let mut values = Vec::new();
                for k in 0..=m {
                    let pk = component_by_scaling(&p, k)?;
                    values.push(pk.evaluate(&x)?);
                    polys.push(format_with_vars(&pk, &names));
                }
                lists.push(("scaling", values));
            }
            let agree = lists.windows(2).all(|w| w[0].1 == w[1].1);
            let mut text = String::new();
            let mut result = serde_json::Map::new();
            for (name, values) in &lists {
                let shown: Vec<String> = values.iter().map(|v| show(v)).collect();
                let _ = writeln!(text, "{name}: {}", shown.join(", "));
                result.insert(name.to_string(), json!(values.iter().map(|v| vec_json(v)).collect::<Vec<_>>()));
            }
            if !polys.is_empty() {
                let _ = writeln!(text, "components: {}", polys.join(", "));
                result.insert("polynomials".into(), json!(polys));
            }
            result.insert("point".into(), vec_json(&x));
            let mut out = Outcome::exact(Value::Object(result), text);
            if !agree {
                out.verdict = Verdict::Fail;
            }
            Ok(out)
        }
        Command::Polarize { expr, method, base } => {
            let (p, _) = ctx.parse(expr)?;
            let k = p.degree().unwrap_or(0);
            let a = match method {
                PolarizeMethod::Signs => SymTensor::polarize_signs(&p, k)?,
                PolarizeMethod::Mo => {
                    let b = match base {
                        Some(s) => point(s, p.nvars())?,
                        None => vector::zeros(p.nvars()),
                    };
                    SymTensor::polarize_mo(&p, k, &b)?
                }
            };
            Ok(Outcome::exact(json!({ "order": k, "tensor": tensor_json(&a) }), tensor_text(&a)))
        }
        Command::Degree { expr, max } => {
            let (p, _) = ctx.parse(expr)?;
            let search = least_degree(&p, *max, cfg)?;
            let text = match search.degree {
                Some(d) => format!("degree: {d}\n"),
                None => format!("degree exceeds {max}\n"),
            };
            Ok(Outcome {
                verdict: if search.degree.is_some() { search.report.verdict } else { Verdict::Fail },
                witnesses: search.report.witnesses.clone(),
                samples: search.report.samples_used,
                result: json!({ "degree": search.degree, "max": max }),
                text,
                randomized: true,
            })
        }
        Command::Positivity { expr, pure_check, order } => {
            let (p, _) = ctx.parse(expr)?;
            let cert = is_positive(&p)?;
            let mut witnesses: Vec<Witness> = tensor_witness(&cert, p.nvars()).into_iter().collect();
            let mut result = positivity_json(&cert);
            let mut text = format!("positive: {}\n", cert.positive);
            let mut samples = 0;
            if *pure_check {
                let r_max = order.unwrap_or_else(|| p.degree().unwrap_or(0));
                let check = pure_diff_nonneg_check(&p, r_max, cfg)?;
                let _ = writeln!(text, "pure differences nonnegative: {}", check.report.verdict.as_str());
                for o in &check.orders {
                    let _ = writeln!(
                        text,
                        "  order {}: {} ({} grid points, {} random samples)",
                        o.order,
                        o.verdict.as_str(),
                        o.grid_points,
                        o.random_samples
                    );
                }
                samples = check.report.samples_used;
                witnesses.extend(check.report.witnesses.iter().cloned());
                result["pure_check"] = json!({ "verdict": check.report.verdict, "orders": check.orders });
            }
            Ok(Outcome {
                verdict: if cert.positive { Verdict::Pass } else { Verdict::Fail },
                witnesses,
                samples,
                result,
                text,
                randomized: *pure_check,
            })
        }
        Command::Extend { expr, table, degree, max } => {
            if let Some(path) = table {
                let data = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
                let f = TableFunction::from_json(&data)?;
                let names = ctx.vars.clone().unwrap_or_else(|| crate::parse::default_names(f.nvars()));
                Error::check_dim(f.nvars(), names.len())?;
                // Tabulated data is only known at integer points.
                let mut cfg = cfg.clone();
                cfg.numerator_bound = 1;
                cfg.denominator_bound = 1;
                return extend(&f, &names, *degree, *max, &cfg);
            }
            let expr = expr.as_deref().expect("clap requires an expression without --table");
            let (p, names) = ctx.parse(expr)?;
            extend(&ConeRestriction::new(p), &names, *degree, *max, cfg)
        }
        Command::Counterexample { order } => {
            let suite = counterexample_suite(*order, cfg)?;
            let n = suite.polynomial.nvars();
            let mut witnesses: Vec<Witness> = tensor_witness(&suite.positivity, n).into_iter().collect();
            witnesses.extend(suite.mixed_check.witnesses.iter().cloned());
            witnesses.extend(suite.pure_check.report.witnesses.iter().cloned());
            let mixed_value = vec_json(&suite.basis_mixed_difference);
            let mut text = format!("P = {}\n", suite.polynomial);
            let _ = writeln!(text, "coefficient of x1*x2*x3: {}", suite.mixed_monomial_coefficient);
            let _ = writeln!(text, "positive: {}", suite.positivity.positive);
            if let Some((k, t, v)) = suite.positivity.witness() {
                let idx: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
                let _ = writeln!(text, "symmetric form of degree {k} at ({}) = {}", idx.join(","), show(v));
            }
            let _ = writeln!(text, "mixed difference at (0; e1, e2, e3) = {}", show(&suite.basis_mixed_difference));
            let _ = writeln!(text, "P(1,1,1) = {}", show(&suite.value_at_111));
            let _ = writeln!(text, "P(1,1,0) = {}", show(&suite.value_at_110));
            let _ = writeln!(text, "mixed differences nonnegative: {}", suite.mixed_check.verdict.as_str());
            let _ = writeln!(text, "pure differences nonnegative: {}", suite.pure_check.report.verdict.as_str());
            Ok(Outcome {
                verdict: if suite.separates() { Verdict::Pass } else { Verdict::Fail },
                witnesses,
                samples: suite.mixed_check.samples_used + suite.pure_check.report.samples_used,
                result: json!({
                    "polynomial": suite.polynomial.to_string(),
                    "mixed_monomial_coefficient": suite.mixed_monomial_coefficient.to_string(),
                    "is_positive": suite.positivity.positive,
                    "positivity": positivity_json(&suite.positivity),
                    "mixed_difference_at_basis": mixed_value,
                    "value_at_111": vec_json(&suite.value_at_111),
                    "value_at_110": vec_json(&suite.value_at_110),
                    "mixed_check": suite.mixed_check.verdict,
                    "pure_check": { "verdict": suite.pure_check.report.verdict, "orders": suite.pure_check.orders },
                }),
                text,
                randomized: true,
            })
        }
        Command::Stirling { kind, rows } => {
            let table = StirlingTable::new(*rows);
            let grid: Vec<Vec<String>> = (0..=*rows)
                .map(|j| {
                    (0..=j)
                        .map(|k| {
                            if *kind == 1 {
                                table.first_kind_unsigned(j, k).to_string()
                            } else {
                                table.second_kind(j, k).to_string()
                            }
                        })
                        .collect()
                })
                .collect();
            let text: String = grid.iter().map(|row| format!("{}\n", row.join(" "))).collect();
            Ok(Outcome::exact(json!({ "kind": kind, "rows": grid }), text))
        }
    }
}

fn extend<M: Mapping + ?Sized>(
    f: &M,
    names: &[String],
    degree: Option<usize>,
    max: usize,
    cfg: &SamplerConfig,
) -> crate::Result<Outcome> {
    match degree {
        Some(m) => Ok(extension_outcome(names, &kantorovich_extend(f, m, cfg)?, None)),
        None => {
            let (search, result) = kantorovich_extend_search(f, max, cfg)?;
            Ok(extension_outcome(names, &result, search.degree))
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Eval { .. } => "eval",
        Command::Diff { .. } => "diff",
        Command::Components { .. } => "components",
        Command::Polarize { .. } => "polarize",
        Command::Degree { .. } => "degree",
        Command::Positivity { .. } => "positivity",
        Command::Extend { .. } => "extend",
        Command::Counterexample { .. } => "counterexample",
        Command::Stirling { .. } => "stirling",
    }
}

/// Runs the command line `argv` (program name first), writing to stdout and
/// stderr, and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = String::new();
    let mut err = String::new();
    let code = run_captured(argv, &mut out, &mut err);
    print!("{out}");
    eprint!("{err}");
    code
}

/// Like [`run`] but collects the output instead of printing it.
pub fn run_captured<I, T>(argv: I, out: &mut String, err: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                err.push_str(&rendered);
            } else {
                out.push_str(&rendered);
            }
            return code;
        }
    };
    let ctx = Ctx { cfg: SamplerConfig::default().with_seed(cli.seed).with_samples(cli.samples), vars: cli.vars.clone() };
    let name = command_name(&cli.command);
    let outcome = match ctx.cfg.validate().and_then(|_| execute(&cli.command, &ctx)) {
        Ok(o) => o,
        Err(Error::HypothesisViolation { condition, report }) => Outcome {
            verdict: Verdict::Fail,
            text: format!("hypothesis violated: {condition}\n"),
            samples: report.samples_used,
            witnesses: report.witnesses,
            result: json!({ "condition": condition }),
            randomized: true,
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };

    let code = if outcome.verdict == Verdict::Fail { 1 } else { 0 };
    if cli.json {
        let report = Report {
            command: name,
            verdict: outcome.verdict,
            witnesses: outcome.witnesses,
            seed: cli.seed,
            samples: outcome.samples,
            result: outcome.result,
        };
        out.push_str(&serde_json::to_string_pretty(&report).expect("report serializes"));
        out.push('\n');
    } else {
        out.push_str(&outcome.text);
        for w in &outcome.witnesses {
            let _ = writeln!(out, "{}", witness_text(w));
        }
        if outcome.randomized {
            let _ = writeln!(out, "verdict: {} (seed {}, {} samples)", outcome.verdict.as_str(), cli.seed, outcome.samples);
        } else if outcome.verdict == Verdict::Fail {
            let _ = writeln!(out, "verdict: fail");
        }
    }
    code
}
