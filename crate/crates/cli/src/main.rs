use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use subres_core::confluent::{vandermonde_confluent, wronskian};
use subres_core::mv::{
    assemble_dual_basis, build_monomial_sets, default_order_bound, delta_s, extraneous_factor, inverse_system,
    macaulay_matrix, poisson_parts, DualBasis, MVSystem, MonomialSet,
};
use subres_core::roots_formulas::{sres_dm1_hermite, sres_one, sres_roots, Variant};
use subres_core::serial::{
    functional_to_json, monomial_set_from_json, multipoly_from_json, parse_document, point_from_json, roots_from_json, scalar_to_json,
    unipoly_from_json, unipoly_to_json, SystemDoc,
};
use subres_core::uni_subres::sylvester_factor;
use subres_core::{poly_from_roots, sres_coeff, sylv_double_sum, Error, ExactMatrix, MultiRootSet, UniPoly};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_STRUCTURAL: u8 = 3;
const EXIT_DISAGREE: u8 = 4;

/// Exact subresultants from coefficients, from roots and from dual bases.
///
/// Every value flag takes inline JSON or `@path` to read it from a file.
#[derive(Parser)]
#[command(name = "sres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sres_t(f, g) from coefficient arrays (ascending).
    Coeffs {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(short)]
        t: usize,
    },
    /// Sres_t from root sets `[[root, multiplicity], …]`.
    Roots {
        #[command(flatten)]
        ab: RootPair,
        #[arg(short)]
        t: usize,
        #[arg(long, default_value = "compact")]
        variant: Variant,
    },
    /// Sres_{d-1} as a Hermite interpolant.
    Hermite {
        #[command(flatten)]
        ab: RootPair,
    },
    /// Sres_1 from the composition-sum formula.
    One {
        #[command(flatten)]
        ab: RootPair,
    },
    /// Sylvester's double sum for simple roots.
    Dsum {
        #[command(flatten)]
        ab: RootPair,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
    },
    /// Confluent Vandermonde matrix with `u` rows.
    Vandermonde {
        #[arg(long = "A")]
        a: String,
        #[arg(short)]
        u: usize,
    },
    /// Generalized Wronskian of `h` (default 1) with `u` rows.
    Wronskian {
        #[arg(long = "A")]
        a: String,
        #[arg(short)]
        u: usize,
        #[arg(long)]
        h: Option<String>,
    },
    /// Δ_S of a multivariate system document.
    Mv {
        #[arg(long)]
        system: String,
        #[arg(short)]
        t: Option<u32>,
        #[arg(long = "S")]
        s: Option<String>,
        /// `macaulay` (coefficients) or `poisson` (needs roots in the document).
        #[arg(long, default_value = "macaulay")]
        method: Method,
    },
    /// Local inverse system of a set of generators at a point.
    Dual {
        /// Array of polynomials, as records or expression strings.
        #[arg(long)]
        generators: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        order_bound: Option<u32>,
        /// Variable names, default `["x1", …]`.
        #[arg(long)]
        vars: Option<String>,
    },
    /// Cross-checks every applicable formula on one input.
    Verify {
        #[arg(long = "A", requires = "b", conflicts_with = "system")]
        a: Option<String>,
        #[arg(long = "B")]
        b: Option<String>,
        #[arg(long)]
        system: Option<String>,
    },
}

#[derive(Args)]
struct RootPair {
    #[arg(long = "A")]
    a: String,
    #[arg(long = "B")]
    b: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Method {
    Macaulay,
    Poisson,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "macaulay" => Ok(Method::Macaulay),
            "poisson" => Ok(Method::Poisson),
            _ => Err(format!("unknown method `{s}` (expected macaulay|poisson)")),
        }
    }
}

enum Failure {
    Core(Error),
    Usage(String),
    Disagree(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<Value, Failure>;

/// Inline JSON, or the contents of the file after `@`.
fn load(flag: &str, text: &str) -> Result<Value, Failure> {
    let src = match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("--{flag}: cannot read {path}: {e}")))?,
        None => text.to_string(),
    };
    parse_document(&src).map_err(|e| match e {
        Error::Parse { location, message } => Failure::Core(Error::parse(format!("--{flag} {location}"), message)),
        other => Failure::Core(other),
    })
}

/// System documents are also accepted as a bare path.
fn load_system(text: &str) -> Result<SystemDoc, Failure> {
    let arg = if text.starts_with('@') || text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        format!("@{text}")
    };
    Ok(SystemDoc::from_json(&load("system", &arg)?)?)
}

fn roots_arg(flag: &str, text: &str) -> Result<MultiRootSet, Failure> {
    Ok(roots_from_json(&load(flag, text)?, flag)?)
}

fn poly_arg(flag: &str, text: &str) -> Result<UniPoly, Failure> {
    Ok(unipoly_from_json(&load(flag, text)?, flag)?)
}

fn matrix_to_json(m: &ExactMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Coeffs { f, g, t } => {
            let r = sres_coeff(&poly_arg("f", &f)?, &poly_arg("g", &g)?, t)?;
            Ok(unipoly_to_json(&r))
        }
        Command::Roots { ab, t, variant } => {
            let (a, b) = (roots_arg("A", &ab.a)?, roots_arg("B", &ab.b)?);
            Ok(unipoly_to_json(&sres_roots(&a, &b, t, variant)?))
        }
        Command::Hermite { ab } => {
            let (a, b) = (roots_arg("A", &ab.a)?, roots_arg("B", &ab.b)?);
            Ok(unipoly_to_json(&sres_dm1_hermite(&a, &b)?))
        }
        Command::One { ab } => {
            let (a, b) = (roots_arg("A", &ab.a)?, roots_arg("B", &ab.b)?);
            Ok(unipoly_to_json(&sres_one(&a, &b)?))
        }
        Command::Dsum { ab, p, q } => {
            let (a, b) = (roots_arg("A", &ab.a)?, roots_arg("B", &ab.b)?);
            Ok(unipoly_to_json(&sylv_double_sum(&a, &b, p, q)?))
        }
        Command::Vandermonde { a, u } => Ok(matrix_to_json(&vandermonde_confluent(&roots_arg("A", &a)?, u))),
        Command::Wronskian { a, u, h } => {
            let h = match h {
                Some(h) => poly_arg("h", &h)?,
                None => UniPoly::one(),
            };
            Ok(matrix_to_json(&wronskian(&h, &roots_arg("A", &a)?, u)))
        }
        Command::Mv { system, t, s, method } => {
            let doc = load_system(&system)?;
            let (sys, t, s) = mv_inputs(&doc, t, s.as_deref())?;
            let value = match method {
                Method::Macaulay => delta_s(&sys, t, &s)?,
                Method::Poisson => {
                    let basis = dual_basis(&doc, &sys)?;
                    let sets = build_monomial_sets(sys.degrees(), t, &doc.t_override)?;
                    poisson_parts(&sys, t, &s, &basis, &sets)?.value
                }
            };
            Ok(scalar_to_json(&value))
        }
        Command::Dual {
            generators,
            point,
            order_bound,
            vars,
        } => {
            let point = point_from_json(&load("point", &point)?, "point")?;
            let names: Vec<String> = match vars {
                Some(v) => serde_json::from_value(load("vars", &v)?)
                    .map_err(|e| Failure::Core(Error::parse("--vars", e.to_string())))?,
                None => (1..=point.dim()).map(|i| format!("x{i}")).collect(),
            };
            if names.len() != point.dim() {
                return Err(Failure::Core(Error::dimension(format!(
                    "{} variable names for a point with {} coordinates",
                    names.len(),
                    point.dim()
                ))));
            }
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let gens_json = load("generators", &generators)?;
            let gens = gens_json
                .as_array()
                .ok_or_else(|| Failure::Core(Error::parse("--generators", "expected an array of polynomials")))?
                .iter()
                .enumerate()
                .map(|(i, g)| multipoly_from_json(g, &refs, &format!("generators[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let bound = order_bound.unwrap_or_else(|| default_order_bound(&gens));
            let inv = inverse_system(&gens, &point, bound)?;
            if !inv.stabilized {
                eprintln!("warning: inverse system still growing at order bound {bound}");
            }
            Ok(json!({
                "dim": inv.dim(),
                "order": inv.order,
                "stabilized": inv.stabilized,
                "functionals": inv.functionals.iter().map(functional_to_json).collect::<Vec<_>>(),
            }))
        }
        Command::Verify { a, b, system } => match (a, b, system) {
            (Some(a), Some(b), None) => verify_univariate(&roots_arg("A", &a)?, &roots_arg("B", &b)?),
            (None, None, Some(s)) => verify_multivariate(&load_system(&s)?),
            _ => Err(Failure::Usage("verify needs either --A and --B, or --system".into())),
        },
    }
}

fn mv_inputs(doc: &SystemDoc, t: Option<u32>, s: Option<&str>) -> Result<(MVSystem, u32, MonomialSet), Failure> {
    let sys = MVSystem::new(doc.polynomials.clone(), doc.degrees.clone())?;
    let t = t
        .or(doc.t)
        .ok_or_else(|| Failure::Usage("no order t: pass -t or put `t` in the document".into()))?;
    let s = match s {
        Some(text) => monomial_set_from_json(&load("S", text)?, doc.n, "S")?,
        None => doc
            .s
            .clone()
            .ok_or_else(|| Failure::Usage("no monomial set S: pass --S or put `S` in the document".into()))?,
    };
    Ok((sys, t, s))
}

/// Uses the functionals of the document, computing the inverse system of
/// `f_1, …, f_n` at any root given without them.
fn dual_basis(doc: &SystemDoc, sys: &MVSystem) -> Result<DualBasis, Failure> {
    let roots = doc
        .roots
        .as_ref()
        .ok_or_else(|| Failure::Usage("the system document lists no roots".into()))?;
    let gens = &sys.polys()[..sys.n()];
    let bound = default_order_bound(gens);
    let mut per_root = Vec::with_capacity(roots.len());
    for r in roots {
        let dual = match &r.dual {
            Some(d) => d.clone(),
            None => {
                let inv = inverse_system(gens, &r.point, bound)?;
                if !inv.stabilized {
                    eprintln!("warning: inverse system at {} did not stabilize by order {bound}", r.point);
                }
                inv.functionals
            }
        };
        per_root.push((r.point.clone(), dual));
    }
    let bezout = sys.degrees()[..sys.n()].iter().map(|d| *d as usize).product();
    Ok(assemble_dual_basis(per_root, bezout)?)
}

fn check(name: String, left: &UniPoly, right: &UniPoly) -> Value {
    json!({"check": name, "agree": left == right})
}

fn report(checks: Vec<Value>) -> CmdResult {
    let agree = checks.iter().all(|c| c["agree"] == Value::Bool(true));
    let doc = json!({"agree": agree, "checks": checks});
    if agree {
        Ok(doc)
    } else {
        Err(Failure::Disagree(doc))
    }
}

fn verify_univariate(a: &MultiRootSet, b: &MultiRootSet) -> CmdResult {
    let (d, e) = (a.d(), b.d());
    if d > e {
        return Err(Failure::Core(Error::domain(format!(
            "verify needs |A| <= |B|, got d = {d}, e = {e}"
        ))));
    }
    let f = poly_from_roots(a);
    let g = poly_from_roots(b);
    let top = if d == e { d - 1 } else { d };
    let mut checks = Vec::new();
    for t in 0..=top {
        let reference = sres_coeff(&f, &g, t)?;
        for v in Variant::ALL {
            checks.push(check(format!("roots {v} t={t}"), &sres_roots(a, b, t, v)?, &reference));
        }
        if a.all_simple() && b.all_simple() {
            for p in 0..=t.min(d) {
                let q = t - p;
                if q > e {
                    continue;
                }
                let ds = sylv_double_sum(a, b, p, q)?.scale(&sylvester_factor(p, d, t));
                checks.push(check(format!("dsum p={p} q={q}"), &ds, &reference));
            }
        }
    }
    if d >= 1 {
        checks.push(check("hermite".into(), &sres_dm1_hermite(a, b)?, &sres_coeff(&f, &g, d - 1)?));
    }
    if 1 < d && !a.shares_root_with(b) {
        checks.push(check("one".into(), &sres_one(a, b)?, &sres_coeff(&f, &g, 1)?));
    }
    report(checks)
}

/// Macaulay against Poisson, compared up to sign.
fn verify_multivariate(doc: &SystemDoc) -> CmdResult {
    let (sys, t, s) = mv_inputs(doc, None, None)?;
    let m = macaulay_matrix(&sys, t, &s)?;
    let det_m = m.det()?;
    let ext = extraneous_factor(&sys, t)?;
    let delta = delta_s(&sys, t, &s)?;
    let basis = dual_basis(doc, &sys)?;
    let sets = build_monomial_sets(sys.degrees(), t, &doc.t_override)?;
    let parts = poisson_parts(&sys, t, &s, &basis, &sets)?;
    let sign = if parts.value == delta {
        json!(1)
    } else if parts.value == -delta.clone() {
        json!(-1)
    } else {
        Value::Null
    };
    let checks = vec![
        json!({"check": "macaulay square", "agree": m.is_square()}),
        json!({"check": "|T| = Bezout", "agree": sets.t_all.len() == sets.comb.bezout}),
        json!({"check": "det M_S = E(t) delta", "agree": det_m == &ext * &delta}),
        json!({"check": "poisson = ±macaulay", "agree": !sign.is_null(), "sign": sign}),
    ];
    let mut out = report(checks);
    if let Ok(Value::Object(o)) | Err(Failure::Disagree(Value::Object(o))) = &mut out {
        o.insert("delta".into(), scalar_to_json(&delta));
        o.insert("E".into(), scalar_to_json(&ext));
        o.insert("poisson".into(), scalar_to_json(&parts.value));
    }
    out
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => EXIT_USAGE,
        Error::Structural(_) => EXIT_STRUCTURAL,
        Error::Dimension(_) | Error::Domain(_) | Error::InexactDivision(_) => EXIT_DOMAIN,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) => {
            eprintln!("sres: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("sres: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Disagree(v)) => {
            println!("{v}");
            eprintln!("sres: cross-checks disagree");
            ExitCode::from(EXIT_DISAGREE)
        }
    }
}
