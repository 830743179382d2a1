//! JSON encoding of scalars, polynomials, root sets and system documents.
//!
//! Integer scalars are written as bare JSON numbers, everything else as a
//! string (`"3/4"`, `"c0^2-c1"`). Readers accept either form for any scalar
//! but reject JSON floats, which would not be exact.

use std::collections::BTreeMap;

use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::mv::dual::{DualFunctional, Point};
use crate::mv::monomials::MonomialSet;
use crate::mv::mpoly::{Exponents, MultiPoly};
use crate::roots::MultiRootSet;
use crate::scalar::Scalar;
use crate::upoly::UniPoly;

fn err(loc: &str, msg: impl Into<String>) -> Error {
    Error::parse(if loc.is_empty() { "$" } else { loc }, msg)
}

fn expect_array<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(loc, format!("expected an array, found {v}")))
}

fn expect_object<'a>(v: &'a Value, loc: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(loc, format!("expected an object, found {v}")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, loc: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(loc, format!("missing field `{key}`")))
}

/// Parses a JSON document, reporting the line and column of syntax errors.
pub fn parse_document(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| {
        Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    if s.is_integer() {
        if let Ok(n) = s.to_string().parse::<Number>() {
            return Value::Number(n);
        }
    }
    Value::String(s.to_string())
}

pub fn scalar_from_json(v: &Value, loc: &str) -> Result<Scalar> {
    let text = match v {
        Value::Number(n) => {
            let t = n.to_string();
            if t.contains(['.', 'e', 'E']) {
                return Err(err(loc, format!("floating-point number {t} is not exact; write it as \"p/q\"")));
            }
            t
        }
        Value::String(s) => s.clone(),
        other => return Err(err(loc, format!("expected a number or a string, found {other}"))),
    };
    Scalar::parse(&text).map_err(|e| match e {
        Error::Parse { location, message } => err(loc, format!("{message} ({location})")),
        other => other,
    })
}

fn u32_from_json(v: &Value, loc: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| err(loc, format!("expected a non-negative integer, found {v}")))
}

fn usize_from_json(v: &Value, loc: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| err(loc, format!("expected a non-negative integer, found {v}")))
}

/// Ascending coefficient array.
pub fn unipoly_to_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

pub fn unipoly_from_json(v: &Value, loc: &str) -> Result<UniPoly> {
    let items = expect_array(v, loc)?;
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(i, c)| scalar_from_json(c, &format!("{loc}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(coeffs))
}

/// `[[root, multiplicity], …]`.
pub fn roots_to_json(a: &MultiRootSet) -> Value {
    Value::Array(
        a.entries()
            .iter()
            .map(|(r, m)| json!([scalar_to_json(r), m]))
            .collect(),
    )
}

pub fn roots_from_json(v: &Value, loc: &str) -> Result<MultiRootSet> {
    let items = expect_array(v, loc)?;
    let mut entries = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let here = format!("{loc}[{i}]");
        let pair = expect_array(item, &here)?;
        if pair.len() != 2 {
            return Err(err(&here, "expected [root, multiplicity]"));
        }
        entries.push((
            scalar_from_json(&pair[0], &format!("{here}[0]"))?,
            usize_from_json(&pair[1], &format!("{here}[1]"))?,
        ));
    }
    MultiRootSet::new(entries)
}

pub fn exponents_to_json(e: &[u32]) -> Value {
    json!(e)
}

pub fn exponents_from_json(v: &Value, loc: &str) -> Result<Exponents> {
    expect_array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, x)| u32_from_json(x, &format!("{loc}[{i}]")))
        .collect()
}

pub fn exponent_list_from_json(v: &Value, loc: &str) -> Result<Vec<Exponents>> {
    expect_array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, e)| exponents_from_json(e, &format!("{loc}[{i}]")))
        .collect()
}

pub fn monomial_set_from_json(v: &Value, nvars: usize, loc: &str) -> Result<MonomialSet> {
    let list = exponent_list_from_json(v, loc)?;
    if let Some(bad) = list.iter().find(|e| e.len() != nvars) {
        return Err(err(loc, format!("exponent vector {bad:?} should have {nvars} entries")));
    }
    MonomialSet::new(nvars, list)
}

fn terms_to_json<'a>(terms: impl Iterator<Item = (&'a Exponents, &'a Scalar)>) -> Value {
    Value::Array(
        terms
            .map(|(e, c)| json!({"exponents": e, "coeff": scalar_to_json(c)}))
            .collect(),
    )
}

fn terms_from_json(v: &Value, loc: &str) -> Result<Vec<(Exponents, Scalar)>> {
    let items = expect_array(v, loc)?;
    let mut out = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let here = format!("{loc}[{i}]");
        let obj = expect_object(item, &here)?;
        out.push((
            exponents_from_json(field(obj, "exponents", &here)?, &format!("{here}.exponents"))?,
            scalar_from_json(field(obj, "coeff", &here)?, &format!("{here}.coeff"))?,
        ));
    }
    Ok(out)
}

/// `[{exponents, coeff}, …]`.
pub fn multipoly_to_json(p: &MultiPoly) -> Value {
    terms_to_json(p.terms())
}

/// Accepts the record array, or an expression string in the given variables.
pub fn multipoly_from_json(v: &Value, vars: &[&str], loc: &str) -> Result<MultiPoly> {
    if let Value::String(s) = v {
        return MultiPoly::parse(s, vars).map_err(|e| match e {
            Error::Parse { location, message } => err(loc, format!("{message} ({location})")),
            other => other,
        });
    }
    MultiPoly::from_terms(vars.len(), terms_from_json(v, loc)?)
        .map_err(|e| err(loc, e.to_string()))
}

pub fn point_to_json(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(scalar_to_json).collect())
}

pub fn point_from_json(v: &Value, loc: &str) -> Result<Point> {
    Ok(Point::new(
        expect_array(v, loc)?
            .iter()
            .enumerate()
            .map(|(i, c)| scalar_from_json(c, &format!("{loc}[{i}]")))
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// A functional is written as its terms `[{exponents, coeff}, …]`, meaning
/// `Σ coeff · ∂^exponents` at the anchor, which is stored alongside.
pub fn functional_to_json(l: &DualFunctional) -> Value {
    terms_to_json(l.terms())
}

pub fn functional_from_json(v: &Value, anchor: &Point, loc: &str) -> Result<DualFunctional> {
    let terms = terms_from_json(v, loc)?;
    if let Some((e, _)) = terms.iter().find(|(e, _)| e.len() != anchor.dim()) {
        return Err(err(loc, format!("exponent vector {e:?} should have {} entries", anchor.dim())));
    }
    DualFunctional::new(anchor.clone(), terms).map_err(|e| err(loc, e.to_string()))
}

/// A root with the functionals supported there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootRecord {
    pub point: Point,
    /// `None` when the document leaves the local dual to be computed.
    pub dual: Option<Vec<DualFunctional>>,
}

pub fn root_record_to_json(r: &RootRecord) -> Value {
    let mut obj = Map::new();
    obj.insert("point".into(), point_to_json(&r.point));
    if let Some(dual) = &r.dual {
        obj.insert("dual".into(), Value::Array(dual.iter().map(functional_to_json).collect()));
    }
    Value::Object(obj)
}

/// The system description consumed by the multivariate commands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDoc {
    pub n: usize,
    pub variables: Vec<String>,
    pub polynomials: Vec<MultiPoly>,
    pub degrees: Vec<u32>,
    pub t: Option<u32>,
    pub s: Option<MonomialSet>,
    pub roots: Option<Vec<RootRecord>>,
    pub t_override: BTreeMap<u32, MonomialSet>,
}

impl SystemDoc {
    /// `variables` defaults to `x1..xn` and `degrees` to the total degrees.
    pub fn from_json(v: &Value) -> Result<SystemDoc> {
        let obj = expect_object(v, "")?;
        let n = usize_from_json(field(obj, "n", "")?, "n")?;
        if n == 0 {
            return Err(err("n", "n must be at least 1"));
        }
        let variables = match obj.get("variables") {
            None => crate::mv::mpoly::default_var_names(n),
            Some(vs) => {
                let names = expect_array(vs, "variables")?
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| err(&format!("variables[{i}]"), "expected a string"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if names.len() != n {
                    return Err(err("variables", format!("{} names for n = {n}", names.len())));
                }
                names
            }
        };
        let var_refs: Vec<&str> = variables.iter().map(String::as_str).collect();

        let polys_json = expect_array(field(obj, "polynomials", "")?, "polynomials")?;
        if polys_json.len() != n + 1 {
            return Err(err(
                "polynomials",
                format!("expected n + 1 = {} polynomials, found {}", n + 1, polys_json.len()),
            ));
        }
        let polynomials = polys_json
            .iter()
            .enumerate()
            .map(|(i, p)| multipoly_from_json(p, &var_refs, &format!("polynomials[{i}]")))
            .collect::<Result<Vec<_>>>()?;

        let degrees = match obj.get("degrees") {
            Some(d) => {
                let ds = expect_array(d, "degrees")?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| u32_from_json(x, &format!("degrees[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                if ds.len() != n + 1 {
                    return Err(err("degrees", format!("expected {} degrees, found {}", n + 1, ds.len())));
                }
                ds
            }
            None => polynomials.iter().map(|p| p.total_degree().unwrap_or(0)).collect(),
        };

        let t = obj.get("t").map(|x| u32_from_json(x, "t")).transpose()?;
        let s = obj.get("S").map(|x| monomial_set_from_json(x, n, "S")).transpose()?;

        let roots = match obj.get("roots") {
            None | Some(Value::Null) => None,
            Some(rs) => {
                let mut out = Vec::new();
                for (i, r) in expect_array(rs, "roots")?.iter().enumerate() {
                    let here = format!("roots[{i}]");
                    let ro = expect_object(r, &here)?;
                    let point = point_from_json(field(ro, "point", &here)?, &format!("{here}.point"))?;
                    if point.dim() != n {
                        return Err(err(&format!("{here}.point"), format!("expected {n} coordinates")));
                    }
                    let dual = match ro.get("dual") {
                        None | Some(Value::Null) => None,
                        Some(ds) => Some(
                            expect_array(ds, &format!("{here}.dual"))?
                                .iter()
                                .enumerate()
                                .map(|(k, d)| functional_from_json(d, &point, &format!("{here}.dual[{k}]")))
                                .collect::<Result<Vec<_>>>()?,
                        ),
                    };
                    out.push(RootRecord { point, dual });
                }
                Some(out)
            }
        };

        let mut t_override = BTreeMap::new();
        if let Some(ov) = obj.get("T_override") {
            for (key, list) in expect_object(ov, "T_override")? {
                let here = format!("T_override.{key}");
                let j: u32 = key
                    .parse()
                    .map_err(|_| err(&here, "keys must be degrees (non-negative integers)"))?;
                t_override.insert(j, monomial_set_from_json(list, n, &here)?);
            }
        }

        Ok(SystemDoc {
            n,
            variables,
            polynomials,
            degrees,
            t,
            s,
            roots,
            t_override,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("n".into(), json!(self.n));
        obj.insert("variables".into(), json!(self.variables));
        obj.insert(
            "polynomials".into(),
            Value::Array(self.polynomials.iter().map(multipoly_to_json).collect()),
        );
        obj.insert("degrees".into(), json!(self.degrees));
        if let Some(t) = self.t {
            obj.insert("t".into(), json!(t));
        }
        if let Some(s) = &self.s {
            obj.insert("S".into(), json!(s.monomials()));
        }
        if let Some(roots) = &self.roots {
            obj.insert("roots".into(), Value::Array(roots.iter().map(root_record_to_json).collect()));
        }
        if !self.t_override.is_empty() {
            let ov: Map<String, Value> = self
                .t_override
                .iter()
                .map(|(j, s)| (j.to_string(), json!(s.monomials())))
                .collect();
            obj.insert("T_override".into(), Value::Object(ov));
        }
        Value::Object(obj)
    }
}
