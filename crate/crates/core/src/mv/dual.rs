//! Differential functionals at a point, inverse systems and dual bases.
//!
//! `∂_α|_ξ` sends `f` to the coefficient of `(x - ξ)^α` in the expansion
//! of `f` at `ξ`, i.e. the derivative divided by `α_1! ⋯ α_n!`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::mv::monomials::{canonical_key, monomials_up_to};
use crate::mv::mpoly::{Exponents, MultiPoly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

/// `Σ a_α ∂_α|_ξ` with at least one nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualFunctional {
    anchor: Point,
    terms: BTreeMap<Exponents, Scalar>,
}

impl DualFunctional {
    pub fn new<I>(anchor: Point, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Scalar)>,
    {
        let mut map: BTreeMap<Exponents, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != anchor.dim() {
                return Err(Error::dimension(format!(
                    "exponent {e:?} does not match a point of dimension {}",
                    anchor.dim()
                )));
            }
            let v = map.remove(&e).map_or(c.clone(), |old| &old + &c);
            if !v.is_zero() {
                map.insert(e, v);
            }
        }
        if map.is_empty() {
            return Err(Error::domain("the zero functional is not representable"));
        }
        Ok(DualFunctional { anchor, terms: map })
    }

    /// `1|_ξ`, evaluation at `ξ`.
    pub fn evaluation(anchor: Point) -> Self {
        let n = anchor.dim();
        DualFunctional {
            anchor,
            terms: BTreeMap::from([(vec![0; n], Scalar::one())]),
        }
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_evaluation(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&k| k == 0) && c.is_one())
    }

    /// Largest `|α|` with a nonzero coefficient.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

impl fmt::Display for DualFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c})*d{e:?}"))
            .collect();
        write!(f, "[{}]|_{}", parts.join(" + "), self.anchor)
    }
}

/// `L(f)`.
pub fn dual_eval(l: &DualFunctional, f: &MultiPoly) -> Result<Scalar> {
    let shifted = f.translate(l.anchor.coords())?;
    Ok(l.terms.iter().map(|(e, c)| c * &shifted.coeff(e)).sum())
}

/// `σ_β(L)`: lowers every exponent by `β`, dropping terms that would go
/// negative; `None` when nothing survives.
pub fn sigma_shift(l: &DualFunctional, beta: &[u32]) -> Option<DualFunctional> {
    let terms: BTreeMap<Exponents, Scalar> = l
        .terms
        .iter()
        .filter(|(e, _)| e.iter().zip(beta).all(|(a, b)| a >= b))
        .map(|(e, c)| (e.iter().zip(beta).map(|(a, b)| a - b).collect(), c.clone()))
        .collect();
    if terms.is_empty() {
        None
    } else {
        Some(DualFunctional {
            anchor: l.anchor.clone(),
            terms,
        })
    }
}

/// Result of [`inverse_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSystem {
    /// Basis of the annihilating functionals found, evaluation first.
    pub functionals: Vec<DualFunctional>,
    /// Highest order examined.
    pub order: u32,
    /// `false` when the bound was reached while the dimension still grew.
    pub stabilized: bool,
}

impl InverseSystem {
    pub fn dim(&self) -> usize {
        self.functionals.len()
    }
}

/// Functionals of order `<= o` at the origin killing every `y^β g`.
fn local_dual_at_order(shifted: &[MultiPoly], anchor: &Point, o: u32) -> Result<Vec<DualFunctional>> {
    let n = anchor.dim();
    // Unknowns a_α, highest degree first so that free variables (and hence
    // the leading terms of basis elements) are the low-order ones.
    let mut unknowns = monomials_up_to(n, o);
    unknowns.reverse();
    let mut rows = Vec::new();
    for g in shifted {
        for beta in monomials_up_to(n, o) {
            let moved = g.mul_monomial(&beta);
            let row: Vec<Scalar> = unknowns.iter().map(|a| moved.coeff(a)).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns.len())
            .map(|i| {
                let mut v = vec![Scalar::zero(); unknowns.len()];
                v[i] = Scalar::one();
                v
            })
            .collect()
    } else {
        ExactMatrix::from_rows(rows, unknowns.len())?.nullspace()?
    };
    let mut out: Vec<(Exponents, DualFunctional)> = kernel
        .into_iter()
        .map(|v| {
            let lead = unknowns
                .iter()
                .zip(&v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(a, _)| a.clone())
                .min_by(|a, b| canonical_key(a).cmp(&canonical_key(b)))
                .expect("kernel vectors are nonzero");
            let f = DualFunctional::new(anchor.clone(), unknowns.iter().cloned().zip(v))?;
            Ok((lead, f))
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| canonical_key(&a.0).cmp(&canonical_key(&b.0)));
    Ok(out.into_iter().map(|(_, f)| f).collect())
}

/// The local inverse system of the ideal generated by `generators` at `ξ`,
/// computed order by order. The search stops at the first order that adds
/// no functional (no later order can then add one) or at `order_bound`.
pub fn inverse_system(generators: &[MultiPoly], xi: &Point, order_bound: u32) -> Result<InverseSystem> {
    if generators.is_empty() {
        return Err(Error::domain("inverse system needs at least one generator"));
    }
    if xi.coords().iter().any(|c| !c.is_rational()) {
        return Err(Error::domain("inverse systems need a point with rational coordinates"));
    }
    let mut shifted = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        if g.terms().any(|(_, c)| !c.is_rational()) {
            return Err(Error::domain(format!("generator {} has non-rational coefficients", i + 1)));
        }
        let s = g.translate(xi.coords())?;
        if !s.coeff(&vec![0; xi.dim()]).is_zero() {
            return Err(Error::domain(format!("{xi} is not a root of generator {}", i + 1)));
        }
        shifted.push(s);
    }
    let mut prev = local_dual_at_order(&shifted, xi, 0)?;
    for o in 1..=order_bound {
        let cur = local_dual_at_order(&shifted, xi, o)?;
        if cur.len() == prev.len() {
            return Ok(InverseSystem {
                functionals: prev,
                order: o,
                stabilized: true,
            });
        }
        prev = cur;
    }
    Ok(InverseSystem {
        functionals: prev,
        order: order_bound,
        stabilized: false,
    })
}

/// `Σ_{i<=n} (D_i - 1) + 1`.
pub fn default_order_bound(generators: &[MultiPoly]) -> u32 {
    generators
        .iter()
        .map(|g| g.total_degree().unwrap_or(0).saturating_sub(1))
        .sum::<u32>()
        + 1
}

/// A basis of the dual of the quotient algebra, grouped by root, each group
/// led by its evaluation functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasis {
    groups: Vec<(Point, usize)>,
    functionals: Vec<DualFunctional>,
}

impl DualBasis {
    pub fn functionals(&self) -> &[DualFunctional] {
        &self.functionals
    }

    /// Roots with the number of functionals attached to each.
    pub fn groups(&self) -> &[(Point, usize)] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }
}

pub fn assemble_dual_basis(per_root: Vec<(Point, Vec<DualFunctional>)>, expected: usize) -> Result<DualBasis> {
    let mut groups = Vec::new();
    let mut functionals = Vec::new();
    for (p, fs) in per_root {
        match fs.first() {
            None => return Err(Error::domain(format!("root {p} has no functionals"))),
            Some(f) if !f.is_evaluation() || f.anchor() != &p => {
                return Err(Error::domain(format!(
                    "the first functional at {p} must be the evaluation 1|_{p}"
                )))
            }
            _ => {}
        }
        if let Some(bad) = fs.iter().find(|f| f.anchor() != &p) {
            return Err(Error::domain(format!(
                "functional anchored at {} listed under root {p}",
                bad.anchor()
            )));
        }
        groups.push((p, fs.len()));
        functionals.extend(fs);
    }
    if functionals.len() != expected {
        return Err(Error::domain(format!(
            "dual basis has {} functionals, expected {expected}",
            functionals.len()
        )));
    }
    Ok(DualBasis { groups, functionals })
}

/// `V_E(Λ)`: entry `(a, b) = Λ_b(x^{e_a})`.
pub fn dual_vandermonde(e: &[Exponents], l: &DualBasis) -> Result<ExactMatrix> {
    dual_wronskian_impl(None, e, l)
}

/// `W_{h,E}(Λ)`: entry `(a, b) = Λ_b(x^{e_a} h)`.
pub fn dual_wronskian(h: &MultiPoly, e: &[Exponents], l: &DualBasis) -> Result<ExactMatrix> {
    dual_wronskian_impl(Some(h), e, l)
}

fn dual_wronskian_impl(h: Option<&MultiPoly>, e: &[Exponents], l: &DualBasis) -> Result<ExactMatrix> {
    let rows = e
        .iter()
        .map(|a| {
            let mono = MultiPoly::monomial(a.clone(), Scalar::one());
            let p = match h {
                Some(h) => &mono * h,
                None => mono,
            };
            l.functionals.iter().map(|f| dual_eval(f, &p)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(rows, l.len())
}
