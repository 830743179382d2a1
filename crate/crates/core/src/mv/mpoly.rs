//! Sparse multivariate polynomials over [`Scalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{binomial, Scalar};

/// An exponent vector `(α_1, …, α_n)`.
pub type Exponents = Vec<u32>;

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Map from exponent vectors to nonzero coefficients, with the number of
/// variables recorded so that the zero polynomial still has a dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        MultiPoly::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Exponents, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(e, Scalar::one())
    }

    /// Sums repeated exponent vectors and drops zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Scalar)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::dimension(format!(
                    "exponent vector {e:?} has length {}, expected {nvars}",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Reads a scalar expression in which the names in `vars` play the role
    /// of the variables; any other identifier stays a parameter.
    pub fn from_scalar(s: &Scalar, vars: &[&str]) -> Self {
        let n = vars.len();
        let Some(poly) = s.as_poly() else {
            return MultiPoly::constant(n, s.clone());
        };
        let mut out = MultiPoly::zero(n);
        for (mono, c) in poly.terms() {
            let mut e = vec![0; n];
            let mut coeff = Scalar::from(c.clone());
            for (name, k) in mono.factors() {
                match vars.iter().position(|v| v == name) {
                    Some(i) => e[i] = *k,
                    None => coeff = &coeff * &Scalar::param(name).pow(*k),
                }
            }
            out.add_term(e, coeff);
        }
        out
    }

    pub fn parse(src: &str, vars: &[&str]) -> Result<Self> {
        Ok(MultiPoly::from_scalar(&Scalar::parse(src)?, vars))
    }

    fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// `x^β · self`.
    pub fn mul_monomial(&self, beta: &[u32]) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(beta).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.nvars, Scalar::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Homogenizes to degree `deg` with a new last variable.
    pub fn homogenize(&self, deg: u32) -> Result<MultiPoly> {
        if let Some(d) = self.total_degree() {
            if d > deg {
                return Err(Error::domain(format!(
                    "polynomial of degree {d} cannot be homogenized to degree {deg}"
                )));
            }
        }
        Ok(MultiPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut h = e.clone();
                    h.push(deg - total_degree(e));
                    (h, c.clone())
                })
                .collect(),
        })
    }

    /// The homogeneous component of degree `deg`.
    pub fn form_of_degree(&self, deg: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) == deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_point(&self, point: &[Scalar]) -> Result<()> {
        if point.len() != self.nvars {
            return Err(Error::dimension(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(())
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        self.check_point(point)?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (k, v)| &acc * &v.pow(*k))
            })
            .sum())
    }

    /// `self(y + ξ)` as a polynomial in `y`; its coefficients are the
    /// normalized derivatives of `self` at `ξ`.
    pub fn translate(&self, xi: &[Scalar]) -> Result<MultiPoly> {
        self.check_point(xi)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            // ∏_i (y_i + ξ_i)^{e_i}, expanded one variable at a time.
            let mut partial: Vec<(Exponents, Scalar)> = vec![(Vec::new(), c.clone())];
            for (i, &ei) in e.iter().enumerate() {
                let mut next = Vec::with_capacity(partial.len() * (ei as usize + 1));
                for (pe, pc) in &partial {
                    for k in 0..=ei {
                        let w = &Scalar::from_bigint(binomial(ei as u64, k as u64)) * &xi[i].pow(ei - k);
                        if w.is_zero() {
                            continue;
                        }
                        let mut ne = pe.clone();
                        ne.push(k);
                        next.push((ne, pc * &w));
                    }
                }
                partial = next;
            }
            for (pe, pc) in partial {
                out.add_term(pe, pc);
            }
        }
        Ok(out)
    }

    pub fn substitute_params(
        &self,
        values: &BTreeMap<String, num_rational::BigRational>,
    ) -> Result<MultiPoly> {
        MultiPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| Ok((e.clone(), c.substitute(values)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Writes the polynomial with the given variable names.
    pub fn display_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = Scalar::zero();
        for (e, c) in self.terms.iter().rev() {
            let mono = e
                .iter()
                .zip(vars)
                .fold(Scalar::one(), |acc, (k, v)| &acc * &Scalar::param(v).pow(*k));
            s = &s + &(&mono * c);
        }
        s.to_string()
    }
}

pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_var_names(self.nvars)))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Scalar::one())
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}
