//! Exact scalars: rationals, and polynomials with rational coefficients in
//! named parameters.
//!
//! A [`Scalar`] is tagged by the domain it lives in. Parameter polynomials
//! whose support is the constant monomial collapse to [`Scalar::Rat`], so a
//! value never sits in the polynomial domain without actually depending on a
//! parameter. Arithmetic between the two domains promotes to the polynomial
//! domain.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::iter::Peekable;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::{CharIndices, FromStr};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Name of the parameter reserved for the free variable of univariate
/// results (border columns, `x - z` Wronskians).
pub const VAR_X: &str = "x";

/// A power product of named parameters, sorted by name, zero exponents
/// dropped.
///
/// Ordered lexicographically with parameters compared in name order
/// (`a > b > c ...`), which is a monomial order and is what exact division
/// relies on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamMonomial(Vec<(String, u32)>);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        ParamMonomial(vec![(name.to_string(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent_of(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = &self.0[i];
            let (b, eb) = &other.0[j];
            match a.cmp(b) {
                Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        ParamMonomial(out)
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (name, e) in &self.0 {
            if j < other.0.len() && &other.0[j].0 == name {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if e - f > 0 {
                    out.push((name.clone(), e - f));
                }
                j += 1;
            } else {
                if j < other.0.len() && other.0[j].0 < *name {
                    return None;
                }
                out.push((name.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(ParamMonomial(out))
    }

    fn without(&self, name: &str) -> Self {
        ParamMonomial(self.0.iter().filter(|(n, _)| n != name).cloned().collect())
    }
}

impl Ord for ParamMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((a, ea)), Some((b, eb))) => match a.cmp(b) {
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                    // `a` is the more significant parameter and `other` lacks it.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
            }
        }
    }
}

impl PartialOrd for ParamMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in named parameters with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMonomial, BigRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = ParamPoly::zero();
        if !c.is_zero() {
            p.terms.insert(ParamMonomial::one(), c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = ParamPoly::zero();
        p.terms.insert(ParamMonomial::var(name), BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&ParamMonomial::one()).cloned(),
            _ => None,
        }
    }

    fn leading(&self) -> Option<(&ParamMonomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: ParamMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Exact quotient `self / divisor`; fails when the divisor does not
    /// divide `self` in the polynomial ring.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().expect("nonzero divisor");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&lm).ok_or_else(|| {
                Error::InexactDivision(format!("({self}) is not divisible by ({divisor})"))
            })?;
            let qc = rc / &lc;
            let mut q = ParamPoly::zero();
            q.add_term(qm, qc);
            rem = rem.sub(&q.mul(divisor));
            quot = quot.add(&q);
        }
        Ok(quot)
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
            .collect()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent_of(name))
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of `self` viewed as a polynomial in `name`, ascending.
    pub fn coefficients_in(&self, name: &str) -> Vec<ParamPoly> {
        let deg = self.degree_in(name) as usize;
        let mut out = vec![ParamPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent_of(name) as usize;
            out[e].add_term(m.without(name), c.clone());
        }
        out
    }

    pub fn substitute(&self, values: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (name, e) in &m.0 {
                let v = values.get(name).ok_or_else(|| {
                    Error::domain(format!("substitution has no value for parameter `{name}`"))
                })?;
                t *= rat_pow(v, *e);
            }
            acc += t;
        }
        Ok(acc)
    }
}

fn rat_pow(v: &BigRational, e: u32) -> BigRational {
    num_traits::pow(v.clone(), e as usize)
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// An exact scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    /// Always depends on at least one parameter.
    Poly(ParamPoly),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn from_int(v: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar::Rat(BigRational::from_integer(v))
    }

    pub fn param(name: &str) -> Self {
        Scalar::Poly(ParamPoly::var(name))
    }

    pub fn x() -> Self {
        Scalar::param(VAR_X)
    }

    fn from_poly(p: ParamPoly) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Rat(c),
            None => Scalar::Poly(p),
        }
    }

    fn to_poly(&self) -> ParamPoly {
        match self {
            Scalar::Rat(r) => ParamPoly::constant(r.clone()),
            Scalar::Poly(p) => p.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&ParamPoly> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Poly(p) => Some(p),
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_integer())
    }

    /// Rough size used to pick cheap pivots.
    pub fn weight(&self) -> usize {
        match self {
            Scalar::Rat(_) => 1,
            Scalar::Poly(p) => 1 + p.num_terms(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(rat_pow(r, e)),
            Scalar::Poly(_) => {
                let mut acc = Scalar::one();
                let mut base = self.clone();
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = &acc * &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                acc
            }
        }
    }

    /// Exact division. Over the rationals this only fails on a zero divisor;
    /// over parameter polynomials the divisor must divide exactly.
    pub fn exact_div(&self, divisor: &Scalar) -> Result<Scalar> {
        match (self, divisor) {
            (_, d) if d.is_zero() => Err(Error::InexactDivision(format!("({self}) / 0"))),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            (Scalar::Poly(a), Scalar::Rat(b)) => Ok(Scalar::from_poly(a.scale(&b.recip()))),
            (a, b) => Ok(Scalar::from_poly(a.to_poly().exact_div(&b.to_poly())?)),
        }
    }

    pub fn params(&self) -> BTreeSet<String> {
        match self {
            Scalar::Rat(_) => BTreeSet::new(),
            Scalar::Poly(p) => p.params(),
        }
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self {
            Scalar::Rat(_) => 0,
            Scalar::Poly(p) => p.degree_in(name),
        }
    }

    /// Ascending coefficients of `self` as a polynomial in parameter `name`.
    pub fn coefficients_in(&self, name: &str) -> Vec<Scalar> {
        match self {
            Scalar::Rat(_) => vec![self.clone()],
            Scalar::Poly(p) => p
                .coefficients_in(name)
                .into_iter()
                .map(Scalar::from_poly)
                .collect(),
        }
    }

    /// Substitutes rational values for every parameter present. Leaving a
    /// parameter without a value is an error.
    pub fn substitute(&self, values: &BTreeMap<String, BigRational>) -> Result<Scalar> {
        match self {
            Scalar::Rat(_) => Ok(self.clone()),
            Scalar::Poly(p) => Ok(Scalar::Rat(p.substitute(values)?)),
        }
    }

    /// Parses `p/q` literals and parameter expressions such as
    /// `c0^3+2*c0^2*c2` or `(a-b)^2/3`.
    pub fn parse(src: &str) -> Result<Scalar> {
        let mut p = ExprParser {
            src,
            chars: src.char_indices().peekable(),
        };
        let v = p.expr()?;
        p.skip_ws();
        if let Some(&(pos, c)) = p.chars.peek() {
            return Err(Error::parse(
                format!("offset {pos}"),
                format!("unexpected `{c}` in scalar `{src}`"),
            ));
        }
        Ok(v)
    }

    pub fn binomial(n: u64, k: u64) -> Scalar {
        Scalar::from_bigint(binomial(n, k))
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Rat(v)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (a, b) => Scalar::from_poly(a.to_poly().add(&b.to_poly())),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (a, b) => Scalar::from_poly(a.to_poly().sub(&b.to_poly())),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Poly(p)) | (Scalar::Poly(p), Scalar::Rat(a)) => {
                Scalar::from_poly(p.scale(a))
            }
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::from_poly(a.mul(b)),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Poly(p) => Scalar::Poly(p.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

struct ExprParser<'a> {
    src: &'a str,
    chars: Peekable<CharIndices<'a>>,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn err(&mut self, msg: &str) -> Error {
        let pos = self.chars.peek().map(|(p, _)| *p).unwrap_or(self.src.len());
        Error::parse(format!("offset {pos}"), format!("{msg} in scalar `{}`", self.src))
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some((_, '+')) => {
                    self.chars.next();
                    acc = acc + self.term()?;
                }
                Some((_, '-')) => {
                    self.chars.next();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let negate = if matches!(self.chars.peek(), Some((_, '-'))) {
            self.chars.next();
            true
        } else {
            if matches!(self.chars.peek(), Some((_, '+'))) {
                self.chars.next();
            }
            false
        };
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some((_, '*')) => {
                    self.chars.next();
                    acc = acc * self.power()?;
                }
                Some((_, '/')) => {
                    self.chars.next();
                    let d = self.power()?;
                    acc = acc.exact_div(&d).map_err(|e| self.err(&e.to_string()))?;
                }
                _ => break,
            }
        }
        Ok(if negate { -acc } else { acc })
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        self.skip_ws();
        if matches!(self.chars.peek(), Some((_, '^'))) {
            self.chars.next();
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        (!s.is_empty()).then_some(s)
    }

    fn atom(&mut self) -> Result<Scalar> {
        self.skip_ws();
        match self.chars.peek().copied() {
            Some((_, '(')) => {
                self.chars.next();
                let v = self.expr()?;
                self.skip_ws();
                match self.chars.next() {
                    Some((_, ')')) => Ok(v),
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some((_, c)) if c.is_ascii_digit() => {
                let d = self.digits().expect("digit present");
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Scalar::from_bigint(n))
            }
            Some((_, c)) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                Ok(Scalar::param(&name))
            }
            _ => Err(self.err("expected a number, parameter or `(`")),
        }
    }
}
