//! Dense univariate polynomials over [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{binomial, Scalar, VAR_X};

/// Ascending coefficients; never stores trailing zeros, so the zero
/// polynomial is the empty vector and has no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.push(c);
        UniPoly::new(coeffs)
    }

    /// `x - a`.
    pub fn linear_root(a: &Scalar) -> Self {
        UniPoly::new(vec![-a, Scalar::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i`, zero past the end and for negative indices.
    pub fn coeff(&self, i: i64) -> Scalar {
        if i < 0 {
            return Scalar::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, a: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * a) + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    /// `p^(j)(a) / j!`, the coefficient of `(x - a)^j` in the Taylor
    /// expansion of `p` at `a`.
    pub fn taylor_coeff(&self, a: &Scalar, j: usize) -> Scalar {
        self.coeffs
            .iter()
            .enumerate()
            .skip(j)
            .map(|(i, c)| {
                let b = Scalar::from_bigint(binomial(i as u64, j as u64));
                &(c * &b) * &a.pow((i - j) as u32)
            })
            .sum()
    }

    /// Collapses a polynomial whose coefficients may mention the parameter
    /// `x` into a single scalar in the `x`-polynomial domain.
    pub fn to_x_scalar(&self) -> Scalar {
        self.eval(&Scalar::x())
    }

    /// Inverse of [`UniPoly::to_x_scalar`]: reads a scalar as a polynomial
    /// in `x` whose coefficients are the remaining parameter polynomials.
    pub fn from_x_scalar(s: &Scalar) -> UniPoly {
        UniPoly::new(s.coefficients_in(VAR_X))
    }

    pub fn map_coeffs<F, E>(&self, f: F) -> Result<UniPoly, E>
    where
        F: Fn(&Scalar) -> Result<Scalar, E>,
    {
        Ok(UniPoly::new(
            self.coeffs.iter().map(f).collect::<Result<Vec<_>, E>>()?,
        ))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_x_scalar())
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| &self.coeff(i as i64) + &rhs.coeff(i as i64))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| &self.coeff(i as i64) - &rhs.coeff(i as i64))
                .collect(),
        )
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for UniPoly {
    fn sum<I: Iterator<Item = UniPoly>>(iter: I) -> UniPoly {
        iter.fold(UniPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for UniPoly {
    fn product<I: Iterator<Item = UniPoly>>(iter: I) -> UniPoly {
        iter.fold(UniPoly::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(UniPoly::from_ints(&[0, 0]).degree(), None);
        assert_eq!(UniPoly::from_ints(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn taylor_coefficients() {
        let cube = UniPoly::from_ints(&[0, 0, 0, 1]);
        assert_eq!(cube.taylor_coeff(&Scalar::from_int(1), 1), Scalar::from_int(3));
        let p = UniPoly::from_ints(&[5, -1, 4]);
        let a = Scalar::from_ratio(2, 3);
        assert_eq!(p.taylor_coeff(&a, 0), p.eval(&a));
    }

    #[test]
    fn taylor_coeff_matches_shifted_coefficients() {
        // Oracle: expand p(y + a) and read the coefficient of y^j.
        let p = UniPoly::from_ints(&[1, -2, 1]);
        let a = Scalar::from_int(1);
        let y_plus_a = UniPoly::new(vec![a.clone(), Scalar::one()]);
        let shifted: UniPoly = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| y_plus_a.pow(i as u32).scale(c))
            .sum();
        for j in 0..3 {
            assert_eq!(p.taylor_coeff(&a, j), shifted.coeff(j as i64));
        }
        assert_eq!(p.taylor_coeff(&a, 2), Scalar::one());
    }

    #[test]
    fn degree_of_product_is_additive() {
        let a = UniPoly::from_ints(&[1, 2, 3]);
        let b = UniPoly::from_ints(&[-1, 0, 0, 5]);
        assert_eq!((&a * &b).degree(), Some(5));
    }

    #[test]
    fn x_scalar_round_trip() {
        let p = UniPoly::new(vec![Scalar::param("c"), Scalar::from_int(-1), Scalar::from_int(2)]);
        assert_eq!(UniPoly::from_x_scalar(&p.to_x_scalar()), p);
    }
}
