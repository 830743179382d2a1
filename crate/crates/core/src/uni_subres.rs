//! Coefficient-side subresultants and Sylvester's double sums.
//!
//! `sres_coeff` is the reference every root formula in this crate is checked
//! against, so it is evaluated straight from the determinantal definition.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::roots::MultiRootSet;
use crate::scalar::Scalar;
use crate::upoly::UniPoly;

/// Checks `0 <= t <= d < e` or `0 <= t < d = e`.
pub(crate) fn check_subres_degrees(d: usize, e: usize, t: usize) -> Result<()> {
    if d > e {
        return Err(Error::domain(format!(
            "subresultant needs deg f <= deg g, got d = {d} > e = {e}"
        )));
    }
    if d == e && t >= d {
        return Err(Error::domain(format!(
            "with d = e = {d} the order must satisfy t < d, got t = {t}"
        )));
    }
    if t > d {
        return Err(Error::domain(format!(
            "the order must satisfy t <= d, got t = {t} > d = {d}"
        )));
    }
    Ok(())
}

fn degree_of(p: &UniPoly, name: &str) -> Result<usize> {
    p.degree()
        .ok_or_else(|| Error::domain(format!("{name} is the zero polynomial")))
}

/// The order-`t` subresultant of `f` and `g`.
///
/// The `(d+e-2t)`-square matrix has scalar columns holding the coefficients
/// of `x^{d+e-t-1}, …, x^{t+1}` and a last column holding the polynomials
/// `x^{e-t-1}f, …, f, x^{d-t-1}g, …, g`; it is expanded along that last
/// column.
pub fn sres_coeff(f: &UniPoly, g: &UniPoly, t: usize) -> Result<UniPoly> {
    let d = degree_of(f, "f")?;
    let e = degree_of(g, "g")?;
    check_subres_degrees(d, e, t)?;

    let n = d + e - 2 * t;
    let row_polys: Vec<UniPoly> = (0..e - t)
        .map(|r| f.shift(e - t - 1 - r))
        .chain((0..d - t).map(|r| g.shift(d - t - 1 - r)))
        .collect();
    let top = (d + e - t - 1) as i64;
    let scalar_part: Vec<Vec<Scalar>> = row_polys
        .iter()
        .map(|p| (0..n - 1).map(|c| p.coeff(top - c as i64)).collect())
        .collect();
    let scalar_part = ExactMatrix::from_rows(scalar_part, n - 1)?;

    let mut acc = UniPoly::zero();
    for (r, p) in row_polys.iter().enumerate() {
        let rows: Vec<usize> = (0..n).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..n - 1).collect();
        let minor = scalar_part.submatrix(&rows, &cols).det()?;
        if minor.is_zero() {
            continue;
        }
        let cofactor = if (r + n - 1) % 2 == 0 { minor } else { -minor };
        acc = &acc + &p.scale(&cofactor);
    }
    Ok(acc)
}

/// `Res(f, g)`; when `deg f > deg g` the arguments are swapped with the sign
/// `(-1)^{de}`.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<Scalar> {
    let d = degree_of(f, "f")?;
    let e = degree_of(g, "g")?;
    if d == 0 || e == 0 {
        return Err(Error::domain("the resultant needs deg f >= 1 and deg g >= 1"));
    }
    if d > e {
        let r = resultant(g, f)?;
        return Ok(if (d * e) % 2 == 1 { -r } else { r });
    }
    Ok(sres_coeff(f, g, 0)?.coeff(0))
}

fn prod_x_minus(roots: &[&Scalar]) -> UniPoly {
    roots.iter().map(|r| UniPoly::linear_root(r)).product()
}

fn pairing(a: &[&Scalar], b: &[&Scalar]) -> Scalar {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| *x - *y))
        .product()
}

/// Sylvester's double sum `Sylv^{p,q}(A, B; x)` for simple roots.
pub fn sylv_double_sum(a: &MultiRootSet, b: &MultiRootSet, p: usize, q: usize) -> Result<UniPoly> {
    if !a.all_simple() || !b.all_simple() {
        return Err(Error::domain("double sums undefined for multiple roots"));
    }
    let (d, e) = (a.d(), b.d());
    if p > d || q > e {
        return Err(Error::domain(format!(
            "need 0 <= p <= d and 0 <= q <= e, got p = {p}, q = {q}, d = {d}, e = {e}"
        )));
    }
    let ra: Vec<&Scalar> = a.entries().iter().map(|(r, _)| r).collect();
    let rb: Vec<&Scalar> = b.entries().iter().map(|(r, _)| r).collect();

    let mut acc = UniPoly::zero();
    for ia in (0..d).combinations(p) {
        let (a_in, a_out): (Vec<_>, Vec<_>) =
            (0..d).partition_map(|i| split(ia.contains(&i), ra[i]));
        for ib in (0..e).combinations(q) {
            let (b_in, b_out): (Vec<_>, Vec<_>) =
                (0..e).partition_map(|j| split(ib.contains(&j), rb[j]));
            let num = &pairing(&a_in, &b_in) * &pairing(&a_out, &b_out);
            if num.is_zero() {
                continue;
            }
            let den = &pairing(&a_in, &a_out) * &pairing(&b_in, &b_out);
            let weight = num.exact_div(&den)?;
            let xs = &prod_x_minus(&a_in) * &prod_x_minus(&b_in);
            acc = &acc + &xs.scale(&weight);
        }
    }
    Ok(acc)
}

fn split<T>(inside: bool, v: T) -> itertools::Either<T, T> {
    if inside {
        itertools::Either::Left(v)
    } else {
        itertools::Either::Right(v)
    }
}

/// `(-1)^{p(d-t)} binom(t, p)^{-1}`, the factor turning a double sum into
/// the subresultant of order `t = p + q`.
pub fn sylvester_factor(p: usize, d: usize, t: usize) -> Scalar {
    let b = Scalar::binomial(t as u64, p as u64);
    let inv = Scalar::one().exact_div(&b).expect("binomial is nonzero");
    if (p * (d - t)) % 2 == 1 {
        -inv
    } else {
        inv
    }
}
