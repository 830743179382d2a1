//! Macaulay matrices of homogenized systems, extraneous factors and the
//! determinantal subresultants `Δ_S`.
//!
//! Rows are `x^β f_i^h` for `i = 1, …, n+1` and `β` of degree `t - D_i` with
//! `β_j < D_j` for every `j < i`, listed by `i` then canonically in `β`.
//! Columns are degree-`t` monomials in canonical order.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::mv::monomials::{hilbert_function, monomials_of_degree, MonomialSet};
use crate::mv::mpoly::{total_degree, Exponents, MultiPoly};
use crate::scalar::Scalar;

/// `n + 1` polynomials in `n` variables with declared degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MVSystem {
    n: usize,
    polys: Vec<MultiPoly>,
    degrees: Vec<u32>,
}

impl MVSystem {
    pub fn new(polys: Vec<MultiPoly>, degrees: Vec<u32>) -> Result<Self> {
        let n = polys.len().checked_sub(1).filter(|n| *n >= 1).ok_or_else(|| {
            Error::domain(format!("need n + 1 >= 2 polynomials, got {}", polys.len()))
        })?;
        if degrees.len() != polys.len() {
            return Err(Error::dimension(format!(
                "{} degrees for {} polynomials",
                degrees.len(),
                polys.len()
            )));
        }
        for (i, (f, &d)) in polys.iter().zip(&degrees).enumerate() {
            if f.nvars() != n {
                return Err(Error::dimension(format!(
                    "f_{} has {} variables, expected {n}",
                    i + 1,
                    f.nvars()
                )));
            }
            if d == 0 {
                return Err(Error::domain(format!("D_{} must be at least 1", i + 1)));
            }
            if f.total_degree().is_some_and(|fd| fd > d) {
                return Err(Error::domain(format!(
                    "f_{} has degree {} above its declared degree {d}",
                    i + 1,
                    f.total_degree().unwrap_or(0)
                )));
            }
        }
        Ok(MVSystem { n, polys, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `f̃_1, …, f̃_n`: the degree-`D_i` components of the first `n`
    /// polynomials.
    pub fn leading_forms(&self) -> Vec<MultiPoly> {
        self.polys[..self.n]
            .iter()
            .zip(&self.degrees)
            .map(|(f, &d)| f.form_of_degree(d))
            .collect()
    }
}

struct MacaulayRows {
    /// One coefficient map per row.
    rows: Vec<MultiPoly>,
    /// `β + D_i e_i`, the monomial each row is attached to.
    labels: Vec<Exponents>,
}

/// Rows of the Macaulay construction for homogeneous `forms` at degree `t`.
fn macaulay_rows(forms: &[MultiPoly], degrees: &[u32], t: u32) -> MacaulayRows {
    let nv = forms.first().map_or(0, |f| f.nvars());
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i, (f, &d)) in forms.iter().zip(degrees).enumerate() {
        if d > t {
            continue;
        }
        for beta in monomials_of_degree(nv, t - d) {
            if (0..i).all(|j| beta[j] < degrees[j]) {
                rows.push(f.mul_monomial(&beta));
                let mut label = beta;
                label[i] += d;
                labels.push(label);
            }
        }
    }
    MacaulayRows { rows, labels }
}

fn coefficient_matrix(rows: &[MultiPoly], cols: &[Exponents]) -> Result<ExactMatrix> {
    ExactMatrix::from_rows(
        rows.iter()
            .map(|r| cols.iter().map(|c| r.coeff(c)).collect())
            .collect(),
        cols.len(),
    )
}

/// Monomials of degree `t` divisible by `x_j^{D_j}` for at least two `j`.
fn doubly_reducible(nv: usize, degrees: &[u32], t: u32) -> Vec<Exponents> {
    monomials_of_degree(nv, t)
        .into_iter()
        .filter(|g| g.iter().zip(degrees).filter(|(a, d)| a >= d).count() >= 2)
        .collect()
}

/// Determinant of the rows and columns indexed by the doubly reducible
/// monomials; each such monomial's row is the one for the first `i` with
/// `γ_i >= D_i`.
fn extraneous_determinant(forms: &[MultiPoly], degrees: &[u32], t: u32) -> Result<Scalar> {
    let nv = forms.first().map_or(0, |f| f.nvars());
    let dbl = doubly_reducible(nv, degrees, t);
    if dbl.is_empty() {
        return Ok(Scalar::from_int(1));
    }
    let mac = macaulay_rows(forms, degrees, t);
    let rows: Vec<MultiPoly> = dbl
        .iter()
        .map(|g| {
            let idx = mac
                .labels
                .iter()
                .position(|l| l == g)
                .expect("every reducible monomial labels a row");
            mac.rows[idx].clone()
        })
        .collect();
    coefficient_matrix(&rows, &dbl)?.det()
}

fn homogenized(sys: &MVSystem) -> Result<Vec<MultiPoly>> {
    sys.polys
        .iter()
        .zip(&sys.degrees)
        .map(|(f, &d)| f.homogenize(d))
        .collect()
}

fn check_s(sys: &MVSystem, t: u32, s: &MonomialSet) -> Result<()> {
    if s.nvars() != sys.n {
        return Err(Error::dimension(format!(
            "S has monomials in {} variables, the system has {}",
            s.nvars(),
            sys.n
        )));
    }
    if let Some(bad) = s.monomials().iter().find(|e| total_degree(e) > t) {
        return Err(Error::domain(format!("monomial {bad:?} in S has degree above t = {t}")));
    }
    let k = hilbert_function(&sys.degrees, t);
    if s.len() != k {
        return Err(Error::domain(format!(
            "|S| = {} but the Hilbert function at t = {t} is {k}",
            s.len()
        )));
    }
    Ok(())
}

/// `M_S`: the degree-`t` Macaulay matrix of `f_1^h, …, f_{n+1}^h` with the
/// columns of `S^h` deleted.
pub fn macaulay_matrix(sys: &MVSystem, t: u32, s: &MonomialSet) -> Result<ExactMatrix> {
    check_s(sys, t, s)?;
    let forms = homogenized(sys)?;
    let sh: Vec<Exponents> = s
        .monomials()
        .iter()
        .map(|e| {
            let mut h = e.clone();
            h.push(t - total_degree(e));
            h
        })
        .collect();
    let cols: Vec<Exponents> = monomials_of_degree(sys.n + 1, t)
        .into_iter()
        .filter(|c| !sh.contains(c))
        .collect();
    let mac = macaulay_rows(&forms, &sys.degrees, t);
    if mac.rows.len() != cols.len() {
        return Err(Error::structural(format!(
            "Macaulay matrix is {}x{}, not square",
            mac.rows.len(),
            cols.len()
        )));
    }
    coefficient_matrix(&mac.rows, &cols)
}

/// `E(t)`; 1 when no degree-`t` monomial is doubly reducible.
pub fn extraneous_factor(sys: &MVSystem, t: u32) -> Result<Scalar> {
    extraneous_determinant(&homogenized(sys)?, &sys.degrees, t)
}

/// `Δ_S = det(M_S) / E(t)`.
pub fn delta_s(sys: &MVSystem, t: u32, s: &MonomialSet) -> Result<Scalar> {
    let m = macaulay_matrix(sys, t, s)?;
    let e = extraneous_factor(sys, t)?;
    if e.is_zero() {
        return Err(Error::domain(
            "extraneous factor vanishes; the perturbation à la Canny is out of scope, perturb the inputs manually",
        ));
    }
    m.det()?.exact_div(&e)
}

/// `Δ̃_{T_j}` of `n` forms in `n` variables: the degree-`j` Macaulay
/// determinant with the columns of `T_j` deleted, divided by the extraneous
/// factor of the forms at degree `j`.
pub fn leading_form_subres(forms: &[MultiPoly], degrees: &[u32], j: u32, t_j: &MonomialSet) -> Result<Scalar> {
    if forms.len() != degrees.len() || forms.is_empty() {
        return Err(Error::dimension(format!(
            "{} forms with {} degrees",
            forms.len(),
            degrees.len()
        )));
    }
    let nv = forms[0].nvars();
    for (i, (f, &d)) in forms.iter().zip(degrees).enumerate() {
        if f.nvars() != nv || f.terms().any(|(e, _)| total_degree(e) != d) {
            return Err(Error::domain(format!(
                "form {} is not homogeneous of degree {d} in {nv} variables",
                i + 1
            )));
        }
    }
    let cols: Vec<Exponents> = monomials_of_degree(nv, j)
        .into_iter()
        .filter(|c| !t_j.contains(c))
        .collect();
    let mac = macaulay_rows(forms, degrees, j);
    if mac.rows.len() != cols.len() {
        return Err(Error::structural(format!(
            "leading-form Macaulay matrix at degree {j} is {}x{}, not square",
            mac.rows.len(),
            cols.len()
        )));
    }
    let det = coefficient_matrix(&mac.rows, &cols)?.det()?;
    let e = extraneous_determinant(forms, degrees, j)?;
    if e.is_zero() {
        return Err(Error::domain(format!(
            "extraneous factor of the leading forms vanishes at degree {j}"
        )));
    }
    det.exact_div(&e)
}
