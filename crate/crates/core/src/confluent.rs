//! Confluent Vandermonde and Wronskian matrices, Hermite interpolation.
//!
//! Root indices are 0-based here. Matrices are `u x d` with one row per
//! power `z^k` and one column per pair `(i, j)`, roots in list order and
//! derivative order ascending inside each block.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::roots::MultiRootSet;
use crate::scalar::Scalar;
use crate::upoly::UniPoly;

/// All `(i, j)` with `0 <= j < d_i`, in column order.
pub fn index_pairs(a: &MultiRootSet) -> Vec<(usize, usize)> {
    a.entries()
        .iter()
        .enumerate()
        .flat_map(|(i, (_, k))| (0..*k).map(move |j| (i, j)))
        .collect()
}

/// `V_u(A)`, entry `binom(k, j) α_i^{k-j}` (zero when `k < j`).
pub fn vandermonde_confluent(a: &MultiRootSet, u: usize) -> ExactMatrix {
    let pairs = index_pairs(a);
    let rows = (0..u)
        .map(|k| {
            pairs
                .iter()
                .map(|&(i, j)| {
                    if k < j {
                        Scalar::zero()
                    } else {
                        &Scalar::binomial(k as u64, j as u64) * &a.root(i).pow((k - j) as u32)
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows, pairs.len()).expect("rows have d entries")
}

/// `∏_{i<j} (α_j - α_i)^{d_i d_j}`.
pub fn vandermonde_det_closed(a: &MultiRootSet) -> Scalar {
    let e = a.entries();
    let mut acc = Scalar::one();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            acc = &acc * &(&e[j].0 - &e[i].0).pow((e[i].1 * e[j].1) as u32);
        }
    }
    acc
}

/// `W_{h,u}(A)`, entry `taylor_coeff(z^k h, α_i, j)`. `h` is a polynomial in
/// `z` whose coefficients may involve the parameter `x`.
pub fn wronskian(h: &UniPoly, a: &MultiRootSet, u: usize) -> ExactMatrix {
    let pairs = index_pairs(a);
    let rows = (0..u)
        .map(|k| {
            let zkh = h.shift(k);
            pairs
                .iter()
                .map(|&(i, j)| zkh.taylor_coeff(a.root(i), j))
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows, pairs.len()).expect("rows have d entries")
}

pub fn wronskian_det_closed(h: &UniPoly, a: &MultiRootSet) -> Scalar {
    a.entries()
        .iter()
        .map(|(r, k)| h.eval(r).pow(*k as u32))
        .fold(vandermonde_det_closed(a), |acc, v| &acc * &v)
}

fn check_root_index(a: &MultiRootSet, i: usize) -> Result<()> {
    if i >= a.m() {
        return Err(Error::domain(format!(
            "root index {i} out of range, the set has {} roots",
            a.m()
        )));
    }
    Ok(())
}

/// `f̄_{i,k} = (x - α_i)^k ∏_{j≠i} (x - α_j)^{d_j}`.
pub fn fiki(a: &MultiRootSet, i: usize, k: usize) -> Result<UniPoly> {
    check_root_index(a, i)?;
    if k >= a.multiplicity(i) {
        return Err(Error::domain(format!(
            "k = {k} must be below the multiplicity {} of root {i}",
            a.multiplicity(i)
        )));
    }
    Ok(cofactor_poly(a, i, k))
}

fn cofactor_poly(a: &MultiRootSet, i: usize, k: usize) -> UniPoly {
    a.entries()
        .iter()
        .enumerate()
        .map(|(l, (r, d))| UniPoly::linear_root(r).pow(if l == i { k } else { *d } as u32))
        .product()
}

/// Weak compositions of `k` into `parts` nonnegative parts; the empty
/// composition exists only for `k = 0`.
pub fn weak_compositions(k: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0; parts];
    fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    rec(0, k, &mut cur, &mut out);
    out
}

/// The basic Hermite polynomial `p_{i,j}`: degree `< d`, Taylor coefficient
/// 1 at `(α_i, j)` and 0 at every other `(α_l, q)`.
///
/// Uses the closed composition sum. All terms are brought over the common
/// denominator `f̄_i(α_i) ∏_{l≠i} (α_i - α_l)^{d_i-1-j}` and divided once,
/// so symbolic roots work whenever the result is polynomial in them.
pub fn basic_hermite(a: &MultiRootSet, i: usize, j: usize) -> Result<UniPoly> {
    check_root_index(a, i)?;
    let di = a.multiplicity(i);
    if j >= di {
        return Err(Error::domain(format!(
            "j = {j} must be below the multiplicity {di} of root {i}"
        )));
    }
    let ai = a.root(i);
    let others: Vec<(Scalar, usize)> = a
        .entries()
        .iter()
        .enumerate()
        .filter(|(l, _)| *l != i)
        .map(|(_, (r, d))| (ai - r, *d))
        .collect();
    let top = di - 1 - j;

    let mut num = UniPoly::zero();
    for k in 0..=top {
        let mut bracket = Scalar::zero();
        for comp in weak_compositions(k, others.len()) {
            let mut term = Scalar::one();
            for ((diff, dl), kl) in others.iter().zip(&comp) {
                term = &term * &Scalar::binomial((dl - 1 + kl) as u64, *kl as u64);
                term = &term * &diff.pow((top - kl) as u32);
            }
            bracket = &bracket + &term;
        }
        if k % 2 == 1 {
            bracket = -bracket;
        }
        num = &num + &cofactor_poly(a, i, j + k).scale(&bracket);
    }
    let den = others
        .iter()
        .map(|(diff, dl)| diff.pow((dl + top) as u32))
        .fold(Scalar::one(), |acc, v| &acc * &v);
    num.map_coeffs(|c| c.exact_div(&den))
}

fn check_data_keys(a: &MultiRootSet, y: &BTreeMap<(usize, usize), Scalar>) -> Result<()> {
    let pairs = index_pairs(a);
    if let Some(missing) = pairs.iter().find(|p| !y.contains_key(p)) {
        return Err(Error::domain(format!(
            "interpolation data is missing the key {missing:?}"
        )));
    }
    if let Some(extra) = y.keys().find(|p| !pairs.contains(p)) {
        return Err(Error::domain(format!(
            "interpolation data has the unexpected key {extra:?}"
        )));
    }
    Ok(())
}

/// The unique polynomial of degree `< d` with `taylor_coeff(p, α_i, j) =
/// y[(i, j)]`.
pub fn hermite_interpolate(a: &MultiRootSet, y: &BTreeMap<(usize, usize), Scalar>) -> Result<UniPoly> {
    check_data_keys(a, y)?;
    let mut acc = UniPoly::zero();
    for (&(i, j), v) in y {
        if v.is_zero() {
            continue;
        }
        acc = &acc + &basic_hermite(a, i, j)?.scale(v);
    }
    Ok(acc)
}

/// Hermite interpolation through the bordered determinant
/// `det V · p = -det [[V | (1, x, …, x^{d-1})ᵀ], [y | 0]]`.
pub fn hermite_interpolate_bordered(
    a: &MultiRootSet,
    y: &BTreeMap<(usize, usize), Scalar>,
) -> Result<UniPoly> {
    check_data_keys(a, y)?;
    let d = a.d();
    let v = vandermonde_confluent(a, d);
    let border = ExactMatrix::from_rows((0..d).map(|k| vec![Scalar::x().pow(k as u32)]).collect(), 1)?;
    let mut last: Vec<Scalar> = index_pairs(a).iter().map(|p| y[p].clone()).collect();
    last.push(Scalar::zero());
    let m = v.hstack(&border)?.vstack(&ExactMatrix::from_rows(vec![last], d + 1)?)?;
    let p = (-m.det()?).exact_div(&vandermonde_det_closed(a))?;
    Ok(UniPoly::from_x_scalar(&p))
}

/// `V(A)^{-1}`: row `(i, j)` holds the coefficients of `p_{i,j}` in the
/// basis `1, x, …, x^{d-1}`.
pub fn confluent_inverse(a: &MultiRootSet) -> Result<ExactMatrix> {
    let d = a.d();
    let rows = index_pairs(a)
        .into_iter()
        .map(|(i, j)| {
            let p = basic_hermite(a, i, j)?;
            Ok((0..d).map(|k| p.coeff(k as i64)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(rows, d)
}

/// Block-diagonal matrix of the interpolation problem in the basis
/// `f̄_{i,k}`: block `i` is upper triangular with entry `(r, c)` equal to
/// the `(c - r)`-th Taylor coefficient of `f̄_i` at `α_i`.
pub fn vprime(a: &MultiRootSet) -> ExactMatrix {
    let d = a.d();
    let mut out = ExactMatrix::zeros(d, d);
    let mut offset = 0;
    for (i, (r, di)) in a.entries().iter().enumerate() {
        let fi = cofactor_poly(a, i, 0);
        for row in 0..*di {
            for col in row..*di {
                out.set(offset + row, offset + col, fi.taylor_coeff(r, col - row));
            }
        }
        offset += di;
    }
    out
}
