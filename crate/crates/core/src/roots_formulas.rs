//! Subresultants written in the roots of `f̄` and `ḡ`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::confluent::{basic_hermite, index_pairs, vandermonde_confluent, vandermonde_det_closed, weak_compositions, wronskian};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::roots::{poly_from_roots, MultiRootSet};
use crate::scalar::Scalar;
use crate::uni_subres::check_subres_degrees;
use crate::upoly::UniPoly;

/// Which determinant expression `sres_roots` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `(d+1)`-square: `V_{t+1}(A)` over `W_{ḡ,d-t}(A)` with an `x`-power border.
    Compact,
    /// `(d+e+1)`-square: `V_{t+1}(A)` and `V_{d+e-t}(A | B)` with an `x`-power border.
    Block,
    /// `(d+e)`-square: `W_{x-z,t}(A)` over `V_{d+e-t}(A | B)`.
    WronskianFull,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Compact, Variant::Block, Variant::WronskianFull];
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compact" => Ok(Variant::Compact),
            "block" => Ok(Variant::Block),
            "wronskian-full" => Ok(Variant::WronskianFull),
            other => Err(Error::parse(
                "variant",
                format!("unknown variant {other:?}, expected compact, block or wronskian-full"),
            )),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Compact => "compact",
            Variant::Block => "block",
            Variant::WronskianFull => "wronskian-full",
        })
    }
}

fn signed(s: Scalar, negative: bool) -> Scalar {
    if negative {
        -s
    } else {
        s
    }
}

/// Column `(1, x, …, x^t, 0, …, 0)` of height `rows`.
fn border(t: usize, rows: usize) -> Result<ExactMatrix> {
    ExactMatrix::from_rows(
        (0..rows)
            .map(|k| vec![if k <= t { Scalar::x().pow(k as u32) } else { Scalar::zero() }])
            .collect(),
        1,
    )
}

/// `Sres_t(f̄, ḡ)` from the roots of both polynomials.
pub fn sres_roots(a: &MultiRootSet, b: &MultiRootSet, t: usize, variant: Variant) -> Result<UniPoly> {
    let (d, e) = (a.d(), b.d());
    check_subres_degrees(d, e, t)?;
    let det_a = vandermonde_det_closed(a);

    let (det, sign_negative, divisor) = match variant {
        Variant::Compact => {
            let g = poly_from_roots(b);
            let left = vandermonde_confluent(a, t + 1).vstack(&wronskian(&g, a, d - t))?;
            let m = left.hstack(&border(t, d + 1)?)?;
            (m.det()?, (d - t) % 2 == 1, det_a)
        }
        Variant::Block => {
            let top = vandermonde_confluent(a, t + 1).hstack(&ExactMatrix::zeros(t + 1, e))?;
            let bottom = vandermonde_confluent(a, d + e - t)
                .hstack(&vandermonde_confluent(b, d + e - t))?
                .hstack(&ExactMatrix::zeros(d + e - t, 1))?;
            let m = top.hstack(&border(t, t + 1)?)?.vstack(&bottom)?;
            let c = (e % 2).max((d - t) % 2);
            (m.det()?, c == 1, &det_a * &vandermonde_det_closed(b))
        }
        Variant::WronskianFull => {
            let x_minus_z = UniPoly::new(vec![Scalar::x(), -Scalar::one()]);
            let top = wronskian(&x_minus_z, a, t).hstack(&ExactMatrix::zeros(t, e))?;
            let bottom = vandermonde_confluent(a, d + e - t).hstack(&vandermonde_confluent(b, d + e - t))?;
            let m = top.vstack(&bottom)?;
            (m.det()?, ((d - t) * e) % 2 == 1, &det_a * &vandermonde_det_closed(b))
        }
    };
    let value = signed(det, sign_negative).exact_div(&divisor)?;
    Ok(UniPoly::from_x_scalar(&value))
}

/// `Sres_{d-1}(f̄, ḡ)` as the Hermite interpolant of `ḡ` on `A`.
pub fn sres_dm1_hermite(a: &MultiRootSet, b: &MultiRootSet) -> Result<UniPoly> {
    let (d, e) = (a.d(), b.d());
    if d > e {
        return Err(Error::domain(format!(
            "Sres_(d-1) from roots needs d - 1 < e, got d = {d}, e = {e}"
        )));
    }
    let g = poly_from_roots(b);
    let mut acc = UniPoly::zero();
    for (i, j) in index_pairs(a) {
        let y = g.taylor_coeff(a.root(i), j);
        if !y.is_zero() {
            acc = &acc + &basic_hermite(a, i, j)?.scale(&y);
        }
    }
    Ok(acc)
}

/// `Sres_1(f̄, ḡ)` from the closed composition-sum formula. Needs
/// `1 < d <= e` and no root shared between `A` and `B`.
pub fn sres_one(a: &MultiRootSet, b: &MultiRootSet) -> Result<UniPoly> {
    let (d, e) = (a.d(), b.d());
    if !(1 < d && d <= e) {
        return Err(Error::domain(format!(
            "Sres_1 from roots needs 1 < d <= e, got d = {d}, e = {e}"
        )));
    }
    if a.shares_root_with(b) {
        return Err(Error::domain(
            "Sres_1 formula has poles: A and B share a root",
        ));
    }
    let g = poly_from_roots(b);
    let g_at: Vec<Scalar> = a.entries().iter().map(|(r, _)| g.eval(r)).collect();

    let mut acc = UniPoly::zero();
    for (i, (ai, di)) in a.entries().iter().enumerate() {
        let di = *di;
        // Every other root of f̄ ḡ with its multiplicity, as (α_i - γ, mult).
        let poles: Vec<(Scalar, usize)> = a
            .entries()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (r, k))| (ai - r, *k))
            .chain(b.entries().iter().map(|(r, k)| (ai - r, *k)))
            .collect();

        let mut prefactor = g_at[i].pow((di - 1) as u32);
        let mut fi_at = Scalar::one();
        for (j, (_, dj)) in a.entries().iter().enumerate() {
            if j != i {
                prefactor = &prefactor * &g_at[j].pow(*dj as u32);
                fi_at = &fi_at * &(ai - a.root(j)).pow(*dj as u32);
            }
        }

        let composition_sum = |k: usize| -> Result<Scalar> {
            let mut s = Scalar::zero();
            for comp in weak_compositions(k, poles.len()) {
                let mut num = prefactor.clone();
                let mut den = fi_at.clone();
                for ((diff, mult), kl) in poles.iter().zip(&comp) {
                    num = &num * &Scalar::binomial((mult - 1 + kl) as u64, *kl as u64);
                    den = &den * &diff.pow(*kl as u32);
                }
                s = &s + &num.exact_div(&den)?;
            }
            Ok(s)
        };

        let linear = composition_sum(di - 1)?;
        let constant = if di >= 2 { composition_sum(di - 2)? } else { Scalar::zero() };
        let contribution = &UniPoly::linear_root(ai).scale(&linear) + &UniPoly::constant(constant);
        acc = if (d - di) % 2 == 1 { &acc - &contribution } else { &acc + &contribution };
    }
    Ok(acc)
}
