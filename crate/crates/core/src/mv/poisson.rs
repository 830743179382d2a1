//! The Poisson-like formula for `Δ_S` in terms of a dual basis.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mv::dual::{dual_vandermonde, dual_wronskian, DualBasis};
use crate::mv::macaulay::{leading_form_subres, MVSystem};
use crate::mv::monomials::{MonomialSet, MonomialSets};
use crate::scalar::Scalar;

/// The two determinants of the formula, kept apart so callers can inspect
/// them; `value = prefactor · det_o / det_vt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonParts {
    pub prefactor: Scalar,
    pub det_o: Scalar,
    pub det_vt: Scalar,
    pub value: Scalar,
}

/// `∏_{j=t-D_{n+1}+1}^{t} Δ̃_{T_j} · det O_S(Λ) / det V_T(Λ)`, where `O_S`
/// stacks `V_S(Λ)`, `V_{T*}(Λ)` and `W_{f_{n+1},R}(Λ)`.
pub fn poisson_parts(sys: &MVSystem, t: u32, s: &MonomialSet, l: &DualBasis, sets: &MonomialSets) -> Result<PoissonParts> {
    let n = sys.n();
    let degrees = sys.degrees();
    if sets.comb.t != t {
        return Err(Error::domain(format!(
            "monomial sets were built for t = {}, not {t}",
            sets.comb.t
        )));
    }
    if s.len() != sets.comb.k {
        return Err(Error::domain(format!(
            "|S| = {} but the Hilbert function at t = {t} is {}",
            s.len(),
            sets.comb.k
        )));
    }
    if l.len() != sets.comb.bezout {
        return Err(Error::domain(format!(
            "dual basis has {} functionals, the Bezout number is {}",
            l.len(),
            sets.comb.bezout
        )));
    }

    let det_vt = dual_vandermonde(sets.t_all.monomials(), l)?.det()?;
    if det_vt.is_zero() {
        return Err(Error::structural(
            "T is not a basis of the quotient (or Λ is not a basis of the dual): det V_T(Λ) = 0",
        ));
    }
    let o = dual_vandermonde(s.monomials(), l)?
        .vstack(&dual_vandermonde(sets.t_star.monomials(), l)?)?
        .vstack(&dual_wronskian(&sys.polys()[n], sets.r.monomials(), l)?)?;
    let det_o = o.det()?;

    let forms = sys.leading_forms();
    let low = (t + 1).saturating_sub(degrees[n]);
    let mut prefactor = Scalar::one();
    for j in low..=t {
        prefactor = &prefactor * &leading_form_subres(&forms, &degrees[..n], j, &sets.t_of_degree(j))?;
    }
    let value = (&prefactor * &det_o).exact_div(&det_vt)?;
    Ok(PoissonParts {
        prefactor,
        det_o,
        det_vt,
        value,
    })
}

pub fn poisson_delta(sys: &MVSystem, t: u32, s: &MonomialSet, l: &DualBasis, sets: &MonomialSets) -> Result<Scalar> {
    Ok(poisson_parts(sys, t, s, l, sets)?.value)
}
