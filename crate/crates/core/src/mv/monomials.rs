//! Monomial sets, the canonical order, and the Hilbert-function bookkeeping
//! that sizes every multivariate matrix.
//!
//! The canonical order sorts by total degree, then by exponent vectors
//! compared lexicographically (`x1` most significant), ascending. Within a
//! fixed degree this lists `x_n^j` first and `x_1^j` last.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::mv::mpoly::{total_degree, Exponents};

pub fn canonical_key(e: &[u32]) -> (u32, &[u32]) {
    (total_degree(e), e)
}

/// All exponent vectors in `n` variables of total degree `j`, canonical order.
pub fn monomials_of_degree(n: usize, j: u32) -> Vec<Exponents> {
    fn rec(n: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(n, left - v, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return if j == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(n, j, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All exponent vectors of total degree `<= t`, canonical order.
pub fn monomials_up_to(n: usize, t: u32) -> Vec<Exponents> {
    (0..=t).flat_map(|j| monomials_of_degree(n, j)).collect()
}

/// The box `{α : α_i < D_i}`, canonical order.
pub fn reduced_box(degrees: &[u32]) -> Vec<Exponents> {
    let mut v: Vec<Exponents> = degrees
        .iter()
        .map(|&d| 0..d)
        .multi_cartesian_product()
        .collect();
    if degrees.is_empty() {
        v.push(Vec::new());
    }
    v.sort_by(|a, b| canonical_key(a).cmp(&canonical_key(b)));
    v
}

/// A duplicate-free set of exponent vectors of one length, kept in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialSet {
    nvars: usize,
    monomials: Vec<Exponents>,
}

impl MonomialSet {
    pub fn new(nvars: usize, mut monomials: Vec<Exponents>) -> Result<Self> {
        if let Some(bad) = monomials.iter().find(|e| e.len() != nvars) {
            return Err(Error::dimension(format!(
                "monomial {bad:?} does not have {nvars} exponents"
            )));
        }
        monomials.sort_by(|a, b| canonical_key(a).cmp(&canonical_key(b)));
        if let Some(w) = monomials.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::domain(format!("monomial {:?} is listed twice", w[0])));
        }
        Ok(MonomialSet { nvars, monomials })
    }

    pub fn empty(nvars: usize) -> Self {
        MonomialSet {
            nvars,
            monomials: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.monomials
            .binary_search_by(|m| canonical_key(m).cmp(&canonical_key(e)))
            .is_ok()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.monomials.last().map(|e| total_degree(e))
    }

    fn union<'a, I: IntoIterator<Item = &'a MonomialSet>>(nvars: usize, sets: I) -> Result<Self> {
        MonomialSet::new(
            nvars,
            sets.into_iter().flat_map(|s| s.monomials.iter().cloned()).collect(),
        )
    }
}

fn check_degrees(degrees: &[u32]) -> Result<()> {
    if degrees.len() < 2 {
        return Err(Error::domain(format!(
            "need n + 1 >= 2 degrees, got {}",
            degrees.len()
        )));
    }
    if degrees.contains(&0) {
        return Err(Error::domain("all degrees must be at least 1"));
    }
    Ok(())
}

/// `H_{D_1…D_{n+1}}(t)`: the number of `α` with `|α| <= t`, `α_i < D_i`
/// for `i <= n`, and `t - |α| < D_{n+1}`. Counted by enumeration.
pub fn hilbert_function(degrees: &[u32], t: u32) -> usize {
    if degrees.is_empty() {
        return 0;
    }
    let (first, last) = degrees.split_at(degrees.len() - 1);
    reduced_box(first)
        .iter()
        .filter(|a| {
            let s = total_degree(a);
            s <= t && t - s < last[0]
        })
        .count()
}

/// `τ_j = H_{D_1…D_n}(j)`: the number of `α` in the box `α_i < D_i` with
/// `|α| = j`.
pub fn tau(degrees: &[u32], j: u32) -> usize {
    reduced_box(degrees)
        .iter()
        .filter(|a| total_degree(a) == j)
        .count()
}

/// The counts behind the Poisson-like formula at order `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemCombinatorics {
    pub t: u32,
    /// `|S|`, the Hilbert function at `t`.
    pub k: usize,
    /// `Σ_{i<=n} (D_i - 1)`, the top degree of the reduced box.
    pub rho: u32,
    /// `τ_0, …, τ_ρ`.
    pub tau: Vec<usize>,
    /// `D_1 ⋯ D_n`.
    pub bezout: usize,
    /// `|T*|`.
    pub s: usize,
    /// `|R|`.
    pub r: usize,
}

/// `T_j` for `j = 0..=ρ`, their union `T`, `T* = T_{t+1} ∪ … ∪ T_ρ`, and `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSets {
    pub t_j: BTreeMap<u32, MonomialSet>,
    pub t_all: MonomialSet,
    pub t_star: MonomialSet,
    pub r: MonomialSet,
    pub comb: SystemCombinatorics,
}

impl MonomialSets {
    /// `T_j`, empty above `ρ`.
    pub fn t_of_degree(&self, j: u32) -> MonomialSet {
        self.t_j
            .get(&j)
            .cloned()
            .unwrap_or_else(|| MonomialSet::empty(self.t_all.nvars()))
    }
}

/// Builds the monomial families for `degrees = (D_1, …, D_{n+1})` at order
/// `t`. For `j < t - D_{n+1} + 1` the family `T_j` is forced to the reduced
/// monomials of degree `j`; otherwise it is `overrides[j]` if given, else
/// the first `τ_j` degree-`j` monomials in canonical order.
pub fn build_monomial_sets(
    degrees: &[u32],
    t: u32,
    overrides: &BTreeMap<u32, MonomialSet>,
) -> Result<MonomialSets> {
    check_degrees(degrees)?;
    let n = degrees.len() - 1;
    let (first, last) = (&degrees[..n], degrees[n]);
    let rho: u32 = first.iter().map(|d| d - 1).sum();
    let forced_below = (t + 1).saturating_sub(last);
    let boxed = reduced_box(first);

    let mut t_j = BTreeMap::new();
    let mut taus = Vec::new();
    for j in 0..=rho {
        let tj = tau(first, j);
        taus.push(tj);
        let set = if j < forced_below {
            if overrides.contains_key(&j) {
                return Err(Error::domain(format!(
                    "T_{j} is forced for t = {t} and cannot be overridden"
                )));
            }
            MonomialSet::new(n, boxed.iter().filter(|a| total_degree(a) == j).cloned().collect())?
        } else if let Some(o) = overrides.get(&j) {
            if o.nvars() != n || o.len() != tj || o.monomials().iter().any(|a| total_degree(a) != j) {
                return Err(Error::domain(format!(
                    "override for T_{j} must hold {tj} monomials of degree {j} in {n} variables"
                )));
            }
            o.clone()
        } else {
            let all = monomials_of_degree(n, j);
            if tj > all.len() {
                return Err(Error::structural(format!(
                    "τ_{j} = {tj} exceeds the {} monomials of degree {j}",
                    all.len()
                )));
            }
            MonomialSet::new(n, all.into_iter().take(tj).collect())?
        };
        t_j.insert(j, set);
    }
    if let Some(j) = overrides.keys().find(|j| **j > rho) {
        return Err(Error::domain(format!("override for T_{j} above ρ = {rho}")));
    }

    let t_all = MonomialSet::union(n, t_j.values())?;
    let t_star = MonomialSet::union(n, t_j.range(t + 1..).map(|(_, s)| s))?;
    let r = MonomialSet::new(
        n,
        boxed
            .iter()
            .filter(|a| {
                let s = total_degree(a);
                s <= t && t - s >= last
            })
            .cloned()
            .collect(),
    )?;
    let comb = SystemCombinatorics {
        t,
        k: hilbert_function(degrees, t),
        rho,
        tau: taus,
        bezout: first.iter().map(|&d| d as usize).product(),
        s: t_star.len(),
        r: r.len(),
    };
    if t_all.len() != comb.bezout {
        return Err(Error::structural(format!(
            "|T| = {} differs from the Bezout number {}",
            t_all.len(),
            comb.bezout
        )));
    }
    Ok(MonomialSets {
        t_j,
        t_all,
        t_star,
        r,
        comb,
    })
}
