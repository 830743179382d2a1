//! Root sets with multiplicities and the polynomials and pairings built
//! from them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::upoly::UniPoly;

/// An ordered list of pairwise distinct roots with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRootSet {
    entries: Vec<(Scalar, usize)>,
}

impl MultiRootSet {
    pub fn new(entries: Vec<(Scalar, usize)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("a root set needs at least one root"));
        }
        for (i, (r, mult)) in entries.iter().enumerate() {
            if *mult == 0 {
                return Err(Error::domain(format!("root {r} has multiplicity 0")));
            }
            if entries[..i].iter().any(|(q, _)| (q - r).is_zero()) {
                return Err(Error::domain(format!("root {r} is listed twice")));
            }
        }
        Ok(MultiRootSet { entries })
    }

    /// Simple roots, one each.
    pub fn simple(roots: Vec<Scalar>) -> Result<Self> {
        MultiRootSet::new(roots.into_iter().map(|r| (r, 1)).collect())
    }

    pub fn from_ints(entries: &[(i64, usize)]) -> Result<Self> {
        MultiRootSet::new(
            entries
                .iter()
                .map(|&(r, m)| (Scalar::from_int(r), m))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[(Scalar, usize)] {
        &self.entries
    }

    pub fn root(&self, i: usize) -> &Scalar {
        &self.entries[i].0
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.entries[i].1
    }

    /// Number of distinct roots.
    pub fn m(&self) -> usize {
        self.entries.len()
    }

    /// Total multiplicity.
    pub fn d(&self) -> usize {
        self.entries.iter().map(|(_, k)| k).sum()
    }

    pub fn all_simple(&self) -> bool {
        self.entries.iter().all(|(_, k)| *k == 1)
    }

    /// The flat list of roots, each repeated by its multiplicity.
    pub fn flattened(&self) -> Vec<Scalar> {
        self.entries
            .iter()
            .flat_map(|(r, k)| std::iter::repeat_n(r.clone(), *k))
            .collect()
    }

    /// Concatenation `self ∪ other`; fails if the sets share a root.
    pub fn union(&self, other: &MultiRootSet) -> Result<MultiRootSet> {
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().cloned());
        MultiRootSet::new(e)
    }

    pub fn shares_root_with(&self, other: &MultiRootSet) -> bool {
        self.entries
            .iter()
            .any(|(a, _)| other.entries.iter().any(|(b, _)| (a - b).is_zero()))
    }

    pub fn substitute(
        &self,
        values: &std::collections::BTreeMap<String, num_rational::BigRational>,
    ) -> Result<MultiRootSet> {
        MultiRootSet::new(
            self.entries
                .iter()
                .map(|(r, k)| Ok((r.substitute(values)?, *k)))
                .collect::<Result<_>>()?,
        )
    }
}

/// `∏ (x - α_i)^{d_i}`.
pub fn poly_from_roots(a: &MultiRootSet) -> UniPoly {
    a.entries()
        .iter()
        .map(|(r, k)| UniPoly::linear_root(r).pow(*k as u32))
        .product()
}

/// `R(A, B) = ∏_{i,j} (α_i - β_j)^{d_i e_j}`.
pub fn pairing_r(a: &MultiRootSet, b: &MultiRootSet) -> Scalar {
    let mut acc = Scalar::one();
    for (alpha, d) in a.entries() {
        for (beta, e) in b.entries() {
            acc = &acc * &(alpha - beta).pow((d * e) as u32);
        }
    }
    acc
}
