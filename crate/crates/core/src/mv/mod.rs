//! Multivariate subresultants: Macaulay matrices on the coefficient side,
//! dual bases and the Poisson-like formula on the root side.

pub mod dual;
pub mod macaulay;
pub mod monomials;
pub mod mpoly;
pub mod poisson;

pub use dual::{
    assemble_dual_basis, default_order_bound, dual_eval, dual_vandermonde, dual_wronskian, inverse_system,
    sigma_shift, DualBasis, DualFunctional, InverseSystem, Point,
};
pub use macaulay::{delta_s, extraneous_factor, leading_form_subres, macaulay_matrix, MVSystem};
pub use monomials::{
    build_monomial_sets, hilbert_function, tau, MonomialSet, MonomialSets, SystemCombinatorics,
};
pub use mpoly::{Exponents, MultiPoly};
pub use poisson::{poisson_delta, poisson_parts, PoissonParts};
