//! Twisted group algebras of Z^d: cocycles, convolution, truncated regular
//! representations and the seminorms built on them.

mod analytic;
mod cocycle;
mod element;
mod linalg;
mod seminorm;
mod trunc;

pub use analytic::{
    holder_bound, holder_check, holder_delta, holder_modulus, phi_sup, radius_probe, weight_ratio, HolderReport, RadiusProbe,
};
pub use cocycle::Cocycle;
pub use element::AlgebraElement;
pub use linalg::{
    dense_norm, estimate_norm, lanczos, op_norm, power_iteration, random_matrix, LinearOperator, NormMethod, NormResult,
    SparseMatrix,
};
pub use seminorm::{
    a_norm, df_norm, fourier_sup, k_constants, l_ell, main_inequality_check, polytope_set, weighted_norms, word_constant,
    CosetConstant, FaceConstant, InequalityReport, SeminormEstimate, Truncation,
};
pub use trunc::{compression_consistent, truncated_commutator, truncated_pi, truncated_pi_on, BoxIndex, TruncatedRep};

#[cfg(test)]
mod tests;
