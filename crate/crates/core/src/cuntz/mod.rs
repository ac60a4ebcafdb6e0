//! The representation of the Cuntz algebra attached to a loop, compressed to
//! the finite corner `K = span{e₀, e₋₁, …, e₋ᵣ}`: the completely positive map
//! `σ(X) = Σ VᵢXVᵢ*`, its spectrum and fixed points, reducibility, Cuntz
//! states, scale reduction, and intertwiners.

mod closed_form;
mod corner;
mod intertwine;
mod reduce;
mod report;
mod sigma;

pub use closed_form::{angle, GenusTwoClosedForm, LABELS};
pub use corner::{
    corner_isometries, corner_isometries_padded, corner_size, corner_size_oracle, RepModel, ISOMETRY_TOL,
};
pub use intertwine::{intertwiner_space, intertwiner_space_padded, summand_intertwiner_dim, IntertwinerReport};
pub use reduce::{lambda0, reduce_scale, reduction_conditions, Reduction, ReductionConditions, LAMBDA0_TOL};
pub use report::{
    analyze, cuntz_states, cuntz_states_of, CuntzState, Decomposition, GenusTwoCheck, MinimalProjection, RepReport,
    CLOSURE_TOL,
};
pub use sigma::{
    cluster, echelon_basis, eigenvectors, fixed_point_space, off_diagonal, sigma_adjoint_direct, sigma_matrix,
    span_residual, spectrum, EigenCluster, SigmaMatrix, Spectrum, CLUSTER_TOL, FIXED_TOL,
};
