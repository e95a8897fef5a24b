//! Norm shells as Minkowski sums of norm spheres.
//!
//! In any real normed space of dimension at least 2, the set of sums
//! `x_1 + … + x_n` with `‖x_i‖ = a_i` is exactly the shell
//! `{z : max_k (a_k − Σ_{i≠k} a_i)_+ <= ‖z‖ <= Σ a_i}`. This crate
//! computes that shell, constructively decomposes any vector in it into
//! summands of the prescribed norms, and evaluates the related optimal
//! first- and second-moment bounds for sums of random variables.

pub mod cli;
pub mod decompose;
pub mod error;
pub mod geometry;
pub mod moments;
pub mod oracle;
pub mod shell;

pub use decompose::{decompose, solve_two, Decomposition, SolverConfig};
pub use error::{Error, Result};
pub use geometry::{
    audit_norm_axioms, independent_unit, radial_project, sphere_path, Norm, NormFn, Vector,
};
pub use moments::{
    binom_pmf, bounds_report, empirical_check, hornich_constant, mg_lower_bound, Assumption,
    BoundReport, EmpiricalReport, MomentProfile,
};
pub use oracle::{
    grid_sum_norms_2d, sample_batch, sample_sphere, shell_coverage_check, CoverageReport,
    SampleBatch,
};
pub use shell::{extend_shell, feasible_r_interval, membership, shell_of_radii, RadiusList, Shell};
