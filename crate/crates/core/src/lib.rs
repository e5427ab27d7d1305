//! Splitting types, displacement tableaux, and coordinate tori for k-gonal
//! chains of loops, with an exhaustive desk-scale verification harness.
//!
//! The library has four layers:
//!
//! - [`splitting`]: the dominance order on splitting types, the magnitude
//!   statistic, the balanced maximal types `mu_alpha`, and the
//!   Brill-Noether numbers `rho` and `rho_k`;
//! - [`tableau`]: rectangular tableaux with alphabet `[g]`, the k-uniform
//!   displacement condition, scrollar tableaux, transposes and rotations;
//! - [`torus`]: coordinate subtori of `Pic^d` of the chain of loops in
//!   break-divisor coordinates, containment, and general-position sampling;
//! - [`scrollarize`]: the hook statistic, admissible paths, and the
//!   algorithm turning any k-uniform displacement tableau into a scrollar
//!   one with a larger torus;
//! - [`verify`]: exhaustive enumeration and the verification sweep.

pub mod error;
pub mod scrollarize;
pub mod splitting;
pub mod tableau;
pub mod torus;
pub mod verify;

pub use error::Error;
pub use scrollarize::{
    admissible_paths, scrollarize, scrollarize_certified, stat, stat_grid, AdmissiblePath,
    StatGrid, Step,
};
pub use splitting::{
    balance_reduce, compare_dominance, degree_of, enumerate_types_with_h0, expected_dim, h0_twist,
    is_maximal, magnitude, maximal_splitting_types, mu_alpha, rho, rho_k, valid_alphas, Alpha,
    BNParams, Dominance, SplittingType,
};
pub use tableau::{generate_scrollar, Grid, Tableau};
pub use torus::{
    contains, membership, sample_general, torsion_profile, torus_equal, torus_of, DivisorCoords,
    TorsionProfile, TorusClass,
};
pub use verify::{
    all_tori, enumerate_tableaux, maximal_tori, run_sweep, run_sweep_seeded, verify_dimension,
    verify_instance, verify_max_scrollar, verify_splitting, CheckResult, CheckStatus,
    InstanceReport, InstanceStats, SweepLimits, SweepManifest, VerificationReport,
};
