//! Rees algebras of modules of projective dimension one with a linear
//! presentation: validation, `G_s` profiles, shape classification, Jacobian
//! duals, candidate defining ideals and the checks against saturation.

mod analysis;
mod chain;
mod checks;
mod gs;
pub mod instances;
mod jd;
mod oracle;
mod presentation;
mod shape;

pub use analysis::{
    analyze, analyze_presentation, census_list, verify_assertions, AnalysisOptions, AnalysisReport, Assertion,
    CandidateReport, CensusEntry, ChainReport, ChainStepReport, FiberReport, FittingLocus, Hypotheses, OracleReport,
    PresentationSummary, SaturatingKind, SubmatricesReport, Verdicts,
};
pub use chain::{approximation_chain, default_depth, ApproximationChain, ChainChecks, ChainStep};
pub use checks::{fiber_type_check, residual_intersection_check, residual_intersection_with, ResidualIntersection};
pub use gs::{gs_profile, gs_profile_of_matrix, GsProfile, SMax};
pub use instances::{constructed_instance, ConstructedInstance, INSTANCE_GRID};
pub use jd::{candidate_defining_ideal, candidate_formula, extract_submatrices, jacobian_dual, symmetric_ideal, Submatrices};
pub use oracle::{
    bidegree_census, certify_minimal_primes, fiber_analysis, first_vars_ideal, saturate_symmetric, saturation_oracle,
    unique_minimal_prime_check, FiberAnalysis, PrimeCertificate,
};
pub use presentation::{validate_presentation, Presentation, ValidationOptions};
pub use shape::{classify_shape, normalize, reduce_mod_first_vars, residual_rank, ShapeClassification, ShapeKind};
