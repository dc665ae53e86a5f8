//! Exact computations on ℤ^s-graded filtrations of m-primary monomial ideals:
//! Hilbert functions and polynomials, mixed multiplicities, complete and
//! joint reductions, postulation vectors, and the correspondence between
//! reduction vectors and postulation vectors.

pub mod closure;
pub mod error;
pub mod filtration;
pub mod hilbert;
pub mod index;
pub mod lp;
pub mod monomial;
pub mod reductions;
pub mod staircase;
pub mod upward;
pub mod verify;

pub use closure::{closure_of_product, in_newton_polyhedron, integral_closure};
pub use error::{FiltrationError, FitError, IdealError, ReductionError, VerifyError};
pub use filtration::{Family, Filtration, FiltrationSpec, StabilizationCertificate, UserTable};
pub use hilbert::{
    binomial, default_fit_offset, difference_table, fit_numerical_polynomial, fit_polynomial,
    fit_polynomial_from, graded_difference_polynomial, hilbert_function, hilbert_value,
    mixed_multiplicities, postulation_number, postulation_set, FitRecord, HilbertPolynomial,
    HilbertTable, PostulationNumber,
};
pub use index::{GridBox, MultiIndex};
pub use monomial::{default_variable_names, minimalize, Monomial, MonomialIdeal};
pub use reductions::{
    check_complete_reduction_at, check_joint_reduction_at, nakayama_descent_check,
    reduction_vector_set, reduction_vector_set_with, search_complete_reductions,
    stabilization_certificate, CompleteReductionCandidate, JointReductionCandidate, NakayamaReport,
    SearchHit, SearchOptions,
};
pub use staircase::{colength, colength_box_scan, colength_inclusion_exclusion};
pub use upward::{Certification, UpwardClosedSet};
pub use verify::{
    cm_proxy_failures, fit_for_box, verify_cm_vanishing_proxy, verify_correspondence,
    verify_correspondence_with, CorrespondenceReport, SingleGradedPattern, Verdict, VerifyOptions,
};
