//! Exact rational homotopy bookkeeping for open books.
//!
//! The crate computes ranks of rational homotopy groups of pages, fibres and
//! whole open books from small rational models, classifies open books as
//! rationally elliptic or hyperbolic, and runs the Milnor/Brieskorn
//! obstruction pipeline. All rank arithmetic is exact.
//!
//! Module layout, bottom-up:
//!
//! * [`series`]: truncated formal power series over `Q`.
//! * [`lie`]: graded rank maps and free graded Lie algebra ranks.
//! * [`spaces`]: rational models of spaces and their homotopy ranks.
//! * [`openbook`]: open book specs, hypothesis checks and the dichotomy.
//! * [`milnor`]: Brieskorn multiplicities, Milnor pages, variation matrices.

pub mod lie;
pub mod milnor;
pub mod openbook;
pub mod series;
pub mod spaces;

pub use lie::{free_lie_ranks, pbw_series, witt_number, GradedRanks, LieError};
pub use milnor::{
    boundary_connected_sum_variation, brieskorn_multiplicity, milnor_openbook_spec, milnor_page,
    monodromy_constraint_report, variation_is_iso, BrieskornExponents, ConstraintOutcome,
    ConstraintReport, MilnorError, NoObstructionReason, VariationMatrix,
};
pub use openbook::{
    classify_dichotomy, double_loop_ranks, grove_halperin_test, homotopy_ranks,
    openbook_loop_ranks, validate_spec, ActionEvidence, DichotomyVerdict, HyperbolicReason,
    MonodromyHypothesis, OpenBookError, OpenBookSpec, Violation,
};
pub use series::{SeriesError, TruncatedSeries, DEFAULT_TRUNCATION};
pub use spaces::{
    growth_estimate, is_rationally_elliptic, loop_ranks, space_ranks, suspend, GrowthClass,
    GrowthReport, SpaceError, SpaceModel, Wedge,
};
