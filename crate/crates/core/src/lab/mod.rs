//! Catalog of inequalities between intrinsic volumes of a body and of its
//! coordinate projections and sections, evaluated uniformly into reports.

mod catalog;
mod classify;
mod constants;
mod evaluate;
mod report;
mod witness;

pub use catalog::{InequalityId, Orientation, Status, NAMES};
pub use classify::{
    cross_shape, equality_case_classifier, has_equality_family, Classification, CrossShape,
    EqualityFamily, CLASSIFY_TOL,
};
pub use constants::{c0_constant, cross_c2, cross_c3, meyer_constant, mth_constant, ratio};
pub use evaluate::{evaluate, evaluate_all, EvalOptions};
pub use report::{EqualityFlag, IneqReport, Link, ERROR_FACTOR, EXACT_FLOOR, REPORT_SCHEMA};
pub use witness::{
    cross_half_axes, cross_polytope_from_sections, segment_from_projections, SegmentOutcome,
};
