//! Critical exponents and Patterson–Sullivan measure estimates.
//!
//! Only normalized measures and ratios leave this module: the densities are
//! defined up to a common homothety.

mod conformal;
mod delta;
mod patterson;

pub use conformal::{conformal_check, ArcResidual, ConformalReport};
pub use delta::{
    default_fit_range, estimate_delta, estimate_delta_in, growth_rate, linear_fit, poincare_bracket,
    regression_delta, DeltaEstimate, DeltaMethod, DeltaReport, BRACKET_STEP, MIN_FIT_POINTS,
};
pub use patterson::{
    arc_index, check_partition, patterson_from_records, patterson_ladder, patterson_measure, patterson_set_fraction,
    visual_reference,
    EmpiricalBoundaryMeasure, PattersonLadder, PattersonParams, Truncation, DEFAULT_LADDER, DEFAULT_TAIL_SHELL,
    MIN_EXPONENT_GAP,
};
