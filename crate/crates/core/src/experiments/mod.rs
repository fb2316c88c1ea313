//! Verification harness: sector counts, norm counting, weighted orbital
//! averages, recurrence counts, and the reports the CLI prints and writes.

mod config;
mod norm_count;
mod orbital;
mod recurrence;
mod report;
mod runs;
mod sector;

pub use config::{ArcValue, BoundaryValue, Experiment, ExperimentConfig};
pub use norm_count::{
    compare_predicates, distance_predicate, mobius_norm_count, norm_predicate, random_predicate_check,
    random_unimodular, NormCountReport, RandomPredicateCheck,
};
pub use orbital::{weighted_orbital_average, zeta_stability, ArcFunction, OrbitalAverage, TestFunction};
pub use recurrence::{
    count_rate, recurrence_counts, recurrence_test, visual_separation, RecurrenceCounts, RecurrenceResult,
    RecurrenceRow,
};
pub use report::{Check, Comparison, Report};
pub use runs::{
    conformal_residual, delta_estimate, run, run_appendix, run_corollary13, run_delta, run_group_validate,
    run_measure_ps, run_orbit_enum, run_recurrence, run_theorem1, Outcome,
};
pub use sector::{sector_count, visual_target, SectorCountResult, SectorCounts, SectorRow};
