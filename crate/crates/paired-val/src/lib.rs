//! Paired-data validation toolkit for tooth-level reader studies.
//!
//! The crate classifies detection annotations against ground truth at tooth
//! level and computes the full statistical battery of a paired control/study
//! design: matched sample tables, one-sided McNemar and exact binomial tests
//! with critical region, Type-II error and power, Wald confidence intervals
//! for sensitivity and specificity, localization-ROC curves with
//! Hanley–McNeil AUC statistics and the correlated paired AUC-difference
//! test, plus a Monte Carlo harness that calibrates the tests empirically.
//!
//! Start from the runnable examples: each major capability has one under
//! `examples/` (`cargo run --example hypothesis_tests`, etc.). The `paired-val`
//! binary exposes the same pipeline as `tally`, `report`, `roc`, `calibrate`
//! and `reproduce-paper` subcommands.

pub mod dist;
pub mod error;
pub mod fixture;
mod hm_grid_data;
pub mod lroc;
pub mod matching;
pub mod model;
pub mod report;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};
pub use fixture::PaperFixture;
pub use lroc::{
    auc_difference_test, auc_stats, build_lroc, compare_aucs, curve_to_csv, curves_to_svg,
    kendall_correlations, lookup_r, trapezoid_area, trapezoid_auc, AucComparison, AucStats,
    CorrelationMode, LrocCurve, OperatingPoint,
};
pub use matching::{
    assign_to_teeth, classify_teeth, majority_vote_ground_truth, match_instances, matched_samples,
    resolve_ground_truth, tally, ClassLabel, DecisionMatrix, Endpoint, MatchedSampleTable,
    Matching, ToothClassification, DEFAULT_MIN_DICE,
};
pub use model::{
    dice, validate_dataset, Annotation, AnomalyType, Arm, BoundingBox, ConfidenceLabel,
    GroundTruthInstance, ImageRecord, StudyDataset, ToothRegion, Violation,
};
pub use report::{
    build_report, counts_from_dataset, counts_from_fixture, parse_counts_csv, report_to_csv,
    report_to_latex, report_to_markdown, reproduce_paper, reproduce_with, write_counts_csv,
    AnomalyCounts, AucAverages, AucRow, CellMismatch, Report, Reproduction,
};
pub use sim::{calibrate, simulate_mst, CalibrationSummary, SimScenario};
pub use stats::{
    binomial_test, endpoint_table, f_beta, mcnemar_test, sens_spec, wald_ci, BinomialTestResult,
    Direction, EndpointRow, EndpointTable, McNemarResult, TestConfig, WaldInterval,
};
