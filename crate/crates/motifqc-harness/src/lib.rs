//! Experiment driver for the quality-control testers: rate estimation,
//! budgeted indistinguishability sweeps, and average-case counting.

pub mod experiments;

pub use experiments::{
    avg_case_count, budget_sweep, rate_experiment, write_sweep_csv, AvgCaseReport, BudgetDecision,
    CountPath, ExperimentSpec, HarnessError, ModelRates, RateReport, SweepRow,
};
