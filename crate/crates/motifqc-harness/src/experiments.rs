//! Experiment driver: acceptance-rate estimation over seeded trials,
//! budgeted indistinguishability sweeps, and the average-case counting
//! wrapper.
//!
//! Trials are embarrassingly parallel; each gets an RNG stream derived from
//! `(seed, model index, trial index)`, so aggregates are identical for any
//! thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use motifqc_core::counting::count_labeled_induced;
use motifqc_core::models::{self, expected_count_gnp, ModelSpec};
use motifqc_core::motif::Motif;
use motifqc_core::oracle::{QueryBudget, QueryCounts, QueryOracle};
use motifqc_core::seeds;
use motifqc_core::testers::{self, DistConfig, MotifQuality, QualityTester, TesterSpec};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Model(#[from] models::ModelError),
    #[error(transparent)]
    Tester(#[from] testers::TesterError),
    #[error(transparent)]
    Oracle(#[from] motifqc_core::oracle::OracleError),
    #[error(transparent)]
    Schedule(#[from] motifqc_core::params::ScheduleError),
    #[error("experiment needs at least one trial")]
    NoTrials,
    #[error("budgets must be strictly increasing")]
    BadBudgets,
    #[error("the NO model carries no planted-size metadata")]
    MissingPlantedSize,
}

/// What to run: one tester against a YES model and any number of NO models.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub tester: TesterSpec,
    pub yes: ModelSpec,
    #[serde(default)]
    pub nos: Vec<ModelSpec>,
    pub trials: usize,
    pub seed: u64,
    /// Query budgets for sweeps; must be strictly increasing.
    #[serde(default)]
    pub budgets: Vec<u64>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::NoTrials);
        }
        if !self.budgets.windows(2).all(|w| w[0] < w[1]) {
            return Err(HarnessError::BadBudgets);
        }
        self.yes.validate()?;
        for m in &self.nos {
            m.validate()?;
        }
        Ok(())
    }
}

/// How budget exhaustion maps to a decision in sweeps. The default treats a
/// cut-off run as accepting, so the YES rate is the baseline.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BudgetDecision {
    #[default]
    Accept,
    Reject,
}

/// Acceptance statistics for one model.
#[derive(Debug, Clone, Serialize)]
pub struct ModelRates {
    pub model: ModelSpec,
    pub trials: usize,
    pub accepts: usize,
    pub rejects: usize,
    /// Tester errors; never folded into the accept rate.
    pub errors: usize,
    pub accept_rate: f64,
    /// 95% interval (normal approximation; Wilson below 20 trials).
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_queries: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RateReport {
    pub yes: ModelRates,
    pub nos: Vec<ModelRates>,
}

fn interval(accepts: usize, trials: usize) -> (f64, f64) {
    let n = trials as f64;
    let p_hat = accepts as f64 / n;
    let z = 1.959964f64;
    if trials >= 20 {
        let half = z * (p_hat * (1.0 - p_hat) / n).sqrt();
        ((p_hat - half).max(0.0), (p_hat + half).min(1.0))
    } else {
        // Wilson score interval
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let center = (p_hat + z2 / (2.0 * n)) / denom;
        let half = z * ((p_hat * (1.0 - p_hat) + z2 / (4.0 * n)) / n).sqrt() / denom;
        ((center - half).max(0.0), (center + half).min(1.0))
    }
}

struct TrialOutcome {
    accepted: Option<bool>,
    queries: QueryCounts,
}

fn run_trials(
    tester: &dyn QualityTester,
    model: &ModelSpec,
    model_idx: u64,
    trials: usize,
    seed: u64,
    budget: Option<u64>,
    budget_decision: BudgetDecision,
) -> Result<Vec<TrialOutcome>, HarnessError> {
    let outcomes: Result<Vec<TrialOutcome>, models::ModelError> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let graph_seed = seeds::mix(seed, &[model_idx, trial as u64, 0]);
            let graph = models::sample(model, graph_seed)?;
            let mut oracle = match budget {
                Some(q) => QueryOracle::with_budget(&graph, QueryBudget::total_cap(q)),
                None => QueryOracle::new(&graph),
            };
            let mut rng = seeds::derive_rng(seed, &[model_idx, trial as u64, 1]);
            Ok(match tester.run(&mut oracle, &mut rng) {
                Ok(v) => TrialOutcome {
                    accepted: Some(v.is_accept()),
                    queries: v.queries,
                },
                Err(e) if e.is_budget_exhausted() => TrialOutcome {
                    accepted: Some(budget_decision == BudgetDecision::Accept),
                    queries: oracle.counts(),
                },
                Err(_) => TrialOutcome {
                    accepted: None,
                    queries: oracle.counts(),
                },
            })
        })
        .collect();
    Ok(outcomes?)
}

fn summarize(model: &ModelSpec, outcomes: &[TrialOutcome]) -> ModelRates {
    let accepts = outcomes.iter().filter(|o| o.accepted == Some(true)).count();
    let rejects = outcomes
        .iter()
        .filter(|o| o.accepted == Some(false))
        .count();
    let errors = outcomes.iter().filter(|o| o.accepted.is_none()).count();
    let trials = outcomes.len();
    let accept_rate = accepts as f64 / trials as f64;
    let (ci_low, ci_high) = interval(accepts, trials);
    let mean_queries =
        outcomes.iter().map(|o| o.queries.total() as f64).sum::<f64>() / trials as f64;
    ModelRates {
        model: model.clone(),
        trials,
        accepts,
        rejects,
        errors,
        accept_rate,
        ci_low,
        ci_high,
        mean_queries,
    }
}

/// Per-model acceptance rates over seeded trials, unlimited budget.
pub fn rate_experiment(spec: &ExperimentSpec) -> Result<RateReport, HarnessError> {
    spec.validate()?;
    let tester = testers::build(&spec.tester)?;
    let yes_outcomes = run_trials(
        tester.as_ref(),
        &spec.yes,
        0,
        spec.trials,
        spec.seed,
        None,
        BudgetDecision::default(),
    )?;
    let mut nos = Vec::new();
    for (i, model) in spec.nos.iter().enumerate() {
        let outcomes = run_trials(
            tester.as_ref(),
            model,
            i as u64 + 1,
            spec.trials,
            spec.seed,
            None,
            BudgetDecision::default(),
        )?;
        nos.push(summarize(model, &outcomes));
    }
    Ok(RateReport {
        yes: summarize(&spec.yes, &yes_outcomes),
        nos,
    })
}

/// One row of a budget sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub budget: u64,
    pub yes_rate: f64,
    pub no_rate: f64,
    /// yes_rate - no_rate.
    pub gap: f64,
    /// The indistinguishability bound `2 q ell / (n - ell)`.
    pub bound: f64,
    pub yes_se: f64,
    pub no_se: f64,
}

fn rate_se(rate: f64, trials: usize) -> f64 {
    (rate * (1.0 - rate) / trials as f64).sqrt()
}

/// Runs the tester under a hard total budget at every requested level
/// against the YES model and the first NO model, recording the acceptance
/// gap next to the `2 q ell / (n - ell)` bound. The NO model must carry a
/// planted size.
pub fn budget_sweep(
    spec: &ExperimentSpec,
    budget_decision: BudgetDecision,
) -> Result<Vec<SweepRow>, HarnessError> {
    spec.validate()?;
    let no_model = spec.nos.first().ok_or(HarnessError::MissingPlantedSize)?;
    let ell = no_model
        .planted_size()
        .ok_or(HarnessError::MissingPlantedSize)? as f64;
    let n = spec.yes.n() as f64;
    let tester = testers::build(&spec.tester)?;
    let mut rows = Vec::new();
    for (bi, &q) in spec.budgets.iter().enumerate() {
        let tag = 1000 + bi as u64;
        let yes_outcomes = run_trials(
            tester.as_ref(),
            &spec.yes,
            tag * 2,
            spec.trials,
            spec.seed,
            Some(q),
            budget_decision,
        )?;
        let no_outcomes = run_trials(
            tester.as_ref(),
            no_model,
            tag * 2 + 1,
            spec.trials,
            spec.seed,
            Some(q),
            budget_decision,
        )?;
        let yes = summarize(&spec.yes, &yes_outcomes);
        let no = summarize(no_model, &no_outcomes);
        rows.push(SweepRow {
            budget: q,
            yes_rate: yes.accept_rate,
            no_rate: no.accept_rate,
            gap: yes.accept_rate - no.accept_rate,
            bound: 2.0 * q as f64 * ell / (n - ell),
            yes_se: rate_se(yes.accept_rate, spec.trials),
            no_se: rate_se(no.accept_rate, spec.trials),
        });
    }
    Ok(rows)
}

/// Six-significant-digit float formatting for the CSV outputs.
fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000e0".to_string();
    }
    format!("{x:.5e}")
}

/// Writes the sweep CSV: a `# config` provenance line, the fixed header,
/// then one row per budget. LF line endings, floats with six significant
/// digits.
pub fn write_sweep_csv(
    rows: &[SweepRow],
    config_json: &str,
    out: &mut impl std::io::Write,
) -> std::io::Result<()> {
    writeln!(out, "# config: {config_json}")?;
    writeln!(out, "budget,yes_rate,no_rate,gap,bound,yes_se,no_se")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.budget,
            sig6(r.yes_rate),
            sig6(r.no_rate),
            sig6(r.gap),
            sig6(r.bound),
            sig6(r.yes_se),
            sig6(r.no_se)
        )?;
    }
    Ok(())
}

/// Which path the average-case wrapper took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountPath {
    Qc,
    Exact,
}

#[derive(Debug, Clone, Serialize)]
pub struct AvgCaseReport {
    pub estimate: f64,
    pub path: CountPath,
    pub queries: QueryCounts,
}

/// Average-case counting from quality control: run the motif tester; on
/// accept return the G(n,p) expectation, on reject pay for the exact count
/// (all `C(n,2)` pair queries, then a full labeled induced count).
pub fn avg_case_count(
    oracle: &mut QueryOracle,
    h: &Motif,
    p: f64,
    eps: f64,
    s_star: Option<u64>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<AvgCaseReport, HarnessError> {
    let mut tester = MotifQuality::new(*h, DistConfig::Gnp { p }, eps)?;
    if let Some(s) = s_star {
        tester = tester.with_s_star(s);
    }
    let n = oracle.n();
    let verdict = tester.run(oracle, rng)?;
    if verdict.is_accept() {
        return Ok(AvgCaseReport {
            estimate: expected_count_gnp(h, n, p),
            path: CountPath::Qc,
            queries: oracle.counts(),
        });
    }
    // Exact path: materialize the whole graph through the oracle.
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if oracle.pair(u, v)? {
                edges.push((u, v));
            }
        }
    }
    let graph = motifqc_core::Graph::from_edges(n, &edges).expect("oracle answers are consistent");
    let exact = count_labeled_induced(&graph, h);
    Ok(AvgCaseReport {
        estimate: exact as f64,
        path: CountPath::Exact,
        queries: oracle.counts(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial_rate_is_zero_or_one() {
        let spec = ExperimentSpec {
            tester: TesterSpec::Clique {
                k: 3,
                p: 0.3,
                eps: 0.4,
                s_star: Some(100),
                per_level_thresholds: false,
            },
            yes: ModelSpec::Gnp { n: 300, p: 0.3 },
            nos: vec![],
            trials: 1,
            seed: 5,
            budgets: vec![],
        };
        let report = rate_experiment(&spec).unwrap();
        assert!(report.yes.accept_rate == 0.0 || report.yes.accept_rate == 1.0);
        assert_eq!(report.yes.errors, 0);
    }

    #[test]
    fn sweep_rows_carry_bound() {
        let spec = ExperimentSpec {
            tester: TesterSpec::Clique {
                k: 3,
                p: 0.3,
                eps: 0.4,
                s_star: Some(100),
                per_level_thresholds: false,
            },
            yes: ModelSpec::Gnp { n: 200, p: 0.3 },
            nos: vec![ModelSpec::MotifNoDist {
                n: 200,
                p: 0.3,
                planted: 20,
            }],
            trials: 10,
            seed: 6,
            budgets: vec![1, 5],
        };
        let rows = budget_sweep(&spec, BudgetDecision::Accept).unwrap();
        assert_eq!(rows.len(), 2);
        assert!((rows[0].bound - 2.0 * 1.0 * 20.0 / 180.0).abs() < 1e-12);
        // with budgets this small every run is cut off and accepted
        assert_eq!(rows[0].gap, 0.0);
    }

    #[test]
    fn sweep_csv_is_deterministic() {
        let spec = ExperimentSpec {
            tester: TesterSpec::Clique {
                k: 3,
                p: 0.3,
                eps: 0.4,
                s_star: Some(50),
                per_level_thresholds: false,
            },
            yes: ModelSpec::Gnp { n: 100, p: 0.3 },
            nos: vec![ModelSpec::MotifNoDist {
                n: 100,
                p: 0.3,
                planted: 10,
            }],
            trials: 5,
            seed: 9,
            budgets: vec![2, 4],
        };
        let mut bufs = Vec::new();
        for _ in 0..2 {
            let rows = budget_sweep(&spec, BudgetDecision::Accept).unwrap();
            let mut buf = Vec::new();
            write_sweep_csv(&rows, "{}", &mut buf).unwrap();
            bufs.push(buf);
        }
        assert_eq!(bufs[0], bufs[1]);
        let text = String::from_utf8(bufs[0].clone()).unwrap();
        assert!(text.starts_with("# config: {}\nbudget,yes_rate,no_rate,gap,bound,yes_se,no_se\n"));
    }

    #[test]
    fn avg_case_exact_path_matches_brute_force() {
        // An adversarial graph forces the reject path; the output is then
        // the exact count by construction.
        let g = motifqc_core::Graph::complete(60);
        let h = Motif::complete(3);
        let mut oracle = QueryOracle::new(&g);
        let mut rng = motifqc_core::seeds::derive_rng(4, &[]);
        let report = avg_case_count(&mut oracle, &h, 0.3, 0.4, Some(50), &mut rng).unwrap();
        assert_eq!(report.path, CountPath::Exact);
        assert_eq!(report.estimate, count_labeled_induced(&g, &h) as f64);
    }

    #[test]
    fn avg_case_accept_path_returns_expectation() {
        let g = models::sample(&ModelSpec::Gnp { n: 400, p: 0.3 }, 8).unwrap();
        let h = Motif::complete(3);
        let mut oracle = QueryOracle::new(&g);
        let mut rng = motifqc_core::seeds::derive_rng(5, &[]);
        let report = avg_case_count(&mut oracle, &h, 0.3, 0.4, Some(200), &mut rng).unwrap();
        assert_eq!(report.path, CountPath::Qc);
        assert_eq!(report.estimate, expected_count_gnp(&h, 400, 0.3));
    }
}
