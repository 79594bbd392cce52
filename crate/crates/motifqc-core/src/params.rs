//! Schedule quantities for the testers: per-level tolerances, quasirandomness
//! rates, and sample sizes, in paper mode (exact formulas) or calibrated mode
//! (sample size overridden for desk-scale runs; thresholds untouched).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::DistributionTable;
use crate::motif::Motif;

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("p = {0} outside (0, 0.5]")]
    POutOfRange(f64),
    #[error("eps = {0} outside (0, 1)")]
    EpsOutOfRange(f64),
    #[error("k = {0} outside 2..=8")]
    KOutOfRange(usize),
    #[error("efficient-mode constant C must be positive, got {0}")]
    BadConstant(f64),
    #[error("motif density is zero; the sample-size logarithm diverges")]
    ZeroDensity,
    #[error("density increment r_{0} is zero")]
    ZeroIncrement(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleFamily {
    Basic,
    Efficient,
    General,
}

/// All per-level schedule quantities for one tester configuration.
///
/// Vectors are keyed by the level `ell`; `eps_ell` holds the tolerance
/// ladder (`eps`-style for basic/general, `zeta`-style for efficient),
/// `alpha_ell` the quasirandomness rates (`alpha` or `eta`), `s_ell` the
/// per-level sample sizes. `s_star` is the sample size actually used,
/// which equals the paper value unless explicitly overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamTable {
    #[serde(rename = "mode")]
    pub family: ScheduleFamily,
    pub k: usize,
    pub p: Option<f64>,
    pub eps: f64,
    pub eps_ell: BTreeMap<usize, f64>,
    pub alpha_ell: BTreeMap<usize, f64>,
    pub s_ell: BTreeMap<usize, u64>,
    pub s_star: u64,
    /// The formula value of `s_star`, kept for provenance when overridden.
    pub s_star_paper: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_const: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_jumbled: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_ell: Option<BTreeMap<usize, f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl ParamTable {
    /// Overrides the sample size (calibrated mode). Thresholds keep their
    /// paper form; only the scale changes.
    pub fn with_s_star(mut self, s_star: u64) -> Self {
        self.s_star = s_star;
        self
    }

    /// Overrides the jumbledness slack (calibrated mode, efficient family).
    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta_jumbled = Some(delta);
        self
    }

    /// Per-level tolerance `eps_{ell}` (or `zeta_{ell}`).
    pub fn eps_at(&self, ell: usize) -> f64 {
        self.eps_ell[&ell]
    }

    pub fn alpha_at(&self, ell: usize) -> f64 {
        self.alpha_ell[&ell]
    }
}

fn check_common(k: usize, eps: f64) -> Result<(), ScheduleError> {
    if !(2..=crate::motif::MOTIF_CAP).contains(&k) {
        return Err(ScheduleError::KOutOfRange(k));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ScheduleError::EpsOutOfRange(eps));
    }
    Ok(())
}

fn check_p(p: f64) -> Result<(), ScheduleError> {
    // Standing assumption p <= 1/2; p = 0 and p = 1 are rejected here so the
    // log/denominator singularities never reach the testers.
    if !(p > 0.0 && p <= 0.5) {
        return Err(ScheduleError::POutOfRange(p));
    }
    Ok(())
}

fn choose2(x: usize) -> i32 {
    (x * (x - 1) / 2) as i32
}

/// Tolerance ladder eps * ratio^(k - ell - 1) for ell in 1..=k-1. The paper
/// defines levels 2..k-1; level 1 extends the same formula so the per-level
/// threshold variant has a value at ell = 2.
fn tolerance_ladder(k: usize, eps: f64, ratio: f64) -> BTreeMap<usize, f64> {
    (1..k)
        .map(|ell| (ell, eps * ratio.powi((k - ell - 1) as i32)))
        .collect()
}

/// Basic clique schedule:
/// `s_ell = ell^2 * 8192 / (p^(2ell-2) eps^2) * (3/2)^(2(k-ell)) * ln((6ell)^ell / (p^C(ell+2,2) eps))`.
pub fn clique_schedule(k: usize, p: f64, eps: f64) -> Result<ParamTable, ScheduleError> {
    check_common(k, eps)?;
    check_p(p)?;
    let eps_ell = tolerance_ladder(k, eps, 2.0 / 3.0);
    let mut alpha_ell = BTreeMap::new();
    alpha_ell.insert(2, eps * eps * p * p * (2.0f64 / 3.0).powi(2 * (k as i32 - 3)) / 128.0);
    for ell in 3..=k {
        let e_prev = eps_ell[&(ell - 1)];
        alpha_ell.insert(
            ell,
            p.powi(2 * ell as i32 - 2) * e_prev * e_prev / (4096.0 * (ell * ell) as f64),
        );
    }
    let mut s_ell = BTreeMap::new();
    for ell in 2..=k {
        let lead = (ell * ell) as f64 * 8192.0 / (p.powi(2 * ell as i32 - 2) * eps * eps);
        let ratio = (1.5f64).powi(2 * (k - ell) as i32);
        let log_arg = (6.0 * ell as f64).powi(ell as i32) / (p.powi(choose2(ell + 2)) * eps);
        s_ell.insert(ell, (lead * ratio * log_arg.ln()).ceil() as u64);
    }
    let s_star = s_ell[&k];
    Ok(ParamTable {
        family: ScheduleFamily::Basic,
        k,
        p: Some(p),
        eps,
        eps_ell,
        alpha_ell,
        s_ell,
        s_star,
        s_star_paper: s_star,
        c_const: None,
        delta_jumbled: None,
        r_ell: None,
        warnings: Vec::new(),
    })
}

/// Efficient schedule: `zeta`/`eta` ladders with the (4/7) ratio, the
/// `1200 C^2 ell^2 8192 / p^(5 ell)` sample sizes, and the jumbledness slack
/// `delta = p^(2k) / (12 C^2)`.
pub fn efficient_schedule(k: usize, p: f64, eps: f64, c: f64) -> Result<ParamTable, ScheduleError> {
    check_common(k, eps)?;
    check_p(p)?;
    if !(c > 0.0) {
        return Err(ScheduleError::BadConstant(c));
    }
    let zeta_ell = tolerance_ladder(k, eps, 4.0 / 7.0);
    let mut eta_ell = BTreeMap::new();
    eta_ell.insert(2, eps * eps * (4.0f64 / 7.0).powi(2 * (k as i32 - 3)) / 128.0);
    for ell in 3..=k {
        let z_prev = zeta_ell[&(ell - 1)];
        eta_ell.insert(ell, p.powi(2 * ell as i32 - 2) * z_prev * z_prev / 4096.0);
    }
    let mut s_ell = BTreeMap::new();
    for ell in 2..=k {
        let lead = 1200.0 * c * c * (ell * ell) as f64 * 8192.0 / (p.powi(5 * ell as i32) * eps * eps);
        let ratio = (7.0f64 / 4.0).powi(2 * (k - ell) as i32);
        let log_arg = (6.0 * ell as f64).powi(ell as i32) / (p.powi(choose2(ell + 2)) * eps);
        s_ell.insert(ell, (lead * ratio * log_arg.ln()).ceil() as u64);
    }
    let s_star = s_ell[&k];
    Ok(ParamTable {
        family: ScheduleFamily::Efficient,
        k,
        p: Some(p),
        eps,
        eps_ell: zeta_ell,
        alpha_ell: eta_ell,
        s_ell,
        s_star,
        s_star_paper: s_star,
        c_const: Some(c),
        delta_jumbled: Some(p.powi(2 * k as i32) / (12.0 * c * c)),
        r_ell: None,
        warnings: Vec::new(),
    })
}

/// General-distribution schedule driven by the density increments of `h`
/// under `dist`:
/// `s_ell = ell^4 * 4096 / (r_ell eps^2) * (3/2)^(2(k-ell)) * 8 * ln((6ell)^ell / (F_D(h) eps))`.
pub fn general_schedule(
    h: &Motif,
    dist: &DistributionTable,
    eps: f64,
) -> Result<ParamTable, ScheduleError> {
    let k = h.k();
    check_common(k, eps)?;
    let f_h = dist
        .density(h)
        .expect("distribution table covers the target motif");
    if f_h <= 0.0 {
        return Err(ScheduleError::ZeroDensity);
    }
    let mut r_ell = BTreeMap::new();
    for ell in 2..=k {
        let r = dist
            .r_ell(h, ell)
            .map_err(|_| ScheduleError::ZeroIncrement(ell))?;
        if r <= 0.0 {
            return Err(ScheduleError::ZeroIncrement(ell));
        }
        r_ell.insert(ell, r);
    }
    let mut warnings = Vec::new();
    for ell in 3..=k {
        if r_ell[&ell] > (4.0 / 9.0) * r_ell[&(ell - 1)] {
            warnings.push(format!(
                "density-increment ratio condition fails at level {ell}: r_{ell} > (4/9) r_{}",
                ell - 1
            ));
        }
    }
    let eps_ell = tolerance_ladder(k, eps, 2.0 / 3.0);
    let mut alpha_ell = BTreeMap::new();
    alpha_ell.insert(
        2,
        eps * eps * r_ell[&2] * (2.0f64 / 3.0).powi(2 * (k as i32 - 3)) / 128.0,
    );
    for ell in 3..=k {
        let e_prev = eps_ell[&(ell - 1)];
        alpha_ell.insert(
            ell,
            r_ell[&ell] * e_prev * e_prev / (4096.0 * (ell * ell * ell * ell) as f64),
        );
    }
    let mut s_ell = BTreeMap::new();
    for ell in 2..=k {
        let lead = (ell * ell * ell * ell) as f64 * 4096.0 / (r_ell[&ell] * eps * eps);
        let ratio = (1.5f64).powi(2 * (k - ell) as i32);
        let log_arg = (6.0 * ell as f64).powi(ell as i32) / (f_h * eps);
        s_ell.insert(ell, (lead * ratio * 8.0 * log_arg.ln()).ceil() as u64);
    }
    let s_star = s_ell[&k];
    Ok(ParamTable {
        family: ScheduleFamily::General,
        k,
        p: dist.gnp_p(),
        eps,
        eps_ell,
        alpha_ell,
        s_ell,
        s_star,
        s_star_paper: s_star,
        c_const: None,
        delta_jumbled: None,
        r_ell: Some(r_ell),
        warnings,
    })
}

/// `A_{s,ell} = C(s,ell) ell! / n^ell`: the factor converting a global
/// labeled count into the expected count inside a uniform size-`s` multiset.
pub fn a_s_ell(s: u64, ell: usize, n: usize) -> f64 {
    if ell as u64 > s {
        return 0.0;
    }
    // C(s, ell) * ell! = s (s-1) ... (s-ell+1)
    let mut v = 1.0f64;
    for i in 0..ell as u64 {
        v *= (s - i) as f64;
    }
    v / (n as f64).powi(ell as i32)
}

/// `E_{s,ell} = C(n,ell) ell! p^C(ell,2) A_{s,ell}`: expected labeled
/// ell-clique count in a size-`s` multiset when the graph is G(n, p).
pub fn e_s_ell(s: u64, ell: usize, n: usize, p: f64) -> f64 {
    crate::models::ordered_tuples(n, ell) * p.powi(choose2(ell)) * a_s_ell(s, ell, n)
}

/// Outcome of the with-high-probability bounded-differences bound: either a
/// probability bound or a report that the preconditions fail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum McdiarmidOutcome {
    Bound(f64),
    PreconditionViolated { q: f64, q_max: f64 },
}

/// Deviation-probability bound for a nonnegative function with bounded
/// differences `c_i` on a subset of measure `1 - q`:
/// `2q + 2 exp(-2 max(0, delta/2 - q * sum c)^2 / sum c^2)`, capped at 1.
/// Requires `q <= min(delta / (2 f_max), delta / (4 f_mean), 1/2)`.
pub fn mcdiarmid_bound(q: f64, delta: f64, c: &[f64], f_max: f64, f_mean: f64) -> McdiarmidOutcome {
    let q_max = (delta / (2.0 * f_max))
        .min(delta / (4.0 * f_mean))
        .min(0.5);
    if q > q_max {
        return McdiarmidOutcome::PreconditionViolated { q, q_max };
    }
    let sum_c: f64 = c.iter().sum();
    let sum_c2: f64 = c.iter().map(|x| x * x).sum();
    let num = (delta / 2.0 - q * sum_c).max(0.0);
    let bound = 2.0 * q + 2.0 * (-2.0 * num * num / sum_c2).exp();
    McdiarmidOutcome::Bound(bound.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjustment_factor_examples() {
        assert!((a_s_ell(4, 2, 10) - 0.12).abs() < 1e-12);
        assert!((e_s_ell(4, 2, 10, 0.5) - 5.4).abs() < 1e-12);
        // convention: ell > s gives 0
        assert_eq!(a_s_ell(2, 3, 10), 0.0);
    }

    #[test]
    fn vertex_level_expectation_is_s() {
        for (s, n, p) in [(10u64, 7usize, 0.3), (100, 50, 0.5), (3, 1000, 0.01)] {
            assert!((e_s_ell(s, 1, n, p) - s as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn clique_schedule_instances() {
        let t = clique_schedule(3, 0.5, 0.3).unwrap();
        // eps_2 = eps * (2/3)^0
        assert!((t.eps_at(2) - 0.3).abs() < 1e-12);
        // alpha_2 = eps^2 p^2 / 128
        assert!((t.alpha_at(2) - 0.0225 / 128.0).abs() < 1e-15);
        assert_eq!(t.s_star, t.s_ell[&3]);
    }

    #[test]
    fn schedule_rejects_degenerate_inputs() {
        assert!(matches!(
            clique_schedule(3, 0.7, 0.3),
            Err(ScheduleError::POutOfRange(_))
        ));
        assert!(matches!(
            clique_schedule(3, 0.0, 0.3),
            Err(ScheduleError::POutOfRange(_))
        ));
        assert!(matches!(
            clique_schedule(3, 0.3, 1.2),
            Err(ScheduleError::EpsOutOfRange(_))
        ));
        assert!(matches!(
            clique_schedule(1, 0.3, 0.2),
            Err(ScheduleError::KOutOfRange(1))
        ));
    }

    #[test]
    fn efficient_schedule_values() {
        let t = efficient_schedule(3, 0.5, 0.3, 1.0).unwrap();
        // zeta_{k-1} = eps
        assert!((t.eps_at(2) - 0.3).abs() < 1e-12);
        // delta = p^6 / 12
        assert!((t.delta_jumbled.unwrap() - 0.5f64.powi(6) / 12.0).abs() < 1e-12);
    }

    #[test]
    fn efficient_sample_sizes_dominate_basic() {
        let basic = clique_schedule(4, 0.3, 0.2).unwrap();
        let eff = efficient_schedule(4, 0.3, 0.2, 1.0).unwrap();
        for ell in 2..=4 {
            assert!(eff.s_ell[&ell] >= basic.s_ell[&ell]);
        }
    }

    #[test]
    fn tolerance_ladder_monotone_and_rates_nonincreasing() {
        for &k in &[3usize, 4, 5, 6] {
            for &p in &[0.1, 0.3, 0.5] {
                for &eps in &[0.1, 0.3] {
                    let t = clique_schedule(k, p, eps).unwrap();
                    for ell in 2..k {
                        assert!(t.eps_at(ell) > t.eps_at(ell - 1), "eps ladder not increasing");
                    }
                    for ell in 3..=k {
                        assert!(
                            t.alpha_at(ell) <= t.alpha_at(ell - 1) * (1.0 + 1e-12),
                            "alpha not nonincreasing at k={k} p={p} eps={eps} ell={ell}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mcdiarmid_examples() {
        match mcdiarmid_bound(0.0, 2.0, &[1.0, 1.0, 1.0, 1.0], 4.0, 2.0) {
            McdiarmidOutcome::Bound(b) => assert_eq!(b, 1.0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            mcdiarmid_bound(0.6, 2.0, &[1.0], 1.0, 0.5),
            McdiarmidOutcome::PreconditionViolated { .. }
        ));
        match mcdiarmid_bound(0.0, 20.0, &[1.0, 1.0, 1.0, 1.0], 4.0, 2.0) {
            McdiarmidOutcome::Bound(b) => {
                assert!((b - 2.0 * (-50.0f64).exp()).abs() < 1e-30);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mcdiarmid_monotonicity() {
        let c = [1.0, 2.0, 1.5];
        let at = |delta: f64| match mcdiarmid_bound(0.01, delta, &c, 10.0, 5.0) {
            McdiarmidOutcome::Bound(b) => b,
            _ => panic!("precondition should hold"),
        };
        let mut prev = at(1.0);
        for d in [2.0, 4.0, 8.0, 16.0] {
            let cur = at(d);
            assert!(cur <= prev + 1e-15);
            prev = cur;
        }
    }
}
