//! Behavioral invariants of the tester family: determinism, query
//! accounting, decision-layer monotonicity, and filter composability.

use motifqc_core::counting::count_cliques;
use motifqc_core::models::{sample, ModelSpec};
use motifqc_core::motif::Motif;
use motifqc_core::multiset::VertexMultiset;
use motifqc_core::oracle::{QueryBudget, QueryOracle};
use motifqc_core::params::e_s_ell;
use motifqc_core::seeds::derive_rng;
use motifqc_core::testers::{
    build, stage, CliqueQuality, CliqueQualityEfficient, DistConfig, InducedMotifQualityEfficient,
    MotifQuality, QualityTester, TesterSpec,
};
use motifqc_core::Graph;

#[test]
fn empty_graph_rejected_at_level_two() {
    let g = Graph::empty(100);
    let tester = CliqueQuality::new(3, 0.5, 0.4).unwrap().with_s_star(50);
    let mut oracle = QueryOracle::new(&g);
    let mut rng = derive_rng(1, &[]);
    let v = tester.run(&mut oracle, &mut rng).unwrap();
    assert!(!v.is_accept());
    assert_eq!(v.stage.as_deref(), Some(stage::COUNT_CHECK));
    let check = v.failing_check.unwrap();
    assert_eq!(check.level, 2);
    assert_eq!(check.observed, 0.0);
}

#[test]
fn complete_graph_rejected_at_level_two() {
    let g = Graph::complete(200);
    let tester = CliqueQuality::new(3, 0.3, 0.4).unwrap().with_s_star(60);
    let mut oracle = QueryOracle::new(&g);
    let mut rng = derive_rng(2, &[]);
    let v = tester.run(&mut oracle, &mut rng).unwrap();
    assert!(!v.is_accept());
    assert_eq!(v.failing_check.unwrap().level, 2);
}

#[test]
fn star_graph_rejected_at_jumbledness_degree_check() {
    let g = Graph::star(2000);
    let tester = CliqueQualityEfficient::new(3, 0.5, 0.4, 1.0)
        .unwrap()
        .with_s_star(200);
    let mut oracle = QueryOracle::new(&g);
    let mut rng = derive_rng(3, &[]);
    let v = tester.run(&mut oracle, &mut rng).unwrap();
    assert!(!v.is_accept());
    assert_eq!(v.stage.as_deref(), Some(stage::JUMBLEDNESS_DEGREE));
}

#[test]
fn complete_graph_rejected_at_jumbledness_on_tiny_delta() {
    let g = Graph::complete(2000);
    let tester = CliqueQualityEfficient::new(3, 0.5, 0.4, 1.0)
        .unwrap()
        .with_s_star(200);
    let mut oracle = QueryOracle::new(&g);
    let mut rng = derive_rng(4, &[]);
    let v = tester.run(&mut oracle, &mut rng).unwrap();
    assert!(!v.is_accept());
    assert_eq!(v.stage.as_deref(), Some(stage::JUMBLEDNESS_DEGREE));
}

#[test]
fn determinism_across_runs() {
    let g = sample(&ModelSpec::Gnp { n: 500, p: 0.3 }, 11).unwrap();
    let spec = TesterSpec::Clique {
        k: 3,
        p: 0.3,
        eps: 0.4,
        s_star: Some(200),
        per_level_thresholds: false,
    };
    let tester = build(&spec).unwrap();
    let mut verdicts = Vec::new();
    for _ in 0..3 {
        let mut oracle = QueryOracle::new(&g);
        let mut rng = derive_rng(77, &[]);
        verdicts.push(tester.run(&mut oracle, &mut rng).unwrap());
    }
    assert!(verdicts[0].same_outcome(&verdicts[1]));
    assert!(verdicts[1].same_outcome(&verdicts[2]));
}

#[test]
fn clique_tester_charges_exactly_pairs_of_distinct() {
    let g = sample(&ModelSpec::Gnp { n: 300, p: 0.3 }, 5).unwrap();
    let tester = CliqueQuality::new(3, 0.3, 0.4).unwrap();
    let ms = VertexMultiset::new(vec![0, 5, 5, 9, 22, 22, 22, 40]);
    let mut oracle = QueryOracle::new(&g);
    let v = tester.test_with_multiset(&mut oracle, &ms).unwrap();
    // 5 distinct vertices -> C(5,2) = 10 matrix queries, nothing else.
    assert_eq!(v.queries.matrix, 10);
    assert_eq!(v.queries.list, 0);
    assert_eq!(v.queries.degree, 0);
}

#[test]
fn widening_eps_never_turns_accept_into_reject() {
    // Fixed sample, widening the tolerance can only flip reject -> accept.
    let g = sample(&ModelSpec::Gnp { n: 400, p: 0.35 }, 9).unwrap();
    let mut rng = derive_rng(13, &[]);
    for trial in 0..20u64 {
        let _ = trial;
        let ms = VertexMultiset::sample(&mut rng, g.n(), 120);
        let narrow = CliqueQuality::new(3, 0.3, 0.2).unwrap();
        let wide = CliqueQuality::new(3, 0.3, 0.6).unwrap();
        let mut o1 = QueryOracle::new(&g);
        let mut o2 = QueryOracle::new(&g);
        let v_narrow = narrow.test_with_multiset(&mut o1, &ms).unwrap();
        let v_wide = wide.test_with_multiset(&mut o2, &ms).unwrap();
        if v_narrow.is_accept() {
            assert!(v_wide.is_accept(), "widening eps flipped accept to reject");
        }
    }
}

#[test]
fn full_cover_multiset_reproduces_global_counts_and_decision() {
    let n = 120;
    let p = 0.3;
    let g = sample(&ModelSpec::Gnp { n, p }, 21).unwrap();
    let tester = CliqueQuality::new(3, p, 0.4).unwrap();
    let ms = VertexMultiset::full_cover(n);
    let mut oracle = QueryOracle::new(&g);
    let v = tester.test_with_multiset(&mut oracle, &ms).unwrap();
    // Direct global comparison: C_ell(G) against (1 +- eps/2) E_{n,ell}.
    let mut direct_accept = true;
    for ell in 2..=3 {
        let observed = count_cliques(&g, ell).unwrap() as f64;
        let expected = e_s_ell(n as u64, ell, n, p);
        if observed < 0.8 * expected || observed > 1.2 * expected {
            direct_accept = false;
        }
    }
    assert_eq!(v.is_accept(), direct_accept);
}

#[test]
fn pre_filter_does_not_change_second_decision() {
    // Running one tester before another on a shared oracle leaves the second
    // decision untouched on graphs the filter accepts.
    let g = sample(&ModelSpec::Gnp { n: 800, p: 0.3 }, 31).unwrap();
    let clique = CliqueQuality::new(3, 0.3, 0.4).unwrap().with_s_star(300);
    let motif = MotifQuality::new(Motif::path(3), DistConfig::Gnp { p: 0.3 }, 0.4)
        .unwrap()
        .with_s_star(300);

    // standalone run of the second tester
    let mut o_alone = QueryOracle::new(&g);
    let mut rng_motif = derive_rng(500, &[]);
    let alone = motif.run(&mut o_alone, &mut rng_motif).unwrap();

    // composed run under a shared budget
    let mut o_shared = QueryOracle::with_budget(&g, QueryBudget::total_cap(2_000_000));
    let mut rng_clique = derive_rng(400, &[]);
    let first = clique.run(&mut o_shared, &mut rng_clique).unwrap();
    assert!(first.is_accept(), "pre-filter should accept this draw");
    let mut rng_motif2 = derive_rng(500, &[]);
    let second = motif.run(&mut o_shared, &mut rng_motif2).unwrap();

    assert_eq!(alone.decision, second.decision);
    assert_eq!(alone.stage, second.stage);
    assert_eq!(alone.failing_check, second.failing_check);
}

#[test]
fn motif_tester_rejects_empty_graph_on_edge_pattern() {
    let g = Graph::empty(200);
    let tester = MotifQuality::new(Motif::edge(), DistConfig::Gnp { p: 0.5 }, 0.4)
        .unwrap()
        .with_s_star(60);
    let mut oracle = QueryOracle::new(&g);
    let mut rng = derive_rng(6, &[]);
    let v = tester.run(&mut oracle, &mut rng).unwrap();
    assert!(!v.is_accept());
    assert_eq!(v.failing_check.unwrap().level, 2);
}

#[test]
fn induced_efficient_inner_run_structure() {
    let tri = InducedMotifQualityEfficient::new(Motif::complete(3), 0.3, 0.4, 1.0).unwrap();
    assert_eq!(tri.inner_targets(), vec![Motif::complete(3)]);
    assert!((tri.inner_eps() - 0.4 / 64.0).abs() < 1e-15);

    let p3 = InducedMotifQualityEfficient::new(Motif::path(3), 0.3, 0.4, 1.0).unwrap();
    assert_eq!(
        p3.inner_targets(),
        vec![Motif::path(3), Motif::complete(3)]
    );
}

#[test]
fn budget_error_reports_counters() {
    let g = sample(&ModelSpec::Gnp { n: 2000, p: 0.3 }, 3).unwrap();
    let tester = CliqueQuality::new(3, 0.3, 0.4).unwrap().with_s_star(600);
    let mut oracle = QueryOracle::with_budget(&g, QueryBudget::total_cap(20));
    let mut rng = derive_rng(8, &[]);
    let err = tester.run(&mut oracle, &mut rng).unwrap_err();
    assert!(err.is_budget_exhausted());
}
