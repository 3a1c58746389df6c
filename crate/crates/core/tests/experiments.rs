use simatch::bipartite::{count_exact, BipartiteGraph, Family};
use simatch::experiments::{estimate_count, estimate_statistic, reproduce_table, star_variance_sweep, TableMode};
use simatch::moments::{moments, Algorithm};
use simatch::sis::{ChoiceRule, OrderPolicy};

fn fib1(n: usize) -> BipartiteGraph {
    BipartiteGraph::family(Family::Fibonacci(1), n).unwrap()
}

#[test]
fn estimates_are_worker_independent() {
    let g = fib1(50);
    let a = estimate_count(&g, OrderPolicy::UniformRandom, ChoiceRule::Uniform, 5000, 7, 1).unwrap();
    for w in [2, 4, 8] {
        let b = estimate_count(&g, OrderPolicy::UniformRandom, ChoiceRule::Uniform, 5000, 7, w).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.log_estimate.to_bits(), b.log_estimate.to_bits());
    }
    let c = estimate_count(&g, OrderPolicy::UniformRandom, ChoiceRule::Uniform, 5000, 8, 1).unwrap();
    assert_ne!(a.log_estimate, c.log_estimate);
}

#[test]
fn trivial_graph_is_exact() {
    let g = fib1(1);
    let r = estimate_count(&g, OrderPolicy::FixedTopDown, ChoiceRule::Uniform, 100, 1, 1).unwrap();
    assert_eq!(r.estimate, 1.0);
    assert_eq!(r.var_log_t, 0.0);
    assert_eq!(r.rel_stderr, 0.0);
}

#[test]
fn fixed_order_n10() {
    let g = fib1(10);
    let r = estimate_count(&g, OrderPolicy::FixedTopDown, ChoiceRule::Uniform, 1_000_000, 11, 4).unwrap();
    let se = r.rel_stderr * 89.0;
    assert!((r.estimate - 89.0).abs() <= 3.0 * se, "{} +- {se}", r.estimate);
}

#[test]
fn statistic_forms_agree() {
    let g = fib1(60);
    let s = estimate_statistic(&g, OrderPolicy::GreedyFib1, ChoiceRule::Uniform, |m| m.pi[30] == 30, 4000, 5, 2)
        .unwrap();
    assert!((s.log_count - (s.ratio.ln() + s.log_total)).abs() < 1e-12);
    let all = estimate_statistic(&g, OrderPolicy::GreedyFib1, ChoiceRule::Uniform, |_| true, 4000, 5, 2).unwrap();
    assert_eq!(all.ratio, 1.0);
    assert_eq!(all.hits, 4000);
    assert_eq!(all.log_total, s.log_total);
}

#[test]
fn fixed_point_frequency() {
    let g = fib1(200);
    let s = estimate_statistic(&g, OrderPolicy::GreedyFib1, ChoiceRule::Uniform, |m| m.pi[100] == 100, 40_000, 9, 4)
        .unwrap();
    assert!((s.ratio - 1.0 / 5f64.sqrt()).abs() < 0.02, "{}", s.ratio);
}

#[test]
fn dist2_first_transposition_frequency() {
    let g = BipartiteGraph::family(Family::Distance(2), 120).unwrap();
    let s = estimate_statistic(&g, OrderPolicy::FixedTopDown, ChoiceRule::Dist2StarFixed, |m| m.pi[0] == 1, 20_000, 2, 4)
        .unwrap();
    assert!((s.ratio - 0.3213).abs() < 0.02, "{}", s.ratio);
}

#[test]
fn greedy_n200_estimate() {
    let g = fib1(200);
    let exact = count_exact(&g).unwrap();
    let truth = simatch::scalar::ln_biguint(&exact);
    let r = estimate_count(&g, OrderPolicy::GreedyFib1, ChoiceRule::Uniform, 50_000, 2024, 4).unwrap();
    let predicted = ((moments(Algorithm::GreedyFib1, 200).n_var - 1.0) / 50_000.0).sqrt();
    assert!(((r.log_estimate - truth).exp() - 1.0).abs() <= 3.0 * predicted);
    assert!(!r.unreliable);
}

#[test]
fn tables_have_paper_layout() {
    let t = reproduce_table(2, TableMode::Exact).unwrap();
    assert_eq!(t.ns, vec![200, 300, 500, 1000]);
    let csv = t.to_csv();
    let first: Vec<&str> = csv.lines().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(first, ["n", "N*_r", "N^v_r", "N*_f", "N^v_f", "N*_g", "N^v_g", "n^7", "\"F_{n"]);
    assert!(csv.contains("\"F_{n,1}\",4.540e41"));
    let t4 = reproduce_table(4, TableMode::Asymptotic).unwrap();
    assert_eq!(t4.ns, vec![200, 300, 400, 500]);
    assert!(reproduce_table(5, TableMode::Exact).is_err());
}

#[test]
fn sweep_bounded() {
    let ns = [100, 200, 400, 800, 1600];
    for (alg, g) in [(Algorithm::FibStarFixed, 5f64.sqrt() * 0.5 + 0.5), (Algorithm::Dist2StarFixed, simatch::analytics::constants::gamma2())] {
        let s = star_variance_sweep(alg, &ns).unwrap();
        assert!(s[4].variance <= s[0].variance + 0.5);
        assert!((s[4].mean_per_n - g.ln()).abs() < 1e-2);
    }
    assert!(star_variance_sweep(Algorithm::FixedFib1, &ns).is_err());
}
