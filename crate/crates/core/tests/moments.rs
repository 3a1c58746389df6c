use std::f64::consts::LN_2;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use simatch::analytics::constants as k;
use simatch::bipartite::{BipartiteGraph, Family};
use simatch::moments::{
    exhaustive_moments, exhaustive_second_moment_exact, mean_variance_sequence, moment_jets, moment_jets_f32, moments,
    recurrences::dist2_star_coupled, second_moment_rational, Algorithm, CountTable, ExactAlg, GfId, JetAlg,
};
use simatch::sis::OrderPolicy;
use simatch::Limits;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[test]
fn normalized_value_is_one() {
    for alg in Algorithm::ALL {
        let jets = moment_jets(alg, 2000);
        for (m, j) in jets.iter().enumerate() {
            assert!((j.v0 - 1.0).abs() < 1e-9, "{alg} n={m}: {}", j.v0);
        }
    }
}

#[test]
fn recurrences_match_enumeration() {
    for alg in Algorithm::ALL {
        let max_n = if alg.family() == Family::Fibonacci(1) { 12 } else { 10 };
        let (pol, rule) = alg.sampler();
        for n in 0..=max_n {
            let g = BipartiteGraph::family(alg.family(), n).unwrap();
            let ex = exhaustive_moments(&g, pol.clone(), rule).unwrap();
            let rc = moments(alg, n);
            assert!(rel(rc.mean, ex.mean) < 1e-10, "{alg} n={n} mean {} vs {}", rc.mean, ex.mean);
            assert!((rc.variance - ex.variance).abs() < 1e-10, "{alg} n={n} var {} vs {}", rc.variance, ex.variance);
            assert!(rel(rc.n_var, ex.n_var) < 1e-10, "{alg} n={n} nv {} vs {}", rc.n_var, ex.n_var);
        }
    }
}

#[test]
fn exact_second_moments() {
    let lim = Limits::default();
    for alg in Algorithm::ALL.into_iter().filter(|a| !a.is_starred()) {
        let (pol, rule) = alg.sampler();
        for n in 0..=10 {
            let g = BipartiteGraph::family(alg.family(), n).unwrap();
            let want = exhaustive_second_moment_exact(&g, pol.clone(), rule).unwrap();
            assert_eq!(second_moment_rational(alg, n, &lim).unwrap(), want, "{alg} n={n}");
        }
    }
    assert!(second_moment_rational(Algorithm::FibStarFixed, 5, &lim).is_err());
    assert!(second_moment_rational(Algorithm::FixedFib1, 21, &lim).is_err());
}

#[test]
fn fixed_fib1_second_moment_series() {
    // coefficients of (1 - z) / (1 - 2z(1 + z))
    let want = [1, 1, 4, 10, 28, 76, 208];
    let seq = simatch::moments::sequence(&ExactAlg, Algorithm::FixedFib1, 6);
    for (x, w) in seq.iter().zip(want) {
        assert_eq!(*x, BigRational::from_integer(w.into()));
    }
    let r = moments(Algorithm::FixedFib1, 2);
    assert!((r.mean - LN_2).abs() < 1e-15);
    assert!(r.variance.abs() < 1e-15);
    assert!((r.second_moment_log - 4f64.ln()).abs() < 1e-14);
}

#[test]
fn table_one_exhaustive() {
    let g = BipartiteGraph::family(Family::Fibonacci(1), 4).unwrap();
    let r = exhaustive_moments(&g, OrderPolicy::FixedTopDown, simatch::sis::ChoiceRule::Uniform).unwrap();
    assert!((r.mean - 2.4 * LN_2).abs() < 1e-14);
    let r = exhaustive_moments(&g, OrderPolicy::Explicit(vec![1, 2, 0, 3]), simatch::sis::ChoiceRule::Uniform).unwrap();
    let want = (4.0 * 6f64.ln() + 3f64.ln()) / 5.0;
    assert!((r.mean - want).abs() < 1e-14);
    let t2 = exhaustive_second_moment_exact(&g, OrderPolicy::Explicit(vec![1, 2, 0, 3]), simatch::sis::ChoiceRule::Uniform).unwrap();
    assert_eq!(t2.to_f64().unwrap(), 27.0);
}

#[test]
fn starred_dist2_gf_matches_coupled_recurrence() {
    let n = 300;
    let c = simatch::moments::counts(Family::Distance(2), n);
    let table = CountTable::new(&c);
    let a = JetAlg::<f64>::new(&table);
    let coupled = dist2_star_coupled(&a, n);
    let gf = simatch::moments::gf_sequence(&a, GfId::Dist2StarFixed, n);
    for m in 0..=n {
        assert!((coupled[m].v1 - gf[m].v1).abs() < 1e-9 * (1.0 + gf[m].v1.abs()), "n={m}");
        assert!((coupled[m].v2 - gf[m].v2).abs() < 1e-9 * (1.0 + gf[m].v2.abs()), "n={m}");
    }
}

fn slopes(alg: Algorithm, n: usize) -> (f64, f64) {
    let s = mean_variance_sequence(alg, n);
    (s[n].0 - s[n - 1].0, s[n].1 - s[n - 1].1)
}

#[test]
fn slopes_at_500() {
    let cases = [
        (Algorithm::RandomFib1, k::mu_random(), k::sigma2_random()),
        (Algorithm::FixedFib1, k::mu_fixed(), k::sigma2_fixed()),
        (Algorithm::GreedyFib1, k::mu_greedy(), k::sigma2_greedy()),
        (Algorithm::RandomFib2, 0.6465, 0.0799),
        (Algorithm::FixedFib2, 0.6794, 0.1592),
        (Algorithm::GreedyFib2, 0.6365, 0.0514),
        (Algorithm::Dist2Fixed, 0.9053, 0.1147),
    ];
    for (alg, mu, s2) in cases {
        let (dm, dv) = slopes(alg, 500);
        let tol = 1e-4;
        assert!((dm - mu).abs() <= tol, "{alg}: mean slope {dm} vs {mu}");
        assert!((dv - s2).abs() <= tol, "{alg}: variance slope {dv} vs {s2}");
    }
}

#[test]
fn fixed_fib1_intercept() {
    let n = 400;
    let s = mean_variance_sequence(Algorithm::FixedFib1, n);
    let icpt = s[n].0 - k::mu_fixed() * n as f64;
    assert!((icpt - k::fixed_mean_intercept()).abs() < 1e-9, "{icpt}");
    let s = mean_variance_sequence(Algorithm::RandomFib1, n);
    let icpt = s[n].0 - k::mu_random() * n as f64;
    assert!((icpt - k::random_mean_intercept()).abs() < 1e-9, "{icpt}");
}

#[test]
fn starred_variance_bounded() {
    for (alg, growth) in [
        (Algorithm::FibStarFixed, k::phi()),
        (Algorithm::FibStarGreedy, k::phi()),
        (Algorithm::Fib2StarFixed, k::phi2()),
        (Algorithm::Dist2StarFixed, k::gamma2()),
    ] {
        let s = mean_variance_sequence(alg, 1600);
        assert!(s[1600].1 <= s[100].1 + 0.5, "{alg}");
        assert!((s[1600].0 / 1600.0 - growth.ln()).abs() < 1e-2, "{alg}");
    }
}

#[test]
fn variance_grows_for_uniform_samplers() {
    for alg in Algorithm::ALL.into_iter().filter(|a| !a.is_starred()) {
        let s = mean_variance_sequence(alg, 300);
        // greedy variances alternate with the parity of n, so only check growth over two steps
        for m in 2..=300 {
            assert!(s[m].1 >= -1e-9 && s[m].1 + 1e-9 >= s[m - 2].1, "{alg} n={m}");
        }
    }
}

#[test]
fn single_precision_path() {
    let j32 = moment_jets_f32(Algorithm::GreedyFib1, 100);
    let j64 = moment_jets(Algorithm::GreedyFib1, 100);
    assert!((j32[100].v1 as f64 - j64[100].v1).abs() < 1e-3 * j64[100].v1.abs().max(1.0));
}
