use simatch::analytics::constants::{c2, d2, gamma2, phi2, random_mean_intercept};
use simatch::analytics::{closed_form_constants, nv_asymptotics, Provenance};
use simatch::moments::{counts, moments, Algorithm, CountTable};

#[test]
fn count_constants_against_big_integers() {
    let n = 200;
    let f2 = CountTable::new(&counts(simatch::bipartite::Family::Fibonacci(2), n));
    let r = (f2.ln_count(n) - (n as f64 + 1.0) * phi2().ln()).exp();
    assert!((r - c2()).abs() < 1e-8, "{r}");
    let d = CountTable::new(&counts(simatch::bipartite::Family::Distance(2), n));
    let r = (d.ln_count(n) - (n as f64 + 1.0) * gamma2().ln()).exp();
    assert!((r - d2()).abs() < 1e-8, "{r}");
}

#[test]
fn nv_asymptotics_track_exact() {
    for alg in [Algorithm::RandomFib1, Algorithm::FixedFib1, Algorithm::GreedyFib1] {
        for n in [100, 150, 200, 500, 1000] {
            let exact = moments(alg, n).n_var;
            let asym = nv_asymptotics(alg, n).unwrap();
            assert!((asym / exact - 1.0).abs() <= 0.01, "{alg} n={n}: {asym} vs {exact}");
        }
    }
    assert!(nv_asymptotics(Algorithm::FixedFib2, 100).is_err());
}

#[test]
fn random_intercept_limit() {
    let a = moments(Algorithm::RandomFib1, 600).mean - 600.0 * closed_form_constants().pair(Algorithm::RandomFib1).unwrap().mu;
    assert!((a - random_mean_intercept()).abs() < 1e-9);
}

#[test]
fn provenance_table() {
    let rows = closed_form_constants().rows();
    assert!(rows.iter().any(|r| r.0 == "mu[fib2-fixed]" && r.2 == Provenance::SlopeDerived));
    assert!(rows.iter().any(|r| r.0 == "mu[dist2-fixed]"));
    assert!(rows.iter().any(|r| r.0 == "knuth_c" && (r.1 - 0.013143).abs() < 1e-5));
}
