//! Dominant singularities of the t = 1 generating functions on F_{n,1}
//! and the resulting N^v asymptotics.

use serde::Serialize;

use super::constants::phi;
use super::roots::{adaptive_simpson, bisect_newton, poly};
use crate::error::{Error, Result};
use crate::moments::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Singularities {
    pub z_r: f64,
    pub residue_r: f64,
    pub z_f: f64,
    pub z_3: f64,
}

/// h(z) = e^{(1+z)^2} (2/(3e) - int_1^{1+z} e^{-u^2} du); Y_r = (1/3)/(1 - h).
pub fn random_bracket(z: f64) -> f64 {
    let int = adaptive_simpson(&|u: f64| (-u * u).exp(), 1.0, 1.0 + z, 1e-12);
    (1.0 + z).powi(2).exp() * (2.0 / (3.0 * std::f64::consts::E) - int)
}

/// Y_r(z) for the random order sampler (valid for |z| < z_r).
pub fn random_y(z: f64) -> f64 {
    1.0 / (3.0 * (1.0 - random_bracket(z)))
}

pub fn z_f() -> f64 {
    (3f64.sqrt() - 1.0) / 2.0
}

/// Smallest positive root of 1 - 3z^2(2 + z).
pub fn z_3() -> f64 {
    bisect_newton(|z| poly(&[1.0, 0.0, -6.0, -3.0], z), 0.0, 1.0, 1e-15).expect("bracketed")
}

pub fn z_r() -> Result<f64> {
    bisect_newton(|z| random_bracket(z) - 1.0, 0.0, 1.0, 1e-13)
}

pub fn relvar_singularities() -> Result<Singularities> {
    let z_r = z_r()?;
    // h' = 2(1+z)h - 1, so h'(z_r) = 1 + 2 z_r
    let residue_r = 1.0 / (3.0 * (1.0 + 2.0 * z_r));
    Ok(Singularities { z_r, residue_r, z_f: z_f(), z_3: z_3() })
}

/// [z^n] Y_g ~ c_g z_3^{-(n+1)} with c_g = U(z_3) / (-V'(z_3)),
/// Y_g = (1 + z - 2z^2) / (1 - 6z^2 - 3z^3).
pub fn greedy_residue() -> f64 {
    let z = z_3();
    poly(&[1.0, 1.0, -2.0], z) / (12.0 * z + 9.0 * z * z)
}

/// log N^v from the singularity expansions (F_{n,1} ~ phi^{n+1}/sqrt5).
pub fn log_nv_asymptotics(alg: Algorithm, n: usize) -> Result<f64> {
    let lp2 = 2.0 * phi().ln();
    let m = n as f64;
    match alg {
        Algorithm::RandomFib1 => {
            let s = relvar_singularities()?;
            Ok((5.0 * s.residue_r).ln() - (m + 1.0) * (s.z_r.ln() + lp2))
        }
        Algorithm::FixedFib1 => Ok((5.0 / 2.0f64).ln() - lp2 - m * (z_f().ln() + lp2)),
        Algorithm::GreedyFib1 => Ok((5.0 * greedy_residue()).ln() - (m + 1.0) * (z_3().ln() + lp2)),
        other => Err(Error::Unsupported(format!("no singularity analysis for {other}"))),
    }
}

pub fn nv_asymptotics(alg: Algorithm, n: usize) -> Result<f64> {
    log_nv_asymptotics(alg, n).map(f64::exp)
}
