//! Sample-size comparison tables and the almost-perfect variance sweep.

use serde::Serialize;

use crate::analytics::criteria::asymptotic_log_n_star;
use crate::analytics::singular::log_nv_asymptotics;
use crate::bipartite::Family;
use crate::error::{Error, Result};
use crate::moments::{counts, mean_variance_sequence, moments, Algorithm, CountTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableMode {
    /// exact finite-n moments
    Exact,
    /// mu n + sigma sqrt(n) and the singularity forms of N^v
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowKind {
    NStar(Algorithm),
    NVar(Algorithm),
    NSeven,
    Count(Family),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub label: &'static str,
    pub kind: RowKind,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub id: u8,
    pub mode: TableMode,
    pub ns: Vec<usize>,
    pub rows: Vec<Row>,
}

/// 4 significant digits, e.g. 1.937e2.
pub fn sci4(x: f64) -> String {
    format!("{x:.3e}")
}

impl Table {
    pub fn row(&self, label: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut head = vec!["n".to_string()];
        head.extend(self.ns.iter().map(usize::to_string));
        w.write_record(&head).expect("in-memory write");
        for r in &self.rows {
            let mut rec = vec![r.label.to_string()];
            rec.extend(r.values.iter().map(|v| sci4(*v)));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flushed")).expect("utf8")
    }
}

fn layout(id: u8) -> Result<(Vec<usize>, Vec<(&'static str, RowKind)>)> {
    use Algorithm::*;
    use RowKind::*;
    Ok(match id {
        2 => (
            vec![200, 300, 500, 1000],
            vec![
                ("N*_r", NStar(RandomFib1)),
                ("N^v_r", NVar(RandomFib1)),
                ("N*_f", NStar(FixedFib1)),
                ("N^v_f", NVar(FixedFib1)),
                ("N*_g", NStar(GreedyFib1)),
                ("N^v_g", NVar(GreedyFib1)),
                ("n^7", NSeven),
                ("F_{n,1}", Count(Family::Fibonacci(1))),
            ],
        ),
        3 => (
            vec![200, 300, 500, 1000],
            vec![
                ("N*_{r,2}", NStar(RandomFib2)),
                ("N*_{f,2}", NStar(FixedFib2)),
                ("N*_{g,2}", NStar(GreedyFib2)),
                ("n^7", NSeven),
                ("F_{n,2}", Count(Family::Fibonacci(2))),
            ],
        ),
        4 => (
            vec![200, 300, 400, 500],
            vec![("N*_{f,2}", NStar(Dist2Fixed)), ("n^7", NSeven), ("D_{n,2}", Count(Family::Distance(2)))],
        ),
        other => return Err(Error::InvalidParameter(format!("no table {other}; expected 2, 3 or 4"))),
    })
}

pub fn reproduce_table(id: u8, mode: TableMode) -> Result<Table> {
    let (ns, rows) = layout(id)?;
    let nmax = *ns.iter().max().expect("nonempty");
    let mut out = Vec::new();
    for (label, kind) in rows {
        let values = match kind {
            RowKind::NStar(alg) => {
                let table = CountTable::new(&counts(alg.family(), nmax));
                ns.iter()
                    .map(|&n| match mode {
                        TableMode::Exact => Ok(moments(alg, n).n_star),
                        TableMode::Asymptotic => asymptotic_log_n_star(alg, n, table.ln_count(n)).map(f64::exp),
                    })
                    .collect::<Result<Vec<f64>>>()?
            }
            RowKind::NVar(alg) => ns
                .iter()
                .map(|&n| match mode {
                    TableMode::Exact => Ok(moments(alg, n).n_var),
                    TableMode::Asymptotic => log_nv_asymptotics(alg, n).map(f64::exp),
                })
                .collect::<Result<Vec<f64>>>()?,
            RowKind::NSeven => ns.iter().map(|&n| (n as f64).powi(7)).collect(),
            RowKind::Count(fam) => {
                let table = CountTable::new(&counts(fam, nmax));
                ns.iter().map(|&n| table.ln_count(n).exp()).collect()
            }
        };
        out.push(Row { label, kind, values });
    }
    Ok(Table { id, mode, ns, rows: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub mean_per_n: f64,
}

/// Exact Var_u[log T*] (and E_u log T* / n) of a tuned sampler over a grid of n.
pub fn star_variance_sweep(alg: Algorithm, ns: &[usize]) -> Result<Vec<SweepPoint>> {
    if !alg.is_starred() {
        return Err(Error::InvalidParameter(format!("{alg} is not a tuned sampler")));
    }
    let nmax = ns.iter().copied().max().unwrap_or(0);
    let seq = mean_variance_sequence(alg, nmax);
    Ok(ns
        .iter()
        .map(|&n| SweepPoint {
            n,
            mean: seq[n].0,
            variance: seq[n].1,
            mean_per_n: if n == 0 { 0.0 } else { seq[n].0 / n as f64 },
        })
        .collect())
}
