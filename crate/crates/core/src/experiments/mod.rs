//! Monte Carlo estimation, statistic estimation and table reproduction.

pub mod accum;
pub mod clt;
pub mod estimate;
pub mod tables;

pub use clt::{clt_run, uniform_log_weights};
pub use estimate::{estimate_count, estimate_statistic, sample_rng, EstimateReport, StatisticEstimate, CHUNK};
pub use tables::{reproduce_table, sci4, star_variance_sweep, SweepPoint, Table, TableMode};
