//! Sequential importance sampling for perfect matchings of banded bipartite
//! graphs, with exact moment recurrences and analytic sample-size criteria.

pub mod analytics;
pub mod bipartite;
pub mod error;
pub mod experiments;
pub mod limits;
pub mod moments;
pub mod scalar;
pub mod sis;

pub use error::{Error, Result};
pub use limits::Limits;

/// Moment jets in double precision.
pub type Jet = moments::Jet2<f64>;
pub type Jet32 = moments::Jet2<f32>;
/// Exact probabilities and second moments.
pub type Exact = num_rational::BigRational;
