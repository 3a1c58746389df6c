pub mod clt;
pub mod constants;
pub mod criteria;
pub mod renewal;
pub mod roots;
pub mod singular;

pub use clt::{clt_diagnostics, CltDiagnostics};
pub use constants::{closed_form_constants, AnalyticConstants, PairConstants, Provenance};
pub use criteria::{chebyshev_tail, crossover_vs_n7, sample_size_criteria, CountAsymptotic};
pub use renewal::renewal_constants;
pub use singular::{nv_asymptotics, relvar_singularities, Singularities};
