//! Sequential importance samplers: order policies, choice rules, decision
//! traces and exact path probabilities.

mod band;
mod driver;
pub mod exact;
pub mod fib;
mod generic;
pub mod policy;
mod sampler;
pub mod trace;

pub use exact::{fib_blocks, path_probability, LogProb, PathValue};
pub use fib::{cycle_options, cycle_options_fib2, greedy_fib2_menu, greedy_next_index, FibState};
pub use policy::{star_rule_tables, ChoiceRule, OrderPolicy, StarTables};
pub use sampler::{sample, Sampler};
pub use trace::{DecisionTrace, Move, Step, StepProb};
