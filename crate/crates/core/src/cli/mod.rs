//! Configuration, expression parsing and suite orchestration.

mod config;
mod parse;
mod suites;

pub use config::{budget_from_env, load_config, parse_config, EngineConfig, MorphismConfig, Truncation, BUDGET_ENV, SUITES};
pub use parse::parse_expression;
pub use suites::{injected_violations, Injection, list_checks, modular_inverse, run_suite, CheckFamily};
