//! Randomized law suites, the expression language and the fuzzer behind the
//! command-line tool.

pub mod dsl;
pub mod fuzz;
pub mod json;
pub mod sample;
pub mod suites;
