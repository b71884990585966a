//! Front end for `findim-core`: the `.alg` file format, module expressions,
//! reports and the command surface of the `findim` binary.

pub mod app;
pub mod cache;
pub mod commands;
pub mod expr;
pub mod report;
pub mod spec;
