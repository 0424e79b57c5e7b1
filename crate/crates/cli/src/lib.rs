//! Command implementations behind the `thue-area` binary.

pub mod commands;
pub mod output;
pub mod plot;
