//! Scenario runner, recipe grammar and ideal file format for `atlas`.

pub mod experiments;
pub mod io;
pub mod recipes;
pub mod report;
pub mod scenarios;
