//! Input parsers, report emission and run manifests.

pub mod manifest;
pub mod parse;
pub mod report;
pub mod tables;

pub use manifest::{sha256_hex, Report, RunManifest, TowerManifest, TowerManifestLevel};
pub use parse::{
    emit_complex, emit_graph, emit_permutation_rep, emit_surface, parse_complex, parse_graph, parse_permutation_rep,
    parse_surface, InputError, ParseError, ValidationError,
};
pub use report::{emit_report, to_csv, to_json, ReportFormat, Tabular};
pub use tables::{BettiRow, LueckRun};
