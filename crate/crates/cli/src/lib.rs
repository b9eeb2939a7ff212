//! Query grammar, dispatch and output records for the `lcacalc` binary.

pub mod query;
pub mod record;
pub mod run;

pub use query::{parse_query, Query, QueryError};
pub use record::{CitationEntry, Kind, Record, TraceEntry};
pub use run::{build_engine, run, CliError, EngineOptions, Outcome};
