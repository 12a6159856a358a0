//! Scenario files, run orchestration, CSV output and the verification
//! suite behind the `phel` command.

pub mod modes;
pub mod record;
pub mod scenario;
pub mod suite;
pub mod table;

pub use modes::{RunError, Session, Verb};
pub use record::RunRecord;
pub use scenario::{Mode, Scenario, ScenarioError, DEFAULT_SCENARIO};
pub use suite::{run_suite, Section, DEFAULT_SEED};
pub use table::{read_report, ReportLine, Snapshot, Table};
