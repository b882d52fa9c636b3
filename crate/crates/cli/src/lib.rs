//! The `torsionlab` script language: parsing, execution, JSON reports and
//! a persistent computation cache.

pub mod cache;
pub mod exec;
pub mod report;
pub mod suite;
pub mod syntax;

pub use exec::{execute, execute_text, Config};
pub use report::{RunReport, Status};
pub use syntax::{parse_script, Script};
