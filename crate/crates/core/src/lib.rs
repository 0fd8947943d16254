pub mod analysis;
pub mod cml;
pub mod diagnostic;
pub mod exec;
pub mod model;
pub mod report;
pub mod synth;
pub mod wellformed;

pub use diagnostic::{DiagCode, Diagnostic, Severity, SourceSpan};
pub use exec::ExecMode;
