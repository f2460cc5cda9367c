//! Session language, command dispatch and JSON reports for `dmod`.

pub mod lexer;
pub mod parser;
pub mod report;
pub mod run;

pub use parser::{parse, parse_element, ParseError, ParseErrorKind, SessionInput};
pub use run::{execute, Options, Outcome};

/// Serializes a report with sorted keys, one document per run.
pub fn render(report: &serde_json::Value) -> String {
    serde_json::to_string_pretty(report).expect("reports are plain JSON values")
}

/// The report with the timing field zeroed, for byte comparisons.
pub fn without_timing(report: &serde_json::Value) -> serde_json::Value {
    let mut r = report.clone();
    if let Some(obj) = r.as_object_mut() {
        obj.insert("timing_ms".into(), serde_json::json!(0));
    }
    r
}
