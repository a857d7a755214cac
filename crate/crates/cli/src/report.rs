use serde::Serialize;
use serde_json::Value;

/// One line of machine-readable output per invocation.
///
/// Numbers are written in shortest round-trip form, so they parse back to
/// the identical `f64`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub argv: Vec<String>,
    pub status: String,
    pub inputs: Value,
    pub outputs: Value,
    pub tolerances: Value,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("reports contain only finite numbers")
    }
}
