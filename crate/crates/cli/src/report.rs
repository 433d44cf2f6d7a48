use serde::Serialize;

/// JSON report emitted by `solve` and `verify`.
#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<&'static str>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    pub wall_time_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    /// Per-state win probabilities (kvoting-lp).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betas: Option<Vec<StateBeta>>,
    /// Column-generation rounds (colgen solvers).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

#[derive(Serialize)]
pub struct StateBeta {
    pub state: String,
    pub beta: f64,
}

#[derive(Serialize)]
pub struct Verification {
    pub persuasive: bool,
    pub worst_slack: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recomputed_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_matches_claim: Option<bool>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            solver: None,
            status: "ok".to_string(),
            value: None,
            wall_time_ms: 0,
            scheme_file: None,
            verification: None,
            betas: None,
            iterations: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
