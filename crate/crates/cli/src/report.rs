//! The analysis report and its text and JSON renderings.

use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Solutions of the twisting equation for the report's `Q̃`: the particular
/// solution plus a kernel basis, counted as a list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistingSummary {
    pub count: usize,
    pub representative: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    /// `pass`, `fail` or `n/a`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Fields after `tames` are `None` when the pipeline stopped early.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input_digest: String,
    pub jacobi: bool,
    pub omega_closed: Option<bool>,
    pub tames: Option<bool>,
    pub jplus_integrable: Option<bool>,
    /// Images `J₋(e_1), …, J₋(e_n)`.
    pub jminus_table: Option<Vec<String>>,
    pub jminus_integrable: Option<bool>,
    pub skt: Option<bool>,
    pub generalized_pair_valid: Option<bool>,
    pub q_rank: Option<usize>,
    pub imq_involutive: Option<bool>,
    pub imq_subalgebra: Option<bool>,
    #[serde(rename = "schouten_QQ")]
    pub schouten_qq: Option<String>,
    pub twisting_solutions: Option<TwistingSummary>,
    /// `yes`, `no`, or the name of the only slot action admitting solutions.
    pub beta2_twisted: Option<String>,
    #[serde(rename = "frakN_zero")]
    pub frak_n_zero: Option<bool>,
    pub identity_suite: Vec<SuiteEntry>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn identities_pass(&self) -> bool {
        self.identity_suite.iter().all(|e| e.status != "fail")
    }
}

/// Extra values shown in the text report only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Details {
    pub lines: Vec<(String, String)>,
}

fn show<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn render_text(path: &str, r: &AnalysisReport, details: &Details) -> String {
    let mut rows: Vec<(String, String)> = vec![
        ("file".into(), path.into()),
        ("input digest".into(), r.input_digest.clone()),
        ("jacobi".into(), r.jacobi.to_string()),
        ("omega closed".into(), show(&r.omega_closed)),
        ("tames".into(), show(&r.tames)),
        ("J+ integrable".into(), show(&r.jplus_integrable)),
    ];
    if let Some(t) = &r.jminus_table {
        for (i, img) in t.iter().enumerate() {
            rows.push((if i == 0 { "J- table".into() } else { String::new() }, format!("e{} -> {img}", i + 1)));
        }
    }
    rows.extend([
        ("J- integrable".into(), show(&r.jminus_integrable)),
        ("SKT".into(), show(&r.skt)),
        ("generalized pair valid".into(), show(&r.generalized_pair_valid)),
        ("rank Q".into(), show(&r.q_rank)),
        ("Im Q involutive".into(), show(&r.imq_involutive)),
        ("Im Q subalgebra".into(), show(&r.imq_subalgebra)),
        ("[Q~, Q~]".into(), show(&r.schouten_qq)),
    ]);
    if let Some(t) = &r.twisting_solutions {
        rows.push(("twisting solutions".into(), t.count.to_string()));
        rows.push(("  representative".into(), t.representative.clone().unwrap_or_else(|| "-".into())));
    }
    rows.push(("beta2 twisted".into(), show(&r.beta2_twisted)));
    rows.push(("frakN zero".into(), show(&r.frak_n_zero)));
    rows.extend(details.lines.iter().cloned());
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    if !r.identity_suite.is_empty() {
        let _ = writeln!(out, "identity suite");
        let w = r.identity_suite.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
        for e in &r.identity_suite {
            let _ = write!(out, "  {:<w$}  {}", e.name, e.status);
            if let Some(wit) = &e.witness {
                let _ = write!(out, "  witness {wit}");
            }
            out.push('\n');
        }
    }
    out
}
