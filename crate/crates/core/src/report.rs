//! Machine-readable command reports: one verdict line per check, input
//! digests, the tolerance configuration echoed back, and certificates either
//! digested or in full.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ToleranceConfig;
use crate::doc::MatrixPayload;
use crate::maps::Certificate;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictLine {
    pub check: String,
    /// "pass", "violated", "inconclusive", or "info".
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub verdicts: Vec<VerdictLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<serde_json::Value>,
    pub config: ToleranceConfig,
    pub runtime_ms: u128,
    /// Full certificates, only when requested via --out.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(command: &str, config: &ToleranceConfig) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            verdicts: Vec::new(),
            output: None,
            config: config.clone(),
            runtime_ms: 0,
            certificates: Vec::new(),
        }
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest { name: name.to_string(), sha256: sha256_hex(bytes) });
    }

    pub fn push(&mut self, check: &str, verdict: &str, value: Option<f64>) {
        self.verdicts.push(VerdictLine {
            check: check.to_string(),
            verdict: verdict.to_string(),
            value,
            certificate: None,
        });
    }

    pub fn push_with_certificate(
        &mut self,
        check: &str,
        verdict: &str,
        value: Option<f64>,
        cert: &Certificate,
    ) {
        let full = certificate_to_json(cert);
        let digest = sha256_hex(serde_json::to_string(&full).expect("certificate json").as_bytes());
        self.verdicts.push(VerdictLine {
            check: check.to_string(),
            verdict: verdict.to_string(),
            value,
            certificate: Some(digest),
        });
        self.certificates.push(full);
    }

    /// 0 all passed, 1 violations present, 2 inconclusive present.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.verdict == "violated" || v.verdict == "fail") {
            1
        } else if self.verdicts.iter().any(|v| v.verdict == "inconclusive") {
            2
        } else {
            0
        }
    }

    /// JSON with certificates digested only (stdout form).
    pub fn to_json_digest(&self) -> String {
        let mut slim = self.clone();
        slim.certificates.clear();
        serde_json::to_string_pretty(&slim).expect("report serialization")
    }

    /// JSON with certificates in full (written via --out).
    pub fn to_json_full(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for line in &self.verdicts {
            match line.value {
                Some(v) => out.push_str(&format!("{}: {} (value {v:.6e})\n", line.check, line.verdict)),
                None => out.push_str(&format!("{}: {}\n", line.check, line.verdict)),
            }
        }
        if let Some(output) = &self.output {
            out.push_str(&format!("output: {}\n", serde_json::to_string(output).expect("output json")));
        }
        out.push_str(&format!("runtime_ms: {}\n", self.runtime_ms));
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn certificate_to_json(cert: &Certificate) -> serde_json::Value {
    let complex_list = |v: &[num_complex::Complex64]| -> serde_json::Value {
        serde_json::json!(v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
    };
    match cert {
        Certificate::PsdWitness { vector, value } => serde_json::json!({
            "kind": "psd-witness",
            "vector": complex_list(vector),
            "value": value,
        }),
        Certificate::ProductWitness { xi, eta, value } => serde_json::json!({
            "kind": "product-witness",
            "xi": complex_list(xi),
            "eta": complex_list(eta),
            "value": value,
        }),
        Certificate::SchmidtWitness { vector, schmidt_rank, value } => serde_json::json!({
            "kind": "schmidt-witness",
            "vector": complex_list(vector),
            "schmidt_rank": schmidt_rank,
            "value": value,
        }),
        Certificate::DecompositionPair { cp_part, co_cp_part, residual } => serde_json::json!({
            "kind": "decomposition-pair",
            "cp_part": MatrixPayload::from_matrix(cp_part),
            "co_cp_part": MatrixPayload::from_matrix(co_cp_part),
            "residual": residual,
        }),
        Certificate::PptWitness { state, value } => serde_json::json!({
            "kind": "ppt-witness",
            "state": MatrixPayload::from_matrix(state),
            "value": value,
        }),
        Certificate::Inconclusive { restarts, iterations, best_value } => serde_json::json!({
            "kind": "inconclusive",
            "restarts": restarts,
            "iterations": iterations,
            "best_value": best_value,
        }),
    }
}
