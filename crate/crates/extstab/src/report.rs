//! Machine- and human-readable run reports.
//!
//! Reports serialize to versioned JSON (`schema_version` = 1). Timing is
//! only included on request so that repeated runs with the same seed produce
//! bit-identical JSON.

use crate::circuit::Circuit;
use crate::error::Result;
use crate::extended::OutcomeRecord;
use crate::oracle::{self, DenseRunOutput, RunOptions};
use crate::protocols::{LogicalFormReport, SweepCase};
use crate::run::RunOutput;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchReport {
    /// Measurement labels in order with their outcome bits.
    pub outcomes: Vec<(String, u8, f64)>,
    /// Joint probability of the path.
    pub probability: f64,
    /// Unnormalized trace of the final state (equals the probability).
    pub trace: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub compared: String,
    pub max_deviation: f64,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub qubits: usize,
    pub seed: u64,
    pub enumerated: bool,
    pub postselected: bool,
    pub accepted_probability: f64,
    pub rejected: bool,
    pub branches: Vec<BranchReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub logical_form: Option<LogicalFormReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepCase>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layout: Option<crate::protocols::LayoutExport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: &str, qubits: usize, opts: &RunOptions) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            qubits,
            seed: opts.seed,
            enumerated: opts.enumerate,
            postselected: opts.honor_postselect,
            accepted_probability: 0.0,
            rejected: false,
            branches: Vec::new(),
            fidelity_target: None,
            logical_form: None,
            oracle: None,
            sweep: None,
            layout: None,
            timing_ms: None,
        }
    }

    pub fn set_branches(&mut self, out: &RunOutput) {
        self.accepted_probability = out.accepted_probability;
        self.rejected = out.rejected();
        self.branches = out
            .branches
            .iter()
            .map(|b| BranchReport {
                outcomes: outcome_triples(b.state.outcomes()),
                probability: b.probability,
                trace: b.state.trace(),
                fidelity: None,
            })
            .collect();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "qubits: {}", self.qubits);
        let _ = writeln!(
            out,
            "mode: {}{}",
            if self.enumerated { "enumerate" } else { "sample" },
            if self.postselected { " + postselect" } else { "" }
        );
        if self.rejected {
            let _ = writeln!(out, "POST-SELECTION REJECTED (no surviving outcome path)");
        }
        let _ = writeln!(out, "accepted probability: {:.12}", self.accepted_probability);
        let _ = writeln!(out, "branches: {}", self.branches.len());
        for (i, b) in self.branches.iter().enumerate() {
            let bits: Vec<String> = b
                .outcomes
                .iter()
                .map(|(label, bit, _)| format!("{label}={bit}"))
                .collect();
            let fid = match b.fidelity {
                Some(f) => format!("  fidelity={f:.12}"),
                None => String::new(),
            };
            let _ = writeln!(
                out,
                "  [{i}] p={:.12}  {}{}",
                b.probability,
                bits.join(" "),
                fid
            );
        }
        if let Some(target) = &self.fidelity_target {
            let _ = writeln!(out, "fidelity target: {target}");
        }
        if let Some(lf) = &self.logical_form {
            let _ = writeln!(
                out,
                "logical form: {}",
                if lf.passed() { "PASS" } else { "FAIL" }
            );
            if !lf.plaquette_failures.is_empty() {
                for f in &lf.plaquette_failures {
                    let _ = writeln!(out, "  plaquette failure: {f}");
                }
            }
            let _ = writeln!(
                out,
                "  off-diagonal = logical Z modulo group: {} (sign {:?})",
                lf.offdiagonal_ok, lf.offdiagonal_sign
            );
            let _ = writeln!(
                out,
                "  branch operator = logical X: {} (sign {:?})",
                lf.branch_operator_ok, lf.branch_operator_sign
            );
            let _ = writeln!(out, "  coefficient magnitudes: {}", lf.coefficients_ok);
        }
        if let Some(oracle) = &self.oracle {
            let _ = writeln!(
                out,
                "oracle ({}): max deviation {:.3e} -> {}",
                oracle.compared,
                oracle.max_deviation,
                if oracle.agrees { "agrees" } else { "DISAGREES" }
            );
        }
        if let Some(sweep) = &self.sweep {
            let _ = writeln!(out, "error sweep: {} cases", sweep.len());
            let rejected = sweep.iter().filter(|c| c.class == crate::protocols::SweepClass::Rejected).count();
            let accepted = sweep.iter().filter(|c| c.class == crate::protocols::SweepClass::Accepted).count();
            let logical = sweep.iter().filter(|c| c.class == crate::protocols::SweepClass::LogicalError).count();
            let _ = writeln!(
                out,
                "  rejected: {rejected}  accepted: {accepted}  logical errors: {logical}"
            );
            for c in sweep {
                let fid = c
                    .fidelity
                    .map(|f| format!("{f:.9}"))
                    .unwrap_or_else(|| "-".into());
                let agree = match c.agrees {
                    Some(true) => "oracle-ok",
                    Some(false) => "ORACLE-MISMATCH",
                    None => "",
                };
                let _ = writeln!(
                    out,
                    "  {:<10} @{:<6} {:?}  fid={} {}",
                    c.error, c.position, c.class, fid, agree
                );
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "elapsed: {ms:.1} ms");
        }
        out
    }
}

fn outcome_triples(outcomes: &[OutcomeRecord]) -> Vec<(String, u8, f64)> {
    outcomes
        .iter()
        .map(|o| (o.label.clone(), u8::from(o.bit), o.probability))
        .collect()
}

/// Cross-check an extended run against the dense oracle.
///
/// Below the density limit every surviving branch's unnormalized dense form
/// is compared elementwise; otherwise (still under the vector limit) the
/// outcome probabilities are compared.
pub fn oracle_cross_check(
    c: &Circuit,
    opts: &RunOptions,
    extended: &RunOutput,
) -> Result<OracleReport> {
    let n = c.n;
    let density_ok = n <= oracle::density_limit();
    let dense: DenseRunOutput = oracle::run_dense(c, opts, false)?;
    let mut max_dev: f64 = (extended.accepted_probability - dense.accepted_probability).abs();
    if extended.branches.len() != dense.branches.len() {
        return Ok(OracleReport {
            compared: "branch structure".into(),
            max_deviation: f64::INFINITY,
            agrees: false,
        });
    }
    for (eb, db) in extended.branches.iter().zip(&dense.branches) {
        let bits_match = eb
            .state
            .outcomes()
            .iter()
            .map(|o| (o.label.as_str(), o.bit))
            .eq(db.outcomes.iter().map(|o| (o.label.as_str(), o.bit)));
        if !bits_match {
            return Ok(OracleReport {
                compared: "outcome ordering".into(),
                max_deviation: f64::INFINITY,
                agrees: false,
            });
        }
        max_dev = max_dev.max((eb.probability - db.probability).abs());
        if density_ok {
            let ours = eb.state.to_dense()?;
            let mut reference = db.state.density();
            reference.scale(num_complex::Complex64::new(db.probability, 0.0));
            max_dev = max_dev.max(ours.max_abs_diff(&reference));
        }
    }
    let (compared, tol) = if density_ok {
        ("density matrices", 1e-10)
    } else {
        ("outcome probabilities", 1e-9)
    };
    Ok(OracleReport {
        compared: compared.into(),
        max_deviation: max_dev,
        agrees: max_dev <= tol,
    })
}
