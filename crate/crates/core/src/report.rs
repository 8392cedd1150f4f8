//! Report rows and their serialized forms.
//!
//! Every check in a battery flattens to one row. JSON objects carry exactly
//! the fields {check, model, n, estimate, exact, z_score, overlap_count,
//! seed, pass}; the CSV adds the Hilbert dimension as an `N` column between
//! `model` and `n`, with empty cells for inapplicable fields. Contextuality
//! witnesses are a separate record carrying the (λ, outcome, outcome) triple.

use serde::{Deserialize, Serialize};

use crate::checks::{BornTestReport, DimensionAudit, SupportOverlapReport};

/// CSV header, fixed column order.
pub const CSV_HEADER: &str = "check,model,N,n,estimate,exact,z_score,overlap_count,seed,pass";

/// One flattened check result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check: String,
    pub model: String,
    /// Hilbert dimension; written only to the CSV `N` column.
    #[serde(skip)]
    pub dim: Option<usize>,
    pub n: Option<u64>,
    pub estimate: Option<f64>,
    pub exact: Option<f64>,
    pub z_score: Option<f64>,
    pub overlap_count: Option<u64>,
    pub seed: Option<u64>,
    pub pass: bool,
}

impl ReportRow {
    pub fn from_born(
        check: &str,
        model: &str,
        dim: Option<usize>,
        report: &BornTestReport,
    ) -> Self {
        Self {
            check: check.to_string(),
            model: model.to_string(),
            dim,
            n: Some(report.n),
            estimate: Some(report.estimate),
            exact: Some(report.exact),
            z_score: Some(report.z_score),
            overlap_count: None,
            seed: Some(report.seed),
            pass: report.passes(),
        }
    }

    /// `expect_overlap` selects the pass sense: support checks pass on zero
    /// overlap, the positive-representation control passes on nonzero.
    pub fn from_overlap(
        check: &str,
        model: &str,
        dim: Option<usize>,
        report: &SupportOverlapReport,
        seed: u64,
        expect_overlap: bool,
    ) -> Self {
        let pass = if expect_overlap {
            report.overlap_count > 0
        } else {
            report.overlap_count == 0
        };
        Self {
            check: check.to_string(),
            model: model.to_string(),
            dim,
            n: Some(report.n_samples),
            estimate: None,
            exact: None,
            z_score: None,
            overlap_count: Some(report.overlap_count),
            seed: Some(seed),
            pass,
        }
    }

    pub fn from_audit(audit: &DimensionAudit) -> Self {
        Self {
            check: "dimension-audit".to_string(),
            model: audit.model.clone(),
            dim: audit.hilbert_dim,
            n: None,
            estimate: Some(audit.ontic_dim as f64),
            exact: audit.bound.map(|b| b as f64),
            z_score: None,
            overlap_count: None,
            seed: None,
            pass: audit.satisfies,
        }
    }
}

/// A contextuality witness: the λ grid point and the two outcome vectors
/// (indexed in the original basis labeling) that differ between orderings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub check: String,
    pub model: String,
    pub lambda: f64,
    pub outcome_original: usize,
    pub outcome_permuted: usize,
    pub seed: u64,
    pub pass: bool,
}

impl WitnessRecord {
    pub fn new(witness: &crate::bell::Witness, seed: u64) -> Self {
        Self {
            check: "contextuality-witness".to_string(),
            model: "bell-df".to_string(),
            lambda: witness.lambda,
            outcome_original: witness.outcome_original,
            outcome_permuted: witness.outcome_permuted,
            seed,
            pass: true,
        }
    }
}

/// One entry of a report file. Witness first so untagged deserialization
/// cannot mistake it for a plain row (rows lack the outcome fields).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportEntry {
    Witness(WitnessRecord),
    Row(ReportRow),
}

impl ReportEntry {
    pub fn pass(&self) -> bool {
        match self {
            ReportEntry::Witness(w) => w.pass,
            ReportEntry::Row(r) => r.pass,
        }
    }

    fn csv_record(&self) -> String {
        fn cell<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        match self {
            ReportEntry::Row(r) => format!(
                "{},{},{},{},{},{},{},{},{},{}",
                r.check,
                r.model,
                cell(&r.dim),
                cell(&r.n),
                cell(&r.estimate),
                cell(&r.exact),
                cell(&r.z_score),
                cell(&r.overlap_count),
                cell(&r.seed),
                r.pass
            ),
            // witness rows surface λ in the estimate column
            ReportEntry::Witness(w) => format!(
                "{},{},,,{},,,,{},{}",
                w.check, w.model, w.lambda, w.seed, w.pass
            ),
        }
    }
}

/// CSV serialization: header, one record per entry, trailing newline. An
/// empty battery yields the header alone.
pub fn to_csv(entries: &[ReportEntry]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for entry in entries {
        out.push_str(&entry.csv_record());
        out.push('\n');
    }
    out
}

/// JSON serialization: a pretty-printed array of entry objects, trailing
/// newline.
pub fn to_json(entries: &[ReportEntry]) -> String {
    let mut out =
        serde_json::to_string_pretty(entries).expect("report entries are always serializable");
    out.push('\n');
    out
}

/// Parses a JSON report back into entries.
pub fn from_json(text: &str) -> Result<Vec<ReportEntry>, serde_json::Error> {
    serde_json::from_str(text)
}
