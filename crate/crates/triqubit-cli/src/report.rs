//! JSON report bodies shared by the subcommands.
//!
//! Every command emits exactly one JSON document on stdout with a `schema`
//! and `command` field; `--pretty` adds an aligned human-readable table on
//! stderr. Struct field order fixes the byte layout, so identical
//! invocations produce identical output.

use serde::Serialize;

use triqubit::productsearch::{Method, SearchResult, Verdict};
use triqubit::qstate::Qubit2Vec;
use triqubit::tangles::TangleProfile;

pub const REPORT_SCHEMA: &str = "triqubit-report/1";

#[derive(Serialize)]
pub struct PartyTriple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Serialize)]
pub struct ProfileBody {
    pub tau_a: f64,
    pub tau_b: f64,
    pub tau_c: f64,
    pub tau_abc: f64,
    pub tau_ab: f64,
    pub tau_bc: f64,
    pub tau_ac: f64,
}

impl From<&TangleProfile> for ProfileBody {
    fn from(p: &TangleProfile) -> Self {
        ProfileBody {
            tau_a: p.tau_a,
            tau_b: p.tau_b,
            tau_c: p.tau_c,
            tau_abc: p.tau_abc,
            tau_ab: p.tau_ab,
            tau_bc: p.tau_bc,
            tau_ac: p.tau_ac,
        }
    }
}

#[derive(Serialize)]
pub struct TanglesReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: InputBody,
    pub tangle_profile: ProfileBody,
    pub hyperdeterminant: [f64; 2],
    pub three_tangle: f64,
    pub one_tangles_minors: PartyTriple,
    pub one_tangles_entropy: PartyTriple,
    pub route_residual: f64,
    pub fully_product: bool,
}

#[derive(Serialize)]
pub struct InputBody {
    pub path: String,
    pub norm_residual: f64,
    pub normalized: bool,
}

#[derive(Serialize)]
pub struct StateRow {
    pub index: usize,
    pub one_tangles: PartyTriple,
    pub classification: &'static str,
}

#[derive(Serialize)]
pub struct WitnessBody {
    pub a: Vec<[f64; 2]>,
    pub b: Vec<[f64; 2]>,
    pub c: Vec<[f64; 2]>,
}

impl WitnessBody {
    pub fn from_product(p: &triqubit::qstate::ProductState3Q) -> Self {
        let dump = |q: &Qubit2Vec| q.amps().iter().map(|z| [z.re, z.im]).collect();
        WitnessBody {
            a: dump(&p.a),
            b: dump(&p.b),
            c: dump(&p.c),
        }
    }
}

#[derive(Serialize)]
pub struct CertificationBody {
    pub target: &'static str,
    pub best_overlap: f64,
    pub margin: f64,
    pub certified: bool,
    pub method: &'static str,
    pub converged: bool,
    pub iterations: usize,
    pub restarts: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessBody>,
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Seesaw => "seesaw",
        Method::Grid => "grid",
        Method::Both => "both",
    }
}

impl CertificationBody {
    pub fn new(target: &'static str, verdict: &Verdict, search: &SearchResult) -> Self {
        let warning = if search.best_value < 1.0 - 1e-6 && search.best_value >= 1.0 - 1e-4 {
            Some("best overlap within 1e-4 of the certification threshold".to_string())
        } else {
            None
        };
        let witness = if verdict.certified {
            None
        } else {
            Some(WitnessBody::from_product(&search.best_product))
        };
        CertificationBody {
            target,
            best_overlap: search.best_value,
            margin: verdict.margin,
            certified: verdict.certified,
            method: method_name(verdict.method),
            converged: search.converged,
            iterations: search.iterations,
            restarts: search.restarts_used,
            warning,
            witness,
        }
    }
}

#[derive(Serialize)]
pub struct CheckBasisReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: String,
    pub count: usize,
    pub kind: &'static str,
    pub gram_residual: f64,
    pub states: Vec<StateRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<CertificationBody>,
}

#[derive(Serialize)]
pub struct PptBody {
    pub spectra: SpectraBody,
    pub min_eigenvalue: f64,
    pub ppt_all: bool,
}

#[derive(Serialize)]
pub struct SpectraBody {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Serialize)]
pub struct VerdictBody {
    pub certified: bool,
    pub margin: f64,
    pub method: &'static str,
}

#[derive(Serialize)]
pub struct MatrixBody {
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sixteenths: Option<Vec<Vec<i64>>>,
}

#[derive(Serialize)]
pub struct BoundStateReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub dual: bool,
    pub matrix: MatrixBody,
    pub matrix_matches_paper: bool,
    pub eigenvalues: Vec<f64>,
    pub ppt: PptBody,
    pub range_product_free: VerdictBody,
    pub bound_entangled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exported_to: Option<String>,
}

#[derive(Serialize)]
pub struct OrbitSample {
    pub index: usize,
    pub seed: u64,
    pub gram_residual: f64,
    pub tangle_drift: f64,
    pub valid: bool,
}

#[derive(Serialize)]
pub struct LuOrbitReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub count: usize,
    pub samples: Vec<OrbitSample>,
    pub max_gram_residual: f64,
    pub max_tangle_drift: f64,
    pub all_valid: bool,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "DISCREPANCY")]
    Discrepancy,
}

#[derive(Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_value: Option<f64>,
    pub computed_value: f64,
    pub status: ClaimStatus,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize)]
pub struct ClaimCounts {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
}

#[derive(Serialize)]
pub struct VerifyPaperReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub claims: Vec<ClaimReport>,
    pub counts: ClaimCounts,
    pub all_ok: bool,
}

pub fn emit<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string(report).expect("reports serialize")
    );
}

/// Aligned claim table for `--pretty`, on stderr.
pub fn pretty_claims(claims: &[ClaimReport]) {
    let id_width = claims
        .iter()
        .map(|c| c.claim_id.len())
        .max()
        .unwrap_or(8)
        .max("claim".len());
    eprintln!(
        "{:<id_width$}  {:>14}  {:>18}  {:<12}  {:>8}",
        "claim", "reference", "computed", "status", "tol"
    );
    for c in claims {
        let paper = match c.paper_value {
            Some(v) => format!("{v:.10}"),
            None => "-".to_string(),
        };
        let status = match c.status {
            ClaimStatus::Pass => "PASS",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::Discrepancy => "DISCREPANCY",
        };
        eprintln!(
            "{:<id_width$}  {:>14}  {:>18.12}  {:<12}  {:>8.0e}",
            c.claim_id, paper, c.computed_value, status, c.tolerance
        );
    }
}

/// Two-column key/value table for `--pretty`, on stderr.
pub fn pretty_kv(rows: &[(String, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(4);
    for (k, v) in rows {
        eprintln!("{k:<width$}  {v}");
    }
}
