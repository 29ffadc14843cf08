//! The report document. Everything in it is a function of the config bytes
//! and the tool version; wall-clock data lives in [`Timings`] and never
//! enters the serialized body.

use std::collections::BTreeMap;

use serde::Serialize;
use thetaloc_core::deformation::{GeometryVerdict, LedgerEntry, SplittingProfile};
use thetaloc_core::galois::HeartCharacter;
use thetaloc_core::numberfield::NfElement;
use thetaloc_core::qexp::CoefficientReport;

use crate::config::TaskMode;

pub const TOOL: &str = "thetaloc";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_sha256: String,
    pub command: TaskMode,
    pub conventions: Conventions,
    pub tags: Tags,
    pub setup: Option<SetupSummary>,
    pub verdict: Option<VerdictSection>,
    pub coefficients: Option<CoefficientSection>,
    pub diagnostics: Diagnostics,
}

/// Fixed statements of the sign and composition conventions, so a report
/// can be read without the source.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub composition: &'static str,
    pub frobenius: &'static str,
    pub eta: &'static str,
    pub unit_log: &'static str,
    pub psi_prime_action: &'static str,
    pub normalization: &'static str,
    pub hecke_relation: &'static str,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            composition: "a∘b applies b first; group elements are indexed by the list in setup.elements",
            frobenius: "Frob_{g(λ)} = g∘Frob_λ∘g⁻¹",
            eta: "η(s) = ψ(s∘σ) for s outside Gal(H/M)",
            unit_log: "u(ψ♥, λ, g_i) = (1/(h·d))·Σ_{g∈Gal(H/M)} ψ♥(g)·log_p ι_{π_g(i)}(α), d = |D_λ ∩ ker ψ♥|",
            psi_prime_action: "right translation: Ψ′(h₀(u)) = ψ♥(h₀)⁻¹·Ψ′(u)",
            normalization: "a_𝔬(f†) = 0; values are canonical up to the α-weights echoed in setup",
            hecke_relation: "T_q f† = a_q(f)·f† + a_q(f†)·f; the coefficients section lists a_q(f†)",
        }
    }
}

/// Opaque labels echoed from the config.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Tags {
    pub conductor: Option<String>,
    pub nebentypus: Option<String>,
    pub tame_level: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetupSummary {
    pub p: u64,
    pub precision: u32,
    /// Degree of the unramified extension of ℚ_p used for all values.
    pub residue_degree: usize,
    /// Images of H's generator under each group element, by index.
    pub elements: Vec<NfElement>,
    pub subgroup_gm: Vec<usize>,
    pub gm_is_cyclic: bool,
    pub sigma: usize,
    pub conjugation: Option<usize>,
    /// Complex conjugation at each archimedean embedding of H.
    pub conjugations: Vec<usize>,
    pub psi_order: u32,
    pub psi: BTreeMap<usize, u32>,
    pub heart: HeartCharacter,
    pub heart_field_is_cm: bool,
    /// Embedding labels forming I′_F.
    pub iprime: Vec<usize>,
    /// Rational α-weights as decimal strings.
    pub alpha_weights: Vec<String>,
    pub excluded: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictSection {
    pub profile: SplittingProfile,
    /// "computed" or "computed+declared".
    pub profile_source: &'static str,
    pub verdict: GeometryVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientSection {
    pub ells: Vec<u64>,
    pub second_representative: bool,
    pub entries: Vec<CoefficientReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrecisionLoss {
    pub ell: u64,
    pub prime: Vec<u64>,
    pub precision: i64,
    pub lost: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub ell: u64,
    pub prime: Vec<u64>,
    pub message: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Diagnostics {
    pub assumptions_ledger: Vec<LedgerEntry>,
    pub precision_losses: Vec<PrecisionLoss>,
    pub failures: Vec<Failure>,
}

/// Wall-clock data, reported on stderr only.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub total_ms: f64,
    pub setup_ms: f64,
    pub verdict_ms: f64,
    pub per_ell_ms: BTreeMap<u64, f64>,
}

impl RunReport {
    /// The canonical serialized form: pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
