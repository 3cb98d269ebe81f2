//! JSON ingestion and persistence.
//!
//! Every document carries a `schema_version`. Numbers that can outgrow a
//! machine word (p-adic residues, polynomial coefficients) are written as
//! decimal strings. Output is canonical: object keys sorted, two-space
//! indentation, trailing newline.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cyclo::CyclotomicProduct;
use crate::error::{Error, Result, ValidationError};
use crate::lambda::LambdaElement;
use crate::module::ElementaryModule;
use crate::rank::{
    fine_char_ideal, pm_gcd_char, pm_multiplicities, profile_from_ranks, s_from_e, Comparison,
    KpReport, PMMultiplicities, RankProfile,
};

pub const SCHEMA_VERSION: u32 = 1;

pub(crate) fn schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    GoodOrdinary,
    GoodSupersingular,
    Other,
}

impl std::fmt::Display for Reduction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Reduction::GoodOrdinary => "good-ordinary",
            Reduction::GoodSupersingular => "good-supersingular",
            Reduction::Other => "other",
        })
    }
}

/// An elliptic curve and prime with Mordell–Weil ranks up the cyclotomic tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub label: String,
    pub p: i64,
    pub a_p: i64,
    pub reduction: Reduction,
    /// `rank E(Q_n)` for `n = 0..=N`.
    pub ranks: Vec<i64>,
    pub sha_finite: Vec<bool>,
    #[serde(default)]
    pub sources: Vec<String>,
}

impl CurveRecord {
    /// Checks every record invariant that does not depend on the analysis.
    pub fn validate(&self) -> Result<RankProfile, ValidationError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ValidationError::SchemaVersion(self.schema_version));
        }
        if self.label.trim().is_empty() {
            return Err(ValidationError::EmptyLabel);
        }
        let p = u64::try_from(self.p).map_err(|_| ValidationError::InvalidPrime(self.p))?;
        if self.sha_finite.len() != self.ranks.len() {
            return Err(ValidationError::ShaLengthMismatch {
                expected: self.ranks.len(),
                found: self.sha_finite.len(),
            });
        }
        profile_from_ranks(p, &self.ranks)
    }

    /// Additional requirements of the plus/minus theory: `a_p = 0` at a
    /// prime of good supersingular reduction.
    pub fn validate_pm(&self) -> Result<RankProfile, ValidationError> {
        let profile = self.validate()?;
        if self.a_p != 0 {
            return Err(ValidationError::ApNonzero(self.a_p));
        }
        if self.reduction != Reduction::GoodSupersingular {
            return Err(ValidationError::NotSupersingular(self.reduction.to_string()));
        }
        Ok(profile)
    }

    pub fn hypotheses(&self) -> Hypotheses {
        Hypotheses {
            label: Some(self.label.clone()),
            sha_finite_all_levels: Some(self.sha_finite.iter().all(|&b| b)),
            a_p_zero: Some(self.a_p == 0),
            reduction: Some(self.reduction),
        }
    }
}

/// The assumptions a report's conclusions rest on. `None` means the caller
/// supplied no record, so the assumption is neither confirmed nor refuted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub label: Option<String>,
    /// `Sha(E/Q_n)[p^∞]` finite at every recorded level; needed by both
    /// characteristic-ideal formulas.
    pub sha_finite_all_levels: Option<bool>,
    /// Needed by the plus/minus formula.
    pub a_p_zero: Option<bool>,
    pub reduction: Option<Reduction>,
}

/// Summary of an L-function comparison inside a [`Report`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpSummary {
    pub n_max: u32,
    pub observed: CyclotomicProduct,
    pub mu_plus: u32,
    pub mu_minus: u32,
    pub all_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub profile: RankProfile,
    pub s: Vec<u64>,
    pub r_pm: PMMultiplicities,
    pub fine_char: CyclotomicProduct,
    pub pm_gcd: CyclotomicProduct,
    pub comparisons: Vec<Comparison>,
    #[serde(default)]
    pub kp: Option<KpSummary>,
    pub hypotheses: Hypotheses,
}

impl Report {
    pub fn new(profile: RankProfile, hypotheses: Hypotheses) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            s: s_from_e(&profile).0.into_values().collect(),
            r_pm: pm_multiplicities(&profile),
            fine_char: fine_char_ideal(&profile),
            pm_gcd: pm_gcd_char(&profile),
            comparisons: Vec::new(),
            kp: None,
            profile,
            hypotheses,
        }
    }

    pub fn with_kp(mut self, kp: KpReport) -> Self {
        self.kp = Some(KpSummary {
            n_max: kp.n_max,
            observed: kp.observed.clone(),
            mu_plus: kp.mu_plus,
            mu_minus: kp.mu_minus,
            all_match: kp.all_match(),
        });
        self.comparisons = kp.comparisons;
        self
    }
}

/// Canonical JSON text for any serializable value.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    v.sort_all_objects();
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Schema(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_canonical_json(value)?)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

/// Reads and validates a curve record.
pub fn load_record(path: impl AsRef<Path>) -> Result<CurveRecord> {
    let record: CurveRecord = read_json(path)?;
    record.validate()?;
    Ok(record)
}

/// Reads a record destined for plus/minus analysis.
pub fn load_record_for_pm(path: impl AsRef<Path>) -> Result<CurveRecord> {
    let record: CurveRecord = read_json(path)?;
    record.validate_pm()?;
    Ok(record)
}

pub fn save_report(report: &Report, path: impl AsRef<Path>) -> Result<()> {
    write_json(report, path)
}

fn check_version(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(ValidationError::SchemaVersion(v).into());
    }
    Ok(())
}

pub fn load_report(path: impl AsRef<Path>) -> Result<Report> {
    let report: Report = read_json(path)?;
    check_version(report.schema_version)?;
    report.profile.validate()?;
    Ok(report)
}

pub fn load_lambda(path: impl AsRef<Path>) -> Result<LambdaElement> {
    read_json(path)
}

/// On-disk module descriptor. Not flattened: serde's flatten buffering
/// cannot read the integer map keys inside `factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ModuleFile {
    #[serde(default = "schema_version")]
    schema_version: u32,
    free_rank: u64,
    factors: Vec<CyclotomicProduct>,
}

pub fn load_module(path: impl AsRef<Path>) -> Result<ElementaryModule> {
    let file: ModuleFile = read_json(path)?;
    check_version(file.schema_version)?;
    ElementaryModule::new(file.free_rank, file.factors)
}

pub fn save_module(module: &ElementaryModule, path: impl AsRef<Path>) -> Result<()> {
    write_json(
        &ModuleFile {
            schema_version: SCHEMA_VERSION,
            free_rank: module.free_rank,
            factors: module.factors.clone(),
        },
        path,
    )
}

/// On-disk rank profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ProfileFile {
    #[serde(default = "schema_version")]
    schema_version: u32,
    #[serde(flatten)]
    profile: RankProfile,
}

pub fn load_profile(path: impl AsRef<Path>) -> Result<RankProfile> {
    let file: ProfileFile = read_json(path)?;
    check_version(file.schema_version)?;
    file.profile.validate()?;
    Ok(file.profile)
}

pub fn save_profile(profile: &RankProfile, path: impl AsRef<Path>) -> Result<()> {
    write_json(
        &ProfileFile {
            schema_version: SCHEMA_VERSION,
            profile: profile.clone(),
        },
        path,
    )
}
