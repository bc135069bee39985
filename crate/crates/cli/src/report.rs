use serde::{Deserialize, Serialize};

use otk::construct::{HalfConstruction, MaximalConstruction, TotallyRealConstruction};
use otk::galois::{GaloisCertificate, Witness};
use otk::geom::GeometryReport;
use otk::lckrank::{Case, RankCertificate, RankReport, UnitCrossCheck};
use otk::realroots::Signature;
use otk::units::{UnimodularVerdict, UnitRecord};
use otk::IntPoly;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub poly: IntPoly,
    pub text: String,
    pub degree: usize,
}

impl FieldInfo {
    pub fn new(poly: &IntPoly) -> Self {
        FieldInfo { poly: poly.clone(), text: poly.to_string(), degree: poly.degree() }
    }
}

/// Output of `otk analyze`; also the input accepted by `--recheck`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub command: String,
    pub seed: u64,
    pub field: FieldInfo,
    pub signature: Signature,
    pub betti1: usize,
    pub dim_c: usize,
    pub lck_rank: Option<usize>,
    pub case: Case,
    pub certificate: RankCertificate,
    pub witnesses: Vec<Witness>,
    pub galois: Option<GaloisCertificate>,
    pub unit_check: Option<UnitCrossCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryReport>,
}

impl AnalyzeReport {
    pub fn new(r: RankReport, seed: u64) -> Self {
        AnalyzeReport {
            command: "analyze".into(),
            seed,
            field: FieldInfo::new(&r.field),
            signature: r.signature,
            betti1: r.betti1,
            dim_c: r.dim_c,
            lck_rank: r.lck_rank,
            case: r.case,
            witnesses: r.galois.as_ref().map(|g| g.witnesses.clone()).unwrap_or_default(),
            certificate: r.certificate,
            galois: r.galois,
            unit_check: r.unit_check,
            geometry: None,
        }
    }

    pub fn rank_report(&self) -> RankReport {
        RankReport {
            field: self.field.poly.clone(),
            signature: self.signature,
            degree: self.field.degree,
            betti1: self.betti1,
            dim_c: self.dim_c,
            lck_rank: self.lck_rank,
            case: self.case,
            certificate: self.certificate.clone(),
            galois: self.galois.clone(),
            unit_check: self.unit_check.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Construction {
    Maximal(MaximalConstruction),
    Half(HalfConstruction),
    TotallyReal(TotallyRealConstruction),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub command: String,
    pub field: FieldInfo,
    pub signature: Signature,
    pub construction: Construction,
    /// Self-analysis, absent when the field has no single complex place.
    pub analysis: Option<AnalyzeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis_skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecheckReport {
    pub command: String,
    pub field: FieldInfo,
    pub certificate_kind: String,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitEntry {
    pub unit: UnitRecord,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unimodular: Option<UnimodularVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitsReport {
    pub command: String,
    pub field: FieldInfo,
    pub signature: Signature,
    pub bound: i64,
    pub units: Vec<UnitEntry>,
    pub unit_rank: usize,
    pub positive_units_exhibited: usize,
    pub positive_rank_certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub command: String,
    pub error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Signature>,
}
