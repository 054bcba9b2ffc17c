//! Serializable output documents. Text, JSON and CSV output are all rendered from these.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use sphinv_core::classify::{InvolutionReport, MontesinosLink, Underlying};
use sphinv_core::families::GroupSpec;
use sphinv_core::seifert::{SeifertInvariants, Surface};
use sphinv_core::verify::VerifyOutcome;

pub const SCHEMA_VERSION: u32 = 1;

/// An exact rational, written as "p/q" (or "p" when integral).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        BigRational::from_str(&text).map(Rat).map_err(|e| serde::de::Error::custom(format!("bad rational '{}': {}", text, e)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: u32,
    pub spec: String,
    pub manifold_class: String,
    pub reports: Vec<ReportDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub class: String,
    pub table_row: String,
    /// Du Val name of the extension by the involution.
    pub extension: String,
    pub extension_spec: String,
    pub fibration: FibrationDoc,
    pub acts_freely: bool,
    pub hyperelliptic: bool,
    pub underlying: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub montesinos: Option<MontesinosDoc>,
    /// Why no Montesinos data is given for a hyperelliptic class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationDoc {
    pub base: String,
    pub surface: String,
    pub cone_orders: Vec<u64>,
    pub corner_orders: Vec<u64>,
    pub local_invariants: Vec<Rat>,
    pub euler: Rat,
    pub singular_component_indices: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tangle {
    pub c: i64,
    pub b: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MontesinosDoc {
    pub half_twists: String,
    pub tangles: Vec<Tangle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub run: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchDoc {
    pub check: String,
    pub spec: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub passed: bool,
    pub checks: BTreeMap<String, CheckDoc>,
    pub mismatches: Vec<MismatchDoc>,
}

/// Output of `verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepVerification {
    pub schema_version: u32,
    pub max_order: u64,
    pub group_specs: usize,
    pub manifolds: usize,
    pub extensions: usize,
    pub elapsed_seconds: f64,
    pub homology_seconds: f64,
    pub verification: VerificationDoc,
}

fn surface_name(s: Surface) -> &'static str {
    match s {
        Surface::S2 => "S2",
        Surface::D2 => "D2",
        Surface::RP2 => "RP2",
    }
}

impl From<&SeifertInvariants> for FibrationDoc {
    fn from(f: &SeifertInvariants) -> FibrationDoc {
        FibrationDoc {
            base: f.base.to_string(),
            surface: surface_name(f.base.surface).into(),
            cone_orders: f.base.interior_cone_orders.clone(),
            corner_orders: f.base.corner_orders.clone(),
            local_invariants: f.local_invariants.iter().cloned().map(Rat).collect(),
            euler: Rat(f.euler.clone()),
            singular_component_indices: f.singular_component_indices.clone(),
        }
    }
}

impl From<&MontesinosLink> for MontesinosDoc {
    fn from(m: &MontesinosLink) -> MontesinosDoc {
        MontesinosDoc { half_twists: m.half_twists.to_string(), tangles: m.tangles.iter().map(|&(c, b)| Tangle { c, b }).collect() }
    }
}

pub fn underlying_name(u: &Underlying) -> String {
    match u {
        Underlying::Sphere => "S3".into(),
        Underlying::Lens(p, q) => format!("L({},{})", p, q),
        Underlying::Other => "other".into(),
    }
}

impl From<&InvolutionReport> for ReportDoc {
    fn from(r: &InvolutionReport) -> ReportDoc {
        let notice = match (&r.montesinos, r.hyperelliptic) {
            (None, true) => Some(format!("refibration required: base {} is not a disk", r.fibration.base)),
            _ => None,
        };
        ReportDoc {
            class: r.class.class_label.clone(),
            table_row: r.class.row.label.to_string(),
            extension: r.class.extension_spec.du_val(),
            extension_spec: r.class.extension_spec.to_string(),
            fibration: FibrationDoc::from(&r.fibration),
            acts_freely: r.acts_freely,
            hyperelliptic: r.hyperelliptic,
            underlying: underlying_name(&r.underlying),
            montesinos: r.montesinos.as_ref().map(MontesinosDoc::from),
            notice,
        }
    }
}

impl From<&VerifyOutcome> for VerificationDoc {
    fn from(v: &VerifyOutcome) -> VerificationDoc {
        VerificationDoc {
            passed: v.passed(),
            checks: v.checks.iter().map(|(k, s)| (k.to_string(), CheckDoc { run: s.run, failed: s.failed })).collect(),
            mismatches: v
                .mismatches
                .iter()
                .map(|m| MismatchDoc {
                    check: m.check.into(),
                    spec: m.spec.to_string(),
                    class: m.class.clone(),
                    expected: m.expected.clone(),
                    found: m.found.clone(),
                })
                .collect(),
        }
    }
}

impl OutputDocument {
    pub fn new(spec: &GroupSpec, reports: &[InvolutionReport], verification: Option<&VerifyOutcome>) -> OutputDocument {
        OutputDocument {
            schema_version: SCHEMA_VERSION,
            spec: spec.to_string(),
            manifold_class: spec.manifold_class().map(|c| c.name().to_string()).unwrap_or_default(),
            reports: reports.iter().map(ReportDoc::from).collect(),
            verification: verification.map(VerificationDoc::from),
        }
    }
}

impl SweepVerification {
    pub fn new(v: &VerifyOutcome) -> SweepVerification {
        SweepVerification {
            schema_version: SCHEMA_VERSION,
            max_order: v.max_order,
            group_specs: v.group_specs,
            manifolds: v.manifolds,
            extensions: v.extensions,
            elapsed_seconds: v.elapsed.as_secs_f64(),
            homology_seconds: v.homology_time.as_secs_f64(),
            verification: VerificationDoc::from(v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sphinv_core::classify::build_report;
    use sphinv_core::families::parse_spec;

    fn round_trip(text: &str) {
        let spec = parse_spec(text).unwrap();
        let reports = build_report(&spec).unwrap();
        let doc = OutputDocument::new(&spec, &reports, None);
        let json = serde_json::to_string(&doc).unwrap();
        let back: OutputDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        for (d, r) in back.reports.iter().zip(&reports) {
            assert_eq!(d.fibration.euler.0, r.fibration.euler);
            assert_eq!(d.fibration.local_invariants.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), r.fibration.local_invariants);
        }
    }

    #[test]
    fn documents_round_trip() {
        for s in ["F9(1)", "F2(1,2)", "F1(3,5,7,2)", "F7(1)", "F1p(1,1,2,1)"] {
            round_trip(s);
        }
    }

    #[test]
    fn rationals_are_strings() {
        let v = serde_json::to_value(Rat(BigRational::new((-2).into(), 30.into()))).unwrap();
        assert_eq!(v, serde_json::json!("-1/15"));
        let r: Rat = serde_json::from_value(serde_json::json!("4")).unwrap();
        assert_eq!(r.0, BigRational::from_integer(4.into()));
        assert!(serde_json::from_value::<Rat>(serde_json::json!("1/x")).is_err());
    }
}
