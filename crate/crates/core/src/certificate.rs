//! Serialized form of a construction.
//!
//! A certificate records the inputs, the class group data, the seed field,
//! every conductor with the prime that forced it, and the per-prime table of
//! local degrees. Field order is fixed, so output is byte-stable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classfield::CharacterSpec;
use crate::error::{Error, Result};
use crate::quadfield::{BaseField, FieldElement, PrimeIdeal};

pub const SCHEMA_VERSION: u32 = 1;

/// A prime of `K` as `[p, b]`; `b` is `null` over `Q` and for inert primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeLabel(pub u64, pub Option<u64>);

impl From<&PrimeIdeal> for PrimeLabel {
    fn from(p: &PrimeIdeal) -> Self {
        let (p, b) = p.label();
        PrimeLabel(p, b)
    }
}

impl PrimeLabel {
    pub fn resolve(&self, field: &BaseField) -> Result<PrimeIdeal> {
        PrimeIdeal::from_label(field, self.0, self.1)
            .map_err(|e| Error::MalformedCertificate(format!("bad prime label {self}: {e}")))
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1 {
            Some(b) => write!(f, "[{}, {}]", self.0, b),
            None => write!(f, "[{}]", self.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDatum {
    pub gen_ideal: PrimeLabel,
    /// Class order `ell^m`.
    pub order: u64,
    /// Generator of `gen_ideal^order`.
    pub alpha: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct L0Record {
    pub modulus: u64,
    pub character: CharacterSpec,
}

/// A prime above `ell` where the seed field falls short of degree `ell^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeficiencyRecord {
    pub prime: PrimeLabel,
    pub ram_index: u64,
    pub local_degree: u64,
    /// `r - log_ell(local_degree)`.
    pub deficiency: u32,
}

/// A ray piece of conductor `[p, b]`, added for `target`, in which the
/// Frobenius of `target` has order `target_order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceRecord {
    pub p: u64,
    pub b: Option<u64>,
    pub norm: u64,
    pub target: PrimeLabel,
    pub target_order: u64,
}

impl PieceRecord {
    pub fn conductor(&self) -> PrimeLabel {
        PrimeLabel(self.p, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub prime: PrimeLabel,
    pub degree: u64,
    /// `0` for the seed field, `i` for the `i`-th piece, `null` if unramified.
    pub ramified_component: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigRecord {
    pub enumeration: String,
    pub cap: u64,
    pub greedy_skip: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionCertificate {
    pub schema_version: u32,
    pub field: BaseField,
    pub ell: u64,
    pub r: u32,
    pub t: u32,
    pub class_data: Vec<ClassDatum>,
    pub unit_gens: Vec<FieldElement>,
    pub l0: L0Record,
    pub deficiencies: Vec<DeficiencyRecord>,
    pub pieces: Vec<PieceRecord>,
    pub bound: u64,
    pub table: Vec<TableEntry>,
    /// Local degree at the real place of `Q`; `null` over an imaginary field.
    pub real_place_degree: Option<u64>,
    pub config: ConfigRecord,
}

impl ExtensionCertificate {
    /// `n = ell^r`.
    pub fn degree(&self) -> u64 {
        self.ell.pow(self.r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

/// One row of a composite table: the product of the component degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeEntry {
    pub prime: PrimeLabel,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeCertificate {
    pub n: u64,
    pub bound: u64,
    /// One prime-power certificate per prime factor of `n`, by increasing `ell`.
    pub components: Vec<ExtensionCertificate>,
    pub table: Vec<CompositeEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompositeWrapper {
    schema_version: u32,
    composite: CompositeCertificate,
}

/// Either kind of certificate, as read from disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateFile {
    Single(Box<ExtensionCertificate>),
    Composite(CompositeCertificate),
}

impl From<ExtensionCertificate> for CertificateFile {
    fn from(c: ExtensionCertificate) -> Self {
        CertificateFile::Single(Box::new(c))
    }
}

impl From<CompositeCertificate> for CertificateFile {
    fn from(c: CompositeCertificate) -> Self {
        CertificateFile::Composite(c)
    }
}

impl CertificateFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(format!("not JSON: {e}")))?;
        let version = value.get("schema_version").and_then(|v| v.as_u64());
        if version != Some(SCHEMA_VERSION as u64) {
            return Err(Error::MalformedCertificate(format!(
                "unsupported schema_version {version:?}, expected {SCHEMA_VERSION}"
            )));
        }
        if value.get("composite").is_some() {
            let w: CompositeWrapper =
                serde_json::from_value(value).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
            Ok(CertificateFile::Composite(w.composite))
        } else {
            let c: ExtensionCertificate =
                serde_json::from_value(value).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
            Ok(c.into())
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            CertificateFile::Single(c) => c.to_json(),
            CertificateFile::Composite(c) => {
                let w = CompositeWrapper { schema_version: SCHEMA_VERSION, composite: c.clone() };
                serde_json::to_string_pretty(&w).expect("certificates serialize")
            }
        }
    }
}
