//! JSON instance and certificate files.
//!
//! Entries are decimal strings (`"-3"`, `"2/5"`), matrices are row-major,
//! and every per-degree list carries its degree so that files can be read
//! and edited by hand. Serialization is canonical: `to_string` of a parsed
//! canonical file reproduces it byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::lefschetz::{CertificateSummand, DecompositionCertificate, LefschetzData, LefschetzFamily, LefschetzMap};
use crate::linalg::{ExactMatrix, Ring};

use super::generate::GeneratorProfile;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    PrimeField { p: u64 },
}

impl RingDescriptor {
    pub fn ring(self) -> Result<Ring> {
        match self {
            RingDescriptor::Integers => Ok(Ring::Integers),
            RingDescriptor::Rationals => Ok(Ring::Rationals),
            RingDescriptor::PrimeField { p } => Ring::prime_field(p),
        }
    }
}

impl From<Ring> for RingDescriptor {
    fn from(r: Ring) -> Self {
        match r {
            Ring::Integers => RingDescriptor::Integers,
            Ring::Rationals => RingDescriptor::Rationals,
            Ring::PrimeField(p) => RingDescriptor::PrimeField { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    /// Row-major, one array per row.
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeMatrix {
    pub degree: i64,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    /// `d^k` for `k = min_degree ..`.
    pub differentials: Vec<DegreeMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyMember {
    pub n: i64,
    /// Components of `phi_n: A[-n] -> A[n]` at the degrees of `A[-n]`.
    pub components: Vec<DegreeMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum LefschetzJson {
    /// Nonzero `Phi^k: A^(k-1) -> A^(k+1)`.
    Power {
        components: Vec<DegreeMatrix>,
    },
    Family {
        maps: Vec<FamilyMember>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<GeneratorProfile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: u32,
    pub ring: RingDescriptor,
    pub complex: ComplexJson,
    /// Absent means `Phi = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<LefschetzJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandJson {
    pub k: i64,
    pub twist_weight: i64,
    pub complex: ComplexJson,
    /// `R_k -> A` at the degrees of `R_k`.
    pub ins: Vec<DegreeMatrix>,
    /// `A -> R_k` at the degrees of `A`.
    pub prj: Vec<DegreeMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    /// The identity `d h + h d = ...` this homotopy certifies.
    pub certifies: String,
    /// For pair witnesses, `prj` of summand `a` after `ins` of summand `b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    /// `h^m` at the degrees of the source.
    pub components: Vec<DegreeMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format_version: u32,
    /// SHA-256 of the canonical instance file.
    pub instance_hash: String,
    pub ring: RingDescriptor,
    pub summands: Vec<SummandJson>,
    pub witnesses: Vec<WitnessJson>,
}

const TOTAL: &str = "sum_k ins_k o prj_k - id";
const PAIR_SAME: &str = "prj_a o ins_a - id";
const PAIR_OTHER: &str = "prj_a o ins_b";

/// Parsed instance: the complex and its Lefschetz data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub complex: Arc<ChainComplex>,
    pub data: LefschetzData,
    pub metadata: Option<Metadata>,
}

fn matrix_to_json(m: &ExactMatrix) -> MatrixJson {
    let ring = m.ring();
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|i| m.row(i).iter().map(|x| ring.format_element(x)).collect()).collect(),
    }
}

fn matrix_from_json(ring: Ring, j: &MatrixJson, loc: &str) -> Result<ExactMatrix> {
    if j.entries.len() != j.rows {
        return Err(Error::parse(loc, format!("{} rows declared, {} given", j.rows, j.entries.len())));
    }
    let mut entries = Vec::with_capacity(j.rows * j.cols);
    for (i, row) in j.entries.iter().enumerate() {
        if row.len() != j.cols {
            return Err(Error::parse(
                format!("{loc}.entries[{i}]"),
                format!("{} columns declared, {} given", j.cols, row.len()),
            ));
        }
        for (c, s) in row.iter().enumerate() {
            let v =
                ring.parse_element(s).map_err(|e| Error::parse(format!("{loc}.entries[{i}][{c}]"), e.to_string()))?;
            entries.push(v);
        }
    }
    ExactMatrix::new(ring, j.rows, j.cols, entries).map_err(|e| Error::parse(loc, e.to_string()))
}

fn degree_list(degrees: impl Iterator<Item = i64>, ms: &[ExactMatrix]) -> Vec<DegreeMatrix> {
    degrees.zip(ms).map(|(degree, m)| DegreeMatrix { degree, matrix: matrix_to_json(m) }).collect()
}

/// Reads a list that must cover exactly `degrees`, in order.
fn degree_list_from_json(
    ring: Ring,
    list: &[DegreeMatrix],
    degrees: impl Iterator<Item = i64>,
    loc: &str,
) -> Result<Vec<ExactMatrix>> {
    let degrees: Vec<i64> = degrees.collect();
    if list.len() != degrees.len() {
        return Err(Error::parse(
            loc,
            format!("expected {} entries for degrees {degrees:?}, found {}", degrees.len(), list.len()),
        ));
    }
    list.iter()
        .zip(&degrees)
        .enumerate()
        .map(|(i, (dm, &k))| {
            let here = format!("{loc}[{i}]");
            if dm.degree != k {
                return Err(Error::parse(here, format!("degree {} where {k} was expected", dm.degree)));
            }
            matrix_from_json(ring, &dm.matrix, &format!("{here}.matrix"))
        })
        .collect()
}

pub fn complex_to_json(a: &ChainComplex) -> ComplexJson {
    ComplexJson {
        min_degree: a.min_degree(),
        ranks: a.ranks().to_vec(),
        differentials: degree_list(a.degrees(), a.differentials()),
    }
}

/// Shapes are checked here; `d o d = 0` is left to the caller.
pub fn complex_from_json(ring: Ring, j: &ComplexJson, loc: &str) -> Result<ChainComplex> {
    let n = j.ranks.len().saturating_sub(1) as i64;
    let diffs =
        degree_list_from_json(ring, &j.differentials, j.min_degree..j.min_degree + n, &format!("{loc}.differentials"))?;
    for (i, d) in diffs.iter().enumerate() {
        if d.shape() != (j.ranks[i + 1], j.ranks[i]) {
            return Err(Error::parse(
                format!("{loc}.differentials[{i}]"),
                format!(
                    "d^{} is {}x{} but ranks require {}x{}",
                    j.min_degree + i as i64,
                    d.rows(),
                    d.cols(),
                    j.ranks[i + 1],
                    j.ranks[i]
                ),
            ));
        }
    }
    ChainComplex::from_raw(ring, j.min_degree, j.ranks.clone(), diffs, 0).map_err(|e| Error::parse(loc, e.to_string()))
}

fn lefschetz_to_json(data: &LefschetzData) -> Option<LefschetzJson> {
    match data {
        LefschetzData::Power(phi) => {
            let components: Vec<DegreeMatrix> = phi
                .components()
                .into_iter()
                .map(|(degree, m)| DegreeMatrix { degree, matrix: matrix_to_json(&m) })
                .collect();
            if components.is_empty() {
                None
            } else {
                Some(LefschetzJson::Power { components })
            }
        }
        LefschetzData::Family(fam) => Some(LefschetzJson::Family {
            maps: fam
                .maps()
                .iter()
                .enumerate()
                .map(|(i, m)| FamilyMember {
                    n: i as i64 + 1,
                    components: degree_list(m.source().degrees(), m.components()),
                })
                .collect(),
        }),
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::parse("format_version", format!("unsupported version {v}, expected {FORMAT_VERSION}")));
    }
    Ok(())
}

fn to_canonical<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

impl InstanceFile {
    pub fn from_instance(a: &ChainComplex, data: &LefschetzData, metadata: Option<Metadata>) -> Self {
        InstanceFile {
            format_version: FORMAT_VERSION,
            ring: a.ring().into(),
            complex: complex_to_json(a),
            lefschetz: lefschetz_to_json(data),
            metadata,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_canonical_string(&self) -> String {
        to_canonical(self)
    }

    /// Validates the complex (`d o d = 0`) and the Lefschetz data.
    pub fn to_instance(&self) -> Result<Instance> {
        check_version(self.format_version)?;
        let ring = self.ring.ring().map_err(|e| Error::parse("ring", e.to_string()))?;
        let raw = complex_from_json(ring, &self.complex, "complex")?;
        if let Err(v) = raw.validate() {
            return Err(Error::parse(format!("complex degree {}", v.degree), v.message));
        }
        let a = Arc::new(raw);
        let data = match &self.lefschetz {
            None => LefschetzData::Power(LefschetzMap::zero(a.clone())),
            Some(LefschetzJson::Power { components }) => {
                let mut comps = std::collections::BTreeMap::new();
                for (i, dm) in components.iter().enumerate() {
                    let loc = format!("lefschetz.components[{i}]");
                    let m = matrix_from_json(ring, &dm.matrix, &format!("{loc}.matrix"))?;
                    let want = (a.rank(dm.degree + 1), a.rank(dm.degree - 1));
                    if m.shape() != want {
                        return Err(Error::parse(
                            loc,
                            format!("Phi^{} is {}x{} but must be {}x{}", dm.degree, m.rows(), m.cols(), want.0, want.1),
                        ));
                    }
                    if comps.insert(dm.degree, m).is_some() {
                        return Err(Error::parse(loc, format!("degree {} given twice", dm.degree)));
                    }
                }
                LefschetzData::Power(LefschetzMap::new(a.clone(), &comps)?)
            }
            Some(LefschetzJson::Family { maps }) => {
                let mut out = Vec::new();
                for (i, member) in maps.iter().enumerate() {
                    let n = i as i64 + 1;
                    let loc = format!("lefschetz.maps[{i}]");
                    if member.n != n {
                        return Err(Error::parse(loc, format!("n = {} where {n} was expected", member.n)));
                    }
                    let source = Arc::new(a.shift(-n));
                    let target = Arc::new(a.shift(n));
                    let comps = degree_list_from_json(
                        ring,
                        &member.components,
                        source.degrees(),
                        &format!("{loc}.components"),
                    )?;
                    let map =
                        ChainMap::from_raw(source, target, comps).map_err(|e| Error::parse(&loc, e.to_string()))?;
                    out.push(map);
                }
                LefschetzData::Family(LefschetzFamily::new(a.clone(), out)?)
            }
        };
        Ok(Instance { complex: a, data, metadata: self.metadata.clone() })
    }
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    InstanceFile::parse(text)?.to_instance()
}

pub fn serialize_instance(instance: &Instance) -> String {
    InstanceFile::from_instance(&instance.complex, &instance.data, instance.metadata.clone()).to_canonical_string()
}

/// Hex SHA-256 of the canonical serialization of `instance`.
pub fn instance_hash(instance: &Instance) -> String {
    hex::encode(Sha256::digest(serialize_instance(instance).as_bytes()))
}

impl CertificateFile {
    pub fn from_certificate(cert: &DecompositionCertificate, a: &ChainComplex, instance_hash: String) -> Self {
        let summands: Vec<SummandJson> = cert
            .summands
            .iter()
            .map(|s| SummandJson {
                k: s.k,
                twist_weight: s.twist_weight,
                complex: complex_to_json(&s.complex),
                ins: degree_list(s.complex.degrees(), &s.ins),
                prj: degree_list(a.degrees(), &s.prj),
            })
            .collect();
        let mut witnesses = vec![WitnessJson {
            certifies: TOTAL.into(),
            a: None,
            b: None,
            components: degree_list(a.degrees(), &cert.total),
        }];
        for (ia, sa) in cert.summands.iter().enumerate() {
            for (ib, sb) in cert.summands.iter().enumerate() {
                witnesses.push(WitnessJson {
                    certifies: if ia == ib { PAIR_SAME } else { PAIR_OTHER }.into(),
                    a: Some(sa.k),
                    b: Some(sb.k),
                    components: degree_list(sb.complex.degrees(), &cert.pairs[ia][ib]),
                });
            }
        }
        CertificateFile { format_version: FORMAT_VERSION, instance_hash, ring: cert.ring.into(), summands, witnesses }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_canonical_string(&self) -> String {
        to_canonical(self)
    }

    /// Rebuilds the certificate over `a`. Summand complexes are not required
    /// to satisfy `d o d = 0` here; that is the checker's job.
    pub fn to_certificate(&self, a: &ChainComplex) -> Result<DecompositionCertificate> {
        check_version(self.format_version)?;
        let ring = self.ring.ring().map_err(|e| Error::parse("ring", e.to_string()))?;
        let mut summands = Vec::new();
        for (i, s) in self.summands.iter().enumerate() {
            let loc = format!("summands[{i}]");
            let complex = complex_from_json(ring, &s.complex, &format!("{loc}.complex"))?;
            let ins = degree_list_from_json(ring, &s.ins, complex.degrees(), &format!("{loc}.ins"))?;
            let prj = degree_list_from_json(ring, &s.prj, a.degrees(), &format!("{loc}.prj"))?;
            summands.push(CertificateSummand { k: s.k, twist_weight: s.twist_weight, complex, ins, prj });
        }
        let n = summands.len();
        if self.witnesses.len() != 1 + n * n {
            return Err(Error::parse(
                "witnesses",
                format!("expected {} witnesses, found {}", 1 + n * n, self.witnesses.len()),
            ));
        }
        let total_json = &self.witnesses[0];
        if total_json.certifies != TOTAL || total_json.a.is_some() || total_json.b.is_some() {
            return Err(Error::parse("witnesses[0]", format!("the first witness must certify \"{TOTAL}\"")));
        }
        let total = degree_list_from_json(ring, &total_json.components, a.degrees(), "witnesses[0].components")?;
        let mut pairs = vec![Vec::with_capacity(n); n];
        for ia in 0..n {
            for ib in 0..n {
                let idx = 1 + ia * n + ib;
                let w = &self.witnesses[idx];
                let loc = format!("witnesses[{idx}]");
                let want = if ia == ib { PAIR_SAME } else { PAIR_OTHER };
                if w.certifies != want || w.a != Some(summands[ia].k) || w.b != Some(summands[ib].k) {
                    return Err(Error::parse(
                        loc,
                        format!("expected \"{want}\" for a = {}, b = {}", summands[ia].k, summands[ib].k),
                    ));
                }
                let src = &summands[ib].complex;
                pairs[ia].push(degree_list_from_json(
                    ring,
                    &w.components,
                    src.degrees(),
                    &format!("{loc}.components"),
                )?);
            }
        }
        Ok(DecompositionCertificate { ring, summands, total, pairs })
    }
}

pub fn parse_certificate(text: &str, a: &ChainComplex) -> Result<(DecompositionCertificate, String)> {
    let file = CertificateFile::parse(text)?;
    let cert = file.to_certificate(a)?;
    Ok((cert, file.instance_hash))
}

pub fn serialize_certificate(cert: &DecompositionCertificate, a: &ChainComplex, instance_hash: &str) -> String {
    CertificateFile::from_certificate(cert, a, instance_hash.to_string()).to_canonical_string()
}
