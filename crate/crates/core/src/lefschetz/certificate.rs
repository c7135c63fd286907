//! Decomposition certificates and their independent checker.
//!
//! The checker only multiplies matrices and computes cohomology invariants;
//! it never solves for a witness.

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::complex::{check_homotopy_identity, cohomology, ChainComplex, ChainMap};
use crate::error::Result;
use crate::homotopy::{canonical_form, first_inert_entry, Decomposition};
use crate::linalg::{ExactMatrix, Ring};

/// One summand `R_k ~ H^-k(A)[k]` with its comparison maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateSummand {
    pub k: i64,
    pub twist_weight: i64,
    /// Not assumed to satisfy `d o d = 0`; the checker validates it.
    pub complex: ChainComplex,
    /// `R_k -> A`, one matrix per degree of `R_k`.
    pub ins: Vec<ExactMatrix>,
    /// `A -> R_k`, one matrix per degree of `A`.
    pub prj: Vec<ExactMatrix>,
}

/// `A ~ (+)_k R_k` with `sum_k ins_k prj_k ~ id` and `prj_j ins_k ~ delta_jk id`.
///
/// Witnesses are stored in normal form: entries that cannot influence
/// `d h + h d` are zero (see [`crate::homotopy::canonical_form`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub ring: Ring,
    /// Ordered by `k`.
    pub summands: Vec<CertificateSummand>,
    /// `h^m: A^m -> A^(m-1)` with `d h + h d = sum ins prj - id`.
    pub total: Vec<ExactMatrix>,
    /// `pairs[a][b]`: `h^m: R_b^m -> R_a^(m-1)` with `d h + h d = prj_a ins_b - delta_ab id`.
    pub pairs: Vec<Vec<Vec<ExactMatrix>>>,
}

impl DecompositionCertificate {
    pub(crate) fn from_decomposition(d: &Decomposition, labels: &[(i64, i64)]) -> Result<Self> {
        let mut order: Vec<usize> = (0..d.parts.len()).collect();
        order.sort_by_key(|&i| labels[i].0);
        let summands = order
            .iter()
            .map(|&i| {
                let p = &d.parts[i];
                CertificateSummand {
                    k: labels[i].0,
                    twist_weight: labels[i].1,
                    complex: (*p.complex).clone(),
                    ins: p.ins.components().to_vec(),
                    prj: p.prj.components().to_vec(),
                }
            })
            .collect();
        let pairs = order
            .iter()
            .map(|&a| order.iter().map(|&b| canonical_form(&d.pairs[a][b]).components().to_vec()).collect())
            .collect();
        Ok(DecompositionCertificate {
            ring: d.ambient.ring(),
            summands,
            total: canonical_form(&d.total).components().to_vec(),
            pairs,
        })
    }

    /// Every map and witness matrix in a fixed order (summand differentials
    /// excluded), for enumerating single-entry edits.
    pub fn matrices_mut(&mut self) -> Vec<&mut ExactMatrix> {
        let mut out: Vec<&mut ExactMatrix> = Vec::new();
        for s in &mut self.summands {
            out.extend(s.ins.iter_mut());
            out.extend(s.prj.iter_mut());
        }
        out.extend(self.total.iter_mut());
        for row in &mut self.pairs {
            for h in row {
                out.extend(h.iter_mut());
            }
        }
        out
    }
}

/// The first failed check of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFailure {
    pub location: String,
    pub message: String,
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for CertificateFailure {}

fn fail<T>(location: impl Into<String>, message: impl Into<String>) -> std::result::Result<T, CertificateFailure> {
    Err(CertificateFailure { location: location.into(), message: message.into() })
}

fn component(
    list: &[ExactMatrix],
    base: &ChainComplex,
    k: i64,
    ring: Ring,
    rows: usize,
    cols: usize,
) -> Cow<'static, ExactMatrix> {
    let i = k - base.min_degree();
    if !base.is_zero() && i >= 0 && (i as usize) < list.len() {
        Cow::Owned(list[i as usize].clone())
    } else {
        Cow::Owned(ExactMatrix::zeros(ring, rows, cols))
    }
}

fn check_shapes(
    location: &str,
    list: &[ExactMatrix],
    source: &ChainComplex,
    shape: impl Fn(i64) -> (usize, usize),
    ring: Ring,
) -> std::result::Result<(), CertificateFailure> {
    if list.len() != source.ranks().len() {
        return fail(location, format!("expected {} matrices, found {}", source.ranks().len(), list.len()));
    }
    for (k, m) in source.degrees().zip(list) {
        if m.ring() != ring {
            return fail(format!("{location} degree {k}"), format!("matrix over {} instead of {ring}", m.ring()));
        }
        if m.shape() != shape(k) {
            return fail(format!("{location} degree {k}"), format!("shape {:?}, expected {:?}", m.shape(), shape(k)));
        }
    }
    Ok(())
}

fn check_normal_form(
    location: &str,
    source: &ChainComplex,
    target: &ChainComplex,
    h: &[ExactMatrix],
) -> std::result::Result<(), CertificateFailure> {
    if let Some((k, r, c)) = first_inert_entry(source, target, h) {
        return fail(format!("{location} degree {k}"), format!("entry ({r}, {c}) is outside the witness normal form"));
    }
    Ok(())
}

/// Re-checks a certificate against `A` by matrix arithmetic.
pub fn verify_certificate(
    a: &ChainComplex,
    cert: &DecompositionCertificate,
) -> std::result::Result<(), CertificateFailure> {
    let ring = a.ring();
    if cert.ring != ring {
        return fail("certificate", format!("ring {} does not match the complex over {ring}", cert.ring));
    }
    if let Err(v) = a.validate() {
        return fail(format!("complex A degree {}", v.degree), v.message);
    }

    let mut seen = BTreeSet::new();
    let mut summands: Vec<Arc<ChainComplex>> = Vec::new();
    for (i, s) in cert.summands.iter().enumerate() {
        let loc = format!("summand {i} (k={})", s.k);
        if !seen.insert(s.k) {
            return fail(loc, "duplicate index k");
        }
        let expected_twist = if s.k < 0 { -s.k } else { 0 };
        if s.twist_weight != expected_twist {
            return fail(loc, format!("twist weight {} but expected {expected_twist}", s.twist_weight));
        }
        let r = &s.complex;
        if r.ring() != ring {
            return fail(loc, format!("complex over {} instead of {ring}", r.ring()));
        }
        if let Err(v) = r.validate() {
            return fail(format!("{loc} complex degree {}", v.degree), format!("d o d != 0: {}", v.message));
        }
        check_shapes(&format!("{loc} ins"), &s.ins, r, |k| (a.rank(k), r.rank(k)), ring)?;
        check_shapes(&format!("{loc} prj"), &s.prj, a, |k| (r.rank(k), a.rank(k)), ring)?;
        for k in r.degrees() {
            let lhs = &*a.d(k) * &component(&s.ins, r, k, ring, a.rank(k), r.rank(k));
            let rhs = &*component(&s.ins, r, k + 1, ring, a.rank(k + 1), r.rank(k + 1)) * &*r.d(k);
            if lhs != rhs {
                return fail(format!("{loc} ins degree {k}"), "chain map law d ins = ins d fails");
            }
        }
        for k in a.degrees() {
            let lhs = &*r.d(k) * &component(&s.prj, a, k, ring, r.rank(k), a.rank(k));
            let rhs = &*component(&s.prj, a, k + 1, ring, r.rank(k + 1), a.rank(k + 1)) * &*a.d(k);
            if lhs != rhs {
                return fail(format!("{loc} prj degree {k}"), "chain map law d prj = prj d fails");
            }
        }
        for j in r.degrees() {
            if j != -s.k && !cohomology(r, j).is_zero() {
                return fail(format!("{loc} cohomology degree {j}"), "summand has cohomology outside degree -k");
            }
        }
        let want = cohomology(a, -s.k);
        let got = cohomology(r, -s.k);
        if !got.is_isomorphic(&want) {
            return fail(
                format!("{loc} cohomology degree {}", -s.k),
                format!("summand has {} but A has {}", got.describe(), want.describe()),
            );
        }
        summands.push(Arc::new(r.clone()));
    }
    for j in a.degrees() {
        if !seen.contains(&-j) && !cohomology(a, j).is_zero() {
            return fail(format!("cohomology degree {j}"), format!("H^{j}(A) is not covered by a summand R_{}", -j));
        }
    }

    // sum_k ins_k prj_k - id = d h + h d
    check_shapes("total witness", &cert.total, a, |k| (a.rank(k - 1), a.rank(k)), ring)?;
    let products: Vec<Vec<ExactMatrix>> = cert
        .summands
        .iter()
        .zip(&summands)
        .map(|(s, r)| {
            a.degrees()
                .map(|k| {
                    &*component(&s.ins, r, k, ring, a.rank(k), r.rank(k))
                        * &*component(&s.prj, a, k, ring, r.rank(k), a.rank(k))
                })
                .collect()
        })
        .collect();
    let lo = a.min_degree();
    let expected_total = |k: i64| {
        let mut acc = -&ExactMatrix::identity(ring, a.rank(k));
        for p in &products {
            acc = &acc + &p[(k - lo) as usize];
        }
        acc
    };
    if let Err(k) =
        check_homotopy_identity(a, a, |k| component(&cert.total, a, k, ring, a.rank(k - 1), a.rank(k)), expected_total)
    {
        return fail(format!("total witness degree {k}"), "d h + h d != sum ins o prj - id");
    }
    check_normal_form("total witness", a, a, &cert.total)?;

    // prj_a ins_b - delta id = d h + h d
    let n = cert.summands.len();
    if cert.pairs.len() != n || cert.pairs.iter().any(|row| row.len() != n) {
        return fail("pair witnesses", format!("expected a {n} x {n} table"));
    }
    for (ia, sa) in cert.summands.iter().enumerate() {
        for (ib, sb) in cert.summands.iter().enumerate() {
            let loc = format!("pair witness (k={}, k={})", sa.k, sb.k);
            let (ra, rb) = (&summands[ia], &summands[ib]);
            let h = &cert.pairs[ia][ib];
            check_shapes(&loc, h, rb, |k| (ra.rank(k - 1), rb.rank(k)), ring)?;
            let expected = |k: i64| {
                let prod = &*component(&sa.prj, a, k, ring, ra.rank(k), a.rank(k))
                    * &*component(&sb.ins, rb, k, ring, a.rank(k), rb.rank(k));
                if ia == ib {
                    &prod - &ExactMatrix::identity(ring, rb.rank(k))
                } else {
                    prod
                }
            };
            if let Err(k) =
                check_homotopy_identity(rb, ra, |k| component(h, rb, k, ring, ra.rank(k - 1), rb.rank(k)), expected)
            {
                let what = if ia == ib { "prj o ins - id" } else { "prj o ins" };
                return fail(format!("{loc} degree {k}"), format!("d h + h d != {what}"));
            }
            check_normal_form(&loc, rb, ra, h)?;
        }
    }
    Ok(())
}

/// Wraps the certificate maps as chain maps (after a successful check).
pub fn certificate_maps(
    a: &Arc<ChainComplex>,
    cert: &DecompositionCertificate,
) -> Result<Vec<(Arc<ChainComplex>, ChainMap, ChainMap)>> {
    cert.summands
        .iter()
        .map(|s| {
            let r = Arc::new(s.complex.clone());
            let ins = ChainMap::new(r.clone(), a.clone(), s.ins.clone())?;
            let prj = ChainMap::new(a.clone(), r.clone(), s.prj.clone())?;
            Ok((r, ins, prj))
        })
        .collect()
}
