//! The descending induction: at step `n` the complex `A_n` (amplitude in
//! `[-n, n]`) splits as `H^-n(A)[n] (+) H^n(A)[-n] (+) A_(n-1)`.

use std::sync::Arc;

use crate::complex::{
    amplitude, bottom_truncation_model, cohomology_with_basis, induced_map, top_truncation_model, ChainComplex,
    ChainMap, Homotopy,
};
use crate::error::{Error, Result};
use crate::homotopy::{
    homotopy_inverse, minimize, null_homotopy, split_with_retraction, witness, Decomposition, HomotopyEquivalence,
};
use crate::linalg::{module_map_is_iso, module_maps_agree};

use super::certificate::DecompositionCertificate;
use super::data::{amplitude_bound, LefschetzData};

#[derive(Clone, Debug)]
pub struct FinishedSummand {
    /// `R_k ~ H^-k(A)[k]`, concentrated in degree `-k`.
    pub k: i64,
    pub twist_weight: i64,
    pub complex: Arc<ChainComplex>,
    pub ins: ChainMap,
    pub prj: ChainMap,
}

/// `A ~ A_n (+) (+)_(|k| > n) R_k` with `amplitude(A_n)` inside `[-n, n]`.
///
/// Stored as a decomposition of `A` whose last part is `A_n`; the other
/// parts are the finished summands.
#[derive(Clone, Debug)]
pub struct InductionState {
    n: i64,
    decomposition: Decomposition,
    /// `(k, twist_weight)` of every finished part.
    labels: Vec<(i64, i64)>,
}

impl InductionState {
    /// `A_n = A` up to minimization.
    pub fn initial(a: &Arc<ChainComplex>, n: i64) -> Result<Self> {
        let m = minimize(a)?;
        let decomposition = Decomposition::trivial(a.clone()).refine(0, &Decomposition::from_minimization(a, &m))?;
        Ok(InductionState { n, decomposition, labels: Vec::new() })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    fn last(&self) -> usize {
        self.decomposition.parts.len() - 1
    }

    pub fn a_n(&self) -> &Arc<ChainComplex> {
        &self.decomposition.parts[self.last()].complex
    }

    /// `i_n: A_n -> A`
    pub fn i_n(&self) -> &ChainMap {
        &self.decomposition.parts[self.last()].ins
    }

    /// `p_n: A -> A_n`
    pub fn p_n(&self) -> &ChainMap {
        &self.decomposition.parts[self.last()].prj
    }

    /// `p_n o i_n ~ id`
    pub fn witness(&self) -> &Homotopy {
        &self.decomposition.pairs[self.last()][self.last()]
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn finished_summands(&self) -> Vec<FinishedSummand> {
        self.labels
            .iter()
            .zip(&self.decomposition.parts)
            .map(|(&(k, twist_weight), p)| FinishedSummand {
                k,
                twist_weight,
                complex: p.complex.clone(),
                ins: p.ins.clone(),
                prj: p.prj.clone(),
            })
            .collect()
    }
}

/// The composite `T' -> A_n[-n] -> A[-n] -> A[n] -> A_n[n] -> E'`.
#[derive(Clone, Debug)]
pub struct AlphaData {
    /// `T' = T[-n]`, a free model of `H^-n(A_n)` in degree 0.
    pub t: Arc<ChainComplex>,
    /// `u': T' -> A_n[-n]`
    pub u: ChainMap,
    /// `E' = E[n]`, a free model of `H^n(A_n)` in degree 0.
    pub e: Arc<ChainComplex>,
    /// `v': A_n[n] -> E'`
    pub v: ChainMap,
    /// `p_n[n] o Psi_n o i_n[-n]: A_n[-n] -> A_n[n]`
    pub middle: ChainMap,
    pub alpha: ChainMap,
    /// Whether `H^0(alpha)` equals `H^0(Psi_n)` under the truncation identifications.
    pub check: bool,
}

pub fn build_alpha(state: &InductionState, data: &LefschetzData) -> Result<AlphaData> {
    let n = state.n;
    let a_n = state.a_n();
    let (t, u) = bottom_truncation_model(a_n, n)?;
    let (e, v) = top_truncation_model(a_n, n)?;
    let t = Arc::new(t.shift(-n));
    let u = u.shift(-n);
    let e = Arc::new(e.shift(n));
    let v = v.shift(n);
    let psi = data.map_at(n)?;
    let into_a = state.i_n().shift(-n);
    let from_a = state.p_n().shift(n);
    let middle = from_a.compose(&psi.compose(&into_a)?)?;
    let alpha = v.compose(&middle.compose(&u)?)?;

    let first = into_a.compose(&u)?;
    let last = v.compose(&from_a)?;
    let h_t = cohomology_with_basis(&t, 0);
    let h_src = cohomology_with_basis(psi.source(), 0);
    let h_dst = cohomology_with_basis(psi.target(), 0);
    let h_e = cohomology_with_basis(&e, 0);
    let m_first = induced_map(&first, &h_t, &h_src)?;
    let m_psi = induced_map(&psi, &h_src, &h_dst)?;
    let m_last = induced_map(&last, &h_dst, &h_e)?;
    let m_alpha = induced_map(&alpha, &h_t, &h_e)?;
    let composite = &m_last * &(&m_psi * &m_first);
    let check = module_maps_agree(&m_alpha, &composite, &h_e.module)?
        && module_map_is_iso(&m_first, &h_t.module, &h_src.module)?
        && module_map_is_iso(&m_last, &h_dst.module, &h_e.module)?;
    Ok(AlphaData { t, u, e, v, middle, alpha, check })
}

/// What one induction step observed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub n: i64,
    pub alpha_check: bool,
    /// The component of `alpha` through the bottom summand is strictly zero.
    pub vanishing_strict: bool,
    pub c_amplitude: Option<(i64, i64)>,
    pub d_amplitude: Option<(i64, i64)>,
    pub next_amplitude: Option<(i64, i64)>,
}

impl StepTrace {
    pub fn c_within(&self) -> bool {
        self.c_amplitude.is_none_or(|(a, b)| 1 <= a && b <= 2 * self.n)
    }

    pub fn d_within(&self) -> bool {
        self.d_amplitude.is_none_or(|(a, b)| 1 - 2 * self.n <= a && b <= -1)
    }

    pub fn next_within(&self) -> bool {
        self.next_amplitude.is_none_or(|(a, b)| -(self.n - 1) <= a && b < self.n)
    }
}

fn amplitude_error(what: &str, n: i64, amp: Option<(i64, i64)>) -> Error {
    Error::AmplitudeViolation(format!("{what} at n={n} has cohomology in {amp:?}"))
}

fn minimized(d: &Decomposition, part: usize) -> Result<Decomposition> {
    let c = d.parts[part].complex.clone();
    let m = minimize(&c)?;
    d.refine(part, &Decomposition::from_minimization(&c, &m))
}

/// One step `n -> n - 1`.
pub fn induction_step(state: &InductionState, data: &LefschetzData) -> Result<(InductionState, StepTrace)> {
    let n = state.n;
    if n < 1 {
        return Err(Error::AmplitudeViolation("induction steps need n >= 1".into()));
    }
    let alpha = build_alpha(state, data)?;
    let HomotopyEquivalence { inverse: beta, source_witness: beta_alpha, target_witness: alpha_beta } =
        homotopy_inverse(&alpha.alpha)?.ok_or(Error::HardLefschetzViolation(n))?;

    // A_n[-n] ~ T' (+) C, split by the retraction beta o v' o middle of u'.
    let r1 = alpha.v.compose(&alpha.middle)?;
    let g1 = beta.compose(&r1)?;
    let split1 = split_with_retraction(&alpha.u, &g1, &beta_alpha)?;
    let dec1 = minimized(&split1.to_decomposition(), 1)?;
    let c_amplitude = amplitude(&dec1.parts[1].complex);

    // On A_n[n] = A_n[-n][2n], alpha factors through C[2n] up to homotopy.
    let shifted = dec1.shift(2 * n);
    let q = alpha.middle.compose(&alpha.u)?;
    let (bottom, rest) = (&shifted.parts[0], &shifted.parts[1]);
    let vanishing = alpha.v.compose(&bottom.ins)?;
    let h_zero = null_homotopy(&vanishing)?.ok_or_else(|| {
        Error::InternalWitnessFailure(format!("bottom component of alpha not null-homotopic at n={n}"))
    })?;
    let a1 = rest.prj.compose(&q)?;
    let b1 = alpha.v.compose(&rest.ins)?;
    let pq = bottom.prj.compose(&q)?;
    let factor_components = alpha
        .t
        .degrees()
        .map(|k| {
            let through = &(&*alpha.v.component(k - 1) * &*shifted.total.component(k)) * &*q.component(k);
            let killed = &*h_zero.component(k) * &*pq.component(k);
            &through - &killed
        })
        .collect();
    let factorization = witness(b1.compose(&a1)?, alpha.alpha.clone(), factor_components, "factorization of alpha")?;

    // C[2n] ~ E' (+) D, split by the section a1 o beta of b1.
    let s = a1.compose(&beta)?;
    let w2 = factorization.compose_right(&beta)?.then(&alpha_beta)?;
    let split2 = split_with_retraction(&s, &b1, &w2)?;
    let dec2 = minimized(&split2.to_decomposition(), 1)?;
    let d_amplitude = amplitude(&dec2.parts[1].complex);

    // A_n ~ T (+) E (+) D[-n], then tidy the two finished summands.
    let mut local = dec1.shift(n).refine(1, &dec2.shift(-n))?;
    local = minimized(&local, 0)?;
    local = minimized(&local, 1)?;
    let next_amplitude = amplitude(&local.parts[2].complex);

    let trace = StepTrace {
        n,
        alpha_check: alpha.check,
        vanishing_strict: vanishing.is_zero(),
        c_amplitude,
        d_amplitude,
        next_amplitude,
    };
    if !trace.c_within() {
        return Err(amplitude_error("complement C", n, c_amplitude));
    }
    if !trace.d_within() {
        return Err(amplitude_error("complement D", n, d_amplitude));
    }
    if !trace.next_within() {
        return Err(amplitude_error("A_(n-1)", n, next_amplitude));
    }

    let global = state.decomposition.refine(state.last(), &local)?;
    let mut labels = state.labels.clone();
    labels.push((n, 0));
    labels.push((-n, n));
    let next = compact(InductionState { n: n - 1, decomposition: global, labels });
    Ok((next, trace))
}

/// Drops zero finished summands (keeping `A_n` as the last part).
fn compact(state: InductionState) -> InductionState {
    let finished = state.labels.len();
    let labels = state
        .labels
        .iter()
        .zip(&state.decomposition.parts)
        .filter(|(_, p)| !p.complex.is_zero())
        .map(|(l, _)| *l)
        .collect();
    InductionState { n: state.n, decomposition: state.decomposition.without_zero_parts_before(finished), labels }
}

/// Output of [`deligne_decompose_traced`].
#[derive(Clone, Debug)]
pub struct DecompositionRun {
    pub certificate: DecompositionCertificate,
    pub trace: Vec<StepTrace>,
    pub decomposition: Decomposition,
    /// `(k, twist_weight)` for each part of `decomposition`.
    pub labels: Vec<(i64, i64)>,
}

/// `A ~ (+)_k H^-k(A)[k]` as a checkable certificate.
pub fn deligne_decompose(a: &Arc<ChainComplex>, data: &LefschetzData) -> Result<DecompositionCertificate> {
    Ok(deligne_decompose_traced(a, data)?.certificate)
}

pub fn deligne_decompose_traced(a: &Arc<ChainComplex>, data: &LefschetzData) -> Result<DecompositionRun> {
    if **data.base() != **a {
        return Err(Error::EndpointMismatch("Lefschetz data is defined on a different complex".into()));
    }
    if let super::LefschetzData::Power(phi) = data {
        super::validate_lefschetz(phi).map_err(|v| Error::InvalidLefschetz { degree: v.degree, message: v.message })?;
    }
    if amplitude(a).is_none() {
        let contraction = null_homotopy(&ChainMap::identity(a.clone()))?
            .ok_or_else(|| Error::InternalWitnessFailure("acyclic complex without contraction".into()))?;
        let decomposition = Decomposition::empty(a.clone(), contraction)?;
        let certificate = DecompositionCertificate::from_decomposition(&decomposition, &[])?;
        return Ok(DecompositionRun { certificate, trace: Vec::new(), decomposition, labels: Vec::new() });
    }
    let n0 = amplitude_bound(a);
    let mut state = InductionState::initial(a, n0)?;
    let mut trace = Vec::new();
    while state.n >= 1 {
        if state.a_n().is_zero() {
            state.n = 0;
            break;
        }
        let (next, step) = induction_step(&state, data)?;
        trace.push(step);
        state = next;
    }
    let last = state.last();
    let mut decomposition = minimized(&state.decomposition, last)?;
    let mut labels = state.labels.clone();
    labels.push((0, 0));
    let keep: Vec<bool> = decomposition.parts.iter().map(|p| !p.complex.is_zero()).collect();
    decomposition = decomposition.without_zero_parts();
    labels = labels.into_iter().zip(keep).filter(|(_, k)| *k).map(|(l, _)| l).collect();
    let certificate = DecompositionCertificate::from_decomposition(&decomposition, &labels)?;
    Ok(DecompositionRun { certificate, trace, decomposition, labels })
}
