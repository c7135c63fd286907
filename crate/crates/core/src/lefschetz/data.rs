use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{amplitude, cohomology_with_basis, induced_map, ChainComplex, ChainMap, Violation};
use crate::error::{Error, Result};
use crate::linalg::{module_map_is_iso, ExactMatrix, ModulePresentation};

/// `phi: A[-1] -> A[1]` given by `Phi^k: A^(k-1) -> A^(k+1)`, subject to
/// `d^(k+1) Phi^k = Phi^(k+1) d^(k-1)`. Each application carries one unit
/// of twist weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzMap {
    base: Arc<ChainComplex>,
    map: ChainMap,
}

impl LefschetzMap {
    /// Shape-checked only; see [`validate_lefschetz`].
    pub fn from_components(base: Arc<ChainComplex>, components: &BTreeMap<i64, ExactMatrix>) -> Result<Self> {
        let source = Arc::new(base.shift(-1));
        let target = Arc::new(base.shift(1));
        let ring = base.ring();
        for (&k, m) in components {
            if !source.degrees().contains(&k) && m.rows() * m.cols() > 0 {
                return Err(Error::InvalidLefschetz {
                    degree: k,
                    message: "component outside the support of A[-1]".into(),
                });
            }
        }
        let comps = source
            .degrees()
            .map(|k| {
                components
                    .get(&k)
                    .cloned()
                    .unwrap_or_else(|| ExactMatrix::zeros(ring, base.rank(k + 1), base.rank(k - 1)))
            })
            .collect();
        let map = ChainMap::from_raw(source, target, comps).map_err(|e| match e {
            Error::InvalidChainMap { degree, message } => Error::InvalidLefschetz { degree, message },
            other => other,
        })?;
        Ok(LefschetzMap { base, map })
    }

    /// Checked constructor.
    pub fn new(base: Arc<ChainComplex>, components: &BTreeMap<i64, ExactMatrix>) -> Result<Self> {
        let phi = Self::from_components(base, components)?;
        validate_lefschetz(&phi).map_err(|v| Error::InvalidLefschetz { degree: v.degree, message: v.message })?;
        Ok(phi)
    }

    pub fn zero(base: Arc<ChainComplex>) -> Self {
        Self::from_components(base, &BTreeMap::new()).expect("zero map has the right shape")
    }

    pub fn base(&self) -> &Arc<ChainComplex> {
        &self.base
    }

    /// `Phi^k: A^(k-1) -> A^(k+1)`
    pub fn component(&self, k: i64) -> ExactMatrix {
        self.map.component(k).into_owned()
    }

    /// Nonzero components keyed by degree.
    pub fn components(&self) -> BTreeMap<i64, ExactMatrix> {
        self.map.source().degrees().map(|k| (k, self.component(k))).filter(|(_, m)| !m.is_zero()).collect()
    }

    pub fn as_chain_map(&self) -> &ChainMap {
        &self.map
    }
}

/// Reports the first degree where `d^(k+1) Phi^k != Phi^(k+1) d^(k-1)`.
pub fn validate_lefschetz(phi: &LefschetzMap) -> std::result::Result<(), Violation> {
    let a = &phi.base;
    for k in phi.map.source().degrees() {
        let lhs = &*a.d(k + 1) * &phi.component(k);
        let rhs = &phi.component(k + 1) * &*a.d(k - 1);
        if lhs != rhs {
            return Err(Violation { degree: k, message: "d Phi != Phi d".into() });
        }
    }
    Ok(())
}

/// `Psi_n: A[-n] -> A[n]` with `Psi_n^k = Phi^(k+n-1) ... Phi^(k-n+3) Phi^(k-n+1)`.
pub fn iterate_lefschetz(phi: &LefschetzMap, n: i64) -> Result<ChainMap> {
    if n < 1 {
        return Err(Error::InvalidLefschetz { degree: n, message: "iterates start at n = 1".into() });
    }
    let a = &phi.base;
    let ring = a.ring();
    let source = Arc::new(a.shift(-n));
    let target = Arc::new(a.shift(n));
    let components = source
        .degrees()
        .map(|k| {
            let mut acc = ExactMatrix::identity(ring, a.rank(k - n));
            let mut j = k - n + 1;
            while j < k + n {
                acc = &phi.component(j) * &acc;
                j += 2;
            }
            acc
        })
        .collect();
    ChainMap::new(source, target, components)
}

/// Independent maps `phi_n: A[-n] -> A[n]` for `n = 1, 2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzFamily {
    base: Arc<ChainComplex>,
    maps: Vec<ChainMap>,
}

impl LefschetzFamily {
    /// `maps[i]` is `phi_(i+1)` and must be a chain map `A[-(i+1)] -> A[i+1]`.
    pub fn new(base: Arc<ChainComplex>, maps: Vec<ChainMap>) -> Result<Self> {
        for (i, m) in maps.iter().enumerate() {
            let n = i as i64 + 1;
            if **m.source() != base.shift(-n) || **m.target() != base.shift(n) {
                return Err(Error::InvalidLefschetz {
                    degree: n,
                    message: format!("phi_{n} must map A[-{n}] to A[{n}]"),
                });
            }
            m.verify().map_err(|e| match e {
                Error::InvalidChainMap { degree, message } => {
                    Error::InvalidLefschetz { degree, message: format!("phi_{n}: {message}") }
                }
                other => other,
            })?;
        }
        Ok(LefschetzFamily { base, maps })
    }

    /// The family of iterates of `phi` for `n = 1..=count`.
    pub fn iterates(phi: &LefschetzMap, count: i64) -> Result<Self> {
        let maps = (1..=count).map(|n| iterate_lefschetz(phi, n)).collect::<Result<_>>()?;
        Self::new(phi.base.clone(), maps)
    }

    pub fn base(&self) -> &Arc<ChainComplex> {
        &self.base
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }
}

/// Either a single Lefschetz map (used through its iterates) or a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LefschetzData {
    Power(LefschetzMap),
    Family(LefschetzFamily),
}

impl LefschetzData {
    pub fn base(&self) -> &Arc<ChainComplex> {
        match self {
            LefschetzData::Power(phi) => phi.base(),
            LefschetzData::Family(fam) => fam.base(),
        }
    }

    /// The map `A[-n] -> A[n]` used at step `n`; zero beyond a family's length.
    pub fn map_at(&self, n: i64) -> Result<ChainMap> {
        match self {
            LefschetzData::Power(phi) => iterate_lefschetz(phi, n),
            LefschetzData::Family(fam) => Ok(match fam.maps.get((n - 1) as usize) {
                Some(m) => m.clone(),
                None => ChainMap::zero(Arc::new(fam.base.shift(-n)), Arc::new(fam.base.shift(n))),
            }),
        }
    }
}

/// `max(|a|, |b|)` for the amplitude `[a, b]`; zero when acyclic.
pub fn amplitude_bound(a: &ChainComplex) -> i64 {
    amplitude(a).map_or(0, |(lo, hi)| lo.abs().max(hi.abs()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardLefschetzReport {
    pub n: i64,
    pub source: ModulePresentation,
    pub target: ModulePresentation,
    pub passes: bool,
}

/// Checks that `H^-n(A) -> H^n(A)` is an isomorphism for `n = 1..=bound`.
pub fn hard_lefschetz_check(data: &LefschetzData) -> Result<Vec<HardLefschetzReport>> {
    let a = data.base();
    (1..=amplitude_bound(a))
        .map(|n| {
            let map = data.map_at(n)?;
            let src = cohomology_with_basis(map.source(), 0);
            let dst = cohomology_with_basis(map.target(), 0);
            let induced = induced_map(&map, &src, &dst)?;
            let passes = module_map_is_iso(&induced, &src.module, &dst.module)?;
            Ok(HardLefschetzReport { n, source: src.module, target: dst.module, passes })
        })
        .collect()
}
