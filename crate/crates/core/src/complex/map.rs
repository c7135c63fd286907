use std::borrow::Cow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Ring};

use super::chain_complex::ChainComplex;

/// Degree-zero map of complexes, `f^k: source^k -> target^k`.
///
/// Components are stored for every degree of the source; all other
/// components are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    components: Vec<ExactMatrix>,
}

fn same(a: &Arc<ChainComplex>, b: &Arc<ChainComplex>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl ChainMap {
    /// Checks shapes and the chain map law `d f = f d`.
    pub fn new(source: Arc<ChainComplex>, target: Arc<ChainComplex>, components: Vec<ExactMatrix>) -> Result<Self> {
        let map = Self::from_raw(source, target, components)?;
        map.verify()?;
        Ok(map)
    }

    /// Checks shapes only.
    pub fn from_raw(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if components.len() != source.ranks().len() {
            return Err(Error::InvalidChainMap {
                degree: source.min_degree(),
                message: format!("expected {} components, got {}", source.ranks().len(), components.len()),
            });
        }
        for (k, f) in source.degrees().zip(&components) {
            if f.shape() != (target.rank(k), source.rank(k)) {
                return Err(Error::InvalidChainMap {
                    degree: k,
                    message: format!("component is {:?}, expected {:?}", f.shape(), (target.rank(k), source.rank(k))),
                });
            }
        }
        Ok(ChainMap { source, target, components })
    }

    pub fn from_fn(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        mut f: impl FnMut(i64) -> ExactMatrix,
    ) -> Result<Self> {
        let components = source.degrees().map(&mut f).collect();
        Self::new(source, target, components)
    }

    pub fn identity(a: Arc<ChainComplex>) -> Self {
        let components = a.ranks().iter().map(|&r| ExactMatrix::identity(a.ring(), r)).collect();
        ChainMap { source: a.clone(), target: a, components }
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Self {
        let ring = source.ring();
        let components = source.degrees().map(|k| ExactMatrix::zeros(ring, target.rank(k), source.rank(k))).collect();
        ChainMap { source, target, components }
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }

    pub fn component(&self, k: i64) -> Cow<'_, ExactMatrix> {
        let i = k - self.source.min_degree();
        if !self.source.is_zero() && i >= 0 && (i as usize) < self.components.len() {
            Cow::Borrowed(&self.components[i as usize])
        } else {
            Cow::Owned(ExactMatrix::zeros(self.ring(), self.target.rank(k), self.source.rank(k)))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ExactMatrix::is_zero)
    }

    pub fn verify(&self) -> Result<()> {
        for k in self.source.degrees() {
            let lhs = &*self.target.d(k) * &*self.component(k);
            let rhs = &*self.component(k + 1) * &*self.source.d(k);
            if lhs != rhs {
                return Err(Error::InvalidChainMap { degree: k, message: "d f != f d".to_string() });
            }
        }
        Ok(())
    }

    /// `self o rhs`
    pub fn compose(&self, rhs: &ChainMap) -> Result<ChainMap> {
        if !same(&rhs.target, &self.source) {
            return Err(Error::EndpointMismatch(
                "composition: target of the right factor differs from source of the left".into(),
            ));
        }
        let components = rhs.source.degrees().map(|k| &*self.component(k) * &*rhs.component(k)).collect();
        let map = ChainMap { source: rhs.source.clone(), target: self.target.clone(), components };
        map.verify()?;
        Ok(map)
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if !same(&self.source, &other.source) || !same(&self.target, &other.target) {
            return Err(Error::EndpointMismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect();
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), components })
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect();
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), components })
    }

    pub fn negate(&self) -> ChainMap {
        let components = self.components.iter().map(|a| -a).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), components }
    }

    /// `(f[m])^k = f^(k+m)`, no sign.
    pub fn shift(&self, m: i64) -> ChainMap {
        ChainMap {
            source: Arc::new(self.source.shift(m)),
            target: Arc::new(self.target.shift(m)),
            components: self.components.clone(),
        }
    }
}

/// A chain homotopy `h^k: source^k -> target^(k-1)` witnessing
/// `d h + h d = from - to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    from: ChainMap,
    to: ChainMap,
    components: Vec<ExactMatrix>,
}

impl Homotopy {
    pub fn new(from: ChainMap, to: ChainMap, components: Vec<ExactMatrix>) -> Result<Self> {
        from.check_parallel(&to)?;
        let source = from.source();
        if components.len() != source.ranks().len() {
            return Err(Error::InvalidHomotopy {
                degree: source.min_degree(),
                message: format!("expected {} components, got {}", source.ranks().len(), components.len()),
            });
        }
        for (k, h) in source.degrees().zip(&components) {
            let want = (from.target().rank(k - 1), source.rank(k));
            if h.shape() != want {
                return Err(Error::InvalidHomotopy {
                    degree: k,
                    message: format!("component is {:?}, expected {want:?}", h.shape()),
                });
            }
        }
        let h = Homotopy { from, to, components };
        h.verify()?;
        Ok(h)
    }

    /// The zero homotopy `f ~ f`.
    pub fn zero(f: &ChainMap) -> Self {
        let ring = f.ring();
        let components = f
            .source()
            .degrees()
            .map(|k| ExactMatrix::zeros(ring, f.target().rank(k - 1), f.source().rank(k)))
            .collect();
        Homotopy { from: f.clone(), to: f.clone(), components }
    }

    pub fn from_map(&self) -> &ChainMap {
        &self.from
    }

    pub fn to_map(&self) -> &ChainMap {
        &self.to
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }

    pub fn component(&self, k: i64) -> Cow<'_, ExactMatrix> {
        let source = self.from.source();
        let i = k - source.min_degree();
        if !source.is_zero() && i >= 0 && (i as usize) < self.components.len() {
            Cow::Borrowed(&self.components[i as usize])
        } else {
            Cow::Owned(ExactMatrix::zeros(source.ring(), self.from.target().rank(k - 1), source.rank(k)))
        }
    }

    pub fn verify(&self) -> Result<()> {
        check_homotopy_identity(
            self.from.source(),
            self.from.target(),
            |k| self.component(k),
            |k| &*self.from.component(k) - &*self.to.component(k),
        )
        .map_err(|degree| Error::InvalidHomotopy { degree, message: "d h + h d != from - to".to_string() })
    }

    /// `f o h`, a homotopy `f o from ~ f o to`.
    pub fn compose_left(&self, f: &ChainMap) -> Result<Homotopy> {
        let from = f.compose(&self.from)?;
        let to = f.compose(&self.to)?;
        let components = self.from.source().degrees().map(|k| &*f.component(k - 1) * &*self.component(k)).collect();
        Ok(Homotopy { from, to, components })
    }

    /// `h o g`, a homotopy `from o g ~ to o g`.
    pub fn compose_right(&self, g: &ChainMap) -> Result<Homotopy> {
        let from = self.from.compose(g)?;
        let to = self.to.compose(g)?;
        let components = g.source().degrees().map(|k| &*self.component(k) * &*g.component(k)).collect();
        Ok(Homotopy { from, to, components })
    }

    /// `f o h o g`
    pub fn sandwich(&self, f: &ChainMap, g: &ChainMap) -> Result<Homotopy> {
        self.compose_right(g)?.compose_left(f)
    }

    /// Sum of homotopies: `from1 + from2 ~ to1 + to2`.
    pub fn add(&self, other: &Homotopy) -> Result<Homotopy> {
        let from = self.from.add(&other.from)?;
        let to = self.to.add(&other.to)?;
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect();
        Ok(Homotopy { from, to, components })
    }

    /// Transitivity: `self: a ~ b` and `next: b ~ c` give `a ~ c`.
    pub fn then(&self, next: &Homotopy) -> Result<Homotopy> {
        if self.to != next.from {
            return Err(Error::EndpointMismatch("homotopies do not chain".into()));
        }
        let components = self.components.iter().zip(&next.components).map(|(a, b)| a + b).collect();
        Ok(Homotopy { from: self.from.clone(), to: next.to.clone(), components })
    }

    /// `b ~ a` from `a ~ b`.
    pub fn reverse(&self) -> Homotopy {
        Homotopy {
            from: self.to.clone(),
            to: self.from.clone(),
            components: self.components.iter().map(|h| -h).collect(),
        }
    }

    /// `(h[m])^k = (-1)^m h^(k+m)`, between the shifted maps.
    pub fn shift(&self, m: i64) -> Homotopy {
        let components =
            if m % 2 == 0 { self.components.clone() } else { self.components.iter().map(|h| -h).collect() };
        Homotopy { from: self.from.shift(m), to: self.to.shift(m), components }
    }
}

/// Checks `d_T h + h d_S = expected` in every degree of `source`; returns the
/// first failing degree.
pub(crate) fn check_homotopy_identity<'a>(
    source: &ChainComplex,
    target: &ChainComplex,
    h: impl Fn(i64) -> Cow<'a, ExactMatrix>,
    expected: impl Fn(i64) -> ExactMatrix,
) -> std::result::Result<(), i64> {
    for k in source.degrees() {
        let dh = &*target.d(k - 1) * &*h(k);
        let hd = &*h(k + 1) * &*source.d(k);
        if &dh + &hd != expected(k) {
            return Err(k);
        }
    }
    Ok(())
}
