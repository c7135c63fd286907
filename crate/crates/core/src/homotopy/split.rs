//! Splitting off a summand that has a retraction up to homotopy.

use std::sync::Arc;

use crate::complex::{cone, ChainComplex, ChainMap, Homotopy};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

use super::decomposition::{witness, Decomposition, Part};

/// `Y ~ X (+) C` with all five witnesses.
#[derive(Clone, Debug)]
pub struct SplitData {
    pub ambient: Arc<ChainComplex>,
    pub summand: Arc<ChainComplex>,
    pub complement: Arc<ChainComplex>,
    /// `X -> Y`
    pub iota: ChainMap,
    /// `Y -> X`
    pub pi: ChainMap,
    /// `C -> Y`
    pub iota_c: ChainMap,
    /// `Y -> C`
    pub pi_c: ChainMap,
    /// `pi o iota ~ id_X`
    pub pi_iota: Homotopy,
    /// `pi_c o iota_c ~ id_C`
    pub pi_c_iota_c: Homotopy,
    /// `pi o iota_c ~ 0`
    pub pi_iota_c: Homotopy,
    /// `pi_c o iota ~ 0`
    pub pi_c_iota: Homotopy,
    /// `iota o pi + iota_c o pi_c ~ id_Y`
    pub total: Homotopy,
}

/// Given `f: X -> Y`, `g: Y -> X` and `w: g f ~ id`, splits `Y` as
/// `X (+) Cone(f)`.
///
/// With `e = id - f g` and `H^(k+1) = -f w^(k+1)`, the map
/// `Cone(f)^k = X^(k+1) (+) Y^k -> Y^k` is `[H^(k+1) | e^k]`; the map
/// `Y -> Cone(f)` is the cone inclusion. Then `iota pi + iota_c pi_c = id`
/// holds on the nose and the other witnesses are closed formulas in `w`
/// and `g`.
pub fn split_with_retraction(f: &ChainMap, g: &ChainMap, w: &Homotopy) -> Result<SplitData> {
    let x = f.source().clone();
    let y = f.target().clone();
    if *w.from_map() != g.compose(f)? || *w.to_map() != ChainMap::identity(x.clone()) {
        return Err(Error::EndpointMismatch("retraction witness must be a homotopy g o f ~ id".into()));
    }
    w.verify()?;
    let ring = f.ring();
    let cone = cone(f)?;
    let c = cone.complex.clone();
    let fk = |k: i64| f.component(k).into_owned();
    let gk = |k: i64| g.component(k).into_owned();
    let wk = |k: i64| w.component(k).into_owned();

    let iota_c = ChainMap::new(
        c.clone(),
        y.clone(),
        c.degrees()
            .map(|k| {
                let h = -&(&fk(k) * &wk(k + 1));
                let e = &ExactMatrix::identity(ring, y.rank(k)) - &(&fk(k) * &gk(k));
                h.hstack(&e)
            })
            .collect(),
    )
    .map_err(|e| Error::InternalWitnessFailure(format!("split: {e}")))?;
    let pi_c = cone.inclusion.clone();
    let id_c = ChainMap::identity(c.clone());

    let pi_iota = w.clone();
    let total_from = f.compose(g)?.add(&iota_c.compose(&pi_c)?)?;
    let total = witness(
        total_from,
        ChainMap::identity(y.clone()),
        y.degrees().map(|k| ExactMatrix::zeros(ring, y.rank(k - 1), y.rank(k))).collect(),
        "split total",
    )?;
    let pi_iota_c = witness(
        g.compose(&iota_c)?,
        ChainMap::zero(c.clone(), x.clone()),
        c.degrees()
            .map(|k| {
                let left = -&(&wk(k) * &wk(k + 1));
                let right = -&(&wk(k) * &gk(k));
                left.hstack(&right)
            })
            .collect(),
        "split pi iota_c",
    )?;
    let pi_c_iota_c = witness(
        pi_c.compose(&iota_c)?,
        id_c,
        c.degrees()
            .map(|k| {
                let top = wk(k + 1).hstack(&gk(k));
                let bottom = ExactMatrix::zeros(ring, y.rank(k - 1), x.rank(k + 1) + y.rank(k));
                -&top.vstack(&bottom)
            })
            .collect(),
        "split pi_c iota_c",
    )?;
    let pi_c_iota = witness(
        pi_c.compose(f)?,
        ChainMap::zero(x.clone(), c.clone()),
        x.degrees()
            .map(|k| ExactMatrix::identity(ring, x.rank(k)).vstack(&ExactMatrix::zeros(ring, y.rank(k - 1), x.rank(k))))
            .collect(),
        "split pi_c iota",
    )?;
    Ok(SplitData {
        ambient: y,
        summand: x,
        complement: c,
        iota: f.clone(),
        pi: g.clone(),
        iota_c,
        pi_c,
        pi_iota,
        pi_c_iota_c,
        pi_iota_c,
        pi_c_iota,
        total,
    })
}

impl SplitData {
    /// Re-verifies all five identities from the stored maps.
    pub fn verify(&self) -> Result<()> {
        self.to_decomposition().verify()
    }

    /// The two-part decomposition `[summand, complement]`.
    pub fn to_decomposition(&self) -> Decomposition {
        Decomposition {
            ambient: self.ambient.clone(),
            parts: vec![
                Part { complex: self.summand.clone(), ins: self.iota.clone(), prj: self.pi.clone() },
                Part { complex: self.complement.clone(), ins: self.iota_c.clone(), prj: self.pi_c.clone() },
            ],
            pairs: vec![
                vec![self.pi_iota.clone(), self.pi_iota_c.clone()],
                vec![self.pi_c_iota.clone(), self.pi_c_iota_c.clone()],
            ],
            total: self.total.clone(),
        }
    }
}
