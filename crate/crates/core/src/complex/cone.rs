use std::sync::Arc;

use crate::error::Result;
use crate::linalg::ExactMatrix;

use super::chain_complex::ChainComplex;
use super::map::ChainMap;

/// Mapping cone of `f: X -> Y` with its two structure maps.
///
/// `Cone^k = X^(k+1) (+) Y^k`, `d(a, b) = (-d a, f a + d b)`. Coordinates of
/// `X^(k+1)` come first.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Arc<ChainComplex>,
    /// `Y -> Cone(f)`, `b |-> (0, b)`.
    pub inclusion: ChainMap,
    /// `Cone(f) -> X[1]`, `(a, b) |-> a`.
    pub projection: ChainMap,
}

pub fn cone(f: &ChainMap) -> Result<Cone> {
    let x = f.source();
    let y = f.target();
    let ring = f.ring();
    let (lo, hi) = match (x.is_zero(), y.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (y.min_degree(), y.max_degree()),
        (false, true) => (x.min_degree() - 1, x.max_degree() - 1),
        (false, false) => (y.min_degree().min(x.min_degree() - 1), y.max_degree().max(x.max_degree() - 1)),
    };
    let rank = |k: i64| x.rank(k + 1) + y.rank(k);
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let differentials = (lo..hi)
        .map(|k| {
            ExactMatrix::from_blocks(&[
                vec![-&*x.d(k + 1), ExactMatrix::zeros(ring, x.rank(k + 2), y.rank(k))],
                vec![f.component(k + 1).into_owned(), y.d(k).into_owned()],
            ])
        })
        .collect();
    let complex = Arc::new(ChainComplex::new(ring, lo, ranks, differentials)?);

    let inclusion = ChainMap::new(
        y.clone(),
        complex.clone(),
        y.degrees()
            .map(|k| ExactMatrix::zeros(ring, x.rank(k + 1), y.rank(k)).vstack(&ExactMatrix::identity(ring, y.rank(k))))
            .collect(),
    )?;
    let shifted = Arc::new(x.shift(1));
    let projection = ChainMap::new(
        complex.clone(),
        shifted,
        complex
            .degrees()
            .map(|k| {
                ExactMatrix::identity(ring, x.rank(k + 1)).hstack(&ExactMatrix::zeros(ring, x.rank(k + 1), y.rank(k)))
            })
            .collect(),
    )?;
    Ok(Cone { complex, inclusion, projection })
}
