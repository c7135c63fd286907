//! Free models of the canonical truncation maps
//! `H^-n(A)[n] -> A` and `A -> H^n(A)[-n]`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{coordinates, image_basis, kernel_basis, ExactMatrix};

use super::chain_complex::ChainComplex;
use super::cohomology::amplitude_within;
use super::map::ChainMap;

/// `T = (... -> A^(-n-1) -> ker d^-n)` with the inclusion `u: T -> A`.
///
/// Requires `H^k(A) = 0` for `k < -n`; then `T` has cohomology only in
/// degree `-n` and `H^-n(u)` is an isomorphism.
pub fn bottom_truncation_model(a: &Arc<ChainComplex>, n: i64) -> Result<(Arc<ChainComplex>, ChainMap)> {
    if !amplitude_within(a, -n, i64::MAX) {
        return Err(Error::AmplitudeViolation(format!("bottom truncation at {}: cohomology below degree {}", -n, -n)));
    }
    let ring = a.ring();
    let top = -n;
    let kernel = kernel_basis(&a.d(top));
    let lo = a.min_degree().min(top);
    let rank = |k: i64| if k == top { kernel.cols() } else { a.rank(k) };
    let ranks = (lo..=top).map(rank).collect();
    let mut differentials = Vec::new();
    for k in lo..top {
        if k == top - 1 {
            let into_kernel = coordinates(&kernel, &a.d(k))?
                .ok_or_else(|| Error::InternalWitnessFailure("coboundaries outside the cocycles".into()))?;
            differentials.push(into_kernel);
        } else {
            differentials.push(a.d(k).into_owned());
        }
    }
    let t = Arc::new(ChainComplex::new(ring, lo, ranks, differentials)?);
    let u = ChainMap::from_fn(t.clone(), a.clone(), |k| {
        if k == top {
            kernel.clone()
        } else {
            ExactMatrix::identity(ring, a.rank(k))
        }
    })?;
    Ok((t, u))
}

/// `E = (im d^(n-1) -> A^n -> A^(n+1) -> ...)` with image in degree `n-1`,
/// and `v: A -> E` (corestricted `d^(n-1)` in degree `n-1`, identity above).
///
/// Requires `H^k(A) = 0` for `k > n`.
pub fn top_truncation_model(a: &Arc<ChainComplex>, n: i64) -> Result<(Arc<ChainComplex>, ChainMap)> {
    if !amplitude_within(a, i64::MIN, n) {
        return Err(Error::AmplitudeViolation(format!("top truncation at {n}: cohomology above degree {n}")));
    }
    let ring = a.ring();
    let incoming = a.d(n - 1).into_owned();
    let image = image_basis(&incoming);
    let corestricted = coordinates(&image, &incoming)?
        .ok_or_else(|| Error::InternalWitnessFailure("image basis does not span the image".into()))?;
    let hi = a.max_degree().max(n);
    let bottom = n - 1;
    let rank = |k: i64| if k == bottom { image.cols() } else { a.rank(k) };
    let ranks = (bottom..=hi).map(rank).collect();
    let differentials = (bottom..hi).map(|k| if k == bottom { image.clone() } else { a.d(k).into_owned() }).collect();
    let e = Arc::new(ChainComplex::new(ring, bottom, ranks, differentials)?);
    let v = ChainMap::from_fn(a.clone(), e.clone(), |k| {
        if k == bottom {
            corestricted.clone()
        } else if k >= n {
            ExactMatrix::identity(ring, a.rank(k))
        } else {
            ExactMatrix::zeros(ring, e.rank(k), a.rank(k))
        }
    })?;
    Ok((e, v))
}
