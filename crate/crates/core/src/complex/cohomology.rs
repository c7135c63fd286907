use crate::error::{Error, Result};
use crate::linalg::{coordinates, kernel_basis, module_from_cokernel, ExactMatrix, ModulePresentation};

use super::chain_complex::ChainComplex;
use super::map::ChainMap;

/// `H^k` of a complex presented on a chosen basis of the cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub degree: i64,
    /// Columns form a basis of `ker d^k` inside `A^k`.
    pub cocycles: ExactMatrix,
    /// Generators are the cocycle basis; relations are the coboundaries.
    pub module: ModulePresentation,
}

pub fn cohomology_with_basis(a: &ChainComplex, k: i64) -> Cohomology {
    let cocycles = kernel_basis(&a.d(k));
    let boundaries = a.d(k - 1);
    let relations = coordinates(&cocycles, &boundaries).expect("shapes agree").expect("coboundaries are cocycles");
    Cohomology { degree: k, module: module_from_cokernel(&relations), cocycles }
}

pub fn cohomology(a: &ChainComplex, k: i64) -> ModulePresentation {
    cohomology_with_basis(a, k).module
}

/// Matrix of `H^k(f)` with respect to the cocycle bases of `src` and `dst`.
pub fn induced_map(f: &ChainMap, src: &Cohomology, dst: &Cohomology) -> Result<ExactMatrix> {
    let image = &*f.component(src.degree) * &src.cocycles;
    coordinates(&dst.cocycles, &image)?.ok_or_else(|| Error::InvalidChainMap {
        degree: src.degree,
        message: "image of a cocycle is not a cocycle".into(),
    })
}

/// Smallest interval `[a, b]` containing every degree with `H^k != 0`;
/// `None` for an acyclic complex.
pub fn amplitude(a: &ChainComplex) -> Option<(i64, i64)> {
    let nonzero: Vec<i64> = a.degrees().filter(|&k| !cohomology(a, k).is_zero()).collect();
    Some((*nonzero.first()?, *nonzero.last()?))
}

/// Whether `amplitude(a)` lies inside `[lo, hi]` (acyclic complexes always do).
pub fn amplitude_within(a: &ChainComplex, lo: i64, hi: i64) -> bool {
    amplitude(a).is_none_or(|(x, y)| lo <= x && y <= hi)
}
