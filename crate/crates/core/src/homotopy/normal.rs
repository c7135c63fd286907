//! Normal form for homotopy witnesses.
//!
//! An entry `h^k[r][c]` is inert when column `r` of `d_T^(k-1)` and row `c`
//! of `d_S^(k-1)` both vanish: it never enters `d h + h d`. Witnesses in
//! normal form have every inert entry equal to zero, so that each stored
//! entry is pinned down by some identity.

use crate::complex::{ChainComplex, Homotopy};
use crate::linalg::ExactMatrix;

fn zero_columns(m: &ExactMatrix) -> Vec<bool> {
    (0..m.cols()).map(|j| (0..m.rows()).all(|i| num_traits::Zero::is_zero(m.get(i, j)))).collect()
}

fn zero_rows(m: &ExactMatrix) -> Vec<bool> {
    (0..m.rows()).map(|i| m.row(i).iter().all(num_traits::Zero::is_zero)).collect()
}

/// Inert positions of a degree `k` homotopy component `S^k -> T^(k-1)`,
/// as (rows, cols) masks; `(r, c)` is inert iff both flags are set.
pub fn inert_mask(source: &ChainComplex, target: &ChainComplex, k: i64) -> (Vec<bool>, Vec<bool>) {
    (zero_columns(&target.d(k - 1)), zero_rows(&source.d(k - 1)))
}

/// First nonzero inert entry `(degree, row, col)` of the given components
/// (indexed from `source.min_degree()`).
pub fn first_inert_entry(
    source: &ChainComplex,
    target: &ChainComplex,
    components: &[ExactMatrix],
) -> Option<(i64, usize, usize)> {
    for (k, h) in source.degrees().zip(components) {
        let (rows, cols) = inert_mask(source, target, k);
        for (r, &ri) in rows.iter().enumerate().take(h.rows()) {
            if !ri {
                continue;
            }
            for (c, &ci) in cols.iter().enumerate().take(h.cols()) {
                if ci && !num_traits::Zero::is_zero(h.get(r, c)) {
                    return Some((k, r, c));
                }
            }
        }
    }
    None
}

/// The same homotopy with all inert entries set to zero.
pub fn canonical_form(h: &Homotopy) -> Homotopy {
    let source = h.from_map().source().clone();
    let target = h.from_map().target().clone();
    let ring = source.ring();
    let components = h.components().to_vec();
    let components: Vec<ExactMatrix> = source
        .degrees()
        .zip(components)
        .map(|(k, mut m)| {
            let (rows, cols) = inert_mask(&source, &target, k);
            for (r, &ri) in rows.iter().enumerate() {
                for (c, &ci) in cols.iter().enumerate() {
                    if ri && ci {
                        m.set(r, c, ring.zero());
                    }
                }
            }
            m
        })
        .collect();
    Homotopy::new(h.from_map().clone(), h.to_map().clone(), components)
        .expect("inert entries do not affect the identity")
}
