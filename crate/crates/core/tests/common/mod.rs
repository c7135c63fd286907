#![allow(dead_code)]

use std::sync::Arc;

use lefschetz::complex::{ChainComplex, ChainMap};
use lefschetz::linalg::{ExactMatrix, Ring};
use rand::Rng;

pub fn mat(ring: Ring, rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_rows(ring, rows)
}

pub fn random_matrix(rng: &mut impl Rng, ring: Ring, rows: usize, cols: usize, bound: i64) -> ExactMatrix {
    let values: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    ExactMatrix::from_i64(ring, rows, cols, &values)
}

/// A random unimodular matrix together with its inverse.
pub fn random_unimodular(rng: &mut impl Rng, ring: Ring, n: usize, ops: usize) -> (ExactMatrix, ExactMatrix) {
    let mut p = ExactMatrix::identity(ring, n);
    let mut q = ExactMatrix::identity(ring, n);
    if n < 2 {
        return (p, q);
    }
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-2..=2i64);
        let mut e = ExactMatrix::identity(ring, n);
        e.set(i, j, ring.from_i64(c));
        let mut e_inv = ExactMatrix::identity(ring, n);
        e_inv.set(i, j, ring.from_i64(-c));
        p = &e * &p;
        q = &q * &e_inv;
    }
    (p, q)
}

/// Sum of small pieces: free terms, resolutions `R --t--> R` and
/// contractible `R --1--> R`, spread over `lo..=hi`.
pub fn random_split_complex(rng: &mut impl Rng, ring: Ring, lo: i64, hi: i64) -> ChainComplex {
    let mut a = ChainComplex::zero(ring);
    for k in lo..=hi {
        let free = rng.gen_range(0..=2);
        if free > 0 {
            a = a.direct_sum(&ChainComplex::concentrated(ring, k, free)).unwrap();
        }
        if k > lo && rng.gen_bool(0.5) {
            let t = if ring.is_field() { 1 } else { [2, 3, 4][rng.gen_range(0..3)] };
            a = a.direct_sum(&ChainComplex::two_term(k - 1, mat(ring, &[&[t]]))).unwrap();
        }
        if k < hi && rng.gen_bool(0.5) {
            a = a.direct_sum(&ChainComplex::two_term(k, mat(ring, &[&[1]]))).unwrap();
        }
    }
    a
}

/// Applies a random change of basis in every degree; returns the new
/// complex and the strict isomorphism `a -> a'`.
pub fn scramble(rng: &mut impl Rng, a: &Arc<ChainComplex>) -> (Arc<ChainComplex>, ChainMap) {
    let ring = a.ring();
    let bases: Vec<(ExactMatrix, ExactMatrix)> =
        a.degrees().map(|k| random_unimodular(rng, ring, a.rank(k), 6)).collect();
    let lo = a.min_degree();
    let idx = |k: i64| (k - lo) as usize;
    let diffs = a
        .degrees()
        .take(a.ranks().len().saturating_sub(1))
        .map(|k| &(&bases[idx(k + 1)].0 * &a.d(k)) * &bases[idx(k)].1)
        .collect();
    let b = Arc::new(ChainComplex::new(ring, lo, a.ranks().to_vec(), diffs).unwrap());
    let iso = ChainMap::new(a.clone(), b.clone(), bases.iter().map(|(p, _)| p.clone()).collect()).unwrap();
    (b, iso)
}

pub fn rings() -> [Ring; 3] {
    [Ring::Integers, Ring::Rationals, Ring::prime_field(5).unwrap()]
}

pub fn random_homotopy_components(rng: &mut impl Rng, s: &ChainComplex, t: &ChainComplex) -> Vec<ExactMatrix> {
    s.degrees().map(|k| random_matrix(rng, s.ring(), t.rank(k - 1), s.rank(k), 3)).collect()
}

/// `d h + h d` for the given components.
pub fn boundary_map(s: &Arc<ChainComplex>, t: &Arc<ChainComplex>, h: &[ExactMatrix]) -> ChainMap {
    let comp = |k: i64| -> ExactMatrix {
        let i = k - s.min_degree();
        if s.is_zero() || i < 0 || i as usize >= h.len() {
            ExactMatrix::zeros(s.ring(), t.rank(k - 1), s.rank(k))
        } else {
            h[i as usize].clone()
        }
    };
    ChainMap::from_fn(s.clone(), t.clone(), |k| &(&*t.d(k - 1) * &comp(k)) + &(&comp(k + 1) * &*s.d(k))).unwrap()
}
