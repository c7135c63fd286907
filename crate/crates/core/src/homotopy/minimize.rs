//! Gaussian elimination on complexes.
//!
//! A unit entry `phi = d^k[r][c]` splits off the contractible piece
//! `R --phi--> R` spanned by basis vector `c` of `A^k` and the image
//! direction `r` of `A^(k+1)`. Writing `d^k = [[phi, delta], [gamma, eps]]`
//! the reduced differential is `eps - gamma phi^-1 delta`, and the
//! comparison maps and homotopy are explicit.

use std::sync::Arc;

use num_traits::Zero;

use crate::complex::{ChainComplex, ChainMap, Homotopy};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Ring, SnfEngine, Track};

/// A homotopy equivalence `A ~ A_min` with `to_min o from_min = id` strictly.
#[derive(Clone, Debug)]
pub struct Minimization {
    pub complex: Arc<ChainComplex>,
    /// `A -> A_min`
    pub to_min: ChainMap,
    /// `A_min -> A`
    pub from_min: ChainMap,
    /// `to_min o from_min ~ id` (the zero homotopy).
    pub to_from: Homotopy,
    /// `from_min o to_min ~ id`
    pub from_to: Homotopy,
}

struct Reducer {
    ring: Ring,
    /// `d[i]: A^(lo+i) -> A^(lo+i+1)`; the last one maps to the zero module.
    d: Vec<ExactMatrix>,
    f: Vec<ExactMatrix>,
    g: Vec<ExactMatrix>,
    /// `h[i]: A^(lo+i) -> A^(lo+i-1)` on the original complex.
    h: Vec<ExactMatrix>,
}

impl Reducer {
    fn new(a: &ChainComplex) -> Self {
        let ring = a.ring();
        let degrees: Vec<i64> = a.degrees().collect();
        Reducer {
            ring,
            d: degrees.iter().map(|&k| a.d(k).into_owned()).collect(),
            f: degrees.iter().map(|&k| ExactMatrix::identity(ring, a.rank(k))).collect(),
            g: degrees.iter().map(|&k| ExactMatrix::identity(ring, a.rank(k))).collect(),
            h: degrees.iter().map(|&k| ExactMatrix::zeros(ring, a.rank(k - 1), a.rank(k))).collect(),
        }
    }

    /// Lexicographically first unit entry `(i, row, col)`.
    fn find_unit(&self) -> Option<(usize, usize, usize)> {
        for (i, d) in self.d.iter().enumerate() {
            for r in 0..d.rows() {
                for (c, x) in d.row(r).iter().enumerate() {
                    if !x.is_zero() && self.ring.is_unit(x) {
                        return Some((i, r, c));
                    }
                }
            }
        }
        None
    }

    fn cancel(&mut self, i: usize, r: usize, c: usize) {
        let ring = self.ring;
        let phi_inv = ring.inv(self.d[i].get(r, c)).expect("unit pivot");
        let gamma: Vec<_> = (0..self.d[i].rows()).map(|x| self.d[i].get(x, c).clone()).collect();
        let delta: Vec<_> = self.d[i].row(r).to_vec();

        // h_new = h + g (-phi^-1 e_c e_r^T) f in degree i+1.
        if i + 1 < self.d.len() {
            let col = self.g[i].column(c);
            let row = self.f[i + 1].select_rows(&[r]);
            let update = (&col * &row).scale(&ring.neg(&phi_inv));
            self.h[i + 1] = &self.h[i + 1] + &update;
        }

        for (x, gx) in gamma.iter().enumerate() {
            if x == r || gx.is_zero() {
                continue;
            }
            let coeff = ring.neg(&ring.mul(gx, &phi_inv));
            self.d[i].add_row_multiple(x, r, &coeff);
            if i + 1 < self.d.len() {
                self.f[i + 1].add_row_multiple(x, r, &coeff);
            }
        }
        for (y, dy) in delta.iter().enumerate() {
            if y == c || dy.is_zero() {
                continue;
            }
            let coeff = ring.neg(&ring.mul(&phi_inv, dy));
            self.g[i].add_col_multiple(y, c, &coeff);
        }

        self.d[i] = self.d[i].without_row(r).without_col(c);
        self.f[i] = self.f[i].without_row(c);
        self.g[i] = self.g[i].without_col(c);
        if i > 0 {
            self.d[i - 1] = self.d[i - 1].without_row(c);
        }
        if i + 1 < self.d.len() {
            self.d[i + 1] = self.d[i + 1].without_col(r);
            self.f[i + 1] = self.f[i + 1].without_row(r);
            self.g[i + 1] = self.g[i + 1].without_col(r);
        }
    }

    /// Over the integers a differential can have no unit entries yet still
    /// split off a contractible piece (e.g. `(2, 3)^T`). Moves one such
    /// differential to Smith form by a strict change of basis.
    fn expose_unit(&mut self) -> bool {
        for i in 0..self.d.len() {
            if self.d[i].is_zero() {
                continue;
            }
            let track = Track { u: true, u_inv: true, v: true, v_inv: true };
            let mut snf = SnfEngine::new(self.d[i].clone(), track);
            snf.run();
            if !self.ring.is_unit(snf.a.get(0, 0)) {
                continue;
            }
            let (u, u_inv) = (snf.u.take().expect("tracked"), snf.u_inv.take().expect("tracked"));
            let (v, v_inv) = (snf.v.take().expect("tracked"), snf.v_inv.take().expect("tracked"));
            self.d[i] = snf.a;
            if i > 0 {
                self.d[i - 1] = &v_inv * &self.d[i - 1];
            }
            self.f[i] = &v_inv * &self.f[i];
            self.g[i] = &self.g[i] * &v;
            if i + 1 < self.d.len() {
                self.d[i + 1] = &self.d[i + 1] * &u_inv;
                self.f[i + 1] = &u * &self.f[i + 1];
                self.g[i + 1] = &self.g[i + 1] * &u_inv;
            }
            return true;
        }
        false
    }
}

/// Cancels unit entries of the differentials (lexicographically first
/// `(degree, row, col)` each time) until none is left. Over a field the
/// result has zero differentials; over the integers every differential has
/// only non-unit invariant factors.
pub fn minimize(a: &Arc<ChainComplex>) -> Result<Minimization> {
    let ring = a.ring();
    let mut red = Reducer::new(a);
    loop {
        if let Some((i, r, c)) = red.find_unit() {
            red.cancel(i, r, c);
        } else if !ring.is_field() && red.expose_unit() {
            continue;
        } else {
            break;
        }
    }
    let lo = a.min_degree();
    let ranks: Vec<usize> = red.f.iter().map(ExactMatrix::rows).collect();
    let n = ranks.len();
    let differentials = red.d.iter().take(n.saturating_sub(1)).cloned().collect();
    let witness_err = |e: Error| Error::InternalWitnessFailure(format!("minimization: {e}"));
    let complex =
        Arc::new(ChainComplex::new(ring, lo, ranks, differentials).map_err(witness_err)?.twist(a.twist_weight()));
    let index = |k: i64| (k - lo) as usize;
    let to_min = ChainMap::new(a.clone(), complex.clone(), red.f.clone()).map_err(witness_err)?;
    let from_min =
        ChainMap::new(complex.clone(), a.clone(), complex.degrees().map(|k| red.g[index(k)].clone()).collect())
            .map_err(witness_err)?;
    let identity = ChainMap::identity(complex.clone());
    if to_min.compose(&from_min)? != identity {
        return Err(Error::InternalWitnessFailure("minimization: to o from is not the identity".into()));
    }
    let to_from = Homotopy::zero(&identity);
    let from_to =
        Homotopy::new(from_min.compose(&to_min)?, ChainMap::identity(a.clone()), red.h).map_err(witness_err)?;
    Ok(Minimization { complex, to_min, from_min, to_from, from_to })
}
