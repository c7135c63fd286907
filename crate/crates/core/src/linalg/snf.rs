//! Smith normal form over a Euclidean coefficient ring.
//!
//! Pivots are chosen with minimal Euclidean norm (absolute value over the
//! integers), ties broken by the lowest row-major index, so every output is
//! reproducible.

use std::cmp::Ordering;

use num_traits::Zero;

use super::matrix::ExactMatrix;
use super::ring::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Invertible row transform.
    pub u: ExactMatrix,
    /// Diagonal, `d_i | d_(i+1)`, canonical associates.
    pub d: ExactMatrix,
    /// Invertible column transform, `u * m * v == d`.
    pub v: ExactMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(m: &ExactMatrix) -> SmithForm {
    let mut engine = SnfEngine::new(m.clone(), Track { u: true, v: true, ..Track::default() });
    engine.run();
    SmithForm { u: engine.u.expect("tracked"), v: engine.v.expect("tracked"), rank: engine.rank, d: engine.a }
}

/// Which auxiliary matrices follow the elimination.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

pub(crate) struct SnfEngine {
    ring: Ring,
    pub a: ExactMatrix,
    pub u: Option<ExactMatrix>,
    pub u_inv: Option<ExactMatrix>,
    pub v: Option<ExactMatrix>,
    pub v_inv: Option<ExactMatrix>,
    /// Receives every row operation; used to compute `u * b` without `u`.
    pub rhs: Option<ExactMatrix>,
    pub rank: usize,
}

impl SnfEngine {
    pub fn new(a: ExactMatrix, track: Track) -> Self {
        let ring = a.ring();
        let (r, c) = a.shape();
        let id = |n| Some(ExactMatrix::identity(ring, n));
        SnfEngine {
            ring,
            u: if track.u { id(r) } else { None },
            u_inv: if track.u_inv { id(r) } else { None },
            v: if track.v { id(c) } else { None },
            v_inv: if track.v_inv { id(c) } else { None },
            rhs: None,
            rank: 0,
            a,
        }
    }

    pub fn with_rhs(mut self, rhs: ExactMatrix) -> Self {
        assert_eq!(rhs.rows(), self.a.rows());
        self.rhs = Some(rhs);
        self
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        for m in [&mut self.u, &mut self.rhs].into_iter().flatten() {
            m.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// `row[target] += c * row[source]`
    fn add_row(&mut self, target: usize, source: usize, c: &Scalar) {
        self.a.add_row_multiple(target, source, c);
        for m in [&mut self.u, &mut self.rhs].into_iter().flatten() {
            m.add_row_multiple(target, source, c);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(source, target, &self.ring.neg(c));
        }
    }

    /// `col[target] += c * col[source]`
    fn add_col(&mut self, target: usize, source: usize, c: &Scalar) {
        self.a.add_col_multiple(target, source, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, c);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(source, target, &self.ring.neg(c));
        }
    }

    fn scale_row(&mut self, i: usize, unit: &Scalar) {
        self.a.scale_row(i, unit);
        for m in [&mut self.u, &mut self.rhs].into_iter().flatten() {
            m.scale_row(i, unit);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.scale_col(i, &self.ring.inv(unit).expect("unit"));
        }
    }

    /// Minimal-norm nonzero entry of the trailing submatrix, lowest index first.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if self.ring.is_unit(x) {
                    return Some((i, j));
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => self.ring.cmp_norm(x, self.a.get(bi, bj)) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn min_in_column(&self, t: usize) -> usize {
        let mut best = t;
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t);
            if !x.is_zero() && self.ring.cmp_norm(x, self.a.get(best, t)) == Ordering::Less {
                best = i;
            }
        }
        best
    }

    fn min_in_row(&self, t: usize) -> usize {
        let mut best = t;
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j);
            if !x.is_zero() && self.ring.cmp_norm(x, self.a.get(t, best)) == Ordering::Less {
                best = j;
            }
        }
        best
    }

    pub fn run(&mut self) {
        let ring = self.ring;
        let mut t = 0;
        while t < self.a.rows().min(self.a.cols()) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a.get(t, t).clone();
                let mut remainder = false;
                for i in t + 1..self.a.rows() {
                    let x = self.a.get(i, t);
                    if x.is_zero() {
                        continue;
                    }
                    let (q, r) = ring.div_rem(x, &pivot);
                    self.add_row(i, t, &ring.neg(&q));
                    remainder |= !r.is_zero();
                }
                if remainder {
                    let best = self.min_in_column(t);
                    self.swap_rows(t, best);
                    continue;
                }
                for j in t + 1..self.a.cols() {
                    let x = self.a.get(t, j);
                    if x.is_zero() {
                        continue;
                    }
                    let (q, r) = ring.div_rem(x, &pivot);
                    self.add_col(j, t, &ring.neg(&q));
                    remainder |= !r.is_zero();
                }
                if remainder {
                    let best = self.min_in_row(t);
                    self.swap_cols(t, best);
                    continue;
                }
                if !ring.is_unit(&pivot) {
                    if let Some(i) = self.non_divisible_row(t, &pivot) {
                        self.add_row(t, i, &ring.one());
                        continue;
                    }
                }
                break;
            }
            let unit = ring.normalizing_unit(self.a.get(t, t));
            if unit != ring.one() {
                self.scale_row(t, &unit);
            }
            t += 1;
        }
        self.rank = t;
    }

    fn non_divisible_row(&self, t: usize, pivot: &Scalar) -> Option<usize> {
        (t + 1..self.a.rows()).find(|&i| (t + 1..self.a.cols()).any(|j| !self.ring.divides(pivot, self.a.get(i, j))))
    }
}
