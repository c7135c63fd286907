//! Linear systems whose unknowns are matrices, e.g. `L1 X R1 + L2 Y R2 = C`.
//!
//! The system is flattened into one coefficient matrix (row-major
//! vectorization of every unknown and every equation) and handed to the
//! exact solver.

use num_traits::Zero;

use super::matrix::ExactMatrix;
use super::ring::{Ring, Scalar};
use super::solve::{kernel_basis, solve_matrix};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unknown(usize);

impl Unknown {
    /// Position of this unknown in the output of [`LinearSystem::solve`].
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Equation(usize);

#[derive(Debug)]
struct Term {
    eq: usize,
    left: ExactMatrix,
    unknown: usize,
    right: ExactMatrix,
}

#[derive(Debug)]
pub struct LinearSystem {
    ring: Ring,
    unknowns: Vec<(usize, usize)>,
    unknown_offsets: Vec<usize>,
    equations: Vec<(usize, usize)>,
    equation_offsets: Vec<usize>,
    terms: Vec<Term>,
    rhs: Vec<Option<ExactMatrix>>,
}

impl LinearSystem {
    pub fn new(ring: Ring) -> Self {
        LinearSystem {
            ring,
            unknowns: Vec::new(),
            unknown_offsets: Vec::new(),
            equations: Vec::new(),
            equation_offsets: Vec::new(),
            terms: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn unknown(&mut self, rows: usize, cols: usize) -> Unknown {
        self.unknown_offsets.push(self.unknown_count());
        self.unknowns.push((rows, cols));
        Unknown(self.unknowns.len() - 1)
    }

    pub fn equation(&mut self, rows: usize, cols: usize) -> Equation {
        self.equation_offsets.push(self.equation_count());
        self.equations.push((rows, cols));
        self.rhs.push(None);
        Equation(self.equations.len() - 1)
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.iter().map(|(r, c)| r * c).sum()
    }

    pub fn equation_count(&self) -> usize {
        self.equations.iter().map(|(r, c)| r * c).sum()
    }

    /// Adds `left * X * right` to the left-hand side of `eq`.
    pub fn add_term(&mut self, eq: Equation, left: &ExactMatrix, x: Unknown, right: &ExactMatrix) {
        let (er, ec) = self.equations[eq.0];
        let (xr, xc) = self.unknowns[x.0];
        assert_eq!(left.shape(), (er, xr), "left factor shape");
        assert_eq!(right.shape(), (xc, ec), "right factor shape");
        self.terms.push(Term { eq: eq.0, left: left.clone(), unknown: x.0, right: right.clone() });
    }

    pub fn set_rhs(&mut self, eq: Equation, value: ExactMatrix) {
        assert_eq!(value.shape(), self.equations[eq.0], "right-hand side shape");
        self.rhs[eq.0] = Some(value);
    }

    pub fn coefficient_matrix(&self) -> ExactMatrix {
        let ring = self.ring;
        let n_cols = self.unknown_count();
        let mut entries = vec![Scalar::zero(); self.equation_count() * n_cols];
        for t in &self.terms {
            let (_, ec) = self.equations[t.eq];
            let (_, xc) = self.unknowns[t.unknown];
            let eq_off = self.equation_offsets[t.eq];
            let x_off = self.unknown_offsets[t.unknown];
            for i in 0..t.left.rows() {
                for a in 0..t.left.cols() {
                    let l = t.left.get(i, a);
                    if l.is_zero() {
                        continue;
                    }
                    for b in 0..t.right.rows() {
                        for j in 0..t.right.cols() {
                            let r = t.right.get(b, j);
                            if r.is_zero() {
                                continue;
                            }
                            let row = eq_off + i * ec + j;
                            let col = x_off + a * xc + b;
                            let slot = &mut entries[row * n_cols + col];
                            *slot = ring.add(slot, &ring.mul(l, r));
                        }
                    }
                }
            }
        }
        ExactMatrix::from_entries_unchecked(ring, self.equation_count(), n_cols, entries)
    }

    pub fn rhs_vector(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.equation_count());
        for (k, &(r, c)) in self.equations.iter().enumerate() {
            match &self.rhs[k] {
                Some(m) => entries.extend_from_slice(m.entries()),
                None => entries.extend(std::iter::repeat_n(Scalar::zero(), r * c)),
            }
        }
        ExactMatrix::from_entries_unchecked(self.ring, entries.len(), 1, entries)
    }

    /// Splits a flat vector (one column) back into the unknown matrices.
    pub fn unpack(&self, flat: &ExactMatrix) -> Vec<ExactMatrix> {
        self.unknowns
            .iter()
            .zip(&self.unknown_offsets)
            .map(|(&(r, c), &off)| {
                let entries = (0..r * c).map(|i| flat.get(off + i, 0).clone()).collect();
                ExactMatrix::from_entries_unchecked(self.ring, r, c, entries)
            })
            .collect()
    }

    pub fn solve(&self) -> Result<Option<Vec<ExactMatrix>>> {
        let m = self.coefficient_matrix();
        Ok(solve_matrix(&m, &self.rhs_vector())?.map(|x| self.unpack(&x)))
    }

    /// Basis of the homogeneous solution space, as flat columns.
    pub fn homogeneous_basis(&self) -> ExactMatrix {
        kernel_basis(&self.coefficient_matrix())
    }
}
