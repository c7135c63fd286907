use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over a coefficient ring, stored row-major.
///
/// Zero-row and zero-column matrices are ordinary values; they show up
/// constantly as components of maps between complexes with empty terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|x| ring.element(x)).collect::<Result<_>>()?;
        Ok(ExactMatrix { ring, rows, cols, entries })
    }

    pub(crate) fn from_entries_unchecked(ring: Ring, rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        ExactMatrix { ring, rows, cols, entries }
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring, rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_i64(ring: Ring, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "from_i64: wrong number of entries");
        let entries = values.iter().map(|&v| ring.from_i64(v)).collect();
        ExactMatrix { ring, rows, cols, entries }
    }

    /// Builds a matrix from nested rows of small integers; handy in tests.
    pub fn from_rows(ring: Ring, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<i64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().copied()
            })
            .collect();
        Self::from_i64(ring, rows.len(), cols, &flat)
    }

    pub fn column_vector(ring: Ring, values: &[i64]) -> Self {
        Self::from_i64(ring, values.len(), 1, values)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = self.ring.reduce(value);
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ring, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { ring: self.ring, rows: self.cols, cols: self.rows, entries }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let entries = self.entries.iter().map(|x| self.ring.mul(x, c)).collect();
        ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries }
    }

    pub fn column(&self, j: usize) -> Self {
        self.select_cols(&[j])
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        ExactMatrix { ring: self.ring, rows: rows.len(), cols: self.cols, entries }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(cols.len() * self.rows);
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { ring: self.ring, rows: self.rows, cols: cols.len(), entries }
    }

    pub fn row_range(&self, start: usize, end: usize) -> Self {
        self.select_rows(&(start..end).collect::<Vec<_>>())
    }

    pub fn col_range(&self, start: usize, end: usize) -> Self {
        self.select_cols(&(start..end).collect::<Vec<_>>())
    }

    pub fn without_row(&self, i: usize) -> Self {
        self.select_rows(&(0..self.rows).filter(|&r| r != i).collect::<Vec<_>>())
    }

    pub fn without_col(&self, j: usize) -> Self {
        self.select_cols(&(0..self.cols).filter(|&c| c != j).collect::<Vec<_>>())
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack: row counts differ");
        let mut entries = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols + other.cols, entries }
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column counts differ");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ExactMatrix { ring: self.ring, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Assembles a matrix from a grid of blocks. Blocks in one block-row
    /// must agree on row count, blocks in one block-column on column count.
    pub fn from_blocks(blocks: &[Vec<ExactMatrix>]) -> Self {
        let ring = blocks[0][0].ring;
        let mut out: Option<ExactMatrix> = None;
        for block_row in blocks {
            let mut row = block_row[0].clone();
            for b in &block_row[1..] {
                row = row.hstack(b);
            }
            out = Some(match out {
                None => row,
                Some(acc) => acc.vstack(&row),
            });
        }
        out.unwrap_or_else(|| ExactMatrix::zeros(ring, 0, 0))
    }

    pub fn block_diag(&self, other: &ExactMatrix) -> Self {
        let ring = self.ring;
        Self::from_blocks(&[
            vec![self.clone(), ExactMatrix::zeros(ring, self.rows, other.cols)],
            vec![ExactMatrix::zeros(ring, other.rows, self.cols), other.clone()],
        ])
    }

    pub fn try_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        self.check_ring(rhs)?;
        let mut out = vec![Scalar::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            let acc = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (slot, b) in acc.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        *slot += a * b;
                    }
                }
            }
        }
        if matches!(self.ring, Ring::PrimeField(_)) {
            for x in &mut out {
                *x = self.ring.reduce(std::mem::take(x));
            }
        }
        Ok(ExactMatrix { ring: self.ring, rows: self.rows, cols: rhs.cols, entries: out })
    }

    fn zip_with(&self, rhs: &ExactMatrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<ExactMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!("shapes {:?} and {:?} differ", self.shape(), rhs.shape())));
        }
        self.check_ring(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| op(a, b)).collect();
        Ok(ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn try_add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(rhs, |a, b| self.ring.add(a, b))
    }

    pub fn try_sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(rhs, |a, b| self.ring.sub(a, b))
    }

    fn check_ring(&self, rhs: &ExactMatrix) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), rhs.ring.to_string()));
        }
        Ok(())
    }

    // In-place elementary operations, used by the normal form engines.

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let cols = self.cols;
        for j in 0..cols {
            let s = &self.entries[source * cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = self.ring.mul(s, c);
            let t = &mut self.entries[target * cols + j];
            *t = self.ring.add(t, &delta);
        }
    }

    /// `col[target] += c * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let cols = self.cols;
        for i in 0..self.rows {
            let s = &self.entries[i * cols + source];
            if s.is_zero() {
                continue;
            }
            let delta = self.ring.mul(s, c);
            let t = &mut self.entries[i * cols + target];
            *t = self.ring.add(t, &delta);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let x = &mut self.entries[i * self.cols + j];
            if !x.is_zero() {
                *x = self.ring.mul(x, c);
            }
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let x = &mut self.entries[i * self.cols + j];
            if !x.is_zero() {
                *x = self.ring.mul(x, c);
            }
        }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        let entries = self.entries.iter().map(|x| self.ring.neg(x)).collect();
        ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| self.ring.format_element(x)).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
