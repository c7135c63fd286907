use num_traits::Zero;

use super::matrix::ExactMatrix;
use super::snf::{SnfEngine, Track};
use crate::error::{Error, Result};

/// A particular solution together with a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: ExactMatrix,
    pub kernel: ExactMatrix,
}

/// Solves `m * x = b` over the coefficient ring of `m`.
///
/// Over the integers solvability means integral solvability. `Ok(None)` is
/// the "no solution" outcome; incompatible shapes are an error.
pub fn solve_linear(m: &ExactMatrix, b: &ExactMatrix) -> Result<Option<Solution>> {
    if b.cols() != 1 {
        return Err(Error::DimensionMismatch(format!("right-hand side must be a column, got {:?}", b.shape())));
    }
    solve_with_kernel(m, b)
}

/// Solves `m * x = b` column by column, returning one particular solution
/// for every column of `b`.
pub fn solve_matrix(m: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    Ok(solve_with_kernel(m, b)?.map(|s| s.particular))
}

fn solve_with_kernel(m: &ExactMatrix, b: &ExactMatrix) -> Result<Option<Solution>> {
    if m.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} equations but right-hand side has {} rows",
            m.rows(),
            b.rows()
        )));
    }
    if m.ring() != b.ring() {
        return Err(Error::RingMismatch(m.ring().to_string(), b.ring().to_string()));
    }
    let ring = m.ring();
    let mut engine = SnfEngine::new(m.clone(), Track { v: true, ..Track::default() }).with_rhs(b.clone());
    engine.run();
    let rank = engine.rank;
    let c = engine.rhs.take().expect("rhs tracked");
    let v = engine.v.take().expect("v tracked");
    let d = &engine.a;

    let mut y = ExactMatrix::zeros(ring, m.cols(), b.cols());
    for col in 0..b.cols() {
        for i in 0..m.rows() {
            let ci = c.get(i, col);
            if i < rank {
                let di = d.get(i, i);
                if !ring.divides(di, ci) {
                    return Ok(None);
                }
                y.set(i, col, ring.exact_div(ci, di));
            } else if !ci.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(Solution { particular: &v * &y, kernel: v.col_range(rank, m.cols()) }))
}

/// Basis of the kernel of `m` as columns. Over the integers the basis spans
/// the full (saturated) kernel lattice.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    let mut engine = SnfEngine::new(m.clone(), Track { v: true, ..Track::default() });
    engine.run();
    engine.v.expect("v tracked").col_range(engine.rank, m.cols())
}

pub fn rank(m: &ExactMatrix) -> usize {
    let mut engine = SnfEngine::new(m.clone(), Track::default());
    engine.run();
    engine.rank
}

/// Basis of the column span of `m`, in reduced column Hermite form.
///
/// Over the integers this is a basis of the image lattice itself (not of its
/// saturation); over a field it is the reduced column echelon form.
pub fn image_basis(m: &ExactMatrix) -> ExactMatrix {
    let ring = m.ring();
    let mut a = m.clone();
    let mut pc = 0;
    for row in 0..a.rows() {
        if pc == a.cols() {
            break;
        }
        // Euclid across the row until a single nonzero entry remains at `pc`.
        loop {
            let mut best: Option<usize> = None;
            for j in pc..a.cols() {
                let x = a.get(row, j);
                if !x.is_zero() && best.is_none_or(|b| ring.cmp_norm(x, a.get(row, b)).is_lt()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            a.swap_cols(pc, b);
            let pivot = a.get(row, pc).clone();
            let mut done = true;
            for j in pc + 1..a.cols() {
                let x = a.get(row, j);
                if x.is_zero() {
                    continue;
                }
                let (q, r) = ring.div_rem(x, &pivot);
                a.add_col_multiple(j, pc, &ring.neg(&q));
                done &= r.is_zero();
            }
            if done {
                break;
            }
        }
        if a.get(row, pc).is_zero() {
            continue;
        }
        let unit = ring.normalizing_unit(a.get(row, pc));
        a.scale_col(pc, &unit);
        let pivot = a.get(row, pc).clone();
        for j in 0..pc {
            let (q, _) = ring.div_rem(a.get(row, j), &pivot);
            a.add_col_multiple(j, pc, &ring.neg(&q));
        }
        pc += 1;
    }
    a.col_range(0, pc)
}

/// Coordinates of the columns of `b` in the basis given by the columns of
/// `basis`, if every column of `b` lies in their span.
pub fn coordinates(basis: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    solve_matrix(basis, b)
}
