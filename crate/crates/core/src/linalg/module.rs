//! Finitely generated modules given by generators and relations.

use super::matrix::ExactMatrix;
use super::ring::{Ring, Scalar};
use super::snf::smith_normal_form;
use super::solve::{kernel_basis, solve_matrix};
use crate::error::{Error, Result};

/// The cokernel of `relations`, whose columns are relations among
/// `generators` generators, together with its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    ring: Ring,
    generators: usize,
    relations: ExactMatrix,
    invariant_factors: Vec<Scalar>,
    free_rank: usize,
}

impl ModulePresentation {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &ExactMatrix {
        &self.relations
    }

    /// Non-unit invariant factors `d_1 | d_2 | ...`, positive over the
    /// integers. Always empty over a field.
    pub fn invariant_factors(&self) -> &[Scalar] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Complete isomorphism invariant.
    pub fn is_isomorphic(&self, other: &ModulePresentation) -> bool {
        self.ring == other.ring
            && self.free_rank == other.free_rank
            && self.invariant_factors == other.invariant_factors
    }

    /// Human readable form such as `Z^2 + Z/3 + Z/9`.
    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let base = match self.ring {
            Ring::Integers => "Z".to_string(),
            Ring::Rationals => "Q".to_string(),
            Ring::PrimeField(p) => format!("F{p}"),
        };
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base.clone()),
            r => parts.push(format!("{base}^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("{base}/{}", self.ring.format_element(d)));
        }
        parts.join(" + ")
    }
}

pub fn module_from_cokernel(relations: &ExactMatrix) -> ModulePresentation {
    let ring = relations.ring();
    let snf = smith_normal_form(relations);
    let invariant_factors = snf.diagonal().into_iter().filter(|d| !ring.is_unit(d)).collect();
    ModulePresentation {
        ring,
        generators: relations.rows(),
        relations: relations.clone(),
        invariant_factors,
        free_rank: relations.rows() - snf.rank,
    }
}

/// Checks that `f` (target generators x source generators) sends relations
/// of `src` into the relation span of `dst`.
pub fn check_module_map(f: &ExactMatrix, src: &ModulePresentation, dst: &ModulePresentation) -> Result<()> {
    if f.rows() != dst.generators || f.cols() != src.generators {
        return Err(Error::DimensionMismatch(format!(
            "module map is {}x{} but modules have {} and {} generators",
            f.rows(),
            f.cols(),
            dst.generators,
            src.generators
        )));
    }
    match solve_matrix(&dst.relations, &(f * &src.relations))? {
        Some(_) => Ok(()),
        None => Err(Error::NotAModuleMap),
    }
}

/// Decides whether `f: src -> dst` induces a bijection of modules.
pub fn module_map_is_iso(f: &ExactMatrix, src: &ModulePresentation, dst: &ModulePresentation) -> Result<bool> {
    check_module_map(f, src, dst)?;
    let combined = f.hstack(&dst.relations);
    if !module_from_cokernel(&combined).is_zero() {
        return Ok(false);
    }
    // x maps into the relations of dst iff (x, y) is in ker [f | R_dst] for some y.
    let preimages = kernel_basis(&combined).row_range(0, src.generators);
    Ok(solve_matrix(&src.relations, &preimages)?.is_some())
}

/// Whether two module maps `src -> dst` agree modulo the relations of `dst`.
pub fn module_maps_agree(f: &ExactMatrix, g: &ExactMatrix, dst: &ModulePresentation) -> Result<bool> {
    let diff = f.try_sub(g)?;
    Ok(solve_matrix(&dst.relations, &diff)?.is_some())
}
