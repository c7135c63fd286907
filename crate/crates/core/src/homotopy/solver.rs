//! Deciding homotopy questions by one linear solve over the coefficient ring.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{ChainComplex, ChainMap, Homotopy};
use crate::error::{Error, Result};
use crate::linalg::{
    coordinates, image_basis, module_from_cokernel, Equation, ExactMatrix, LinearSystem, ModulePresentation, Unknown,
};

/// Unknown blocks `h^k: S^k -> T^(k + shift)`, one per degree of `S` with
/// both ends nonzero.
struct Blocks {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    shift: i64,
    slots: BTreeMap<i64, Unknown>,
}

impl Blocks {
    fn new(sys: &mut LinearSystem, source: &Arc<ChainComplex>, target: &Arc<ChainComplex>, shift: i64) -> Self {
        let mut slots = BTreeMap::new();
        for k in source.degrees() {
            let (r, c) = (target.rank(k + shift), source.rank(k));
            if r > 0 && c > 0 {
                slots.insert(k, sys.unknown(r, c));
            }
        }
        Blocks { source: source.clone(), target: target.clone(), shift, slots }
    }

    fn get(&self, k: i64) -> Option<Unknown> {
        self.slots.get(&k).copied()
    }

    /// Rebuilds the degreewise matrices from a solution vector.
    fn read(&self, solution: &[ExactMatrix]) -> Vec<ExactMatrix> {
        let ring = self.source.ring();
        self.source
            .degrees()
            .map(|k| match self.get(k) {
                Some(u) => solution[u.index()].clone(),
                None => ExactMatrix::zeros(ring, self.target.rank(k + self.shift), self.source.rank(k)),
            })
            .collect()
    }
}

/// Adds `sign * (d_T h + h d_S)` at degree `k` of `eq` for the homotopy blocks `h`.
fn add_boundary(sys: &mut LinearSystem, eq: Equation, h: &Blocks, k: i64, negate: bool) {
    let ring = h.source.ring();
    let (s, t) = (&h.source, &h.target);
    let sign = |m: ExactMatrix| if negate { -&m } else { m };
    if let Some(u) = h.get(k) {
        sys.add_term(eq, &sign(t.d(k - 1).into_owned()), u, &ExactMatrix::identity(ring, s.rank(k)));
    }
    if let Some(u) = h.get(k + 1) {
        sys.add_term(eq, &sign(ExactMatrix::identity(ring, t.rank(k))), u, &s.d(k));
    }
}

/// Finds `h` with `d h + h d = u`, i.e. a homotopy `u ~ 0`, if one exists.
pub fn null_homotopy(u: &ChainMap) -> Result<Option<Homotopy>> {
    let (s, t) = (u.source(), u.target());
    let mut sys = LinearSystem::new(u.ring());
    let h = Blocks::new(&mut sys, s, t, -1);
    for k in s.degrees() {
        if t.rank(k) == 0 || s.rank(k) == 0 {
            continue;
        }
        let eq = sys.equation(t.rank(k), s.rank(k));
        add_boundary(&mut sys, eq, &h, k, false);
        sys.set_rhs(eq, u.component(k).into_owned());
    }
    let Some(solution) = sys.solve()? else { return Ok(None) };
    let zero = ChainMap::zero(s.clone(), t.clone());
    let witness = Homotopy::new(u.clone(), zero, h.read(&solution))
        .map_err(|e| Error::InternalWitnessFailure(format!("null homotopy: {e}")))?;
    Ok(Some(witness))
}

/// A homotopy inverse `g` of `f` with `g f ~ id` and `f g ~ id`.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub inverse: ChainMap,
    /// `g o f ~ id_source`
    pub source_witness: Homotopy,
    /// `f o g ~ id_target`
    pub target_witness: Homotopy,
}

/// Solves jointly for `g`, `h_src`, `h_tgt` with `d g = g d`,
/// `g f - id = d h_src + h_src d` and `f g - id = d h_tgt + h_tgt d`.
pub fn homotopy_inverse(f: &ChainMap) -> Result<Option<HomotopyEquivalence>> {
    let (s, t) = (f.source(), f.target());
    let ring = f.ring();
    let mut sys = LinearSystem::new(ring);
    let g = Blocks::new(&mut sys, t, s, 0);
    let a = Blocks::new(&mut sys, s, s, -1);
    let b = Blocks::new(&mut sys, t, t, -1);
    let lo = s.min_degree().min(t.min_degree()) - 1;
    let hi = s.max_degree().max(t.max_degree()) + 1;
    for k in lo..=hi {
        // d_S g^k - g^(k+1) d_T = 0
        if s.rank(k + 1) > 0 && t.rank(k) > 0 {
            let eq = sys.equation(s.rank(k + 1), t.rank(k));
            if let Some(u) = g.get(k) {
                sys.add_term(eq, &s.d(k), u, &ExactMatrix::identity(ring, t.rank(k)));
            }
            if let Some(u) = g.get(k + 1) {
                sys.add_term(eq, &ExactMatrix::identity(ring, s.rank(k + 1)), u, &-&*t.d(k));
            }
        }
        // g^k f^k - (d a + a d)^k = id
        if s.rank(k) > 0 {
            let eq = sys.equation(s.rank(k), s.rank(k));
            if let Some(u) = g.get(k) {
                sys.add_term(eq, &ExactMatrix::identity(ring, s.rank(k)), u, &f.component(k));
            }
            add_boundary(&mut sys, eq, &a, k, true);
            sys.set_rhs(eq, ExactMatrix::identity(ring, s.rank(k)));
        }
        // f^k g^k - (d b + b d)^k = id
        if t.rank(k) > 0 {
            let eq = sys.equation(t.rank(k), t.rank(k));
            if let Some(u) = g.get(k) {
                sys.add_term(eq, &f.component(k), u, &ExactMatrix::identity(ring, t.rank(k)));
            }
            add_boundary(&mut sys, eq, &b, k, true);
            sys.set_rhs(eq, ExactMatrix::identity(ring, t.rank(k)));
        }
    }
    let Some(solution) = sys.solve()? else { return Ok(None) };
    let witness_err = |e: Error| Error::InternalWitnessFailure(format!("homotopy inverse: {e}"));
    let inverse = ChainMap::new(t.clone(), s.clone(), g.read(&solution)).map_err(witness_err)?;
    let source_witness =
        Homotopy::new(inverse.compose(f)?, ChainMap::identity(s.clone()), a.read(&solution)).map_err(witness_err)?;
    let target_witness =
        Homotopy::new(f.compose(&inverse)?, ChainMap::identity(t.clone()), b.read(&solution)).map_err(witness_err)?;
    Ok(Some(HomotopyEquivalence { inverse, source_witness, target_witness }))
}

/// `Hom` in the homotopy category: chain maps `A -> B` modulo null-homotopic ones.
///
/// Generators of the presentation are a basis of the chain maps (flattened
/// degree by degree); relations are the null-homotopic maps.
pub fn hom_k_presentation(a: &Arc<ChainComplex>, b: &Arc<ChainComplex>) -> Result<ModulePresentation> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string()));
    }
    let ring = a.ring();
    // Chain maps: kernel of f |-> d_B f - f d_A.
    let mut maps = LinearSystem::new(ring);
    let f = Blocks::new(&mut maps, a, b, 0);
    for k in a.degrees() {
        if b.rank(k + 1) == 0 || a.rank(k) == 0 {
            continue;
        }
        let eq = maps.equation(b.rank(k + 1), a.rank(k));
        if let Some(u) = f.get(k) {
            maps.add_term(eq, &b.d(k), u, &ExactMatrix::identity(ring, a.rank(k)));
        }
        if let Some(u) = f.get(k + 1) {
            maps.add_term(eq, &ExactMatrix::identity(ring, b.rank(k + 1)), u, &-&*a.d(k));
        }
    }
    let cycles = maps.homogeneous_basis();
    // Null-homotopic maps: image of h |-> d_B h + h d_A, in the same flattening.
    let mut bounds = LinearSystem::new(ring);
    let h = Blocks::new(&mut bounds, a, b, -1);
    for k in a.degrees() {
        if b.rank(k) == 0 || a.rank(k) == 0 {
            continue;
        }
        let eq = bounds.equation(b.rank(k), a.rank(k));
        add_boundary(&mut bounds, eq, &h, k, false);
    }
    let boundary_map = bounds.coefficient_matrix();
    let null = image_basis(&boundary_map);
    let relations = coordinates(&cycles, &null)?
        .ok_or_else(|| Error::InternalWitnessFailure("null-homotopic map is not a chain map".into()))?;
    Ok(module_from_cokernel(&relations))
}
