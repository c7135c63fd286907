//! Direct sum decompositions in the homotopy category, carried with all
//! their witnesses.

use std::sync::Arc;

use crate::complex::{ChainComplex, ChainMap, Homotopy};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

use super::minimize::Minimization;

#[derive(Clone, Debug)]
pub struct Part {
    pub complex: Arc<ChainComplex>,
    /// `part -> ambient`
    pub ins: ChainMap,
    /// `ambient -> part`
    pub prj: ChainMap,
}

/// `ambient ~ (+) parts`, witnessed by `prj_a o ins_b ~ delta_ab id` for
/// every pair and `sum_a ins_a o prj_a ~ id`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub ambient: Arc<ChainComplex>,
    pub parts: Vec<Part>,
    /// `pairs[a][b]: prj_a o ins_b ~ (id if a == b else 0)`
    pub pairs: Vec<Vec<Homotopy>>,
    /// `sum ins o prj ~ id`
    pub total: Homotopy,
}

pub(crate) fn witness(from: ChainMap, to: ChainMap, components: Vec<ExactMatrix>, what: &str) -> Result<Homotopy> {
    Homotopy::new(from, to, components).map_err(|e| Error::InternalWitnessFailure(format!("{what}: {e}")))
}

fn sum_maps(source: &Arc<ChainComplex>, target: &Arc<ChainComplex>, maps: &[ChainMap]) -> Result<ChainMap> {
    let mut acc = ChainMap::zero(source.clone(), target.clone());
    for m in maps {
        acc = acc.add(m)?;
    }
    Ok(acc)
}

fn expected_pair(a: &Part, b: &Part, same: bool) -> ChainMap {
    if same {
        ChainMap::identity(b.complex.clone())
    } else {
        ChainMap::zero(b.complex.clone(), a.complex.clone())
    }
}

impl Decomposition {
    /// The one-part decomposition `A = A`.
    pub fn trivial(a: Arc<ChainComplex>) -> Self {
        let id = ChainMap::identity(a.clone());
        Decomposition {
            ambient: a.clone(),
            parts: vec![Part { complex: a, ins: id.clone(), prj: id.clone() }],
            pairs: vec![vec![Homotopy::zero(&id)]],
            total: Homotopy::zero(&id),
        }
    }

    /// The empty decomposition of an acyclic complex, from a witness `id ~ 0`.
    pub fn empty(a: Arc<ChainComplex>, contraction: Homotopy) -> Result<Self> {
        let total = contraction.reverse();
        if *total.from_map() != ChainMap::zero(a.clone(), a.clone()) || *total.to_map() != ChainMap::identity(a.clone())
        {
            return Err(Error::EndpointMismatch("expected a homotopy id ~ 0".into()));
        }
        Ok(Decomposition { ambient: a, parts: Vec::new(), pairs: Vec::new(), total })
    }

    /// One part from a homotopy equivalence.
    pub fn from_minimization(a: &Arc<ChainComplex>, m: &Minimization) -> Self {
        Decomposition {
            ambient: a.clone(),
            parts: vec![Part { complex: m.complex.clone(), ins: m.from_min.clone(), prj: m.to_min.clone() }],
            pairs: vec![vec![m.to_from.clone()]],
            total: m.from_to.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Recomputes every endpoint and re-verifies every homotopy.
    pub fn verify(&self) -> Result<()> {
        let err = |what: String| Error::InternalWitnessFailure(what);
        for (a, pa) in self.parts.iter().enumerate() {
            for (b, pb) in self.parts.iter().enumerate() {
                let h = &self.pairs[a][b];
                if *h.from_map() != pa.prj.compose(&pb.ins)? || *h.to_map() != expected_pair(pa, pb, a == b) {
                    return Err(err(format!("pair ({a}, {b}) has wrong endpoints")));
                }
                h.verify()?;
            }
        }
        let products: Vec<ChainMap> = self.parts.iter().map(|p| p.ins.compose(&p.prj)).collect::<Result<_>>()?;
        let sum = sum_maps(&self.ambient, &self.ambient, &products)?;
        if *self.total.from_map() != sum || *self.total.to_map() != ChainMap::identity(self.ambient.clone()) {
            return Err(err("total witness has wrong endpoints".into()));
        }
        self.total.verify()
    }

    /// Applies the shift `[m]` to everything.
    pub fn shift(&self, m: i64) -> Decomposition {
        Decomposition {
            ambient: Arc::new(self.ambient.shift(m)),
            parts: self
                .parts
                .iter()
                .map(|p| Part { complex: Arc::new(p.complex.shift(m)), ins: p.ins.shift(m), prj: p.prj.shift(m) })
                .collect(),
            pairs: self.pairs.iter().map(|row| row.iter().map(|h| h.shift(m)).collect()).collect(),
            total: self.total.shift(m),
        }
    }

    /// Replaces part `m` by the parts of `sub`, a decomposition of it.
    pub fn refine(&self, m: usize, sub: &Decomposition) -> Result<Decomposition> {
        let old = &self.parts[m];
        if *sub.ambient != *old.complex {
            return Err(Error::EndpointMismatch("refinement of a different complex".into()));
        }
        let new_parts: Vec<Part> = sub
            .parts
            .iter()
            .map(|s| {
                Ok(Part { complex: s.complex.clone(), ins: old.ins.compose(&s.ins)?, prj: s.prj.compose(&old.prj)? })
            })
            .collect::<Result<_>>()?;

        // Index map: (origin, index) with origin false = old part, true = sub part.
        let mut layout: Vec<(bool, usize)> = Vec::new();
        for j in 0..self.parts.len() {
            if j == m {
                layout.extend((0..sub.parts.len()).map(|l| (true, l)));
            } else {
                layout.push((false, j));
            }
        }
        let part_at = |(from_sub, i): (bool, usize)| if from_sub { &new_parts[i] } else { &self.parts[i] };

        let w_mm = &self.pairs[m][m];
        let mut pairs = Vec::with_capacity(layout.len());
        for &a in &layout {
            let mut row = Vec::with_capacity(layout.len());
            for &b in &layout {
                let h = match (a, b) {
                    ((false, j), (false, i)) => self.pairs[j][i].clone(),
                    ((false, j), (true, l)) => self.pairs[j][m].compose_right(&sub.parts[l].ins)?,
                    ((true, l), (false, j)) => self.pairs[m][j].compose_left(&sub.parts[l].prj)?,
                    ((true, l), (true, l2)) => {
                        let inner = w_mm.sandwich(&sub.parts[l].prj, &sub.parts[l2].ins)?;
                        let comps =
                            inner.components().iter().zip(sub.pairs[l][l2].components()).map(|(x, y)| x + y).collect();
                        let (pa, pb) = (part_at(a), part_at(b));
                        witness(pa.prj.compose(&pb.ins)?, expected_pair(pa, pb, l == l2), comps, "refined pair")?
                    }
                };
                row.push(h);
            }
            pairs.push(row);
        }

        let through = sub.total.sandwich(&old.ins, &old.prj)?;
        let components = self.ambient.degrees().map(|k| &*through.component(k) + &*self.total.component(k)).collect();
        let parts: Vec<Part> = layout.iter().map(|&i| part_at(i).clone()).collect();
        let products: Vec<ChainMap> = parts.iter().map(|p| p.ins.compose(&p.prj)).collect::<Result<_>>()?;
        let from = sum_maps(&self.ambient, &self.ambient, &products)?;
        let total = witness(from, ChainMap::identity(self.ambient.clone()), components, "refined total")?;
        Ok(Decomposition { ambient: self.ambient.clone(), parts, pairs, total })
    }

    /// Drops parts whose complex is zero.
    pub fn without_zero_parts(&self) -> Decomposition {
        self.without_zero_parts_before(self.parts.len())
    }

    /// Drops zero parts among the first `end` parts.
    pub(crate) fn without_zero_parts_before(&self, end: usize) -> Decomposition {
        let keep: Vec<usize> =
            (0..self.parts.len()).filter(|&i| i >= end || !self.parts[i].complex.is_zero()).collect();
        Decomposition {
            ambient: self.ambient.clone(),
            parts: keep.iter().map(|&i| self.parts[i].clone()).collect(),
            pairs: keep.iter().map(|&a| keep.iter().map(|&b| self.pairs[a][b].clone()).collect()).collect(),
            total: self.total.clone(),
        }
    }
}
