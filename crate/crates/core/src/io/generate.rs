//! Seeded instance generator.
//!
//! Builds `(+)_k res(H^k)[-k]` with a Lefschetz map that sends each copy of
//! a cyclic module two degrees up by the identity, then hides the splitting
//! behind contractible insertions and unimodular changes of basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::lefschetz::{iterate_lefschetz, LefschetzData, LefschetzFamily, LefschetzMap};
use crate::linalg::{ExactMatrix, Ring};

use super::format::{Instance, Metadata, RingDescriptor};

/// Cohomology `Z^free_rank (+) (+)_t Z/t` of one degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeShape {
    pub degree: i64,
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorProfile {
    pub ring: RingDescriptor,
    /// Cohomology is placed in `[-n0, n0]`.
    pub n0: i64,
    /// Degrees not listed are zero; `shape(-k)` must equal `shape(k)`.
    pub shapes: Vec<DegreeShape>,
    /// Number of random elementary basis changes and contractible insertions.
    pub scramble_ops: usize,
    #[serde(default)]
    pub seed: u64,
}

/// One cyclic module: `None` for a free summand, `Some(t)` for `Z/t`.
type Cyclic = Option<u64>;

/// Per-degree multiset of cyclic summands, after validation.
fn cyclic_counts(profile: &GeneratorProfile, ring: Ring) -> Result<BTreeMap<i64, BTreeMap<Cyclic, usize>>> {
    let bad = |m: String| Err(Error::InvalidProfile(m));
    if profile.n0 < 0 {
        return bad(format!("n0 = {} is negative", profile.n0));
    }
    let mut out: BTreeMap<i64, BTreeMap<Cyclic, usize>> = BTreeMap::new();
    for s in &profile.shapes {
        if s.degree.abs() > profile.n0 {
            return bad(format!("degree {} lies outside [-{n0}, {n0}]", s.degree, n0 = profile.n0));
        }
        let counts = out.entry(s.degree).or_default();
        if !counts.is_empty() {
            return bad(format!("degree {} listed twice", s.degree));
        }
        if s.free_rank > 0 {
            counts.insert(None, s.free_rank);
        }
        for &t in &s.torsion {
            if t < 2 {
                return bad(format!("torsion factor {t} at degree {} must be at least 2", s.degree));
            }
            if let Ring::PrimeField(p) = ring {
                if t % p == 0 {
                    return bad(format!("torsion factor {t} at degree {} is zero in F{p}", s.degree));
                }
            }
            *counts.entry(Some(t)).or_default() += 1;
        }
    }
    for (&k, counts) in &out {
        let mirror = out.get(&-k).cloned().unwrap_or_default();
        if *counts != mirror {
            return bad(format!("shape at degree {k} differs from the shape at degree {}", -k));
        }
    }
    out.retain(|_, c| !c.is_empty());
    Ok(out)
}

/// The count of `c` in degree `j` minus the count in degree `j + 2`: the
/// number of strings `-j, -j + 2, ..., j` of copies of `c`.
fn strings(counts: &BTreeMap<i64, BTreeMap<Cyclic, usize>>) -> Option<Vec<(Cyclic, i64)>> {
    let count = |k: i64, c: &Cyclic| counts.get(&k).and_then(|m| m.get(c)).copied().unwrap_or(0);
    let kinds: Vec<Cyclic> = counts
        .values()
        .flat_map(|m| m.keys().copied())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let top = counts.keys().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    for c in kinds {
        for j in 0..=top {
            let here = count(j, &c);
            let above = count(j + 2, &c);
            if here < above {
                return None;
            }
            out.extend(std::iter::repeat_n((c, j), here - above));
        }
    }
    Some(out)
}

/// Split model: pieces `res(c)` placed at their degrees and, for each
/// piece, the piece two degrees up that `Phi` maps it to.
struct Model {
    complex: ChainComplex,
    /// Basis index ranges of each piece: `(degree, first index)` per term.
    pieces: Vec<Vec<(i64, usize)>>,
    /// `(from, to)` piece pairs joined by the identity.
    arrows: Vec<(usize, usize)>,
    /// Pieces at degree `-n` matched with the piece at degree `n`.
    mirrors: Vec<(i64, usize, usize)>,
}

fn resolution(ring: Ring, c: Cyclic, degree: i64) -> ChainComplex {
    match c {
        None => ChainComplex::concentrated(ring, degree, 1),
        Some(t) => ChainComplex::two_term(degree - 1, ExactMatrix::from_i64(ring, 1, 1, &[t as i64])),
    }
}

/// With `chains` each string occupies `-j, -j + 2, ..., j`; otherwise only
/// its two ends.
fn build_model(ring: Ring, strings: &[(Cyclic, i64)], chains: bool) -> Model {
    let mut complex = ChainComplex::zero(ring);
    let mut used: BTreeMap<i64, usize> = BTreeMap::new();
    let mut pieces = Vec::new();
    let mut arrows = Vec::new();
    let mut mirrors = Vec::new();
    for &(c, j) in strings {
        let first = pieces.len();
        let mut degree = -j;
        while degree <= j {
            let r = resolution(ring, c, degree);
            let place = r
                .degrees()
                .map(|k| {
                    let slot = used.entry(k).or_insert(0);
                    let at = *slot;
                    *slot += r.rank(k);
                    (k, at)
                })
                .collect();
            complex = complex.direct_sum(&r).expect("same ring");
            if degree > -j {
                arrows.push((pieces.len() - 1, pieces.len()));
            }
            pieces.push(place);
            degree += if chains || j == 0 { 2 } else { 2 * j };
        }
        if j > 0 {
            mirrors.push((j, first, pieces.len() - 1));
        }
    }
    Model { complex, pieces, arrows, mirrors }
}

/// Identity `piece a -> piece b` as components of a map `A[-s] -> A[s]`
/// (`s` = half the degree gap), keyed by the source degree `k` of `A[-s]`.
fn piece_map(model: &Model, a: usize, b: usize, s: i64, comps: &mut BTreeMap<i64, ExactMatrix>, ring: Ring) {
    let x = &model.complex;
    for (&(ka, ia), &(kb, ib)) in model.pieces[a].iter().zip(&model.pieces[b]) {
        debug_assert_eq!(kb - ka, 2 * s);
        let k = ka + s;
        let m = comps.entry(k).or_insert_with(|| ExactMatrix::zeros(ring, x.rank(k + s), x.rank(k - s)));
        m.set(ib, ia, ring.one());
    }
}

/// A random change of basis, tracked with its inverse.
struct Basis {
    p: BTreeMap<i64, ExactMatrix>,
    q: BTreeMap<i64, ExactMatrix>,
}

impl Basis {
    /// `P_to m Q_from`, with `m` padded by zero rows and columns for the
    /// inserted contractible pieces.
    fn conjugate(&self, b: &ChainComplex, k_to: i64, m: &ExactMatrix, k_from: i64) -> ExactMatrix {
        let ring = b.ring();
        let (rows, cols) = (b.rank(k_to), b.rank(k_from));
        if rows == 0 || cols == 0 {
            return ExactMatrix::zeros(ring, rows, cols);
        }
        let mut full = ExactMatrix::zeros(ring, rows, cols);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                full.set(r, c, m.get(r, c).clone());
            }
        }
        &(&self.p[&k_to] * &full) * &self.q[&k_from]
    }
}

fn transvection(ring: Ring, n: usize, i: usize, j: usize, c: i64) -> ExactMatrix {
    let mut e = ExactMatrix::identity(ring, n);
    e.set(i, j, ring.from_i64(c));
    e
}

/// Contractible `R --1--> R` insertions (at most two, so that ranks stay
/// small) followed by elementary basis changes.
fn scramble(rng: &mut ChaCha8Rng, a: &ChainComplex, ops: usize, n0: i64) -> (ChainComplex, Basis) {
    let ring = a.ring();
    let insertions = (0..ops).filter(|_| rng.gen_bool(0.25)).count().min(2);
    let mut b = a.clone();
    for _ in 0..insertions {
        let k = rng.gen_range(-n0 - 1..=n0);
        b = b.direct_sum(&ChainComplex::two_term(k, ExactMatrix::identity(ring, 1))).expect("same ring");
    }
    let mut basis = Basis {
        p: b.degrees().map(|k| (k, ExactMatrix::identity(ring, b.rank(k)))).collect(),
        q: b.degrees().map(|k| (k, ExactMatrix::identity(ring, b.rank(k)))).collect(),
    };
    let degrees: Vec<i64> = b.degrees().collect();
    for _ in insertions..ops {
        let k = degrees[rng.gen_range(0..degrees.len())];
        let n = b.rank(k);
        if n < 2 {
            continue;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        let p = &transvection(ring, n, i, j, c) * &basis.p[&k];
        let q = &basis.q[&k] * &transvection(ring, n, i, j, -c);
        basis.p.insert(k, p);
        basis.q.insert(k, q);
    }
    (b, basis)
}

/// Generates a scrambled instance satisfying hard Lefschetz. Shapes whose
/// counts do not shrink away from degree zero (so that no single map can
/// have isomorphic iterates) get family data instead of a power map.
pub fn generate_instance(profile: &GeneratorProfile) -> Result<Instance> {
    let ring = profile.ring.ring().map_err(|e| Error::InvalidProfile(e.to_string()))?;
    let counts = cyclic_counts(profile, ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
    let (strs, power) = match strings(&counts) {
        Some(s) => (s, true),
        None => {
            let ends = counts
                .iter()
                .filter(|(&k, _)| k >= 0)
                .flat_map(|(&k, m)| m.iter().flat_map(move |(&c, &n)| std::iter::repeat_n((c, k), n)))
                .collect();
            (ends, false)
        }
    };
    let model = build_model(ring, &strs, power);
    let n0 = profile.n0;
    let (b, basis) = scramble(&mut rng, &model.complex, profile.scramble_ops, n0);
    let conj = |k_to: i64, m: &ExactMatrix, k_from: i64| basis.conjugate(&b, k_to, m, k_from);
    let diffs = (b.min_degree()..b.max_degree()).map(|k| conj(k + 1, &b.d(k), k)).collect();
    let scrambled = Arc::new(ChainComplex::new(ring, b.min_degree(), b.ranks().to_vec(), diffs)?);
    let data = if power {
        let mut comps = BTreeMap::new();
        for &(from, to) in &model.arrows {
            piece_map(&model, from, to, 1, &mut comps, ring);
        }
        let moved = comps.iter().map(|(&k, m)| (k, conj(k + 1, m, k - 1))).collect();
        LefschetzData::Power(LefschetzMap::new(scrambled.clone(), &moved)?)
    } else {
        let mut maps = Vec::new();
        for n in 1..=n0 {
            let mut comps = BTreeMap::new();
            for &(_, from, to) in model.mirrors.iter().filter(|m| m.0 == n) {
                piece_map(&model, from, to, n, &mut comps, ring);
            }
            let source = Arc::new(scrambled.shift(-n));
            let target = Arc::new(scrambled.shift(n));
            let components = source
                .degrees()
                .map(|k| match comps.get(&k) {
                    Some(m) => conj(k + n, m, k - n),
                    None => ExactMatrix::zeros(ring, scrambled.rank(k + n), scrambled.rank(k - n)),
                })
                .collect();
            maps.push(ChainMap::new(source, target, components)?);
        }
        LefschetzData::Family(LefschetzFamily::new(scrambled.clone(), maps)?)
    };
    Ok(Instance {
        complex: scrambled,
        data,
        metadata: Some(Metadata { seed: Some(profile.seed), profile: Some(profile.clone()) }),
    })
}

/// The same instance with `Phi = 0`.
pub fn negative_control(instance: &Instance) -> Instance {
    Instance {
        complex: instance.complex.clone(),
        data: LefschetzData::Power(LefschetzMap::zero(instance.complex.clone())),
        metadata: instance.metadata.clone(),
    }
}

/// Iterates of a power map for `n = 1..=count`, each moved by a random
/// null-homotopic map `d h + h d` with entries in `[-2, 2]`.
pub fn perturbed_family(phi: &LefschetzMap, count: i64, seed: u64) -> Result<LefschetzFamily> {
    let a = phi.base().clone();
    let ring = a.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maps = Vec::new();
    for n in 1..=count {
        let psi = iterate_lefschetz(phi, n)?;
        let (s, t) = (psi.source().clone(), psi.target().clone());
        let h: BTreeMap<i64, ExactMatrix> = (s.min_degree()..=s.max_degree() + 1)
            .map(|k| {
                let (r, c) = (t.rank(k - 1), s.rank(k));
                let vals: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-2..=2)).collect();
                (k, ExactMatrix::from_i64(ring, r, c, &vals))
            })
            .collect();
        let hk = |k: i64| h.get(&k).cloned().unwrap_or_else(|| ExactMatrix::zeros(ring, t.rank(k - 1), s.rank(k)));
        let components =
            s.degrees().map(|k| &(&*psi.component(k) + &(&*t.d(k - 1) * &hk(k))) + &(&hk(k + 1) * &*s.d(k))).collect();
        maps.push(ChainMap::new(s, t, components)?);
    }
    LefschetzFamily::new(a, maps)
}

/// A random profile whose cohomology is a sum of Lefschetz strings
/// `-j, -j + 2, ..., j` of cyclic modules, always including one string of
/// length `n0`. Torsion (over the integers only) is drawn from
/// `{2, 3, 4, 9}`. Strings are added only while every term of the split
/// model keeps rank at most 4, so with at most two contractible insertions
/// every term of the generated complex has rank at most 6.
pub fn random_profile(ring: Ring, n0: i64, seed: u64) -> GeneratorProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<i64, BTreeMap<Cyclic, usize>> = BTreeMap::new();
    let model_rank = |counts: &BTreeMap<i64, BTreeMap<Cyclic, usize>>, k: i64| -> usize {
        let at = |k: i64| counts.get(&k).into_iter().flat_map(|m| m.iter());
        at(k).map(|(_, n)| n).sum::<usize>() + at(k + 1).filter(|(c, _)| c.is_some()).map(|(_, n)| n).sum::<usize>()
    };
    for attempt in 0..6 {
        let j = if attempt == 0 { n0 } else { rng.gen_range(0..=n0) };
        let kind: Cyclic =
            if ring == Ring::Integers && rng.gen_bool(0.4) { Some([2u64, 3, 4, 9][rng.gen_range(0..4)]) } else { None };
        let mut next = counts.clone();
        for degree in (-j..=j).step_by(2) {
            *next.entry(degree).or_default().entry(kind).or_default() += 1;
        }
        if (-n0 - 1..=n0).all(|k| model_rank(&next, k) <= 4) {
            counts = next;
        }
    }
    let shapes = counts
        .into_iter()
        .map(|(degree, m)| DegreeShape {
            degree,
            free_rank: m.get(&None).copied().unwrap_or(0),
            torsion: m.iter().filter_map(|(c, &n)| c.map(|t| std::iter::repeat_n(t, n))).flatten().collect(),
        })
        .collect();
    GeneratorProfile { ring: ring.into(), n0, shapes, scramble_ops: 24, seed }
}
