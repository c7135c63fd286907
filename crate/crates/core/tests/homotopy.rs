mod common;

use std::sync::Arc;

use common::{boundary_map, mat, random_homotopy_components, random_matrix, random_split_complex, rings, scramble};
use lefschetz::complex::{amplitude, cohomology, cone, ChainComplex, ChainMap, Homotopy};
use lefschetz::homotopy::{
    canonical_form, first_inert_entry, hom_k_presentation, homotopy_inverse, minimize, null_homotopy,
    split_with_retraction, Decomposition,
};
use lefschetz::linalg::{ExactMatrix, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Z: Ring = Ring::Integers;

fn arc(c: ChainComplex) -> Arc<ChainComplex> {
    Arc::new(c)
}

#[test]
fn null_homotopy_of_zero_is_zero() {
    let a = arc(ChainComplex::two_term(0, mat(Z, &[&[2]])));
    let h = null_homotopy(&ChainMap::zero(a.clone(), a.clone())).unwrap().unwrap();
    assert!(h.components().iter().all(ExactMatrix::is_zero));
}

#[test]
fn contractible_identity_is_null_homotopic() {
    let a = arc(ChainComplex::two_term(-1, mat(Z, &[&[1]])));
    let h = null_homotopy(&ChainMap::identity(a.clone())).unwrap().unwrap();
    assert_eq!(*h.component(0), mat(Z, &[&[1]]));
    h.verify().unwrap();
}

#[test]
fn identity_of_resolution_is_not_null_homotopic() {
    let a = arc(ChainComplex::two_term(-1, mat(Z, &[&[3]])));
    assert!(null_homotopy(&ChainMap::identity(a)).unwrap().is_none());
}

#[test]
fn null_homotopy_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ring in rings() {
        for _ in 0..20 {
            let s = arc(random_split_complex(&mut rng, ring, -1, 1));
            let (s, _) = scramble(&mut rng, &s);
            let t = arc(random_split_complex(&mut rng, ring, -1, 2));
            let (t, _) = scramble(&mut rng, &t);
            let h0 = random_homotopy_components(&mut rng, &s, &t);
            let u = boundary_map(&s, &t, &h0);
            let h = null_homotopy(&u).unwrap().expect("constructed null-homotopic map");
            h.verify().unwrap();
            assert_eq!(h.from_map(), &u);
        }
    }
}

#[test]
fn identity_is_its_own_inverse() {
    let a = arc(ChainComplex::two_term(0, mat(Z, &[&[2], &[0]])));
    let eq = homotopy_inverse(&ChainMap::identity(a.clone())).unwrap().unwrap();
    assert_eq!(eq.inverse, ChainMap::identity(a));
    eq.source_witness.verify().unwrap();
    eq.target_witness.verify().unwrap();
}

#[test]
fn z_is_not_equivalent_to_z_mod_3() {
    let s = arc(ChainComplex::concentrated(Z, 0, 1));
    let t = arc(ChainComplex::two_term(-1, mat(Z, &[&[3]])));
    let f = ChainMap::new(s, t, vec![mat(Z, &[&[1]])]).unwrap();
    assert!(homotopy_inverse(&f).unwrap().is_none());
    // Over F_2 multiplication by 3 is invertible, so the same shape of map
    // into the contractible complex cannot be an equivalence either.
    let f2 = Ring::prime_field(2).unwrap();
    let s = arc(ChainComplex::concentrated(f2, 0, 1));
    let t = arc(ChainComplex::two_term(-1, mat(f2, &[&[3]])));
    let f = ChainMap::new(s, t, vec![mat(f2, &[&[1]])]).unwrap();
    assert!(homotopy_inverse(&f).unwrap().is_none());
}

#[test]
fn inverse_of_scrambled_inclusion_into_contractible_extension() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ring in rings() {
        for _ in 0..10 {
            let a = arc(random_split_complex(&mut rng, ring, -1, 1));
            let extra = ChainComplex::two_term(0, mat(ring, &[&[1, 0], &[0, 1]]));
            let b = arc(a.direct_sum(&extra).unwrap());
            let inc = ChainMap::from_fn(a.clone(), b.clone(), |k| {
                ExactMatrix::identity(ring, a.rank(k)).vstack(&ExactMatrix::zeros(ring, extra.rank(k), a.rank(k)))
            })
            .unwrap();
            let (c, iso) = scramble(&mut rng, &b);
            let f = iso.compose(&inc).unwrap();
            let eq = homotopy_inverse(&f).unwrap().expect("equivalence");
            eq.source_witness.verify().unwrap();
            eq.target_witness.verify().unwrap();
            assert_eq!(eq.inverse.source(), &c);
        }
    }
}

#[test]
fn equivalence_iff_cone_is_acyclic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ring in rings() {
        for _ in 0..15 {
            let a = arc(random_split_complex(&mut rng, ring, 0, 1));
            let b = arc(random_split_complex(&mut rng, ring, 0, 1));
            // Random chain maps: solve for the space of chain maps and pick a combination.
            let comps: Vec<ExactMatrix> =
                a.degrees().map(|k| random_matrix(&mut rng, ring, b.rank(k), a.rank(k), 2)).collect();
            let Ok(f) = ChainMap::new(a.clone(), b.clone(), comps) else { continue };
            let acyclic = amplitude(&cone(&f).unwrap().complex).is_none();
            assert_eq!(homotopy_inverse(&f).unwrap().is_some(), acyclic);
        }
    }
}

#[test]
fn hom_examples() {
    let a = arc(ChainComplex::two_term(-3, mat(Z, &[&[5]])));
    let b = arc(ChainComplex::two_term(-1, mat(Z, &[&[7]])));
    assert!(hom_k_presentation(&a, &b).unwrap().is_zero());
    let z0 = arc(ChainComplex::concentrated(Z, 0, 1));
    let h = hom_k_presentation(&z0, &z0).unwrap();
    assert_eq!((h.free_rank(), h.invariant_factors().len()), (1, 0));
    // Hom(res(Z/2), res(Z/2)) = Z/2; Hom(res(Z/2), res(Z/4)) = Z/2.
    let r2 = arc(ChainComplex::two_term(-1, mat(Z, &[&[2]])));
    let r4 = arc(ChainComplex::two_term(-1, mat(Z, &[&[4]])));
    assert_eq!(hom_k_presentation(&r2, &r2).unwrap().describe(), "Z/2");
    assert_eq!(hom_k_presentation(&r2, &r4).unwrap().describe(), "Z/2");
    // Ext^1(Z/2, Z/4) appears as Hom(res(Z/2), res(Z/4)[1]).
    let r4_shift = arc(r4.shift(1));
    assert_eq!(hom_k_presentation(&r2, &r4_shift).unwrap().describe(), "Z/2");
    for n in 1..=4 {
        let s = arc(r2.shift(2 * n));
        let t = arc(ChainComplex::two_term(-1, mat(Z, &[&[3]])));
        assert!(hom_k_presentation(&s, &t).unwrap().is_zero());
    }
}

#[test]
fn hom_is_invariant_under_minimization() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let a = arc(random_split_complex(&mut rng, Z, -1, 0));
        let (a, _) = scramble(&mut rng, &a);
        let b = arc(random_split_complex(&mut rng, Z, -1, 0));
        let (b, _) = scramble(&mut rng, &b);
        let am = minimize(&a).unwrap().complex;
        let bm = minimize(&b).unwrap().complex;
        let h = hom_k_presentation(&a, &b).unwrap();
        assert!(h.is_isomorphic(&hom_k_presentation(&am, &bm).unwrap()));
    }
}

#[test]
fn minimize_examples() {
    let c = arc(ChainComplex::two_term(0, mat(Z, &[&[1]])));
    assert!(minimize(&c).unwrap().complex.is_zero());
    let a = arc(ChainComplex::two_term(0, mat(Z, &[&[2, 0], &[0, 6]])));
    let m = minimize(&a).unwrap();
    assert_eq!(m.complex, a);
    // No unit entry, but a unit invariant factor.
    let b = arc(ChainComplex::two_term(0, mat(Z, &[&[2], &[3]])));
    let m = minimize(&b).unwrap();
    assert_eq!(m.complex.ranks(), &[1]);
    assert_eq!(m.complex.degrees(), 1..=1);
    m.from_to.verify().unwrap();
}

#[test]
fn minimize_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for ring in rings() {
        for _ in 0..20 {
            let a = arc(random_split_complex(&mut rng, ring, -2, 2));
            let (a, _) = scramble(&mut rng, &a);
            let m = minimize(&a).unwrap();
            m.from_to.verify().unwrap();
            m.to_from.verify().unwrap();
            Decomposition::from_minimization(&a, &m).verify().unwrap();
            for k in -3..=3 {
                let h = cohomology(&a, k);
                assert!(h.is_isomorphic(&cohomology(&m.complex, k)));
                if ring.is_field() {
                    assert_eq!(m.complex.rank(k), h.free_rank());
                }
            }
            if ring.is_field() {
                assert!(m.complex.differentials().iter().all(ExactMatrix::is_zero));
            }
        }
    }
}

#[test]
fn split_strict_direct_sum() {
    let a = ChainComplex::two_term(0, mat(Z, &[&[2]]));
    let b = ChainComplex::concentrated(Z, 1, 1);
    let y = arc(a.direct_sum(&b).unwrap());
    let x = arc(a.clone());
    let inj = ChainMap::from_fn(x.clone(), y.clone(), |k| {
        ExactMatrix::identity(Z, a.rank(k)).vstack(&ExactMatrix::zeros(Z, b.rank(k), a.rank(k)))
    })
    .unwrap();
    let proj = ChainMap::from_fn(y.clone(), x.clone(), |k| {
        ExactMatrix::identity(Z, a.rank(k)).hstack(&ExactMatrix::zeros(Z, a.rank(k), b.rank(k)))
    })
    .unwrap();
    let w = Homotopy::zero(&proj.compose(&inj).unwrap());
    let split = split_with_retraction(&inj, &proj, &w).unwrap();
    split.verify().unwrap();
    let m = minimize(&split.complement).unwrap();
    assert_eq!(*m.complex, b);
}

#[test]
fn split_off_zero_summand() {
    let y = arc(ChainComplex::two_term(0, mat(Z, &[&[3]])));
    let x = arc(ChainComplex::zero(Z));
    let f = ChainMap::zero(x.clone(), y.clone());
    let g = ChainMap::zero(y.clone(), x.clone());
    let w = Homotopy::zero(&ChainMap::identity(x.clone()));
    let split = split_with_retraction(&f, &g, &w).unwrap();
    split.verify().unwrap();
    assert_eq!(*split.complement, *y);
}

#[test]
fn split_scrambled_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for ring in rings() {
        for _ in 0..10 {
            let a = random_split_complex(&mut rng, ring, -1, 1);
            let b = random_split_complex(&mut rng, ring, -1, 1);
            let y0 = arc(a.direct_sum(&b).unwrap());
            let x = arc(a.clone());
            let inj = ChainMap::from_fn(x.clone(), y0.clone(), |k| {
                ExactMatrix::identity(ring, a.rank(k)).vstack(&ExactMatrix::zeros(ring, b.rank(k), a.rank(k)))
            })
            .unwrap();
            let (y, iso) = scramble(&mut rng, &y0);
            let f = iso.compose(&inj).unwrap();
            // Retraction found by the solver: any inverse up to homotopy of the
            // projection works, so solve g f ~ id directly.
            let back = homotopy_inverse(&iso).unwrap().unwrap();
            let proj = ChainMap::from_fn(y0.clone(), x.clone(), |k| {
                ExactMatrix::identity(ring, a.rank(k)).hstack(&ExactMatrix::zeros(ring, a.rank(k), b.rank(k)))
            })
            .unwrap();
            let g = proj.compose(&back.inverse).unwrap();
            let gf = g.compose(&f).unwrap();
            let diff = gf.sub(&ChainMap::identity(x.clone())).unwrap();
            let h = null_homotopy(&diff).unwrap().unwrap();
            let w = Homotopy::new(gf, ChainMap::identity(x.clone()), h.components().to_vec()).unwrap();
            let split = split_with_retraction(&f, &g, &w).unwrap();
            split.verify().unwrap();
            for k in -3..=3 {
                let sum = cohomology(&x.direct_sum(&split.complement).unwrap(), k);
                assert!(sum.is_isomorphic(&cohomology(&y, k)));
            }
        }
    }
}

#[test]
fn canonical_form_zeroes_inert_entries() {
    let a = arc(ChainComplex::new(Z, 0, vec![1, 1], vec![ExactMatrix::zeros(Z, 1, 1)]).unwrap());
    let id = ChainMap::identity(a.clone());
    let h = Homotopy::new(id.clone(), id.clone(), vec![ExactMatrix::zeros(Z, 0, 1), mat(Z, &[&[5]])]).unwrap();
    assert_eq!(first_inert_entry(&a, &a, h.components()), Some((1, 0, 0)));
    let c = canonical_form(&h);
    assert_eq!(first_inert_entry(&a, &a, c.components()), None);
    c.verify().unwrap();
}
