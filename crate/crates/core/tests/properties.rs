mod common;

use std::sync::Arc;

use common::{random_split_complex, rings, scramble};
use lefschetz::complex::{cohomology, cone, ChainComplex, ChainMap};
use lefschetz::homotopy::{minimize, null_homotopy};
use lefschetz::io::{generate_instance, parse_instance, random_profile, serialize_instance};
use lefschetz::linalg::{kernel_basis, rank, smith_normal_form, solve_linear, ExactMatrix, Ring};
use lefschetz::{deligne_decompose, verify_certificate};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring_strategy() -> impl Strategy<Value = Ring> {
    (0..3usize).prop_map(|i| rings()[i])
}

fn matrix_strategy() -> impl Strategy<Value = ExactMatrix> {
    (ring_strategy(), 0..5usize, 0..5usize).prop_flat_map(|(ring, r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| ExactMatrix::from_i64(ring, r, c, &v))
    })
}

fn is_unit_det(m: &ExactMatrix) -> bool {
    let ring = m.ring();
    let s = smith_normal_form(m);
    s.rank == m.rows() && s.diagonal().iter().all(|x| ring.is_unit(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_diagonalization(m in matrix_strategy()) {
        let ring = m.ring();
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(is_unit_det(&s.u) && is_unit_det(&s.v));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(ring.divides(&w[0], &w[1]));
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.d.get(i, j).clone() == ring.zero());
                }
            }
        }
        prop_assert_eq!(rank(&m), s.rank);
    }

    #[test]
    fn kernel_basis_is_a_kernel(m in matrix_strategy()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.rows(), m.cols());
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(k.cols() + rank(&m), m.cols());
    }

    #[test]
    fn solutions_of_consistent_systems_are_found(m in matrix_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = common::random_matrix(&mut rng, m.ring(), m.cols(), 1, 5);
        let b = &m * &x;
        let sol = solve_linear(&m, &b).unwrap().expect("b lies in the image");
        prop_assert_eq!(&m * &sol.particular, b);
        prop_assert!((&m * &sol.kernel).is_zero());
    }

    #[test]
    fn shift_and_cone_preserve_chain_laws(ring in ring_strategy(), seed in any::<u64>(), s in -3i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Arc::new(random_split_complex(&mut rng, ring, -1, 2));
        let shifted = a.shift(s);
        prop_assert!(shifted.validate().is_ok());
        prop_assert_eq!(shifted.shift(-s), (*a).clone());
        for k in a.degrees() {
            prop_assert!(cohomology(&shifted, k - s).is_isomorphic(&cohomology(&a, k)));
        }
        let (b, iso) = scramble(&mut rng, &a);
        let c = cone(&iso).unwrap();
        prop_assert!(c.complex.validate().is_ok());
        for k in c.complex.degrees() {
            prop_assert!(cohomology(&c.complex, k).is_zero(), "cone of an isomorphism into {:?}", b.ranks());
        }
    }

    #[test]
    fn maps_from_contractible_complexes_are_null_homotopic(ring in ring_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Arc::new(ChainComplex::two_term(0, common::mat(ring, &[&[1]])));
        let (c, _) = scramble(&mut rng, &c);
        let h = null_homotopy(&ChainMap::identity(c)).unwrap();
        prop_assert!(h.is_some());
    }

    #[test]
    fn minimization_keeps_cohomology(ring in ring_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Arc::new(random_split_complex(&mut rng, ring, -2, 2));
        let (a, _) = scramble(&mut rng, &a);
        let m = minimize(&a).unwrap();
        m.from_to.verify().unwrap();
        m.to_from.verify().unwrap();
        prop_assert!(m.complex.differentials().iter().all(|d| d.entries().iter().all(|x| !ring.is_unit(x))));
        for k in a.degrees() {
            prop_assert!(cohomology(&m.complex, k).is_isomorphic(&cohomology(&a, k)));
        }
    }

    #[test]
    fn instances_round_trip_and_decompose(ring in ring_strategy(), n0 in 0i64..=2, seed in 0u64..10_000) {
        let inst = generate_instance(&random_profile(ring, n0, seed)).unwrap();
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(serialize_instance(&back), text);
        let cert = deligne_decompose(&back.complex, &back.data).unwrap();
        prop_assert!(verify_certificate(&back.complex, &cert).is_ok());
    }
}
