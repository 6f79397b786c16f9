use proptest::prelude::*;

use yoshida_core::fixture;
use yoshida_core::quat::{ideal_equivalent, short_vectors, Lattice, QuatIdeal};
use yoshida_core::Rational;

fn coords() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-12i64..=12)
}

fn nonzero_coords() -> impl Strategy<Value = [i64; 4]> {
    coords().prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

/// Products of elementary column operations.
fn unimodular() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative(x in coords(), y in coords(), z in coords()) {
        let alg = fixture::algebra();
        let (x, y, z) = (alg.from_i64(x), alg.from_i64(y), alg.from_i64(z));
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    #[test]
    fn conjugation_reverses_products(x in coords(), y in coords()) {
        let alg = fixture::algebra();
        let (x, y) = (alg.from_i64(x), alg.from_i64(y));
        prop_assert_eq!(alg.conj(&alg.mul(&x, &y)), alg.mul(&alg.conj(&y), &alg.conj(&x)));
        prop_assert_eq!(alg.conj(&alg.conj(&x)), x.clone());
        prop_assert_eq!(alg.conj(&alg.add(&x, &y)), alg.add(&alg.conj(&x), &alg.conj(&y)));
    }

    #[test]
    fn norm_is_multiplicative(x in coords(), y in coords()) {
        let alg = fixture::algebra();
        let (x, y) = (alg.from_i64(x), alg.from_i64(y));
        prop_assert_eq!(alg.norm(&alg.mul(&x, &y)), alg.norm(&x) * alg.norm(&y));
        prop_assert!(!alg.norm(&x).is_negative());
    }

    #[test]
    fn lattice_invariants_under_basis_change(ops in unimodular()) {
        let alg = fixture::algebra();
        let r1 = fixture::r1();
        let mut basis: Vec<_> = r1.lattice().basis().to_vec();
        for (i, j, k) in ops {
            if i == j { continue; }
            let add: Vec<Rational> = basis[j].iter().map(|c| c * &Rational::from(k)).collect();
            for (t, a) in basis[i].iter_mut().zip(add) {
                *t += &a;
            }
        }
        let l = Lattice::new(alg, basis).unwrap();
        prop_assert_eq!(l.gram().det(), r1.gram().det());
        prop_assert_eq!(l.canonical(), r1.lattice().canonical());
        let m = Rational::from(6);
        prop_assert_eq!(short_vectors(l.gram(), &m).unwrap().len(), short_vectors(r1.gram(), &m).unwrap().len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ideal_equivalence_is_an_equivalence(a in nonzero_coords(), b in nonzero_coords()) {
        let alg = fixture::algebra();
        let bases = [fixture::r1().lattice().clone(), fixture::i12()];
        let mut pool = Vec::new();
        for l in &bases {
            pool.push(QuatIdeal::new(l.clone()).unwrap());
            for x in [a, b] {
                let xl = l.left_mul(alg.from_i64(x).coords()).unwrap();
                pool.push(QuatIdeal::new(xl).unwrap());
            }
        }
        let n = pool.len();
        let eq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| ideal_equivalent(&pool[i], &pool[j]).unwrap()).collect())
            .collect();
        for i in 0..n {
            prop_assert!(eq[i][i]);
            for j in 0..n {
                prop_assert_eq!(eq[i][j], eq[j][i]);
                for k in 0..n {
                    prop_assert!(!(eq[i][j] && eq[j][k]) || eq[i][k]);
                }
                // ideals built from the same base lattice are equivalent
                prop_assert_eq!(eq[i][j], i / 3 == j / 3);
            }
        }
    }
}
