use yoshida_core::siegel::lfunc::{prime_power_coefficients, rankin_selberg_series_check};
use yoshida_core::siegel::*;
use yoshida_core::upoly::UPoly;
use yoshida_core::{Error, Rational};

const AF: [(u64, i64, i64); 3] = [(2, -3, -1), (3, -8, 0), (5, 6, -2)];

#[test]
fn reduction_is_canonical() {
    let forms = reduced_forms(60);
    for t in &forms {
        assert!(t.is_reduced(), "{t}");
        for u in [[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]], [[1, 0], [-3, 1]]] {
            let (r, det) = reduce_form(t.transform(u)).unwrap();
            assert_eq!(r, *t);
            assert_eq!(det.abs(), 1);
        }
    }
    assert!(reduce_form(BinaryForm::new(1, 3, 1)).is_err());
}

#[test]
fn singular_forms_reduce_to_one_column() {
    let (r, _) = reduce_form(BinaryForm::new(4, 4, 1)).unwrap();
    assert_eq!(r, BinaryForm::new(0, 0, 1));
    let (r, _) = reduce_form(BinaryForm::new(5, 10, 5)).unwrap();
    assert_eq!(r, BinaryForm::new(0, 0, 5));
}

#[test]
fn odd_weight_rejects_ambiguous_values() {
    let mut f = FourierExpansionSiegel2::new(3, 17, 40);
    assert!(f.set(BinaryForm::new(2, 0, 3), Rational::one()).is_err());
    assert!(f.set(BinaryForm::new(2, 2, 3), Rational::one()).is_err());
    f.set(BinaryForm::new(2, 1, 3), Rational::from(5)).unwrap();
    assert_eq!(f.get(BinaryForm::new(2, -1, 3)).unwrap(), Rational::from(-5));
    assert_eq!(f.get(BinaryForm::new(3, 1, 2)).unwrap(), Rational::from(-5));
    assert!(matches!(
        f.set(BinaryForm::new(5, 2, 6), Rational::one()),
        Err(Error::Truncation { .. })
    ));
}

#[test]
fn expansion_document_roundtrip() {
    let mut f = FourierExpansionSiegel2::new(3, 17, 40);
    f.set(BinaryForm::new(2, 1, 3), Rational::from(32)).unwrap();
    f.set(BinaryForm::new(2, 1, 4), Rational::new(-7, 2)).unwrap();
    let doc = f.to_doc();
    assert_eq!(FourierExpansionSiegel2::from_doc(&doc).unwrap(), f);
}

#[test]
fn coset_counts() {
    for p in [2u64, 3, 5] {
        assert_eq!(hecke_cosets(p).unwrap().len() as u64, p * p * p + p * p + p + 1);
    }
    assert!(hecke_cosets(9).is_err());
}

#[test]
fn hecke_refuses_level_primes() {
    let f = FourierExpansionSiegel2::new(3, 17, 400);
    assert!(hecke_tp(&f, 17).is_err());
}

#[test]
fn factorization_identity() {
    for (p, af, ag) in AF {
        let beta = SatakePair::new(p, 4, Rational::from(af));
        let beta_t = SatakePair::new(p, 2, Rational::from(ag));
        for n in 2..=4 {
            let d = standard_l_local(&beta, &beta_t, n, p).unwrap();
            let rs = shift_rankin_selberg(&rankin_selberg_local(af, ag, 4, 2, p), 4, 2).unwrap();
            let z = zeta_factor(n, p).unwrap();
            assert_eq!(d.poly, z.poly.mul(&rs.poly), "p = {p}, n = {n}");
            assert_eq!(d.degree(), 2 * n as usize + 1);
        }
    }
}

#[test]
fn rankin_selberg_recursion() {
    for (p, af, ag) in AF {
        let check = rankin_selberg_series_check(af, ag, 4, 2, p, 6);
        let pw = (p as i64).pow(4);
        assert_eq!(check, UPoly::from_i64(&[1, 0, -pw]), "p = {p}");
    }
    assert_eq!(
        prime_power_coefficients(-1, 2, 2, 3),
        vec![
            Rational::one(),
            Rational::from(-1),
            Rational::from(-1),
            Rational::from(3)
        ]
    );
}

#[test]
fn rankin_selberg_value_is_nonzero() {
    for (p, af, ag) in AF {
        let rs = shift_rankin_selberg(&rankin_selberg_local(af, ag, 4, 2, p), 4, 2).unwrap();
        for s in [1.0, 1.5, 2.0] {
            let v = rs.eval(s);
            assert!(v.is_finite() && v > 0.0, "p = {p}, s = {s}");
        }
    }
}

#[test]
fn bad_prime_factor() {
    match lambda_n(&[17], 3, 1.0, None) {
        Err(Error::Pole { p, j }) => assert_eq!((p, j), (17, 3)),
        other => panic!("expected a pole, got {other:?}"),
    }
    let v = lambda_n(&[17], 2, 1.0, None).unwrap();
    let expected = 1.0 / (1.0 - 17f64.powi(-2)) / (1.0 - 17f64.powi(-1));
    assert!((v - expected).abs() < 1e-12);
    let ne = NonEssential {
        p: 17,
        epsilon: 1,
        alpha_sum: 0.5,
    };
    let w = lambda_n(&[17], 2, 1.0, Some(&ne)).unwrap();
    let y = 17f64.powf(-1.5);
    assert!((w - 1.0 / (1.0 + 0.5 * y + y * y)).abs() < 1e-12);
}

#[test]
fn satake_normalization() {
    let b = SatakePair::new(5, 4, Rational::from(6));
    assert_eq!(b.sum_squared(), Rational::new(36, 125));
    assert!((b.sum_f64() - 6.0 / 125f64.sqrt()).abs() < 1e-15);
}
