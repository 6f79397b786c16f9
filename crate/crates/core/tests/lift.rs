use std::sync::OnceLock;

use yoshida_core::brandt::AutomorphicForm;
use yoshida_core::fixture;
use yoshida_core::harmonic::{harm_basis, Frame, HarmSpace};
use yoshida_core::siegel::*;
use yoshida_core::yoshida::*;
use yoshida_core::Rational;

fn golden_parts() -> Vec<(IntGram, yoshida_core::poly::Poly)> {
    let g = fixture::golden();
    vec![
        (IntGram::new(fixture::r1().gram()).unwrap(), g.p1.clone()),
        (IntGram::new(fixture::i12().gram()).unwrap(), g.p12.clone()),
    ]
}

fn golden_lift(bound: i64) -> FourierExpansionSiegel2 {
    lift_from_polynomials(&golden_parts(), 3, 17, bound).unwrap()
}

fn large_lift() -> &'static FourierExpansionSiegel2 {
    static F: OnceLock<FourierExpansionSiegel2> = OnceLock::new();
    F.get_or_init(|| golden_lift(400))
}

fn spaces() -> (HarmSpace, HarmSpace) {
    let frame = Frame::trace_zero(fixture::algebra());
    (harm_basis(0, &frame), harm_basis(1, &frame))
}

fn forms() -> (AutomorphicForm, AutomorphicForm) {
    let g = fixture::golden();
    let (hs0, hs1) = spaces();
    (
        AutomorphicForm::from_polys(&hs1, &g.phi1.values).unwrap(),
        AutomorphicForm::from_polys(&hs0, &g.phi2.values).unwrap(),
    )
}

#[test]
fn printed_coefficients() {
    let f = golden_lift(120);
    for (a, b, c, v) in &fixture::golden().coefficients {
        assert_eq!(&f.get(BinaryForm::new(*a, *b, *c)).unwrap(), v, "[{a}, {b}, {c}]");
    }
}

#[test]
fn printed_box_has_no_other_nonzero_coefficients() {
    let g = fixture::golden();
    let f = golden_lift(120);
    for (t, v) in f.entries() {
        if t.a <= g.display_box.a_max && t.c <= g.display_box.c_max && !v.is_zero() {
            assert!(
                g.coefficients
                    .iter()
                    .any(|(a, b, c, _)| (*a, *b, *c) == (t.a, t.b, t.c)),
                "{t} = {v} is not printed"
            );
        }
    }
}

#[test]
fn constructed_lift_is_proportional() {
    let cs = fixture::class_set();
    let (_, hs1) = spaces();
    let (phi1, phi2) = forms();
    let y = yoshida2(&cs, &hs1, &phi1, &phi2, 120).unwrap();
    assert_eq!(y.scale(&Rational::from(8)), golden_lift(120));
}

#[test]
fn lift_is_linear_in_second_form() {
    let cs = fixture::class_set();
    let (_, hs1) = spaces();
    let (phi1, phi2) = forms();
    let one = AutomorphicForm::constant(2);
    let a = yoshida2(&cs, &hs1, &phi1, &phi2, 60).unwrap();
    let b = yoshida2(&cs, &hs1, &phi1, &one, 60).unwrap();
    let c = yoshida2(&cs, &hs1, &phi1, &phi2.scale(&Rational::from(3)).add(&one), 60).unwrap();
    assert_eq!(a.scale(&Rational::from(3)).add(&b).unwrap(), c);
}

#[test]
fn cuspidal_with_vanishing_ambiguous_coefficients() {
    let f = golden_lift(100);
    assert!(is_cuspidal(&f).unwrap());
    for t in reduced_forms(100) {
        if t.is_singular() || t.is_ambiguous() {
            assert!(f.get(t).unwrap().is_zero(), "{t}");
        }
    }
}

#[test]
fn odd_weight_symmetry() {
    let g = fixture::golden();
    let p = &g.p1;
    let gram = IntGram::new(fixture::r1().gram()).unwrap();
    let t = BinaryForm::new(4, 1, 6);
    let a = theta2_coefficient(&gram, p, t).unwrap();
    // [4, −1, 6] = [4, 1, 6] under diag(1, −1)
    let b = theta2_coefficient(&gram, p, BinaryForm::new(4, -1, 6)).unwrap();
    assert_eq!(a, -b.clone());
    let u = t.transform([[1, 1], [0, 1]]);
    assert_eq!(theta2_coefficient(&gram, p, u).unwrap(), a);
    let f = golden_lift(120);
    assert_eq!(f.get(BinaryForm::new(4, -1, 6)).unwrap(), -f.get(t).unwrap());
}

#[test]
fn weight_two_lift_has_nonzero_phi_image() {
    let cs = fixture::class_set();
    let (hs0, _) = spaces();
    let one = AutomorphicForm::constant(2);
    let y = yoshida2(&cs, &hs0, &one, &one, 40).unwrap();
    let phi = phi_operator(&y).unwrap();
    assert!(!phi.is_zero());
    assert!(!is_cuspidal(&y).unwrap());
}

#[test]
fn theta_series_of_the_two_orders_differ() {
    let t1 = theta1_series(&IntGram::new(fixture::r1().gram()).unwrap(), 20).unwrap();
    let t2 = theta1_series(&IntGram::new(fixture::r2().gram()).unwrap(), 20).unwrap();
    assert_eq!(t1[0], 1);
    assert_eq!(t2[0], 1);
    assert_eq!(t1[1], 2);
    assert_eq!(t2[1], 6);
    assert!((1..=20).any(|m| t1[m] != t2[m]));
}

#[test]
fn hecke_eigenvalues_at_two_and_three() {
    let f = large_lift();
    let g = fixture::golden();
    for p in [2u64, 3] {
        let h = hecke_tp(f, p).unwrap();
        assert_eq!(eigenvalue_extract(f, &h).unwrap(), g.hecke_eigenvalues[&p], "p = {p}");
    }
}

#[test]
fn hecke_operators_commute() {
    let f = large_lift();
    let a = hecke_tp(&hecke_tp(f, 2).unwrap(), 3).unwrap();
    let b = hecke_tp(&hecke_tp(f, 3).unwrap(), 2).unwrap();
    let bound = a.bound.min(b.bound);
    assert!(bound >= 10);
    assert_eq!(a.truncate(bound), b.truncate(bound));
}

#[test]
fn short_expansion_is_indeterminate() {
    let f = large_lift();
    let h = hecke_tp(f, 5).unwrap();
    assert!(matches!(
        eigenvalue_extract(f, &h),
        Err(yoshida_core::Error::Indeterminate)
    ));
}

#[test]
fn truncation_is_enforced() {
    let f = golden_lift(40);
    assert!(f.get(BinaryForm::new(5, 2, 6)).is_err());
}
