//! End-to-end run of the bundled level-17 example.

use anyhow::Result;

use yoshida_core::brandt::{atkin_lehner, brandt_matrix, AutomorphicForm};
use yoshida_core::fixture;
use yoshida_core::harmonic::{harm_basis, Frame};
use yoshida_core::siegel::lfunc::rankin_selberg_series_check;
use yoshida_core::siegel::{eigenvalue_extract, hecke_tp, BinaryForm};
use yoshida_core::upoly::UPoly;
use yoshida_core::yoshida::{is_cuspidal, lift_from_polynomials, yoshida2, IntGram};
use yoshida_core::Rational;

struct Report {
    ok: bool,
}

impl Report {
    fn line(&mut self, name: &str, pass: bool, detail: String) {
        self.ok &= pass;
        println!("{:<4} {name:<34} {detail}", if pass { "ok" } else { "FAIL" });
    }
}

pub fn run(bound: i64) -> Result<bool> {
    let mut r = Report { ok: true };
    let golden = fixture::golden();
    let cs = fixture::class_set();

    let dets: Vec<Rational> = [
        fixture::r1().gram().det(),
        fixture::r2().gram().det(),
        fixture::i12().gram().det(),
    ]
    .into();
    r.line(
        "gram determinants",
        dets.iter().all(|d| *d == Rational::from(289)),
        dets.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
    );
    let units = cs.unit_counts();
    let mass = cs.mass();
    let tn = cs.type_number()?;
    r.line(
        "class set",
        cs.len() == golden.class_number && units == golden.unit_counts && tn == golden.type_number,
        format!("h = {}, units {:?}, mass {mass}, type number {tn}", cs.len(), units),
    );

    let frame = Frame::trace_zero(cs.order().lattice().algebra().clone());
    let hs0 = harm_basis(0, &frame);
    let hs1 = harm_basis(golden.phi1.nu, &frame);
    let phi1 = AutomorphicForm::from_polys(&hs1, &golden.phi1.values)?;
    let phi2 = AutomorphicForm::from_polys(&hs0, &golden.phi2.values)?;
    let mut af = Vec::new();
    let mut ag = Vec::new();
    for p in [2u64, 3, 5] {
        let l1 = brandt_matrix(&cs, &hs1, p)?.apply(&phi1);
        let l2 = brandt_matrix(&cs, &hs0, p)?.apply(&phi2);
        let (a, b) = (phi1.ratio_to(&l1), phi2.ratio_to(&l2));
        r.line(
            &format!("brandt eigenvalues at {p}"),
            a.is_some() && b.is_some(),
            format!("phi1 {}, phi2 {}", show(&a), show(&b)),
        );
        af.push(a.and_then(|x| x.to_i64()).unwrap_or(0));
        ag.push(b.and_then(|x| x.to_i64()).unwrap_or(0));
    }
    let w1 = phi1.ratio_to(&atkin_lehner(&cs, &hs1, &phi1, golden.level)?);
    let w2 = phi2.ratio_to(&atkin_lehner(&cs, &hs0, &phi2, golden.level)?);
    r.line(
        "atkin-lehner signs",
        w1 == w2 && w1.is_some(),
        format!("phi1 {}, phi2 {}", show(&w1), show(&w2)),
    );

    let parts = vec![
        (IntGram::new(fixture::r1().gram())?, golden.p1.clone()),
        (IntGram::new(fixture::i12().gram())?, golden.p12.clone()),
    ];
    let f = lift_from_polynomials(&parts, golden.weight, golden.level, bound)?;
    let mut mismatches = Vec::new();
    for (a, b, c, v) in &golden.coefficients {
        let got = f.get(BinaryForm::new(*a, *b, *c))?;
        if &got != v {
            mismatches.push(format!("[{a}, {b}, {c}] = {got}, expected {v}"));
        }
    }
    r.line(
        "printed coefficients",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{0} of {0} match", golden.coefficients.len())
        } else {
            mismatches.join("; ")
        },
    );
    let theory_bound = bound.min(120);
    let theory = yoshida2(&cs, &hs1, &phi1, &phi2, theory_bound)?;
    let ratio = theory.scale(&Rational::from(8));
    r.line(
        "lift from forms",
        ratio == f.truncate(theory_bound),
        format!("8 * Y(phi1, phi2) equals the printed lift up to {theory_bound}"),
    );
    r.line(
        "cuspidal",
        is_cuspidal(&f)?,
        format!("singular coefficients vanish up to {bound}"),
    );

    for (i, p) in [2u64, 3, 5].into_iter().enumerate() {
        let g = hecke_tp(&f, p)?;
        let lam = eigenvalue_extract(&f, &g);
        let expected = golden.hecke_eigenvalues.get(&p);
        let predicted = Rational::from(af[i] + p as i64 * ag[i]);
        let pass = matches!((&lam, expected), (Ok(l), Some(e)) if l == e && *l == predicted);
        let detail = match &lam {
            Ok(l) => format!("lambda = {l} = {} + {p} * {} (bound {})", af[i], ag[i], g.bound),
            Err(e) => format!("{e}"),
        };
        r.line(&format!("hecke eigenvalue at {p}"), pass, detail);
    }

    for (i, p) in [2u64, 3, 5].into_iter().enumerate() {
        let check = rankin_selberg_series_check(af[i], ag[i], 4, 2, p, 8);
        let expected = UPoly::new(vec![
            Rational::one(),
            Rational::zero(),
            Rational::from(-((p * p * p * p) as i64)),
        ]);
        r.line(
            &format!("rankin-selberg factor at {p}"),
            check == expected,
            format!("{check}"),
        );
    }
    println!(
        "{}",
        if r.ok {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );
    Ok(r.ok)
}

fn show(x: &Option<Rational>) -> String {
    x.as_ref()
        .map_or_else(|| "not an eigenvector".into(), |v| v.to_string())
}
