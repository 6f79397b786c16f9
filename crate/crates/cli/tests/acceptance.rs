//! Acceptance suite for the level-17 example: one line per criterion.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use yoshida_core::brandt::{atkin_lehner, brandt_matrix, inner_product, AutomorphicForm};
use yoshida_core::fixture;
use yoshida_core::harmonic::{algebra_laplacian, harm_basis, lift_poly_deg2, mixed_laplacian, Frame, HarmonicPoly};
use yoshida_core::quat::algebra::basis_coords;
use yoshida_core::siegel::lfunc::rankin_selberg_series_check;
use yoshida_core::siegel::*;
use yoshida_core::upoly::UPoly;
use yoshida_core::yoshida::{is_cuspidal, lift_from_polynomials, theta1_series, yoshida1, IntGram};
use yoshida_core::{Error, Rational};

const LAMBDA_TOL: f64 = 1e-12;
const FIXTURE_BUDGET: Duration = Duration::from_secs(30);
const EICHLER_BUDGET: Duration = Duration::from_secs(60);
const LIFT_BUDGET: Duration = Duration::from_secs(60);
const HECKE_BUDGET: Duration = Duration::from_secs(300);
const HECKE_INPUT_BOUND: i64 = 900;
const CUSP_BOUND: i64 = 100;
const PRIMES: [u64; 3] = [2, 3, 5];
const THREAD_COUNTS: [&str; 2] = ["1", "4"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    check(t <= budget, format!("took {t:.1?}, budget {budget:?}"))?;
    Ok(t)
}

fn fixture_arithmetic() -> Outcome {
    let start = Instant::now();
    let g = fixture::golden();
    let cs = fixture::class_set();
    check(cs.len() == 2, format!("class number {}", cs.len()))?;
    let t = cs.type_number().map_err(err)?;
    check(t == 2, format!("type number {t}"))?;
    let mut units = cs.unit_counts();
    units.sort();
    check(units == vec![2, 6], format!("unit counts {units:?}"))?;
    let dets = [
        fixture::r1().gram().det(),
        fixture::r2().gram().det(),
        fixture::i12().gram().det(),
    ];
    check(
        dets.iter().all(|d| *d == Rational::from(289)),
        format!("gram determinants {dets:?}"),
    )?;
    let as_int = |m: &yoshida_core::linalg::Matrix| -> Vec<Vec<i64>> {
        m.row_vecs()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().unwrap_or(i64::MIN)).collect())
            .collect()
    };
    check(
        as_int(fixture::r1().gram()) == g.gram.r1
            && as_int(fixture::r2().gram()) == g.gram.r2
            && as_int(fixture::i12().gram()) == g.gram.i12,
        "stored gram matrices disagree",
    )?;
    let alg = fixture::algebra();
    let f = |k| alg.element(basis_coords(k));
    check(alg.trace(&f(1)) == Rational::one(), "tr(f1)")?;
    let norms: Vec<Rational> = (1..4).map(|k| alg.norm(&f(k))).collect();
    check(
        norms == [2, 3, 5].map(Rational::from).to_vec(),
        format!("norms {norms:?}"),
    )?;
    let a1 = fixture::r1().gram().clone();
    check(
        (1..4).all(|k| a1[(k, k)] == &norms[k - 1] * &Rational::from(2)),
        "gram diagonal does not match the norms",
    )?;
    let t = within(start, FIXTURE_BUDGET)?;
    Ok(format!("h = t = 2, units {{2, 6}}, dets 289, norms 2 3 5 ({t:.1?})"))
}

fn eichler_side() -> Outcome {
    let start = Instant::now();
    let g = fixture::golden();
    let cs = fixture::class_set();
    let frame = Frame::trace_zero(fixture::algebra());
    let hs0 = harm_basis(0, &frame);
    let hs1 = harm_basis(1, &frame);
    let one = AutomorphicForm::constant(cs.len());
    let phi2 = AutomorphicForm::from_polys(&hs0, &g.phi2.values).map_err(err)?;
    let phi1 = AutomorphicForm::from_polys(&hs1, &g.phi1.values).map_err(err)?;
    check(
        inner_product(&cs, &hs0, &phi2, &one).map_err(err)?.is_zero(),
        "<phi2, 1> != 0",
    )?;
    check(
        inner_product(&cs, &hs0, &phi2, &phi2).map_err(err)? == Rational::from(2),
        "<phi2, phi2> != 2",
    )?;
    let mut evs = Vec::new();
    for p in PRIMES {
        let b0 = brandt_matrix(&cs, &hs0, p).map_err(err)?;
        let full = b0.full();
        for r in 0..full.rows() {
            let s: Rational = full.row(r).iter().cloned().sum();
            check(s == Rational::from(p as i64 + 1), format!("row sum {s} at p = {p}"))?;
        }
        let b1 = brandt_matrix(&cs, &hs1, p).map_err(err)?;
        let a = phi1
            .ratio_to(&b1.apply(&phi1))
            .ok_or(format!("phi1 not an eigenform at {p}"))?;
        let b = phi2
            .ratio_to(&b0.apply(&phi2))
            .ok_or(format!("phi2 not an eigenform at {p}"))?;
        evs.push(format!("{a}/{b}"));
    }
    let w1 = phi1.ratio_to(&atkin_lehner(&cs, &hs1, &phi1, 17).map_err(err)?);
    let w2 = phi2.ratio_to(&atkin_lehner(&cs, &hs0, &phi2, 17).map_err(err)?);
    check(
        w1.is_some() && w1 == w2,
        format!("involution eigenvalues {w1:?} {w2:?}"),
    )?;
    let t = within(start, EICHLER_BUDGET)?;
    Ok(format!(
        "eigenvalues phi1/phi2 {} , w17 = {} ({t:.1?})",
        evs.join(" "),
        w1.unwrap()
    ))
}

fn golden_lift(bound: i64) -> Result<FourierExpansionSiegel2, String> {
    let g = fixture::golden();
    let parts = vec![
        (IntGram::new(fixture::r1().gram()).map_err(err)?, g.p1.clone()),
        (IntGram::new(fixture::i12().gram()).map_err(err)?, g.p12.clone()),
    ];
    lift_from_polynomials(&parts, g.weight, g.level, bound).map_err(err)
}

fn lift_golden() -> Outcome {
    let start = Instant::now();
    let g = fixture::golden();
    let f = golden_lift(120)?;
    let mut matched = 0;
    for (a, b, c, v) in &g.coefficients {
        let got = f.get(BinaryForm::new(*a, *b, *c)).map_err(err)?;
        check(&got == v, format!("a([{a}, {b}, {c}]) = {got}, expected {v}"))?;
        matched += 1;
    }
    for (t, v) in [((5, 2, 6), -32), ((4, 2, 6), -96), ((4, 1, 6), 32), ((2, 1, 3), 32)] {
        let got = f.get(BinaryForm::new(t.0, t.1, t.2)).map_err(err)?;
        check(got == Rational::from(v), format!("a({t:?}) = {got}"))?;
    }
    let small = f.truncate(CUSP_BOUND);
    check(is_cuspidal(&small).map_err(err)?, "not cuspidal")?;
    for t in reduced_forms(CUSP_BOUND) {
        if t.is_singular() || t.is_ambiguous() {
            check(small.get(t).map_err(err)?.is_zero(), format!("a({t}) != 0"))?;
        }
    }
    let t = within(start, LIFT_BUDGET)?;
    Ok(format!(
        "{matched}/{} coefficients, cuspidal to {CUSP_BOUND} ({t:.1?})",
        g.coefficients.len()
    ))
}

fn hecke_golden() -> Outcome {
    let start = Instant::now();
    let g = fixture::golden();
    let f = golden_lift(HECKE_INPUT_BOUND)?;
    let mut out = Vec::new();
    for p in PRIMES {
        let h = hecke_tp(&f, p).map_err(err)?;
        let l = eigenvalue_extract(&f, &h).map_err(|e| format!("p = {p}: {e}"))?;
        check(Some(&l) == g.hecke_eigenvalues.get(&p), format!("lambda({p}) = {l}"))?;
        out.push(l.to_string());
    }
    let a = hecke_tp(&hecke_tp(&f, 2).map_err(err)?, 3).map_err(err)?;
    let b = hecke_tp(&hecke_tp(&f, 3).map_err(err)?, 2).map_err(err)?;
    let bound = a.bound.min(b.bound);
    check(a.truncate(bound) == b.truncate(bound), "T(2)T(3) != T(3)T(2)")?;
    let t = within(start, HECKE_BUDGET)?;
    Ok(format!(
        "eigenvalues ({}), T(2)T(3) = T(3)T(2) up to {bound} ({t:.1?})",
        out.join(", ")
    ))
}

/// `(p, a_f(p), a_g(p))` read off the Brandt matrices acting on φ₁, φ₂.
fn newform_eigenvalues() -> Result<Vec<(u64, i64, i64)>, String> {
    let g = fixture::golden();
    let cs = fixture::class_set();
    let frame = Frame::trace_zero(fixture::algebra());
    let (hs0, hs1) = (harm_basis(0, &frame), harm_basis(1, &frame));
    let phi1 = AutomorphicForm::from_polys(&hs1, &g.phi1.values).map_err(err)?;
    let phi2 = AutomorphicForm::from_polys(&hs0, &g.phi2.values).map_err(err)?;
    PRIMES
        .iter()
        .map(|&p| {
            let a = phi1.ratio_to(&brandt_matrix(&cs, &hs1, p).map_err(err)?.apply(&phi1));
            let b = phi2.ratio_to(&brandt_matrix(&cs, &hs0, p).map_err(err)?.apply(&phi2));
            match (a.and_then(|x| x.to_i64()), b.and_then(|x| x.to_i64())) {
                (Some(a), Some(b)) => Ok((p, a, b)),
                _ => Err(format!("no integral eigenvalue at {p}")),
            }
        })
        .collect()
}

fn l_function_layer() -> Outcome {
    for (p, af, ag) in newform_eigenvalues()? {
        let beta = SatakePair::new(p, 4, Rational::from(af));
        let beta_t = SatakePair::new(p, 2, Rational::from(ag));
        let rs = shift_rankin_selberg(&rankin_selberg_local(af, ag, 4, 2, p), 4, 2).map_err(err)?;
        for n in [2, 3] {
            let d = standard_l_local(&beta, &beta_t, n, p).map_err(err)?;
            let z = zeta_factor(n, p).map_err(err)?;
            check(
                d.poly == z.poly.mul(&rs.poly),
                format!("factorization fails at p = {p}, n = {n}"),
            )?;
        }
        let series = rankin_selberg_series_check(af, ag, 4, 2, p, 6);
        check(
            series == UPoly::from_i64(&[1, 0, -(p as i64).pow(4)]),
            format!("recursion fails at p = {p}: {series}"),
        )?;
        let v = rs.eval(1.0);
        check(
            v.is_finite() && v != 0.0,
            format!("Rankin-Selberg value vanishes at p = {p}"),
        )?;
    }
    match lambda_n(&[17], 3, 1.0, None) {
        Err(Error::Pole { p: 17, j: 3 }) => {}
        other => return Err(format!("expected a pole, got {other:?}")),
    }
    let v = lambda_n(&[17], 2, 1.0, None).map_err(err)?;
    let expected = 1.0 / ((1.0 - 17f64.powi(-2)) * (1.0 - 17f64.powi(-1)));
    check(
        (v - expected).abs() <= LAMBDA_TOL,
        format!("lambda_17 = {v}, expected {expected}"),
    )?;
    Ok(format!(
        "identity at 2 3 5, recursion to X^6, pole at j = 3, |dLambda| <= {LAMBDA_TOL:e}"
    ))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let alg = fixture::algebra();
    let sample: Vec<[i64; 4]> = (0..12)
        .map(|k: i64| [k % 5 - 2, (3 * k) % 7 - 3, (5 * k + 1) % 4 - 1, (k * k) % 5 - 2])
        .collect();
    for x in &sample {
        for y in &sample {
            let (x, y) = (alg.from_i64(*x), alg.from_i64(*y));
            let z = alg.from_i64([1, -1, 2, 0]);
            check(
                alg.mul(&alg.mul(&x, &y), &z) == alg.mul(&x, &alg.mul(&y, &z)),
                "associativity",
            )?;
            check(
                alg.conj(&alg.mul(&x, &y)) == alg.mul(&alg.conj(&y), &alg.conj(&x)),
                "anti-automorphism",
            )?;
            check(
                alg.norm(&alg.mul(&x, &y)) == alg.norm(&x) * alg.norm(&y),
                "norm multiplicativity",
            )?;
        }
    }
    let frame = Frame::trace_zero(alg.clone());
    for nu in 0..=3 {
        let hs = harm_basis(nu, &frame);
        for b in &hs.basis {
            let v = HarmonicPoly::new(&frame, nu, b.clone()).map_err(err)?;
            let p = lift_poly_deg2(&frame, &v);
            check(
                algebra_laplacian(&alg, &p, 0).is_zero()
                    && algebra_laplacian(&alg, &p, 4).is_zero()
                    && mixed_laplacian(&alg, &p).is_zero(),
                format!("lift polynomial of degree {nu} is not pluriharmonic"),
            )?;
        }
        for u in fixture::r2().units() {
            let t = hs.tau(&alg.element(u)).map_err(err)?;
            check(
                &(&t.transpose() * &hs.pairing) * &t == hs.pairing,
                "pairing not invariant under R2 units",
            )?;
        }
    }
    let t1 = theta1_series(&IntGram::new(fixture::r1().gram()).map_err(err)?, 20).map_err(err)?;
    let t2 = theta1_series(&IntGram::new(fixture::r2().gram()).map_err(err)?, 20).map_err(err)?;
    let m = (1..=20)
        .find(|&m| t1[m] != t2[m])
        .ok_or("theta series of R1 and R2 agree to 20")?;
    let cs = fixture::class_set();
    let hs0 = harm_basis(0, &frame);
    let phi2 = AutomorphicForm::from_polys(&hs0, &fixture::golden().phi2.values).map_err(err)?;
    let y = yoshida1(&cs, &hs0, &AutomorphicForm::constant(cs.len()), &phi2, 40).map_err(err)?;
    check(y.is_zero(), "Y1(1, phi2) does not vanish")?;
    let t = start.elapsed();
    Ok(format!(
        "algebra, pluriharmonicity, R2 invariance, theta differs at m = {m}, Y1 = 0 ({t:.1?})"
    ))
}

fn run_cli(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_yoshida"))
        .arg("--threads")
        .arg(threads)
        .args(args)
        .output()
        .map_err(err)?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/n17")
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let lift = dir.path().join("lift.json");
    let lift_s = lift.to_str().ok_or("path")?;
    let fx = fixture_dir();
    let alg = fx.join("algebra.json");
    let order = fx.join("r1.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["classset", "--fixture", "n17"],
        vec![
            "classset",
            "--algebra",
            alg.to_str().ok_or("path")?,
            "--order",
            order.to_str().ok_or("path")?,
        ],
        vec!["brandt", "--fixture", "n17", "--p", "3", "--nu", "1"],
        vec!["eigenforms", "--fixture", "n17", "--nu", "1"],
        vec!["lift", "--fixture", "n17", "--bound", "100"],
        vec!["lift", "--fixture", "n17", "--bound", "60", "--from-forms"],
        vec!["lfactor", "--p", "5", "--af", "6", "--ag", "-2", "--level", "17"],
        vec!["verify-example"],
    ];
    for cmd in &commands {
        let a = run_cli(cmd, THREAD_COUNTS[0])?;
        let b = run_cli(cmd, THREAD_COUNTS[1])?;
        check(a == b, format!("{cmd:?} differs across thread counts"))?;
    }
    let mut files = Vec::new();
    for threads in THREAD_COUNTS {
        run_cli(
            &["lift", "--fixture", "n17", "--bound", "400", "--out", lift_s],
            threads,
        )?;
        let h = dir.path().join(format!("hecke{threads}.json"));
        run_cli(
            &[
                "hecke",
                "--input",
                lift_s,
                "--p",
                "2",
                "--out",
                h.to_str().ok_or("path")?,
            ],
            threads,
        )?;
        files.push((std::fs::read(&lift).map_err(err)?, std::fs::read(&h).map_err(err)?));
    }
    check(files[0] == files[1], "lift or hecke files differ across thread counts")?;
    Ok(format!(
        "{} commands byte-identical with {:?} threads",
        commands.len() + 2,
        THREAD_COUNTS
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 fixture arithmetic", fixture_arithmetic),
        ("2 eichler side", eichler_side),
        ("3 lift golden test", lift_golden),
        ("4 hecke golden test", hecke_golden),
        ("5 l-function layer", l_function_layer),
        ("6 property suites", property_suites),
        ("7 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name:<22} {detail}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name:<22} {e}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
