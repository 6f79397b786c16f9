//! The Hecke operator `T(p)` on degree-2 Fourier expansions at good primes.

use rayon::prelude::*;

use super::forms::{reduced_forms, BinaryForm, FourierExpansionSiegel2};
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// A coset representative `[[A, B], [0, D]]` of `Γ·diag(1, 1, p, p)·Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeCosetRep {
    pub a: Matrix,
    pub b: Matrix,
    pub d: Matrix,
}

impl HeckeCosetRep {
    /// `X = B·D⁻¹`, symmetric with entries in `(1/p)ℤ`.
    pub fn x(&self) -> Matrix {
        &self.b * &self.d.inverse().expect("invertible")
    }
}

/// The blocks `D` of the three families, in order:
/// `p·1`, `1`, then the `p + 1` Hermite forms of determinant `p`.
pub fn hecke_d_blocks(p: i64) -> Vec<Matrix> {
    let mut out = vec![Matrix::from_i64(&[&[p, 0], &[0, p]]), Matrix::identity(2)];
    for j in 0..p {
        out.push(Matrix::from_i64(&[&[1, j], &[0, p]]));
    }
    out.push(Matrix::from_i64(&[&[p, 0], &[0, 1]]));
    out
}

/// Symmetric `X` modulo `Sym₂(ℤ)` with entries in `(1/p)ℤ` and `X·D`
/// integral.
fn admissible_x(p: i64, d: &Matrix) -> Vec<Matrix> {
    let mut out = Vec::new();
    for x11 in 0..p {
        for x12 in 0..p {
            for x22 in 0..p {
                let x = Matrix::from_rows(vec![
                    vec![Rational::new(x11, p), Rational::new(x12, p)],
                    vec![Rational::new(x12, p), Rational::new(x22, p)],
                ]);
                let xd = &x * d;
                if xd.row_vecs().iter().flatten().all(Rational::is_integer) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// All `p³ + p² + p + 1` representatives, with `A = p·D⁻ᵗ` and `B = X·D`.
pub fn hecke_cosets(p: u64) -> Result<Vec<HeckeCosetRep>> {
    if !is_prime(p) {
        return Err(Error::Usage(format!("{p} is not prime")));
    }
    let p = p as i64;
    let mut out = Vec::new();
    for d in hecke_d_blocks(p) {
        let a = d.inverse().expect("invertible").transpose().scale(&Rational::from(p));
        for x in admissible_x(p, &d) {
            out.push(HeckeCosetRep {
                a: a.clone(),
                b: &x * &d,
                d: d.clone(),
            });
        }
    }
    Ok(out)
}

/// `Σ_X e(tr(T·X))` over a complete set of admissible `X`. The terms form a
/// character of a finite group, so the sum is the group order or 0.
fn character_sum(t: &Matrix, xs: &[Matrix]) -> Result<i64> {
    let mut vals: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let v = (t * x).trace();
            let f = Rational::from_integer(v.floor());
            v - f
        })
        .collect();
    if vals.iter().all(Rational::is_zero) {
        return Ok(xs.len() as i64);
    }
    vals.sort();
    let mut distinct = vals.clone();
    distinct.dedup();
    let counts: Vec<usize> = distinct
        .iter()
        .map(|d| vals.iter().filter(|v| *v == d).count())
        .collect();
    let closed = distinct.iter().all(|u| {
        distinct.iter().all(|w| {
            let s = u + w;
            let s = &s - &Rational::from_integer(s.floor());
            distinct.contains(&s)
        })
    });
    if closed && counts.iter().all(|&c| c == counts[0]) {
        Ok(0)
    } else {
        Err(Error::Cyclotomic(format!("values {distinct:?} do not form a subgroup")))
    }
}

fn form_matrix(s: &BinaryForm) -> Matrix {
    let h = Rational::new(s.b, 2);
    Matrix::from_rows(vec![vec![Rational::from(s.a), h.clone()], vec![h, Rational::from(s.c)]])
}

/// The half-integral form with matrix `m`, if it is one.
fn as_form(m: &Matrix) -> Option<BinaryForm> {
    let a = m[(0, 0)].to_i64()?;
    let c = m[(1, 1)].to_i64()?;
    let b = (&m[(0, 1)] * &Rational::from(2)).to_i64()?;
    Some(BinaryForm::new(a, b, c))
}

/// `(T(p)F)` with `a'(S) = p^{2k−3} Σ_{D,X} det(D)^{−k} e(tr(TX)) a(T)`,
/// `T = D·S·Dᵗ/p`. The `D = p·1` family contributes exactly `a(pS)`. The
/// result is valid up to `bound/p²`.
pub fn hecke_tp(f: &FourierExpansionSiegel2, p: u64) -> Result<FourierExpansionSiegel2> {
    if !is_prime(p) {
        return Err(Error::Usage(format!("{p} is not prime")));
    }
    if f.level.is_multiple_of(p) {
        return Err(Error::Usage(format!("{p} divides the level {}", f.level)));
    }
    let pi = p as i64;
    let k = f.weight as i32;
    let out_bound = f.bound / (pi * pi);
    if out_bound < 0 {
        return Err(Error::Truncation {
            a: 0,
            b: 0,
            c: 0,
            bound: f.bound,
        });
    }
    let pr = Rational::from(pi);
    let families: Vec<(Matrix, Rational, Vec<Matrix>)> = hecke_d_blocks(pi)
        .into_iter()
        .map(|d| {
            let w = d.det().pow(-k);
            let xs = admissible_x(pi, &d);
            (d, w, xs)
        })
        .collect();
    let norm = pr.pow(2 * k - 3);
    let forms = reduced_forms(out_bound);
    let values: Vec<(BinaryForm, Rational)> = forms
        .par_iter()
        .map(|s| {
            let sm = form_matrix(s);
            let mut acc = Rational::zero();
            for (d, w, xs) in &families {
                let t = (&(d * &sm) * &d.transpose()).scale(&pr.recip());
                let Some(tf) = as_form(&t) else { continue };
                let coeff = f.get(tf)?;
                if coeff.is_zero() {
                    continue;
                }
                let chi = character_sum(&t, xs)?;
                if chi != 0 {
                    acc += &(w * &coeff * Rational::from(chi));
                }
            }
            Ok((*s, acc * &norm))
        })
        .collect::<Result<_>>()?;
    FourierExpansionSiegel2::from_values(f.weight, f.level, out_bound, values)
}

/// The `λ` with `G = λ·F` on every coefficient `G` covers.
pub fn eigenvalue_extract(f: &FourierExpansionSiegel2, g: &FourierExpansionSiegel2) -> Result<Rational> {
    if g.bound > f.bound {
        return Err(Error::Usage("image covers more than the source".into()));
    }
    let forms = reduced_forms(g.bound);
    let mut lambda: Option<Rational> = None;
    for t in &forms {
        let a = f.get(*t)?;
        if a.is_zero() {
            continue;
        }
        lambda = Some(g.get(*t)? / a);
        break;
    }
    let lambda = lambda.ok_or(Error::Indeterminate)?;
    for t in &forms {
        if g.get(*t)? != &f.get(*t)? * &lambda {
            return Err(Error::NotEigenform(format!("ratio fails at {t}")));
        }
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_counts() {
        assert_eq!(hecke_cosets(2).unwrap().len(), 15);
        assert_eq!(hecke_cosets(3).unwrap().len(), 40);
        for r in hecke_cosets(3).unwrap() {
            let ad = &r.a * &r.d.transpose();
            assert_eq!(ad, Matrix::identity(2).scale(&Rational::from(3)));
            assert!((&r.a * &r.b.transpose()).is_symmetric());
            assert!((&r.d.transpose() * &r.b).is_symmetric());
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let f = FourierExpansionSiegel2::new(3, 17, 40);
        let g = hecke_tp(&f, 2).unwrap();
        assert!(g.is_zero());
        assert_eq!(g.bound, 10);
    }
}
