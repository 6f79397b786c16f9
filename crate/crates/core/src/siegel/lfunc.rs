//! Local Euler factors: the degree-`2n+1` standard factor of a Yoshida lift,
//! the Rankin–Selberg factor of two newforms, and the bad-prime product
//! `Λ_N(s)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::upoly::UPoly;

/// Satake data of a weight-`k` eigenform at `p`: the pair `{β, β⁻¹}` with
/// `β + β⁻¹ = λ/p^{(k−1)/2}`, kept as `(k, λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakePair {
    pub p: u64,
    pub weight: u32,
    pub lambda: Rational,
}

impl SatakePair {
    pub fn new(p: u64, weight: u32, lambda: Rational) -> Self {
        SatakePair { p, weight, lambda }
    }

    /// `(β + β⁻¹)² = λ²/p^{k−1}`.
    pub fn sum_squared(&self) -> Rational {
        &self.lambda * &self.lambda / Rational::from(self.p as i64).pow(self.weight as i32 - 1)
    }

    pub fn sum_f64(&self) -> f64 {
        self.lambda.to_f64() / (self.p as f64).powf((self.weight as f64 - 1.0) / 2.0)
    }
}

/// An inverse local factor: a polynomial in `X = p^{−s}` with constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub p: u64,
    pub poly: UPoly,
}

impl LocalFactor {
    /// `poly(p^{−s})⁻¹`.
    pub fn eval(&self, s: f64) -> f64 {
        1.0 / self.poly.eval_f64((self.p as f64).powf(-s))
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// `1 − e₁X + e₂X² − e₃X³ + e₄X⁴`.
fn quartic(e1: &Rational, e2: &Rational, e3: &Rational, e4: &Rational) -> UPoly {
    UPoly::new(vec![Rational::one(), -e1, e2.clone(), -e3, e4.clone()])
}

/// The inverse standard factor
/// `(1 − X)·∏(1 − β^{±1}β̃^{±1}X)·∏_{j=1}^{n−2}(1 − p^jX)(1 − p^{−j}X)`.
pub fn standard_l_local(beta: &SatakePair, beta_t: &SatakePair, n: u32, p: u64) -> Result<LocalFactor> {
    if beta.p != p || beta_t.p != p {
        return Err(Error::Usage("Satake data at a different prime".into()));
    }
    if !(beta.weight + beta_t.weight).is_multiple_of(2) {
        return Err(Error::Unsupported("weights of different parity".into()));
    }
    let pr = Rational::from(p as i64);
    // e₁ = e₃ = s·s̃ = λλ̃/p^{(k₁+k₂)/2−1}
    let e1 = &beta.lambda * &beta_t.lambda / pr.pow(((beta.weight + beta_t.weight) / 2) as i32 - 1);
    let e2 = beta.sum_squared() + beta_t.sum_squared() - Rational::from(2);
    let poly = quartic(&e1, &e2, &e1, &Rational::one()).mul(&zeta_factor(n, p)?.poly);
    Ok(LocalFactor { p, poly })
}

/// `(1 − X)·∏_{j=1}^{n−2}(1 − p^jX)(1 − p^{−j}X)`, the part of the standard
/// factor coming from shifted zeta factors.
pub fn zeta_factor(n: u32, p: u64) -> Result<LocalFactor> {
    if n < 2 {
        return Err(Error::Usage("degree must be at least 2".into()));
    }
    let pr = Rational::from(p as i64);
    let mut poly = UPoly::from_i64(&[1, -1]);
    for j in 1..=(n as i32 - 2) {
        poly = poly
            .mul(&UPoly::new(vec![Rational::one(), -pr.pow(j)]))
            .mul(&UPoly::new(vec![Rational::one(), -pr.pow(-j)]));
    }
    Ok(LocalFactor { p, poly })
}

/// Inverse Rankin–Selberg factor of `f` (weight `k₁`) and `g` (weight `k₂`)
/// in arithmetic normalization.
pub fn rankin_selberg_local(af: i64, ag: i64, k1: u32, k2: u32, p: u64) -> LocalFactor {
    let pr = Rational::from(p as i64);
    let (af, ag) = (Rational::from(af), Rational::from(ag));
    let w = (k1 + k2 - 2) as i32;
    let e1 = &af * &ag;
    let e2 = pr.pow(k2 as i32 - 1) * &af * &af + pr.pow(k1 as i32 - 1) * &ag * &ag - Rational::from(2) * pr.pow(w);
    let e3 = &e1 * &pr.pow(w);
    let e4 = pr.pow(2 * w);
    LocalFactor {
        p,
        poly: quartic(&e1, &e2, &e3, &e4),
    }
}

/// `X ↦ X·p^{−((k₁+k₂)/2 − 1)}`, the analytic normalization.
pub fn shift_rankin_selberg(rs: &LocalFactor, k1: u32, k2: u32) -> Result<LocalFactor> {
    if !(k1 + k2).is_multiple_of(2) {
        return Err(Error::Unsupported("weights of different parity".into()));
    }
    let c = Rational::from(rs.p as i64).pow(-(((k1 + k2) / 2) as i32 - 1));
    Ok(LocalFactor {
        p: rs.p,
        poly: rs.poly.rescale_variable(&c),
    })
}

/// `a(pʲ)` for `j ≤ n` from `a(p^{j+1}) = a(p)a(pʲ) − p^{k−1}a(p^{j−1})`.
pub fn prime_power_coefficients(ap: i64, k: u32, p: u64, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one(), Rational::from(ap)];
    let pk = Rational::from(p as i64).pow(k as i32 - 1);
    while out.len() <= n {
        let j = out.len();
        let next = Rational::from(ap) * &out[j - 1] - &pk * &out[j - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// `RS(X)·Σⱼ a_f(pʲ)a_g(pʲ)Xʲ` truncated below `X^{n+1}`; equals
/// `1 − p^{k₁+k₂−2}X²` when the factor is right.
pub fn rankin_selberg_series_check(af: i64, ag: i64, k1: u32, k2: u32, p: u64, n: usize) -> UPoly {
    let rs = rankin_selberg_local(af, ag, k1, k2, p);
    let cf = prime_power_coefficients(af, k1, p, n);
    let cg = prime_power_coefficients(ag, k2, p, n);
    let series = UPoly::new(cf.iter().zip(&cg).map(|(x, y)| x * y).collect());
    rs.poly.mul(&series).truncate(n + 1)
}

/// Data of a form that is not `p`-essential: the sign `ε_p` and
/// `α + α⁻¹` of the other form at `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct NonEssential {
    pub p: u64,
    pub epsilon: i32,
    pub alpha_sum: f64,
}

/// `Λ_N(s) = ∏_{p|N} ∏_{j=1}^{n} (1 − p^{−s−2+j})⁻¹`, with the factor at
/// a non-essential prime replaced by
/// `(1 + ε(α+α⁻¹)Y + Y²)⁻¹·∏_{j=3}^{n}(1 − p^{−s−2+j})⁻¹`, `Y = p^{(−2s−1)/2}`.
pub fn lambda_n(primes: &[u64], n: u32, s: f64, nonessential: Option<&NonEssential>) -> Result<f64> {
    let mut out = 1.0;
    for &p in primes {
        let pf = p as f64;
        let replaced = nonessential.filter(|ne| ne.p == p);
        let first_j = if replaced.is_some() { 3 } else { 1 };
        if let Some(ne) = replaced {
            let y = pf.powf((-2.0 * s - 1.0) / 2.0);
            let d = 1.0 + ne.epsilon as f64 * ne.alpha_sum * y + y * y;
            if d == 0.0 {
                return Err(Error::Pole { p, j: 0 });
            }
            out /= d;
        }
        for j in first_j..=n as i64 {
            let e = -s - 2.0 + j as f64;
            if e.abs() < 1e-12 {
                return Err(Error::Pole { p, j });
            }
            out /= 1.0 - pf.powf(e);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_parameters_give_fifth_power() {
        // λ = 2·p^{(k−1)/2} with k = 1 makes β = 1
        let b = SatakePair::new(3, 1, Rational::from(2));
        let f = standard_l_local(&b, &b, 2, 3).unwrap();
        assert_eq!(f.poly, UPoly::from_i64(&[1, -1]).pow(5));
    }

    #[test]
    fn rankin_selberg_zero_eigenvalues() {
        let f = rankin_selberg_local(0, 0, 4, 2, 2);
        assert_eq!(f.poly, UPoly::from_i64(&[1, 0, -2 * 16, 0, 256]));
    }

    #[test]
    fn empty_level() {
        assert_eq!(lambda_n(&[], 3, 1.0, None).unwrap(), 1.0);
    }
}
