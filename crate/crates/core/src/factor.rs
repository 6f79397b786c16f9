//! Factorization of univariate rational polynomials into monic irreducibles.
//!
//! Square-free parts come from Yun's algorithm, linear factors from the
//! rational root test, and anything left of degree at least 4 goes through
//! Kronecker's interpolation search under an explicit work limit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::upoly::UPoly;

/// Upper bound on the number of candidate interpolations tried per degree.
pub const KRONECKER_LIMIT: u64 = 2_000_000;
const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

/// Monic irreducible factors with multiplicities, ordered by degree and then
/// by coefficients. The leading coefficient is dropped.
pub fn factor(p: &UPoly) -> Result<Vec<(UPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::Usage("cannot factor the zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (mult, part) in square_free(&p.monic()) {
        for f in factor_square_free(&part)? {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then(a.1.cmp(&b.1))
    });
    Ok(out)
}

/// Yun's square-free decomposition of a monic polynomial.
fn square_free(f: &UPoly) -> Vec<(u32, UPoly)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.div_rem(&a).0;
    let mut c = df.div_rem(&a).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((i, a.monic()));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn factor_square_free(f: &UPoly) -> Result<Vec<UPoly>> {
    let mut rest = f.monic();
    let mut out = Vec::new();
    for r in rational_roots(&rest)? {
        let lin = UPoly::linear_root(&r);
        rest = rest.div_rem(&lin).0;
        out.push(lin);
    }
    let deg = rest.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(out);
    }
    if deg <= 3 {
        out.push(rest.monic());
        return Ok(out);
    }
    out.extend(kronecker(&rest)?);
    Ok(out)
}

/// Primitive integer polynomial with positive leading coefficient and the
/// same roots.
pub fn primitive_integer(p: &UPoly) -> Vec<BigInt> {
    let den = Rational::lcm_denominators(p.coeffs());
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let sign = if ints.last().is_some_and(|x| x.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Distinct rational roots in increasing order.
pub fn rational_roots(p: &UPoly) -> Result<Vec<Rational>> {
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let mut ints = primitive_integer(p);
    if ints[0].is_zero() {
        roots.push(Rational::zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() > 1 {
        let lead = ints.last().expect("nonempty").clone();
        let nums = divisors(&ints[0])?;
        let dens = divisors(&lead)?;
        let q = UPoly::new(ints.iter().cloned().map(Rational::from).collect());
        for n in &nums {
            for d in &dens {
                if !n.gcd(d).is_one() {
                    continue;
                }
                for s in [1i64, -1] {
                    let r = Rational::from_bigints(n * s, d.clone());
                    if q.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Positive divisors of a nonzero integer, by trial division.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(Error::Usage("divisors of zero".into()));
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    let mut steps = 0u64;
    while &p * &p <= m {
        steps += 1;
        if steps > TRIAL_DIVISION_LIMIT {
            return Err(Error::FactorLimit(0));
        }
        if (&m % &p).is_zero() {
            let mut e = 0;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Splits a square-free polynomial without rational roots by Kronecker's
/// method.
fn kronecker(f: &UPoly) -> Result<Vec<UPoly>> {
    let deg = f.degree().expect("nonzero");
    for m in 2..=deg / 2 {
        if let Some(g) = kronecker_factor_of_degree(f, m)? {
            let h = f.div_rem(&g).0;
            let mut out = kronecker(&g)?;
            out.extend(kronecker(&h)?);
            return Ok(out);
        }
    }
    Ok(vec![f.monic()])
}

fn kronecker_factor_of_degree(f: &UPoly, m: usize) -> Result<Option<UPoly>> {
    let fi = UPoly::new(primitive_integer(f).into_iter().map(Rational::from).collect());
    let mut points = Vec::new();
    let mut x = 0i64;
    while points.len() < m + 1 {
        let v = fi.eval(&Rational::from(x));
        if !v.is_zero() {
            points.push((Rational::from(x), divisors(v.numer())?));
        }
        x = if x <= 0 { 1 - x } else { -x };
    }
    let work: u64 = points
        .iter()
        .enumerate()
        .map(|(i, (_, d))| d.len() as u64 * if i == 0 { 1 } else { 2 })
        .try_fold(1u64, |acc, n| acc.checked_mul(n))
        .unwrap_or(u64::MAX);
    if work > KRONECKER_LIMIT {
        return Err(Error::FactorLimit(f.degree().unwrap_or(0)));
    }
    let sizes: Vec<usize> = points
        .iter()
        .enumerate()
        .map(|(i, (_, d))| d.len() * if i == 0 { 1 } else { 2 })
        .collect();
    let mut idx = vec![0usize; points.len()];
    loop {
        let vals: Vec<Rational> = points
            .iter()
            .zip(&idx)
            .enumerate()
            .map(|(i, ((_, d), &k))| {
                let (j, neg) = if i == 0 { (k, false) } else { (k / 2, k % 2 == 1) };
                let v = Rational::from(d[j].clone());
                if neg {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let xs: Vec<Rational> = points.iter().map(|(x, _)| x.clone()).collect();
        let g = interpolate(&xs, &vals);
        if g.degree() == Some(m) && g.is_integral() {
            let (_, r) = fi.div_rem(&g);
            if r.is_zero() {
                return Ok(Some(g.monic()));
            }
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < sizes[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UPoly {
    let mut out = UPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = UPoly::one();
        let mut den = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UPoly::linear_root(xj));
                den *= &(xi - xj);
            }
        }
        out = out.add(&basis.scale(&(yi / &den)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_into_irreducibles() {
        // (x - 3)(x + 1)^2 (x^2 - 2)
        let p = UPoly::from_i64(&[-3, 1])
            .mul(&UPoly::from_i64(&[1, 1]).pow(2))
            .mul(&UPoly::from_i64(&[-2, 0, 1]));
        let f = factor(&p).unwrap();
        assert_eq!(
            f,
            vec![
                (UPoly::from_i64(&[-3, 1]), 1),
                (UPoly::from_i64(&[1, 1]), 2),
                (UPoly::from_i64(&[-2, 0, 1]), 1),
            ]
        );
    }

    #[test]
    fn kronecker_finds_quadratic_pair() {
        // (x^2 + 1)(x^2 - 3)
        let p = UPoly::from_i64(&[1, 0, 1]).mul(&UPoly::from_i64(&[-3, 0, 1]));
        let f = factor(&p).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, m)| g.degree() == Some(2) && *m == 1));
        // x^4 + 1 is irreducible
        assert_eq!(factor(&UPoly::from_i64(&[1, 0, 0, 0, 1])).unwrap().len(), 1);
    }

    #[test]
    fn rational_roots_with_denominators() {
        let p = UPoly::from_i64(&[-1, 0, 4]);
        assert_eq!(
            rational_roots(&p).unwrap(),
            vec![Rational::new(-1, 2), Rational::new(1, 2)]
        );
    }
}
