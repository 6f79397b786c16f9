//! Exact Fincke–Pohst enumeration of lattice vectors by norm.
//!
//! The norm of a coordinate vector `v` is `vᵗGv/2`, matching the reduced
//! norm when `G` is the trace-form Gram matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Every coordinate vector with norm exactly `m`, in lexicographic order.
pub fn short_vectors(g: &Matrix, m: &Rational) -> Result<Vec<Vec<i64>>> {
    if m.is_negative() {
        return Err(Error::Usage("negative norm bound".into()));
    }
    let mut out: Vec<Vec<i64>> = vectors_up_to(g, m)?
        .into_iter()
        .filter(|(n, _)| n == m)
        .map(|(_, v)| v)
        .collect();
    out.sort();
    Ok(out)
}

/// Every coordinate vector with norm at most `m`, paired with its norm and
/// sorted by `(norm, vector)`.
pub fn vectors_up_to(g: &Matrix, m: &Rational) -> Result<Vec<(Rational, Vec<i64>)>> {
    let n = g.rows();
    if !g.is_symmetric() {
        return Err(Error::NotPositiveDefinite);
    }
    if !g.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if m.is_negative() {
        return Ok(Vec::new());
    }
    let (gr, u) = lll_gram(g);
    let (l, d) = gr.ldl().ok_or(Error::NotPositiveDefinite)?;
    let mut out: Vec<Vec<i64>> = Vec::new();
    let bound = m * &Rational::from(2);
    let mut x = vec![0i64; n];
    recurse(&l, &d, n, &bound, &mut x, &mut out);
    let half = Rational::new(1, 2);
    let mut res: Vec<(Rational, Vec<i64>)> = out
        .into_iter()
        .map(|w| {
            let v: Vec<i64> = (0..n).map(|r| (0..n).map(|c| u[r][c] * w[c]).sum()).collect();
            (quad_form(g, &v) * &half, v)
        })
        .collect();
    res.sort();
    Ok(res)
}

/// Vectors of norm at most `m` bucketed by norm.
pub fn vectors_by_norm(g: &Matrix, m: &Rational) -> Result<BTreeMap<Rational, Vec<Vec<i64>>>> {
    let mut map: BTreeMap<Rational, Vec<Vec<i64>>> = BTreeMap::new();
    for (n, v) in vectors_up_to(g, m)? {
        map.entry(n).or_default().push(v);
    }
    Ok(map)
}

/// `vᵗGv`.
pub fn quad_form(g: &Matrix, v: &[i64]) -> Rational {
    let n = v.len();
    let mut s = Rational::zero();
    for i in 0..n {
        if v[i] == 0 {
            continue;
        }
        for j in 0..n {
            if v[j] != 0 {
                s += &(&g[(i, j)] * &Rational::from(v[i] * v[j]));
            }
        }
    }
    s
}

/// Depth-first search from the last coordinate down. `rem` is the part of
/// the bound not yet consumed by coordinates `level..n`.
fn recurse(l: &Matrix, d: &[Rational], level: usize, rem: &Rational, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = x.len();
    let c: Rational = (i + 1..n)
        .filter(|&j| x[j] != 0)
        .map(|j| &l[(j, i)] * &Rational::from(x[j]))
        .sum();
    let t = rem / &d[i];
    let s = isqrt_floor(&t);
    let centre = -&c;
    let lo: BigInt = centre.floor() - &s - 1;
    let hi: BigInt = centre.ceil() + &s + 1;
    let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
        return;
    };
    for xi in lo..=hi {
        let y = Rational::from(xi) + &c;
        let used = &d[i] * &(&y * &y);
        if &used > rem {
            continue;
        }
        x[i] = xi;
        let next = rem - &used;
        recurse(l, d, i, &next, x, out);
    }
    x[i] = 0;
}

/// Gram–Schmidt data `(μ, B)` of a positive definite Gram matrix.
fn gram_schmidt(g: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = g.len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut t = g[i][j].clone();
            for k in 0..j {
                t -= &(&mu[j][k] * &mu[i][k] * &b[k]);
            }
            mu[i][j] = t / &b[j];
        }
        let mut t = g[i][i].clone();
        for k in 0..i {
            t -= &(&mu[i][k] * &mu[i][k] * &b[k]);
        }
        b[i] = t;
    }
    (mu, b)
}

/// LLL reduction (δ = 3/4) of a positive definite Gram matrix. Returns the
/// reduced Gram `UᵗGU` and the unimodular `U` whose columns are the new basis
/// in old coordinates.
pub fn lll_gram(g: &Matrix) -> (Matrix, Vec<Vec<i64>>) {
    let n = g.rows();
    let mut gm = g.row_vecs();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    // bᵢ −= q·bⱼ
    let reduce = |gm: &mut Vec<Vec<Rational>>, u: &mut Vec<Vec<i64>>, i: usize, j: usize, q: i64| {
        let qr = Rational::from(q);
        for row in gm.iter_mut() {
            let t = &row[j] * &qr;
            row[i] -= &t;
        }
        let rj = gm[j].clone();
        for (x, y) in gm[i].iter_mut().zip(&rj) {
            *x -= &(y * &qr);
        }
        for row in u.iter_mut() {
            row[i] -= q * row[j];
        }
    };
    let delta = Rational::new(3, 4);
    let half = Rational::new(1, 2);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&gm);
            let q = (&mu[k][j] + &half).floor();
            if let Some(q) = q.to_i64().filter(|&q| q != 0) {
                reduce(&mut gm, &mut u, k, j, q);
            }
        }
        let (mu, b) = gram_schmidt(&gm);
        let lhs = b[k].clone();
        let rhs = (&delta - &(&mu[k][k - 1] * &mu[k][k - 1])) * &b[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            gm.swap(k, k - 1);
            for row in gm.iter_mut() {
                row.swap(k, k - 1);
            }
            for row in u.iter_mut() {
                row.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    (Matrix::from_rows(gm), u)
}

/// `⌊√t⌋` for a nonnegative rational `t`.
fn isqrt_floor(t: &Rational) -> BigInt {
    if !t.is_positive() {
        return BigInt::from(0);
    }
    t.floor().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_identity() {
        let g = Matrix::identity(2).scale(&Rational::from(2));
        // x² + y² = 5 has 8 solutions
        assert_eq!(short_vectors(&g, &Rational::from(5)).unwrap().len(), 8);
        assert_eq!(short_vectors(&g, &Rational::from(0)).unwrap(), vec![vec![0, 0]]);
        assert_eq!(short_vectors(&g, &Rational::from(3)).unwrap().len(), 0);
    }

    #[test]
    fn lll_keeps_the_lattice() {
        let g = Matrix::from_i64(&[&[2, 101, 0], &[101, 5102, 7], &[0, 7, 40]]);
        let (r, u) = lll_gram(&g);
        let um = Matrix::from_rows(
            u.iter()
                .map(|row| row.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        );
        assert_eq!(um.det().abs(), Rational::one());
        assert_eq!(&(&um.transpose() * &g) * &um, r);
        assert!(r[(1, 1)] < g[(1, 1)]);
        assert_eq!(
            vectors_up_to(&g, &Rational::from(30)).unwrap().len(),
            vectors_up_to(&r, &Rational::from(30)).unwrap().len()
        );
    }

    #[test]
    fn rejects_indefinite() {
        let g = Matrix::from_i64(&[&[2, 3], &[3, 2]]);
        assert!(matches!(
            short_vectors(&g, &Rational::one()),
            Err(Error::NotPositiveDefinite)
        ));
    }
}
