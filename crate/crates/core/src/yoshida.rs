//! Theta series with harmonic coefficients and the Yoshida lifts of degree
//! one and two.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::brandt::AutomorphicForm;
use crate::error::{Error, Result};
use crate::harmonic::{in_lattice_coords, lift_poly_deg1, lift_poly_deg2, HarmSpace, HarmonicPoly};
use crate::linalg::Matrix;
use crate::poly::{CompiledPoly, Poly};
use crate::quat::classset::ClassSet;
use crate::quat::enumerate::vectors_by_norm;
use crate::rational::Rational;
use crate::siegel::forms::{
    reduce_form, reduced_forms, singular_bound, BinaryForm, FourierExpansionSiegel2, QExpansion,
};

/// An even positive definite Gram matrix with integer entries: norms
/// `vᵗGv/2` and cross terms `vᵗGw` are integers.
#[derive(Clone, Debug)]
pub struct IntGram {
    g: Vec<Vec<i64>>,
}

impl IntGram {
    pub fn new(g: &Matrix) -> Result<Self> {
        if !g.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let rows: Option<Vec<Vec<i64>>> = g
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(Rational::to_i64).collect())
            .collect();
        let rows = rows.ok_or_else(|| Error::Usage("Gram matrix is not integral".into()))?;
        if (0..rows.len()).any(|i| rows[i][i] % 2 != 0) {
            return Err(Error::Usage("Gram matrix is not even".into()));
        }
        Ok(IntGram { g: rows })
    }

    pub fn cross(&self, v: &[i64], w: &[i64]) -> i64 {
        let mut s = 0;
        for (i, vi) in v.iter().enumerate() {
            if *vi == 0 {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                s += vi * self.g[i][j] * wj;
            }
        }
        s
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(
            self.g
                .iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }
}

/// Vectors of the lattice with Gram `g` bucketed by norm, up to `max_norm`.
fn buckets(g: &IntGram, max_norm: i64) -> Result<Vec<Vec<Vec<i64>>>> {
    let by = vectors_by_norm(&g.matrix(), &Rational::from(max_norm))?;
    let mut out = vec![Vec::new(); max_norm.max(0) as usize + 1];
    for (n, vs) in by {
        let k = n.to_i64().ok_or_else(|| Error::Usage("norm is not integral".into()))?;
        out[k as usize] = vs;
    }
    Ok(out)
}

/// `Σ_{x₁, x₂} P(x₁, x₂)` over pairs with `n(x₁) = a`, `tr(x₁x̄₂) = b`,
/// `n(x₂) = c`, for every reduced `[a, b, c]` with `4ac − b² ≤ bound` and
/// the singular forms `[0, 0, c]`, `c ≤ (bound + 1)/4`. `P` is in the eight
/// lattice coordinates of `(x₁, x₂)`.
pub fn theta2_series(g: &IntGram, p: &Poly, bound: i64) -> Result<BTreeMap<BinaryForm, Rational>> {
    if p.nvars() != 8 && !p.is_zero() {
        return Err(Error::Shape(format!(
            "lift polynomial has {} variables, expected 8",
            p.nvars()
        )));
    }
    let compiled = if p.is_zero() { Poly::zero(8) } else { p.clone() }.compile();
    let cmax = singular_bound(bound);
    let vecs = buckets(g, cmax)?;
    let mut amax = 0;
    while 3 * (amax + 1) * (amax + 1) <= bound {
        amax += 1;
    }
    // (a, index of x₁) work items
    let items: Vec<(i64, usize)> = (0..=amax)
        .flat_map(|a| (0..vecs[a as usize].len()).map(move |k| (a, k)))
        .collect();
    let partial: Vec<Vec<(BinaryForm, num_bigint::BigInt)>> = items
        .par_iter()
        .map(|&(a, k)| pair_sums(g, &compiled, &vecs, a, k, bound))
        .collect();
    let mut acc: BTreeMap<BinaryForm, num_bigint::BigInt> = BTreeMap::new();
    for part in partial {
        for (t, v) in part {
            *acc.entry(t).or_default() += v;
        }
    }
    let den = Rational::from_integer(compiled.denom().clone());
    let mut out = BTreeMap::new();
    for t in reduced_forms(bound) {
        let v = acc
            .remove(&t)
            .map(|n| Rational::from_integer(n) / &den)
            .unwrap_or_else(Rational::zero);
        out.insert(t, v);
    }
    Ok(out)
}

fn pair_sums(
    g: &IntGram,
    p: &CompiledPoly,
    vecs: &[Vec<Vec<i64>>],
    a: i64,
    k: usize,
    bound: i64,
) -> Vec<(BinaryForm, num_bigint::BigInt)> {
    let x1 = &vecs[a as usize][k];
    let fixed = p.fix_prefix(x1);
    let mut sums: BTreeMap<BinaryForm, num_bigint::BigInt> = BTreeMap::new();
    let cmax = if a == 0 {
        singular_bound(bound)
    } else {
        (bound + a * a) / (4 * a)
    };
    for c in a..=cmax.min(vecs.len() as i64 - 1) {
        for x2 in &vecs[c as usize] {
            let b = g.cross(x1, x2);
            if b < 0 || b > a {
                continue;
            }
            let t = BinaryForm::new(a, b, c);
            if a > 0 && t.disc() > bound {
                continue;
            }
            let v = match fixed.eval_num_i128(x2) {
                Some(v) => num_bigint::BigInt::from(v),
                None => fixed.eval_num(x2),
            };
            *sums.entry(t).or_default() += v;
        }
    }
    sums.into_iter().collect()
}

/// One coefficient of the degree-2 theta series.
pub fn theta2_coefficient(g: &IntGram, p: &Poly, t: BinaryForm) -> Result<Rational> {
    let (r, det) = reduce_form(t)?;
    let bound = if r.is_singular() { 4 * r.c } else { r.disc() };
    let series = theta2_series(g, p, bound)?;
    let v = series.get(&r).cloned().unwrap_or_else(Rational::zero);
    // a(T[U]) = det(U)^{deg} a(T); P is bihomogeneous of degree ν in each
    // argument, and the sign is that of det(U)^ν
    let nu = p.degree().unwrap_or(0) / 2;
    Ok(if det < 0 && nu % 2 == 1 { -v } else { v })
}

/// Number of vectors of each norm `m ≤ bound`.
pub fn theta1_series(g: &IntGram, bound: i64) -> Result<Vec<u64>> {
    Ok(buckets(g, bound)?.iter().map(|v| v.len() as u64).collect())
}

/// Degree-2 lift from the literal class polynomials `pᵢ` on lattices
/// `gᵢ`: `a(T) = Σᵢ θ(gᵢ, pᵢ; T)`.
pub fn lift_from_polynomials(
    parts: &[(IntGram, Poly)],
    weight: u32,
    level: u64,
    bound: i64,
) -> Result<FourierExpansionSiegel2> {
    let mut total: BTreeMap<BinaryForm, Rational> = BTreeMap::new();
    for (g, p) in parts {
        for (t, v) in theta2_series(g, p, bound)? {
            *total.entry(t).or_default() += &v;
        }
    }
    FourierExpansionSiegel2::from_values(weight, level, bound, total)
}

/// `Y⁽²⁾(φ₁, φ₂)` for `ν₂ = 0`:
/// `a(T) = Σᵢⱼ φ₂(yⱼ)/(eᵢeⱼ)·θ(IᵢĪⱼ, P_{φ₁(yᵢ)}/N^ν; T)`.
pub fn yoshida2(
    cs: &ClassSet,
    hs1: &HarmSpace,
    phi1: &AutomorphicForm,
    phi2: &AutomorphicForm,
    bound: i64,
) -> Result<FourierExpansionSiegel2> {
    if phi2.nu != 0 {
        return Err(Error::Unsupported("second form of positive degree".into()));
    }
    if phi1.nu != hs1.nu || phi1.values.len() != cs.len() || phi2.values.len() != cs.len() {
        return Err(Error::Shape("forms do not match the class set".into()));
    }
    let level = cs.order().discriminant()?;
    let e = cs.unit_counts();
    let mut parts = Vec::new();
    for (i, v1) in phi1.values.iter().enumerate() {
        if v1.iter().all(Rational::is_zero) {
            continue;
        }
        let hp = HarmonicPoly {
            nu: hs1.nu,
            poly: hs1.poly_of(v1),
        };
        let pv = lift_poly_deg2(&hs1.frame, &hp);
        for (j, v2) in phi2.values.iter().enumerate() {
            if v2[0].is_zero() {
                continue;
            }
            let cross = cs.cross(i, j);
            let g = IntGram::new(&cross.normalized_gram())?;
            let w = &v2[0] / &Rational::from((e[i] * e[j]) as i64) / cross.scale.pow(hs1.nu as i32);
            let p = in_lattice_coords(&pv, cross.lattice.basis(), 2).scale(&w);
            parts.push((g, p));
        }
    }
    lift_from_polynomials(&parts, hs1.nu + 2, level, bound)
}

/// `Y⁽¹⁾(φ₁, φ₂)`:
/// `a(m) = Σᵢⱼ (1/eᵢeⱼ) Σ_{x ∈ IᵢĪⱼ, n(x) = m} Q_{ij}(x)/N^{2ν}` where
/// `Q_{ij}(x) = ⟨⟨φ₁(yᵢ), z ↦ φ₂(yⱼ)(x̄zx)⟩⟩`.
pub fn yoshida1(
    cs: &ClassSet,
    hs: &HarmSpace,
    phi1: &AutomorphicForm,
    phi2: &AutomorphicForm,
    bound: u64,
) -> Result<QExpansion> {
    if phi1.nu != phi2.nu {
        return Err(Error::DegreeMismatch(phi1.nu as usize, phi2.nu as usize));
    }
    let level = cs.order().discriminant()?;
    let e = cs.unit_counts();
    let mut total = vec![Rational::zero(); bound as usize + 1];
    for i in 0..cs.len() {
        for j in 0..cs.len() {
            let v1 = HarmonicPoly {
                nu: hs.nu,
                poly: hs.poly_of(&phi1.values[i]),
            };
            let v2 = HarmonicPoly {
                nu: hs.nu,
                poly: hs.poly_of(&phi2.values[j]),
            };
            if v1.poly.is_zero() || v2.poly.is_zero() {
                continue;
            }
            let q = lift_poly_deg1(&hs.frame, &v1, &v2)?;
            let cross = cs.cross(i, j);
            let g = IntGram::new(&cross.normalized_gram())?;
            let w = Rational::from((e[i] * e[j]) as i64).recip() / cross.scale.pow(2 * hs.nu as i32);
            let ql = in_lattice_coords(&q, cross.lattice.basis(), 1).scale(&w).compile();
            for (m, vs) in buckets(&g, bound as i64)?.iter().enumerate() {
                for v in vs {
                    total[m] += &ql.eval(v);
                }
            }
        }
    }
    let mut out = QExpansion::new(hs.nu * 2 + 2, level, bound);
    for (m, v) in total.into_iter().enumerate() {
        out.set(m as u64, v);
    }
    Ok(out)
}

/// `m ↦ a([m, 0, 0])`, the image under Siegel's `Φ`.
pub fn phi_operator(f: &FourierExpansionSiegel2) -> Result<QExpansion> {
    let cmax = singular_bound(f.bound);
    let mut out = QExpansion::new(f.weight, f.level, cmax.max(0) as u64);
    for m in 0..=cmax {
        out.set(m as u64, f.get(BinaryForm::new(m, 0, 0))?);
    }
    Ok(out)
}

/// Whether `Φ(F)` and every stored singular coefficient vanish.
pub fn is_cuspidal(f: &FourierExpansionSiegel2) -> Result<bool> {
    Ok(phi_operator(f)?.is_zero() && f.entries().keys().all(|t| !t.is_singular()))
}
