//! Automorphic forms on an ideal class set: Brandt matrices with harmonic
//! weights, the weighted inner product, Atkin–Lehner involutions, essential
//! parts and simultaneous eigenspace decomposition.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::harmonic::HarmSpace;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::quat::algebra::Coords;
use crate::quat::classset::{class_set, ClassSet};
use crate::quat::enumerate::short_vectors;
use crate::quat::ideal::{equivalence_candidates, two_sided_ideal};
use crate::quat::lattice::{Lattice, LatticeOrder, QuatIdeal};
use crate::rational::Rational;
use crate::upoly::UPoly;

/// One `U_ν` coordinate vector per ideal class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphicForm {
    pub nu: u32,
    pub values: Vec<Vec<Rational>>,
}

impl AutomorphicForm {
    pub fn zero(nu: u32, h: usize) -> Self {
        let d = 2 * nu as usize + 1;
        AutomorphicForm {
            nu,
            values: vec![vec![Rational::zero(); d]; h],
        }
    }

    /// The form with value 1 on every class; only exists for `ν = 0`.
    pub fn constant(h: usize) -> Self {
        AutomorphicForm {
            nu: 0,
            values: vec![vec![Rational::one()]; h],
        }
    }

    pub fn from_flat(nu: u32, h: usize, v: &[Rational]) -> Self {
        let d = 2 * nu as usize + 1;
        assert_eq!(v.len(), d * h, "flat vector has the wrong length");
        AutomorphicForm {
            nu,
            values: v.chunks(d).map(<[Rational]>::to_vec).collect(),
        }
    }

    pub fn flat(&self) -> Vec<Rational> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn from_polys(hs: &HarmSpace, values: &[Poly]) -> Result<Self> {
        Ok(AutomorphicForm {
            nu: hs.nu,
            values: values.iter().map(|p| hs.coords(p)).collect::<Result<_>>()?,
        })
    }

    pub fn polys(&self, hs: &HarmSpace) -> Vec<Poly> {
        self.values.iter().map(|v| hs.poly_of(v)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AutomorphicForm {
            nu: self.nu,
            values: self.values.iter().map(|v| v.iter().map(|x| x * c).collect()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        AutomorphicForm {
            nu: self.nu,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Rational::is_zero)
    }

    /// The rational `c` with `other = c·self`, if one exists.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let a = self.flat();
        let b = other.flat();
        let k = a.iter().position(|x| !x.is_zero())?;
        let c = &b[k] / &a[k];
        a.iter().zip(&b).all(|(x, y)| &(x * &c) == y).then_some(c)
    }
}

fn check_shape(cs: &ClassSet, hs: &HarmSpace, f: &AutomorphicForm) -> Result<()> {
    if f.nu != hs.nu {
        return Err(Error::DegreeMismatch(f.nu as usize, hs.nu as usize));
    }
    if f.values.len() != cs.len() || f.values.iter().any(|v| v.len() != hs.dim()) {
        return Err(Error::Shape(format!(
            "form has {} values; expected {} vectors of length {}",
            f.values.len(),
            cs.len(),
            hs.dim()
        )));
    }
    Ok(())
}

/// Blocks `(i, j)` of size `(2ν+1)²`; the action is
/// `(Bφ)(yᵢ) = Σⱼ block(i, j)·φ(yⱼ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrandtMatrix {
    pub p: u64,
    pub nu: u32,
    pub blocks: Vec<Vec<Matrix>>,
}

impl BrandtMatrix {
    pub fn full(&self) -> Matrix {
        assemble_blocks(&self.blocks)
    }

    pub fn apply(&self, f: &AutomorphicForm) -> AutomorphicForm {
        let h = self.blocks.len();
        AutomorphicForm::from_flat(self.nu, h, &self.full().mul_vec(&f.flat()))
    }
}

pub fn assemble_blocks(blocks: &[Vec<Matrix>]) -> Matrix {
    let h = blocks.len();
    let d = blocks[0][0].rows();
    let mut m = Matrix::zeros(h * d, h * d);
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    m[(i * d + r, j * d + c)] = b[(r, c)].clone();
                }
            }
        }
    }
    m
}

/// `B(p)`: block `(i, j)` is `(1/eⱼ)` times the sum, over `x ∈ IᵢĪⱼ` of
/// normalized norm `p`, of the matrix of `v ↦ (z ↦ v(x̄zx)/N^ν)` with
/// `N = n(Iᵢ)n(Iⱼ)`.
pub fn brandt_matrix(cs: &ClassSet, hs: &HarmSpace, p: u64) -> Result<BrandtMatrix> {
    if !is_prime(p) {
        return Err(Error::Usage(format!("{p} is not prime")));
    }
    if cs.order().discriminant()? % p == 0 {
        return Err(Error::Usage(format!("{p} divides the level")));
    }
    let h = cs.len();
    let e = cs.unit_counts();
    let pairs: Vec<(usize, usize)> = (0..h).flat_map(|i| (0..h).map(move |j| (i, j))).collect();
    let blocks: Vec<Matrix> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let cross = cs.cross(i, j);
            let target = Rational::from(p as i64) * &cross.scale;
            let scale_nu = cross.scale.pow(hs.nu as i32).recip();
            let mut acc = Matrix::zeros(hs.dim(), hs.dim());
            for v in short_vectors(cross.lattice.gram(), &target)? {
                let x = cross.lattice.combo(&v);
                let a = hs.frame.conj_action(&x);
                acc = acc.add(&hs.substitution_matrix(&a));
            }
            Ok(acc.scale(&(scale_nu / Rational::from(e[j] as i64))))
        })
        .collect::<Result<_>>()?;
    let mut it = blocks.into_iter();
    let blocks = (0..h)
        .map(|_| (0..h).map(|_| it.next().expect("block")).collect())
        .collect();
    Ok(BrandtMatrix { p, nu: hs.nu, blocks })
}

/// Block-diagonal Gram matrix of the weighted inner product.
pub fn inner_product_matrix(cs: &ClassSet, hs: &HarmSpace) -> Matrix {
    let h = cs.len();
    let e = cs.unit_counts();
    let blocks: Vec<Vec<Matrix>> = (0..h)
        .map(|i| {
            (0..h)
                .map(|j| {
                    if i == j {
                        hs.pairing.scale(&Rational::new(1, e[i] as i64))
                    } else {
                        Matrix::zeros(hs.dim(), hs.dim())
                    }
                })
                .collect()
        })
        .collect();
    assemble_blocks(&blocks)
}

/// `⟨φ, ψ⟩ = Σᵢ ⟨⟨φ(yᵢ), ψ(yᵢ)⟩⟩/eᵢ`.
pub fn inner_product(cs: &ClassSet, hs: &HarmSpace, f: &AutomorphicForm, g: &AutomorphicForm) -> Result<Rational> {
    check_shape(cs, hs, f)?;
    check_shape(cs, hs, g)?;
    Ok(cs
        .unit_counts()
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(&e, (a, b))| hs.pair(a, b) / Rational::from(e as i64))
        .sum())
}

/// Flat basis of the forms invariant under the unit groups: `φ(yᵢ)` fixed
/// by `τ(u)` for every unit `u` of the left order of `Iᵢ`.
pub fn invariant_subspace(cs: &ClassSet, hs: &HarmSpace) -> Vec<Vec<Rational>> {
    let alg = cs.order().lattice().algebra().clone();
    let d = hs.dim();
    let h = cs.len();
    let mut out = Vec::new();
    for (i, left) in cs.left_orders().into_iter().enumerate() {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for u in left.units() {
            let t = hs.tau(&alg.element(u)).expect("units are invertible");
            rows.extend(t.sub(&Matrix::identity(d)).row_vecs());
        }
        let local = if rows.is_empty() {
            Matrix::identity(d).row_vecs()
        } else {
            Matrix::from_rows(rows).kernel()
        };
        for v in local {
            let mut flat = vec![Rational::zero(); d * h];
            flat[i * d..(i + 1) * d].clone_from_slice(&v);
            out.push(flat);
        }
    }
    out
}

fn transport_block(hs: &HarmSpace, gamma: &Coords) -> Result<Matrix> {
    let alg = hs.frame.algebra();
    hs.tau(&alg.element(gamma.clone()))
}

/// Matrix of `w̃_p` on the full coordinate space: `ψ(yᵢ) = τ(γᵢ)φ(y_k)`
/// where `IᵢP_p = γᵢI_k`. Every candidate `γᵢ` is tried and must give the
/// same result on invariant forms.
pub fn atkin_lehner_matrix(cs: &ClassSet, hs: &HarmSpace, p: u64) -> Result<Matrix> {
    let ideal = two_sided_ideal(cs.order(), p)?;
    let h = cs.len();
    let d = hs.dim();
    let invariant = invariant_subspace(cs, hs);
    let mut blocks = vec![vec![Matrix::zeros(d, d); h]; h];
    for (i, rep) in cs.representatives().iter().enumerate() {
        let prod = QuatIdeal::new(rep.lattice().product(ideal.lattice()))?;
        let (k, _) = cs.locate(&prod)?;
        let cands = equivalence_candidates(&prod, &cs.representatives()[k])?;
        let first = transport_block(hs, &cands[0])?;
        for g in &cands[1..] {
            let other = transport_block(hs, g)?;
            for v in &invariant {
                let vk = &v[k * d..(k + 1) * d];
                if first.mul_vec(vk) != other.mul_vec(vk) {
                    return Err(Error::Usage(
                        "involution depends on the choice of transport element".into(),
                    ));
                }
            }
        }
        blocks[i][k] = first;
    }
    Ok(assemble_blocks(&blocks))
}

pub fn atkin_lehner(cs: &ClassSet, hs: &HarmSpace, f: &AutomorphicForm, p: u64) -> Result<AutomorphicForm> {
    check_shape(cs, hs, f)?;
    let m = atkin_lehner_matrix(cs, hs, p)?;
    Ok(AutomorphicForm::from_flat(f.nu, cs.len(), &m.mul_vec(&f.flat())))
}

/// Orders `R' ⊃ R` with `[R' : R] = p`.
pub fn superorders(r: &LatticeOrder, p: u64) -> Result<Vec<LatticeOrder>> {
    let l = r.lattice();
    let pr = Rational::from(p as i64);
    let mut out = Vec::new();
    // lines of F_p⁴ in reduced form: leading 1, arbitrary tail
    for lead in 0..4 {
        let tail = 3 - lead;
        for code in 0..(p as usize).pow(tail as u32) {
            let mut v = vec![0i64; 4];
            v[lead] = 1;
            let mut k = code;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (k % p as usize) as i64;
                k /= p as usize;
            }
            let w = l.combo(&v).map(|x| x / &pr);
            let alg = l.algebra();
            if !alg.trace_coords(&w).is_integer() || !alg.norm_coords(&w).is_integer() {
                continue;
            }
            let mut gens = l.basis().to_vec();
            gens.push(w);
            let cand = Lattice::from_generators(l.algebra().clone(), &gens)?;
            if cand.check_order().is_ok() {
                out.push(LatticeOrder::new(cand)?);
            }
        }
    }
    Ok(out)
}

fn seed_prime(disc: u64) -> u64 {
    (2..)
        .find(|&q| is_prime(q) && !disc.is_multiple_of(q))
        .expect("a prime exists")
}

/// Pullbacks to `cs` of the invariant forms for a larger order `R'`:
/// `φ(yᵢ) = τ(γ)ψ(y'_k)` where `IᵢR' = γI'_k`.
fn pullbacks(cs: &ClassSet, hs: &HarmSpace, sup: &LatticeOrder) -> Result<Vec<Vec<Rational>>> {
    let big = class_set(sup, seed_prime(sup.discriminant()?))?;
    let d = hs.dim();
    let mut located = Vec::new();
    for rep in cs.representatives() {
        let ext = QuatIdeal::new(rep.lattice().product(sup.lattice()))?;
        let (k, g) = big.locate(&ext)?;
        located.push((k, transport_block(hs, &g)?));
    }
    let mut out = Vec::new();
    for psi in invariant_subspace(&big, hs) {
        let mut v = Vec::with_capacity(d * cs.len());
        for (k, t) in &located {
            v.extend(t.mul_vec(&psi[k * d..(k + 1) * d]));
        }
        out.push(v);
    }
    Ok(out)
}

/// The `p`-essential part of the span of `space`: everything when `R` is
/// maximal at `p`, otherwise the orthogonal complement of the pullbacks
/// from the orders containing `R` with index `p`.
pub fn essential_part(cs: &ClassSet, hs: &HarmSpace, space: &[Vec<Rational>], p: u64) -> Result<Vec<Vec<Rational>>> {
    if space.is_empty() {
        return Ok(Vec::new());
    }
    let sups = superorders(cs.order(), p)?;
    if sups.is_empty() {
        return Ok(space.to_vec());
    }
    let w = inner_product_matrix(cs, hs);
    let mut rows = Vec::new();
    for sup in &sups {
        for u in pullbacks(cs, hs, sup)? {
            let wu = w.mul_vec(&u);
            rows.push(space.iter().map(|s| crate::linalg::dot(s, &wu)).collect::<Vec<_>>());
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(space.len()).row_vecs()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    Ok(kernel
        .iter()
        .map(|c| {
            let n = space[0].len();
            (0..n)
                .map(|k| space.iter().zip(c).map(|(s, x)| &s[k] * x).sum())
                .collect()
        })
        .collect())
}

/// A simultaneous invariant subspace of the Hecke operators and
/// involutions on which each operator has irreducible characteristic
/// polynomial (up to powers).
#[derive(Clone, Debug)]
pub struct EigenComponent {
    pub basis: Vec<AutomorphicForm>,
    /// Eigenvalues for one-dimensional components.
    pub eigenvalues: BTreeMap<u64, Rational>,
    /// Involution eigenvalues `±1` for one-dimensional components.
    pub involutions: BTreeMap<u64, Rational>,
    /// Factored characteristic polynomials of the restricted operators.
    pub char_polys: BTreeMap<u64, (UPoly, u32)>,
}

impl EigenComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn form(&self) -> Option<&AutomorphicForm> {
        (self.basis.len() == 1).then(|| &self.basis[0])
    }
}

/// Restriction of `a` to the invariant subspace with column basis `w`.
fn restrict(a: &Matrix, w: &Matrix) -> Result<Matrix> {
    let (_, piv) = w.transpose().rref();
    let sub = Matrix::from_rows(piv.iter().map(|&r| w.row(r).to_vec()).collect());
    let inv = sub.inverse().expect("independent columns");
    let aw = a * w;
    let sub_aw = Matrix::from_rows(piv.iter().map(|&r| aw.row(r).to_vec()).collect());
    let r = &inv * &sub_aw;
    if (w * &r) != aw {
        return Err(Error::Usage("subspace is not invariant under the operator".into()));
    }
    Ok(r)
}

/// Scales to a primitive integral vector whose last nonzero entry is positive.
pub fn normalize(v: &[Rational]) -> Vec<Rational> {
    let den = Rational::lcm_denominators(v);
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| (x * &Rational::from(den.clone())).numer().clone())
        .collect();
    let g = crate::linalg::gcd_all(ints.iter());
    if num_traits::Zero::is_zero(&g) {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .rev()
        .find(|x| !num_traits::Zero::is_zero(*x))
        .map(num_traits::Signed::is_negative)
        .unwrap_or(false);
    ints.into_iter()
        .map(|x| {
            let r = Rational::from_bigints(x, g.clone());
            if sign {
                -r
            } else {
                r
            }
        })
        .collect()
}

/// Splits the essential, unit-invariant forms into simultaneous invariant
/// subspaces of `B(p)` for `p` in `primes` and of every `w̃_q`, `q | N`.
pub fn eigenforms(cs: &ClassSet, hs: &HarmSpace, primes: &[u64]) -> Result<Vec<EigenComponent>> {
    let disc = cs.order().discriminant()?;
    let bad = prime_divisors(disc);
    let mut space = invariant_subspace(cs, hs);
    for &q in &bad {
        space = essential_part(cs, hs, &space, q)?;
    }
    let n = hs.dim() * cs.len();
    if space.is_empty() {
        return Ok(Vec::new());
    }
    let mut ops: Vec<(u64, bool, Matrix)> = Vec::new();
    for &p in primes {
        ops.push((p, false, brandt_matrix(cs, hs, p)?.full()));
    }
    for &q in &bad {
        ops.push((q, true, atkin_lehner_matrix(cs, hs, q)?));
    }
    let mut pieces: Vec<Matrix> = vec![Matrix::from_cols(&space)];
    for (_, _, a) in &ops {
        let mut next = Vec::new();
        for w in pieces {
            let r = restrict(a, &w)?;
            for (f, m) in factor(&r.char_poly())? {
                let fm = f.pow(m);
                let ker = eval_matrix_poly(&fm, &r).kernel();
                let cols: Vec<Vec<Rational>> = ker.iter().map(|c| w.mul_vec(c)).collect();
                next.push(Matrix::from_cols(&cols));
            }
        }
        pieces = next;
    }
    let mut out = Vec::new();
    for w in pieces {
        let d = w.cols();
        let mut comp = EigenComponent {
            basis: Vec::new(),
            eigenvalues: BTreeMap::new(),
            involutions: BTreeMap::new(),
            char_polys: BTreeMap::new(),
        };
        let cols: Vec<Vec<Rational>> = if d == 1 {
            vec![normalize(&w.col(0))]
        } else {
            (0..d).map(|c| w.col(c)).collect()
        };
        let w = Matrix::from_cols(&cols);
        for (p, inv, a) in &ops {
            let r = restrict(a, &w)?;
            let fs = factor(&r.char_poly())?;
            comp.char_polys.insert(*p, fs[0].clone());
            if d == 1 {
                let target = if *inv {
                    &mut comp.involutions
                } else {
                    &mut comp.eigenvalues
                };
                target.insert(*p, r[(0, 0)].clone());
            }
        }
        comp.basis = cols
            .iter()
            .map(|c| AutomorphicForm::from_flat(hs.nu, cs.len(), c))
            .collect();
        debug_assert_eq!(comp.basis[0].flat().len(), n);
        out.push(comp);
    }
    Ok(out)
}

/// `f(M)` by Horner's rule.
pub fn eval_matrix_poly(f: &UPoly, m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in f.coeffs().iter().rev() {
        acc = &acc * m;
        acc = acc.add(&Matrix::identity(n).scale(c));
    }
    acc
}
