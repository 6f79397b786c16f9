//! Harmonic polynomials on the trace-zero subspace, the conjugation
//! representation `τ_ν`, the invariant pairing and the lift polynomials.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::quat::algebra::{basis_coords, coords_from_slice, Coords, QuatElement, QuaternionAlgebra};
use crate::rational::Rational;

/// A basis `e₁, e₂, e₃` of the trace-zero subspace with its Gram matrix
/// `G₀ = (tr(eᵢ ēⱼ))`.
#[derive(Clone, Debug)]
pub struct Frame {
    alg: Arc<QuaternionAlgebra>,
    elems: [Coords; 3],
    gram: Matrix,
    gram_inv: Matrix,
    /// `3×4` matrix sending algebra coordinates of `x` to frame coordinates
    /// of `x − tr(x)/2`.
    projection: Matrix,
}

impl Frame {
    /// The frame given by the kernel of the trace form, one vector per free
    /// coordinate in increasing order.
    pub fn trace_zero(alg: Arc<QuaternionAlgebra>) -> Self {
        let t = Matrix::from_rows(vec![alg.trace_form().to_vec()]);
        let ker = t.kernel();
        let elems: [Coords; 3] = std::array::from_fn(|i| coords_from_slice(&ker[i]));
        Frame::new(alg, elems).expect("trace kernel is a frame")
    }

    pub fn new(alg: Arc<QuaternionAlgebra>, elems: [Coords; 3]) -> Result<Self> {
        if elems.iter().any(|e| !alg.trace_coords(e).is_zero()) {
            return Err(Error::Usage("frame elements must have trace zero".into()));
        }
        let gram = alg.gram_of(&elems);
        let gram_inv = gram.inverse().ok_or(Error::NotPositiveDefinite)?;
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        // coords(pim x) = G₀⁻¹ Fᵗ G pim(x), F the 4×3 matrix of frame columns
        let f = Matrix::from_cols(&elems.iter().map(|e| e.to_vec()).collect::<Vec<_>>());
        let g = alg.trace_gram();
        let pim = {
            let mut m = Matrix::identity(4);
            let half = Rational::new(1, 2);
            let unit = alg.unit_coords();
            let tf = alg.trace_form();
            for r in 0..4 {
                for c in 0..4 {
                    m[(r, c)] -= &(&unit[r] * &tf[c] * &half);
                }
            }
            m
        };
        let projection = &(&(&gram_inv * &f.transpose()) * &g) * &pim;
        Ok(Frame {
            alg,
            elems,
            gram,
            gram_inv,
            projection,
        })
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.alg
    }

    pub fn elements(&self) -> &[Coords; 3] {
        &self.elems
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// Frame coordinates of the trace-zero part of `x`.
    pub fn coords_of(&self, x: &Coords) -> Vec<Rational> {
        self.projection.mul_vec(x)
    }

    pub fn to_algebra(&self, y: &[Rational]) -> Coords {
        std::array::from_fn(|k| self.elems.iter().zip(y).map(|(e, c)| &e[k] * c).sum())
    }

    /// Matrix of `z ↦ a·z·b` on frame coordinates; `a·z·b` must have trace
    /// zero for trace-zero `z`, which holds when `a = b̄` up to scalars or
    /// `a = b⁻¹`.
    pub fn sandwich_matrix(&self, a: &Coords, b: &Coords) -> Matrix {
        let cols: Vec<Vec<Rational>> = self
            .elems
            .iter()
            .map(|e| {
                let v = self.alg.mul_coords(&self.alg.mul_coords(a, e), b);
                self.coords_of(&v)
            })
            .collect();
        Matrix::from_cols(&cols)
    }

    /// Frame matrix of `z ↦ x̄·z·x`.
    pub fn conj_action(&self, x: &Coords) -> Matrix {
        self.sandwich_matrix(&self.alg.conj_coords(x), x)
    }

    /// Frame matrix of `z ↦ y⁻¹·z·y`.
    pub fn tau_matrix(&self, y: &QuatElement) -> Result<Matrix> {
        let inv = self.alg.inverse(y)?;
        Ok(self.sandwich_matrix(inv.coords(), y.coords()))
    }
}

/// A homogeneous polynomial of degree `ν` in frame coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicPoly {
    pub nu: u32,
    pub poly: Poly,
}

impl HarmonicPoly {
    /// Wraps `poly`, checking homogeneity and harmonicity for the frame.
    pub fn new(frame: &Frame, nu: u32, poly: Poly) -> Result<Self> {
        let poly = if poly.is_zero() { Poly::zero(3) } else { poly };
        if poly.nvars() != 3 {
            return Err(Error::Shape(format!("{} variables, expected 3", poly.nvars())));
        }
        if !poly.is_homogeneous(nu) {
            return Err(Error::Usage(format!("polynomial is not homogeneous of degree {nu}")));
        }
        if !laplacian(frame, &poly).is_zero() {
            return Err(Error::Usage("polynomial is not harmonic".into()));
        }
        Ok(HarmonicPoly { nu, poly })
    }
}

/// The frame-adapted Laplacian `Σ (G₀⁻¹)ᵢⱼ ∂ᵢ∂ⱼ`.
pub fn laplacian(frame: &Frame, p: &Poly) -> Poly {
    p.laplacian(frame.gram_inv(), 0)
}

/// `U_ν` with a fixed basis and the Gram matrix of the invariant pairing.
#[derive(Clone, Debug)]
pub struct HarmSpace {
    pub nu: u32,
    pub frame: Frame,
    pub basis: Vec<Poly>,
    pub pairing: Matrix,
    monomials: Vec<Vec<u32>>,
    /// Rows `pivots` of the monomial-coefficient matrix, inverted.
    pivots: Vec<usize>,
    pivot_inv: Matrix,
}

/// Basis of the degree-`ν` harmonic polynomials: the kernel of the adapted
/// Laplacian on the monomial space, one vector per free monomial.
pub fn harm_basis(nu: u32, frame: &Frame) -> HarmSpace {
    let mons = Poly::monomials(3, nu);
    let basis: Vec<Poly> = if nu < 2 {
        mons.iter()
            .map(|e| Poly::monomial(e.clone(), Rational::one()))
            .collect()
    } else {
        let low = Poly::monomials(3, nu - 2);
        let mut lap = Matrix::zeros(low.len(), mons.len());
        for (c, e) in mons.iter().enumerate() {
            let img = laplacian(frame, &Poly::monomial(e.clone(), Rational::one()));
            for (r, f) in low.iter().enumerate() {
                lap[(r, c)] = img.coeff(f);
            }
        }
        lap.kernel()
            .into_iter()
            .map(|v| Poly::from_terms(3, mons.iter().cloned().zip(v)))
            .collect()
    };
    let coeff_matrix = Matrix::from_cols(
        &basis
            .iter()
            .map(|b| mons.iter().map(|e| b.coeff(e)).collect())
            .collect::<Vec<_>>(),
    );
    let (_, piv) = coeff_matrix.transpose().rref();
    let sub = Matrix::from_rows(piv.iter().map(|&r| coeff_matrix.row(r).to_vec()).collect());
    let pivot_inv = sub.inverse().expect("independent basis");
    let d = basis.len();
    let mut pairing_m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            pairing_m[(i, j)] = fischer(frame, &basis[i], &basis[j]);
        }
    }
    HarmSpace {
        nu,
        frame: frame.clone(),
        basis,
        pairing: pairing_m,
        monomials: mons,
        pivots: piv,
        pivot_inv,
    }
}

impl HarmSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a polynomial in the basis; errors if it lies outside.
    pub fn coords(&self, p: &Poly) -> Result<Vec<Rational>> {
        let p = if p.is_zero() { Poly::zero(3) } else { p.clone() };
        if !p.is_homogeneous(self.nu) || p.nvars() != 3 {
            return Err(Error::Usage("polynomial has the wrong degree".into()));
        }
        let rhs: Vec<Rational> = self.pivots.iter().map(|&r| p.coeff(&self.monomials[r])).collect();
        let c = self.pivot_inv.mul_vec(&rhs);
        if self.poly_of(&c) != p {
            return Err(Error::Usage("polynomial is not in the harmonic space".into()));
        }
        Ok(c)
    }

    pub fn poly_of(&self, c: &[Rational]) -> Poly {
        let mut out = Poly::zero(3);
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                out = out.add(&b.scale(x));
            }
        }
        out
    }

    /// Matrix of `v ↦ v∘A` in the basis, for a frame-coordinate map `A`.
    pub fn substitution_matrix(&self, a: &Matrix) -> Matrix {
        let cols: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| {
                self.coords(&b.linear_substitute(a, 0))
                    .expect("substitution preserves harmonic space")
            })
            .collect();
        Matrix::from_cols(&cols)
    }

    /// Matrix of `τ_ν(y)`.
    pub fn tau(&self, y: &QuatElement) -> Result<Matrix> {
        Ok(self.substitution_matrix(&self.frame.tau_matrix(y)?))
    }

    /// `⟨⟨v, w⟩⟩` on coordinate vectors.
    pub fn pair(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let pw = self.pairing.mul_vec(w);
        v.iter().zip(&pw).map(|(a, b)| a * b).sum()
    }
}

/// `Σ α!·(v∘G₀⁻¹)_α·w_α`, the Fischer pairing with the adapted gradient.
fn fischer(frame: &Frame, v: &Poly, w: &Poly) -> Rational {
    let vt = v.linear_substitute(frame.gram_inv(), 0);
    let mut s = Rational::zero();
    for (e, c) in vt.terms() {
        let d = w.coeff(e);
        if d.is_zero() {
            continue;
        }
        let fact: i64 = e.iter().map(|&k| (1..=k as i64).product::<i64>()).product();
        s += &(c * &d * Rational::from(fact));
    }
    s
}

/// `⟨⟨v, w⟩⟩`, normalized so that `⟨⟨1, 1⟩⟩ = 1`.
pub fn pairing(frame: &Frame, v: &HarmonicPoly, w: &HarmonicPoly) -> Result<Rational> {
    if v.nu != w.nu {
        return Err(Error::DegreeMismatch(v.nu as usize, w.nu as usize));
    }
    Ok(fischer(frame, &v.poly, &w.poly))
}

/// `x ↦ P(y⁻¹xy)` on the trace-zero subspace.
pub fn tau_action(frame: &Frame, y: &QuatElement, p: &HarmonicPoly) -> Result<HarmonicPoly> {
    let m = frame.tau_matrix(y)?;
    Ok(HarmonicPoly {
        nu: p.nu,
        poly: p.poly.linear_substitute(&m, 0),
    })
}

/// `x ↦ P(ȳxy) = n(y)^ν·(τ(y)P)(x)`.
pub fn tau_action_integral(frame: &Frame, y: &QuatElement, p: &HarmonicPoly) -> Result<HarmonicPoly> {
    if frame.algebra().norm(y).is_zero() {
        return Err(Error::NotInvertible);
    }
    let m = frame.conj_action(y.coords());
    Ok(HarmonicPoly {
        nu: p.nu,
        poly: p.poly.linear_substitute(&m, 0),
    })
}

/// A quaternion with polynomial coordinates.
type SymElement = [Poly; 4];

fn sym_element(nvars: usize, off: usize) -> SymElement {
    std::array::from_fn(|k| Poly::var(nvars, off + k))
}

fn sym_mul(alg: &QuaternionAlgebra, a: &SymElement, b: &SymElement) -> SymElement {
    let n = a[0].nvars().max(b[0].nvars());
    let mut out: SymElement = std::array::from_fn(|_| Poly::zero(n));
    let c = alg.structure_constants();
    for i in 0..4 {
        for j in 0..4 {
            let prod = a[i].mul(&b[j]);
            if prod.is_zero() {
                continue;
            }
            for k in 0..4 {
                if !c[i][j][k].is_zero() {
                    out[k] = out[k].add(&prod.scale(&c[i][j][k]));
                }
            }
        }
    }
    out
}

fn sym_conj(alg: &QuaternionAlgebra, a: &SymElement) -> SymElement {
    let n = a[0].nvars();
    let mut t = Poly::zero(n);
    for (ak, tk) in a.iter().zip(alg.trace_form()) {
        t = t.add(&ak.scale(tk));
    }
    std::array::from_fn(|k| t.scale(&alg.unit_coords()[k]).sub(&a[k]))
}

fn sym_frame_coords(frame: &Frame, a: &SymElement) -> [Poly; 3] {
    let m = frame.projection();
    let n = a[0].nvars();
    std::array::from_fn(|r| {
        let mut p = Poly::zero(n);
        for (c, ac) in a.iter().enumerate() {
            if !m[(r, c)].is_zero() {
                p = p.add(&ac.scale(&m[(r, c)]));
            }
        }
        p
    })
}

/// `P_v(x₁, x₂) = v(pim(x₁·x̄₂))` in the eight algebra coordinates of
/// `(x₁, x₂)`.
pub fn lift_poly_deg2(frame: &Frame, v: &HarmonicPoly) -> Poly {
    let alg = frame.algebra();
    let x1 = sym_element(8, 0);
    let x2 = sym_element(8, 4);
    let prod = sym_mul(alg, &x1, &sym_conj(alg, &x2));
    let y = sym_frame_coords(frame, &prod);
    let v3 = if v.poly.is_zero() {
        Poly::zero(3)
    } else {
        v.poly.clone()
    };
    if v3.is_zero() {
        return Poly::zero(8);
    }
    v3.substitute(&y)
}

/// `x ↦ ⟨⟨v₁, z ↦ v₂(x̄zx)⟩⟩` in the four algebra coordinates of `x`.
pub fn lift_poly_deg1(frame: &Frame, v1: &HarmonicPoly, v2: &HarmonicPoly) -> Result<Poly> {
    if v1.nu != v2.nu {
        return Err(Error::DegreeMismatch(v1.nu as usize, v2.nu as usize));
    }
    let alg = frame.algebra();
    // variables: x₀..x₃ then z₁..z₃
    let x = sym_element(7, 0);
    let xbar = sym_conj(alg, &x);
    let z: SymElement = {
        let mut out: SymElement = std::array::from_fn(|_| Poly::zero(7));
        for (i, e) in frame.elements().iter().enumerate() {
            for k in 0..4 {
                if !e[k].is_zero() {
                    out[k] = out[k].add(&Poly::var(7, 4 + i).scale(&e[k]));
                }
            }
        }
        out
    };
    let conj = sym_mul(alg, &sym_mul(alg, &xbar, &z), &x);
    let y = sym_frame_coords(frame, &conj);
    let v2p = if v2.poly.is_zero() {
        return Ok(Poly::zero(4));
    } else {
        &v2.poly
    };
    let w = v2p.substitute(&y);
    let v1t = v1.poly.linear_substitute(frame.gram_inv(), 0);
    let mut out = Poly::zero(4);
    for (e, c) in w.terms() {
        let ze = &e[4..7];
        let d = v1t.coeff(ze);
        if d.is_zero() {
            continue;
        }
        let fact: i64 = ze.iter().map(|&k| (1..=k as i64).product::<i64>()).product();
        out.add_term(e[..4].to_vec(), c * &d * Rational::from(fact));
    }
    Ok(out)
}

/// Rewrites a polynomial in algebra coordinates of `n` stacked elements as a
/// polynomial in lattice coordinates relative to `basis`.
pub fn in_lattice_coords(p: &Poly, basis: &[Coords], copies: usize) -> Poly {
    let n = p.nvars();
    assert_eq!(n, 4 * copies);
    let subs: Vec<Poly> = (0..n)
        .map(|v| {
            let (blk, k) = (v / 4, v % 4);
            let coeffs: Vec<Rational> = (0..n)
                .map(|w| {
                    let (wb, i) = (w / 4, w % 4);
                    if wb == blk {
                        basis[i][k].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            Poly::linear(&coeffs)
        })
        .collect();
    p.substitute(&subs)
}

/// The 4-variable adapted Laplacian `Σ (G⁻¹)ᵢⱼ ∂ᵢ∂ⱼ` on the block of
/// variables `off..off+4` in algebra coordinates.
pub fn algebra_laplacian(alg: &QuaternionAlgebra, p: &Poly, off: usize) -> Poly {
    let g = alg.trace_gram().inverse().expect("definite");
    p.laplacian(&g, off)
}

/// Mixed operator `Σ (G⁻¹)ᵢⱼ ∂_{x₁,i}∂_{x₂,j}` on two stacked elements.
pub fn mixed_laplacian(alg: &QuaternionAlgebra, p: &Poly) -> Poly {
    let g = alg.trace_gram().inverse().expect("definite");
    let mut out = Poly::zero(p.nvars());
    for i in 0..4 {
        let di = p.partial(i);
        for j in 0..4 {
            if !g[(i, j)].is_zero() {
                out = out.add(&di.partial(4 + j).scale(&g[(i, j)]));
            }
        }
    }
    out
}

/// The element with algebra coordinates `e_k`.
pub fn algebra_basis(alg: &QuaternionAlgebra, k: usize) -> QuatElement {
    alg.element(basis_coords(k))
}
