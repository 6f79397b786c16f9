//! Full-rank lattices in a quaternion algebra, orders and ideals.

use std::sync::Arc;

use super::algebra::{basis_coords, coords_from_slice, Coords, QuatElement, QuaternionAlgebra};
use super::enumerate::short_vectors;
use crate::error::{Error, Result};
use crate::linalg::{lattice_basis, Matrix};
use crate::rational::Rational;

/// A rank-4 Z-lattice inside the algebra, with its trace-form Gram matrix.
#[derive(Clone, Debug)]
pub struct Lattice {
    alg: Arc<QuaternionAlgebra>,
    basis: Vec<Coords>,
    gram: Matrix,
}

impl PartialEq for Lattice {
    /// Equality as sets, independent of the chosen basis.
    fn eq(&self, other: &Self) -> bool {
        self.alg.id() == other.alg.id() && self.hnf() == other.hnf()
    }
}

impl Lattice {
    pub fn new(alg: Arc<QuaternionAlgebra>, basis: Vec<Coords>) -> Result<Self> {
        if basis.len() != 4 {
            return Err(Error::Degenerate(format!("{} basis vectors, expected 4", basis.len())));
        }
        let m = Matrix::from_rows(basis.iter().map(|b| b.to_vec()).collect());
        if m.det().is_zero() {
            return Err(Error::Degenerate("basis vectors are linearly dependent".into()));
        }
        let gram = alg.gram_of(&basis);
        Ok(Lattice { alg, basis, gram })
    }

    /// Lattice spanned by arbitrary generators, with a Hermite-normal-form basis.
    pub fn from_generators(alg: Arc<QuaternionAlgebra>, gens: &[Coords]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = gens.iter().map(|g| g.to_vec()).collect();
        let b = lattice_basis(&rows);
        if b.len() != 4 {
            return Err(Error::Degenerate(format!("generators span rank {}", b.len())));
        }
        Lattice::new(alg, b.iter().map(|r| coords_from_slice(r)).collect())
    }

    pub fn standard(alg: Arc<QuaternionAlgebra>) -> Self {
        Lattice::new(alg, (0..4).map(basis_coords).collect()).expect("standard basis")
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.alg
    }

    pub fn basis(&self) -> &[Coords] {
        &self.basis
    }

    pub fn basis_element(&self, i: usize) -> QuatElement {
        self.alg.element(self.basis[i].clone())
    }

    /// `Gᵢⱼ = tr(bᵢ·b̄ⱼ)`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Rows are basis vectors in algebra coordinates.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.basis.iter().map(|b| b.to_vec()).collect())
    }

    /// Canonical basis (rows of the Hermite normal form).
    pub fn hnf(&self) -> Vec<Vec<Rational>> {
        lattice_basis(&self.basis.iter().map(|b| b.to_vec()).collect::<Vec<_>>())
    }

    pub fn canonical(&self) -> Lattice {
        Lattice::new(
            self.alg.clone(),
            self.hnf().iter().map(|r| coords_from_slice(r)).collect(),
        )
        .expect("full rank")
    }

    /// Element `Σ vᵢ bᵢ`.
    pub fn combo(&self, v: &[i64]) -> Coords {
        std::array::from_fn(|k| {
            self.basis
                .iter()
                .zip(v)
                .filter(|(_, &c)| c != 0)
                .map(|(b, &c)| &b[k] * &Rational::from(c))
                .sum()
        })
    }

    pub fn combo_rational(&self, v: &[Rational]) -> Coords {
        std::array::from_fn(|k| self.basis.iter().zip(v).map(|(b, c)| &b[k] * c).sum())
    }

    /// Coordinates of `x` relative to the lattice basis.
    pub fn coords_of(&self, x: &Coords) -> Vec<Rational> {
        self.basis_matrix().transpose().solve(x).expect("basis is invertible")
    }

    pub fn contains(&self, x: &Coords) -> bool {
        self.coords_of(x).iter().all(Rational::is_integer)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        let inv = self.basis_matrix().inverse().expect("basis is invertible");
        let rel = &other.basis_matrix() * &inv;
        rel.row_vecs().iter().flatten().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Lattice {
        let b = self.basis.iter().map(|v| v.clone().map(|x| x * c)).collect();
        Lattice::new(self.alg.clone(), b).expect("nonzero scale")
    }

    pub fn conj(&self) -> Lattice {
        let b = self.basis.iter().map(|v| self.alg.conj_coords(v)).collect();
        Lattice::new(self.alg.clone(), b).expect("conjugation is bijective")
    }

    /// `x·L`.
    pub fn left_mul(&self, x: &Coords) -> Result<Lattice> {
        let b = self.basis.iter().map(|v| self.alg.mul_coords(x, v)).collect();
        Lattice::new(self.alg.clone(), b)
    }

    /// `L·x`.
    pub fn right_mul(&self, x: &Coords) -> Result<Lattice> {
        let b = self.basis.iter().map(|v| self.alg.mul_coords(v, x)).collect();
        Lattice::new(self.alg.clone(), b)
    }

    /// Z-span of all products `a·b` with `a ∈ self`, `b ∈ other`.
    pub fn product(&self, other: &Lattice) -> Lattice {
        let mut gens = Vec::with_capacity(16);
        for a in &self.basis {
            for b in &other.basis {
                gens.push(self.alg.mul_coords(a, b));
            }
        }
        Lattice::from_generators(self.alg.clone(), &gens).expect("product of full-rank lattices")
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let gens: Vec<Coords> = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::from_generators(self.alg.clone(), &gens).expect("full rank")
    }

    /// Dual lattice for the standard coordinate pairing.
    fn coordinate_dual(&self) -> Lattice {
        let inv = self.basis_matrix().inverse().expect("invertible").transpose();
        Lattice::new(
            self.alg.clone(),
            inv.row_vecs().iter().map(|r| coords_from_slice(r)).collect(),
        )
        .expect("full rank")
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        self.coordinate_dual()
            .sum(&other.coordinate_dual())
            .coordinate_dual()
            .canonical()
    }

    /// Index-style volume: `det(gram)`.
    pub fn gram_det(&self) -> Rational {
        self.gram.det()
    }

    /// `{x : x·L ⊆ L}`.
    pub fn left_order_lattice(&self) -> Lattice {
        let mut acc: Option<Lattice> = None;
        for b in &self.basis {
            let inv = self.alg.inverse(&self.alg.element(b.clone())).expect("nonzero basis");
            let piece = self.right_mul(inv.coords()).expect("invertible");
            acc = Some(match acc {
                None => piece,
                Some(a) => a.intersect(&piece),
            });
        }
        acc.expect("four basis vectors").canonical()
    }

    /// `{x : L·x ⊆ L}`.
    pub fn right_order_lattice(&self) -> Lattice {
        let mut acc: Option<Lattice> = None;
        for b in &self.basis {
            let inv = self.alg.inverse(&self.alg.element(b.clone())).expect("nonzero basis");
            let piece = self.left_mul(inv.coords()).expect("invertible");
            acc = Some(match acc {
                None => piece,
                Some(a) => a.intersect(&piece),
            });
        }
        acc.expect("four basis vectors").canonical()
    }

    /// Checks the order axioms, naming the first basis pair whose product
    /// leaves the lattice.
    pub fn check_order(&self) -> Result<()> {
        if !self.contains(self.alg.unit_coords()) {
            return Err(Error::InvalidOrder("does not contain 1".into()));
        }
        for i in 0..4 {
            for j in 0..4 {
                let p = self.alg.mul_coords(&self.basis[i], &self.basis[j]);
                if !self.contains(&p) {
                    return Err(Error::NotClosed(i, j));
                }
            }
        }
        for (i, b) in self.basis.iter().enumerate() {
            if !self.alg.trace_coords(b).is_integer() || !self.alg.norm_coords(b).is_integer() {
                return Err(Error::InvalidOrder(format!("basis element {i} is not integral")));
            }
        }
        Ok(())
    }

    /// Matrix of `z ↦ x·z` (left) or `z ↦ z·x` in lattice coordinates,
    /// acting on coordinate columns.
    pub fn mult_matrix(&self, x: &Coords, left: bool) -> Matrix {
        let cols: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| {
                let p = if left {
                    self.alg.mul_coords(x, b)
                } else {
                    self.alg.mul_coords(b, x)
                };
                self.coords_of(&p)
            })
            .collect();
        Matrix::from_cols(&cols)
    }

    /// The Gram matrix scaled by `1/c`, as an integer matrix if it is one.
    pub fn scaled_integral_gram(&self, c: &Rational) -> Option<Vec<Vec<i64>>> {
        self.gram
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(|x| (x / c).to_i64()).collect::<Option<Vec<_>>>())
            .collect()
    }
}

/// A lattice verified to be an order, with its number of norm-one elements.
#[derive(Clone, Debug)]
pub struct LatticeOrder {
    lattice: Lattice,
    unit_count: usize,
}

impl PartialEq for LatticeOrder {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
    }
}

impl LatticeOrder {
    pub fn new(lattice: Lattice) -> Result<Self> {
        lattice.check_order()?;
        if !lattice.gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let unit_count = short_vectors(&lattice.gram, &Rational::one())?.len();
        Ok(LatticeOrder { lattice, unit_count })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn gram(&self) -> &Matrix {
        self.lattice.gram()
    }

    pub fn unit_count(&self) -> usize {
        self.unit_count
    }

    /// Norm-one elements in lattice coordinates.
    pub fn units(&self) -> Vec<Coords> {
        short_vectors(self.gram(), &Rational::one())
            .expect("positive definite")
            .iter()
            .map(|v| self.lattice.combo(v))
            .collect()
    }

    /// Reduced discriminant `√det(gram)`.
    pub fn discriminant(&self) -> Result<u64> {
        let d = self
            .lattice
            .gram_det()
            .exact_root(2)
            .ok_or_else(|| Error::InvalidOrder("Gram determinant is not a square".into()))?;
        d.to_i64()
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| Error::InvalidOrder("non-integral discriminant".into()))
    }
}

/// A lattice together with its left and right orders and reduced norm.
#[derive(Clone, Debug)]
pub struct QuatIdeal {
    lattice: Lattice,
    left: LatticeOrder,
    right: LatticeOrder,
    norm: Rational,
}

impl QuatIdeal {
    pub fn new(lattice: Lattice) -> Result<Self> {
        let (left, right) = left_right_order(&lattice)?;
        let ratio = lattice.gram_det() / right.lattice.gram_det();
        let norm = ratio
            .exact_root(4)
            .ok_or_else(|| Error::InvalidOrder("ideal norm is not rational".into()))?;
        Ok(QuatIdeal {
            lattice,
            left,
            right,
            norm,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn gram(&self) -> &Matrix {
        self.lattice.gram()
    }

    pub fn left_order(&self) -> &LatticeOrder {
        &self.left
    }

    pub fn right_order(&self) -> &LatticeOrder {
        &self.right
    }

    pub fn norm(&self) -> &Rational {
        &self.norm
    }
}

/// `({x : xI ⊆ I}, {x : Ix ⊆ I})`, each verified to be an order.
pub fn left_right_order(lattice: &Lattice) -> Result<(LatticeOrder, LatticeOrder)> {
    let l = LatticeOrder::new(lattice.left_order_lattice())?;
    let r = LatticeOrder::new(lattice.right_order_lattice())?;
    Ok((l, r))
}

/// Gram matrix of a lattice under `tr(x·ȳ)`.
pub fn gram_matrix(l: &Lattice) -> Result<Matrix> {
    if !l.gram.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(l.gram.clone())
}
