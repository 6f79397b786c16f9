//! Quaternion algebras given by structure constants.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Coordinates of an element relative to the algebra basis `f₀ … f₃`.
pub type Coords = [Rational; 4];

/// A rank-4 algebra over the rationals with multiplication `fᵢfⱼ = Σₖ cᵢⱼₖ fₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    names: [String; 4],
    constants: Vec<Vec<Coords>>,
    unit: Coords,
    trace_form: Coords,
    id: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElement {
    coords: Coords,
    algebra: u64,
}

impl QuatElement {
    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }
}

pub fn zero_coords() -> Coords {
    std::array::from_fn(|_| Rational::zero())
}

pub fn basis_coords(i: usize) -> Coords {
    std::array::from_fn(|k| if k == i { Rational::one() } else { Rational::zero() })
}

pub fn coords_from_slice(v: &[Rational]) -> Coords {
    assert_eq!(v.len(), 4, "expected four coordinates");
    std::array::from_fn(|k| v[k].clone())
}

impl QuaternionAlgebra {
    /// Builds the algebra and checks associativity, the unit law, and that
    /// the trace form `tr(x·ȳ)` is positive definite.
    pub fn new(names: [String; 4], constants: Vec<Vec<Coords>>, unit: Coords) -> Result<Self> {
        if constants.len() != 4 || constants.iter().any(|r| r.len() != 4) {
            return Err(Error::InvalidAlgebra("structure constants must be 4×4×4".into()));
        }
        let mut h = DefaultHasher::new();
        constants.hash(&mut h);
        unit.hash(&mut h);
        let mut alg = QuaternionAlgebra {
            names,
            constants,
            unit,
            trace_form: zero_coords(),
            id: h.finish(),
        };
        for i in 0..4 {
            let e = basis_coords(i);
            if alg.mul_coords(&alg.unit, &e) != e || alg.mul_coords(&e, &alg.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit law fails for basis element {i}")));
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let ij = alg.mul_coords(&basis_coords(i), &basis_coords(j));
                for k in 0..4 {
                    let left = alg.mul_coords(&ij, &basis_coords(k));
                    let jk = alg.mul_coords(&basis_coords(j), &basis_coords(k));
                    let right = alg.mul_coords(&basis_coords(i), &jk);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        // reduced trace = half the trace of left multiplication
        let half = Rational::new(1, 2);
        alg.trace_form = std::array::from_fn(|i| {
            let l = alg.left_matrix(&basis_coords(i));
            l.trace() * &half
        });
        for i in 0..4 {
            let e = basis_coords(i);
            let prod = alg.mul_coords(&e, &alg.conj_coords(&e));
            let n = alg.scalar_part(&prod);
            match n {
                Some(_) => {}
                None => {
                    return Err(Error::InvalidAlgebra(format!(
                        "x·x̄ is not a scalar for basis element {i}"
                    )))
                }
            }
        }
        if !alg.trace_gram().is_positive_definite() {
            return Err(Error::InvalidAlgebra("trace form is not positive definite".into()));
        }
        Ok(alg)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn names(&self) -> &[String; 4] {
        &self.names
    }

    pub fn structure_constants(&self) -> &[Vec<Coords>] {
        &self.constants
    }

    pub fn unit_coords(&self) -> &Coords {
        &self.unit
    }

    /// Coefficients `tᵢ = tr(fᵢ)`.
    pub fn trace_form(&self) -> &Coords {
        &self.trace_form
    }

    pub fn element(&self, coords: Coords) -> QuatElement {
        QuatElement {
            coords,
            algebra: self.id,
        }
    }

    pub fn element_from(&self, v: &[Rational]) -> QuatElement {
        self.element(coords_from_slice(v))
    }

    pub fn from_i64(&self, v: [i64; 4]) -> QuatElement {
        self.element(v.map(Rational::from))
    }

    pub fn one(&self) -> QuatElement {
        self.element(self.unit.clone())
    }

    pub fn basis(&self, i: usize) -> QuatElement {
        self.element(basis_coords(i))
    }

    pub fn scalar(&self, c: &Rational) -> QuatElement {
        self.element(self.unit.clone().map(|u| u * c))
    }

    fn check(&self, x: &QuatElement) -> Result<()> {
        if x.algebra != self.id {
            return Err(Error::Usage("element belongs to a different algebra".into()));
        }
        Ok(())
    }

    pub fn mul_coords(&self, x: &Coords, y: &Coords) -> Coords {
        let mut out = zero_coords();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in self.constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&s * c);
                    }
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &QuatElement, y: &QuatElement) -> Result<QuatElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(self.mul_coords(&x.coords, &y.coords)))
    }

    /// Multiplication for elements known to come from this algebra.
    pub fn mul(&self, x: &QuatElement, y: &QuatElement) -> QuatElement {
        self.multiply(x, y).expect("element from another algebra")
    }

    pub fn add(&self, x: &QuatElement, y: &QuatElement) -> QuatElement {
        self.element(std::array::from_fn(|k| &x.coords[k] + &y.coords[k]))
    }

    pub fn sub(&self, x: &QuatElement, y: &QuatElement) -> QuatElement {
        self.element(std::array::from_fn(|k| &x.coords[k] - &y.coords[k]))
    }

    pub fn scale(&self, x: &QuatElement, s: &Rational) -> QuatElement {
        self.element(std::array::from_fn(|k| &x.coords[k] * s))
    }

    /// Matrix of `z ↦ x·z` acting on coordinate columns.
    pub fn left_matrix(&self, x: &Coords) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..4).map(|j| self.mul_coords(x, &basis_coords(j)).to_vec()).collect();
        Matrix::from_cols(&cols)
    }

    /// Matrix of `z ↦ z·x` acting on coordinate columns.
    pub fn right_matrix(&self, x: &Coords) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..4).map(|j| self.mul_coords(&basis_coords(j), x).to_vec()).collect();
        Matrix::from_cols(&cols)
    }

    pub fn trace_coords(&self, x: &Coords) -> Rational {
        x.iter().zip(&self.trace_form).map(|(a, t)| a * t).sum()
    }

    pub fn conj_coords(&self, x: &Coords) -> Coords {
        let t = self.trace_coords(x);
        std::array::from_fn(|k| &self.unit[k] * &t - &x[k])
    }

    pub fn norm_coords(&self, x: &Coords) -> Rational {
        let p = self.mul_coords(x, &self.conj_coords(x));
        self.scalar_part(&p).expect("x·x̄ is scalar")
    }

    /// `Some(c)` if `x = c·1`.
    pub fn scalar_part(&self, x: &Coords) -> Option<Rational> {
        let k = self.unit.iter().position(|u| !u.is_zero())?;
        let c = &x[k] / &self.unit[k];
        (0..4).all(|i| x[i] == &self.unit[i] * &c).then_some(c)
    }

    pub fn trace(&self, x: &QuatElement) -> Rational {
        self.trace_coords(&x.coords)
    }

    pub fn conj(&self, x: &QuatElement) -> QuatElement {
        self.element(self.conj_coords(&x.coords))
    }

    pub fn norm(&self, x: &QuatElement) -> Rational {
        self.norm_coords(&x.coords)
    }

    /// `(x̄, tr(x), n(x))`, checking `x + x̄ = tr(x)` and `x·x̄ = n(x)`.
    pub fn conj_trace_norm(&self, x: &QuatElement) -> Result<(QuatElement, Rational, Rational)> {
        self.check(x)?;
        let c = self.conj(x);
        let t = self.trace(x);
        let sum = self.add(x, &c);
        if self.scalar_part(&sum.coords) != Some(t.clone()) {
            return Err(Error::InvalidAlgebra("x + x̄ is not tr(x)".into()));
        }
        let n = self
            .scalar_part(&self.mul_coords(&x.coords, &c.coords))
            .ok_or_else(|| Error::InvalidAlgebra("x·x̄ is not scalar".into()))?;
        Ok((c, t, n))
    }

    pub fn inverse(&self, x: &QuatElement) -> Result<QuatElement> {
        let n = self.norm(x);
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.scale(&self.conj(x), &n.recip()))
    }

    /// `tr(x·ȳ)`.
    pub fn bilinear(&self, x: &Coords, y: &Coords) -> Rational {
        self.trace_coords(&self.mul_coords(x, &self.conj_coords(y)))
    }

    /// Gram matrix of the algebra basis under `tr(x·ȳ)`.
    pub fn trace_gram(&self) -> Matrix {
        let b: Vec<Coords> = (0..4).map(basis_coords).collect();
        self.gram_of(&b)
    }

    pub fn gram_of(&self, basis: &[Coords]) -> Matrix {
        let n = basis.len();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.bilinear(&basis[i], &basis[j]);
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        g
    }

    /// `x − tr(x)/2`.
    pub fn pure_part(&self, x: &Coords) -> Coords {
        let h = self.trace_coords(x) * Rational::new(1, 2);
        std::array::from_fn(|k| &x[k] - &(&self.unit[k] * &h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;
    use crate::rational::q;

    #[test]
    fn fixture_products() {
        let a = fixture::algebra();
        let f = |i| a.basis(i);
        // f1·f2 = f1 + f2 − f3
        assert_eq!(a.mul(&f(1), &f(2)), a.from_i64([0, 1, 1, -1]));
        // f1² = −2 + f1
        assert_eq!(a.mul(&f(1), &f(1)), a.from_i64([-2, 1, 0, 0]));
        let (c, t, n) = a.conj_trace_norm(&f(3)).unwrap();
        assert_eq!((c, t, n), (a.from_i64([0, 0, 0, -1]), q(0, 1), q(5, 1)));
        let (c, t, n) = a.conj_trace_norm(&f(2)).unwrap();
        assert_eq!((c, t, n), (a.from_i64([1, 0, -1, 0]), q(1, 1), q(3, 1)));
        let (c, t, n) = a.conj_trace_norm(&a.one()).unwrap();
        assert_eq!((c, t, n), (a.one(), q(2, 1), q(1, 1)));
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let a = fixture::algebra();
        let h = fixture::hurwitz_algebra();
        assert!(matches!(a.multiply(&a.one(), &h.one()), Err(Error::Usage(_))));
    }
}
