//! Dense exact linear algebra over the rationals, plus integer Hermite normal
//! forms for lattice bases.

use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::upoly::UPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.row_vecs()).finish()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_cols(cols: &[Vec<Rational>]) -> Self {
        Matrix::from_rows(cols.to_vec()).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= &v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A v = 0}`, one vector per free column,
    /// in increasing order of the free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= &v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Solves `A x = b` for square invertible `A`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        self.inverse().map(|inv| inv.mul_vec(b))
    }

    /// Diagonal of the `L D Lᵗ` factorization of a symmetric matrix, or
    /// `None` if some leading minor vanishes.
    pub fn ldl(&self) -> Option<(Matrix, Vec<Rational>)> {
        let n = self.rows;
        let mut l = Matrix::identity(n);
        let mut d = vec![Rational::zero(); n];
        for j in 0..n {
            let mut dj = self[(j, j)].clone();
            for k in 0..j {
                dj -= &(&l[(j, k)] * &l[(j, k)] * &d[k]);
            }
            if dj.is_zero() {
                return None;
            }
            for i in j + 1..n {
                let mut s = self[(i, j)].clone();
                for k in 0..j {
                    s -= &(&l[(i, k)] * &l[(j, k)] * &d[k]);
                }
                l[(i, j)] = s / &dj;
            }
            d[j] = dj;
        }
        Some((l, d))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && matches!(self.ldl(), Some((_, d)) if d.iter().all(Rational::is_positive))
    }

    /// Characteristic polynomial `det(X·I − A)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> UPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self * &next;
            coeffs[n - k] = -(am.trace() / Rational::from(k as i64));
            m = next;
        }
        UPoly::new(coeffs)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut r = Matrix::identity(self.rows);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += &v;
                }
            }
        }
        out
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-style Hermite normal form of an integer matrix; returns the nonzero
/// rows (a basis of the row lattice), each with a positive pivot.
pub fn hnf_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..ncols {
        // gcd-eliminate column c among rows[pivot_row..]
        loop {
            let nz: Vec<usize> = (pivot_row..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).expect("nonempty");
            rows.swap(pivot_row, best);
            for i in pivot_row + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[pivot_row][c]);
                let piv = rows[pivot_row].clone();
                for (x, p) in rows[i].iter_mut().zip(&piv) {
                    *x -= &q * p;
                }
            }
        }
        let Some(p) = (pivot_row..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        if rows[pivot_row][c].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    // reduce entries above pivots
    for r in 0..rows.len() {
        let c = rows[r].iter().position(|x| !x.is_zero()).expect("pivot");
        for above in 0..r {
            let q = rows[above][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let piv = rows[r].clone();
            for (x, p) in rows[above].iter_mut().zip(&piv) {
                *x -= &q * p;
            }
        }
    }
    rows
}

/// Basis (in Hermite normal form) of the Z-span of rational vectors.
pub fn lattice_basis(gens: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let den = Rational::lcm_denominators(gens.iter().flatten());
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|x| x.numer() * (&den / x.denom())).collect())
        .collect();
    let d = Rational::from(den);
    hnf_rows(rows)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Rational::from(x) / &d).collect())
        .collect()
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(it: I) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn det_and_inverse() {
        let a = Matrix::from_i64(&[&[2, 1, 1, 0], &[1, 4, -1, 1], &[1, -1, 6, 2], &[0, 1, 2, 10]]);
        assert_eq!(a.det(), q(289, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(4));
        assert!(a.is_positive_definite());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn char_poly_of_companion() {
        // x^2 - 3x + 2
        let a = Matrix::from_i64(&[&[0, -2], &[1, 3]]);
        assert_eq!(a.char_poly(), UPoly::from_i64(&[2, -3, 1]));
    }

    #[test]
    fn hnf_basis_spans() {
        let gens = vec![vec![q(2, 1), q(0, 1)], vec![q(0, 1), q(3, 1)], vec![q(1, 1), q(1, 1)]];
        let b = lattice_basis(&gens);
        assert_eq!(b.len(), 2);
        let m = Matrix::from_rows(b);
        assert_eq!(m.det().abs(), q(1, 1));
    }
}
