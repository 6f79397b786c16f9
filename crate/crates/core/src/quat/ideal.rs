//! Ideal equivalence, stable sublattices modulo a prime, and two-sided ideals.

use super::algebra::Coords;
use super::enumerate::short_vectors;
use super::lattice::{Lattice, LatticeOrder, QuatIdeal};
use crate::arith::modp;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// An element `γ` with `I = γ·J`, or `None` if the right ideals lie in
/// different classes. Candidates are the elements `b ∈ J·Ī` of norm
/// `n(I)·n(J)`, tried in lexicographic coordinate order, with `γ = b̄/n(J)`.
pub fn find_equivalence(i: &QuatIdeal, j: &QuatIdeal) -> Result<Option<Coords>> {
    if i.right_order() != j.right_order() {
        return Err(Error::Usage("ideals have different right orders".into()));
    }
    Ok(equivalence_candidates(i, j)?.into_iter().next())
}

/// All `γ` with `I = γ·J`, in a deterministic order.
pub fn equivalence_candidates(i: &QuatIdeal, j: &QuatIdeal) -> Result<Vec<Coords>> {
    let alg = i.lattice().algebra().clone();
    let prod = j.lattice().product(&i.lattice().conj());
    let target = i.norm() * j.norm();
    let inv_nj = j.norm().recip();
    let mut out = Vec::new();
    for v in short_vectors(prod.gram(), &target)? {
        let b = prod.combo(&v);
        let gamma = alg.conj_coords(&b).map(|x| x * &inv_nj);
        if j.lattice().left_mul(&gamma)? == *i.lattice() {
            out.push(gamma);
        }
    }
    Ok(out)
}

/// Whether `I = γ·J` for some nonzero `γ`.
pub fn ideal_equivalent(i: &QuatIdeal, j: &QuatIdeal) -> Result<bool> {
    Ok(find_equivalence(i, j)?.is_some())
}

/// Reduced-row-echelon bases of all 2-dimensional subspaces of `F_pⁿ`.
pub fn planes_mod_p(p: i64, n: usize) -> Vec<[Vec<i64>; 2]> {
    let mut out = Vec::new();
    for c1 in 0..n {
        for c2 in c1 + 1..n {
            // free positions: row 1 at columns > c1 except c2; row 2 at columns > c2
            let free1: Vec<usize> = (c1 + 1..n).filter(|&c| c != c2).collect();
            let free2: Vec<usize> = (c2 + 1..n).collect();
            let total = free1.len() + free2.len();
            let count = (p as usize).pow(total as u32);
            for code in 0..count {
                let mut k = code;
                let mut r1 = vec![0i64; n];
                let mut r2 = vec![0i64; n];
                r1[c1] = 1;
                r2[c2] = 1;
                for &c in &free1 {
                    r1[c] = (k % p as usize) as i64;
                    k /= p as usize;
                }
                for &c in &free2 {
                    r2[c] = (k % p as usize) as i64;
                    k /= p as usize;
                }
                out.push([r1, r2]);
            }
        }
    }
    out
}

fn in_plane(w: &[Vec<i64>; 2], v: &[i64], p: i64) -> bool {
    let c1 = w[0].iter().position(|&x| x != 0).expect("pivot");
    let c2 = w[1].iter().position(|&x| x != 0).expect("pivot");
    let a = modp(v[c1], p);
    let b = modp(v[c2], p);
    v.iter()
        .enumerate()
        .all(|(k, &x)| modp(x - a * w[0][k] - b * w[1][k], p) == 0)
}

fn integral_matrix(m: &Matrix) -> Result<Vec<Vec<i64>>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Usage("multiplier does not preserve the lattice".into()))
}

/// All lattices `M` with `pL ⊂ M ⊂ L`, `[L : M] = p²`, stable under left
/// multiplication by every element of `left` and right multiplication by
/// every element of `right`. The elements must preserve `L`.
pub fn stable_sublattices(l: &Lattice, p: u64, left: &[Coords], right: &[Coords]) -> Result<Vec<Lattice>> {
    let p = p as i64;
    let mut mats = Vec::new();
    for x in left {
        mats.push(integral_matrix(&l.mult_matrix(x, true))?);
    }
    for x in right {
        mats.push(integral_matrix(&l.mult_matrix(x, false))?);
    }
    let mut out = Vec::new();
    for w in planes_mod_p(p, 4) {
        let stable = mats.iter().all(|m| {
            w.iter().all(|v| {
                let img: Vec<i64> = (0..4).map(|r| (0..4).map(|c| m[r][c] * v[c]).sum()).collect();
                in_plane(&w, &img, p)
            })
        });
        if !stable {
            continue;
        }
        let pr = Rational::from(p);
        let mut gens: Vec<Coords> = l.basis().iter().map(|b| b.clone().map(|x| x * &pr)).collect();
        gens.push(l.combo(&w[0]));
        gens.push(l.combo(&w[1]));
        out.push(Lattice::from_generators(l.algebra().clone(), &gens)?);
    }
    Ok(out)
}

/// Right ideals `J ⊂ I` of index `p²` with the same right order `R`.
pub fn neighbours(i: &QuatIdeal, r: &LatticeOrder, p: u64) -> Result<Vec<Lattice>> {
    stable_sublattices(i.lattice(), p, &[], r.lattice().basis())
}

/// The two-sided `R`-ideal of reduced norm `p` contained in `R` with index
/// `p²`; it exists only for primes dividing the discriminant.
pub fn two_sided_ideal(r: &LatticeOrder, p: u64) -> Result<QuatIdeal> {
    let basis = r.lattice().basis();
    let found = stable_sublattices(r.lattice(), p, basis, basis)?;
    match found.len() {
        0 => Err(Error::NoTwoSidedIdeal(p)),
        1 => {
            let ideal = QuatIdeal::new(found.into_iter().next().expect("one"))?;
            if ideal.left_order() != r || ideal.right_order() != r {
                return Err(Error::NoTwoSidedIdeal(p));
            }
            Ok(ideal)
        }
        k => Err(Error::Unsupported(format!(
            "{k} two-sided ideals of index {p}² found; expected exactly one"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_count() {
        // Gaussian binomial [4 choose 2]_p = (p²+1)(p²+p+1)
        assert_eq!(planes_mod_p(2, 4).len(), 5 * 7);
        assert_eq!(planes_mod_p(3, 4).len(), 10 * 13);
    }
}
