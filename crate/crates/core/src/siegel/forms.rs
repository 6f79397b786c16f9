//! Half-integral binary forms, GL₂(ℤ) reduction and finite Fourier
//! expansions of scalar Siegel forms of degree 2.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::io::ExpansionDoc;
use crate::rational::Rational;

/// The form `[[a, b/2], [b/2, c]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryForm { a, b, c }
    }

    /// `4ac − b²`.
    pub fn disc(&self) -> i64 {
        4 * self.a * self.c - self.b * self.b
    }

    pub fn is_semidefinite(&self) -> bool {
        self.a >= 0 && self.c >= 0 && self.disc() >= 0
    }

    pub fn is_singular(&self) -> bool {
        self.disc() == 0
    }

    /// Fixed by a substitution of determinant −1 (for reduced forms).
    pub fn is_ambiguous(&self) -> bool {
        self.b == 0 || self.a == self.b || self.a == self.c
    }

    pub fn is_reduced(&self) -> bool {
        if self.a == 0 {
            return self.b == 0 && self.c >= 0;
        }
        0 <= self.b && self.b <= self.a && self.a <= self.c
    }

    /// `Uᵗ·T·U` for an integral 2×2 matrix `U = [[u00, u01], [u10, u11]]`.
    pub fn transform(&self, u: [[i64; 2]; 2]) -> BinaryForm {
        let (a, b, c) = (self.a, self.b, self.c);
        let q = |x: i64, y: i64| a * x * x + b * x * y + c * y * y;
        let (p, r) = ((u[0][0], u[1][0]), (u[0][1], u[1][1]));
        let a2 = q(p.0, p.1);
        let c2 = q(r.0, r.1);
        let b2 = 2 * a * p.0 * r.0 + b * (p.0 * r.1 + p.1 * r.0) + 2 * c * p.1 * r.1;
        BinaryForm::new(a2, b2, c2)
    }
}

impl Ord for BinaryForm {
    /// By discriminant, then `a`, `b`, `c`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.disc(), self.a, self.b, self.c).cmp(&(other.disc(), other.a, other.b, other.c))
    }
}

impl PartialOrd for BinaryForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// The reduced form `0 ≤ b ≤ a ≤ c` (or `[0, 0, c]` when singular) in the
/// GL₂(ℤ)-class of `t`, with the determinant of the reducing substitution.
pub fn reduce_form(t: BinaryForm) -> Result<(BinaryForm, i32)> {
    if !t.is_semidefinite() {
        return Err(Error::Indefinite(t.a, t.b, t.c));
    }
    let (mut a, mut b, mut c) = (t.a, t.b, t.c);
    let mut det = 1;
    loop {
        if a == 0 {
            // semidefinite forces b = 0
            break;
        }
        if b.abs() > a {
            // x ↦ x + n·y
            let n = (-b).div_euclid(2 * a);
            let n = if (-b - 2 * a * n) * 2 > 2 * a { n + 1 } else { n };
            c += b * n + a * n * n;
            b += 2 * a * n;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            det = -det;
            continue;
        }
        if b.abs() <= a {
            break;
        }
    }
    if b < 0 {
        b = -b;
        det = -det;
    }
    Ok((BinaryForm::new(a, b, c), det))
}

/// Reduced forms with `4ac − b² ≤ bound`, plus singular forms `[0, 0, c]`
/// with `c ≤ (bound + 1)/4`, in the expansion order.
pub fn reduced_forms(bound: i64) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    if bound < 0 {
        return out;
    }
    for c in 0..=singular_bound(bound) {
        out.push(BinaryForm::new(0, 0, c));
    }
    let mut a = 1;
    while 3 * a * a <= bound {
        for b in 0..=a {
            let cmax = (bound + b * b) / (4 * a);
            for c in a..=cmax {
                out.push(BinaryForm::new(a, b, c));
            }
        }
        a += 1;
    }
    out.sort();
    out
}

/// Largest `c` of a stored singular form `[0, 0, c]`; also the largest `c`
/// of any nonsingular reduced form below the bound.
pub fn singular_bound(bound: i64) -> i64 {
    (bound + 1) / 4
}

/// Fourier coefficients `a(T)` of a scalar weight-`k` form, stored on
/// reduced forms; other indices follow from `a(T[U]) = det(U)^k a(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierExpansionSiegel2 {
    pub weight: u32,
    pub level: u64,
    pub bound: i64,
    entries: BTreeMap<BinaryForm, Rational>,
}

impl FourierExpansionSiegel2 {
    pub fn new(weight: u32, level: u64, bound: i64) -> Self {
        FourierExpansionSiegel2 {
            weight,
            level,
            bound,
            entries: BTreeMap::new(),
        }
    }

    /// Whether `t` (reduced) lies in the range this expansion covers.
    pub fn covers(&self, t: &BinaryForm) -> bool {
        if t.is_singular() {
            t.c <= singular_bound(self.bound)
        } else {
            t.disc() <= self.bound
        }
    }

    /// Stores `v` at the reduced form of `t`, transported by `det(U)^k`.
    pub fn set(&mut self, t: BinaryForm, v: Rational) -> Result<()> {
        let (r, det) = reduce_form(t)?;
        if !self.covers(&r) {
            return Err(Error::Truncation {
                a: t.a,
                b: t.b,
                c: t.c,
                bound: self.bound,
            });
        }
        let v = if det < 0 && self.weight % 2 == 1 { -v } else { v };
        if self.weight % 2 == 1 && r.is_ambiguous() && !v.is_zero() {
            return Err(Error::Usage(format!("odd weight forces a({r}) = 0")));
        }
        if v.is_zero() {
            self.entries.remove(&r);
        } else {
            self.entries.insert(r, v);
        }
        Ok(())
    }

    /// `a(t)`, or a truncation error outside the covered range.
    pub fn get(&self, t: BinaryForm) -> Result<Rational> {
        let (r, det) = reduce_form(t)?;
        if !self.covers(&r) {
            return Err(Error::Truncation {
                a: t.a,
                b: t.b,
                c: t.c,
                bound: self.bound,
            });
        }
        let v = self.entries.get(&r).cloned().unwrap_or_else(Rational::zero);
        Ok(if det < 0 && self.weight % 2 == 1 { -v } else { v })
    }

    /// Nonzero coefficients in expansion order.
    pub fn entries(&self) -> &BTreeMap<BinaryForm, Rational> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::new(self.weight, self.level, self.bound);
        if !c.is_zero() {
            out.entries = self.entries.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    /// `self + other` on the common range.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::DegreeMismatch(self.weight as usize, other.weight as usize));
        }
        let bound = self.bound.min(other.bound);
        let mut out = Self::new(self.weight, self.level, bound);
        for t in reduced_forms(bound) {
            let v = self.get(t)? + other.get(t)?;
            if !v.is_zero() {
                out.entries.insert(t, v);
            }
        }
        Ok(out)
    }

    /// Copy restricted to a smaller bound.
    pub fn truncate(&self, bound: i64) -> Self {
        let mut out = Self::new(self.weight, self.level, bound.min(self.bound));
        out.entries = self
            .entries
            .iter()
            .filter(|(t, _)| out.covers(t))
            .map(|(t, v)| (*t, v.clone()))
            .collect();
        out
    }

    /// Builds from per-form values, dropping zeros.
    pub fn from_values<I: IntoIterator<Item = (BinaryForm, Rational)>>(
        weight: u32,
        level: u64,
        bound: i64,
        values: I,
    ) -> Result<Self> {
        let mut out = Self::new(weight, level, bound);
        for (t, v) in values {
            out.set(t, v)?;
        }
        Ok(out)
    }

    pub fn to_doc(&self) -> ExpansionDoc {
        ExpansionDoc {
            weight: self.weight,
            level: self.level,
            bound: self.bound,
            entries: self.entries.iter().map(|(t, v)| (t.a, t.b, t.c, v.clone())).collect(),
        }
    }

    pub fn from_doc(doc: &ExpansionDoc) -> Result<Self> {
        let mut out = Self::new(doc.weight, doc.level, doc.bound);
        for (a, b, c, v) in &doc.entries {
            let t = BinaryForm::new(*a, *b, *c);
            if !t.is_reduced() {
                return Err(Error::Parse(format!("entry {t} is not reduced")));
            }
            out.set(t, v.clone())?;
        }
        Ok(out)
    }
}

/// `Σ a(m) qᵐ` for `m ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub weight: u32,
    pub level: u64,
    pub bound: u64,
    pub coeffs: BTreeMap<u64, Rational>,
}

impl QExpansion {
    pub fn new(weight: u32, level: u64, bound: u64) -> Self {
        QExpansion {
            weight,
            level,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn get(&self, m: u64) -> Rational {
        self.coeffs.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, m: u64, v: Rational) {
        if v.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        assert_eq!(
            reduce_form(BinaryForm::new(2, 1, 3)).unwrap(),
            (BinaryForm::new(2, 1, 3), 1)
        );
        // swap (det −1) then b ↦ −b (det −1)
        assert_eq!(
            reduce_form(BinaryForm::new(3, -1, 2)).unwrap(),
            (BinaryForm::new(2, 1, 3), 1)
        );
        assert_eq!(
            reduce_form(BinaryForm::new(1, 2, 1)).unwrap().0,
            BinaryForm::new(0, 0, 1)
        );
        assert!(matches!(
            reduce_form(BinaryForm::new(1, 3, 1)),
            Err(Error::Indefinite(1, 3, 1))
        ));
        assert_eq!(
            reduce_form(BinaryForm::new(0, 0, 0)).unwrap().0,
            BinaryForm::new(0, 0, 0)
        );
    }

    #[test]
    fn reduction_matches_substitution() {
        let t = BinaryForm::new(2, 1, 3);
        for u in [
            [[1, 1], [0, 1]],
            [[0, 1], [1, 0]],
            [[2, 1], [1, 1]],
            [[1, 0], [3, -1]],
            [[-1, 2], [1, -3]],
        ] {
            let s = t.transform(u);
            let det = (u[0][0] * u[1][1] - u[0][1] * u[1][0]) as i32;
            let (r, d) = reduce_form(s).unwrap();
            assert_eq!(r, t);
            assert_eq!(d, det, "{s}");
        }
    }

    #[test]
    fn odd_weight_lookup_sign() {
        let mut f = FourierExpansionSiegel2::new(3, 17, 30);
        f.set(BinaryForm::new(2, 1, 3), Rational::from(32)).unwrap();
        assert_eq!(f.get(BinaryForm::new(2, -1, 3)).unwrap(), Rational::from(-32));
        assert_eq!(f.get(BinaryForm::new(3, 1, 2)).unwrap(), Rational::from(-32));
        assert!(matches!(
            f.get(BinaryForm::new(10, 1, 10)),
            Err(Error::Truncation { .. })
        ));
        assert!(f.set(BinaryForm::new(2, 0, 3), Rational::one()).is_err());
    }

    #[test]
    fn reduced_form_listing() {
        let forms = reduced_forms(30);
        assert!(forms.iter().all(|t| t.is_reduced()));
        assert!(forms.contains(&BinaryForm::new(2, 1, 3)));
        assert!(forms.windows(2).all(|w| w[0] < w[1]));
    }
}
