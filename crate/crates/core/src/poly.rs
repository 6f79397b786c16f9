//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Exponent vector of a monomial; its length is the number of variables.
pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponent, c: Rational) -> Self {
        let mut p = Poly::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Linear form `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(unit_exp(n, i), c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(nvars: usize, it: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Degree in the variables `range`, for every term.
    pub fn is_homogeneous_in(&self, range: std::ops::Range<usize>, d: u32) -> bool {
        self.terms.keys().all(|e| e[range.clone()].iter().sum::<u32>() == d)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn aligned(&self, other: &Poly) -> usize {
        if self.nvars == other.nvars || other.is_zero() {
            self.nvars
        } else if self.is_zero() {
            other.nvars
        } else {
            panic!("variable count mismatch: {} vs {}", self.nvars, other.nvars)
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.aligned(other);
        let mut out = self.clone();
        out.nvars = n;
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let n = self.aligned(other);
        let mut out = Poly::zero(n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * &Rational::from(e[i] as i64));
        }
        out
    }

    /// `Σᵢⱼ Mᵢⱼ ∂_{off+i} ∂_{off+j}`.
    pub fn laplacian(&self, m: &Matrix, off: usize) -> Poly {
        let k = m.rows();
        let mut out = Poly::zero(self.nvars);
        for i in 0..k {
            let di = self.partial(off + i);
            if di.is_zero() {
                continue;
            }
            for j in 0..k {
                if m[(i, j)].is_zero() {
                    continue;
                }
                out = out.add(&di.partial(off + j).scale(&m[(i, j)]));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= &xi.pow(k as i32);
                }
            }
            total += &t;
        }
        total
    }

    /// Replaces variable `i` by `subs[i]`; every substitute shares one
    /// variable count, which becomes the variable count of the result.
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        let n = subs.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(n), s.clone()]).collect();
        let mut out = Poly::zero(n);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().expect("nonempty").mul(&subs[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Linear change of variables `x ↦ M·y` (so `xᵢ = Σⱼ Mᵢⱼ yⱼ`), acting on the
    /// variable block `off..off+M.rows()`.
    pub fn linear_substitute(&self, m: &Matrix, off: usize) -> Poly {
        assert_eq!(m.rows(), m.cols());
        let n = self.nvars;
        let subs: Vec<Poly> = (0..n)
            .map(|i| {
                if i >= off && i < off + m.rows() {
                    let mut p = Poly::zero(n);
                    for j in 0..m.cols() {
                        p.add_term(unit_exp(n, off + j), m[(i - off, j)].clone());
                    }
                    p
                } else {
                    Poly::var(n, i)
                }
            })
            .collect();
        self.substitute(&subs)
    }

    /// Embeds into a ring with `total` variables, placing variable `i` at
    /// position `off + i`.
    pub fn embed(&self, total: usize, off: usize) -> Poly {
        assert!(off + self.nvars <= total);
        let mut out = Poly::zero(total);
        for (e, c) in &self.terms {
            let mut f = vec![0; total];
            f[off..off + self.nvars].copy_from_slice(e);
            out.add_term(f, c.clone());
        }
        out
    }

    /// Integer-coefficient form `P = num / denom` for fast evaluation at
    /// integer points.
    pub fn compile(&self) -> CompiledPoly {
        let den = Rational::lcm_denominators(self.terms.values());
        let d = Rational::from(den.clone());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let v = (c * &d).numer().clone();
                (e.clone(), v)
            })
            .collect();
        CompiledPoly::from_parts(self.nvars, terms, den)
    }

    /// Monomials of total degree `d` in `n` variables, in descending
    /// lexicographic order of exponent vectors.
    pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
        fn rec(n: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for k in (0..=d).rev() {
                prefix.push(k);
                rec(n, d - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        rec(n, d, &mut Vec::new(), &mut out);
        out
    }
}

fn unit_exp(n: usize, i: usize) -> Exponent {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, &Rational> = self.terms.iter().map(|(e, c)| (exp_key(e), c)).collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, Rational>::deserialize(deserializer)?;
        let mut nvars = None;
        let mut p = Poly::zero(0);
        for (k, c) in map {
            let e = parse_exp_key(&k).map_err(D::Error::custom)?;
            match nvars {
                None => {
                    nvars = Some(e.len());
                    p = Poly::zero(e.len());
                }
                Some(n) if n != e.len() => {
                    return Err(D::Error::custom(format!(
                        "exponent {k:?} has {} entries, expected {n}",
                        e.len()
                    )))
                }
                _ => {}
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

pub fn exp_key(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_exp_key(s: &str) -> Result<Exponent> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent key {s:?}")))
        })
        .collect()
}

/// A polynomial with integer coefficients over a common denominator, for
/// fast repeated evaluation at integer points.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    terms: Vec<(Exponent, BigInt)>,
    small: Option<Vec<(Exponent, i128)>>,
    denom: BigInt,
}

impl CompiledPoly {
    fn from_parts(nvars: usize, terms: Vec<(Exponent, BigInt)>, denom: BigInt) -> Self {
        let small = terms.iter().map(|(e, c)| c.to_i128().map(|v| (e.clone(), v))).collect();
        CompiledPoly {
            nvars,
            terms,
            small,
            denom,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Numerator value at an integer point, if it fits in `i128`.
    pub fn eval_num_i128(&self, x: &[i64]) -> Option<i128> {
        let small = self.small.as_ref()?;
        let mut total: i128 = 0;
        for (e, c) in small {
            let mut t = *c;
            for (&xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t.checked_mul(xi as i128)?;
                }
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    pub fn eval_num(&self, x: &[i64]) -> BigInt {
        if let Some(v) = self.eval_num_i128(x) {
            return BigInt::from(v);
        }
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (&xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            total += t;
        }
        total
    }

    pub fn eval(&self, x: &[i64]) -> Rational {
        Rational::from_bigints(self.eval_num(x), self.denom.clone())
    }

    /// Fixes the leading `x.len()` variables; the remaining variables keep
    /// their order and the denominator is unchanged.
    pub fn fix_prefix(&self, x: &[i64]) -> CompiledPoly {
        let k = x.len();
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (&xi, &p) in x.iter().zip(&e[..k]) {
                for _ in 0..p {
                    t *= xi;
                }
            }
            if t.is_zero() {
                continue;
            }
            *acc.entry(e[k..].to_vec()).or_insert_with(BigInt::zero) += t;
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        CompiledPoly::from_parts(self.nvars - k, terms, self.denom.clone())
    }
}
