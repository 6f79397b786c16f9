//! Small-integer helpers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// `x mod p` in `0..p`.
pub fn modp(x: i64, p: i64) -> i64 {
    x.rem_euclid(p)
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, p, modp(a, p));
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    assert_eq!(r, 1, "{a} is not invertible mod {p}");
    modp(t, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(prime_divisors(34), vec![2, 17]);
        assert_eq!(primes_up_to(12), vec![2, 3, 5, 7, 11]);
        assert_eq!(inv_mod(3, 17) * 3 % 17, 1);
        assert!(!is_prime(1) && is_prime(17));
    }
}
