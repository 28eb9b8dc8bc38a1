//! Small-integer number theory shared by every module.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn checked_mul(a: u64, b: u64, ctx: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(ctx))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 17u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The exact power of `l` dividing `n` (written n(l) in the literature).
pub fn l_part(n: u64, l: u64) -> u64 {
    assert!(n >= 1 && l >= 2, "l_part needs n >= 1 and l >= 2");
    let mut n = n;
    let mut out = 1;
    while n.is_multiple_of(l) {
        n /= l;
        out *= l;
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs odd n");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol (d/n) for n >= 1.
pub fn kronecker(d: i64, n: u64) -> i32 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    while n.is_multiple_of(2) {
        n /= 2;
        if d % 2 == 0 {
            return 0;
        }
        if matches!(d.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    if n == 1 {
        sign
    } else {
        sign * jacobi(d, n)
    }
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks). `None` if `a` is a non-residue.
pub fn sqrt_mod_prime(a: i64, p: u64) -> Option<u64> {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulm(t2, t2);
            i += 1;
        }
        let b = mod_pow(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_part_examples() {
        assert_eq!(l_part(45, 3), 9);
        assert_eq!(l_part(45, 5), 5);
        assert_eq!(l_part(45, 2), 1);
    }

    #[test]
    fn kronecker_matches_definition_at_two() {
        assert_eq!(kronecker(-23, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
    }

    #[test]
    fn kronecker_against_euler_criterion() {
        for &p in &[3u64, 5, 7, 11, 13, 101, 997] {
            for d in -60i64..0 {
                let r = d.rem_euclid(p as i64) as u64;
                let euler = if r == 0 {
                    0
                } else if mod_pow(r, (p - 1) / 2, p) == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(d, p), euler, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn tonelli_shanks_roots_square_back() {
        for &p in &[3u64, 5, 13, 17, 97, 257, 65537, 1_000_003] {
            for a in 0..200i64 {
                if let Some(r) = sqrt_mod_prime(a, p) {
                    assert_eq!(mod_pow(r, 2, p), (a as u64) % p);
                } else {
                    assert_eq!(jacobi(a, p), -1);
                }
            }
        }
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -30i128..30 {
            for b in -30i128..30 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g as u64, gcd(a.unsigned_abs() as u64, b.unsigned_abs() as u64));
            }
        }
    }

    #[test]
    fn divisors_and_phi() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
