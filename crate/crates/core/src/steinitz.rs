//! Steinitz classes from ramification data and the exponent arithmetic behind the
//! realizability formulas.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_mul, gcd, is_prime, prime_divisors};
use crate::classgroup::{ClassGroup, IdealClass, Splitting};
use crate::error::{Error, Result};
use crate::grouptree::AbelianGroup;

pub use crate::arith::l_part;

/// A degree-1 prime above `p` (or its conjugate) with tame ramification index `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationDatum {
    pub p: u64,
    #[serde(default)]
    pub conjugate: bool,
    pub e: u64,
}

impl RamificationDatum {
    pub fn new(p: u64, e: u64) -> Self {
        RamificationDatum { p, conjugate: false, e }
    }

    pub fn conjugate(p: u64, e: u64) -> Self {
        RamificationDatum { p, conjugate: true, e }
    }
}

fn require_divides(d: u64, n: u64) -> Result<()> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotDividing { divisor: d, value: n });
    }
    Ok(())
}

/// `(e - 1) N / e`, the exponent of a prime with ramification index `e` in the discriminant
/// of a tame Galois extension of degree `N`.
pub fn discriminant_exponent(e: u64, n: u64) -> Result<u64> {
    require_divides(e, n)?;
    checked_mul(e - 1, n / e, "discriminant exponent")
}

/// The class of `prod p^((e-1)N/(2e))`, which is the Steinitz class when `N` is odd or the
/// 2-Sylow subgroup is not cyclic.
pub fn steinitz_from_ramification(
    cg: &ClassGroup,
    ram: &[RamificationDatum],
    n: u64,
    two_sylow_noncyclic: bool,
) -> Result<IdealClass> {
    if n.is_multiple_of(2) && !two_sylow_noncyclic {
        return Err(Error::InvalidArgument(
            "even degree with cyclic 2-Sylow subgroup needs the quadratic correction, which is not supported".into(),
        ));
    }
    let mut acc = cg.principal();
    for r in ram {
        if cg.splitting(r.p)? == Splitting::Inert {
            return Err(Error::InertPrime(r.p));
        }
        if r.e == 0 || r.e % r.p == 0 {
            return Err(Error::InvalidArgument(format!(
                "ramification index {} at {} is not tame",
                r.e, r.p
            )));
        }
        let d = discriminant_exponent(r.e, n)?;
        if d % 2 == 1 {
            let msg = format!("discriminant exponent {d} at p = {} is odd", r.p);
            return Err(if n % 2 == 1 {
                Error::Internal(msg)
            } else {
                Error::InvalidArgument(msg)
            });
        }
        let mut x = cg.prime_class(r.p)?;
        if r.conjugate {
            x = cg.inverse(x);
        }
        acc = cg.compose(acc, cg.pow(x, d / 2));
    }
    Ok(acc)
}

/// `st(K/k) = st(E/k)^[K:E] * N(st(K/E))`, with the norm supplied by the caller.
pub fn tower_steinitz(cg: &ClassGroup, st_e: IdealClass, deg_ke: u64, norm_st_ke: IdealClass) -> Result<IdealClass> {
    cg.check_member(st_e)?;
    cg.check_member(norm_st_ke)?;
    Ok(cg.compose(cg.pow(st_e, deg_ke), norm_st_ke))
}

/// The gcd over primes `l | e` of `(l - 1) m / e(l)`, and whether it divides `(e - 1) m / e`.
pub fn mcdle_gcd(e: u64, m: u64) -> Result<(u64, bool)> {
    if e < 2 {
        return Err(Error::InvalidArgument(format!("e = {e} must be at least 2")));
    }
    require_divides(e, m)?;
    let mut g = 0;
    for l in prime_divisors(e) {
        g = gcd(g, checked_mul(l - 1, m / l_part(e, l), "gcd lemma")?);
    }
    let target = discriminant_exponent(e, m)?;
    Ok((g, target % g == 0))
}

fn require_odd(n: u64, what: &str) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("{what} = {n} must be odd")));
    }
    Ok(())
}

/// `sum_j (n_j - 1)/2 * n/n_j + (n_1 - 1)/2 * n/n_1` for `H = C(n_1) x ... x C(n_r)`.
pub fn alpha_abelian(h: &AbelianGroup) -> Result<u64> {
    let n = h.order();
    require_odd(n, "|H|")?;
    let term = |nj: u64| checked_mul((nj - 1) / 2, n / nj, "alpha");
    let mut total = 0u64;
    for &nj in h.factors() {
        total = total.checked_add(term(nj)?).ok_or(Error::Overflow("alpha"))?;
    }
    if let Some(&n1) = h.factors().first() {
        total = total.checked_add(term(n1)?).ok_or(Error::Overflow("alpha"))?;
    }
    Ok(total)
}

fn check_l_data(l: u64, o_tau: u64, n: u64) -> Result<()> {
    if l == 2 || !is_prime(l) {
        return Err(Error::InvalidArgument(format!("l = {l} must be an odd prime")));
    }
    if l_part(o_tau, l) != o_tau || o_tau == 1 {
        return Err(Error::InvalidArgument(format!(
            "o(tau) = {o_tau} is not a power of {l}"
        )));
    }
    require_odd(n, "n")?;
    require_divides(o_tau, n)
}

/// `((l - 1) n/l, (o - 1) n/o, 3(l - 1)/2)`, the last one exactly as the lemma states it.
pub fn alphas_l(l: u64, o_tau: u64, n: u64) -> Result<(u64, u64, u64)> {
    check_l_data(l, o_tau, n)?;
    Ok((
        checked_mul(l - 1, n / l, "alpha_l1")?,
        checked_mul(o_tau - 1, n / o_tau, "alpha_l2")?,
        checked_mul(3, (l - 1) / 2, "alpha_l3")?,
    ))
}

/// `3(l - 1)/2 * n/l`, the third exponent as produced by the discriminant in the proof.
pub fn alpha_l3_scaled(l: u64, o_tau: u64, n: u64) -> Result<u64> {
    check_l_data(l, o_tau, n)?;
    checked_mul(3 * ((l - 1) / 2), n / l, "alpha_l3")
}

/// `beta_l` computed both as `gcd((l-1)n/l, (o-1)n/o, 3(l-1)/2 n/l)` and as
/// `gcd((o-1)n/o, (l-1)/2 n/l)`; disagreement is an internal error.
pub fn beta_l(l: u64, o_tau: u64, n: u64) -> Result<u64> {
    let (a1, a2, _) = alphas_l(l, o_tau, n)?;
    let a3 = alpha_l3_scaled(l, o_tau, n)?;
    let three = gcd(gcd(a1, a2), a3);
    let two = gcd(a2, checked_mul((l - 1) / 2, n / l, "beta_l")?);
    if three != two {
        return Err(Error::Internal(format!(
            "beta_l({l}, {o_tau}, {n}): three-term gcd {three} differs from two-term gcd {two}"
        )));
    }
    Ok(two)
}

/// `(l - 1)/2 * m n / o(tau)`, the exponent on `W(k, E)` in the semidirect formula.
pub fn theorem_exponent(l: u64, o_tau: u64, m: u64, n: u64) -> Result<u64> {
    if l == 2 || !is_prime(l) {
        return Err(Error::InvalidArgument(format!("l = {l} must be an odd prime")));
    }
    if !o_tau.is_multiple_of(l) {
        return Err(Error::NotDividing {
            divisor: l,
            value: o_tau,
        });
    }
    let mn = checked_mul(m, n, "theorem exponent")?;
    require_divides(o_tau, mn)?;
    checked_mul((l - 1) / 2, mn / o_tau, "theorem exponent")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodExponent {
    pub l: u64,
    pub exp: u64,
    pub half: Option<u64>,
}

/// For each prime `l | e`: `(l - 1) M / e(l)`, and half of it when even.
pub fn good_exponents(e: u64, m: u64) -> Result<Vec<GoodExponent>> {
    require_divides(e, m)?;
    prime_divisors(e)
        .into_iter()
        .map(|l| {
            let exp = checked_mul(l - 1, m / l_part(e, l), "good exponent")?;
            Ok(GoodExponent {
                l,
                exp,
                half: (exp % 2 == 0).then_some(exp / 2),
            })
        })
        .collect()
}
