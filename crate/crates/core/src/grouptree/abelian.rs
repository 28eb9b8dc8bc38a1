use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, l_part, lcm};
use crate::error::{Error, Result};

/// `C(n_1) x ... x C(n_r)` with `n_{i+1} | n_i`. The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// Exponent vector with respect to the standard generators `tau_1, ..., tau_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbElement(pub Vec<u64>);

impl AbElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for AbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<u64>> for AbelianGroup {
    type Error = Error;
    fn try_from(factors: Vec<u64>) -> Result<Self> {
        AbelianGroup::new(factors)
    }
}

impl From<AbelianGroup> for Vec<u64> {
    fn from(h: AbelianGroup) -> Self {
        h.factors
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C(1)");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "C({n})")?;
        }
        Ok(())
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidArgument(format!("invariant factor {bad} is below 2")));
        }
        for w in factors.windows(2) {
            if w[0] % w[1] != 0 {
                return Err(Error::InvalidArgument(format!(
                    "invariant factors must satisfy n_(i+1) | n_i, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        factors
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or(Error::Overflow("abelian group order"))?;
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        Self::new(vec![n])
    }

    /// Normalises an arbitrary product of cyclic groups to invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidArgument("cyclic order 0".into()));
        }
        let mut parts: Vec<u64> = orders.iter().copied().filter(|&n| n > 1).collect();
        // repeatedly replace (a, b) by (lcm, gcd) until a divisibility chain remains
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    let (a, b) = (parts[i], parts[j]);
                    let (l, g) = (lcm(a, b), gcd(a, b));
                    if (l, g) != (a, b) {
                        parts[i] = l;
                        parts[j] = g;
                        changed = true;
                    }
                }
            }
        }
        parts.retain(|&n| n > 1);
        Self::new(parts)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.first().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> AbElement {
        AbElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> AbElement {
        let mut v = vec![0; self.rank()];
        v[i] = 1 % self.factors[i];
        AbElement(v)
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<AbElement> {
        if coords.len() != self.rank() {
            return Err(Error::ShapeMismatch);
        }
        if coords.iter().zip(&self.factors).any(|(c, n)| c >= n) {
            return Err(Error::InvalidArgument(format!(
                "coordinates {coords:?} out of range for {self}"
            )));
        }
        Ok(AbElement(coords))
    }

    pub fn is_member(&self, t: &AbElement) -> bool {
        t.0.len() == self.rank() && t.0.iter().zip(&self.factors).all(|(c, n)| c < n)
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        AbElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        AbElement(a.0.iter().zip(&self.factors).map(|(x, n)| (n - x) % n).collect())
    }

    /// `k * a`, i.e. `a^k` written additively.
    pub fn scale(&self, a: &AbElement, k: i64) -> AbElement {
        AbElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &n)| {
                    let n = n as i128;
                    ((x as i128 * k as i128).rem_euclid(n)) as u64
                })
                .collect(),
        )
    }

    pub fn element_order(&self, t: &AbElement) -> u64 {
        t.0.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&c, &n)| lcm(acc, n / gcd(n, c)))
    }

    /// Canonical index: mixed radix, first coordinate most significant.
    pub fn index_of(&self, t: &AbElement) -> usize {
        t.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> AbElement {
        let mut v = vec![0; self.rank()];
        for (slot, &n) in v.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        AbElement(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = AbElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    fn check_prime_divisor(&self, l: u64) -> Result<()> {
        if !is_prime(l) || !self.order().is_multiple_of(l) {
            return Err(Error::NotDividing {
                divisor: l,
                value: self.order(),
            });
        }
        Ok(())
    }

    /// The l-Sylow subgroup H(l), enumerated in canonical order.
    pub fn sylow_part(&self, l: u64) -> Result<Vec<AbElement>> {
        self.check_prime_divisor(l)?;
        Ok(self
            .elements()
            .filter(|t| {
                let o = self.element_order(t);
                l_part(o, l) == o
            })
            .collect())
    }

    /// The l-component `t^(o(t)/o(t)(l))` of `t`.
    pub fn tau_l(&self, t: &AbElement, l: u64) -> Result<AbElement> {
        self.check_prime_divisor(l)?;
        let o = self.element_order(t);
        Ok(self.scale(t, (o / l_part(o, l)) as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_orders() {
        let h = AbelianGroup::new(vec![9, 3]).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.element_order(&AbElement(vec![3, 0])), 3);
        assert_eq!(h.element_order(&AbElement(vec![1, 1])), 9);
        assert_eq!(h.element_order(&h.zero()), 1);
    }

    #[test]
    fn sylow_of_c15() {
        let h = AbelianGroup::cyclic(15).unwrap();
        let s3: Vec<u64> = h.sylow_part(3).unwrap().iter().map(|t| t.0[0]).collect();
        assert_eq!(s3, vec![0, 5, 10]);
        assert_eq!(h.sylow_part(5).unwrap().len(), 5);
        assert!(matches!(h.sylow_part(7), Err(Error::NotDividing { .. })));
        assert!(h.sylow_part(4).is_err());
    }

    #[test]
    fn tau_l_of_c45() {
        let h = AbelianGroup::cyclic(45).unwrap();
        let t = h.generator(0);
        let t3 = h.tau_l(&t, 3).unwrap();
        assert_eq!(t3, AbElement(vec![5]));
        assert_eq!(h.element_order(&t3), 9);
    }

    #[test]
    fn rejects_broken_chains() {
        assert!(AbelianGroup::new(vec![3, 9]).is_err());
        assert!(AbelianGroup::new(vec![1]).is_err());
        assert_eq!(AbelianGroup::from_cyclic_orders(&[3, 5]).unwrap().factors(), &[15]);
        assert_eq!(
            AbelianGroup::from_cyclic_orders(&[2, 4, 6]).unwrap().factors(),
            &[12, 2, 2]
        );
    }

    #[test]
    fn index_round_trip() {
        let h = AbelianGroup::new(vec![6, 3]).unwrap();
        for i in 0..18 {
            assert_eq!(h.index_of(&h.element_at(i)), i);
        }
    }

    #[test]
    fn serde_validates() {
        let h: AbelianGroup = serde_json::from_str("[9,3]").unwrap();
        assert_eq!(h.order(), 27);
        assert!(serde_json::from_str::<AbelianGroup>("[3,9]").is_err());
    }
}
