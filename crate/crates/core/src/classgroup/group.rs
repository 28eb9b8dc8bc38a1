use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::field::{QuadField, Splitting};
use super::form::QuadForm;
use crate::arith::sqrt_mod_prime;
use crate::error::{Error, Result};
use crate::snf::abelian_structure;

/// An ideal class, as an index into its class group's list of reduced forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealClass {
    pub disc: i64,
    pub index: usize,
}

/// `Cl(k)` fully enumerated: every reduced form, the invariant-factor structure, and the
/// coordinates of each class in that structure (which makes the group law cheap).
#[derive(Debug, Clone)]
pub struct ClassGroup {
    field: QuadField,
    forms: Vec<QuadForm>,
    lookup: HashMap<QuadForm, usize>,
    invariant_factors: Vec<u64>,
    generators: Vec<usize>,
    coords: Vec<Vec<u64>>,
    by_coord: Vec<usize>,
}

/// All reduced primitive forms of discriminant `d < 0`, principal form first.
pub fn reduced_forms(d: i64) -> Vec<QuadForm> {
    let bound = crate::sieve::isqrt((-d / 3) as u64) as i64;
    let mut out = Vec::new();
    for a in 1..=bound.max(1) {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm::new(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
    }
    out.sort_by_key(|f| (f.a, f.b.abs(), -f.b, f.c));
    out
}

impl ClassGroup {
    pub fn new(field: QuadField) -> Result<Self> {
        let d = field.disc();
        let forms = match field {
            QuadField::Rationals => vec![QuadForm::new(1, 0, 0)],
            QuadField::Imaginary { disc } => reduced_forms(disc),
        };
        let lookup: HashMap<QuadForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let structure = if field.is_rationals() {
            abelian_structure(0, &[0], |a, _| a)
        } else {
            let all: Vec<usize> = (0..forms.len()).collect();
            let compose = |i: usize, j: usize| {
                let f = forms[i]
                    .compose(&forms[j])
                    .expect("reduced forms of one discriminant compose");
                lookup[&f]
            };
            abelian_structure(0, &all, compose)
        };
        if structure.order() != forms.len() as u64 {
            return Err(Error::Internal(format!(
                "D = {d}: structure order {} differs from {} reduced forms",
                structure.order(),
                forms.len()
            )));
        }
        let mut coords = vec![Vec::new(); forms.len()];
        let mut by_coord = vec![usize::MAX; forms.len()];
        for (idx, c) in structure.coords {
            by_coord[mixed_radix(&c, &structure.invariant_factors)] = idx;
            coords[idx] = c;
        }
        Ok(ClassGroup {
            field,
            forms,
            lookup,
            invariant_factors: structure.invariant_factors,
            generators: structure.generators,
            coords,
            by_coord,
        })
    }

    pub fn from_disc(d: i64) -> Result<Self> {
        Self::new(QuadField::new(d)?)
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn disc(&self) -> i64 {
        self.field.disc()
    }

    pub fn order(&self) -> u64 {
        self.forms.len() as u64
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn generators(&self) -> Vec<IdealClass> {
        self.generators.iter().map(|&i| self.class(i)).collect()
    }

    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    pub fn class(&self, index: usize) -> IdealClass {
        IdealClass {
            disc: self.disc(),
            index,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = IdealClass> + '_ {
        (0..self.forms.len()).map(|i| self.class(i))
    }

    pub fn principal(&self) -> IdealClass {
        self.class(0)
    }

    pub fn form(&self, x: IdealClass) -> QuadForm {
        self.forms[x.index]
    }

    pub fn coords(&self, x: IdealClass) -> &[u64] {
        &self.coords[x.index]
    }

    pub(crate) fn check_member(&self, x: IdealClass) -> Result<()> {
        if x.disc != self.disc() {
            return Err(Error::ParentMismatch(self.disc(), x.disc));
        }
        if x.index >= self.forms.len() {
            return Err(Error::InvalidArgument(format!("class index {} out of range", x.index)));
        }
        Ok(())
    }

    /// The class of an arbitrary primitive positive definite form of the right discriminant.
    pub fn class_of_form(&self, f: &QuadForm) -> Result<IdealClass> {
        if self.field.is_rationals() {
            return Err(Error::InvalidArgument("Q has no binary quadratic forms".into()));
        }
        if f.discriminant() != self.disc() {
            return Err(Error::DiscriminantMismatch(self.disc(), f.discriminant()));
        }
        let r = f.reduce()?;
        self.lookup
            .get(&r)
            .map(|&i| self.class(i))
            .ok_or_else(|| Error::Internal(format!("reduced form {r} missing from enumeration")))
    }

    fn class_at_coords(&self, c: &[u64]) -> IdealClass {
        self.class(self.by_coord[mixed_radix(c, &self.invariant_factors)])
    }

    pub fn compose(&self, x: IdealClass, y: IdealClass) -> IdealClass {
        let c: Vec<u64> = self.coords[x.index]
            .iter()
            .zip(&self.coords[y.index])
            .zip(&self.invariant_factors)
            .map(|((a, b), n)| (a + b) % n)
            .collect();
        self.class_at_coords(&c)
    }

    pub fn inverse(&self, x: IdealClass) -> IdealClass {
        self.pow_signed(x, -1)
    }

    pub fn pow(&self, x: IdealClass, e: u64) -> IdealClass {
        let c: Vec<u64> = self.coords[x.index]
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &n)| ((a as u128 * (e % n) as u128) % n as u128) as u64)
            .collect();
        self.class_at_coords(&c)
    }

    pub fn pow_signed(&self, x: IdealClass, e: i64) -> IdealClass {
        let c: Vec<u64> = self.coords[x.index]
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &n)| (a as i128 * e as i128).rem_euclid(n as i128) as u64)
            .collect();
        self.class_at_coords(&c)
    }

    pub fn element_order(&self, x: IdealClass) -> u64 {
        self.coords[x.index]
            .iter()
            .zip(&self.invariant_factors)
            .fold(1, |acc, (&a, &n)| crate::arith::lcm(acc, n / crate::arith::gcd(n, a)))
    }

    pub fn splitting(&self, p: u64) -> Result<Splitting> {
        self.field.splitting(p)
    }

    /// The class of the degree-1 prime `(p, b, (b^2 - D)/4p)` above `p`, where `b` is the
    /// smaller non-negative root of `b^2 = D mod 4p`. Its conjugate is the inverse class.
    pub fn prime_class(&self, p: u64) -> Result<IdealClass> {
        let split = self.splitting(p)?;
        if self.field.is_rationals() {
            return Ok(self.principal());
        }
        if split == Splitting::Inert {
            return Err(Error::InertPrime(p));
        }
        let f = prime_form(self.disc(), p)?;
        self.class_of_form(&f)
    }
}

/// The unreduced prime form `(p, b, c)` for a split or ramified prime `p`.
pub fn prime_form(d: i64, p: u64) -> Result<QuadForm> {
    let pi = p as i64;
    let four_p = 4 * pi as i128;
    let b = if p == 2 {
        (0..4i64)
            .find(|&b| ((b * b - d) as i128).rem_euclid(8) == 0)
            .ok_or(Error::InertPrime(p))?
    } else if d.rem_euclid(pi) == 0 {
        if d % 2 == 0 {
            0
        } else {
            pi
        }
    } else {
        let s = sqrt_mod_prime(d, p).ok_or(Error::InertPrime(p))? as i64;
        let x = if (s - d).rem_euclid(2) == 0 { s } else { s + pi };
        x.min(2 * pi - x)
    };
    let num = b as i128 * b as i128 - d as i128;
    debug_assert_eq!(num.rem_euclid(four_p), 0);
    Ok(QuadForm::new(pi, b, (num / four_p) as i64))
}

fn mixed_radix(c: &[u64], radices: &[u64]) -> usize {
    c.iter()
        .zip(radices)
        .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
}
