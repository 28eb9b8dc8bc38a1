use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, gcd_i64};
use crate::error::{Error, Result};

/// A positive definite binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl From<[i64; 3]> for QuadForm {
    fn from([a, b, c]: [i64; 3]) -> Self {
        QuadForm { a, b, c }
    }
}

impl From<QuadForm> for [i64; 3] {
    fn from(f: QuadForm) -> Self {
        [f.a, f.b, f.c]
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        let d = self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128;
        d as i64
    }

    /// The identity form of discriminant `d`.
    pub fn principal(d: i64) -> Self {
        let b = d.rem_euclid(2);
        QuadForm {
            a: 1,
            b,
            c: (b * b - d) / 4,
        }
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i64(gcd_i64(self.a, self.b), self.c) == 1
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        if !(b.abs() <= a && a <= c) {
            return false;
        }
        if (b.abs() == a || a == c) && b < 0 {
            return false;
        }
        true
    }

    fn check(&self) -> Result<()> {
        if self.a <= 0 || self.c <= 0 || self.discriminant() >= 0 {
            return Err(Error::NonPositiveForm(self.a, self.b, self.c));
        }
        if !self.is_primitive() {
            return Err(Error::NonPrimitiveForm(self.a, self.b, self.c));
        }
        Ok(())
    }

    /// The reduced form properly equivalent to `self`.
    pub fn reduce(&self) -> Result<QuadForm> {
        self.check()?;
        let d = self.discriminant() as i128;
        let (mut a, mut b) = (self.a as i128, self.b as i128);
        let c_of = |a: i128, b: i128| (b * b - d) / (4 * a);
        let mut c = self.c as i128;
        loop {
            // normalise b into (-a, a]
            if !(-a < b && b <= a) {
                let r = (a - b).div_euclid(2 * a);
                b += 2 * r * a;
                c = c_of(a, b);
            }
            if a > c {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        Ok(QuadForm {
            a: a as i64,
            b: b as i64,
            c: c as i64,
        })
    }

    /// The inverse class representative `(a, -b, c)`, reduced.
    pub fn opposite(&self) -> Result<QuadForm> {
        QuadForm::new(self.a, -self.b, self.c).reduce()
    }

    /// Gauss composition followed by reduction.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm> {
        let d = self.discriminant();
        if d != other.discriminant() {
            return Err(Error::DiscriminantMismatch(d, other.discriminant()));
        }
        self.check()?;
        other.check()?;
        let (a1, b1) = (self.a as i128, self.b as i128);
        let (a2, b2, c2) = (other.a as i128, other.b as i128, other.c as i128);
        let d = d as i128;

        // u a1 + v a2 + w s = g = gcd(a1, a2, s), s = (b1 + b2) / 2
        let s = (b1 + b2) / 2;
        let (g1, _, y1) = ext_gcd(a1, a2);
        let (g, x2, w) = ext_gcd(g1, s);
        let v = x2 * y1;

        let a3 = a1 * a2 / (g * g);
        let mut b3 = b2 + 2 * a2 / g * (v * (s - b2) - w * c2);
        b3 = b3.rem_euclid(2 * a3);
        let c3 = (b3 * b3 - d) / (4 * a3);
        debug_assert_eq!(b3 * b3 - 4 * a3 * c3, d);
        QuadForm::new(a3 as i64, b3 as i64, c3 as i64).reduce()
    }

    /// Value at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }
}
