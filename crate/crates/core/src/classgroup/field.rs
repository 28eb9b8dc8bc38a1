use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_squarefree, kronecker};
use crate::error::{Error, Result};

/// Largest supported |D|.
pub const MAX_ABS_DISC: i64 = 10_000_000;

/// The base field: the rationals or an imaginary quadratic field of fundamental discriminant D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadField {
    Rationals,
    Imaginary { disc: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

pub fn is_fundamental_negative(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let m = d.rem_euclid(4);
    if m == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if m == 0 {
        let q = d / 4;
        return matches!(q.rem_euclid(4), 2 | 3) && is_squarefree(q.unsigned_abs());
    }
    false
}

impl QuadField {
    /// `0` encodes the rationals; anything else must be a fundamental negative discriminant.
    pub fn new(disc: i64) -> Result<Self> {
        if disc == 0 {
            return Ok(QuadField::Rationals);
        }
        Self::imaginary(disc)
    }

    pub fn imaginary(disc: i64) -> Result<Self> {
        if disc < -MAX_ABS_DISC {
            return Err(Error::DiscriminantTooLarge(disc));
        }
        if !is_fundamental_negative(disc) {
            return Err(Error::NotFundamental(disc));
        }
        Ok(QuadField::Imaginary { disc })
    }

    /// The discriminant, `0` for the rationals.
    pub fn disc(&self) -> i64 {
        match self {
            QuadField::Rationals => 0,
            QuadField::Imaginary { disc } => *disc,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, QuadField::Rationals)
    }

    /// Decomposition of the rational prime `p` in the field.
    pub fn splitting(&self, p: u64) -> Result<Splitting> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(match self {
            QuadField::Rationals => Splitting::Split,
            QuadField::Imaginary { disc } => {
                if disc.unsigned_abs() % p == 0 {
                    Splitting::Ramified
                } else if kronecker(*disc, p) == 1 {
                    Splitting::Split
                } else {
                    Splitting::Inert
                }
            }
        })
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadField::Rationals => write!(f, "Q"),
            QuadField::Imaginary { disc } => write!(f, "Q(sqrt({disc}))"),
        }
    }
}
