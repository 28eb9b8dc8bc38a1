//! Cyclotomic Galois groups over `k` as subgroups of `(Z/mZ)*`, the subgroups cut out by an
//! action on a cyclic subgroup, and `W`-groups computed from degree-1 primes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, kronecker};
use crate::classgroup::{ClassGroup, ClassSubgroup, QuadField, QuadForm, Splitting};
use crate::error::{Error, Result};
use crate::grouptree::{AbElement, AbelianGroup, Action};
use crate::sieve::primes_in;

/// Initial bounds never exceed this; later windows keep doubling.
pub const MAX_INITIAL_BOUND: u64 = 1_000_000;
pub const DEFAULT_CEILING: u64 = 100_000_000;
pub const CEILING_ENV: &str = "STEINITZ_PRIME_CEILING";

/// A subgroup of `(Z/mZ)*`, stored as sorted residues. For `m = 1` the single residue is `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycloSubgroup {
    modulus: u64,
    members: Vec<u64>,
}

impl fmt::Display for CycloSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members.iter().map(u64::to_string).collect();
        write!(f, "{{{}}} mod {}", m.join(","), self.modulus)
    }
}

impl CycloSubgroup {
    /// Validates that `members` is a subgroup of the units mod `modulus`.
    pub fn new(modulus: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let mut members: Vec<u64> = members.into_iter().map(|a| a % modulus).collect();
        members.sort_unstable();
        members.dedup();
        let s = CycloSubgroup { modulus, members };
        s.check()?;
        Ok(s)
    }

    pub fn units(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if modulus == 1 {
            return Ok(CycloSubgroup {
                modulus,
                members: vec![0],
            });
        }
        Ok(CycloSubgroup {
            modulus,
            members: (1..modulus).filter(|&a| gcd(a, modulus) == 1).collect(),
        })
    }

    pub fn trivial(modulus: u64) -> Result<Self> {
        Self::new(modulus, [1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.members.binary_search(&(a % self.modulus)).is_ok()
    }

    pub fn is_subset(&self, other: &CycloSubgroup) -> bool {
        self.modulus == other.modulus && self.members.iter().all(|&a| other.contains(a))
    }

    /// Closure under multiplication, identity and units; finite so inverses follow.
    pub fn check(&self) -> Result<()> {
        let m = self.modulus;
        let one = 1 % m;
        let bad = |why: String| Err(Error::NotAGroup(format!("{self}: {why}")));
        if !self.contains(one) {
            return bad("missing 1".into());
        }
        for &a in &self.members {
            if gcd(a, m) != 1 && m != 1 {
                return bad(format!("{a} is not a unit"));
            }
            for &b in &self.members {
                if !self.contains((a as u128 * b as u128 % m as u128) as u64) {
                    return bad(format!("{a}*{b} escapes"));
                }
            }
        }
        Ok(())
    }
}

/// `Gal(k(zeta_m)/k)` inside `(Z/mZ)*`: everything unless `k` is contained in `Q(zeta_m)`,
/// which for an imaginary quadratic `k` happens exactly when `|D|` divides `m`. Then it is the
/// kernel of the character `a -> (D/a)`.
pub fn galois_group(field: QuadField, m: u64) -> Result<CycloSubgroup> {
    let units = CycloSubgroup::units(m)?;
    match field {
        QuadField::Imaginary { disc } if m.is_multiple_of(disc.unsigned_abs()) => Ok(CycloSubgroup {
            modulus: m,
            members: units.members.into_iter().filter(|&a| kronecker(disc, a) == 1).collect(),
        }),
        _ => Ok(units),
    }
}

/// Residues `a` in `Gal(k(zeta_o)/k)`, `o = o(tau)`, such that some element of the acting
/// group sends `tau` to `a * tau`.
pub fn g_k_mu_tau(field: QuadField, h: &AbelianGroup, action: &Action, tau: &AbElement) -> Result<CycloSubgroup> {
    if !h.is_member(tau) {
        return Err(Error::ShapeMismatch);
    }
    let o = h.element_order(tau);
    if o == 1 {
        return Err(Error::InvalidArgument("tau must not be the identity".into()));
    }
    let gal = galois_group(field, o)?;
    let mut powers = std::collections::HashMap::new();
    let mut cur = h.zero();
    for a in 0..o {
        powers.insert(cur.clone(), a);
        cur = h.add(&cur, tau);
    }
    let mut hits: Vec<u64> = action
        .table()
        .iter()
        .filter_map(|m| powers.get(&m.apply(h, tau)).copied())
        .filter(|&a| gal.contains(a))
        .collect();
    hits.sort_unstable();
    hits.dedup();
    let s = CycloSubgroup {
        modulus: o,
        members: hits,
    };
    s.check()
        .map_err(|e| Error::Internal(format!("G_(k,mu,tau) for tau = {tau}: {e}")))?;
    Ok(s)
}

/// Cache key for the field fixed by a subgroup of `Gal(k(zeta_m)/k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedFieldDescriptor {
    pub modulus: u64,
    pub members: Vec<u64>,
}

impl FixedFieldDescriptor {
    pub fn of(s: &CycloSubgroup) -> Self {
        FixedFieldDescriptor {
            modulus: s.modulus,
            members: s.members.clone(),
        }
    }

    pub fn subgroup(&self) -> Result<CycloSubgroup> {
        CycloSubgroup::new(self.modulus, self.members.iter().copied())
    }
}

impl fmt::Display for FixedFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members.iter().map(u64::to_string).collect();
        write!(f, "Fix({{{}}} mod {})", m.join(","), self.modulus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WConfig {
    /// First sieve window is `[2, initial_bound]`; `None` picks the default heuristic.
    pub initial_bound: Option<u64>,
    pub ceiling: u64,
}

impl Default for WConfig {
    fn default() -> Self {
        WConfig {
            initial_bound: None,
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl WConfig {
    /// Default configuration with the ceiling taken from `STEINITZ_PRIME_CEILING` when set.
    pub fn from_env() -> Result<Self> {
        let mut c = WConfig::default();
        if let Ok(v) = std::env::var(CEILING_ENV) {
            c.ceiling = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{CEILING_ENV}={v} is not an integer")))?;
        }
        Ok(c)
    }

    pub fn with_bound(mut self, bound: Option<u64>) -> Self {
        self.initial_bound = bound;
        self
    }

    /// `10 (h m log(|D| + 3))^2`, at least 100, at most [`MAX_INITIAL_BOUND`].
    pub fn default_bound(h: u64, m: u64, disc: i64) -> u64 {
        let x = h as f64 * m as f64 * ((disc.unsigned_abs() as f64) + 3.0).ln();
        let b = 10.0 * x * x;
        (b.min(MAX_INITIAL_BOUND as f64) as u64).max(100)
    }
}

/// One prime whose class enlarged the subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WGenerator {
    pub prime: u64,
    pub form: QuadForm,
}

/// Evidence for a `W` computation: the windows sieved and when growth stopped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub initial_bound: u64,
    /// Upper end of the last window sieved; 0 when no enumeration was needed.
    pub final_bound: u64,
    /// `(hi, order after window)` per window.
    pub windows: Vec<(u64, u64)>,
    pub qualifying_primes: u64,
    pub reason: StopReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    TrivialClassGroup,
    FullGroup,
    Stable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WGroup {
    pub descriptor: FixedFieldDescriptor,
    pub subgroup: ClassSubgroup,
    pub generators: Vec<WGenerator>,
    pub certificate: Certificate,
}

/// The subgroup of `Cl(k)` generated by classes of degree-1 primes `p` not dividing `m`
/// whose Frobenius `p mod m` lies in `s`. Ramified primes count as degree 1.
pub fn w_group(cg: &ClassGroup, s: &CycloSubgroup, config: &WConfig) -> Result<WGroup> {
    let m = s.modulus;
    let field = cg.field();
    if !s.is_subset(&galois_group(field, m)?) {
        return Err(Error::NotInGaloisGroup { modulus: m });
    }
    let descriptor = FixedFieldDescriptor::of(s);
    let initial = config
        .initial_bound
        .unwrap_or_else(|| WConfig::default_bound(cg.order(), m, cg.disc()));
    if initial < 2 {
        return Err(Error::InvalidArgument(format!("prime bound {initial} is below 2")));
    }
    let done = |subgroup, generators, certificate| WGroup {
        descriptor: descriptor.clone(),
        subgroup,
        generators,
        certificate,
    };
    if cg.order() == 1 {
        return Ok(done(
            cg.trivial_subgroup(),
            Vec::new(),
            Certificate {
                initial_bound: initial,
                final_bound: 0,
                windows: Vec::new(),
                qualifying_primes: 0,
                reason: StopReason::TrivialClassGroup,
            },
        ));
    }

    let mut subgroup = cg.trivial_subgroup();
    let mut generators = Vec::new();
    let mut windows = Vec::new();
    let mut qualifying = 0u64;
    let mut quiet = 0;
    let (mut lo, mut hi) = (2u64, initial.min(config.ceiling));
    loop {
        let before = subgroup.order();
        for p in primes_in(lo, hi) {
            if m.is_multiple_of(p) || cg.splitting(p)? == Splitting::Inert || !s.contains(p) {
                continue;
            }
            qualifying += 1;
            let x = cg.prime_class(p)?;
            if !subgroup.contains(x) {
                subgroup = cg.subgroup_product(&subgroup, &cg.generate(&[x])?)?;
                generators.push(WGenerator {
                    prime: p,
                    form: cg.form(x),
                });
                if subgroup.order() == cg.order() {
                    break;
                }
            }
        }
        windows.push((hi, subgroup.order()));
        let cert = |reason| Certificate {
            initial_bound: initial,
            final_bound: hi,
            windows: windows.clone(),
            qualifying_primes: qualifying,
            reason,
        };
        if subgroup.order() == cg.order() {
            return Ok(done(subgroup, generators, cert(StopReason::FullGroup)));
        }
        quiet = if subgroup.order() == before && lo > 2 {
            quiet + 1
        } else {
            0
        };
        if quiet >= 2 && qualifying > 0 {
            return Ok(done(subgroup, generators, cert(StopReason::Stable)));
        }
        if hi >= config.ceiling {
            let detail = if qualifying == 0 {
                format!("no degree-1 prime with Frobenius in {s}")
            } else {
                format!("subgroup of order {} still growing", subgroup.order())
            };
            return Err(Error::PrimeCeiling {
                ceiling: config.ceiling,
                detail,
            });
        }
        lo = hi + 1;
        hi = hi.saturating_mul(2).min(config.ceiling);
    }
}
