use serde::{Deserialize, Serialize};

use super::trace::RtResult;
use crate::classgroup::{ClassGroup, Splitting};
use crate::error::{Error, Result};
use crate::grouptree::ApGroupTree;
use crate::steinitz::good_exponents;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentCheck {
    pub l: u64,
    pub exp: u64,
    pub in_rt: bool,
    /// `(exp / 2, membership)` when `exp` is even.
    pub half: Option<(u64, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub p: u64,
    pub e: u64,
    /// `p` does not divide `e`.
    pub tame: bool,
    /// `e` divides `p - 1`, so a degree-1 prime above `p` can carry tame inertia of order `e`.
    pub inertia_possible: bool,
    pub checks: Vec<ExponentCheck>,
    pub pass: bool,
}

/// For each `(p, e)`, checks that the class of a prime above `p` raised to each good-group
/// exponent `(l - 1) |G| / e(l)` (and to half of it when even) lies in the computed `R_t`.
pub fn good_membership_check(
    cg: &ClassGroup,
    tree: &ApGroupTree,
    result: &RtResult,
    scenarios: &[(u64, u64)],
) -> Result<Vec<ScenarioReport>> {
    if result.field != cg.field() {
        return Err(Error::ParentMismatch(cg.disc(), result.field.disc()));
    }
    let order = tree.order();
    let rt = &result.subgroup;
    let mut out = Vec::with_capacity(scenarios.len());
    for &(p, e) in scenarios {
        if cg.splitting(p)? == Splitting::Inert {
            return Err(Error::InertPrime(p));
        }
        if e == 0 || !order.is_multiple_of(e) {
            return Err(Error::NotDividing {
                divisor: e,
                value: order,
            });
        }
        let x = cg.prime_class(p)?;
        let checks: Vec<ExponentCheck> = good_exponents(e, order)?
            .into_iter()
            .map(|g| ExponentCheck {
                l: g.l,
                exp: g.exp,
                in_rt: rt.contains(cg.pow(x, g.exp)),
                half: g.half.map(|h| (h, rt.contains(cg.pow(x, h)))),
            })
            .collect();
        let pass = checks.iter().all(|c| c.in_rt && c.half.is_none_or(|(_, ok)| ok));
        out.push(ScenarioReport {
            p,
            e,
            tame: e % p != 0,
            inertia_possible: (p - 1) % e == 0,
            checks,
            pass,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizable::{rt_with, RtConfig};

    #[test]
    fn examples() {
        let cg = ClassGroup::from_disc(-23).unwrap();
        let cfg = RtConfig::default();
        let c3 = ApGroupTree::cyclic(3).unwrap();
        let r = rt_with(&cg, &c3, &cfg).unwrap();
        assert!(good_membership_check(&cg, &c3, &r, &[]).unwrap().is_empty());

        let rep = good_membership_check(&cg, &c3, &r, &[(59, 3)]).unwrap();
        assert_eq!(rep[0].checks[0].exp, 2);
        assert!(rep[0].pass && rep[0].tame);
        assert!(!rep[0].inertia_possible);

        let rep = good_membership_check(&cg, &c3, &r, &[(13, 3)]).unwrap();
        assert!(rep[0].pass && rep[0].inertia_possible);

        let d3 = ApGroupTree::dihedral(3).unwrap();
        let r = rt_with(&cg, &d3, &cfg).unwrap();
        let rep = good_membership_check(&cg, &d3, &r, &[(2, 2)]).unwrap();
        assert_eq!(rep[0].checks[0].exp, 3);
        assert_eq!(rep[0].checks[0].half, None);
        assert!(rep[0].pass);
        assert!(cg.pow(cg.prime_class(2).unwrap(), 3) == cg.principal());

        assert!(matches!(
            good_membership_check(&cg, &c3, &r, &[(5, 3)]),
            Err(Error::InertPrime(5))
        ));
        assert!(matches!(
            good_membership_check(&cg, &c3, &r, &[(2, 2)]),
            Err(Error::NotDividing { .. })
        ));
    }
}
