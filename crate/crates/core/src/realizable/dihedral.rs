use super::engine::RtConfig;
use super::trace::{Formula, RtResult, Step, Trace, WFactor};
use crate::arith::{factorize, gcd};
use crate::classgroup::{ClassGroup, QuadField};
use crate::cyclotomic::{galois_group, w_group, CycloSubgroup};
use crate::error::{Error, Result};

/// `R_t(k, D_n)` for odd `n` straight from the closed form
/// `Cl^n * prod_{l | n} prod_{o = l^j | n} W(k, E_o)^((l-1)/2 * 2n/o)`,
/// where `E_o` is fixed by `{1, -1}` intersected with `Gal(k(zeta_o)/k)`.
pub fn rt_dihedral(field: QuadField, n: u64, config: &RtConfig) -> Result<RtResult> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("D_n needs odd n >= 3, got {n}")));
    }
    let cg = ClassGroup::new(field)?;
    let cl = cg.full_subgroup();
    let mut acc = cg.subgroup_power(&cl, n)?;
    let mut factors = Vec::new();
    for (l, v) in factorize(n) {
        let mut o = 1;
        for _ in 0..v {
            o *= l;
            let gal = galois_group(field, o)?;
            let s = CycloSubgroup::new(o, [1, o - 1].into_iter().filter(|&a| gal.contains(a)))?;
            let w = w_group(&cg, &s, &config.w)?;
            let exponent = (l - 1) / 2 * (2 * n / o);
            acc = cg.subgroup_product(&acc, &cg.subgroup_power(&w.subgroup, exponent)?)?;
            // elements of order exactly o in the cyclic l-part
            let taus = (1..=o).filter(|&a| gcd(a, o) == 1).count() as u64;
            factors.push(WFactor {
                descriptor: w.descriptor,
                l,
                o_tau: o,
                taus,
                exponent,
                generators: w.generators,
                w_members: w.subgroup.members().to_vec(),
                certificate: w.certificate,
            });
        }
    }
    let step = Step {
        path: format!("D_{n}"),
        formula: Formula::Dihedral { n },
        factors,
        members: acc.members().to_vec(),
    };
    Ok(RtResult {
        field,
        subgroup: acc,
        trace: Trace { steps: vec![step] },
    })
}
