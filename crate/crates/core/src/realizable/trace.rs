use serde::{Deserialize, Serialize};

use crate::classgroup::{ClassGroup, ClassSubgroup, QuadField};
use crate::cyclotomic::{Certificate, FixedFieldDescriptor, WGenerator};
use crate::error::{Error, Result};
use crate::steinitz::theorem_exponent;

/// One `W(k, E)^exponent` factor, standing for `taus` elements of order `o_tau` that share
/// the same fixed field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WFactor {
    pub descriptor: FixedFieldDescriptor,
    pub l: u64,
    pub o_tau: u64,
    pub taus: u64,
    pub exponent: u64,
    pub generators: Vec<WGenerator>,
    pub w_members: Vec<usize>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Formula {
    /// The trivial group: only the principal class.
    Trivial,
    /// `C(2)`: the whole class group.
    ClassGroup,
    /// `base^n * prod W^e` with `n = |H|`, `m = |G|`; `base` is absent for an abelian leaf.
    Semidirect { n: u64, m: u64, base: Option<usize> },
    /// `left^right_order * right^left_order`.
    Direct {
        left: usize,
        right: usize,
        left_order: u64,
        right_order: u64,
    },
    /// `Cl^n * prod W^e` for `D_n`, from the standalone dihedral path.
    Dihedral { n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub path: String,
    pub formula: Formula,
    pub factors: Vec<WFactor>,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RtResult {
    pub field: QuadField,
    pub subgroup: ClassSubgroup,
    pub trace: Trace,
}

impl RtResult {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn corrupt(msg: String) -> Error {
    Error::CorruptTrace(msg)
}

fn replay_factor(cg: &ClassGroup, f: &WFactor, m: u64, n: u64, check_exponent: bool) -> Result<ClassSubgroup> {
    let mut classes = Vec::with_capacity(f.generators.len());
    for g in &f.generators {
        let x = cg
            .class_of_form(&g.form)
            .map_err(|e| corrupt(format!("W generator {} for p = {}: {e}", g.form, g.prime)))?;
        if cg.prime_class(g.prime).ok() != Some(x) {
            return Err(corrupt(format!(
                "{} is not the class of a prime above {}",
                g.form, g.prime
            )));
        }
        if !f.descriptor.members.is_empty() && f.descriptor.modulus > 0 {
            let r = g.prime % f.descriptor.modulus;
            if f.descriptor.members.binary_search(&r).is_err() || f.descriptor.modulus.is_multiple_of(g.prime) {
                return Err(corrupt(format!(
                    "prime {} does not qualify for {}",
                    g.prime, f.descriptor
                )));
            }
        }
        classes.push(x);
    }
    let w = cg.generate(&classes)?;
    if w.members() != f.w_members.as_slice() {
        return Err(corrupt(format!(
            "W generators for {} do not span the recorded subgroup",
            f.descriptor
        )));
    }
    if check_exponent {
        let e = theorem_exponent(f.l, f.o_tau, m, n).map_err(|e| corrupt(e.to_string()))?;
        if e != f.exponent {
            return Err(corrupt(format!(
                "exponent {} recorded where {e} is expected",
                f.exponent
            )));
        }
    }
    cg.subgroup_power(&w, f.exponent)
}

/// Re-evaluates every recorded formula from the recorded `W` generators and checks that each
/// step, and finally the result, comes out as recorded.
pub fn rt_trace_replay(result: &RtResult) -> Result<ClassSubgroup> {
    let cg = ClassGroup::new(result.field)?;
    rt_trace_replay_with(&cg, result)
}

pub fn rt_trace_replay_with(cg: &ClassGroup, result: &RtResult) -> Result<ClassSubgroup> {
    if cg.field() != result.field {
        return Err(Error::ParentMismatch(cg.disc(), result.field.disc()));
    }
    let steps = &result.trace.steps;
    if steps.is_empty() {
        if !result.subgroup.is_trivial() {
            return Err(corrupt("empty trace for a nontrivial subgroup".into()));
        }
        return Ok(cg.trivial_subgroup());
    }
    let mut done: Vec<ClassSubgroup> = Vec::with_capacity(steps.len());
    for (i, step) in steps.iter().enumerate() {
        let earlier = |j: usize| {
            done.get(j)
                .cloned()
                .ok_or_else(|| corrupt(format!("step {i} refers to step {j}, which is not earlier")))
        };
        let mut acc = match &step.formula {
            Formula::Trivial => cg.trivial_subgroup(),
            Formula::ClassGroup => cg.full_subgroup(),
            Formula::Semidirect { n, base, .. } => match base {
                Some(j) => cg.subgroup_power(&earlier(*j)?, *n)?,
                None => cg.trivial_subgroup(),
            },
            Formula::Direct {
                left,
                right,
                left_order,
                right_order,
            } => {
                let a = cg.subgroup_power(&earlier(*left)?, *right_order)?;
                let b = cg.subgroup_power(&earlier(*right)?, *left_order)?;
                cg.subgroup_product(&a, &b)?
            }
            Formula::Dihedral { n } => cg.subgroup_power(&cg.full_subgroup(), *n)?,
        };
        let (m, n, check) = match step.formula {
            Formula::Semidirect { n, m, .. } => (m, n, true),
            Formula::Dihedral { n } => (2, n, true),
            _ => (1, 1, false),
        };
        if !check && !step.factors.is_empty() {
            return Err(corrupt(format!("step {i} ({}) carries W factors", step.path)));
        }
        for f in &step.factors {
            let w = replay_factor(cg, f, m, n, check)?;
            acc = cg.subgroup_product(&acc, &w)?;
        }
        if acc.members() != step.members.as_slice() {
            return Err(corrupt(format!(
                "step {i} ({}) does not reproduce its recorded subgroup",
                step.path
            )));
        }
        done.push(acc);
    }
    let last = done.pop().expect("nonempty");
    if last != result.subgroup {
        return Err(corrupt("final step differs from the reported subgroup".into()));
    }
    Ok(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouptree::ApGroupTree;
    use crate::realizable::{rt, rt_dihedral, RtConfig};

    fn sample(d: i64) -> RtResult {
        let t = ApGroupTree::direct(ApGroupTree::dihedral(3).unwrap(), ApGroupTree::cyclic(5).unwrap()).unwrap();
        rt(QuadField::new(d).unwrap(), &t, &RtConfig::default()).unwrap()
    }

    #[test]
    fn replay_reproduces() {
        for d in [-23i64, -47, -71, -84] {
            let r = sample(d);
            assert_eq!(rt_trace_replay(&r).unwrap(), r.subgroup);
            let back = RtResult::from_json(&r.to_json().unwrap()).unwrap();
            assert_eq!(back, r);
            assert_eq!(rt_trace_replay(&back).unwrap(), r.subgroup);
            let dih = rt_dihedral(QuadField::new(d).unwrap(), 9, &RtConfig::default()).unwrap();
            assert_eq!(rt_trace_replay(&dih).unwrap(), dih.subgroup);
        }
    }

    #[test]
    fn tampering_is_detected() {
        let r = sample(-23);
        let (i, j) = r
            .trace
            .steps
            .iter()
            .enumerate()
            .find_map(|(i, s)| s.factors.iter().position(|f| !f.generators.is_empty()).map(|j| (i, j)))
            .unwrap();
        let mut t = r.clone();
        t.trace.steps[i].factors[j].generators.pop();
        assert!(matches!(rt_trace_replay(&t), Err(Error::CorruptTrace(_))));

        let mut t = r.clone();
        t.trace.steps[i].factors[j].exponent += 1;
        assert!(matches!(rt_trace_replay(&t), Err(Error::CorruptTrace(_))));

        let mut t = r.clone();
        t.trace.steps[i].factors[j].generators[0].prime = 5;
        assert!(matches!(rt_trace_replay(&t), Err(Error::CorruptTrace(_))));

        let mut t = r.clone();
        t.trace.steps.last_mut().unwrap().formula = Formula::Semidirect {
            n: 1,
            m: 1,
            base: Some(99),
        };
        assert!(matches!(rt_trace_replay(&t), Err(Error::CorruptTrace(_))));
    }

    #[test]
    fn empty_trace_on_trivial_group() {
        let cg = ClassGroup::from_disc(-23).unwrap();
        let r = RtResult {
            field: cg.field(),
            subgroup: cg.trivial_subgroup(),
            trace: Trace::default(),
        };
        assert!(rt_trace_replay(&r).unwrap().is_trivial());
        let bad = RtResult {
            subgroup: cg.full_subgroup(),
            ..r
        };
        assert!(rt_trace_replay(&bad).is_err());
    }
}
