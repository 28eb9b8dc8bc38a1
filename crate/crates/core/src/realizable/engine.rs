use std::collections::{BTreeMap, HashMap};

use super::trace::{Formula, RtResult, Step, Trace, WFactor};
use crate::arith::prime_divisors;
use crate::classgroup::{ClassGroup, ClassSubgroup, QuadField};
use crate::cyclotomic::{g_k_mu_tau, w_group, CycloSubgroup, FixedFieldDescriptor, WConfig, WGroup};
use crate::error::{Error, Result};
use crate::grouptree::{AbElement, AbelianGroup, Action, ApGroupTree, Node, DEFAULT_ENUMERATION_CAP};
use crate::steinitz::theorem_exponent;

#[derive(Debug, Clone, Copy)]
pub struct RtConfig {
    pub w: WConfig,
    /// Group the elements `tau` by fixed field and compute each `W` once.
    pub dedupe: bool,
    pub cap: usize,
}

impl Default for RtConfig {
    fn default() -> Self {
        RtConfig {
            w: WConfig::default(),
            dedupe: true,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl RtConfig {
    pub fn from_env() -> Result<Self> {
        Ok(RtConfig {
            w: WConfig::from_env()?,
            ..Self::default()
        })
    }
}

pub fn rt(field: QuadField, tree: &ApGroupTree, config: &RtConfig) -> Result<RtResult> {
    let cg = ClassGroup::new(field)?;
    rt_with(&cg, tree, config)
}

pub fn rt_with(cg: &ClassGroup, tree: &ApGroupTree, config: &RtConfig) -> Result<RtResult> {
    check_admissible(tree, "root")?;
    let mut engine = Engine {
        cg,
        config,
        steps: Vec::new(),
        results: Vec::new(),
        memo: HashMap::new(),
        w_cache: HashMap::new(),
    };
    let root = engine.eval(tree, "root".into())?;
    let subgroup = engine.results[root].clone();
    cg.verify_subgroup(&subgroup)
        .map_err(|e| Error::Internal(format!("R_t is not a subgroup: {e}")))?;
    Ok(RtResult {
        field: cg.field(),
        subgroup,
        trace: Trace { steps: engine.steps },
    })
}

/// Accepts the shapes known to be good: odd abelian leaves, `C(2)`, the trivial group,
/// semidirect products over a good acting group and direct products obeying the parity rule.
fn check_admissible(tree: &ApGroupTree, path: &str) -> Result<()> {
    match tree.node() {
        Node::Abelian(h) => {
            if h.order() % 2 == 1 || h.factors() == [2] {
                Ok(())
            } else {
                Err(Error::Inadmissible(format!(
                    "{path}: even abelian leaf {h} other than C(2)"
                )))
            }
        }
        Node::Semidirect { h, g, .. } => {
            if h.order() % 2 == 0 || crate::arith::gcd(h.order(), g.order()) != 1 {
                return Err(Error::Inadmissible(format!("{path}: H must be odd and coprime to G")));
            }
            check_admissible(g, &format!("{path}.g"))
        }
        Node::Direct(a, b) => {
            if !a.is_odd() && !b.is_odd() && (a.two_sylow_cyclic() || b.two_sylow_cyclic()) {
                return Err(Error::Inadmissible(format!(
                    "{path}: both factors even with a cyclic 2-Sylow subgroup"
                )));
            }
            check_admissible(a, &format!("{path}.left"))?;
            check_admissible(b, &format!("{path}.right"))
        }
    }
}

struct Engine<'a> {
    cg: &'a ClassGroup,
    config: &'a RtConfig,
    steps: Vec<Step>,
    results: Vec<ClassSubgroup>,
    memo: HashMap<&'a ApGroupTree, usize>,
    w_cache: HashMap<FixedFieldDescriptor, WGroup>,
}

impl<'a> Engine<'a> {
    fn push(&mut self, path: String, formula: Formula, factors: Vec<WFactor>, s: ClassSubgroup) -> usize {
        self.steps.push(Step {
            path,
            formula,
            factors,
            members: s.members().to_vec(),
        });
        self.results.push(s);
        self.steps.len() - 1
    }

    fn eval(&mut self, tree: &'a ApGroupTree, path: String) -> Result<usize> {
        if let Some(&i) = self.memo.get(tree) {
            return Ok(i);
        }
        let cg = self.cg;
        let idx = match tree.node() {
            Node::Abelian(h) if h.order() == 1 => self.push(path, Formula::Trivial, Vec::new(), cg.trivial_subgroup()),
            Node::Abelian(h) if h.factors() == [2] => {
                self.push(path, Formula::ClassGroup, Vec::new(), cg.full_subgroup())
            }
            Node::Abelian(h) => {
                let factors = self.w_factors(h, None, 1)?;
                let s = self.combine(cg.trivial_subgroup(), &factors)?;
                self.push(
                    path,
                    Formula::Semidirect {
                        n: h.order(),
                        m: 1,
                        base: None,
                    },
                    factors,
                    s,
                )
            }
            Node::Semidirect { h, g, action } => {
                let base = self.eval(g, format!("{path}.g"))?;
                let n = h.order();
                let m = g.order();
                let factors = self.w_factors(h, Some(action), m)?;
                let start = cg.subgroup_power(&self.results[base], n)?;
                let s = self.combine(start, &factors)?;
                self.push(path, Formula::Semidirect { n, m, base: Some(base) }, factors, s)
            }
            Node::Direct(a, b) => {
                let left = self.eval(a, format!("{path}.left"))?;
                let right = self.eval(b, format!("{path}.right"))?;
                let (left_order, right_order) = (a.order(), b.order());
                let x = cg.subgroup_power(&self.results[left], right_order)?;
                let y = cg.subgroup_power(&self.results[right], left_order)?;
                let s = cg.subgroup_product(&x, &y)?;
                self.push(
                    path,
                    Formula::Direct {
                        left,
                        right,
                        left_order,
                        right_order,
                    },
                    Vec::new(),
                    s,
                )
            }
        };
        self.memo.insert(tree, idx);
        Ok(idx)
    }

    fn combine(&self, start: ClassSubgroup, factors: &[WFactor]) -> Result<ClassSubgroup> {
        let mut acc = start;
        for f in factors {
            let gens = f
                .generators
                .iter()
                .map(|g| self.cg.class_of_form(&g.form))
                .collect::<Result<Vec<_>>>()?;
            let w = self.cg.generate(&gens)?;
            acc = self
                .cg
                .subgroup_product(&acc, &self.cg.subgroup_power(&w, f.exponent)?)?;
        }
        Ok(acc)
    }

    fn cyclo_for(&self, h: &AbelianGroup, action: Option<&Action>, tau: &AbElement) -> Result<CycloSubgroup> {
        match action {
            Some(a) => g_k_mu_tau(self.cg.field(), h, a, tau),
            None => CycloSubgroup::trivial(h.element_order(tau)),
        }
    }

    fn w(&mut self, s: &CycloSubgroup) -> Result<WGroup> {
        let d = FixedFieldDescriptor::of(s);
        if self.config.dedupe {
            if let Some(w) = self.w_cache.get(&d) {
                return Ok(w.clone());
            }
        }
        let w = w_group(self.cg, s, &self.config.w)?;
        if self.config.dedupe {
            self.w_cache.insert(d, w.clone());
        }
        Ok(w)
    }

    /// One factor per fixed field when deduplicating, one per `tau` otherwise.
    fn w_factors(&mut self, h: &AbelianGroup, action: Option<&Action>, m: u64) -> Result<Vec<WFactor>> {
        let n = h.order();
        if n as u128 > self.config.cap as u128 {
            return Err(Error::CapExceeded {
                what: "H",
                size: n as u128,
                cap: self.config.cap,
            });
        }
        let mut groups: BTreeMap<FixedFieldDescriptor, (u64, u64, u64, CycloSubgroup)> = BTreeMap::new();
        let mut singles = Vec::new();
        for l in prime_divisors(n) {
            for tau in h.sylow_part(l)? {
                let o = h.element_order(&tau);
                if o == 1 {
                    continue;
                }
                let s = self.cyclo_for(h, action, &tau)?;
                if self.config.dedupe {
                    groups.entry(FixedFieldDescriptor::of(&s)).or_insert((l, o, 0, s)).2 += 1;
                } else {
                    singles.push((l, o, 1, s));
                }
            }
        }
        let entries: Vec<(u64, u64, u64, CycloSubgroup)> = if self.config.dedupe {
            groups.into_values().collect()
        } else {
            singles
        };
        let mut factors = Vec::with_capacity(entries.len());
        for (l, o, taus, s) in entries {
            let w = self.w(&s)?;
            factors.push(WFactor {
                descriptor: w.descriptor.clone(),
                l,
                o_tau: o,
                taus,
                exponent: theorem_exponent(l, o, m, n)?,
                generators: w.generators.clone(),
                w_members: w.subgroup.members().to_vec(),
                certificate: w.certificate.clone(),
            });
        }
        Ok(factors)
    }
}
