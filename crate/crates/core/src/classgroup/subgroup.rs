use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::group::{ClassGroup, IdealClass};
use crate::error::{Error, Result};
use crate::snf::abelian_structure;

/// A subgroup of `Cl(k)`: sorted member indices plus the generators it was built from.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct ClassSubgroup {
    disc: i64,
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for ClassSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.disc == other.disc && self.members == other.members
    }
}

impl ClassSubgroup {
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: IdealClass) -> bool {
        x.disc == self.disc && self.members.binary_search(&x.index).is_ok()
    }

    pub fn contains_subgroup(&self, other: &ClassSubgroup) -> bool {
        self.disc == other.disc && other.members.iter().all(|i| self.members.binary_search(i).is_ok())
    }

    pub fn classes(&self) -> impl Iterator<Item = IdealClass> + '_ {
        self.members.iter().map(|&index| IdealClass { disc: self.disc, index })
    }

    pub fn generators(&self) -> impl Iterator<Item = IdealClass> + '_ {
        self.generators
            .iter()
            .map(|&index| IdealClass { disc: self.disc, index })
    }
}

impl ClassGroup {
    fn check_subgroup(&self, s: &ClassSubgroup) -> Result<()> {
        if s.disc != self.disc() {
            return Err(Error::ParentMismatch(self.disc(), s.disc));
        }
        Ok(())
    }

    pub fn trivial_subgroup(&self) -> ClassSubgroup {
        ClassSubgroup {
            disc: self.disc(),
            members: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn full_subgroup(&self) -> ClassSubgroup {
        let gens = self.generators();
        self.generate(&gens).expect("own generators")
    }

    /// The smallest subgroup containing `gens`. Generators equal to the identity, or already
    /// inside the span of earlier ones, are dropped.
    pub fn generate(&self, gens: &[IdealClass]) -> Result<ClassSubgroup> {
        let mut members: BTreeSet<usize> = BTreeSet::from([0]);
        let mut kept = Vec::new();
        for &g in gens {
            self.check_member(g)?;
            if members.contains(&g.index) {
                continue;
            }
            kept.push(g.index);
            // extend the finite subgroup by g: multiply every member by powers of g until
            // a power falls back into the old subgroup
            let old = members.clone();
            let mut power = g;
            while !old.contains(&power.index) {
                for &m in &old {
                    members.insert(self.compose(self.class(m), power).index);
                }
                power = self.compose(power, g);
            }
        }
        Ok(ClassSubgroup {
            disc: self.disc(),
            members: members.into_iter().collect(),
            generators: kept,
        })
    }

    /// Image of `s` under `x -> x^e`.
    pub fn subgroup_power(&self, s: &ClassSubgroup, e: u64) -> Result<ClassSubgroup> {
        self.check_subgroup(s)?;
        let gens: Vec<IdealClass> = s.generators().map(|g| self.pow(g, e)).collect();
        self.generate(&gens)
    }

    pub fn subgroup_product(&self, a: &ClassSubgroup, b: &ClassSubgroup) -> Result<ClassSubgroup> {
        self.check_subgroup(a)?;
        self.check_subgroup(b)?;
        let gens: Vec<IdealClass> = a.generators().chain(b.generators()).collect();
        self.generate(&gens)
    }

    /// Invariant factors of a subgroup together with a minimal generating set realizing them.
    pub fn subgroup_structure(&self, s: &ClassSubgroup) -> Result<(Vec<u64>, Vec<IdealClass>)> {
        self.check_subgroup(s)?;
        let st = abelian_structure(0, &s.members, |i, j| self.compose(self.class(i), self.class(j)).index);
        Ok((
            st.invariant_factors,
            st.generators.into_iter().map(|i| self.class(i)).collect(),
        ))
    }

    /// Checks closure under composition and inverse by brute force over the member set.
    pub fn verify_subgroup(&self, s: &ClassSubgroup) -> Result<()> {
        self.check_subgroup(s)?;
        if s.members.first() != Some(&0) {
            return Err(Error::NotAGroup("subgroup misses the principal class".into()));
        }
        if s.members.windows(2).any(|w| w[0] >= w[1]) || s.members.iter().any(|&i| i >= self.order() as usize) {
            return Err(Error::NotAGroup("member list is not a sorted set of classes".into()));
        }
        for x in s.classes() {
            if !s.contains(self.inverse(x)) {
                return Err(Error::NotAGroup(format!("inverse of {} missing", self.form(x))));
            }
            for y in s.classes() {
                if !s.contains(self.compose(x, y)) {
                    return Err(Error::NotAGroup(format!("{} * {} missing", self.form(x), self.form(y))));
                }
            }
        }
        Ok(())
    }

    /// Rebuilds a subgroup from a member list read back from disk, verifying closure.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<ClassSubgroup> {
        let mut m: Vec<usize> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        let s = ClassSubgroup {
            disc: self.disc(),
            generators: m.iter().copied().filter(|&i| i != 0).collect(),
            members: m,
        };
        self.verify_subgroup(&s)?;
        Ok(s)
    }

    /// Index of `s` in the full class group.
    pub fn index_of(&self, s: &ClassSubgroup) -> u64 {
        self.order() / s.order()
    }
}
