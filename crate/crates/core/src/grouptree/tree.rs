use std::fmt;

use super::abelian::{AbElement, AbelianGroup};
use super::action::{validate_action, Action, ActionSpec, Endo};
use crate::arith::gcd;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 100_000;

/// Shape of the 2-Sylow subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoSylow {
    Trivial,
    Cyclic,
    NonCyclic,
}

impl TwoSylow {
    fn product(self, other: TwoSylow) -> TwoSylow {
        match (self, other) {
            (TwoSylow::Trivial, x) | (x, TwoSylow::Trivial) => x,
            _ => TwoSylow::NonCyclic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Abelian(AbelianGroup),
    Semidirect {
        h: AbelianGroup,
        g: Box<ApGroupTree>,
        action: Action,
    },
    Direct(Box<ApGroupTree>, Box<ApGroupTree>),
}

/// An A'-group described by its construction: abelian leaves, semidirect products
/// `H ⋊_mu G` with `H` abelian of odd order coprime to `|G|`, and direct products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApGroupTree {
    node: Node,
    order: u64,
    two_sylow: TwoSylow,
    radices: Vec<u64>,
}

/// An element shaped like its tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeElement {
    Leaf(AbElement),
    Semidirect(AbElement, Box<TreeElement>),
    Direct(Box<TreeElement>, Box<TreeElement>),
}

impl fmt::Display for TreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeElement::Leaf(a) => write!(f, "{a}"),
            TreeElement::Semidirect(h, g) => write!(f, "[{h}; {g}]"),
            TreeElement::Direct(a, b) => write!(f, "<{a}, {b}>"),
        }
    }
}

impl fmt::Display for ApGroupTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Abelian(h) => write!(f, "{h}"),
            Node::Semidirect { h, g, .. } => write!(f, "{h} ⋊ ({g})"),
            Node::Direct(a, b) => write!(f, "({a}) × ({b})"),
        }
    }
}

impl ApGroupTree {
    pub fn abelian(h: AbelianGroup) -> Self {
        let evens = h.factors().iter().filter(|&&n| n % 2 == 0).count();
        let two_sylow = match evens {
            0 => TwoSylow::Trivial,
            1 => TwoSylow::Cyclic,
            _ => TwoSylow::NonCyclic,
        };
        ApGroupTree {
            order: h.order(),
            radices: h.factors().to_vec(),
            node: Node::Abelian(h),
            two_sylow,
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Ok(Self::abelian(AbelianGroup::cyclic(n)?))
    }

    pub fn trivial() -> Self {
        Self::abelian(AbelianGroup::trivial())
    }

    /// `H ⋊_mu G`, with `mu` completed and checked by [`validate_action`].
    pub fn semidirect(h: AbelianGroup, g: ApGroupTree, spec: &ActionSpec, cap: usize) -> Result<Self> {
        if h.order().is_multiple_of(2) {
            return Err(Error::Inadmissible(format!(
                "semidirect kernel {h} must have odd order"
            )));
        }
        if gcd(h.order(), g.order()) != 1 {
            return Err(Error::Inadmissible(format!(
                "|{h}| = {} and |G| = {} are not coprime",
                h.order(),
                g.order()
            )));
        }
        let order = h.order().checked_mul(g.order()).ok_or(Error::Overflow("group order"))?;
        if order as u128 > cap as u128 {
            return Err(Error::CapExceeded {
                what: "semidirect product",
                size: order as u128,
                cap,
            });
        }
        let action = validate_action(&h, &g, spec, cap)?;
        let mut radices = h.factors().to_vec();
        radices.extend_from_slice(&g.radices);
        Ok(ApGroupTree {
            order,
            two_sylow: g.two_sylow,
            radices,
            node: Node::Semidirect {
                h,
                g: Box::new(g),
                action,
            },
        })
    }

    /// `H ⋊ G` with every element of `G` acting as the identity.
    pub fn semidirect_trivial(h: AbelianGroup, g: ApGroupTree) -> Result<Self> {
        Self::semidirect(h, g, &ActionSpec::new(), DEFAULT_ENUMERATION_CAP)
    }

    /// `C(n) ⋊ C(2)` with the reflection acting by inversion.
    pub fn dihedral(n: u64) -> Result<Self> {
        let h = AbelianGroup::cyclic(n)?;
        let g = Self::cyclic(2)?;
        let spec = ActionSpec::uniform(&g, Endo::scalar(&h, -1));
        Self::semidirect(h, g, &spec, DEFAULT_ENUMERATION_CAP)
    }

    pub fn direct(left: ApGroupTree, right: ApGroupTree) -> Result<Self> {
        let both_even = left.order.is_multiple_of(2) && right.order.is_multiple_of(2);
        let both_noncyclic = left.two_sylow == TwoSylow::NonCyclic && right.two_sylow == TwoSylow::NonCyclic;
        if both_even && !both_noncyclic {
            return Err(Error::Inadmissible(format!(
                "direct product of two even-order groups ({left}) and ({right}) needs both 2-Sylow subgroups non-cyclic"
            )));
        }
        let order = left
            .order
            .checked_mul(right.order)
            .ok_or(Error::Overflow("group order"))?;
        let mut radices = left.radices.clone();
        radices.extend_from_slice(&right.radices);
        Ok(ApGroupTree {
            order,
            two_sylow: left.two_sylow.product(right.two_sylow),
            radices,
            node: Node::Direct(Box::new(left), Box::new(right)),
        })
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_odd(&self) -> bool {
        self.order % 2 == 1
    }

    pub fn two_sylow(&self) -> TwoSylow {
        self.two_sylow
    }

    /// Whether the 2-Sylow subgroup is cyclic (the trivial group counts as cyclic).
    pub fn two_sylow_cyclic(&self) -> bool {
        self.two_sylow != TwoSylow::NonCyclic
    }

    /// Number of flat coordinates.
    pub fn width(&self) -> usize {
        self.radices.len()
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    pub fn identity_flat(&self) -> Vec<u64> {
        vec![0; self.width()]
    }

    pub fn identity(&self) -> TreeElement {
        self.unflatten(&self.identity_flat())
    }

    pub fn index_of_flat(&self, flat: &[u64]) -> usize {
        flat.iter()
            .zip(&self.radices)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn flat_at(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.width()];
        for (slot, &n) in v.iter_mut().zip(&self.radices).rev() {
            *slot = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        v
    }

    pub fn element_at(&self, idx: usize) -> TreeElement {
        self.unflatten(&self.flat_at(idx))
    }

    pub fn index_of(&self, x: &TreeElement) -> Result<usize> {
        Ok(self.index_of_flat(&self.flatten(x)?))
    }

    pub fn elements(&self) -> impl Iterator<Item = TreeElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }

    /// Canonical coordinate encoding: leaves first, left to right.
    pub fn flatten(&self, x: &TreeElement) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(self.width());
        self.flatten_into(x, &mut out)?;
        Ok(out)
    }

    fn flatten_into(&self, x: &TreeElement, out: &mut Vec<u64>) -> Result<()> {
        match (&self.node, x) {
            (Node::Abelian(h), TreeElement::Leaf(a)) => {
                if !h.is_member(a) {
                    return Err(Error::ShapeMismatch);
                }
                out.extend_from_slice(&a.0);
            }
            (Node::Semidirect { h, g, .. }, TreeElement::Semidirect(a, b)) => {
                if !h.is_member(a) {
                    return Err(Error::ShapeMismatch);
                }
                out.extend_from_slice(&a.0);
                g.flatten_into(b, out)?;
            }
            (Node::Direct(l, r), TreeElement::Direct(a, b)) => {
                l.flatten_into(a, out)?;
                r.flatten_into(b, out)?;
            }
            _ => return Err(Error::ShapeMismatch),
        }
        Ok(())
    }

    /// Inverse of [`flatten`](Self::flatten). Panics if `flat` is shorter than [`width`](Self::width).
    pub fn unflatten(&self, flat: &[u64]) -> TreeElement {
        match &self.node {
            Node::Abelian(h) => TreeElement::Leaf(AbElement(flat[..h.rank()].to_vec())),
            Node::Semidirect { h, g, .. } => {
                let r = h.rank();
                TreeElement::Semidirect(AbElement(flat[..r].to_vec()), Box::new(g.unflatten(&flat[r..])))
            }
            Node::Direct(l, r) => {
                let w = l.width();
                TreeElement::Direct(Box::new(l.unflatten(&flat[..w])), Box::new(r.unflatten(&flat[w..])))
            }
        }
    }

    /// Group law on flat coordinates; `out` must have length [`width`](Self::width).
    pub fn mul_flat(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        match &self.node {
            Node::Abelian(h) => {
                for ((o, (x, y)), n) in out.iter_mut().zip(a.iter().zip(b)).zip(h.factors()) {
                    *o = (x + y) % n;
                }
            }
            Node::Semidirect { h, g, action } => {
                // (h1, g1)(h2, g2) = (h1 + mu(g1) h2, g1 g2)
                let r = h.rank();
                let g1 = g.index_of_flat(&a[r..]);
                action.get(g1).apply_slice(h.factors(), &b[..r], &mut out[..r]);
                for ((o, x), n) in out[..r].iter_mut().zip(&a[..r]).zip(h.factors()) {
                    *o = (*o + x) % n;
                }
                g.mul_flat(&a[r..], &b[r..], &mut out[r..]);
            }
            Node::Direct(l, r) => {
                let w = l.width();
                let (lo, ro) = out.split_at_mut(w);
                l.mul_flat(&a[..w], &b[..w], lo);
                r.mul_flat(&a[w..], &b[w..], ro);
            }
        }
    }

    pub fn multiply(&self, a: &TreeElement, b: &TreeElement) -> Result<TreeElement> {
        let (fa, fb) = (self.flatten(a)?, self.flatten(b)?);
        let mut out = vec![0; self.width()];
        self.mul_flat(&fa, &fb, &mut out);
        Ok(self.unflatten(&out))
    }

    /// A generating set: the standard generators of every leaf, embedded.
    pub fn generators(&self) -> Vec<TreeElement> {
        let id = self.identity_flat();
        let mut out = Vec::new();
        for (i, &n) in self.radices.iter().enumerate() {
            if n > 1 {
                let mut v = id.clone();
                v[i] = 1;
                out.push(self.unflatten(&v));
            }
        }
        out
    }

    /// All nodes in post-order together with a dotted path from the root.
    pub fn walk(&self) -> Vec<(String, &ApGroupTree)> {
        let mut out = Vec::new();
        self.walk_into("root".to_string(), &mut out);
        out
    }

    fn walk_into<'a>(&'a self, path: String, out: &mut Vec<(String, &'a ApGroupTree)>) {
        match &self.node {
            Node::Abelian(_) => {}
            Node::Semidirect { g, .. } => g.walk_into(format!("{path}.g"), out),
            Node::Direct(l, r) => {
                l.walk_into(format!("{path}.left"), out);
                r.walk_into(format!("{path}.right"), out);
            }
        }
        out.push((path, self));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(v: &[u64]) -> TreeElement {
        TreeElement::Leaf(AbElement(v.to_vec()))
    }

    #[test]
    fn orders() {
        assert_eq!(ApGroupTree::dihedral(3).unwrap().order(), 6);
        assert_eq!(ApGroupTree::abelian(AbelianGroup::new(vec![9, 3]).unwrap()).order(), 27);
        let d = ApGroupTree::direct(ApGroupTree::cyclic(3).unwrap(), ApGroupTree::cyclic(5).unwrap()).unwrap();
        assert_eq!(d.order(), 15);
    }

    #[test]
    fn reflections_square_to_identity() {
        let d3 = ApGroupTree::dihedral(3).unwrap();
        let s = TreeElement::Semidirect(AbElement(vec![1]), Box::new(leaf(&[1])));
        assert_eq!(d3.multiply(&s, &s).unwrap(), d3.identity());
    }

    #[test]
    fn leaf_addition() {
        let c3 = ApGroupTree::cyclic(3).unwrap();
        assert_eq!(c3.multiply(&leaf(&[1]), &leaf(&[2])).unwrap(), leaf(&[0]));
    }

    #[test]
    fn frobenius_21_product() {
        // mu(g) tau = tau^2 on C(7)
        let h = AbelianGroup::cyclic(7).unwrap();
        let g = ApGroupTree::cyclic(3).unwrap();
        let spec = ActionSpec::new().with(leaf(&[1]), Endo::scalar(&h, 2));
        let f21 = ApGroupTree::semidirect(h, g, &spec, DEFAULT_ENUMERATION_CAP).unwrap();
        let a = TreeElement::Semidirect(AbElement(vec![1]), Box::new(leaf(&[1])));
        let b = TreeElement::Semidirect(AbElement(vec![1]), Box::new(leaf(&[0])));
        // (tau, g)(tau, 1) = (tau * tau^2, g)
        let want = TreeElement::Semidirect(AbElement(vec![3]), Box::new(leaf(&[1])));
        assert_eq!(f21.multiply(&a, &b).unwrap(), want);
    }

    #[test]
    fn shape_mismatch() {
        let d3 = ApGroupTree::dihedral(3).unwrap();
        assert!(matches!(
            d3.multiply(&leaf(&[1]), &leaf(&[1])),
            Err(Error::ShapeMismatch)
        ));
        let c3 = ApGroupTree::cyclic(3).unwrap();
        assert!(matches!(
            c3.multiply(&leaf(&[3]), &leaf(&[1])),
            Err(Error::ShapeMismatch)
        ));
    }

    #[test]
    fn two_sylow_shapes() {
        assert_eq!(ApGroupTree::cyclic(2).unwrap().two_sylow(), TwoSylow::Cyclic);
        let v4 = ApGroupTree::abelian(AbelianGroup::new(vec![2, 2]).unwrap());
        assert_eq!(v4.two_sylow(), TwoSylow::NonCyclic);
        assert!(ApGroupTree::dihedral(15).unwrap().two_sylow_cyclic());
        assert_eq!(ApGroupTree::cyclic(9).unwrap().two_sylow(), TwoSylow::Trivial);
    }

    #[test]
    fn admissibility_of_constructors() {
        let c2 = || ApGroupTree::cyclic(2).unwrap();
        assert!(matches!(ApGroupTree::direct(c2(), c2()), Err(Error::Inadmissible(_))));
        let v4 = || ApGroupTree::abelian(AbelianGroup::new(vec![2, 2]).unwrap());
        assert!(ApGroupTree::direct(v4(), v4()).is_ok());
        assert!(matches!(
            ApGroupTree::semidirect_trivial(AbelianGroup::cyclic(3).unwrap(), ApGroupTree::cyclic(3).unwrap()),
            Err(Error::Inadmissible(_))
        ));
        assert!(matches!(
            ApGroupTree::semidirect_trivial(AbelianGroup::cyclic(4).unwrap(), ApGroupTree::cyclic(3).unwrap()),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn action_validation() {
        let h = AbelianGroup::cyclic(3).unwrap();
        let c2 = ApGroupTree::cyclic(2).unwrap();
        let inv = ActionSpec::new().with(leaf(&[1]), Endo::scalar(&h, -1));
        assert!(validate_action(&h, &c2, &inv, DEFAULT_ENUMERATION_CAP).is_ok());
        let zero = ActionSpec::new().with(leaf(&[1]), Endo::scalar(&h, 0));
        assert!(matches!(
            validate_action(&h, &c2, &zero, DEFAULT_ENUMERATION_CAP),
            Err(Error::NotAutomorphism { .. })
        ));
        // squaring has order 3 in Aut(C(7)), so C(2) cannot act this way
        let h7 = AbelianGroup::cyclic(7).unwrap();
        let sq = ActionSpec::new().with(leaf(&[1]), Endo::scalar(&h7, 2));
        assert!(matches!(
            validate_action(&h7, &c2, &sq, DEFAULT_ENUMERATION_CAP),
            Err(Error::InconsistentAction { .. })
        ));
        let trivial = validate_action(&h, &c2, &ActionSpec::new(), DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(trivial.is_trivial());
    }

    #[test]
    fn action_on_generating_set_is_idempotent() {
        let h = AbelianGroup::cyclic(7).unwrap();
        let g = ApGroupTree::cyclic(3).unwrap();
        let spec = ActionSpec::new().with(leaf(&[1]), Endo::scalar(&h, 2));
        let full = validate_action(&h, &g, &spec, DEFAULT_ENUMERATION_CAP).unwrap();
        let again = validate_action(&h, &g, &full.as_spec(&g), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(full, again);
        assert_eq!(full.get(2), &Endo::scalar(&h, 4));
    }

    #[test]
    fn incomplete_generating_set() {
        let h = AbelianGroup::cyclic(5).unwrap();
        let g = ApGroupTree::abelian(AbelianGroup::new(vec![2, 2]).unwrap());
        let spec = ActionSpec::new().with(TreeElement::Leaf(AbElement(vec![1, 0])), Endo::scalar(&h, -1));
        assert!(matches!(
            validate_action(&h, &g, &spec, DEFAULT_ENUMERATION_CAP),
            Err(Error::IncompleteAction { reached: 2, order: 4 })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let h = AbelianGroup::cyclic(101).unwrap();
        let g = ApGroupTree::cyclic(2).unwrap();
        let spec = ActionSpec::uniform(&g, Endo::scalar(&h, -1));
        assert!(matches!(
            ApGroupTree::semidirect(h, g, &spec, 100),
            Err(Error::CapExceeded { .. })
        ));
    }
}
