//! Cayley tables and the solvable-A-group verifier.

use super::tree::ApGroupTree;
use crate::arith::{l_part, prime_divisors};
use crate::error::{Error, Result};

/// Largest order for which a full multiplication table is materialised.
pub const DEFAULT_TABLE_CAP: usize = 2048;

/// Associativity is checked exhaustively up to this order and on a fixed sample above it.
const FULL_ASSOCIATIVITY_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    data: Vec<u32>,
}

impl CayleyTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotAGroup("table is not square".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            for x in r {
                if x >= n {
                    return Err(Error::NotAGroup(format!("entry {x} out of range")));
                }
                data.push(x as u32);
            }
        }
        Ok(CayleyTable { n, data })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data[a * self.n + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    /// Latin square, two-sided identity, inverses and associativity. Returns the identity.
    pub fn check_group(&self) -> Result<usize> {
        let n = self.n;
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut seen = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let x = self.mul(i, j);
                if seen[x] == i + 1 {
                    return Err(Error::NotAGroup(format!("row {i} repeats {x}")));
                }
                seen[x] = i + 1;
            }
        }
        let mut seen = vec![0usize; n];
        for j in 0..n {
            for i in 0..n {
                let x = self.mul(i, j);
                if seen[x] == j + 1 {
                    return Err(Error::NotAGroup(format!("column {j} repeats {x}")));
                }
                seen[x] = j + 1;
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let check = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(Error::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                        }
                    }
                }
            }
        } else {
            // deterministic linear-congruential sample
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) as usize % n
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                if !check(a, b, c) {
                    return Err(Error::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
        Ok(e)
    }

    pub fn element_order(&self, e: usize, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != e {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, e: usize, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[e] = true;
        let mut list = vec![e];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    fn inverse(&self, e: usize, x: usize) -> usize {
        (0..self.n)
            .find(|&y| self.mul(x, y) == e)
            .expect("groups have inverses")
    }

    /// Commutator subgroup of the subgroup `sub` (a sorted member list).
    pub fn derived_subgroup(&self, e: usize, sub: &[usize]) -> Vec<usize> {
        let inv: Vec<usize> = (0..self.n).map(|x| self.inverse(e, x)).collect();
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.n];
        for &a in sub {
            for &b in sub {
                let c = self.mul(self.mul(inv[a], inv[b]), self.mul(a, b));
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.closure(e, &comms)
    }

    pub fn is_abelian(&self, sub: &[usize]) -> bool {
        sub.iter()
            .all(|&a| sub.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// One Sylow l-subgroup, grown greedily from the identity by adjoining l-elements
    /// whenever the enlarged closure is still an l-group.
    pub fn sylow_subgroup(&self, e: usize, l: u64) -> Vec<usize> {
        let target = l_part(self.n as u64, l) as usize;
        let l_elements: Vec<usize> = (0..self.n)
            .filter(|&x| {
                let o = self.element_order(e, x) as u64;
                l_part(o, l) == o
            })
            .collect();
        let mut p = vec![e];
        while p.len() < target {
            let mut grown = false;
            for &x in &l_elements {
                if p.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = p.clone();
                gens.push(x);
                let q = self.closure(e, &gens);
                if l_part(q.len() as u64, l) == q.len() as u64 {
                    p = q;
                    grown = true;
                    break;
                }
            }
            assert!(grown, "an l-subgroup below Sylow order always has a proper l-overgroup");
        }
        p
    }

    /// Whether the Sylow 2-subgroup is cyclic (trivial counts as cyclic).
    pub fn two_sylow_is_cyclic(&self) -> Result<bool> {
        let e = self.check_group()?;
        let p = self.sylow_subgroup(e, 2);
        Ok(p.iter().any(|&x| self.element_order(e, x) == p.len()))
    }
}

impl ApGroupTree {
    /// Cayley table in canonical element order.
    pub fn to_multiplication_table(&self, cap: usize) -> Result<CayleyTable> {
        let n = self.order();
        if n as u128 > cap as u128 {
            return Err(Error::CapExceeded {
                what: "multiplication table",
                size: n as u128,
                cap,
            });
        }
        let n = n as usize;
        let flats: Vec<Vec<u64>> = (0..n).map(|i| self.flat_at(i)).collect();
        let mut out = vec![0u64; self.width()];
        let mut data = Vec::with_capacity(n * n);
        for a in &flats {
            for b in &flats {
                self.mul_flat(a, b, &mut out);
                data.push(self.index_of_flat(&out) as u32);
            }
        }
        Ok(CayleyTable { n, data })
    }
}

/// True iff the table is a solvable group whose Sylow subgroups are all abelian.
pub fn is_solvable_a_group(table: &CayleyTable) -> Result<bool> {
    let e = table.check_group()?;
    let mut current: Vec<usize> = (0..table.order()).collect();
    loop {
        let next = table.derived_subgroup(e, &current);
        if next.len() == 1 {
            break;
        }
        if next.len() == current.len() {
            return Ok(false);
        }
        current = next;
    }
    for l in prime_divisors(table.order() as u64) {
        if !table.is_abelian(&table.sylow_subgroup(e, l)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutation_table(perms: &[Vec<usize>]) -> CayleyTable {
        // (p * q)(i) = p(q(i))
        let idx = |p: &Vec<usize>| perms.iter().position(|x| x == p).unwrap();
        let rows = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx(&q.iter().map(|&i| p[i]).collect())).collect())
            .collect();
        CayleyTable::from_rows(rows).unwrap()
    }

    fn s3() -> CayleyTable {
        permutation_table(&[
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ])
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }

    /// Isomorphism test by backtracking over images of a generating pair.
    fn isomorphic(a: &CayleyTable, b: &CayleyTable) -> bool {
        if a.order() != b.order() {
            return false;
        }
        let n = a.order();
        let (ea, eb) = (a.check_group().unwrap(), b.check_group().unwrap());
        let order_profile = |t: &CayleyTable, e: usize| {
            let mut v: Vec<usize> = (0..n).map(|x| t.element_order(e, x)).collect();
            v.sort();
            v
        };
        if order_profile(a, ea) != order_profile(b, eb) {
            return false;
        }
        // brute force over all bijections fixing identity is fine for n <= 8
        let others_a: Vec<usize> = (0..n).filter(|&x| x != ea).collect();
        let others_b: Vec<usize> = (0..n).filter(|&x| x != eb).collect();
        all_perms(n - 1).into_iter().any(|p| {
            let mut f = vec![0; n];
            f[ea] = eb;
            for (i, &x) in others_a.iter().enumerate() {
                f[x] = others_b[p[i]];
            }
            (0..n).all(|x| (0..n).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])))
        })
    }

    #[test]
    fn c2_table() {
        let t = ApGroupTree::cyclic(2)
            .unwrap()
            .to_multiplication_table(DEFAULT_TABLE_CAP)
            .unwrap();
        assert_eq!(t.rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn d3_table_is_s3() {
        let t = ApGroupTree::dihedral(3)
            .unwrap()
            .to_multiplication_table(DEFAULT_TABLE_CAP)
            .unwrap();
        assert!(isomorphic(&t, &s3()));
        let c6 = ApGroupTree::cyclic(6)
            .unwrap()
            .to_multiplication_table(DEFAULT_TABLE_CAP)
            .unwrap();
        assert!(!isomorphic(&c6, &s3()));
    }

    #[test]
    fn c3xc3_latin_square() {
        let h = crate::grouptree::AbelianGroup::new(vec![3, 3]).unwrap();
        let t = ApGroupTree::abelian(h)
            .to_multiplication_table(DEFAULT_TABLE_CAP)
            .unwrap();
        assert_eq!(t.order(), 9);
        assert_eq!(t.check_group().unwrap(), 0);
    }

    #[test]
    fn solvable_a_groups() {
        assert!(is_solvable_a_group(&s3()).unwrap());
        let c8 = ApGroupTree::cyclic(8)
            .unwrap()
            .to_multiplication_table(DEFAULT_TABLE_CAP)
            .unwrap();
        assert!(is_solvable_a_group(&c8).unwrap());
    }

    #[test]
    fn non_examples() {
        // S4 is solvable but its Sylow 2-subgroup D4 is not abelian
        let s4 = permutation_table(&all_perms(4));
        assert!(!is_solvable_a_group(&s4).unwrap());
        // A5 is not solvable
        let a5: Vec<Vec<usize>> = all_perms(5)
            .into_iter()
            .filter(|p| {
                let inv = (0..5)
                    .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                inv % 2 == 0
            })
            .collect();
        assert!(!is_solvable_a_group(&permutation_table(&a5)).unwrap());
    }

    #[test]
    fn rejects_non_groups() {
        let bad = CayleyTable::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(matches!(is_solvable_a_group(&bad), Err(Error::NotAGroup(_))));
        // a Latin square with identity where every element is an involution; order 5 rules out a group
        let q = CayleyTable::from_rows(vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap();
        assert!(matches!(q.check_group(), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn cap_on_tables() {
        let t = ApGroupTree::cyclic(5000).unwrap();
        assert!(matches!(
            t.to_multiplication_table(DEFAULT_TABLE_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }
}
