//! Smith normal form and the structure of finite abelian groups given by a group law.

use std::collections::HashMap;

/// Diagonal `d` and column transforms `v`, `v_inv` with `U * A * V = diag(d)` for some
/// unimodular `U`. The diagonal is non-negative and each entry divides the next.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<i128>,
    pub v: Vec<Vec<i128>>,
    pub v_inv: Vec<Vec<i128>>,
}

pub fn smith_normal_form(matrix: &[Vec<i128>]) -> Smith {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    let swap_cols = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, v_inv: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    };
    // col_j -= q * col_t
    let col_op =
        |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, v_inv: &mut Vec<Vec<i128>>, t: usize, j: usize, q: i128| {
            for row in a.iter_mut() {
                row[j] -= q * row[t];
            }
            for row in v.iter_mut() {
                row[j] -= q * row[t];
            }
            let (rt, rj) = (v_inv[t].clone(), &v_inv[j]);
            v_inv[t] = rt.iter().zip(rj).map(|(x, y)| x + q * y).collect();
        };

    for t in 0..rows.min(cols) {
        loop {
            // pivot: smallest nonzero magnitude in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            swap_cols(&mut a, &mut v, &mut v_inv, t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    col_op(&mut a, &mut v, &mut v_inv, t, j, q);
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = a[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t].iter_mut().zip(&src) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| a[i][i]).collect();
    Smith { diagonal, v, v_inv }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Invariant-factor decomposition of the subgroup generated by `candidates` inside a finite
/// abelian group whose elements are indices and whose law is `mul`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    /// Descending divisibility chain, every factor at least 2.
    pub invariant_factors: Vec<u64>,
    /// One generator per invariant factor, with the matching order.
    pub generators: Vec<usize>,
    /// Coordinates of every member with respect to `generators`.
    pub coords: HashMap<usize, Vec<u64>>,
}

impl Structure {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

pub fn power<F: Fn(usize, usize) -> usize>(identity: usize, mul: &F, x: usize, mut e: u64) -> usize {
    let mut acc = identity;
    let mut base = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub fn abelian_structure<F>(identity: usize, candidates: &[usize], mul: F) -> Structure
where
    F: Fn(usize, usize) -> usize,
{
    let mut repr: HashMap<usize, Vec<i128>> = HashMap::new();
    repr.insert(identity, Vec::new());
    let mut gens: Vec<usize> = Vec::new();
    let mut relations: Vec<Vec<i128>> = Vec::new();

    for &x in candidates {
        if repr.contains_key(&x) {
            continue;
        }
        let k = gens.len();
        let mut y = x;
        let mut e: i128 = 1;
        while !repr.contains_key(&y) {
            y = mul(y, x);
            e += 1;
        }
        let mut row = vec![0i128; k + 1];
        for (slot, c) in row.iter_mut().zip(&repr[&y]) {
            *slot = -c;
        }
        row[k] = e;
        relations.push(row);

        let snapshot: Vec<(usize, Vec<i128>)> = repr.iter().map(|(&s, r)| (s, r.clone())).collect();
        for (s, rs) in snapshot {
            let mut cur = s;
            for j in 1..e {
                cur = mul(cur, x);
                let mut r = rs.clone();
                r.resize(k + 1, 0);
                r[k] = j;
                repr.insert(cur, r);
            }
        }
        gens.push(x);
    }

    let k = gens.len();
    if k == 0 {
        let mut coords = HashMap::new();
        coords.insert(identity, Vec::new());
        return Structure {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
            coords,
        };
    }
    for row in relations.iter_mut() {
        row.resize(k, 0);
    }
    let smith = smith_normal_form(&relations);
    let order: u64 = smith.diagonal.iter().map(|&d| d as u64).product();

    // keep nontrivial factors, largest first
    let keep: Vec<usize> = (0..k).filter(|&i| smith.diagonal[i] > 1).rev().collect();
    let invariant_factors = keep.iter().map(|&i| smith.diagonal[i] as u64).collect();
    let generators = keep
        .iter()
        .map(|&i| {
            gens.iter().zip(&smith.v_inv[i]).fold(identity, |acc, (&g, &c)| {
                let e = c.rem_euclid(order as i128) as u64;
                mul(acc, power(identity, &mul, g, e))
            })
        })
        .collect();
    let coords = repr
        .into_iter()
        .map(|(x, mut r)| {
            r.resize(k, 0);
            let c = keep
                .iter()
                .map(|&i| {
                    let col: i128 = (0..k).map(|j| r[j] * smith.v[j][i]).sum();
                    col.rem_euclid(smith.diagonal[i]) as u64
                })
                .collect();
            (x, c)
        })
        .collect();
    Structure {
        invariant_factors,
        generators,
        coords,
    }
}
