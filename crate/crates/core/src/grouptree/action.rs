use std::collections::VecDeque;

use super::abelian::{AbElement, AbelianGroup};
use super::tree::{ApGroupTree, TreeElement};
use crate::error::{Error, Result};

/// An endomorphism of `H` stored by columns: column `j` is the image of `tau_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endo {
    cols: Vec<AbElement>,
}

impl Endo {
    pub fn identity(h: &AbelianGroup) -> Self {
        Endo {
            cols: (0..h.rank()).map(|j| h.generator(j)).collect(),
        }
    }

    /// Multiplication by `k` on every coordinate; `k = -1` is inversion.
    pub fn scalar(h: &AbelianGroup, k: i64) -> Self {
        Endo {
            cols: (0..h.rank()).map(|j| h.scale(&h.generator(j), k)).collect(),
        }
    }

    /// Builds from a row-major integer matrix, reducing row `i` modulo `n_i`, and checks the
    /// matrix is a well-defined endomorphism (each column has order dividing `n_j`).
    pub fn from_rows(h: &AbelianGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let r = h.rank();
        if rows.len() != r || rows.iter().any(|row| row.len() != r) {
            return Err(Error::Spec(format!(
                "action matrix must be {r}x{r} for {h}, got {} rows",
                rows.len()
            )));
        }
        let n = h.factors();
        let cols: Vec<AbElement> = (0..r)
            .map(|j| AbElement((0..r).map(|i| rows[i][j].rem_euclid(n[i] as i64) as u64).collect()))
            .collect();
        for (j, col) in cols.iter().enumerate() {
            if !n[j].is_multiple_of(h.element_order(col)) {
                return Err(Error::NotAutomorphism {
                    element: format!("column {j}"),
                    reason: format!(
                        "image {col} of tau_{} has order {} not dividing {}",
                        j + 1,
                        h.element_order(col),
                        n[j]
                    ),
                });
            }
        }
        Ok(Endo { cols })
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        let r = self.cols.len();
        (0..r)
            .map(|i| (0..r).map(|j| self.cols[j].0[i] as i64).collect())
            .collect()
    }

    pub fn apply(&self, h: &AbelianGroup, v: &AbElement) -> AbElement {
        let mut out = h.zero();
        for (col, &c) in self.cols.iter().zip(&v.0) {
            out = h.add(&out, &h.scale(col, c as i64));
        }
        out
    }

    pub(crate) fn apply_slice(&self, factors: &[u64], v: &[u64], out: &mut [u64]) {
        out.iter_mut().for_each(|x| *x = 0);
        for (col, &c) in self.cols.iter().zip(v) {
            for ((o, &x), &n) in out.iter_mut().zip(&col.0).zip(factors) {
                *o = ((*o as u128 + x as u128 * c as u128) % n as u128) as u64;
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, h: &AbelianGroup, other: &Endo) -> Endo {
        Endo {
            cols: other.cols.iter().map(|c| self.apply(h, c)).collect(),
        }
    }

    pub fn is_automorphism(&self, h: &AbelianGroup) -> bool {
        let order = h.order() as usize;
        let mut seen = vec![false; order];
        for t in h.elements() {
            let idx = h.index_of(&self.apply(h, &t));
            if seen[idx] {
                return false;
            }
            seen[idx] = true;
        }
        true
    }
}

/// A homomorphism `G -> Aut(H)` tabulated over the canonical element order of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Action {
    table: Vec<Endo>,
}

/// Action data as authored: matrices on (at least) a generating set of `G`.
#[derive(Debug, Clone, Default)]
pub struct ActionSpec {
    pub on_generators: Vec<(TreeElement, Endo)>,
}

impl ActionSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, g: TreeElement, m: Endo) -> Self {
        self.on_generators.push((g, m));
        self
    }

    /// Every generator of `G` acts by the same endomorphism `m`.
    pub fn uniform(g: &ApGroupTree, m: Endo) -> Self {
        ActionSpec {
            on_generators: g.generators().into_iter().map(|x| (x, m.clone())).collect(),
        }
    }
}

impl Action {
    pub fn get(&self, g_index: usize) -> &Endo {
        &self.table[g_index]
    }

    pub fn table(&self) -> &[Endo] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    /// The completed table as a generator spec listing every element.
    pub fn as_spec(&self, g: &ApGroupTree) -> ActionSpec {
        ActionSpec {
            on_generators: self
                .table
                .iter()
                .enumerate()
                .map(|(i, m)| (g.element_at(i), m.clone()))
                .collect(),
        }
    }
}

/// Completes `spec` to a full table by breadth-first closure over the elements of `g`,
/// checking that each matrix is an automorphism and that the closure is consistent.
/// An empty spec is read as the trivial action.
pub fn validate_action(h: &AbelianGroup, g: &ApGroupTree, spec: &ActionSpec, cap: usize) -> Result<Action> {
    let order = g.order();
    if order as u128 > cap as u128 || h.order() as u128 > cap as u128 {
        return Err(Error::CapExceeded {
            what: "action domain",
            size: (order as u128).max(h.order() as u128),
            cap,
        });
    }
    if spec.on_generators.is_empty() {
        return Ok(Action {
            table: vec![Endo::identity(h); order as usize],
        });
    }

    let mut gens: Vec<(usize, Endo)> = Vec::with_capacity(spec.on_generators.len());
    for (x, m) in &spec.on_generators {
        let flat = g.flatten(x)?;
        if m.cols.len() != h.rank() || m.cols.iter().any(|c| !h.is_member(c)) {
            return Err(Error::ShapeMismatch);
        }
        if !m.is_automorphism(h) {
            return Err(Error::NotAutomorphism {
                element: format!("{x}"),
                reason: "matrix is not invertible on H".into(),
            });
        }
        gens.push((g.index_of_flat(&flat), m.clone()));
    }

    let n = order as usize;
    let mut table: Vec<Option<Endo>> = vec![None; n];
    let identity = g.index_of_flat(&g.identity_flat());
    table[identity] = Some(Endo::identity(h));
    let mut queue = VecDeque::from([identity]);
    let mut reached = 1usize;
    let mut prod = vec![0u64; g.width()];
    while let Some(x) = queue.pop_front() {
        let xf = g.flat_at(x);
        let mx = table[x].clone().expect("queued elements are assigned");
        for (gi, mg) in &gens {
            g.mul_flat(&xf, &g.flat_at(*gi), &mut prod);
            let y = g.index_of_flat(&prod);
            let expected = mx.compose(h, mg);
            match &table[y] {
                Some(existing) if *existing != expected => {
                    return Err(Error::InconsistentAction {
                        element: format!("{}", g.element_at(y)),
                    });
                }
                Some(_) => {}
                None => {
                    table[y] = Some(expected);
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
    }
    if reached != n {
        return Err(Error::IncompleteAction { reached, order });
    }
    Ok(Action {
        table: table
            .into_iter()
            .map(|m| m.expect("closure reached every element"))
            .collect(),
    })
}
