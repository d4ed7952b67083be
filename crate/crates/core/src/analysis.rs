//! Abelianization through the Smith normal form, and orders of finite
//! matrix groups by breadth-first closure.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use crate::congruence::ResidueMatrix;
use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// Default cap on the number of elements visited by [`closure_order`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Isomorphism type of a finitely generated abelian group:
/// `Z/d₁ × … × Z/dₖ × Z^free_rank` with `d₁ | d₂ | … ` and every `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    fn from_diagonal(diagonal: Vec<BigInt>, columns: usize) -> Self {
        let free_rank = columns - diagonal.len();
        let torsion = diagonal.into_iter().filter(|d| !d.is_one()).collect();
        Self { torsion, free_rank }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Nonzero invariant factors of an integer matrix, ascending (so each
/// divides the next), including any 1s.
///
/// Dense elimination, always pivoting on an entry of least absolute value in
/// the remaining block.
#[allow(clippy::needless_range_loop)]
pub fn smith_invariants(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let sub = &q * &a[i][t];
                    a[i][j] -= sub;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // A smaller remainder appeared in row or column t; pivot on it.
                let (pi, pj) = min_in_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility on the block.
            let pivot = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    diagonal
}

fn min_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn min_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..a.len() {
        if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    best
}

/// Abelian invariants of the group presented by `p`.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let n = p.generator_count();
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|w| w.exponent_sums(n)).collect();
    abelian_invariants_of_relations(&rows, n)
}

/// Invariants of `Z^columns` modulo the row lattice.
///
/// Rows with a ±1 entry are used first to eliminate their column
/// sparsely; the remaining block goes through [`smith_invariants`].
pub fn abelian_invariants_of_relations(rows: &[Vec<i64>], columns: usize) -> AbelianInvariants {
    let mut sparse: Vec<BTreeMap<usize, BigInt>> = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(j, &v)| (j, BigInt::from(v))).collect())
        .filter(|r: &BTreeMap<usize, BigInt>| !r.is_empty())
        .collect();
    let mut containing: Vec<HashSet<usize>> = vec![HashSet::new(); columns];
    for (i, r) in sparse.iter().enumerate() {
        for &j in r.keys() {
            containing[j].insert(i);
        }
    }
    let mut alive = vec![true; sparse.len()];
    let mut eliminated = vec![false; columns];
    let mut units_found = 0usize;

    loop {
        // Cheapest unit pivot: shortest row, then lowest column.
        let pivot = sparse
            .iter()
            .enumerate()
            .filter(|(i, _)| alive[*i])
            .filter_map(|(i, r)| r.iter().find(|(_, v)| v.abs().is_one()).map(|(&j, _)| (r.len(), i, j)))
            .min();
        let Some((_, pi, pj)) = pivot else { break };
        let pivot_row = std::mem::take(&mut sparse[pi]);
        alive[pi] = false;
        for &j in pivot_row.keys() {
            containing[j].remove(&pi);
        }
        let sign = pivot_row[&pj].clone();
        let others: Vec<usize> = containing[pj].iter().copied().collect();
        for i in others {
            let factor = &sparse[i][&pj] * &sign;
            for (&j, v) in &pivot_row {
                let entry = sparse[i].entry(j).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    sparse[i].remove(&j);
                    containing[j].remove(&i);
                } else {
                    containing[j].insert(i);
                }
            }
            if sparse[i].is_empty() {
                alive[i] = false;
            }
        }
        debug_assert!(containing[pj].is_empty());
        eliminated[pj] = true;
        units_found += 1;
    }

    let remaining_cols: Vec<usize> = (0..columns).filter(|&j| !eliminated[j]).collect();
    let position: BTreeMap<usize, usize> = remaining_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let dense: Vec<Vec<BigInt>> = sparse
        .iter()
        .enumerate()
        .filter(|(i, r)| alive[*i] && !r.is_empty())
        .map(|(_, r)| {
            let mut row = vec![BigInt::zero(); remaining_cols.len()];
            for (j, v) in r {
                row[position[j]] = v.clone();
            }
            row
        })
        .collect();
    let mut diagonal = vec![BigInt::one(); units_found];
    diagonal.extend(smith_invariants(&dense));
    AbelianInvariants::from_diagonal(diagonal, columns)
}

/// Order of the group generated by `gens`, optionally modulo scalars.
///
/// Breadth-first closure from the identity under right multiplication by the
/// generators. Fails with [`Error::CapExceeded`] once more than `cap`
/// elements have been found.
pub fn closure_order(gens: &[ResidueMatrix], projectivize: bool, cap: usize) -> Result<usize> {
    let Some(first) = gens.first() else { return Ok(1) };
    let modulus = first.modulus();
    if let Some(g) = gens.iter().find(|g| !g.is_invertible() || g.modulus() != modulus) {
        return Err(Error::SingularGenerator(g.modulus()));
    }
    let norm = |m: ResidueMatrix| if projectivize { m.projective_normal_form() } else { m };
    let gens: Vec<ResidueMatrix> = gens.iter().map(|&g| norm(g)).collect();
    let start = norm(ResidueMatrix::identity(modulus));
    let mut seen: HashSet<ResidueMatrix> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let next = norm(m.mul(g));
            if seen.insert(next) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}
