//! Smith normal form over ℤ.
//!
//! Small matrices go straight to a dense elimination that always pivots on an
//! entry of least absolute value. Larger ones first lose every unit pivot by
//! sparse elimination (choosing the pivot with the smallest fill estimate),
//! which leaves a much smaller Schur complement for the dense stage.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::sparse::SparseIntMatrix;

/// Above this size the sparse unit-pivot stage runs first.
pub const DENSE_LIMIT: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SNFResult {
    pub rank: usize,
    /// Positive elementary divisors `d₁ | d₂ | …`, one per unit of rank.
    #[serde(serialize_with = "serialize_bigints")]
    pub divisors: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl SNFResult {
    /// Divisors different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_chain(&self) -> bool {
        self.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()) && self.divisors.iter().all(|d| d.is_positive())
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SNFResult {
    let mut diagonal = Vec::new();
    let rest = if m.rows().max(m.cols()) > DENSE_LIMIT {
        let (ones, rest) = eliminate_units(m);
        diagonal.extend(std::iter::repeat_n(BigInt::one(), ones));
        rest
    } else {
        m.to_dense()
    };
    diagonal.extend(dense_diagonal(rest));
    let divisors = normalize_chain(diagonal);
    SNFResult { rank: divisors.len(), divisors }
}

/// Sparse elimination of ±1 pivots. Returns how many were removed and the
/// remaining block as a dense matrix.
fn eliminate_units(m: &SparseIntMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, c, x) in m.entries() {
        rows[*r].insert(*c, x.clone());
        cols[*c].insert(*r);
    }
    let mut alive_rows: BTreeSet<usize> = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();
    let mut ones = 0;
    loop {
        // pivot with the least (row nnz − 1)·(col nnz − 1)
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &alive_rows {
            if best.is_some_and(|(cost, _, _)| cost == 0) {
                break;
            }
            let rn = rows[r].len() - 1;
            for (&c, x) in &rows[r] {
                if x.abs().is_one() {
                    let cost = rn * (cols[c].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, c));
                    }
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        let pivot_row = rows[r].clone();
        let u = pivot_row[&c].clone();
        let others: Vec<usize> = cols[c].iter().copied().filter(|&s| s != r).collect();
        for s in others {
            let f = &rows[s][&c] * &u;
            for (&k, y) in &pivot_row {
                let entry = rows[s].entry(k).or_insert_with(BigInt::zero);
                *entry -= &f * y;
                if entry.is_zero() {
                    rows[s].remove(&k);
                    cols[k].remove(&s);
                } else {
                    cols[k].insert(s);
                }
            }
            if rows[s].is_empty() {
                alive_rows.remove(&s);
            }
        }
        for &k in pivot_row.keys() {
            cols[k].remove(&r);
        }
        rows[r].clear();
        alive_rows.remove(&r);
        ones += 1;
    }
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| !cols[c].is_empty()).collect();
    let position: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let dense = alive_rows
        .iter()
        .map(|&r| {
            let mut v = vec![BigInt::zero(); live_cols.len()];
            for (c, x) in &rows[r] {
                v[position[c]] = x.clone();
            }
            v
        })
        .collect();
    (ones, dense)
}

/// Diagonalizes by unimodular row and column operations; returns the
/// nonzero diagonal entries (not yet a divisibility chain).
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_entry(&a, t, |_, _| true) else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    let (head, tail) = a.split_at_mut(i);
                    let (pivot, target) = (&head[t], &mut tail[0]);
                    for k in t..cols {
                        if !pivot[k].is_zero() {
                            target[k] -= &q * &pivot[k];
                        }
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for k in t + 1..cols {
                if !a[t][k].is_zero() {
                    let q = a[t][k].div_floor(&p);
                    for row in a.iter_mut().skip(t) {
                        if !row[t].is_zero() {
                            let d = &q * &row[t];
                            row[k] -= d;
                        }
                    }
                    dirty |= !a[t][k].is_zero();
                }
            }
            if !dirty {
                break;
            }
            // a smaller remainder now sits in row t or column t
            let (pr, pc) = min_entry(&a, t, |i, k| i == t || k == t).expect("nonzero remainder");
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn min_entry(a: &[Vec<BigInt>], t: usize, allowed: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (k, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && allowed(i, k) {
                let m = x.abs();
                if best.as_ref().is_none_or(|(b, _, _)| m < *b) {
                    let done = m.is_one();
                    best = Some((m, i, k));
                    if done {
                        return best.map(|(_, i, k)| (i, k));
                    }
                }
            }
        }
    }
    best.map(|(_, i, k)| (i, k))
}

/// Replaces pairs by `(gcd, lcm)` until the diagonal is a divisibility chain.
fn normalize_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.retain(|x| !x.is_zero());
    for x in d.iter_mut() {
        *x = x.abs();
    }
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if !(&d[j] % &d[i]).is_zero() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}
