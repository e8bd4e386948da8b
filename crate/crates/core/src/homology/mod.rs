//! Cochain complexes of nerves and their cohomology over ℤ, ℚ and GF(p).
//!
//! The coboundary is `δ = Σ_i (−1)^i d_i^*`. By default cochains are
//! normalized (they vanish on degenerate simplices); the unnormalized complex
//! is kept for cross-checks.

pub mod cup;

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::linalg::echelon::{accumulator, Field};
use crate::linalg::{smith_normal_form, SparseIntMatrix};
use crate::nerve::levels::DEGENERATE;
use crate::nerve::{NerveLevels, DEFAULT_BUDGET};

pub use cup::{cup_product, is_coboundary, Cochain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u32),
}

impl Coefficients {
    pub fn prime(p: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Unsupported(format!("{p} is not a prime")));
        }
        Ok(Coefficients::Prime(p))
    }

    fn field(self) -> Field {
        match self {
            Coefficients::Prime(p) => Field::Prime(p),
            _ => Field::Rationals,
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" | "integers" => Ok(Coefficients::Integers),
            "Q" | "QQ" | "rationals" => Ok(Coefficients::Rationals),
            _ => {
                let digits = t
                    .strip_prefix("GF(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| t.strip_prefix('F'))
                    .or_else(|| t.strip_prefix("GF"))
                    .ok_or_else(|| Error::Unsupported(format!("unknown coefficient ring {t:?}")))?;
                let p: u32 =
                    digits.parse().map_err(|_| Error::Unsupported(format!("unknown coefficient ring {t:?}")))?;
                Coefficients::prime(p)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyOptions {
    pub max_degree: usize,
    /// Largest number of simplices (normalized or total, whichever is
    /// materialized) allowed at any level.
    pub budget: u64,
    pub normalized: bool,
}

impl CohomologyOptions {
    pub fn new(max_degree: usize) -> Self {
        CohomologyOptions { max_degree, budget: DEFAULT_BUDGET, normalized: true }
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn normalized(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }
}

/// `H^n` over a field (`rank` = dimension) or over ℤ (`rank` = free rank
/// plus the torsion coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
    pub cochains: usize,
    /// Rank of `δ^n: C^n → C^{n+1}`.
    pub coboundary_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub coefficients: Coefficients,
    pub normalized: bool,
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyResult {
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    pub fn torsion(&self, n: usize) -> Vec<u64> {
        self.degrees[n].torsion.iter().filter_map(|t| t.parse().ok()).collect()
    }

    /// Clears timings, leaving only data fixed by the input.
    pub fn without_timings(mut self) -> Self {
        for d in &mut self.degrees {
            d.elapsed_ms = None;
        }
        self
    }
}

/// Sparse rows of `δ^q` for the given `(q+1)`-simplices (by total index),
/// with columns indexed by `q`-simplices (normalized positions if
/// `normalized`). Duplicate columns are merged and zero entries dropped.
fn row_of(levels: &NerveLevels, q: usize, x: u64, column_of: &dyn Fn(u64) -> Option<usize>) -> Vec<(usize, i64)> {
    let s = levels.simplex(q + 1, x);
    let mut row: Vec<(usize, i64)> = Vec::with_capacity(q + 2);
    for i in 0..=q + 1 {
        if let Some(c) = column_of(levels.index_of(&s.face(i))) {
            row.push((c, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    row.sort_unstable_by_key(|e| e.0);
    let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match merged.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|e| e.1 != 0);
    merged
}

/// Row simplices and column map for `δ^q`.
struct Layout {
    rows: Vec<u64>,
    width: usize,
    normalized: bool,
    index: std::sync::Arc<crate::nerve::LevelTable>,
}

impl Layout {
    fn new(levels: &NerveLevels, q: usize, normalized: bool) -> Result<Self> {
        let top = levels.level(q + 1)?;
        let index = levels.level(q)?;
        let (rows, width) = if normalized {
            (top.nondegenerate.clone(), index.nondegenerate.len())
        } else {
            ((0..top.size).collect(), index.size as usize)
        };
        Ok(Layout { rows, width, normalized, index })
    }

    fn column(&self, y: u64) -> Option<usize> {
        if self.normalized {
            let c = self.index.normalized_index[y as usize];
            (c != DEGENERATE).then_some(c as usize)
        } else {
            Some(y as usize)
        }
    }

    fn rows_of(&self, levels: &NerveLevels, q: usize, chunk: &[u64]) -> Vec<Vec<(usize, i64)>> {
        chunk.par_iter().map(|&x| row_of(levels, q, x, &|y| self.column(y))).collect()
    }
}

/// The coboundary `δ^q` as an integer matrix: rows are `(q+1)`-simplices,
/// columns `q`-simplices.
pub fn coboundary(levels: &NerveLevels, q: usize, normalized: bool) -> Result<SparseIntMatrix> {
    let layout = Layout::new(levels, q, normalized)?;
    let rows = layout.rows_of(levels, q, &layout.rows);
    SparseIntMatrix::from_rows(layout.width, &rows)
}

const CHUNK: usize = 1 << 14;

/// Rank of `δ^q` over a field, stopping once `bound` is reached.
fn coboundary_rank(levels: &NerveLevels, q: usize, field: Field, normalized: bool, bound: usize) -> Result<usize> {
    let layout = Layout::new(levels, q, normalized)?;
    let mut acc = accumulator(field, layout.width);
    if bound == 0 {
        return Ok(0);
    }
    for chunk in layout.rows.chunks(CHUNK) {
        for row in layout.rows_of(levels, q, chunk) {
            if !row.is_empty() && acc.insert(&row) && acc.rank() >= bound {
                return Ok(acc.rank());
            }
        }
    }
    Ok(acc.rank())
}

fn cochain_count(levels: &NerveLevels, p: usize, normalized: bool) -> Result<u64> {
    let count = if normalized { levels.nondegenerate_count(p) } else { levels.level_count(p) };
    match count.to_u64() {
        Some(n) if n <= levels.budget() => Ok(n),
        _ => Err(Error::BudgetExceeded {
            level: p,
            required: count.to_string(),
            budget: levels.budget(),
            achievable: None,
        }),
    }
}

/// Largest degree `N` whose computation fits in the budget.
pub fn achievable_degree(cm: &CrossedModule, budget: u64, normalized: bool) -> Option<usize> {
    let levels = NerveLevels::new(cm.clone(), 64, budget);
    let fits = |p: usize| levels.level_size(p).is_ok() && cochain_count(&levels, p, normalized).is_ok();
    (0..63).take_while(|&n| fits(n) && fits(n + 1)).last()
}

/// Cohomology of the nerve of `cm` in degrees `0..=max_degree`.
pub fn cohomology(cm: &CrossedModule, coeffs: Coefficients, opts: &CohomologyOptions) -> Result<CohomologyResult> {
    let levels = NerveLevels::new(cm.clone(), opts.max_degree + 1, opts.budget);
    cohomology_of(&levels, coeffs, opts.max_degree, opts.normalized)
}

pub fn cohomology_of(
    levels: &NerveLevels,
    coeffs: Coefficients,
    max_degree: usize,
    normalized: bool,
) -> Result<CohomologyResult> {
    let budget_error = |e: Error| match e {
        Error::BudgetExceeded { level, required, budget, .. } => Error::BudgetExceeded {
            level,
            required,
            budget,
            achievable: achievable_degree(levels.crossed_module(), budget, normalized),
        },
        other => other,
    };
    let mut dims = Vec::with_capacity(max_degree + 2);
    for p in 0..=max_degree + 1 {
        dims.push(cochain_count(levels, p, normalized).map_err(budget_error)? as usize);
        levels.level_size(p).map_err(budget_error)?;
    }
    let field = coeffs.field();
    let mut degrees = Vec::with_capacity(max_degree + 1);
    let mut previous_rank = 0usize;
    for n in 0..=max_degree {
        let start = Instant::now();
        let bound = (dims[n] - previous_rank).min(dims[n + 1]);
        let r = coboundary_rank(levels, n, field, normalized, bound).map_err(budget_error)?;
        let rank = dims[n] - r - previous_rank;
        let torsion = if coeffs == Coefficients::Integers && n > 0 {
            let m = coboundary(levels, n - 1, normalized)?;
            let snf = smith_normal_form(&m);
            debug_assert_eq!(snf.rank, previous_rank);
            snf.torsion().iter().map(BigInt::to_string).collect()
        } else {
            Vec::new()
        };
        degrees.push(DegreeCohomology {
            degree: n,
            rank,
            torsion,
            cochains: dims[n],
            coboundary_rank: r,
            elapsed_ms: Some(start.elapsed().as_millis()),
        });
        previous_rank = r;
    }
    Ok(CohomologyResult { coefficients: coeffs, normalized, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::cyclic_module;
    use crate::group::{make_cyclic, FiniteGroup};

    fn ranks(cm: &CrossedModule, c: Coefficients, n: usize) -> Vec<usize> {
        cohomology(cm, c, &CohomologyOptions::new(n)).unwrap().ranks()
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("GF(3)".parse::<Coefficients>().unwrap(), Coefficients::Prime(3));
        assert_eq!("F2".parse::<Coefficients>().unwrap(), Coefficients::Prime(2));
        assert!("F4".parse::<Coefficients>().is_err());
        assert!("R".parse::<Coefficients>().is_err());
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let cms = [cyclic_module(2, 1, 0).unwrap(), cyclic_module(4, 2, 1).unwrap(), cyclic_module(2, 4, 2).unwrap()];
        for cm in cms {
            let levels = NerveLevels::new(cm, 4, DEFAULT_BUDGET);
            for normalized in [true, false] {
                for q in 0..3 {
                    let a = coboundary(&levels, q, normalized).unwrap();
                    let b = coboundary(&levels, q + 1, normalized).unwrap();
                    assert!(b.mul(&a).unwrap().is_zero(), "q = {q}");
                }
            }
        }
    }

    #[test]
    fn first_coboundary_of_bz2_vanishes() {
        let levels = NerveLevels::new(CrossedModule::of_group(&make_cyclic(2).unwrap()), 2, DEFAULT_BUDGET);
        let d0 = coboundary(&levels, 0, true).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (1, 1));
        assert!(d0.is_zero());
    }

    #[test]
    fn matrix_shapes_are_nondegenerate_counts() {
        let cm = cyclic_module(4, 2, 1).unwrap();
        let levels = NerveLevels::new(cm.clone(), 4, DEFAULT_BUDGET);
        for q in 0..3 {
            let d = coboundary(&levels, q, true).unwrap();
            assert_eq!(d.rows() as u64, levels.nondegenerate_count(q + 1).to_u64().unwrap());
            assert_eq!(d.cols() as u64, levels.nondegenerate_count(q).to_u64().unwrap());
        }
    }

    #[test]
    fn classifying_space_of_z2() {
        let cm = CrossedModule::of_group(&make_cyclic(2).unwrap());
        assert_eq!(ranks(&cm, Coefficients::Prime(2), 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(ranks(&cm, Coefficients::Rationals, 4), vec![1, 0, 0, 0, 0]);
        let z = cohomology(&cm, Coefficients::Integers, &CohomologyOptions::new(4)).unwrap();
        assert_eq!(z.ranks(), vec![1, 0, 0, 0, 0]);
        assert_eq!((1..5).map(|n| z.torsion(n)).collect::<Vec<_>>(), vec![vec![], vec![2], vec![], vec![2]]);
    }

    #[test]
    fn normalized_and_unnormalized_agree() {
        for cm in [cyclic_module(2, 1, 0).unwrap(), CrossedModule::of_group(&make_cyclic(3).unwrap())] {
            for c in [Coefficients::Prime(2), Coefficients::Prime(3), Coefficients::Rationals] {
                let a = cohomology(&cm, c, &CohomologyOptions::new(3)).unwrap().ranks();
                let b = cohomology(&cm, c, &CohomologyOptions::new(3).normalized(false)).unwrap().ranks();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rational_cohomology_of_finite_groups_vanishes() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(ranks(&CrossedModule::of_group(&s3), Coefficients::Rationals, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn budget_reports_achievable_degree() {
        let cm = cyclic_module(2, 1, 0).unwrap();
        match cohomology(&cm, Coefficients::Prime(2), &CohomologyOptions::new(6).budget(100)) {
            Err(Error::BudgetExceeded { achievable, .. }) => assert_eq!(achievable, Some(3)),
            other => panic!("{other:?}"),
        }
    }
}
