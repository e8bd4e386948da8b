use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::chart::NormalizedCoordinates;
use super::simplex::NerveSimplex;
use crate::crossed::CrossedModule;
use crate::error::{Error, Result};

/// Default cap on the number of simplices materialized at any one level.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Marks a degenerate simplex in [`LevelTable::normalized_index`].
pub const DEGENERATE: u32 = u32::MAX;

/// One materialized level.
#[derive(Debug)]
pub struct LevelTable {
    pub level: usize,
    pub size: u64,
    /// Indices of the nondegenerate simplices, ascending.
    pub nondegenerate: Vec<u64>,
    /// Total index → position in `nondegenerate`, or [`DEGENERATE`].
    pub normalized_index: Vec<u32>,
}

/// The nerve `N_•[G → H]` with lazily materialized levels.
///
/// Simplices are addressed by their index in the generic chart
/// ([`NormalizedCoordinates::index`]).
pub struct NerveLevels {
    cm: CrossedModule,
    max_level: usize,
    budget: u64,
    tables: Vec<OnceLock<Arc<LevelTable>>>,
}

impl std::fmt::Debug for NerveLevels {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NerveLevels").field("max_level", &self.max_level).field("budget", &self.budget).finish()
    }
}

/// `|G|^{p(p−1)/2}·|H|^p`.
pub fn level_count(cm: &CrossedModule, p: usize) -> BigUint {
    let g = BigUint::from(cm.g().order());
    let h = BigUint::from(cm.h().order());
    g.pow((p * p.saturating_sub(1) / 2) as u32) * h.pow(p as u32)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for t in 0..k {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// Number of nondegenerate `p`-simplices from `|N_p| = Σ_k C(p,k)·nd_k`.
pub fn nondegenerate_count(cm: &CrossedModule, p: usize) -> BigUint {
    let mut nd: Vec<BigUint> = Vec::with_capacity(p + 1);
    for q in 0..=p {
        let mut v = level_count(cm, q);
        for (k, x) in nd.iter().enumerate() {
            v -= binomial(q, k) * x;
        }
        nd.push(v);
    }
    nd.pop().unwrap_or_else(BigUint::zero)
}

impl NerveLevels {
    pub fn new(cm: CrossedModule, max_level: usize, budget: u64) -> Self {
        let tables = (0..=max_level).map(|_| OnceLock::new()).collect();
        NerveLevels { cm, max_level, budget, tables }
    }

    pub fn crossed_module(&self) -> &CrossedModule {
        &self.cm
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn level_count(&self, p: usize) -> BigUint {
        level_count(&self.cm, p)
    }

    pub fn nondegenerate_count(&self, p: usize) -> BigUint {
        nondegenerate_count(&self.cm, p)
    }

    /// `|N_p|` if it is within the budget.
    pub fn level_size(&self, p: usize) -> Result<u64> {
        let count = self.level_count(p);
        match count.to_u64() {
            Some(n) if n <= self.budget && n <= u32::MAX as u64 => Ok(n),
            _ => Err(Error::BudgetExceeded {
                level: p,
                required: count.to_string(),
                budget: self.budget,
                achievable: self.highest_level_within_budget(),
            }),
        }
    }

    /// Largest level whose cardinality fits the budget.
    pub fn highest_level_within_budget(&self) -> Option<usize> {
        let cap = BigUint::from(self.budget.min(u32::MAX as u64));
        (0..=self.max_level.max(1) + 1).take_while(|&p| self.level_count(p) <= cap).last()
    }

    pub fn simplex(&self, p: usize, index: u64) -> NerveSimplex {
        NormalizedCoordinates::from_index(p, index, self.cm.g().order(), self.cm.h().order()).to_simplex(&self.cm)
    }

    pub fn index_of(&self, s: &NerveSimplex) -> u64 {
        NormalizedCoordinates::from_simplex(s).index(self.cm.g().order(), self.cm.h().order())
    }

    pub fn face(&self, p: usize, i: usize, index: u64) -> Result<u64> {
        if p == 0 || i > p {
            return Err(Error::IndexOutOfRange { index: i, bound: p + usize::from(p > 0) });
        }
        Ok(self.index_of(&self.simplex(p, index).face(i)))
    }

    pub fn degeneracy(&self, p: usize, i: usize, index: u64) -> Result<u64> {
        if i > p {
            return Err(Error::IndexOutOfRange { index: i, bound: p + 1 });
        }
        Ok(self.index_of(&self.simplex(p, index).degeneracy(i)))
    }

    /// Materializes level `p`, sorting its simplices into degenerate and not.
    pub fn level(&self, p: usize) -> Result<Arc<LevelTable>> {
        if p > self.max_level {
            return Err(Error::IndexOutOfRange { index: p, bound: self.max_level + 1 });
        }
        if let Some(t) = self.tables[p].get() {
            return Ok(t.clone());
        }
        let size = self.level_size(p)?;
        let flags: Vec<bool> = (0..size).into_par_iter().map(|x| !self.simplex(p, x).is_degenerate()).collect();
        let mut nondegenerate = Vec::new();
        let mut normalized_index = vec![DEGENERATE; size as usize];
        for (x, &keep) in flags.iter().enumerate() {
            if keep {
                normalized_index[x] = nondegenerate.len() as u32;
                nondegenerate.push(x as u64);
            }
        }
        let table = Arc::new(LevelTable { level: p, size, nondegenerate, normalized_index });
        Ok(self.tables[p].get_or_init(|| table).clone())
    }
}

/// `d_i` in the generic chart.
pub fn face(cm: &CrossedModule, i: usize, x: &NormalizedCoordinates) -> Result<NormalizedCoordinates> {
    if x.level == 0 || i > x.level {
        return Err(Error::IndexOutOfRange { index: i, bound: x.level + usize::from(x.level > 0) });
    }
    Ok(NormalizedCoordinates::from_simplex(&x.to_simplex(cm).face(i)))
}

/// `s_i` in the generic chart.
pub fn degeneracy(cm: &CrossedModule, i: usize, x: &NormalizedCoordinates) -> Result<NormalizedCoordinates> {
    if i > x.level {
        return Err(Error::IndexOutOfRange { index: i, bound: x.level + 1 });
    }
    Ok(NormalizedCoordinates::from_simplex(&x.to_simplex(cm).degeneracy(i)))
}
