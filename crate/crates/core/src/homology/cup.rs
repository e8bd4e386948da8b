//! Cochains on all simplices of a level, the Alexander–Whitney cup product,
//! and a coboundary test.

use crate::error::{Error, Result};
use crate::linalg::echelon::{accumulator, Field};
use crate::nerve::levels::DEGENERATE;
use crate::nerve::NerveLevels;

/// A `degree`-cochain with integer values on every simplex of the level,
/// reduced modulo `modulus` when present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<i64>,
    pub modulus: Option<u32>,
}

impl Cochain {
    pub fn new(degree: usize, values: Vec<i64>, modulus: Option<u32>) -> Self {
        let mut c = Cochain { degree, values, modulus };
        c.reduce();
        c
    }

    pub fn zero(levels: &NerveLevels, degree: usize, modulus: Option<u32>) -> Result<Self> {
        Ok(Cochain { degree, values: vec![0; levels.level_size(degree)? as usize], modulus })
    }

    /// Cochain with value `f(x)` on the simplex of index `x`.
    pub fn from_fn(levels: &NerveLevels, degree: usize, modulus: Option<u32>, f: impl Fn(u64) -> i64) -> Result<Self> {
        let n = levels.level_size(degree)?;
        Ok(Self::new(degree, (0..n).map(f).collect(), modulus))
    }

    /// The constant 0-cochain 1.
    pub fn unit(modulus: Option<u32>) -> Self {
        Self::new(0, vec![1], modulus)
    }

    fn reduce(&mut self) {
        if let Some(p) = self.modulus {
            for v in &mut self.values {
                *v = v.rem_euclid(p as i64);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, o: &Cochain) -> Result<Cochain> {
        self.compatible(o)?;
        if self.degree != o.degree {
            return Err(Error::DimensionMismatch("sum of cochains of different degrees".into()));
        }
        Ok(Self::new(self.degree, self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(), self.modulus))
    }

    pub fn scale(&self, k: i64) -> Cochain {
        Self::new(self.degree, self.values.iter().map(|v| v * k).collect(), self.modulus)
    }

    fn compatible(&self, o: &Cochain) -> Result<()> {
        if self.modulus != o.modulus {
            return Err(Error::DimensionMismatch("cochains over different coefficient rings".into()));
        }
        Ok(())
    }

    /// True iff the cochain vanishes on degenerate simplices.
    pub fn is_normalized(&self, levels: &NerveLevels) -> Result<bool> {
        let t = levels.level(self.degree)?;
        Ok(self.values.iter().enumerate().all(|(x, &v)| v == 0 || t.normalized_index[x] != DEGENERATE))
    }

    /// `(δa)(x) = Σ_i (−1)^i a(d_i x)`.
    pub fn coboundary(&self, levels: &NerveLevels) -> Result<Cochain> {
        let q = self.degree + 1;
        let n = levels.level_size(q)?;
        let values = (0..n)
            .map(|x| {
                let s = levels.simplex(q, x);
                (0..=q)
                    .map(|i| {
                        let v = self.values[levels.index_of(&s.face(i)) as usize];
                        if i % 2 == 0 { v } else { -v }
                    })
                    .sum()
            })
            .collect();
        Ok(Self::new(q, values, self.modulus))
    }
}

/// `(a⌣b)(x) = a(x|₀..ₚ)·b(x|ₚ..ₚ₊q)`.
pub fn cup_product(levels: &NerveLevels, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    a.compatible(b)?;
    let (p, q) = (a.degree, b.degree);
    let n = levels.level_size(p + q)?;
    if a.values.len() as u64 != levels.level_size(p)? || b.values.len() as u64 != levels.level_size(q)? {
        return Err(Error::DimensionMismatch("cochain length does not match its level".into()));
    }
    let values = (0..n)
        .map(|x| {
            let s = levels.simplex(p + q, x);
            let front = a.values[levels.index_of(&s.front(p)) as usize];
            if front == 0 {
                return 0;
            }
            front * b.values[levels.index_of(&s.back(p)) as usize]
        })
        .collect();
    Ok(Cochain::new(p + q, values, a.modulus))
}

/// True iff the normalized cochain `c` is `δb` for some `b`, over GF(p) when
/// `c` has a modulus and over ℚ otherwise.
pub fn is_coboundary(levels: &NerveLevels, c: &Cochain) -> Result<bool> {
    let q = c.degree;
    if !c.is_normalized(levels)? {
        return Err(Error::DimensionMismatch("coboundary test expects a normalized cochain".into()));
    }
    let top = levels.level(q)?;
    let target: Vec<(usize, i64)> = top
        .nondegenerate
        .iter()
        .enumerate()
        .filter_map(|(k, &x)| (c.values[x as usize] != 0).then_some((k, c.values[x as usize])))
        .collect();
    if q == 0 {
        return Ok(target.is_empty());
    }
    let bottom = levels.level(q - 1)?;
    // columns of δ^{q−1} = images of basis cochains on nondegenerate (q−1)-simplices
    let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); bottom.nondegenerate.len()];
    for (k, &x) in top.nondegenerate.iter().enumerate() {
        let s = levels.simplex(q, x);
        for i in 0..=q {
            let y = bottom.normalized_index[levels.index_of(&s.face(i)) as usize];
            if y != DEGENERATE {
                columns[y as usize].push((k, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
    }
    let field = match c.modulus {
        Some(p) => Field::Prime(p),
        None => Field::Rationals,
    };
    let mut acc = accumulator(field, top.nondegenerate.len());
    for col in &columns {
        acc.insert(col);
    }
    Ok(acc.contains(&target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::{cyclic_module, CrossedModule};
    use crate::group::make_cyclic;
    use crate::nerve::DEFAULT_BUDGET;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_normalized(levels: &NerveLevels, deg: usize, m: Option<u32>, rng: &mut ChaCha8Rng) -> Cochain {
        let t = levels.level(deg).unwrap();
        let vals = (0..t.size).map(|x| if t.normalized_index[x as usize] == DEGENERATE { 0 } else { rng.random_range(-3..=3) }).collect();
        Cochain::new(deg, vals, m)
    }

    #[test]
    fn unit_is_two_sided() {
        let levels = NerveLevels::new(cyclic_module(2, 1, 0).unwrap(), 4, DEFAULT_BUDGET);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let one = Cochain::unit(Some(2));
        for deg in 0..4 {
            let a = random_normalized(&levels, deg, Some(2), &mut rng);
            assert_eq!(cup_product(&levels, &one, &a).unwrap(), a);
            assert_eq!(cup_product(&levels, &a, &one).unwrap(), a);
        }
    }

    #[test]
    fn leibniz_and_associativity() {
        let levels = NerveLevels::new(cyclic_module(2, 1, 0).unwrap(), 5, DEFAULT_BUDGET);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for m in [None, Some(2), Some(3)] {
            for p in 0..=2 {
                for q in 0..=(4 - p).min(2) {
                    if p + q + 1 > 5 {
                        continue;
                    }
                    let a = random_normalized(&levels, p, m, &mut rng);
                    let b = random_normalized(&levels, q, m, &mut rng);
                    let lhs = cup_product(&levels, &a, &b).unwrap().coboundary(&levels).unwrap();
                    let sign = if p % 2 == 0 { 1 } else { -1 };
                    let rhs = cup_product(&levels, &a.coboundary(&levels).unwrap(), &b)
                        .unwrap()
                        .add(&cup_product(&levels, &a, &b.coboundary(&levels).unwrap()).unwrap().scale(sign))
                        .unwrap();
                    assert_eq!(lhs, rhs, "p={p} q={q} m={m:?}");
                }
            }
            let a = random_normalized(&levels, 1, m, &mut rng);
            let b = random_normalized(&levels, 2, m, &mut rng);
            let c = random_normalized(&levels, 1, m, &mut rng);
            let left = cup_product(&levels, &cup_product(&levels, &a, &b).unwrap(), &c).unwrap();
            let right = cup_product(&levels, &a, &cup_product(&levels, &b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn square_of_the_degree_one_class_of_bz2() {
        let levels = NerveLevels::new(CrossedModule::of_group(&make_cyclic(2).unwrap()), 3, DEFAULT_BUDGET);
        // x(e) = e on the edge labelled by e ∈ Z/2
        let x = Cochain::from_fn(&levels, 1, Some(2), |i| i as i64).unwrap();
        assert!(x.is_normalized(&levels).unwrap());
        assert!(x.coboundary(&levels).unwrap().is_zero());
        assert!(!is_coboundary(&levels, &x).unwrap());
        let xx = cup_product(&levels, &x, &x).unwrap();
        assert!(xx.coboundary(&levels).unwrap().is_zero());
        assert!(!xx.is_zero());
        assert!(!is_coboundary(&levels, &xx).unwrap());
        let xxx = cup_product(&levels, &xx, &x).unwrap();
        assert!(!is_coboundary(&levels, &xxx).unwrap());
    }

    #[test]
    fn coboundaries_are_recognised() {
        let levels = NerveLevels::new(cyclic_module(4, 2, 1).unwrap(), 3, DEFAULT_BUDGET);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for m in [None, Some(2)] {
            let b = random_normalized(&levels, 1, m, &mut rng);
            let db = b.coboundary(&levels).unwrap();
            assert!(is_coboundary(&levels, &db).unwrap());
        }
    }
}
