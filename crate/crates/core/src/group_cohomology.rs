//! Group cohomology with coefficients in rational representations: the bar
//! complex for finite groups, fixed subspaces, exterior powers, and the
//! characteristic-zero cohomology of `SL(2,ℤ)` and `GL(2,ℤ)` from the
//! amalgam `ℤ/4 *_{ℤ/2} ℤ/6`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::echelon::{accumulator, mod_inverse, Field};
use crate::linalg::rational::{common_kernel, rat, span_dim};
use crate::linalg::RatMatrix;

/// Arithmetic groups known by a fixed generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ArithmeticGroupTag {
    /// Generators `S` (order 4) and `R` (order 6), `S² = R³ = −I`.
    SL2Z,
    /// `S`, `R` and the reflection `J = [[0,1],[1,0]]`.
    GL2Z,
    /// Elementary matrices `I + E_ij`, `i ≠ j`.
    SL3ZPartial,
    /// Elementary matrices and `diag(−1, 1, 1)`.
    GL3ZPartial,
}

impl ArithmeticGroupTag {
    pub fn rank(self) -> usize {
        match self {
            ArithmeticGroupTag::SL2Z | ArithmeticGroupTag::GL2Z => 2,
            _ => 3,
        }
    }

    /// Named integer generators in their natural representation.
    pub fn generators(self) -> Vec<(String, RatMatrix)> {
        let s = RatMatrix::from_i64(&[vec![0, -1], vec![1, 0]]);
        let r = RatMatrix::from_i64(&[vec![0, -1], vec![1, 1]]);
        let j = RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        match self {
            ArithmeticGroupTag::SL2Z => vec![("S".into(), s), ("R".into(), r)],
            ArithmeticGroupTag::GL2Z => vec![("S".into(), s), ("R".into(), r), ("J".into(), j)],
            ArithmeticGroupTag::SL3ZPartial => elementary_generators(3, false),
            ArithmeticGroupTag::GL3ZPartial => elementary_generators(3, true),
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.trim() {
            "SL2Z" | "SL(2,Z)" => Ok(ArithmeticGroupTag::SL2Z),
            "GL2Z" | "GL(2,Z)" => Ok(ArithmeticGroupTag::GL2Z),
            "SL3Z" | "SL3Z-partial" | "SL(3,Z)" => Ok(ArithmeticGroupTag::SL3ZPartial),
            "GL3Z" | "GL3Z-partial" | "GL(3,Z)" => Ok(ArithmeticGroupTag::GL3ZPartial),
            other => Err(Error::Unsupported(format!("unknown arithmetic group {other:?}"))),
        }
    }
}

/// `I + E_ij` for all `i ≠ j`, plus `diag(−1, 1, …, 1)` when `with_reflection`.
pub fn elementary_generators(n: usize, with_reflection: bool) -> Vec<(String, RatMatrix)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = RatMatrix::identity(n);
                m.set(i, j, rat(1));
                out.push((format!("E{}{}", i + 1, j + 1), m));
            }
        }
    }
    if with_reflection && n > 0 {
        let mut m = RatMatrix::identity(n);
        m.set(0, 0, rat(-1));
        out.push(("D".into(), m));
    }
    out
}

/// The three matrices whose fixed subspaces enter the `SL(3,ℤ)` computation.
pub fn soule_matrices() -> [(&'static str, RatMatrix); 3] {
    [
        ("A", RatMatrix::from_i64(&[vec![0, -1, 0], vec![-1, 0, 0], vec![0, 0, -1]])),
        ("B", RatMatrix::from_i64(&[vec![-1, 0, 0], vec![0, 0, -1], vec![0, -1, 0]])),
        ("C", RatMatrix::from_i64(&[vec![-1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]])),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepGroup {
    Finite(FiniteGroup),
    Arithmetic(ArithmeticGroupTag),
}

/// A finite-dimensional rational representation. For a finite group there is
/// one matrix per element (index order); for an arithmetic group one per
/// generator, in the order of [`ArithmeticGroupTag::generators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    group: RepGroup,
    dim: usize,
    matrices: Vec<RatMatrix>,
}

impl ModuleRep {
    /// One matrix per group element; checks `ρ(gh) = ρ(g)ρ(h)`.
    pub fn finite(group: &FiniteGroup, matrices: Vec<RatMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("representation matrices of different sizes".into()));
        }
        if matrices[0] != RatMatrix::identity(dim) {
            return Err(Error::InvalidAction("identity element does not act trivially".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                if matrices[group.mul(a, b)] != matrices[a].mul(&matrices[b])? {
                    return Err(Error::InvalidAction(format!("ρ({a}·{b}) ≠ ρ({a})ρ({b})")));
                }
            }
        }
        Ok(ModuleRep { group: RepGroup::Finite(group.clone()), dim, matrices })
    }

    /// Extends matrices for `group.generators()` to the whole group.
    pub fn from_generator_images(group: &FiniteGroup, images: &[RatMatrix]) -> Result<Self> {
        let gens: Vec<usize> = group.generators().iter().map(|&g| g as usize).collect();
        if gens.len() != images.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let dim = images.first().map_or(0, RatMatrix::rows);
        let mut mats: Vec<Option<RatMatrix>> = vec![None; group.order()];
        mats[0] = Some(RatMatrix::identity(dim));
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for (&g, img) in gens.iter().zip(images) {
                let y = group.mul(x, g);
                if mats[y].is_none() {
                    mats[y] = Some(mats[x].as_ref().unwrap().mul(img)?);
                    frontier.push(y);
                }
            }
        }
        let matrices = mats.into_iter().map(|m| m.expect("generators generate")).collect();
        Self::finite(group, matrices)
    }

    pub fn trivial(group: &FiniteGroup, dim: usize) -> Self {
        ModuleRep {
            group: RepGroup::Finite(group.clone()),
            dim,
            matrices: vec![RatMatrix::identity(dim); group.order()],
        }
    }

    /// Matrices for the generators of an arithmetic group, checked against
    /// the defining relations of the tag.
    pub fn arithmetic(tag: ArithmeticGroupTag, matrices: Vec<RatMatrix>) -> Result<Self> {
        let expected = tag.generators().len();
        if matrices.len() != expected {
            return Err(Error::DimensionMismatch(format!("{} generator matrices, expected {expected}", matrices.len())));
        }
        let dim = matrices.first().map_or(0, RatMatrix::rows);
        for m in &matrices {
            if m.rows() != dim || m.cols() != dim || m.determinant()?.is_zero() {
                return Err(Error::InvalidAction("generator matrices must be invertible and of equal size".into()));
            }
        }
        let id = RatMatrix::identity(dim);
        if matches!(tag, ArithmeticGroupTag::SL2Z | ArithmeticGroupTag::GL2Z) {
            let (s, r) = (&matrices[0], &matrices[1]);
            if s.pow(4)? != id || r.pow(6)? != id || s.pow(2)? != r.pow(3)? {
                return Err(Error::InvalidAction("S⁴ = R⁶ = 1 and S² = R³ must hold".into()));
            }
            if tag == ArithmeticGroupTag::GL2Z {
                let j = &matrices[2];
                if j.pow(2)? != id || j.mul(s)?.mul(j)?.mul(s)? != id || j.mul(r)?.mul(j)?.mul(r)? != id {
                    return Err(Error::InvalidAction("J² = 1, JSJ = S⁻¹ and JRJ = R⁻¹ must hold".into()));
                }
            }
        }
        Ok(ModuleRep { group: RepGroup::Arithmetic(tag), dim, matrices })
    }

    /// The natural representation on `ℚⁿ`.
    pub fn standard(tag: ArithmeticGroupTag) -> Self {
        let matrices = tag.generators().into_iter().map(|(_, m)| m).collect();
        Self::arithmetic(tag, matrices).expect("natural representation satisfies the relations")
    }

    pub fn group(&self) -> &RepGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.matrices
    }

    /// Matrices of the generating set used for fixed-point computations.
    pub fn generator_matrices(&self) -> Vec<RatMatrix> {
        match &self.group {
            RepGroup::Finite(g) => g.generators().iter().map(|&x| self.matrices[x as usize].clone()).collect(),
            RepGroup::Arithmetic(_) => self.matrices.clone(),
        }
    }

    /// `Λ^k` of the representation, basis = sorted `k`-subsets in
    /// lexicographic order, entries = `k×k` minors.
    pub fn exterior_power(&self, k: usize) -> Result<Self> {
        if k > self.dim {
            return Err(Error::DimensionMismatch(format!("Λ^{k} of a {}-dimensional module", self.dim)));
        }
        let matrices = self.matrices.iter().map(|m| exterior_power_matrix(m, k)).collect::<Result<Vec<_>>>()?;
        let dim = matrices.first().map_or(binomial(self.dim, k), RatMatrix::rows);
        Ok(ModuleRep { group: self.group.clone(), dim, matrices })
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn exterior_power_matrix(m: &RatMatrix, k: usize) -> Result<RatMatrix> {
    let basis = subsets(m.rows(), k);
    let mut out = RatMatrix::zeros(basis.len(), basis.len());
    for (a, rows) in basis.iter().enumerate() {
        for (b, cols) in basis.iter().enumerate() {
            let minor: Vec<Vec<BigRational>> =
                rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
            let det = if k == 0 { BigRational::one() } else { RatMatrix::from_rows(&minor)?.determinant()? };
            out.set(a, b, det);
        }
    }
    Ok(out)
}

/// Fixed vectors `{v : ρ(s)v = χ(s)v}` over the generators `s`, where `χ` is
/// an optional `±1` character given per generator.
pub fn invariants(module: &ModuleRep, character: Option<&[i64]>) -> Result<Vec<Vec<BigRational>>> {
    let gens = module.generator_matrices();
    if let Some(chi) = character {
        if chi.len() != gens.len() || chi.iter().any(|&c| c != 1 && c != -1) {
            return Err(Error::DimensionMismatch("character must give ±1 for every generator".into()));
        }
    }
    let shifted = gens
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let c = character.map_or(1, |chi| chi[k]);
            m.sub(&RatMatrix::scalar(module.dim, rat(c)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(common_kernel(module.dim, &shifted))
}

/// Fixed vectors of a set of matrices acting on `ℚ^dim`.
pub fn fixed_subspace(dim: usize, matrices: &[RatMatrix]) -> Vec<Vec<BigRational>> {
    let shifted: Vec<RatMatrix> = matrices.iter().map(|m| m.sub(&RatMatrix::identity(dim)).expect("square")).collect();
    common_kernel(dim, &shifted)
}

/// Default cap on the number of bar cochains in one degree.
pub const BAR_BUDGET: u64 = 1 << 22;

fn field_entry(x: &BigRational, field: Field) -> Result<i64> {
    match field {
        Field::Rationals => x.to_integer().to_i64().ok_or_else(|| Error::Unsupported("entry beyond 64 bits".into())),
        Field::Prime(p) => {
            let p = p as i64;
            let num = (x.numer() % BigInt::from(p)).to_i64().unwrap().rem_euclid(p);
            let den = (x.denom() % BigInt::from(p)).to_i64().unwrap().rem_euclid(p);
            if den == 0 {
                return Err(Error::Unsupported(format!("denominator divisible by {p}")));
            }
            Ok(num * mod_inverse(den as u64, p as u64) as i64 % p)
        }
    }
}

/// Dimensions of `H^n(G, M)` for `n ≤ max_n` from the inhomogeneous bar complex.
pub fn bar_cohomology(module: &ModuleRep, max_n: usize, field: Field) -> Result<Vec<usize>> {
    bar_cohomology_with_budget(module, max_n, field, BAR_BUDGET)
}

pub fn bar_cohomology_with_budget(module: &ModuleRep, max_n: usize, field: Field, budget: u64) -> Result<Vec<usize>> {
    let RepGroup::Finite(group) = &module.group else {
        return Err(Error::Unsupported("bar complex needs a finite group".into()));
    };
    let (order, d) = (group.order() as u64, module.dim as u64);
    let dims: Vec<u64> = (0..=max_n + 1)
        .map(|n| {
            order
                .checked_pow(n as u32)
                .and_then(|x| x.checked_mul(d))
                .filter(|&x| x <= budget)
                .ok_or_else(|| Error::BudgetExceeded {
                    level: n,
                    required: format!("{}^{n}·{d}", order),
                    budget,
                    achievable: n.checked_sub(2),
                })
        })
        .collect::<Result<_>>()?;

    // integer rows for the representation matrices, scaled per row over ℚ
    let mut betti = Vec::with_capacity(max_n + 1);
    let mut previous = 0usize;
    for n in 0..=max_n {
        let bound = (dims[n] as usize - previous).min(dims[n + 1] as usize);
        let r = if bound == 0 { 0 } else { bar_rank(group, module, n, field, bound)? };
        betti.push(dims[n] as usize - r - previous);
        previous = r;
    }
    Ok(betti)
}

fn bar_rank(group: &FiniteGroup, module: &ModuleRep, n: usize, field: Field, bound: usize) -> Result<usize> {
    let order = group.order();
    let d = module.dim;
    let width = order.pow(n as u32) * d;
    let tuples = order.pow(n as u32 + 1);
    let mut acc = accumulator(field, width);
    let encode = |t: &[usize]| t.iter().fold(0usize, |a, &x| a * order + x);
    let row_for = |idx: usize, j: usize| -> Result<Vec<(usize, i64)>> {
        let mut t = vec![0usize; n + 1];
        let mut x = idx;
        for slot in t.iter_mut().rev() {
            *slot = x % order;
            x /= order;
        }
        let mut entries: Vec<(usize, BigRational)> = Vec::new();
        let rho = &module.matrices[t[0]];
        let tail = encode(&t[1..]);
        for k in 0..d {
            let a = rho.get(j, k);
            if !a.is_zero() {
                entries.push((tail * d + k, a.clone()));
            }
        }
        for i in 1..=n {
            let mut s: Vec<usize> = Vec::with_capacity(n);
            s.extend_from_slice(&t[..i - 1]);
            s.push(group.mul(t[i - 1], t[i]));
            s.extend_from_slice(&t[i + 1..]);
            entries.push((encode(&s) * d + j, rat(if i % 2 == 0 { 1 } else { -1 })));
        }
        entries.push((encode(&t[..n]) * d + j, rat(if (n + 1).is_multiple_of(2) { 1 } else { -1 })));
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, BigRational)> = Vec::new();
        for (c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        if field == Field::Rationals {
            let l = merged.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let scale = BigRational::from_integer(l);
            for e in merged.iter_mut() {
                e.1 = &e.1 * &scale;
            }
        }
        merged.into_iter().map(|(c, v)| Ok((c, field_entry(&v, field)?))).collect()
    };
    let all: Vec<(usize, usize)> = (0..tuples).flat_map(|t| (0..d).map(move |j| (t, j))).collect();
    for chunk in all.chunks(1 << 14) {
        let rows: Vec<Vec<(usize, i64)>> = chunk.par_iter().map(|&(t, j)| row_for(t, j)).collect::<Result<_>>()?;
        for row in rows {
            if !row.is_empty() && acc.insert(&row) && acc.rank() >= bound {
                return Ok(acc.rank());
            }
        }
    }
    Ok(acc.rank())
}

fn require_tag(module: &ModuleRep, tag: ArithmeticGroupTag) -> Result<()> {
    match module.group {
        RepGroup::Arithmetic(t) if t == tag => Ok(()),
        _ => Err(Error::Unsupported(format!("module is not a representation of {tag:?}"))),
    }
}

/// `dim H^n(SL(2,ℤ), M)` over ℚ: `H⁰ = M^S ∩ M^R`,
/// `H¹ = dim M^{S²} − dim(M^S + M^R)`, and zero above.
pub fn sl2z_cohomology(module: &ModuleRep, max_n: usize) -> Result<Vec<usize>> {
    require_tag(module, ArithmeticGroupTag::SL2Z)?;
    let (s, r) = (&module.matrices[0], &module.matrices[1]);
    Ok(amalgam_dims(module.dim, s, r, None, max_n))
}

/// `dim H^n(GL(2,ℤ), M) = dim H^n(SL(2,ℤ), M)^{⟨J⟩}` over ℚ.
pub fn gl2z_cohomology(module: &ModuleRep, max_n: usize) -> Result<Vec<usize>> {
    require_tag(module, ArithmeticGroupTag::GL2Z)?;
    let (s, r, j) = (&module.matrices[0], &module.matrices[1], &module.matrices[2]);
    Ok(amalgam_dims(module.dim, s, r, Some(j), max_n))
}

fn amalgam_dims(dim: usize, s: &RatMatrix, r: &RatMatrix, j: Option<&RatMatrix>, max_n: usize) -> Vec<usize> {
    let s2 = s.mul(s).expect("square");
    let fix_s = fixed_subspace(dim, std::slice::from_ref(s));
    let fix_r = fixed_subspace(dim, std::slice::from_ref(r));
    let fix_s2 = fixed_subspace(dim, &[s2]);
    let h0 = fixed_subspace(dim, &[s.clone(), r.clone()].into_iter().chain(j.cloned()).collect::<Vec<_>>()).len();
    let sum: Vec<Vec<BigRational>> = fix_s.iter().chain(&fix_r).cloned().collect();
    let h1 = match j {
        None => fix_s2.len() - span_dim(&sum),
        Some(j) => invariant_dim(j, &fix_s2) - invariant_dim(j, &sum),
    };
    let mut out = vec![0; max_n + 1];
    out[0] = h0;
    if max_n >= 1 {
        out[1] = h1;
    }
    out
}

/// Dimension of the `J`-fixed part of the span of `vectors` (a `J`-stable subspace).
fn invariant_dim(j: &RatMatrix, vectors: &[Vec<BigRational>]) -> usize {
    if span_dim(vectors) == 0 {
        return 0;
    }
    // (J + 1)/2 projects the span onto its fixed part
    let images: Vec<Vec<BigRational>> =
        vectors.iter().map(|v| j.apply(v).iter().zip(v).map(|(a, b)| a + b).collect()).collect();
    span_dim(&images)
}

/// `dim (Λ^q ℚ³)^M` for each Soulé matrix and each `q = 0..=3`.
pub fn soule_fixed_dims() -> Vec<(&'static str, [usize; 4])> {
    soule_matrices()
        .iter()
        .map(|(name, m)| {
            let mut dims = [0; 4];
            for (q, slot) in dims.iter_mut().enumerate() {
                let e = exterior_power_matrix(m, q).expect("square");
                *slot = fixed_subspace(e.rows(), &[e]).len();
            }
            (*name, dims)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic;

    fn sign_rep(n: usize) -> ModuleRep {
        let g = make_cyclic(n).unwrap();
        ModuleRep::from_generator_images(&g, &[RatMatrix::from_i64(&[vec![-1]])]).unwrap()
    }

    /// `H^•(ℤ/m, M)` from the periodic resolution, over GF(p).
    fn periodic_oracle(t: &RatMatrix, m: usize, p: i64, max_n: usize) -> Vec<usize> {
        let d = t.rows();
        let to_mod = |a: &RatMatrix| -> Vec<Vec<i64>> {
            (0..d).map(|i| (0..d).map(|j| field_entry(a.get(i, j), Field::Prime(p as u32)).unwrap()).collect()).collect()
        };
        let rank = |mut a: Vec<Vec<i64>>| -> usize {
            let mut r = 0;
            for c in 0..d {
                let Some(k) = (r..d).find(|&i| a[i][c] != 0) else { continue };
                a.swap(r, k);
                let inv = mod_inverse(a[r][c] as u64, p as u64) as i64;
                for i in 0..d {
                    if i != r && a[i][c] != 0 {
                        let f = a[i][c] * inv % p;
                        for x in 0..d {
                            a[i][x] = (a[i][x] - f * a[r][x]).rem_euclid(p);
                        }
                    }
                }
                r += 1;
            }
            r
        };
        let t_minus = to_mod(&t.sub(&RatMatrix::identity(d)).unwrap());
        let mut norm = RatMatrix::zeros(d, d);
        let mut power = RatMatrix::identity(d);
        for _ in 0..m {
            norm = norm.sub(&power.neg()).unwrap();
            power = power.mul(t).unwrap();
        }
        let (rt, rn) = (rank(t_minus), rank(to_mod(&norm)));
        (0..=max_n)
            .map(|n| match n {
                0 => d - rt,
                n if n % 2 == 1 => d - rn - rt,
                _ => d - rt - rn,
            })
            .collect()
    }

    #[test]
    fn cyclic_groups_against_the_periodic_resolution() {
        let z3 = make_cyclic(3).unwrap();
        assert_eq!(bar_cohomology(&ModuleRep::trivial(&z3, 1), 4, Field::Prime(3)).unwrap(), vec![1; 5]);
        let perm = RatMatrix::from_i64(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        for (m, t, p) in [(3, perm.clone(), 3), (3, perm, 2), (2, RatMatrix::from_i64(&[vec![-1]]), 3), (4, RatMatrix::from_i64(&[vec![0, -1], vec![1, 0]]), 2)] {
            let g = make_cyclic(m).unwrap();
            let rep = ModuleRep::from_generator_images(&g, std::slice::from_ref(&t)).unwrap();
            assert_eq!(
                bar_cohomology(&rep, 4, Field::Prime(p as u32)).unwrap(),
                periodic_oracle(&t, m, p, 4),
                "Z/{m} mod {p}"
            );
        }
    }

    #[test]
    fn rational_bar_cohomology_vanishes_in_positive_degrees() {
        let z2 = make_cyclic(2).unwrap();
        assert_eq!(bar_cohomology(&ModuleRep::trivial(&z2, 1), 3, Field::Rationals).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(bar_cohomology(&sign_rep(2), 3, Field::Rationals).unwrap(), vec![0, 0, 0, 0]);
        let z6 = make_cyclic(6).unwrap();
        let rep = ModuleRep::from_generator_images(&z6, &[RatMatrix::from_i64(&[vec![1, -1], vec![1, 0]])]).unwrap();
        let b = bar_cohomology(&rep, 2, Field::Rationals).unwrap();
        assert_eq!(b[1..], [0, 0]);
        assert_eq!(b[0], invariants(&rep, None).unwrap().len());
    }

    #[test]
    fn rational_entries_are_scaled() {
        // ℤ/2 acting on ℚ² by a conjugate of the swap with fractional entries
        let m = RatMatrix::from_rows(&[
            vec![rat(0), BigRational::new(BigInt::from(1), BigInt::from(2))],
            vec![rat(2), rat(0)],
        ])
        .unwrap();
        let rep = ModuleRep::from_generator_images(&make_cyclic(2).unwrap(), &[m]).unwrap();
        assert_eq!(bar_cohomology(&rep, 2, Field::Rationals).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn exterior_powers() {
        let j = RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(exterior_power_matrix(&j, 2).unwrap(), RatMatrix::from_i64(&[vec![-1]]));
        assert_eq!(exterior_power_matrix(&j, 0).unwrap(), RatMatrix::identity(1));
        let [(_, a), (_, b), _] = soule_matrices();
        for k in 0..=3 {
            let lhs = exterior_power_matrix(&a.mul(&b).unwrap(), k).unwrap();
            let rhs = exterior_power_matrix(&a, k).unwrap().mul(&exterior_power_matrix(&b, k).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn soule_fixed_subspaces() {
        let [(_, a), _, _] = soule_matrices();
        let fix = fixed_subspace(3, std::slice::from_ref(&a));
        assert_eq!(fix.len(), 1);
        assert_eq!(fix[0][0], -fix[0][1].clone());
        assert!(fix[0][2].is_zero());
        let l2 = exterior_power_matrix(&a, 2).unwrap();
        let fix2 = fixed_subspace(3, &[l2]);
        assert_eq!(fix2.len(), 1);
        // basis e₁∧e₂, e₁∧e₃, e₂∧e₃: the fixed vector is e₁∧e₃ + e₂∧e₃
        assert!(fix2[0][0].is_zero());
        assert_eq!(fix2[0][1], fix2[0][2]);
    }

    #[test]
    fn arithmetic_relations_are_checked() {
        let std2 = ModuleRep::standard(ArithmeticGroupTag::SL2Z);
        assert_eq!(std2.dim(), 2);
        let bad = ModuleRep::arithmetic(ArithmeticGroupTag::SL2Z, vec![RatMatrix::identity(2), RatMatrix::from_i64(&[vec![0, -1], vec![1, 1]])]);
        assert!(bad.is_err());
        assert!(invariants(&std2, None).unwrap().is_empty());
    }

    #[test]
    fn sl2_and_gl2_examples() {
        for k in 0..=2 {
            let sl = ModuleRep::standard(ArithmeticGroupTag::SL2Z).exterior_power(k).unwrap();
            let gl = ModuleRep::standard(ArithmeticGroupTag::GL2Z).exterior_power(k).unwrap();
            let expect_sl = if k == 1 { vec![0, 0, 0] } else { vec![1, 0, 0] };
            let expect_gl = if k == 0 { vec![1, 0, 0] } else { vec![0, 0, 0] };
            assert_eq!(sl2z_cohomology(&sl, 2).unwrap(), expect_sl, "Λ^{k} for SL");
            assert_eq!(gl2z_cohomology(&gl, 2).unwrap(), expect_gl, "Λ^{k} for GL");
        }
    }

    #[test]
    fn symmetric_square_has_first_cohomology() {
        // Sym² of the standard module: fix(S²) is everything, fix S + fix R
        // is 2-dimensional, so H¹ = 1
        let sym2 = |m: &RatMatrix| {
            let (a, b, c, d) = (m.get(0, 0).clone(), m.get(0, 1).clone(), m.get(1, 0).clone(), m.get(1, 1).clone());
            let two = rat(2);
            RatMatrix::from_rows(&[
                vec![&a * &a, &two * &a * &c, &c * &c],
                vec![&a * &b, &a * &d + &b * &c, &c * &d],
                vec![&b * &b, &two * &b * &d, &d * &d],
            ])
            .unwrap()
        };
        let gens: Vec<RatMatrix> = ArithmeticGroupTag::SL2Z.generators().iter().map(|(_, m)| sym2(&m.transpose()).transpose()).collect();
        let rep = ModuleRep::arithmetic(ArithmeticGroupTag::SL2Z, gens).unwrap();
        let h = sl2z_cohomology(&rep, 1).unwrap();
        assert_eq!(h[0], 0);
        assert_eq!(h[1], 1);
    }

    #[test]
    fn character_twists() {
        let rep = sign_rep(2);
        assert!(invariants(&rep, None).unwrap().is_empty());
        assert_eq!(invariants(&rep, Some(&[-1])).unwrap().len(), 1);
        assert!(invariants(&rep, Some(&[2])).is_err());
    }
}
