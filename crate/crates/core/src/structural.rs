//! Dimension arithmetic for graded-commutative algebras and the cohomology
//! predictions built from it: kernel tori, finite and compact cokernels, the
//! string 2-group, and the `E₂` pages for `SL(n,ℤ)` and `GL(n,ℤ)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::make_cyclic;
use crate::group_cohomology::{
    bar_cohomology, gl2z_cohomology, invariants, sl2z_cohomology, ArithmeticGroupTag, ModuleRep,
};
use crate::linalg::{Field, RatMatrix};

/// Dimensions of a graded vector space in degrees `0..=truncation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub truncation: usize,
    pub dims: Vec<u64>,
}

impl GradedDims {
    pub fn zero(truncation: usize) -> Self {
        GradedDims { truncation, dims: vec![0; truncation + 1] }
    }

    /// The ground field in degree 0.
    pub fn unit(truncation: usize) -> Self {
        let mut d = Self::zero(truncation);
        d.dims[0] = 1;
        d
    }

    pub fn get(&self, degree: usize) -> u64 {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    /// Degrees with nonzero dimension.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.truncation).filter(|&q| self.dims[q] != 0).collect()
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }
}

/// Free graded-commutative algebra: odd generators are exterior, even ones polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeGCA {
    pub generators: Vec<usize>,
}

impl FreeGCA {
    pub fn new(generators: Vec<usize>) -> Result<Self> {
        if generators.contains(&0) {
            return Err(Error::Unsupported("generators must have positive degree".into()));
        }
        Ok(FreeGCA { generators })
    }

    pub fn dims(&self, truncation: usize) -> GradedDims {
        let mut d = GradedDims::unit(truncation);
        for &g in &self.generators {
            if g % 2 == 1 {
                for k in (g..=truncation).rev() {
                    d.dims[k] += d.dims[k - g];
                }
            } else {
                for k in g..=truncation {
                    d.dims[k] += d.dims[k - g];
                }
            }
        }
        d
    }
}

pub fn free_gca_dims(generators: &[usize], truncation: usize) -> Result<GradedDims> {
    Ok(FreeGCA::new(generators.to_vec())?.dims(truncation))
}

/// `S(ℚ^k[3])`, an exterior algebra on `k` classes of degree 3.
pub fn kernel_torus_cohomology(k: usize, truncation: usize) -> GradedDims {
    FreeGCA { generators: vec![3; k] }.dims(truncation)
}

/// `(Λ^q ℚ^k)^C` placed in degree `3q`.
pub fn finite_cokernel_cohomology(k: usize, rep: &ModuleRep, truncation: usize) -> Result<GradedDims> {
    if rep.dim() != k {
        return Err(Error::DimensionMismatch(format!("representation of dimension {} on a rank {k} kernel", rep.dim())));
    }
    let mut d = GradedDims::zero(truncation);
    for q in 0..=k {
        if 3 * q > truncation {
            break;
        }
        d.dims[3 * q] = invariants(&rep.exterior_power(q)?, None)?.len() as u64;
    }
    Ok(d)
}

/// Tensor product of graded spaces: convolution of dimensions.
pub fn kunneth(a: &GradedDims, b: &GradedDims) -> Result<GradedDims> {
    if a.truncation != b.truncation {
        return Err(Error::DimensionMismatch(format!("truncations {} and {}", a.truncation, b.truncation)));
    }
    let n = a.truncation;
    let mut d = GradedDims::zero(n);
    for i in 0..=n {
        for j in 0..=n - i {
            d.dims[i + j] += a.dims[i] * b.dims[j];
        }
    }
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LieFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simply connected compact simple Lie group, by Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LieType {
    pub family: LieFamily,
    pub rank: usize,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl LieType {
    /// Validates the type and checks the exponents against the Weyl group order.
    pub fn new(family: LieFamily, rank: usize) -> Result<Self> {
        let ok = match family {
            LieFamily::A => rank >= 1,
            LieFamily::B | LieFamily::C => rank >= 2,
            LieFamily::D => rank >= 4,
            LieFamily::E => (6..=8).contains(&rank),
            LieFamily::F => rank == 4,
            LieFamily::G => rank == 2,
        };
        if !ok {
            return Err(Error::Unsupported(format!("no simple type {family:?}{rank}")));
        }
        let t = LieType { family, rank };
        let product: u128 = t.exponents().iter().map(|&e| e as u128 + 1).product();
        if product != t.weyl_order() {
            return Err(Error::Unsupported(format!("exponent table for {t} disagrees with the Weyl order")));
        }
        Ok(t)
    }

    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let mut chars = name.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => LieFamily::A,
            Some('B') => LieFamily::B,
            Some('C') => LieFamily::C,
            Some('D') => LieFamily::D,
            Some('E') => LieFamily::E,
            Some('F') => LieFamily::F,
            Some('G') => LieFamily::G,
            _ => return Err(Error::Unsupported(format!("unknown Lie type {name:?}"))),
        };
        let rank = chars.as_str().parse().map_err(|_| Error::Unsupported(format!("unknown Lie type {name:?}")))?;
        Self::new(family, rank)
    }

    pub fn exponents(&self) -> Vec<usize> {
        let r = self.rank;
        match self.family {
            LieFamily::A => (1..=r).collect(),
            LieFamily::B | LieFamily::C => (0..r).map(|i| 2 * i + 1).collect(),
            LieFamily::D => {
                let mut e: Vec<usize> = (0..r - 1).map(|i| 2 * i + 1).collect();
                e.push(r - 1);
                e.sort_unstable();
                e
            }
            LieFamily::G => vec![1, 5],
            LieFamily::F => vec![1, 5, 7, 11],
            LieFamily::E => match r {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let r = self.rank;
        match self.family {
            LieFamily::A => factorial(r + 1),
            LieFamily::B | LieFamily::C => (1u128 << r) * factorial(r),
            LieFamily::D => (1u128 << (r - 1)) * factorial(r),
            LieFamily::G => 12,
            LieFamily::F => 1152,
            LieFamily::E => match r {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }

    /// Degrees of the polynomial generators of `H^•(BG; ℚ)`: `2(e_i + 1)`.
    pub fn classifying_degrees(&self) -> Vec<usize> {
        self.exponents().iter().map(|e| 2 * (e + 1)).collect()
    }
}

impl std::fmt::Display for LieType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cokernel {
    /// A finite group acting on the rational kernel lattice.
    Finite(ModuleRep),
    /// A torus of the given rank.
    Torus(usize),
    Simple(LieType),
}

/// A 2-group with compact kernel torus of rank `center_rank` and the given
/// cokernel. `transgression_rank` is the rank of the transgression from the
/// degree-3 fiber classes to `H⁴` of the cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactGroupSpec {
    pub center_rank: usize,
    pub cokernel: Cokernel,
    pub transgression_rank: usize,
}

/// `H^•(BC)/(im T) ⊗ S(ker T[3])`, dimensions only.
pub fn compact_cokernel_cohomology(spec: &CompactGroupSpec, truncation: usize) -> Result<GradedDims> {
    let n = spec.center_rank;
    let t = spec.transgression_rank;
    if t > n {
        return Err(Error::Unsupported(format!("transgression rank {t} exceeds kernel rank {n}")));
    }
    match &spec.cokernel {
        Cokernel::Finite(rep) => {
            if t > 0 {
                return Err(Error::Unsupported("a finite cokernel has no degree-4 classes to hit".into()));
            }
            finite_cokernel_cohomology(n, rep, truncation)
        }
        Cokernel::Torus(m) => {
            if t > 0 {
                return Err(Error::Unsupported("transgression into a torus cokernel is not supported".into()));
            }
            kunneth(&free_gca_dims(&vec![2; *m], truncation)?, &kernel_torus_cohomology(n, truncation))
        }
        Cokernel::Simple(ty) => {
            let mut gens = ty.classifying_degrees();
            let available = gens.iter().filter(|&&d| d == 4).count();
            if t > available {
                return Err(Error::Unsupported(format!("{ty} has {available} degree-4 generator(s), transgression rank is {t}")));
            }
            for _ in 0..t {
                let k = gens.iter().position(|&d| d == 4).expect("counted above");
                gens.remove(k);
            }
            gens.extend(std::iter::repeat_n(3, n - t));
            free_gca_dims(&gens, truncation)
        }
    }
}

/// The string 2-group of a simple simply connected group: circle kernel,
/// transgression onto the degree-4 generator.
pub fn string_group(ty: LieType, truncation: usize) -> GradedDims {
    let spec = CompactGroupSpec { center_rank: 1, cokernel: Cokernel::Simple(ty), transgression_rank: 1 };
    compact_cokernel_cohomology(&spec, truncation).expect("every simple type has a degree-4 generator")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    SL,
    GL,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "SL" | "sl" => Ok(Variant::SL),
            "GL" | "gl" => Ok(Variant::GL),
            other => Err(Error::Unsupported(format!("unknown variant {other:?}"))),
        }
    }
}

/// `E₂^{p,q} = H^p(Γ, Λ^{q/3} ℚⁿ)` for `Γ = SL(n,ℤ)` or `GL(n,ℤ)`, zero when
/// `3 ∤ q`. Entries that are not computed (`p > 0` at `n = 3`) are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Page {
    pub variant: Variant,
    pub n: usize,
    /// `grid[p][q]`.
    pub grid: Vec<Vec<Option<u64>>>,
}

impl E2Page {
    pub fn get(&self, p: usize, q: usize) -> Option<u64> {
        self.grid.get(p).and_then(|row| row.get(q)).copied().flatten()
    }

    /// Positions of known nonzero entries.
    pub fn nonzero(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (p, row) in self.grid.iter().enumerate() {
            for (q, x) in row.iter().enumerate() {
                if let Some(x) = x.filter(|&x| x != 0) {
                    out.push((p, q, x));
                }
            }
        }
        out
    }
}

/// Cohomology over ℚ of `GL(1,ℤ) = {±1}` or the trivial group with `Λ^k ℚ¹`.
fn rank_one_column(variant: Variant, k: usize, pmax: usize) -> Result<Vec<usize>> {
    match variant {
        Variant::SL => bar_cohomology(&ModuleRep::trivial(&make_cyclic(1)?, 1), pmax, Field::Rationals),
        Variant::GL => {
            let z2 = make_cyclic(2)?;
            let sign = if k % 2 == 1 { -1 } else { 1 };
            let rep = ModuleRep::from_generator_images(&z2, &[RatMatrix::from_i64(&[vec![sign]])])?;
            // over ℚ the bar complex of a finite group is acyclic above degree 0
            let computed = bar_cohomology(&rep, pmax.min(6), Field::Rationals)?;
            Ok((0..=pmax).map(|p| computed.get(p).copied().unwrap_or(0)).collect())
        }
    }
}

pub fn e2_page(variant: Variant, n: usize, pmax: usize, qmax: usize) -> Result<E2Page> {
    if n > 3 {
        return Err(Error::Unsupported(format!("E₂ page for n = {n}")));
    }
    let mut grid = vec![vec![Some(0u64); qmax + 1]; pmax + 1];
    for q in (0..=qmax).step_by(3) {
        let k = q / 3;
        if k > n {
            continue;
        }
        let column: Vec<Option<u64>> = match n {
            0 => (0..=pmax).map(|p| Some(u64::from(p == 0))).collect(),
            1 => rank_one_column(variant, k, pmax)?.into_iter().map(|x| Some(x as u64)).collect(),
            2 => {
                let tag = match variant {
                    Variant::SL => ArithmeticGroupTag::SL2Z,
                    Variant::GL => ArithmeticGroupTag::GL2Z,
                };
                let rep = ModuleRep::standard(tag).exterior_power(k)?;
                let h = match variant {
                    Variant::SL => sl2z_cohomology(&rep, pmax)?,
                    Variant::GL => gl2z_cohomology(&rep, pmax)?,
                };
                h.into_iter().map(|x| Some(x as u64)).collect()
            }
            _ => {
                let tag = match variant {
                    Variant::SL => ArithmeticGroupTag::SL3ZPartial,
                    Variant::GL => ArithmeticGroupTag::GL3ZPartial,
                };
                let rep = ModuleRep::standard(tag).exterior_power(k)?;
                let h0 = invariants(&rep, None)?.len() as u64;
                (0..=pmax).map(|p| (p == 0).then_some(h0)).collect()
            }
        };
        for (p, x) in column.into_iter().enumerate() {
            grid[p][q] = x;
        }
    }
    Ok(E2Page { variant, n, grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, FiniteGroup};
    use proptest::prelude::*;

    /// Counts monomials directly: exponents ≤ 1 on odd generators.
    fn monomials(gens: &[usize], n: usize) -> Vec<u64> {
        fn go(gens: &[usize], n: usize, deg: usize, out: &mut Vec<u64>) {
            let Some((&g, rest)) = gens.split_first() else {
                out[deg] += 1;
                return;
            };
            let cap = if g % 2 == 1 { 1 } else { usize::MAX };
            let mut e = 0;
            while e <= cap && deg + e * g <= n {
                go(rest, n, deg + e * g, out);
                e += 1;
            }
        }
        let mut out = vec![0; n + 1];
        go(gens, n, 0, &mut out);
        out
    }

    #[test]
    fn free_algebra_examples() {
        assert_eq!(free_gca_dims(&[3], 6).unwrap().dims, vec![1, 0, 0, 1, 0, 0, 0]);
        assert_eq!(free_gca_dims(&[3, 3], 7).unwrap().dims, vec![1, 0, 0, 2, 0, 0, 1, 0]);
        assert_eq!(free_gca_dims(&[4, 6], 12).unwrap().dims, vec![1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2]);
        assert!(free_gca_dims(&[0], 3).is_err());
        assert_eq!(kernel_torus_cohomology(0, 4), GradedDims::unit(4));
        assert_eq!(kernel_torus_cohomology(2, 6).dims, vec![1, 0, 0, 2, 0, 0, 1]);
    }

    proptest! {
        #[test]
        fn free_algebra_matches_monomial_count(gens in prop::collection::vec(1usize..7, 0..5), n in 0usize..20) {
            prop_assert_eq!(free_gca_dims(&gens, n).unwrap().dims, monomials(&gens, n));
        }

        #[test]
        fn odd_generators_give_an_exterior_algebra(k in 0usize..6) {
            let gens: Vec<usize> = (0..k).map(|i| 2 * i + 1).collect();
            let n = gens.iter().sum::<usize>() + 2;
            prop_assert_eq!(free_gca_dims(&gens, n).unwrap().total(), 1u64 << k);
        }

        #[test]
        fn unit_is_neutral_for_kunneth(gens in prop::collection::vec(1usize..6, 0..4), n in 0usize..15) {
            let a = free_gca_dims(&gens, n).unwrap();
            prop_assert_eq!(kunneth(&a, &GradedDims::unit(n)).unwrap(), a);
        }
    }

    #[test]
    fn even_generators_fill_their_multiples() {
        let d = free_gca_dims(&[4, 3], 40).unwrap();
        assert!((0..=40).step_by(4).all(|q| d.get(q) > 0));
    }

    #[test]
    fn kunneth_of_tori() {
        let one = kernel_torus_cohomology(1, 9);
        assert_eq!(kunneth(&one, &one).unwrap(), kernel_torus_cohomology(2, 9));
        assert!(kunneth(&one, &GradedDims::unit(3)).is_err());
    }

    #[test]
    fn weyl_orders_and_exponents() {
        for (f, rs) in [
            (LieFamily::A, 1..=8),
            (LieFamily::B, 2..=8),
            (LieFamily::C, 2..=8),
            (LieFamily::D, 4..=8),
            (LieFamily::E, 6..=8),
            (LieFamily::F, 4..=4),
            (LieFamily::G, 2..=2),
        ] {
            for r in rs {
                let t = LieType::new(f, r).unwrap();
                assert_eq!(t.exponents().len(), r);
                // the sum of exponents is the number of positive roots
                let roots = match f {
                    LieFamily::A => r * (r + 1) / 2,
                    LieFamily::B | LieFamily::C => r * r,
                    LieFamily::D => r * (r - 1),
                    LieFamily::G => 6,
                    LieFamily::F => 24,
                    LieFamily::E => [36, 63, 120][r - 6],
                };
                assert_eq!(t.exponents().iter().sum::<usize>(), roots, "{t}");
            }
        }
        assert!(LieType::new(LieFamily::E, 5).is_err());
        assert_eq!(LieType::parse("A2").unwrap().classifying_degrees(), vec![4, 6]);
        assert_eq!(LieType::parse("D4").unwrap().exponents(), vec![1, 3, 3, 5]);
    }

    #[test]
    fn string_groups() {
        assert_eq!(string_group(LieType::parse("A1").unwrap(), 12), GradedDims::unit(12));
        assert_eq!(string_group(LieType::parse("A2").unwrap(), 12).support(), vec![0, 6, 12]);
        assert_eq!(string_group(LieType::parse("G2").unwrap(), 12).support(), vec![0, 12]);
    }

    #[test]
    fn compact_cokernel_without_transgression_is_a_tensor_product() {
        for name in ["A1", "A3", "B2", "G2"] {
            let ty = LieType::parse(name).unwrap();
            for n in 0..3 {
                let spec = CompactGroupSpec { center_rank: n, cokernel: Cokernel::Simple(ty), transgression_rank: 0 };
                let expect = kunneth(&free_gca_dims(&ty.classifying_degrees(), 20).unwrap(), &kernel_torus_cohomology(n, 20)).unwrap();
                assert_eq!(compact_cokernel_cohomology(&spec, 20).unwrap(), expect);
            }
        }
        let bad = CompactGroupSpec { center_rank: 2, cokernel: Cokernel::Simple(LieType::parse("A2").unwrap()), transgression_rank: 2 };
        assert!(compact_cokernel_cohomology(&bad, 8).is_err());
        let torus = CompactGroupSpec { center_rank: 1, cokernel: Cokernel::Torus(1), transgression_rank: 0 };
        assert_eq!(compact_cokernel_cohomology(&torus, 5).unwrap().dims, vec![1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn finite_cokernels() {
        let z2 = make_cyclic(2).unwrap();
        let sign = ModuleRep::from_generator_images(&z2, &[RatMatrix::from_i64(&[vec![-1]])]).unwrap();
        assert_eq!(finite_cokernel_cohomology(1, &sign, 6).unwrap().dims, vec![1, 0, 0, 0, 0, 0, 0]);
        let trivial = ModuleRep::trivial(&FiniteGroup::trivial(), 3);
        assert_eq!(finite_cokernel_cohomology(3, &trivial, 10).unwrap(), kernel_torus_cohomology(3, 10));
        // −1 on ℚ²: Λ² is the determinant, which is fixed
        let minus = ModuleRep::from_generator_images(&z2, &[RatMatrix::from_i64(&[vec![-1, 0], vec![0, -1]])]).unwrap();
        assert_eq!(finite_cokernel_cohomology(2, &minus, 6).unwrap().support(), vec![0, 6]);
        assert!(finite_cokernel_cohomology(2, &sign, 6).is_err());
        let v4 = direct_product(&z2, &z2);
        let swap = RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        let rep = ModuleRep::from_generator_images(&v4, &[swap.clone(), swap.neg()]).unwrap();
        assert_eq!(finite_cokernel_cohomology(2, &rep, 6).unwrap().dims, vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn arithmetic_pages() {
        for (variant, n) in [(Variant::SL, 1), (Variant::GL, 1), (Variant::SL, 2), (Variant::GL, 2)] {
            let page = e2_page(variant, n, 4, 9).unwrap();
            let expect: Vec<(usize, usize, u64)> = match variant {
                Variant::SL => vec![(0, 0, 1), (0, 3 * n, 1)],
                Variant::GL => vec![(0, 0, 1)],
            };
            assert_eq!(page.nonzero(), expect, "{variant:?} n={n}");
        }
        assert_eq!(e2_page(Variant::SL, 0, 2, 3).unwrap().nonzero(), vec![(0, 0, 1)]);
        let p3 = e2_page(Variant::SL, 3, 1, 9).unwrap();
        assert_eq!(p3.nonzero(), vec![(0, 0, 1), (0, 9, 1)]);
        assert_eq!(p3.get(1, 0), None);
        assert_eq!(e2_page(Variant::GL, 3, 0, 9).unwrap().nonzero(), vec![(0, 0, 1)]);
        assert!(e2_page(Variant::SL, 4, 1, 3).is_err());
    }

    #[test]
    fn pages_vanish_off_multiples_of_three() {
        for variant in [Variant::SL, Variant::GL] {
            for n in 0..=3 {
                let page = e2_page(variant, n, 3, 10).unwrap();
                for (_, q, _) in page.nonzero() {
                    assert_eq!(q % 3, 0);
                }
            }
        }
    }
}
