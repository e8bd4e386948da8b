//! Finite crossed modules `i: G → H` with a right `H`-action on `G`, strict
//! morphisms between them, kernels of morphisms and the cokernel projection.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{self, cokernel, direct_product, kernel, FiniteGroup, GroupAction, GroupHom};

/// A failed crossed-module identity with the elements that break it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "identity", rename_all = "snake_case")]
pub enum Violation {
    /// `i(g^h) ≠ h⁻¹·i(g)·h`.
    Equivariance { g: usize, h: usize },
    /// `x^{i(y)} ≠ y⁻¹·x·y`.
    Peiffer { x: usize, y: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    i: GroupHom,
    action: GroupAction,
}

impl CrossedModule {
    /// Assembles the data without checking the crossed-module identities.
    /// Use [`CrossedModule::validate`] to inspect them.
    pub fn from_parts(i: GroupHom, action: GroupAction) -> Result<Self> {
        if action.space() != i.source() || action.actor() != i.target() {
            return Err(Error::InvalidCrossedModule(
                "action must be an action of the target of i on its source".into(),
            ));
        }
        Ok(CrossedModule { i, action })
    }

    /// Assembles and validates; fails with the first violation.
    pub fn new(i: GroupHom, action: GroupAction) -> Result<Self> {
        let cm = Self::from_parts(i, action)?;
        let report = cm.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidCrossedModule(format!("{v:?}")));
        }
        Ok(cm)
    }

    /// `[G → H]` with trivial action. Valid iff `G` is abelian and `i(G)` is central.
    pub fn with_trivial_action(i: GroupHom) -> Result<Self> {
        let action = GroupAction::trivial(i.target(), i.source());
        Self::new(i, action)
    }

    /// `[1 → C]`, the group `C` seen as a 2-group.
    pub fn of_group(c: &FiniteGroup) -> Self {
        let one = FiniteGroup::trivial();
        Self::with_trivial_action(GroupHom::trivial(&one, c)).expect("[1 → C] is a crossed module")
    }

    /// `[A → 1]` for an abelian group `A`.
    pub fn of_abelian(a: &FiniteGroup) -> Result<Self> {
        Self::with_trivial_action(GroupHom::trivial(a, &FiniteGroup::trivial()))
    }

    /// Inclusion of a normal subgroup with the conjugation action.
    pub fn normal_inclusion(incl: GroupHom) -> Result<Self> {
        let h = incl.target().clone();
        let n = incl.source().clone();
        if !incl.is_injective() {
            return Err(Error::InvalidCrossedModule("normal inclusion must be injective".into()));
        }
        let table = incl.table();
        let pos = |y: usize| table.iter().position(|&t| t == y);
        let action = GroupAction::from_fn(&h, &n, |g, k| {
            pos(h.conj(table[g], k)).unwrap_or(usize::MAX)
        })
        .map_err(|_| Error::NotNormal("image of the inclusion is not normal".into()))?;
        Self::new(incl, action)
    }

    /// Central extension `p: G ↠ H`; `H` acts by conjugating with any lift.
    pub fn central_extension(p: GroupHom) -> Result<Self> {
        if !p.is_surjective() {
            return Err(Error::NotSurjective("central extension projection".into()));
        }
        let g = p.source().clone();
        let lift: Vec<usize> = p.target().elements().map(|h| g.elements().find(|&x| p.apply(x) == h).unwrap()).collect();
        let action = GroupAction::from_fn(p.target(), &g, |x, h| g.conj(x, lift[h]))?;
        Self::new(p, action)
    }

    /// Componentwise product `[G₁×G₂ → H₁×H₂]`.
    pub fn product(a: &CrossedModule, b: &CrossedModule) -> Self {
        let g = direct_product(a.g(), b.g());
        let h = direct_product(a.h(), b.h());
        let (ng, nh) = (b.g().order(), b.h().order());
        let map = g.elements().map(|x| a.i(x / ng) * nh + b.i(x % ng)).collect();
        let i = GroupHom::new(g.clone(), h.clone(), map).expect("product of homs");
        let action = GroupAction::from_fn(&h, &g, |x, y| {
            a.act(x / ng, y / nh) * ng + b.act(x % ng, y % nh)
        })
        .expect("product of actions");
        Self::new(i, action).expect("product of crossed modules")
    }

    pub fn g(&self) -> &FiniteGroup {
        self.i.source()
    }

    pub fn h(&self) -> &FiniteGroup {
        self.i.target()
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.i
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    #[inline]
    pub fn i(&self, g: usize) -> usize {
        self.i.apply(g)
    }

    /// `g^h`.
    #[inline]
    pub fn act(&self, g: usize, h: usize) -> usize {
        self.action.act(g, h)
    }

    /// Checks equivariance and the Peiffer identity on every pair.
    pub fn validate(&self) -> ValidationReport {
        let (g, h) = (self.g(), self.h());
        let mut violations = Vec::new();
        for x in g.elements() {
            for y in h.elements() {
                if self.i(self.act(x, y)) != h.conj(self.i(x), y) {
                    violations.push(Violation::Equivariance { g: x, h: y });
                }
            }
        }
        for x in g.elements() {
            for y in g.elements() {
                if self.act(x, self.i(y)) != g.conj(x, y) {
                    violations.push(Violation::Peiffer { x, y });
                }
            }
        }
        ValidationReport { violations }
    }

    /// `(coker i, ker i)`: the groups realized as π₁ and π₂ of the nerve.
    pub fn homotopy_invariants(&self) -> HomotopyInvariants {
        let (pi_high, embedding) = kernel(&self.i);
        let (pi_low, projection) = cokernel(&self.i).expect("image of a crossed module is normal");
        HomotopyInvariants { pi_low, projection, pi_high, embedding }
    }

    /// `[G → i(G)]` with the restricted action.
    pub fn image_module(&self) -> Self {
        let (img, incl) = self.h().subgroup(&self.i.image()).expect("image is a subgroup");
        let table = incl.table();
        let map = self.g().elements().map(|x| table.iter().position(|&t| t == self.i(x)).unwrap()).collect();
        let i = GroupHom::new(self.g().clone(), img, map).expect("corestriction");
        let action = self.action.pullback(&incl).expect("restricted action");
        Self::new(i, action).expect("image crossed module")
    }

    /// The cokernel projection `[G → H] → [1 → H/i(G)]`.
    pub fn cokernel_projection(&self) -> CrossedModuleMorphism {
        let (c, proj) = cokernel(&self.i).expect("image of a crossed module is normal");
        let target = CrossedModule::of_group(&c);
        let phi = GroupHom::trivial(self.g(), target.g());
        CrossedModuleMorphism::new(self.clone(), target, phi, proj).expect("cokernel projection")
    }
}

/// `π₁ = coker i` with its projection, `π₂ = ker i` with its embedding.
#[derive(Clone, Debug)]
pub struct HomotopyInvariants {
    pub pi_low: FiniteGroup,
    pub projection: GroupHom,
    pub pi_high: FiniteGroup,
    pub embedding: GroupHom,
}

/// A strict morphism `(φ, ψ): [G₂ → H₂] → [G₁ → H₁]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModuleMorphism {
    source: CrossedModule,
    target: CrossedModule,
    phi: GroupHom,
    psi: GroupHom,
}

impl CrossedModuleMorphism {
    pub fn new(source: CrossedModule, target: CrossedModule, phi: GroupHom, psi: GroupHom) -> Result<Self> {
        if phi.source() != source.g() || phi.target() != target.g() {
            return Err(Error::InvalidCrossedModule("φ must map G₂ → G₁".into()));
        }
        if psi.source() != source.h() || psi.target() != target.h() {
            return Err(Error::InvalidCrossedModule("ψ must map H₂ → H₁".into()));
        }
        for g in source.g().elements() {
            if psi.apply(source.i(g)) != target.i(phi.apply(g)) {
                return Err(Error::InvalidCrossedModule(format!("ψ∘i₂ ≠ i₁∘φ at {g}")));
            }
            for h in source.h().elements() {
                if target.act(phi.apply(g), psi.apply(h)) != phi.apply(source.act(g, h)) {
                    return Err(Error::InvalidCrossedModule(format!(
                        "φ(g)^ψ(h) ≠ φ(g^h) at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(CrossedModuleMorphism { source, target, phi, psi })
    }

    pub fn identity(cm: &CrossedModule) -> Self {
        CrossedModuleMorphism {
            source: cm.clone(),
            target: cm.clone(),
            phi: GroupHom::identity(cm.g()),
            psi: GroupHom::identity(cm.h()),
        }
    }

    /// The canonical `[ker i → 1] → [G → i(G)]`.
    pub fn kernel_inclusion(cm: &CrossedModule) -> Self {
        let inv = cm.homotopy_invariants();
        let source = CrossedModule::of_abelian(&inv.pi_high).expect("ker i is abelian");
        let target = cm.image_module();
        let psi = GroupHom::trivial(source.h(), target.h());
        Self::new(source, target, inv.embedding, psi).expect("kernel inclusion is a morphism")
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    pub fn psi(&self) -> &GroupHom {
        &self.psi
    }

    /// Kernel `[G₂ → H₂ ×_{H₁} G₁]` with action `g₂^{(h₂,g₁)} = g₂^{h₂}`, and the
    /// morphism into the source induced by the projection to `H₂`.
    pub fn kernel(&self) -> Result<(CrossedModule, CrossedModuleMorphism)> {
        if !self.psi.is_surjective() {
            return Err(Error::NotSurjective("ψ in kernel of a crossed-module morphism".into()));
        }
        let (h2, g1) = (self.source.h(), self.target.g());
        let prod = direct_product(h2, g1);
        let ng1 = g1.order();
        let fiber: Vec<usize> = prod
            .elements()
            .filter(|&x| self.psi.apply(x / ng1) == self.target.i(x % ng1))
            .collect();
        let (pb, incl) = prod.subgroup(&fiber)?;
        let incl_table = incl.table();
        let position = |x: usize| incl_table.binary_search(&x).expect("element of the fiber product");
        let g2 = self.source.g();
        let i_map = g2.elements().map(|g| position(self.source.i(g) * ng1 + self.phi.apply(g))).collect();
        let i_tilde = GroupHom::new(g2.clone(), pb.clone(), i_map)?;
        let action = GroupAction::from_fn(&pb, g2, |g, k| self.source.act(g, incl_table[k] / ng1))?;
        let kernel_cm = CrossedModule::new(i_tilde, action)?;
        let to_h2 = GroupHom::new(pb.clone(), h2.clone(), incl_table.iter().map(|&x| x / ng1).collect())?;
        let mor = CrossedModuleMorphism::new(kernel_cm.clone(), self.source.clone(), GroupHom::identity(g2), to_h2)?;
        Ok((kernel_cm, mor))
    }

    /// True iff the induced maps on `ker i` and `coker i` are bijective.
    pub fn is_equivalence(&self) -> bool {
        let s = self.source.homotopy_invariants();
        let t = self.target.homotopy_invariants();
        let on_ker = |k: usize| {
            let g = self.phi.apply(s.embedding.apply(k));
            t.embedding.table().iter().position(|&x| x == g)
        };
        let ker_map: Option<Vec<usize>> = s.pi_high.elements().map(on_ker).collect();
        let ker_ok = match ker_map {
            Some(m) => GroupHom::new(s.pi_high.clone(), t.pi_high.clone(), m).map(|f| f.is_bijective()).unwrap_or(false),
            None => false,
        };
        // a coset of i₂(G₂) is sent to the coset of ψ of any representative
        let rep = |c: usize| self.source.h().elements().find(|&h| s.projection.apply(h) == c).unwrap();
        let coker_map = s.pi_low.elements().map(|c| t.projection.apply(self.psi.apply(rep(c)))).collect();
        let coker_ok = GroupHom::new(s.pi_low.clone(), t.pi_low.clone(), coker_map)
            .map(|f| f.is_bijective())
            .unwrap_or(false);
        ker_ok && coker_ok
    }
}

/// Order bookkeeping for `1 → ker i → G → H → coker i → 1`.
pub fn exact_sequence_orders(cm: &CrossedModule) -> (usize, usize, usize, usize) {
    let inv = cm.homotopy_invariants();
    (inv.pi_high.order(), cm.g().order(), cm.h().order(), inv.pi_low.order())
}

/// Convenience: `[Z/m → Z/n]` sending the generator to `k` with trivial action.
pub fn cyclic_module(m: usize, n: usize, k: usize) -> Result<CrossedModule> {
    let g = group::make_cyclic(m)?;
    let h = group::make_cyclic(n)?;
    let images: Vec<usize> = g.generators().iter().map(|_| k % n).collect();
    CrossedModule::with_trivial_action(GroupHom::from_generator_images(g, h, &images)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic;

    fn z(n: usize) -> FiniteGroup {
        make_cyclic(n).unwrap()
    }

    #[test]
    fn validation_examples() {
        let cm = CrossedModule::of_abelian(&z(2)).unwrap();
        assert!(cm.validate().is_valid());

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let one = FiniteGroup::trivial();
        let bad = CrossedModule::from_parts(GroupHom::trivial(&s3, &one), GroupAction::trivial(&one, &s3)).unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().all(|v| matches!(v, Violation::Peiffer { .. })));
        for v in &report.violations {
            if let Violation::Peiffer { x, y } = *v {
                assert_ne!(s3.mul(x, y), s3.mul(y, x));
            }
        }

        assert!(cyclic_module(4, 2, 1).unwrap().validate().is_valid());
    }

    #[test]
    fn kernel_is_central_and_abelian() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let samples = vec![
            cyclic_module(4, 2, 1).unwrap(),
            cyclic_module(2, 4, 2).unwrap(),
            CrossedModule::normal_inclusion(s3.subgroup(&s3.generated_by(&[3])).unwrap().1).unwrap(),
            CrossedModule::with_trivial_action(GroupHom::identity(&z(3))).unwrap(),
        ];
        for cm in samples {
            let inv = cm.homotopy_invariants();
            assert!(inv.pi_high.is_abelian());
            for k in inv.pi_high.elements() {
                let x = inv.embedding.apply(k);
                assert!(cm.g().elements().all(|y| cm.g().mul(x, y) == cm.g().mul(y, x)));
            }
            let (k, g, h, c) = exact_sequence_orders(&cm);
            assert_eq!(g, k * cm.boundary().image().len());
            assert_eq!(h, cm.boundary().image().len() * c);
        }
    }

    #[test]
    fn cokernel_projection_examples() {
        let m = cyclic_module(4, 2, 1).unwrap().cokernel_projection();
        assert_eq!(m.target().h().order(), 1);
        let m = CrossedModule::with_trivial_action(GroupHom::trivial(&z(2), &z(3))).unwrap().cokernel_projection();
        assert_eq!(m.target().h().order(), 3);
        let c = CrossedModule::of_group(&z(5));
        let m = c.cokernel_projection();
        assert_eq!(m.target().h().order(), 5);
        assert!(m.psi().is_bijective());
    }

    #[test]
    fn homotopy_invariant_examples() {
        let inv = CrossedModule::of_abelian(&z(2)).unwrap().homotopy_invariants();
        assert_eq!((inv.pi_low.order(), inv.pi_high.order()), (1, 2));
        let inv = CrossedModule::of_group(&z(3)).homotopy_invariants();
        assert_eq!((inv.pi_low.order(), inv.pi_high.order()), (3, 1));
        let inv = cyclic_module(4, 2, 1).unwrap().homotopy_invariants();
        assert_eq!((inv.pi_low.order(), inv.pi_high.order()), (1, 2));
        assert_eq!(inv.embedding.table(), vec![0, 2]);
    }

    #[test]
    fn kernel_of_cokernel_projection_is_image_module() {
        let cms = vec![cyclic_module(2, 4, 2).unwrap(), cyclic_module(4, 2, 1).unwrap(), cyclic_module(3, 6, 2).unwrap()];
        for cm in cms {
            let (ker, mor) = cm.cokernel_projection().kernel().unwrap();
            let img = cm.boundary().image();
            assert_eq!(ker.h().order(), img.len());
            // H ×_{H/i(G)} 1 ≅ i(G): the H-component of ĩ(g) is i(g)
            for g in cm.g().elements() {
                assert_eq!(mor.psi().apply(ker.i(g)), cm.i(g));
            }
            assert!(mor.psi().is_injective());
        }
    }

    #[test]
    fn kernel_of_identity_is_graph() {
        let cm = cyclic_module(4, 2, 1).unwrap();
        let (ker, _) = CrossedModuleMorphism::identity(&cm).kernel().unwrap();
        assert_eq!(ker.h().order(), cm.g().order());
        assert!(ker.boundary().is_bijective());
    }

    #[test]
    fn kernel_onto_trivial_is_whole_module() {
        let cm = cyclic_module(4, 2, 1).unwrap();
        let point = CrossedModule::of_group(&FiniteGroup::trivial());
        let m = CrossedModuleMorphism::new(
            cm.clone(),
            point.clone(),
            GroupHom::trivial(cm.g(), point.g()),
            GroupHom::trivial(cm.h(), point.h()),
        )
        .unwrap();
        let (ker, mor) = m.kernel().unwrap();
        assert_eq!(ker.h().order(), 2);
        assert!(mor.psi().is_bijective());
    }

    #[test]
    fn kernel_requires_surjective_psi() {
        let a = CrossedModule::of_group(&FiniteGroup::trivial());
        let b = CrossedModule::of_group(&z(2));
        let m = CrossedModuleMorphism::new(a.clone(), b, GroupHom::trivial(a.g(), &FiniteGroup::trivial()), GroupHom::trivial(a.h(), &z(2))).unwrap();
        assert!(matches!(m.kernel(), Err(Error::NotSurjective(_))));
    }

    #[test]
    fn equivalences() {
        let cm = cyclic_module(4, 2, 1).unwrap();
        assert!(CrossedModuleMorphism::kernel_inclusion(&cm).is_equivalence());
        assert!(CrossedModuleMorphism::identity(&cm).is_equivalence());
        let point = CrossedModule::of_group(&FiniteGroup::trivial());
        let a = CrossedModule::of_abelian(&z(2)).unwrap();
        let m = CrossedModuleMorphism::new(point.clone(), a.clone(), GroupHom::trivial(point.g(), a.g()), GroupHom::trivial(point.h(), a.h())).unwrap();
        assert!(!m.is_equivalence());
    }

    #[test]
    fn central_extension_and_products() {
        let p = GroupHom::new(z(4), z(2), vec![0, 1, 0, 1]).unwrap();
        let cm = CrossedModule::central_extension(p).unwrap();
        assert!(cm.action().is_trivial());
        let prod = CrossedModule::product(&cm, &CrossedModule::of_group(&z(3)));
        assert_eq!((prod.g().order(), prod.h().order()), (4, 6));
    }
}
