//! Coordinates on nerve levels.
//!
//! The generic chart at level `p` keeps the labels of the star of vertex 1:
//! the `g`-labels of the `p(p−1)/2` triangles through vertex 1 (listed in
//! descending lexicographic order) and the `h`-labels of the `p` edges
//! `e_01, e_12, …, e_1p`. Every other label is recovered from these through
//! the triangle and tetrahedron constraints, so the chart is a bijection
//! `N_p ≅ G^{p(p−1)/2} × H^p`.
//!
//! At levels 2 and 3 there are also the hand-made coordinates
//! `(g, h, f)` and `(g₀, g₂, g₃, h₀, f₀₁, h₂)` together with their closed-form
//! face maps.

use serde::Serialize;

use super::simplex::{edge_slot, triangle_slot, NerveSimplex};
use crate::crossed::CrossedModule;

/// A point of `G^{p(p−1)/2} × H^p` in the generic chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalizedCoordinates {
    pub level: usize,
    pub g_part: Vec<usize>,
    pub h_part: Vec<usize>,
}

/// Triangles through vertex 1 at level `p`, descending lexicographic order.
pub fn star_triangles(p: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for k in 2..=p {
        out.push([0, 1, k]);
    }
    for l in 3..=p {
        for k in 2..l {
            out.push([1, k, l]);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

impl NormalizedCoordinates {
    pub fn from_simplex(s: &NerveSimplex) -> Self {
        let p = s.level;
        let g_part = star_triangles(p).iter().map(|t| s.triangle(t[0], t[1], t[2])).collect();
        let h_part = (0..p).map(|k| if k == 0 { s.edge(0, 1) } else { s.edge(1, k + 1) }).collect();
        NormalizedCoordinates { level: p, g_part, h_part }
    }

    /// Rebuilds the full labeling; the result satisfies every constraint.
    pub fn to_simplex(&self, cm: &CrossedModule) -> NerveSimplex {
        let p = self.level;
        let (g, h) = (cm.g(), cm.h());
        let mut edges = vec![0u32; super::simplex::edge_count(p)];
        let mut triangles = vec![0u32; super::simplex::triangle_count(p)];
        for (t, &x) in star_triangles(p).iter().zip(&self.g_part) {
            triangles[triangle_slot(t[0], t[1], t[2])] = x as u32;
        }
        if p >= 1 {
            edges[edge_slot(0, 1)] = self.h_part[0] as u32;
        }
        for k in 2..=p {
            edges[edge_slot(1, k)] = self.h_part[k - 1] as u32;
        }
        let e = |edges: &[u32], j: usize, k: usize| edges[edge_slot(j, k)] as usize;
        let t = |tris: &[u32], j: usize, k: usize, l: usize| tris[triangle_slot(j, k, l)] as usize;
        for l in 2..=p {
            // e_0l = e_01·e_1l·i(g_01l)
            let v = h.mul(h.mul(e(&edges, 0, 1), e(&edges, 1, l)), cm.i(t(&triangles, 0, 1, l)));
            edges[edge_slot(0, l)] = v as u32;
            for k in 2..l {
                // e_kl = e_1k⁻¹·e_1l·i(g_1kl)⁻¹
                let v = h.mul(h.mul(h.inv(e(&edges, 1, k)), e(&edges, 1, l)), h.inv(cm.i(t(&triangles, 1, k, l))));
                edges[edge_slot(k, l)] = v as u32;
            }
        }
        for l in 3..=p {
            for k in 2..l {
                let ekl = e(&edges, k, l);
                // g_0kl = (g_01k^{e_kl})⁻¹·g_1kl·g_01l
                let v = g.mul(
                    g.mul(g.inv(cm.act(t(&triangles, 0, 1, k), ekl)), t(&triangles, 1, k, l)),
                    t(&triangles, 0, 1, l),
                );
                triangles[triangle_slot(0, k, l)] = v as u32;
                for j in 2..k {
                    // g_jkl = g_1jk^{e_kl}·g_1kl·g_1jl⁻¹
                    let v = g.mul(
                        g.mul(cm.act(t(&triangles, 1, j, k), ekl), t(&triangles, 1, k, l)),
                        g.inv(t(&triangles, 1, j, l)),
                    );
                    triangles[triangle_slot(j, k, l)] = v as u32;
                }
            }
        }
        NerveSimplex { level: p, edges, triangles }
    }

    /// Mixed-radix index: `g`-digits first (most significant), then `h`-digits.
    pub fn index(&self, g_order: usize, h_order: usize) -> u64 {
        let mut idx = 0u64;
        for &x in &self.g_part {
            idx = idx * g_order as u64 + x as u64;
        }
        for &x in &self.h_part {
            idx = idx * h_order as u64 + x as u64;
        }
        idx
    }

    pub fn from_index(p: usize, mut idx: u64, g_order: usize, h_order: usize) -> Self {
        let ng = p * p.saturating_sub(1) / 2;
        let mut h_part = vec![0; p];
        for slot in h_part.iter_mut().rev() {
            *slot = (idx % h_order as u64) as usize;
            idx /= h_order as u64;
        }
        let mut g_part = vec![0; ng];
        for slot in g_part.iter_mut().rev() {
            *slot = (idx % g_order as u64) as usize;
            idx /= g_order as u64;
        }
        NormalizedCoordinates { level: p, g_part, h_part }
    }
}

/// Level-2 coordinates `(g, h, f) = (g_012, e_01·e_12, e_12)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coords2 {
    pub g: usize,
    pub h: usize,
    pub f: usize,
}

impl Coords2 {
    pub fn from_simplex(s: &NerveSimplex, cm: &CrossedModule) -> Self {
        assert_eq!(s.level, 2);
        Coords2 { g: s.triangle(0, 1, 2), h: cm.h().mul(s.edge(0, 1), s.edge(1, 2)), f: s.edge(1, 2) }
    }

    pub fn to_simplex(&self, cm: &CrossedModule) -> NerveSimplex {
        let h = cm.h();
        let e01 = h.mul(self.h, h.inv(self.f));
        NormalizedCoordinates { level: 2, g_part: vec![self.g], h_part: vec![e01, self.f] }.to_simplex(cm)
    }

    /// The three edges `(f₀, f₁, f₂) = (f, h·i(g), h·f⁻¹)`, i.e. the faces `d₀, d₁, d₂`.
    pub fn faces(&self, cm: &CrossedModule) -> [usize; 3] {
        let h = cm.h();
        [self.f, h.mul(self.h, cm.i(self.g)), h.mul(self.h, h.inv(self.f))]
    }
}

/// Level-3 coordinates
/// `(g₀, g₂, g₃, h₀, f₀₁, h₂) = (g_123, g_013, g_012, e_12·e_23, e_23, e_01·e_13)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coords3 {
    pub g0: usize,
    pub g2: usize,
    pub g3: usize,
    pub h0: usize,
    pub f01: usize,
    pub h2: usize,
}

impl Coords3 {
    pub fn from_simplex(s: &NerveSimplex, cm: &CrossedModule) -> Self {
        assert_eq!(s.level, 3);
        let h = cm.h();
        Coords3 {
            g0: s.triangle(1, 2, 3),
            g2: s.triangle(0, 1, 3),
            g3: s.triangle(0, 1, 2),
            h0: h.mul(s.edge(1, 2), s.edge(2, 3)),
            f01: s.edge(2, 3),
            h2: h.mul(s.edge(0, 1), s.edge(1, 3)),
        }
    }

    pub fn to_simplex(&self, cm: &CrossedModule) -> NerveSimplex {
        let h = cm.h();
        let e12 = h.mul(self.h0, h.inv(self.f01));
        let e13 = h.mul(self.h0, cm.i(self.g0));
        let e01 = h.mul(self.h2, h.inv(e13));
        NormalizedCoordinates { level: 3, g_part: vec![self.g0, self.g2, self.g3], h_part: vec![e01, e12, e13] }
            .to_simplex(cm)
    }

    /// Closed-form faces `d₀ … d₃` as printed for this chart.
    pub fn closed_form_faces(&self, cm: &CrossedModule) -> [Coords2; 4] {
        let (g, h) = (cm.g(), cm.h());
        let Coords3 { g0, g2, g3, h0, f01, h2 } = *self;
        let d0 = Coords2 { g: g0, h: h0, f: f01 };
        let x = h.mul(h.mul(h2, cm.i(g.inv(g0))), h.inv(h0));
        let d1 = Coords2 { g: g.mul(g.mul(cm.act(g.inv(g3), f01), cm.act(g0, x)), g2), h: h2, f: f01 };
        let d2 = Coords2 { g: g2, h: h2, f: h.mul(h0, cm.i(g0)) };
        let d3 = Coords2 {
            g: g3,
            h: h.mul(h.mul(h2, cm.i(g.inv(g0))), h.inv(f01)),
            f: h.mul(h0, h.inv(f01)),
        };
        [d0, d1, d2, d3]
    }

    /// `d₁` as obtained by deleting vertex 1 of the full labeling, written in
    /// this chart: `((g₃⁻¹)^{f₀₁}·g₀·g₂, h₂·i(g₀)⁻¹·f₀₁⁻¹·i(g₃)·f₀₁, f₀₁)`.
    pub fn vertex_deletion_d1(&self, cm: &CrossedModule) -> Coords2 {
        let (g, h) = (cm.g(), cm.h());
        let Coords3 { g0, g2, g3, f01, h2, .. } = *self;
        let hh = [h2, h.inv(cm.i(g0)), h.inv(f01), cm.i(g3), f01].into_iter().fold(0, |a, b| h.mul(a, b));
        Coords2 { g: g.mul(g.mul(cm.act(g.inv(g3), f01), g0), g2), h: hh, f: f01 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::cyclic_module;
    use crate::group::{make_cyclic, FiniteGroup, GroupAction, GroupHom};

    fn samples() -> Vec<CrossedModule> {
        let z3 = make_cyclic(3).unwrap();
        let z2 = make_cyclic(2).unwrap();
        let inversion = GroupAction::from_fn(&z2, &z3, |g, h| if h == 0 { g } else { (3 - g) % 3 }).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let rotations = s3.generated_by(&[3]);
        vec![
            cyclic_module(4, 2, 1).unwrap(),
            cyclic_module(2, 4, 2).unwrap(),
            CrossedModule::new(GroupHom::trivial(&z3, &z2), inversion).unwrap(),
            CrossedModule::normal_inclusion(s3.subgroup(&rotations).unwrap().1).unwrap(),
        ]
    }

    #[test]
    fn star_order_at_level_three() {
        assert_eq!(star_triangles(3), vec![[1, 2, 3], [0, 1, 3], [0, 1, 2]]);
        assert_eq!(star_triangles(2), vec![[0, 1, 2]]);
        assert!(star_triangles(1).is_empty());
        for p in 0usize..7 {
            assert_eq!(star_triangles(p).len(), p * p.saturating_sub(1) / 2);
        }
    }

    #[test]
    fn decoded_labelings_satisfy_all_constraints() {
        for cm in samples() {
            let (ng, nh) = (cm.g().order(), cm.h().order());
            for p in 0usize..=4 {
                let total = (ng as u64).pow((p * p.saturating_sub(1) / 2) as u32) * (nh as u64).pow(p as u32);
                for idx in 0..total.min(5000) {
                    let c = NormalizedCoordinates::from_index(p, idx, ng, nh);
                    let s = c.to_simplex(&cm);
                    assert!(s.defects(&cm).is_empty(), "p={p} idx={idx}");
                    assert_eq!(NormalizedCoordinates::from_simplex(&s), c);
                    assert_eq!(c.index(ng, nh), idx);
                }
            }
        }
    }

    #[test]
    fn level_two_chart_and_faces() {
        for cm in samples() {
            for g in cm.g().elements() {
                for h in cm.h().elements() {
                    for f in cm.h().elements() {
                        let c = Coords2 { g, h, f };
                        let s = c.to_simplex(&cm);
                        assert_eq!(Coords2::from_simplex(&s, &cm), c);
                        let faces = c.faces(&cm);
                        for (i, &e) in faces.iter().enumerate() {
                            assert_eq!(s.face(i).edges, vec![e as u32]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn level_three_round_trip_and_faces() {
        for cm in samples() {
            let (ng, nh) = (cm.g().order(), cm.h().order());
            for idx in 0..(ng * ng * ng * nh * nh * nh) as u64 {
                let s = NormalizedCoordinates::from_index(3, idx, ng, nh).to_simplex(&cm);
                let c = Coords3::from_simplex(&s, &cm);
                assert_eq!(c.to_simplex(&cm), s);
                let closed = c.closed_form_faces(&cm);
                for i in [0, 2, 3] {
                    assert_eq!(Coords2::from_simplex(&s.face(i), &cm), closed[i], "d{i}");
                }
                assert_eq!(Coords2::from_simplex(&s.face(1), &cm), c.vertex_deletion_d1(&cm));
            }
        }
    }

    #[test]
    fn closed_form_d1_on_klein_style_example() {
        // G = H = Z/2 with trivial structure: d₁ adds the three g-labels
        let z2 = make_cyclic(2).unwrap();
        let cm = CrossedModule::with_trivial_action(GroupHom::trivial(&z2, &z2)).unwrap();
        let c = Coords3 { g0: 1, g2: 1, g3: 1, h0: 0, f01: 1, h2: 0 };
        assert_eq!(c.closed_form_faces(&cm)[1], Coords2 { g: 1, h: 0, f: 1 });
        assert_eq!(c.vertex_deletion_d1(&cm), Coords2 { g: 1, h: 0, f: 1 });
    }

    #[test]
    fn closed_form_d1_breaks_a_simplicial_identity_when_i_is_onto() {
        // d₁d₂ = d₁d₁ on level 3; with the closed-form d₁ the second edge of
        // d₁d₁ is h₂·i(g₁) while d₁d₂ gives h₂·i(g₂)
        let cm = cyclic_module(2, 2, 1).unwrap();
        let c = Coords3 { g0: 1, g2: 0, g3: 0, h0: 0, f01: 0, h2: 0 };
        let closed = c.closed_form_faces(&cm);
        assert_ne!(closed[1].faces(&cm)[1], closed[2].faces(&cm)[1]);
    }
}
