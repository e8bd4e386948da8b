use std::sync::OnceLock;

use crate::crossed::CrossedModule;

/// Position of the edge `{j < k}` in colexicographic order.
#[inline]
pub fn edge_slot(j: usize, k: usize) -> usize {
    debug_assert!(j < k);
    k * (k - 1) / 2 + j
}

/// Position of the triangle `{j < k < l}` in colexicographic order.
#[inline]
pub fn triangle_slot(j: usize, k: usize, l: usize) -> usize {
    debug_assert!(j < k && k < l);
    l * (l - 1) * (l - 2) / 6 + k * (k - 1) / 2 + j
}

pub fn edge_count(p: usize) -> usize {
    (p + 1) * p / 2
}

pub fn triangle_count(p: usize) -> usize {
    (p + 1) * p * p.saturating_sub(1) / 6
}

const COLLAPSED: u32 = u32::MAX;
const CACHED_LEVELS: usize = 8;

/// For each slot of the result, the source slot it copies (or `COLLAPSED`).
struct SlotMap {
    level: usize,
    edges: Vec<u32>,
    triangles: Vec<u32>,
}

fn face_slots(p: usize, i: usize) -> SlotMap {
    let map: Vec<usize> = (0..=p).filter(|&v| v != i).collect();
    let q = p - 1;
    let mut edges = Vec::with_capacity(edge_count(q));
    for k in 1..=q {
        for j in 0..k {
            edges.push(edge_slot(map[j], map[k]) as u32);
        }
    }
    let mut triangles = Vec::with_capacity(triangle_count(q));
    for l in 2..=q {
        for k in 1..l {
            for j in 0..k {
                triangles.push(triangle_slot(map[j], map[k], map[l]) as u32);
            }
        }
    }
    SlotMap { level: q, edges, triangles }
}

fn degeneracy_slots(p: usize, i: usize) -> (Vec<u32>, Vec<u32>) {
    let q = p + 1;
    let sigma = |v: usize| if v <= i { v } else { v - 1 };
    let mut edges = Vec::with_capacity(edge_count(q));
    for k in 1..=q {
        for j in 0..k {
            let (a, b) = (sigma(j), sigma(k));
            edges.push(if a == b { COLLAPSED } else { edge_slot(a, b) as u32 });
        }
    }
    let mut triangles = Vec::with_capacity(triangle_count(q));
    for l in 2..=q {
        for k in 1..l {
            for j in 0..k {
                let (a, b, c) = (sigma(j), sigma(k), sigma(l));
                triangles.push(if a == b || b == c { COLLAPSED } else { triangle_slot(a, b, c) as u32 });
            }
        }
    }
    (edges, triangles)
}

fn operator_slots(p: usize, i: usize, degeneracy: bool) -> &'static SlotMap {
    static TABLES: OnceLock<[Vec<Vec<SlotMap>>; 2]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        let faces = (0..=CACHED_LEVELS).map(|p| (0..=p).filter(|_| p > 0).map(|i| face_slots(p, i)).collect()).collect();
        let degens = (0..=CACHED_LEVELS)
            .map(|p| {
                (0..=p)
                    .map(|i| {
                        let (edges, triangles) = degeneracy_slots(p, i);
                        SlotMap { level: p + 1, edges, triangles }
                    })
                    .collect()
            })
            .collect();
        [faces, degens]
    });
    &tables[degeneracy as usize][p][i]
}

/// A `p`-simplex of the nerve, stored as its full labeling: an element
/// `e_jk ∈ H` on every edge and `g_jkl ∈ G` on every triangle.
///
/// The 2-arrow on `(j,k,l)` is `(g_jkl, e_jk·e_kl)`, so the labels satisfy
/// `e_jl = e_jk·e_kl·i(g_jkl)`, and every tetrahedron `a<b<c<d` satisfies
/// `g_abc^{e_cd}·g_acd = g_bcd·g_abd`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NerveSimplex {
    pub level: usize,
    /// Colex order, see [`edge_slot`].
    pub edges: Vec<u32>,
    /// Colex order, see [`triangle_slot`].
    pub triangles: Vec<u32>,
}

/// A labeling constraint that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    Triangle([usize; 3]),
    Tetrahedron([usize; 4]),
}

impl NerveSimplex {
    /// The unique 0-simplex.
    pub fn point() -> Self {
        NerveSimplex { level: 0, edges: Vec::new(), triangles: Vec::new() }
    }

    #[inline]
    pub fn edge(&self, j: usize, k: usize) -> usize {
        self.edges[edge_slot(j, k)] as usize
    }

    #[inline]
    pub fn triangle(&self, j: usize, k: usize, l: usize) -> usize {
        self.triangles[triangle_slot(j, k, l)] as usize
    }

    /// 2-arrow `(g, s)` on `(j,k,l)` with source `s` and target `s·i(g)`.
    pub fn two_arrow(&self, j: usize, k: usize, l: usize, cm: &CrossedModule) -> (usize, usize) {
        (self.triangle(j, k, l), cm.h().mul(self.edge(j, k), self.edge(k, l)))
    }

    /// Restriction along an injective monotone vertex map `v ↦ map[v]`.
    pub fn restrict(&self, map: &[usize]) -> Self {
        let q = map.len() - 1;
        let mut edges = Vec::with_capacity(edge_count(q));
        for k in 1..=q {
            for j in 0..k {
                edges.push(self.edges[edge_slot(map[j], map[k])]);
            }
        }
        let mut triangles = Vec::with_capacity(triangle_count(q));
        for l in 2..=q {
            for k in 1..l {
                for j in 0..k {
                    triangles.push(self.triangles[triangle_slot(map[j], map[k], map[l])]);
                }
            }
        }
        NerveSimplex { level: q, edges, triangles }
    }

    /// `d_i`: delete vertex `i`.
    pub fn face(&self, i: usize) -> Self {
        assert!(self.level >= 1 && i <= self.level, "face index out of range");
        if self.level <= CACHED_LEVELS {
            return self.pull(operator_slots(self.level, i, false));
        }
        let map: Vec<usize> = (0..=self.level).filter(|&v| v != i).collect();
        self.restrict(&map)
    }

    /// `s_i`: repeat vertex `i`, labeling the collapsed edge and every
    /// collapsed triangle by the identity.
    pub fn degeneracy(&self, i: usize) -> Self {
        assert!(i <= self.level, "degeneracy index out of range");
        if self.level <= CACHED_LEVELS {
            return self.pull(operator_slots(self.level, i, true));
        }
        let (edges, triangles) = degeneracy_slots(self.level, i);
        self.pull(&SlotMap { level: self.level + 1, edges, triangles })
    }

    fn pull(&self, m: &SlotMap) -> Self {
        let get = |src: &[u32], k: u32| if k == COLLAPSED { 0 } else { src[k as usize] };
        NerveSimplex {
            level: m.level,
            edges: m.edges.iter().map(|&k| get(&self.edges, k)).collect(),
            triangles: m.triangles.iter().map(|&k| get(&self.triangles, k)).collect(),
        }
    }

    /// True iff the simplex is `s_i` of one of its faces.
    pub fn is_degenerate(&self) -> bool {
        (0..self.level).any(|i| self.is_degenerate_at(i))
    }

    /// True iff the simplex equals `s_i(d_i x)`.
    pub fn is_degenerate_at(&self, i: usize) -> bool {
        if self.edges[edge_slot(i, i + 1)] != 0 {
            return false;
        }
        self.face(i).degeneracy(i) == *self
    }

    /// All violated triangle and tetrahedron constraints.
    pub fn defects(&self, cm: &CrossedModule) -> Vec<Defect> {
        let (g, h) = (cm.g(), cm.h());
        let p = self.level;
        let mut out = Vec::new();
        for l in 2..=p {
            for k in 1..l {
                for j in 0..k {
                    let composite = h.mul(h.mul(self.edge(j, k), self.edge(k, l)), cm.i(self.triangle(j, k, l)));
                    if composite != self.edge(j, l) {
                        out.push(Defect::Triangle([j, k, l]));
                    }
                }
            }
        }
        for d in 3..=p {
            for c in 2..d {
                for b in 1..c {
                    for a in 0..b {
                        let lhs = g.mul(cm.act(self.triangle(a, b, c), self.edge(c, d)), self.triangle(a, c, d));
                        let rhs = g.mul(self.triangle(b, c, d), self.triangle(a, b, d));
                        if lhs != rhs {
                            out.push(Defect::Tetrahedron([a, b, c, d]));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self, cm: &CrossedModule) -> bool {
        if self.edges.len() != edge_count(self.level) || self.triangles.len() != triangle_count(self.level) {
            return false;
        }
        let (g, h) = (cm.g(), cm.h());
        let p = self.level;
        for l in 2..=p {
            for k in 1..l {
                for j in 0..k {
                    if h.mul(h.mul(self.edge(j, k), self.edge(k, l)), cm.i(self.triangle(j, k, l))) != self.edge(j, l) {
                        return false;
                    }
                }
            }
        }
        for d in 3..=p {
            for c in 2..d {
                for b in 1..c {
                    for a in 0..b {
                        let lhs = g.mul(cm.act(self.triangle(a, b, c), self.edge(c, d)), self.triangle(a, c, d));
                        if lhs != g.mul(self.triangle(b, c, d), self.triangle(a, b, d)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Alexander–Whitney front face on vertices `0..=k`.
    pub fn front(&self, k: usize) -> Self {
        self.restrict(&(0..=k).collect::<Vec<_>>())
    }

    /// Alexander–Whitney back face on vertices `k..=p`.
    pub fn back(&self, k: usize) -> Self {
        self.restrict(&(k..=self.level).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_slots_enumerate_in_order() {
        let p = 5;
        let mut n = 0;
        for k in 1..=p {
            for j in 0..k {
                assert_eq!(edge_slot(j, k), n);
                n += 1;
            }
        }
        assert_eq!(n, edge_count(p));
        let mut n = 0;
        for l in 2..=p {
            for k in 1..l {
                for j in 0..k {
                    assert_eq!(triangle_slot(j, k, l), n);
                    n += 1;
                }
            }
        }
        assert_eq!(n, triangle_count(p));
    }

    #[test]
    fn front_and_back_of_point_edges() {
        let s = NerveSimplex { level: 2, edges: vec![1, 2, 3], triangles: vec![4] };
        assert_eq!(s.front(1).edges, vec![1]);
        assert_eq!(s.back(1).edges, vec![3]);
        assert_eq!(s.front(0), NerveSimplex::point());
        assert_eq!(s.back(2), NerveSimplex::point());
        assert_eq!(s.face(1).edges, vec![2]);
    }
}
