//! Finite groups as dense multiplication tables, together with homomorphisms
//! and right actions between them.
//!
//! Element `0` is always the identity. All objects are immutable after
//! construction and cheap to clone (the tables live behind an `Arc`).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest order for which associativity is checked on every triple. Above it
/// Light's test over a generating set is used, which is still exhaustive.
const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

struct GroupData {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<u32>,
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.mul == other.data.mul
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.data.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, `table[a][b] = a·b`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} in row {a} out of range")));
                }
                mul.push(x as u32);
            }
        }
        Self::from_flat(n, mul, None)
    }

    fn from_flat(n: usize, mul: Vec<u32>, generators: Option<Vec<u32>>) -> Result<Self> {
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(Error::InvalidGroup(format!("0 is not a two-sided identity (element {x})")));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
            }
            let b = row.iter().position(|&x| x == 0).unwrap();
            if mul[b * n + a] != 0 {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
            inv[a] = b as u32;
        }
        let mut data = GroupData { order: n, mul, inv, generators: Vec::new() };
        data.generators = match generators {
            Some(g) => g,
            None => greedy_generators(&data),
        };
        let group = FiniteGroup { data: Arc::new(data) };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order();
        let middles: Vec<usize> = if n <= FULL_ASSOCIATIVITY_LIMIT {
            (0..n).collect()
        } else {
            self.generators().iter().map(|&g| g as usize).collect()
        };
        for x in 0..n {
            for &y in &middles {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative on ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        make_cyclic(1).expect("order 1 is valid")
    }

    /// Symmetric group on `n` letters. Elements are permutations in
    /// lexicographic order of their one-line notation; `a·b` applies `a` first.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidGroup(format!("symmetric group on {n} letters not supported")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<usize> = (0..n).map(|x| b[a[x]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&table)
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.mul[a * self.data.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.data.inv[a] as usize
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    /// Conjugate `h⁻¹·g·h`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.inv(h), self.mul(g, h))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Generators recorded at construction (factor generators for cyclic
    /// groups and products), or a greedy generating set for explicit tables.
    pub fn generators(&self) -> &[u32] {
        &self.data.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Sorted list of element orders; a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Subgroup on the given elements (must contain 0 and be closed). Elements
    /// are re-indexed in ascending order of their index in `self`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if !set.contains(&0) {
            return Err(Error::InvalidGroup("subgroup must contain the identity".into()));
        }
        let elems: Vec<usize> = set.into_iter().collect();
        let mut position = vec![usize::MAX; self.order()];
        for (k, &e) in elems.iter().enumerate() {
            if e >= self.order() {
                return Err(Error::IndexOutOfRange { index: e, bound: self.order() });
            }
            position[e] = k;
        }
        let m = elems.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &elems {
            for &b in &elems {
                let p = position[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::InvalidGroup("subset is not closed under multiplication".into()));
                }
                mul.push(p as u32);
            }
        }
        let sub = FiniteGroup::from_flat(m, mul, None)?;
        let incl = GroupHom::new(sub.clone(), self.clone(), elems)?;
        Ok((sub, incl))
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut frontier = vec![0usize];
        let mut all = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    frontier.push(y);
                    all.push(y);
                }
            }
        }
        all.sort_unstable();
        all
    }
}

fn greedy_generators(data: &GroupData) -> Vec<u32> {
    let n = data.order;
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0u32];
    let mut gens = Vec::new();
    for cand in 1..n {
        if inside[cand] {
            continue;
        }
        gens.push(cand as u32);
        // close the subgroup under right multiplication by all generators
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = data.mul[x as usize * n + g as usize];
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Cyclic group of order `n`; element `k` is the residue `k`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group of order 0".into()));
    }
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(((a + b) % n) as u32);
        }
    }
    let gens = if n == 1 { vec![] } else { vec![1] };
    FiniteGroup::from_flat(n, mul, Some(gens))
}

/// Direct product with lexicographic indexing: `(x, y) ↦ x·|b| + y`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            mul.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
        }
    }
    let mut gens: Vec<u32> = a.generators().iter().map(|&g| g * nb as u32).collect();
    gens.extend(b.generators().iter().copied());
    FiniteGroup::from_flat(n, mul, Some(gens)).expect("product of groups is a group")
}

/// A homomorphism between finite groups, stored as an index table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<u32>,
}

impl GroupHom {
    /// Validates multiplicativity exhaustively; the error carries the first
    /// failing pair.
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidHom {
                reason: format!("table has {} entries, source has order {}", map.len(), source.order()),
                witness: None,
            });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::InvalidHom {
                reason: format!("image {bad} out of range for target of order {}", target.order()),
                witness: None,
            });
        }
        if map[0] != 0 {
            return Err(Error::InvalidHom { reason: "identity not sent to identity".into(), witness: None });
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::InvalidHom {
                        reason: format!("f({x}·{y}) ≠ f({x})·f({y})"),
                        witness: Some((x, y)),
                    });
                }
            }
        }
        let map = map.into_iter().map(|y| y as u32).collect();
        Ok(GroupHom { source, target, map })
    }

    /// Homomorphism determined by the images of `source.generators()`.
    pub fn from_generator_images(source: FiniteGroup, target: FiniteGroup, images: &[usize]) -> Result<Self> {
        let gens: Vec<usize> = source.generators().iter().map(|&g| g as usize).collect();
        if gens.len() != images.len() {
            return Err(Error::InvalidHom {
                reason: format!("{} generator images given, source has {} generators", images.len(), gens.len()),
                witness: None,
            });
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= target.order()) {
            return Err(Error::InvalidHom { reason: format!("image {bad} out of range"), witness: None });
        }
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = source.mul(x, g);
                let fy = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    frontier.push(y);
                } else if map[y] != fy {
                    return Err(Error::InvalidHom {
                        reason: format!("generator images are inconsistent at element {y}"),
                        witness: Some((x, g)),
                    });
                }
            }
        }
        Self::new(source, target, map)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order() as u32).collect() }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), map: vec![0; source.order()] }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn table(&self) -> Vec<usize> {
        self.map.iter().map(|&y| y as usize).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::InvalidHom { reason: "composition of non-composable maps".into(), witness: None });
        }
        let map = self.map.iter().map(|&y| other.map[y as usize]).collect();
        Ok(GroupHom { source: self.source.clone(), target: other.target.clone(), map })
    }

    /// Image as a sorted list of target elements.
    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.map.iter().map(|&y| y as usize).collect();
        set.into_iter().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().filter(|&&y| y == 0).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Kernel of `h` with its embedding into the source.
pub fn kernel(h: &GroupHom) -> (FiniteGroup, GroupHom) {
    let elems: Vec<usize> = h.source.elements().filter(|&x| h.apply(x) == 0).collect();
    h.source.subgroup(&elems).expect("kernel is a subgroup")
}

/// Quotient of the target by the image of `h`, with the projection. Cosets
/// are indexed by ascending minimal representative, so the identity coset is 0.
pub fn cokernel(h: &GroupHom) -> Result<(FiniteGroup, GroupHom)> {
    quotient(&h.target, &h.image())
}

/// Quotient of `g` by the normal subgroup `n` (sorted element list).
pub fn quotient(g: &FiniteGroup, n: &[usize]) -> Result<(FiniteGroup, GroupHom)> {
    let in_n = {
        let mut v = vec![false; g.order()];
        for &x in n {
            v[x] = true;
        }
        v
    };
    for &x in n {
        for y in g.elements() {
            if !in_n[g.conj(x, y)] {
                return Err(Error::NotNormal(format!(
                    "conjugate of {x} by {y} leaves the subgroup"
                )));
            }
        }
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for t in g.elements() {
        if coset_of[t] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(t);
        for &x in n {
            coset_of[g.mul(t, x)] = k;
        }
    }
    let m = reps.len();
    let mut mul = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            mul.push(coset_of[g.mul(a, b)] as u32);
        }
    }
    let gens: Vec<u32> = {
        let mut v: Vec<u32> = g.generators().iter().map(|&x| coset_of[x as usize] as u32).filter(|&c| c != 0).collect();
        v.dedup();
        v
    };
    let q = FiniteGroup::from_flat(m, mul, Some(gens))?;
    let proj = GroupHom::new(g.clone(), q.clone(), coset_of)?;
    Ok((q, proj))
}

/// A right action of `actor` on `space` by automorphisms, `(g, h) ↦ g^h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    actor: FiniteGroup,
    space: FiniteGroup,
    table: Vec<u32>,
}

impl GroupAction {
    /// `table[h][g] = g^h`.
    pub fn new(actor: FiniteGroup, space: FiniteGroup, table: &[Vec<usize>]) -> Result<Self> {
        if table.len() != actor.order() || table.iter().any(|r| r.len() != space.order()) {
            return Err(Error::InvalidAction("table shape does not match |H| × |G|".into()));
        }
        let mut flat = Vec::with_capacity(actor.order() * space.order());
        for row in table {
            for &x in row {
                if x >= space.order() {
                    return Err(Error::InvalidAction(format!("entry {x} out of range")));
                }
                flat.push(x as u32);
            }
        }
        let action = GroupAction { actor, space, table: flat };
        action.check()?;
        Ok(action)
    }

    pub fn from_fn(actor: &FiniteGroup, space: &FiniteGroup, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table: Vec<Vec<usize>> =
            actor.elements().map(|h| space.elements().map(|g| f(g, h)).collect()).collect();
        Self::new(actor.clone(), space.clone(), &table)
    }

    pub fn trivial(actor: &FiniteGroup, space: &FiniteGroup) -> Self {
        let table = (0..actor.order()).flat_map(|_| 0..space.order() as u32).collect();
        GroupAction { actor: actor.clone(), space: space.clone(), table }
    }

    /// Conjugation of a group on itself, `g^h = h⁻¹gh`.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        Self::from_fn(g, g, |x, h| g.conj(x, h)).expect("conjugation is a right action")
    }

    fn check(&self) -> Result<()> {
        let (h, g) = (&self.actor, &self.space);
        for x in g.elements() {
            if self.act(x, 0) != x {
                return Err(Error::InvalidAction(format!("identity moves {x}")));
            }
        }
        for a in h.elements() {
            let mut seen = vec![false; g.order()];
            for x in g.elements() {
                let y = self.act(x, a);
                if std::mem::replace(&mut seen[y], true) {
                    return Err(Error::InvalidAction(format!("element {a} does not act bijectively")));
                }
                for z in g.elements() {
                    if self.act(g.mul(x, z), a) != g.mul(y, self.act(z, a)) {
                        return Err(Error::InvalidAction(format!(
                            "element {a} is not an automorphism on ({x}, {z})"
                        )));
                    }
                }
            }
            for b in h.elements() {
                let ab = h.mul(a, b);
                for x in g.elements() {
                    if self.act(self.act(x, a), b) != self.act(x, ab) {
                        return Err(Error::InvalidAction(format!(
                            "(g^{a})^{b} ≠ g^({a}·{b}) for g = {x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn space(&self) -> &FiniteGroup {
        &self.space
    }

    /// `g^h`.
    #[inline]
    pub fn act(&self, g: usize, h: usize) -> usize {
        self.table[h * self.space.order() + g] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.actor.elements().all(|h| self.space.elements().all(|g| self.act(g, h) == g))
    }

    /// The action pulled back along `f: K → actor`.
    pub fn pullback(&self, f: &GroupHom) -> Result<Self> {
        if f.target() != &self.actor {
            return Err(Error::InvalidAction("pullback along a map into a different group".into()));
        }
        Self::from_fn(f.source(), &self.space, |g, k| self.act(g, f.apply(k)))
    }
}
