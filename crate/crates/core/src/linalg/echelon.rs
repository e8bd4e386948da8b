//! Incremental rank computation: rows arrive one at a time and are folded
//! into a reduced row echelon form, so a sparse row costs at most one row
//! operation per nonzero entry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Streaming row-space accumulator over some field.
pub trait RankAccumulator: Send {
    fn width(&self) -> usize;
    fn rank(&self) -> usize;
    /// Adds a sparse row (duplicate columns are summed); true if the rank grew.
    fn insert(&mut self, row: &[(usize, i64)]) -> bool;
    /// True iff the row lies in the current row space.
    fn contains(&self, row: &[(usize, i64)]) -> bool;
}

const NONE: u32 = u32::MAX;

/// Rows over GF(2) packed into 64-bit words.
pub struct Gf2Echelon {
    width: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<u32>,
}

impl Gf2Echelon {
    pub fn new(width: usize) -> Self {
        Gf2Echelon { width, words: width.div_ceil(64), rows: Vec::new(), pivot_row: vec![NONE; width] }
    }

    fn reduce(&self, row: &[(usize, i64)]) -> Vec<u64> {
        let mut v = vec![0u64; self.words];
        for &(c, x) in row {
            if x & 1 != 0 {
                v[c / 64] ^= 1 << (c % 64);
            }
        }
        let support: Vec<usize> = row.iter().map(|&(c, _)| c).collect();
        for c in support {
            let r = self.pivot_row[c];
            if r != NONE && v[c / 64] >> (c % 64) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(&self.rows[r as usize]) {
                    *a ^= b;
                }
            }
        }
        v
    }
}

impl RankAccumulator for Gf2Echelon {
    fn width(&self) -> usize {
        self.width
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, row: &[(usize, i64)]) -> bool {
        let v = self.reduce(row);
        let Some(w) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let c = w * 64 + v[w].trailing_zeros() as usize;
        let (word, bit) = (c / 64, 1u64 << (c % 64));
        for r in self.rows.iter_mut() {
            if r[word] & bit != 0 {
                for (a, b) in r.iter_mut().zip(&v) {
                    *a ^= b;
                }
            }
        }
        self.pivot_row[c] = self.rows.len() as u32;
        self.rows.push(v);
        true
    }

    fn contains(&self, row: &[(usize, i64)]) -> bool {
        self.reduce(row).iter().all(|&x| x == 0)
    }
}

/// Dense rows over GF(p), `p < 2³²`.
pub struct FpEchelon {
    width: usize,
    p: u64,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<u32>,
}

pub fn mod_inverse(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl FpEchelon {
    pub fn new(width: usize, p: u32) -> Self {
        FpEchelon { width, p: p as u64, rows: Vec::new(), pivot_row: vec![NONE; width] }
    }

    fn reduce(&self, row: &[(usize, i64)]) -> Vec<u64> {
        let p = self.p;
        let mut v = vec![0u64; self.width];
        for &(c, x) in row {
            v[c] = (v[c] + x.rem_euclid(p as i64) as u64) % p;
        }
        for &(c, _) in row {
            let r = self.pivot_row[c];
            let f = v[c];
            if r != NONE && f != 0 {
                for (a, &b) in v.iter_mut().zip(&self.rows[r as usize]) {
                    if b != 0 {
                        *a = (*a + (p - f) * b) % p;
                    }
                }
            }
        }
        v
    }
}

impl RankAccumulator for FpEchelon {
    fn width(&self) -> usize {
        self.width
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, row: &[(usize, i64)]) -> bool {
        let p = self.p;
        let mut v = self.reduce(row);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inverse(v[c], p);
        for a in v.iter_mut() {
            *a = *a * inv % p;
        }
        for r in self.rows.iter_mut() {
            let f = r[c];
            if f != 0 {
                for (a, &b) in r.iter_mut().zip(&v) {
                    if b != 0 {
                        *a = (*a + (p - f) * b) % p;
                    }
                }
            }
        }
        self.pivot_row[c] = self.rows.len() as u32;
        self.rows.push(v);
        true
    }

    fn contains(&self, row: &[(usize, i64)]) -> bool {
        self.reduce(row).iter().all(|&x| x == 0)
    }
}

/// Integer arithmetic used by the fraction-free echelon; `None` is overflow.
trait Coef: Clone + Send + Sync {
    fn from_i64(x: i64) -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    /// `a·x − b·y`.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Coef for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Coef for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

struct IntEchelon<T> {
    width: usize,
    rows: Vec<Vec<T>>,
    pivot_row: Vec<u32>,
    pivot_col: Vec<usize>,
}

/// Divides out the content and makes the leading entry positive.
fn primitive<T: Coef>(v: &mut [T]) -> Option<()> {
    let mut g = T::zero();
    let mut lead_negative = None;
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if lead_negative.is_none() {
                lead_negative = Some(x.is_negative());
            }
        }
    }
    let Some(neg) = lead_negative else { return Some(()) };
    if g.is_one() && !neg {
        return Some(());
    }
    let g = if neg { g.neg()? } else { g };
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = x.div_exact(&g);
        }
    }
    Some(())
}

/// `v ← (d/g)·v − (a/g)·r` where `a = v[c]`, `d = r[c]`, `g = gcd(a, d)`.
fn eliminate<T: Coef>(v: &mut [T], r: &[T], c: usize) -> Option<()> {
    let a = v[c].clone();
    let d = r[c].clone();
    let g = a.gcd(&d);
    let (a, d) = (a.div_exact(&g), d.div_exact(&g));
    for (x, y) in v.iter_mut().zip(r) {
        if y.is_zero() {
            if !x.is_zero() && !d.is_one() {
                *x = T::mul_sub(&d, x, &T::zero(), &T::zero())?;
            }
        } else {
            *x = T::mul_sub(&d, x, &a, y)?;
        }
    }
    Some(())
}

impl<T: Coef> IntEchelon<T> {
    fn new(width: usize) -> Self {
        IntEchelon { width, rows: Vec::new(), pivot_row: vec![NONE; width], pivot_col: Vec::new() }
    }

    fn reduce(&self, row: &[(usize, i64)]) -> Option<Vec<T>> {
        let mut v = vec![T::zero(); self.width];
        for &(c, x) in row {
            v[c] = v[c].add(&T::from_i64(x))?;
        }
        for &(c, _) in row {
            let r = self.pivot_row[c];
            if r != NONE && !v[c].is_zero() {
                eliminate(&mut v, &self.rows[r as usize], c)?;
                primitive(&mut v)?;
            }
        }
        Some(v)
    }

    /// `Some(grew)` on success, `None` on overflow with nothing committed.
    fn insert(&mut self, row: &[(usize, i64)]) -> Option<bool> {
        let mut v = self.reduce(row)?;
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return Some(false);
        };
        primitive(&mut v)?;
        let mut updated = Vec::new();
        for (k, r) in self.rows.iter().enumerate() {
            if !r[c].is_zero() {
                let mut s = r.clone();
                eliminate(&mut s, &v, c)?;
                primitive(&mut s)?;
                updated.push((k, s));
            }
        }
        for (k, s) in updated {
            self.rows[k] = s;
        }
        self.pivot_row[c] = self.rows.len() as u32;
        self.pivot_col.push(c);
        self.rows.push(v);
        Some(true)
    }
}

/// Rank over ℚ by fraction-free elimination on integer rows; starts with
/// 128-bit entries and moves to arbitrary precision on the first overflow.
pub struct QEchelon {
    inner: QInner,
}

enum QInner {
    Small(IntEchelon<i128>),
    Big(IntEchelon<BigInt>),
}

impl QEchelon {
    pub fn new(width: usize) -> Self {
        QEchelon { inner: QInner::Small(IntEchelon::new(width)) }
    }

    fn promote(&mut self) {
        if let QInner::Small(e) = &self.inner {
            let big = IntEchelon {
                width: e.width,
                rows: e.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                pivot_row: e.pivot_row.clone(),
                pivot_col: e.pivot_col.clone(),
            };
            self.inner = QInner::Big(big);
        }
    }

    pub fn is_promoted(&self) -> bool {
        matches!(self.inner, QInner::Big(_))
    }

    /// Largest absolute entry, for diagnostics.
    pub fn max_entry_bits(&self) -> u64 {
        match &self.inner {
            QInner::Small(e) => e.rows.iter().flatten().map(|x| 128 - x.unsigned_abs().leading_zeros() as u64).max().unwrap_or(0),
            QInner::Big(e) => e.rows.iter().flatten().map(|x| x.bits()).max().unwrap_or(0),
        }
    }
}

impl RankAccumulator for QEchelon {
    fn width(&self) -> usize {
        match &self.inner {
            QInner::Small(e) => e.width,
            QInner::Big(e) => e.width,
        }
    }

    fn rank(&self) -> usize {
        match &self.inner {
            QInner::Small(e) => e.rows.len(),
            QInner::Big(e) => e.rows.len(),
        }
    }

    fn insert(&mut self, row: &[(usize, i64)]) -> bool {
        if let QInner::Small(e) = &mut self.inner {
            if let Some(grew) = e.insert(row) {
                return grew;
            }
            self.promote();
        }
        match &mut self.inner {
            QInner::Big(e) => e.insert(row).expect("arbitrary precision cannot overflow"),
            QInner::Small(_) => unreachable!(),
        }
    }

    fn contains(&self, row: &[(usize, i64)]) -> bool {
        match &self.inner {
            QInner::Small(e) => match e.reduce(row) {
                Some(v) => v.iter().all(|x| *x == 0),
                None => {
                    let big = IntEchelon::<BigInt> {
                        width: e.width,
                        rows: e.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                        pivot_row: e.pivot_row.clone(),
                        pivot_col: e.pivot_col.clone(),
                    };
                    big.reduce(row).unwrap().iter().all(Zero::is_zero)
                }
            },
            QInner::Big(e) => e.reduce(row).unwrap().iter().all(Zero::is_zero),
        }
    }
}

/// Field of coefficients for a rank computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(u32),
}

pub fn accumulator(field: Field, width: usize) -> Box<dyn RankAccumulator> {
    match field {
        Field::Rationals => Box::new(QEchelon::new(width)),
        Field::Prime(2) => Box::new(Gf2Echelon::new(width)),
        Field::Prime(p) => Box::new(FpEchelon::new(width, p)),
    }
}

/// Rank of a list of sparse rows.
pub fn rank_of(field: Field, width: usize, rows: &[Vec<(usize, i64)>]) -> usize {
    let mut acc = accumulator(field, width);
    for r in rows {
        acc.insert(r);
    }
    acc.rank()
}

/// Checked conversion used when feeding big integers into the echelons.
pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Reference rank by dense Gaussian elimination over exact rationals.
    fn dense_rank_q(rows: &[Vec<(usize, i64)>], width: usize) -> usize {
        use num_rational::BigRational;
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                let mut v = vec![BigRational::zero(); width];
                for &(c, x) in r {
                    v[c] += BigRational::from_integer(BigInt::from(x));
                }
                v
            })
            .collect();
        let mut rank = 0;
        for c in 0..width {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[rank][c];
                    let pivot = m[rank].clone();
                    for (a, b) in m[i].iter_mut().zip(&pivot) {
                        *a -= &f * b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn dense_rank_mod(rows: &[Vec<(usize, i64)>], width: usize, p: i64) -> usize {
        let mut m: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                let mut v = vec![0; width];
                for &(c, x) in r {
                    v[c] = (v[c] + x).rem_euclid(p);
                }
                v
            })
            .collect();
        let mut rank = 0;
        for c in 0..width {
            let Some(q) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(rank, q);
            let inv = mod_inverse(m[rank][c] as u64, p as u64) as i64;
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let f = m[i][c] * inv % p;
                    for k in 0..width {
                        m[i][k] = (m[i][k] - f * m[rank][k]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_rows(rng: &mut ChaCha8Rng, n: usize, width: usize, range: i64) -> Vec<Vec<(usize, i64)>> {
        (0..n)
            .map(|_| {
                let nnz = rng.random_range(0..=4);
                (0..nnz).map(|_| (rng.random_range(0..width), rng.random_range(-range..=range))).collect()
            })
            .collect()
    }

    #[test]
    fn ranks_agree_with_dense_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..40 {
            let width = 1 + trial % 17;
            let rows = random_rows(&mut rng, 25, width, 3);
            assert_eq!(rank_of(Field::Rationals, width, &rows), dense_rank_q(&rows, width));
            for p in [2i64, 3, 5, 7] {
                assert_eq!(rank_of(Field::Prime(p as u32), width, &rows), dense_rank_mod(&rows, width, p), "p = {p}");
            }
        }
    }

    #[test]
    fn large_entries_keep_exact_rank() {
        // entries near 2⁴⁰ push intermediate products toward the 128-bit limit
        let width = 6;
        let big = 1i64 << 40;
        let rows: Vec<Vec<(usize, i64)>> = (0..width)
            .map(|i| (0..width).map(|j| (j, if i == j { big } else { (i * 7 + j * 3) as i64 + 1 })).collect())
            .collect();
        let mut acc = QEchelon::new(width);
        for r in &rows {
            acc.insert(r);
        }
        assert_eq!(acc.rank(), dense_rank_q(&rows, width));
    }

    #[test]
    fn span_membership() {
        let mut acc = Gf2Echelon::new(130);
        acc.insert(&[(0, 1), (129, 1)]);
        acc.insert(&[(64, 1), (129, 1)]);
        assert!(acc.contains(&[(0, 1), (64, 1)]));
        assert!(!acc.contains(&[(0, 1)]));
        let mut q = QEchelon::new(3);
        q.insert(&[(0, 2), (1, 4)]);
        assert!(q.contains(&[(0, -1), (1, -2)]));
        assert!(!q.contains(&[(0, 1), (1, 1)]));
        let mut f = FpEchelon::new(3, 3);
        f.insert(&[(0, 1), (2, 2)]);
        assert!(f.contains(&[(0, 2), (2, 1)]));
    }
}
