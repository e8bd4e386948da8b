use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}×{cols} matrix", data.len())));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r: Vec<Vec<BigRational>> = rows.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows(&r).expect("rectangular integer matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn scalar(n: usize, x: BigRational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigRational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, o: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &RatMatrix) -> Result<RatMatrix> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch("difference of matrices of different shapes".into()));
        }
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() })
    }

    pub fn neg(&self) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Result<RatMatrix> {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            for k in 0..m.cols {
                m.data.swap(r * m.cols + k, p * m.cols + k);
            }
            let inv = m.get(r, c).recip();
            for k in 0..m.cols {
                let v = m.get(r, k) * &inv;
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for k in 0..m.cols {
                        let v = m.get(i, k) - &f * m.get(r, k);
                        m.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(BigRational::zero()) };
            if p != c {
                for k in 0..n {
                    m.data.swap(c * n + k, p * n + k);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if !m.get(i, c).is_zero() {
                    let f = m.get(i, c) / &pivot;
                    for k in c..n {
                        let v = m.get(i, k) - &f * m.get(c, k);
                        m.set(i, k, v);
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Dimension of the span of a set of vectors.
pub fn span_dim(vectors: &[Vec<BigRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vectors).map(|m| m.rank()).unwrap_or(0)
}

/// Basis of the intersection of `ker(M_k)` over all given square matrices.
pub fn common_kernel(dim: usize, matrices: &[RatMatrix]) -> Vec<Vec<BigRational>> {
    if matrices.is_empty() {
        return RatMatrix::identity(dim).to_rows();
    }
    let stacked: Vec<Vec<BigRational>> = matrices.iter().flat_map(|m| m.to_rows()).collect();
    RatMatrix::from_rows(&stacked).map(|m| m.kernel()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let m = RatMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_and_powers() {
        let s = RatMatrix::from_i64(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(s.determinant().unwrap(), rat(1));
        assert_eq!(s.pow(4).unwrap(), RatMatrix::identity(2));
        assert_eq!(s.pow(2).unwrap(), RatMatrix::identity(2).neg());
        let m = RatMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant().unwrap(), rat(18));
    }

    #[test]
    fn common_kernel_of_two_projections() {
        let a = RatMatrix::from_i64(&[vec![1, 0], vec![0, 0]]);
        let b = RatMatrix::from_i64(&[vec![0, 0], vec![0, 1]]);
        assert_eq!(common_kernel(2, std::slice::from_ref(&a)).len(), 1);
        assert!(common_kernel(2, &[a, b]).is_empty());
        assert_eq!(common_kernel(3, &[]).len(), 3);
    }
}
