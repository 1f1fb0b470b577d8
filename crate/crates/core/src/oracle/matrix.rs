//! Dense matrices over a [`FieldSpec`]. Zero rows or columns are allowed.

use super::field::{Elem, FieldSpec};
use super::OracleError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl MatrixFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFq { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        MatrixFq { rows: rows.len(), cols, data: rows.concat() }
    }

    /// Row-major entries.
    pub fn from_data(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        MatrixFq { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn check_shape(&self, other: &Self) -> Result<(), OracleError> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(OracleError::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)))
        }
    }

    pub fn add(&self, f: &FieldSpec, other: &Self) -> Result<Self, OracleError> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(MatrixFq { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, f: &FieldSpec, other: &Self) -> Result<Self, OracleError> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(MatrixFq { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, f: &FieldSpec, c: Elem) -> Self {
        MatrixFq { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, f: &FieldSpec, other: &Self) -> Result<Self, OracleError> {
        if self.cols != other.rows {
            return Err(OracleError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `true` iff `M^size = 0`; the index of a nilpotent matrix never exceeds its size.
    pub fn is_nilpotent(&self, f: &FieldSpec) -> Result<bool, OracleError> {
        if !self.is_square() {
            return Err(OracleError::Shape(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let mut p = self.clone();
        let mut e = 1;
        while e < self.rows {
            if p.is_zero() {
                return Ok(true);
            }
            p = p.mul(f, &p)?;
            e *= 2;
        }
        Ok(p.is_zero())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, f: &FieldSpec) -> (MatrixFq, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        for col in 0..m.cols {
            let rank = pivots.len();
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else { continue };
            m.swap_rows(rank, pivot);
            let inv = f.inv(m.get(rank, col)).unwrap();
            for j in 0..m.cols {
                m.set(rank, j, f.mul(m.get(rank, j), inv));
            }
            for r in 0..m.rows {
                let c = m.get(r, col);
                if r != rank && c != 0 {
                    for j in 0..m.cols {
                        let v = f.sub(m.get(r, j), f.mul(c, m.get(rank, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        self.rref(f).1.len()
    }

    /// A basis of `{x : M x = 0}`, one vector per free column of the echelon form.
    pub fn kernel_basis(&self, f: &FieldSpec) -> Vec<Vec<Elem>> {
        let (m, pivots) = self.rref(f);
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; m.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn block_diag(blocks: &[MatrixFq]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn paste(&mut self, r0: usize, c0: usize, b: &MatrixFq) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// Inverse of a non-singular square matrix.
    pub fn inverse(&self, f: &FieldSpec) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.paste(0, 0, self);
        aug.paste(0, n, &Self::identity(n));
        let (r, pivots) = aug.rref(f);
        if !pivots.iter().copied().take(n).eq(0..n) {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::with_size(2).unwrap()
    }

    #[test]
    fn nilpotent_examples() {
        let f = f2();
        assert!(MatrixFq::from_rows(&[vec![0, 1], vec![0, 0]]).is_nilpotent(&f).unwrap());
        assert!(!MatrixFq::identity(1).is_nilpotent(&f).unwrap());
        assert!(MatrixFq::zeros(0, 0).is_nilpotent(&f).unwrap());
        assert!(MatrixFq::zeros(2, 3).is_nilpotent(&f).is_err());
        // strictly upper triangular 5x5 needs the full index
        let mut n = MatrixFq::zeros(5, 5);
        for i in 0..4 {
            n.set(i, i + 1, 1);
        }
        assert!(n.is_nilpotent(&f).unwrap());
    }

    #[test]
    fn nilpotent_count_matches_closed_form() {
        // q^{n² - n} nilpotent n × n matrices
        for q in [2u32, 3] {
            let f = FieldSpec::with_size(q).unwrap();
            for n in 1..=3usize {
                let total = (q as usize).pow((n * n) as u32);
                let count = (0..total)
                    .filter(|&code| {
                        let data = (0..n * n).map(|i| ((code / (q as usize).pow(i as u32)) % q as usize) as Elem).collect();
                        MatrixFq::from_data(n, n, data).is_nilpotent(&f).unwrap()
                    })
                    .count();
                assert_eq!(count, (q as usize).pow((n * n - n) as u32), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn empty_products() {
        let f = f2();
        let a = MatrixFq::zeros(2, 0);
        let b = MatrixFq::zeros(0, 3);
        assert_eq!(a.mul(&f, &b).unwrap(), MatrixFq::zeros(2, 3));
        assert_eq!(b.mul(&f, &MatrixFq::zeros(3, 0)).unwrap(), MatrixFq::zeros(0, 0));
        assert!(a.mul(&f, &a).is_err());
    }

    #[test]
    fn rank_kernel_inverse() {
        let f = FieldSpec::with_size(3).unwrap();
        let m = MatrixFq::from_rows(&[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 0]]);
        // rows are dependent mod 3: (2,1,0) = 2·(1,2,0)
        assert_eq!(m.rank(&f), 1);
        let ker = m.kernel_basis(&f);
        assert_eq!(ker.len(), 2);
        for v in ker {
            let col = MatrixFq::from_data(3, 1, v);
            assert!(m.mul(&f, &col).unwrap().is_zero());
        }
        let g = MatrixFq::from_rows(&[vec![1, 1], vec![0, 2]]);
        let gi = g.inverse(&f).unwrap();
        assert_eq!(g.mul(&f, &gi).unwrap(), MatrixFq::identity(2));
        assert!(m.inverse(&f).is_none());
    }
}
