//! Dense matrices over F_p and the handful of elimination routines the
//! homology computations need.

use crate::algebra::Field;

/// Row-major dense matrix; `rows × cols`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1 % field.p());
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<u32>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % field.p());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(self.data[k], v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Sub-matrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_to(i, j, f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1 % f.p();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, in echelon form.
    pub fn image_basis(&self) -> Vec<Vec<u32>> {
        let (m, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
    }
}

/// A subspace kept in reduced echelon form, so that vectors can be reduced
/// to a canonical representative of their coset.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    dim: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn spanned_by(field: Field, dim: usize, vectors: &[Vec<u32>]) -> Subspace {
        let (basis, pivots) = if vectors.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let (m, pivots) = Matrix::from_rows(field, vectors).rref();
            (
                (0..pivots.len()).map(|i| m.row(i).to_vec()).collect(),
                pivots,
            )
        };
        Subspace {
            field,
            dim,
            basis,
            pivots,
        }
    }

    pub fn column_space(m: &Matrix) -> Subspace {
        Subspace::spanned_by(m.field(), m.rows(), &m.transpose().to_rows())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Canonical coset representative: zero in every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(b) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        let m = Matrix::from_rows(f(2), &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let m3 = Matrix::from_rows(f(3), &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m3.rank(), 3);
        assert_eq!(Matrix::zeros(f(5), 3, 4).rank(), 0);
        assert_eq!(Matrix::identity(f(5), 4).rank(), 4);
    }

    #[test]
    fn kernel_is_killed() {
        let m = Matrix::from_rows(f(3), &[vec![1, 2, 0, 1], vec![2, 1, 0, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 4 - m.rank());
        for v in &k {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn transpose_and_mul() {
        let a = Matrix::from_rows(f(5), &[vec![1, 2], vec![3, 4], vec![0, 1]]);
        assert_eq!(a.transpose().transpose(), a);
        let id = Matrix::identity(f(5), 2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn subspace_reduction_is_canonical() {
        let s = Subspace::spanned_by(f(3), 3, &[vec![1, 1, 0], vec![0, 2, 2]]);
        assert_eq!(s.dim(), 2);
        let v = vec![2, 0, 1];
        let w: Vec<u32> = v
            .iter()
            .zip([1, 1, 0])
            .map(|(a, b)| (a + 2 * b) % 3)
            .collect();
        assert_eq!(s.reduce(&v), s.reduce(&w));
        assert!(s.contains(&[1, 0, 2]));
    }
}
