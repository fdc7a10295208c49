//! Exact dense linear algebra: fraction-free elimination, linear solving,
//! rank, and characteristic polynomials.

use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut t = T::zero();
        for i in 0..self.rows {
            t = t + self.get(i, i).clone();
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Fraction-free row echelon reduction (Bareiss): each update is the
    /// two-by-two determinant divided by the previous pivot, which is an
    /// exact division. Pivots are chosen as the first nonzero entry of each
    /// column, so the reduction is deterministic. Returns the pivot columns.
    pub fn row_echelon_bareiss(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let head = self.get(i, c).clone();
                for j in c + 1..self.cols {
                    let v = (pivot.clone() * self.get(i, j).clone()
                        - head.clone() * self.get(r, j).clone())
                        / prev.clone();
                    self.set(i, j, v);
                }
                self.set(i, c, T::zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_echelon_bareiss().len()
    }

    /// Characteristic polynomial `det(tI - A)`, monic, exact.
    ///
    /// Samuelson-Berkowitz recurrence: entirely division-free, so the
    /// intermediate values are sums of products of matrix entries (cofactor
    /// growth) and dense rational inputs cannot trigger the fraction blowup
    /// a pivoting reduction would produce.
    pub fn charpoly(&self) -> UniPoly<T> {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        // det(tI - leading block), highest degree first, grown one row at a time
        let mut c: Vec<T> = vec![T::one()];
        for r in 0..n {
            // q = [1, -A[r][r], -(R C), -(R M C), -(R M^2 C), ...] where M is
            // the leading r-by-r block, R the row strip and C the column strip
            let mut q = vec![T::one(), -self.get(r, r).clone()];
            let mut v: Vec<T> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for k in 0..r {
                let mut dot = T::zero();
                for j in 0..r {
                    dot = dot + self.get(r, j).clone() * v[j].clone();
                }
                q.push(-dot);
                if k + 1 < r {
                    let mut mv = vec![T::zero(); r];
                    for (i, slot) in mv.iter_mut().enumerate() {
                        let mut acc = T::zero();
                        for j in 0..r {
                            acc = acc + self.get(i, j).clone() * v[j].clone();
                        }
                        *slot = acc;
                    }
                    v = mv;
                }
            }
            // next charpoly = conv(q, c) truncated to degree r+1
            let mut next = vec![T::zero(); r + 2];
            for (i, qi) in q.iter().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i + j < r + 2 {
                        next[i + j] = next[i + j].clone() + qi.clone() * cj.clone();
                    }
                }
            }
            c = next;
        }
        c.reverse();
        UniPoly::new(c)
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, PartialEq, Debug)]
pub enum LinearSolution<T: Scalar> {
    /// A solution, together with the dimension of the solution space
    /// (zero means the solution is unique). When the system is
    /// underdetermined, free variables are set to zero.
    Solution { values: Vec<T>, nullity: usize },
    /// The system is inconsistent.
    Inconsistent,
}

/// Solves `A x = b` exactly by fraction-free elimination on the augmented
/// matrix. Panics if the dimensions disagree.
pub fn solve_linear<T: Scalar>(a: &Matrix<T>, b: &[T]) -> LinearSolution<T> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let unknowns = a.cols();
    let mut aug = Matrix::zero(a.rows(), unknowns + 1);
    for r in 0..a.rows() {
        for c in 0..unknowns {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, unknowns, b[r].clone());
    }
    let pivots = aug.row_echelon_bareiss();
    if pivots.last() == Some(&unknowns) {
        return LinearSolution::Inconsistent;
    }
    let mut values = vec![T::zero(); unknowns];
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let mut rhs = aug.get(r, unknowns).clone();
        for j in pc + 1..unknowns {
            if !aug.get(r, j).is_zero() {
                rhs = rhs - aug.get(r, j).clone() * values[j].clone();
            }
        }
        values[pc] = rhs / aug.get(r, pc).clone();
    }
    LinearSolution::Solution { values, nullity: unknowns - pivots.len() }
}

/// A square matrix asserted symmetric on construction.
#[derive(Clone, PartialEq, Debug)]
pub struct SymmetricMatrix<T: Scalar>(Matrix<T>);

impl<T: Scalar> SymmetricMatrix<T> {
    pub fn new(m: Matrix<T>) -> Self {
        assert_eq!(m.rows(), m.cols(), "symmetric matrix must be square");
        for i in 0..m.rows() {
            for j in 0..i {
                assert!(m.get(i, j) == m.get(j, i), "matrix is not symmetric");
            }
        }
        SymmetricMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        self.0.get(r, c)
    }

    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.0
    }
}
