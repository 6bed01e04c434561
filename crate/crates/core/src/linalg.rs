//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Determinants use Bareiss fraction-free elimination, so every intermediate
//! value is itself a minor of the input and stays an exact integer. The Smith
//! normal form carries its unimodular witnesses `U`, `V` with `U·M·V = S`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
///
/// Zero-sized shapes are allowed so that the trivial cone `{0}` has a
/// (0×0) ray matrix with determinant 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadShape {
                rows,
                cols,
                entries: entries.len(),
            });
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from equal-length rows of machine integers.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M·x`.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// The matrix with row `skip_row` and column `skip_col` removed.
    pub fn minor(&self, skip_row: usize, skip_col: usize) -> IntegerMatrix {
        let mut entries = Vec::with_capacity(self.rows.saturating_sub(1) * self.cols.saturating_sub(1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                entries.push(self[(i, j)].clone());
            }
        }
        IntegerMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        bareiss_echelon(self.clone()).0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -core::mem::take(&mut self[(r, j)]);
            self[(r, j)] = v;
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Fraction-free row echelon form. Returns the rank and, for a square
/// input, the determinant (zero when singular).
fn bareiss_echelon(mut m: IntegerMatrix) -> (usize, BigInt) {
    let (rows, cols) = (m.rows, m.cols);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap_rows(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[(rank, col)] * &m[(r, c)] - &m[(r, col)] * &m[(rank, c)]) / &prev;
                m[(r, c)] = v;
            }
            m[(r, col)] = BigInt::zero();
        }
        prev = m[(rank, col)].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows {
        if rows == 0 {
            BigInt::one()
        } else {
            sign * &m[(rows - 1, cols - 1)]
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

/// Exact determinant. The empty matrix has determinant 1.
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(bareiss_echelon(m.clone()).1)
}

/// Classical adjugate, `M·adj(M) = det(M)·I`.
pub fn adjugate(m: &IntegerMatrix) -> Result<IntegerMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 1 {
        return Ok(IntegerMatrix::identity(1));
    }
    let mut adj = IntegerMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let cofactor = determinant(&m.minor(j, i))?;
            adj[(i, j)] = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
        }
    }
    Ok(adj)
}

/// `U·M·V = S` with `U`, `V` unimodular and `S` diagonal in divisibility
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Diagonal of `S`: nonzero factors first, each dividing the next,
    /// followed by any zeros.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().take_while(|s| !s.is_zero()).count()
    }
}

/// Smith normal form with transform witnesses.
///
/// Pivot: the nonzero entry of smallest absolute value in the active block,
/// ties broken by lowest `(row, col)`. Diagonal entries come out
/// nonnegative. The output is a deterministic function of the input.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        while let Some((pr, pc)) = smallest_pivot(&a, t) {
            a.swap_rows(t, pr);
            u.swap_rows(t, pr);
            a.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let pivot = a[(t, t)].clone();
            let mut dirty = false;
            for r in t + 1..rows {
                if a[(r, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(r, t)] / &pivot);
                a.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                dirty |= !a[(r, t)].is_zero();
            }
            for c in t + 1..cols {
                if a[(t, c)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, c)] / &pivot);
                a.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                dirty |= !a[(t, c)].is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole remaining block
            let offender = (t + 1..rows).find(|&r| {
                (t + 1..cols).any(|c| !a[(r, c)].is_multiple_of(&pivot))
            });
            match offender {
                Some(r) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let invariant_factors = (0..rows.min(cols)).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition {
        u,
        s: a,
        v,
        invariant_factors,
    }
}

fn smallest_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..a.rows {
        for c in t..a.cols {
            let x = &a[(r, c)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((br, bc)) if a[(br, bc)].abs() <= x.abs() => {}
                _ => best = Some((r, c)),
            }
        }
    }
    best
}
