use std::fmt;

use super::rational::Rational;
use crate::error::{FrobError, Result};

/// Dense row-major matrix over the rationals.
///
/// A morphism `Mat(m) -> Mat(n)` is an `n x m` matrix acting on column
/// vectors, so `f.mat_mul(&g)` is the composite `f ∘ g`. Matrices with zero
/// rows or columns are ordinary values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(FrobError::EntryCount {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::ONE;
        }
        m
    }

    /// The `rows x cols` matrix unit with a single 1 at `(i, j)`.
    pub fn elementary(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        assert!(i < rows && j < cols, "elementary index out of range");
        let mut m = Self::zeros(rows, cols);
        m.data[i * cols + j] = Rational::ONE;
        m
    }

    pub fn scalar(q: Rational) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![q],
        }
    }

    /// Builds a matrix from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(FrobError::Shape(format!(
                "ragged rows: expected {cols} entries, found {}",
                bad.len()
            )));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer fixtures.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
        .expect("integer fixture rows must be rectangular")
    }

    pub fn column(entries: Vec<Rational>) -> Self {
        let n = entries.len();
        Self {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn row_vector(entries: Vec<Rational>) -> Self {
        let n = entries.len();
        Self {
            rows: 1,
            cols: n,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Composite `self ∘ rhs`. Zero entries on either side are skipped, which
    /// keeps the permutation-heavy matrices of this crate cheap.
    pub fn mat_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(FrobError::DimensionMismatch {
                op: "mat_mul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.row(k).iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    out_row[j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self` indexes the outer blocks.
    pub fn kron(&self, rhs: &RatMatrix) -> RatMatrix {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = RatMatrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.data[(i * rhs.rows + k) * c + j * rhs.cols + l] = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * q).collect(),
        }
    }

    pub fn add(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &RatMatrix,
        op: &'static str,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RatMatrix> {
        if self.shape() != rhs.shape() {
            return Err(FrobError::DimensionMismatch {
                op,
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Places `blocks` side by side. All blocks must share a row count; an
    /// empty list yields a `rows x 0` matrix.
    pub fn hstack(rows: usize, blocks: &[RatMatrix]) -> Result<RatMatrix> {
        if let Some(b) = blocks.iter().find(|b| b.rows != rows) {
            return Err(FrobError::Shape(format!(
                "hstack: block has {} rows, expected {rows}",
                b.rows
            )));
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = RatMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.data[i * cols + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// First `(row, col)` where two equally shaped matrices disagree.
    pub fn first_difference(&self, other: &RatMatrix) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.cols, p % self.cols))
    }

    /// Every `rows x cols` matrix unit, in row-major order of the 1.
    pub fn elementary_basis(rows: usize, cols: usize) -> impl Iterator<Item = RatMatrix> {
        (0..rows * cols).map(move |p| RatMatrix::elementary(rows, cols, p / cols, p % cols))
    }
}

/// Composite `f ∘ g`.
pub fn mat_mul(f: &RatMatrix, g: &RatMatrix) -> Result<RatMatrix> {
    f.mat_mul(g)
}

pub fn kron(f: &RatMatrix, g: &RatMatrix) -> RatMatrix {
    f.kron(g)
}

/// Kronecker product of a list, left to right; the empty product is `[[1]]`.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a RatMatrix>) -> RatMatrix {
    factors
        .into_iter()
        .fold(RatMatrix::identity(1), |acc, f| acc.kron(f))
}

/// The swap `σ_{m,n}: ℚ^m ⊗ ℚ^n → ℚ^n ⊗ ℚ^m`, `x ⊗ y ↦ y ⊗ x`.
///
/// `e_i ⊗ e_j` sits at index `i*n + j` in the source and `e_j ⊗ e_i` at
/// `j*m + i` in the target.
pub fn commutation_matrix(m: usize, n: usize) -> RatMatrix {
    let mut out = RatMatrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            out.set(j * m + i, i * n + j, Rational::ONE);
        }
    }
    out
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                write!(f, " {:?}", self.get(i, j))?;
            }
        }
        write!(f, " ]")
    }
}

/// Renders in the spec-file literal syntax: `[1 0; 0 1/2]`.
impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(Rational::to_compact_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Nested rows of `"p/q"` strings.
impl serde::Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}
