//! Dense quaternion and real matrices.
//!
//! Element access through `m[(r, c)]` is 0-based like any Rust
//! container. The Hermitian-specific operations ([`HermitianQMatrix::minor`],
//! [`natural_submatrix`]) take 1-based row and column numbers.

use std::fmt;
use std::ops::{Index, IndexMut};

use rand::Rng;

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Dense row-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for d in 0..n {
            m[(d, d)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("rows of length {cols}"),
                found: format!("a row of length {}", bad.len()),
            });
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).map(|k| self[(r, k)] * other[(k, c)]).sum()
        }))
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dims(), other.dims(), "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Dense row-major quaternion matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Quaternion::ONE)
    }

    /// `q E`, the n×n diagonal matrix with `q` on the diagonal.
    pub fn scalar(n: usize, q: Quaternion) -> Self {
        let mut m = Self::zeros(n, n);
        for d in 0..n {
            m[(d, d)] = q;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (d, &v) in values.iter().enumerate() {
            m[(d, d)] = Quaternion::real(v);
        }
        m
    }

    /// An n×1 column.
    pub fn column(entries: Vec<Quaternion>) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("rows of length {cols}"),
                found: format!("a row of length {}", bad.len()),
            });
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Assembles `A0 + A1 i + A2 j + A3 k`.
    pub fn from_components(
        a0: &RealMatrix,
        a1: &RealMatrix,
        a2: &RealMatrix,
        a3: &RealMatrix,
    ) -> Result<Self> {
        let dims = a0.dims();
        for part in [a1, a2, a3] {
            if part.dims() != dims {
                return Err(Error::DimensionMismatch {
                    expected: format!("{}x{}", dims.0, dims.1),
                    found: format!("{}x{}", part.nrows(), part.ncols()),
                });
            }
        }
        Ok(Self::from_fn(dims.0, dims.1, |r, c| {
            Quaternion::new(a0[(r, c)], a1[(r, c)], a2[(r, c)], a3[(r, c)])
        }))
    }

    /// Splits into the real coefficient matrices `[A0, A1, A2, A3]`.
    pub fn components(&self) -> [RealMatrix; 4] {
        let part = |k: usize| {
            RealMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_array()[k])
        };
        [part(0), part(1), part(2), part(3)]
    }

    /// Entries uniform in `[-1, 1)` componentwise.
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(rows, cols, |_, _| random_quaternion(rng))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Quaternion>> {
        self.data.chunks(self.cols).map(<[Quaternion]>::to_vec).collect()
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Copies the rows and columns at the given 0-based positions, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])])
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Non-commutative product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).map(|k| self[(r, k)] * other[(k, c)]).sum()
        }))
    }

    /// Every entry multiplied on the right by `q`.
    pub fn scale_right(&self, q: Quaternion) -> Self {
        self.map(|e| e * q)
    }

    /// Every entry multiplied on the left by `q`.
    pub fn scale_left(&self, q: Quaternion) -> Self {
        self.map(|e| q * e)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// `λE - A` for square `A`.
    pub fn shifted_negation(&self, lambda: f64) -> Result<Self> {
        let n = self.require_square()?;
        QMatrix::scalar(n, Quaternion::real(lambda)).try_sub(self)
    }

    /// Maximum over rows of the sum of entry moduli.
    pub fn inf_norm(&self) -> f64 {
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().map(|q| q.modulus()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(|q| q.modulus()).fold(0.0, f64::max)
    }

    /// Euclidean norm of all entries (the 2-norm for a column).
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt()
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dims(), other.dims(), "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// The real 4n×4m block lift
    ///
    /// ```text
    /// [  A0  A1  A2  A3 ]
    /// [ -A1  A0 -A3  A2 ]
    /// [ -A2  A3  A0 -A1 ]
    /// [ -A3 -A2  A1  A0 ]
    /// ```
    ///
    /// It is additive and multiplicative: `lift(AB) = lift(A) lift(B)`.
    pub fn real_lift(&self) -> RealMatrix {
        let (n, m) = self.dims();
        // (block row, block col) -> (component, sign)
        const PATTERN: [[(usize, f64); 4]; 4] = [
            [(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
            [(1, -1.0), (0, 1.0), (3, -1.0), (2, 1.0)],
            [(2, -1.0), (3, 1.0), (0, 1.0), (1, -1.0)],
            [(3, -1.0), (2, -1.0), (1, 1.0), (0, 1.0)],
        ];
        RealMatrix::from_fn(4 * n, 4 * m, |r, c| {
            let (comp, sign) = PATTERN[r / n][c / m];
            sign * self[(r % n, c % m)].to_array()[comp]
        })
    }

    /// Checks `A = A*` within `1e-12 (1 + max |a_pq|)`.
    pub fn validate_hermitian(self) -> Result<HermitianQMatrix> {
        let n = self.require_square()?;
        let tolerance = 1e-12 * (1.0 + self.max_modulus());
        let mut worst = (0.0, 0, 0);
        for r in 0..n {
            for c in r..n {
                let dev = (self[(r, c)] - self[(c, r)].conj()).modulus();
                if dev > worst.0 {
                    worst = (dev, r, c);
                }
            }
        }
        if worst.0 > tolerance {
            return Err(Error::NotHermitian {
                row: worst.1 + 1,
                col: worst.2 + 1,
                deviation: worst.0,
                tolerance,
            });
        }
        Ok(HermitianQMatrix(self))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.cols) {
            let cells: Vec<String> = row
                .iter()
                .map(|q| match f.precision() {
                    Some(p) => format!("{q:.p$}"),
                    None => q.to_string(),
                })
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// A square quaternion matrix known to satisfy `A = A*`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianQMatrix(QMatrix);

impl HermitianQMatrix {
    /// Wraps without validation; lets tests feed malformed input.
    #[cfg(test)]
    pub(crate) fn from_trusted(m: QMatrix) -> Self {
        debug_assert!(m.is_square());
        Self(m)
    }

    /// Real diagonal uniform in `[-1, 1)`, off-diagonal entries uniform in
    /// `[-1, 1)` componentwise and mirrored by conjugation.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for r in 0..n {
            m[(r, r)] = Quaternion::real(rng.random_range(-1.0..1.0));
            for c in r + 1..n {
                let q = random_quaternion(rng);
                m[(r, c)] = q;
                m[(c, r)] = q.conj();
            }
        }
        Self(m)
    }

    pub fn real_diagonal(values: &[f64]) -> Self {
        Self(QMatrix::diagonal(values))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_qmatrix(&self) -> &QMatrix {
        &self.0
    }

    pub fn into_inner(self) -> QMatrix {
        self.0
    }

    /// `λE - A`, Hermitian again because `λ` is real.
    pub fn shifted_negation(&self, lambda: f64) -> HermitianQMatrix {
        Self(self.0.map(|q| -q).try_add(&QMatrix::scalar(self.dim(), lambda.into())).unwrap())
    }

    /// `A - λE`.
    pub fn shifted(&self, lambda: f64) -> HermitianQMatrix {
        Self(self.0.try_sub(&QMatrix::scalar(self.dim(), lambda.into())).unwrap())
    }

    /// `M_j`: delete row and column `j` (1-based), keeping relative order.
    pub fn minor(&self, j: usize) -> Result<HermitianQMatrix> {
        let n = self.dim();
        if n < 2 {
            return Err(Error::DimensionMismatch {
                expected: "dimension >= 2".into(),
                found: format!("dimension {n}"),
            });
        }
        check_index(j, n)?;
        let keep: Vec<usize> = (0..n).filter(|&k| k != j - 1).collect();
        Ok(Self(self.0.select(&keep, &keep)))
    }
}

impl AsRef<QMatrix> for HermitianQMatrix {
    fn as_ref(&self) -> &QMatrix {
        &self.0
    }
}

impl TryFrom<QMatrix> for HermitianQMatrix {
    type Error = Error;
    fn try_from(m: QMatrix) -> Result<Self> {
        m.validate_hermitian()
    }
}

pub(crate) fn check_index(index: usize, bound: usize) -> Result<()> {
    if index == 0 || index > bound {
        Err(Error::IndexOutOfRange { index, bound })
    } else {
        Ok(())
    }
}

/// Row and column arrangement used when forming the natural submatrix
/// `A_ij` (row `i` and column `j` deleted).
///
/// The row expansion of a submatrix follows permutation chains that
/// start at its first row, so the arrangement decides which factor
/// products appear in the quaternion adjugate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubmatrixConvention {
    /// For `i != j`: row `j` moves to the top and column `i` to the
    /// front; the remaining rows and columns, which share the labels
    /// `{1..n} \ {i, j}`, stay in ascending order. Every row-expansion
    /// term then opens with the chain `a_{j·} … a_{·i}`.
    /// This is the arrangement under which `qadj(H) H = det(H) E`.
    #[default]
    ChainLeading,
    /// Plain deletion, original order.
    Deletion,
    /// Row `j` moved to the top, columns left in original order.
    RowCycle,
}

impl SubmatrixConvention {
    /// 0-based `(rows, cols)` selection for `A_ij` with 1-based `i`, `j`.
    pub fn arrangement(self, n: usize, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        let (i0, j0) = (i - 1, j - 1);
        let mut rows: Vec<usize> = (0..n).filter(|&r| r != i0).collect();
        let mut cols: Vec<usize> = (0..n).filter(|&c| c != j0).collect();
        if i0 == j0 {
            return (rows, cols);
        }
        match self {
            SubmatrixConvention::Deletion => {}
            SubmatrixConvention::ChainLeading => {
                move_to_front(&mut rows, j0);
                move_to_front(&mut cols, i0);
            }
            SubmatrixConvention::RowCycle => move_to_front(&mut rows, j0),
        }
        (rows, cols)
    }
}

fn move_to_front(v: &mut Vec<usize>, value: usize) {
    let pos = v.iter().position(|&x| x == value).expect("label present");
    let x = v.remove(pos);
    v.insert(0, x);
}

/// The natural submatrix `A_ij` under the default convention.
pub fn natural_submatrix(a: &QMatrix, i: usize, j: usize) -> Result<QMatrix> {
    natural_submatrix_with(a, i, j, SubmatrixConvention::default())
}

pub fn natural_submatrix_with(
    a: &QMatrix,
    i: usize,
    j: usize,
    convention: SubmatrixConvention,
) -> Result<QMatrix> {
    let n = a.require_square()?;
    if n < 2 {
        return Err(Error::DimensionMismatch {
            expected: "dimension >= 2".into(),
            found: format!("dimension {n}"),
        });
    }
    check_index(i, n)?;
    check_index(j, n)?;
    let (rows, cols) = convention.arrangement(n, i, j);
    Ok(a.select(&rows, &cols))
}
