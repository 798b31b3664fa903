//! Right eigenvalues and eigenvectors of quaternion Hermitian matrices.
//!
//! The spectrum comes from the real lift: every right eigenvalue of an
//! n×n Hermitian `A` appears exactly four times among the eigenvalues of
//! the symmetric 4n×4n lift. Eigenvector moduli then follow from
//! eigenvalues alone,
//!
//! ```text
//! |v_ij|² Π_{k≠i} (λ_i(A) - λ_k(A)) = Π_k (λ_i(A) - λ_k(M_j)),
//! ```
//!
//! and full eigenvectors from the rank-one adjugate
//! `qadj(λ_i E - A) = Π_{k≠i} (λ_i - λ_k) v_i v_i*`.
//!
//! Eigenvalue indices are 1-based into the ascending spectrum.

mod jacobi;

pub use jacobi::{symmetric_eig, SymmetricEigen, MAX_SWEEPS};

use crate::error::{Error, Result};
use crate::qdet::qadj;
use crate::qmatrix::{check_index, HermitianQMatrix, QMatrix};
use crate::quat::Quaternion;

/// Relative tolerances for the eigen routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Quadruple spread allowed in the lifted spectrum, relative to
    /// `1 + ‖lift‖∞`.
    pub grouping: f64,
    /// Minimum eigenvalue gap, relative to `1 + spectral range`, for an
    /// eigenvalue to count as simple.
    pub simple: f64,
    /// Rounding slack before a squared modulus outside `[0, 1]` is
    /// reported as a violation.
    pub clamp: f64,
    /// Adjugate diagonal entries `Q_mm / c` at or below this cannot pivot.
    pub pivot: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            grouping: 1e-7,
            simple: 1e-6,
            clamp: 1e-9,
            pivot: 1e-12,
        }
    }
}

impl Tolerances {
    /// Defaults scaled by `base / 1e-8`, so `scaled(1e-8)` is the default.
    pub fn scaled(base: f64) -> Self {
        let f = base / 1e-8;
        let d = Self::default();
        Self {
            grouping: d.grouping * f,
            simple: d.simple * f,
            clamp: d.clamp * f,
            pivot: d.pivot,
        }
    }
}

/// Ascending right eigenvalues of a Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Absolute spread tolerance the quadruples were checked against.
    pub grouping_tol: f64,
    /// Largest spread observed inside any quadruple.
    pub max_spread: f64,
    pub source_dim: usize,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-based access.
    pub fn value(&self, i: usize) -> Result<f64> {
        check_index(i, self.len())?;
        Ok(self.values[i - 1])
    }

    pub fn range(&self) -> f64 {
        match (self.values.first(), self.values.last()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }

    /// Distance from `λ_i` to the nearest other eigenvalue (infinite for n = 1).
    pub fn gap(&self, i: usize) -> Result<f64> {
        let li = self.value(i)?;
        Ok(self
            .values
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i - 1)
            .map(|(_, &l)| (li - l).abs())
            .fold(f64::INFINITY, f64::min))
    }

    pub fn simple_tol(&self, tol: &Tolerances) -> f64 {
        tol.simple * (1.0 + self.range())
    }

    pub fn require_simple(&self, i: usize, tol: &Tolerances) -> Result<()> {
        let gap = self.gap(i)?;
        let tolerance = self.simple_tol(tol);
        if gap <= tolerance {
            return Err(Error::DegenerateEigenvalue {
                index: i,
                gap,
                tolerance,
            });
        }
        Ok(())
    }

    /// `Π_{k≠i} (λ_i - λ_k)`.
    pub fn gap_product(&self, i: usize) -> Result<f64> {
        let li = self.value(i)?;
        Ok(self
            .values
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i - 1)
            .map(|(_, &l)| li - l)
            .product())
    }

    /// `Π_k (λ - μ_k)` over this spectrum.
    pub fn characteristic_at(&self, lambda: f64) -> f64 {
        self.values.iter().map(|&m| lambda - m).product()
    }
}

/// A unit right eigenvector with its diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub lambda: f64,
    /// n×1 column.
    pub vector: QMatrix,
    /// 1-based index of the component fixed real and non-negative.
    pub pivot: usize,
    /// `‖A v - v λ‖₂`.
    pub residual: f64,
    /// `|‖v‖₂ - 1|`.
    pub norm_dev: f64,
}

impl EigenPair {
    pub fn new(a: &QMatrix, lambda: f64, vector: QMatrix, pivot: usize) -> Result<Self> {
        let av = a.matmul(&vector)?;
        let residual = av.try_sub(&vector.scale_right(lambda.into()))?.frobenius_norm();
        let norm_dev = (vector.frobenius_norm() - 1.0).abs();
        Ok(Self {
            lambda,
            vector,
            pivot,
            residual,
            norm_dev,
        })
    }

    /// `|v_j|²` for 1-based `j`.
    pub fn modulus_sq(&self, j: usize) -> f64 {
        self.vector[(j - 1, 0)].norm_sq()
    }
}

/// Both sides of the eigenvector-eigenvalue identity for one `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EEIReport {
    pub i: usize,
    pub j: usize,
    /// `|v_ij|² Π_{k≠i} (λ_i(A) - λ_k(A))`
    pub lhs: f64,
    /// `Π_k (λ_i(A) - λ_k(M_j))`
    pub rhs: f64,
    pub residual: f64,
}

/// Right eigenvalues with the default tolerances.
pub fn right_eigenvalues(a: &HermitianQMatrix) -> Result<Spectrum> {
    right_eigenvalues_with(a, &Tolerances::default())
}

/// Diagonalizes the real lift and folds its sorted spectrum into runs of
/// four, refusing runs whose spread exceeds the grouping tolerance.
pub fn right_eigenvalues_with(a: &HermitianQMatrix, tol: &Tolerances) -> Result<Spectrum> {
    let lift = a.as_qmatrix().real_lift();
    let eig = symmetric_eig(&lift)?;
    let grouping_tol = tol.grouping * (1.0 + lift.inf_norm());
    let mut values = Vec::with_capacity(a.dim());
    let mut max_spread: f64 = 0.0;
    for (g, quad) in eig.values.chunks(4).enumerate() {
        let spread = quad[3] - quad[0];
        if spread > grouping_tol {
            return Err(Error::GroupingFailure {
                group: g + 1,
                spread,
                tolerance: grouping_tol,
            });
        }
        max_spread = max_spread.max(spread);
        values.push(quad.iter().sum::<f64>() / 4.0);
    }
    Ok(Spectrum {
        values,
        grouping_tol,
        max_spread,
        source_dim: a.dim(),
    })
}

/// Eigen computations for one Hermitian matrix, sharing its spectrum and
/// the spectra of its principal minors.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    matrix: HermitianQMatrix,
    tol: Tolerances,
    spectrum: Spectrum,
    minor_spectra: Vec<Option<Spectrum>>,
}

impl EigenSystem {
    pub fn new(matrix: HermitianQMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, Tolerances::default())
    }

    pub fn with_tolerances(matrix: HermitianQMatrix, tol: Tolerances) -> Result<Self> {
        let spectrum = right_eigenvalues_with(&matrix, &tol)?;
        let n = matrix.dim();
        Ok(Self {
            matrix,
            tol,
            spectrum,
            minor_spectra: vec![None; n],
        })
    }

    pub fn matrix(&self) -> &HermitianQMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Spectrum of `M_j` (1-based), computed once.
    pub fn minor_spectrum(&mut self, j: usize) -> Result<&Spectrum> {
        check_index(j, self.dim())?;
        if self.minor_spectra[j - 1].is_none() {
            let minor = self.matrix.minor(j)?;
            self.minor_spectra[j - 1] = Some(right_eigenvalues_with(&minor, &self.tol)?);
        }
        Ok(self.minor_spectra[j - 1].as_ref().unwrap())
    }

    /// `Π_k (λ_i(A) - λ_k(M_j))`, 1 when `M_j` is empty.
    pub fn minor_product(&mut self, i: usize, j: usize) -> Result<f64> {
        let li = self.spectrum.value(i)?;
        check_index(j, self.dim())?;
        if self.dim() == 1 {
            return Ok(1.0);
        }
        Ok(self.minor_spectrum(j)?.characteristic_at(li))
    }

    /// Squared modulus `|v_ij|²` from eigenvalues alone.
    pub fn eei_modulus(&mut self, i: usize, j: usize) -> Result<f64> {
        let ratio = self.eei_ratio(i, j)?;
        let slack = self.tol.clamp;
        if !(-slack..=1.0 + slack).contains(&ratio) {
            return Err(Error::IdentityViolation {
                what: format!("|v_{i}{j}|^2 from eigenvalues"),
                value: ratio,
            });
        }
        Ok(ratio.clamp(0.0, 1.0))
    }

    /// The unclamped quotient of the identity's two products.
    pub fn eei_ratio(&mut self, i: usize, j: usize) -> Result<f64> {
        self.spectrum.require_simple(i, &self.tol)?;
        let denom = self.spectrum.gap_product(i)?;
        Ok(self.minor_product(i, j)? / denom)
    }

    /// `qadj(λ_i E - A)`.
    pub fn shifted_adjugate(&self, i: usize) -> Result<QMatrix> {
        let li = self.spectrum.value(i)?;
        qadj(self.matrix.shifted_negation(li).as_qmatrix())
    }

    /// Unit eigenvector for `λ_i`, pivoting on the largest `|v_im|²`.
    pub fn eigenvector(&self, i: usize) -> Result<EigenPair> {
        self.spectrum.require_simple(i, &self.tol)?;
        let q = self.shifted_adjugate(i)?;
        let c = self.spectrum.gap_product(i)?;
        let m = (0..self.dim())
            .max_by(|&a, &b| (q[(a, a)].w / c).total_cmp(&(q[(b, b)].w / c)))
            .unwrap();
        self.reconstruct(i, &q, c, m + 1)
    }

    /// Unit eigenvector for `λ_i` with component `m` (1-based) made real.
    pub fn eigenvector_with_pivot(&self, i: usize, m: usize) -> Result<EigenPair> {
        self.spectrum.require_simple(i, &self.tol)?;
        check_index(m, self.dim())?;
        let q = self.shifted_adjugate(i)?;
        let c = self.spectrum.gap_product(i)?;
        self.reconstruct(i, &q, c, m)
    }

    /// `v_m = sqrt(Q_mm / c)`, `v_j = Q_jm v_m⁻¹ / c`.
    fn reconstruct(&self, i: usize, q: &QMatrix, c: f64, m: usize) -> Result<EigenPair> {
        let n = self.dim();
        let diag = q[(m - 1, m - 1)].w / c;
        if diag.is_nan() || diag <= self.tol.pivot {
            return Err(Error::PivotFailure { index: i });
        }
        let vm = diag.sqrt();
        let inv_vm = Quaternion::real(vm).inverse()?;
        let entries = (0..n)
            .map(|j| {
                if j == m - 1 {
                    Quaternion::real(vm)
                } else {
                    q[(j, m - 1)] * inv_vm / c
                }
            })
            .collect();
        let lambda = self.spectrum.value(i)?;
        EigenPair::new(self.matrix.as_qmatrix(), lambda, QMatrix::column(entries), m)
    }

    /// All eigenpairs in ascending eigenvalue order.
    pub fn eigenpairs(&self) -> Result<Vec<EigenPair>> {
        (1..=self.dim()).map(|i| self.eigenvector(i)).collect()
    }

    /// Both sides of the identity for every `(i, j)`, with `|v_ij|²` taken
    /// from the adjugate reconstruction.
    pub fn eei_report(&mut self) -> Result<Vec<EEIReport>> {
        let n = self.dim();
        let pairs = self.eigenpairs()?;
        let mut out = Vec::with_capacity(n * n);
        for (idx, pair) in pairs.iter().enumerate() {
            let i = idx + 1;
            let c = self.spectrum.gap_product(i)?;
            for j in 1..=n {
                let lhs = pair.modulus_sq(j) * c;
                let rhs = self.minor_product(i, j)?;
                out.push(EEIReport {
                    i,
                    j,
                    lhs,
                    rhs,
                    residual: (lhs - rhs).abs(),
                });
            }
        }
        Ok(out)
    }

    /// `‖qadj(λ_i E - A) - c v v*‖∞`.
    pub fn outer_product_residual(&self, i: usize) -> Result<f64> {
        let pair = self.eigenvector(i)?;
        let q = self.shifted_adjugate(i)?;
        let c = self.spectrum.gap_product(i)?;
        let vvh = pair.vector.matmul(&pair.vector.conj_transpose())?;
        Ok(q.try_sub(&vvh.map(|e| e * c))?.inf_norm())
    }
}

/// `|v_ij|²` from the spectra of `A` and `M_j`.
pub fn eei_modulus(a: &HermitianQMatrix, i: usize, j: usize) -> Result<f64> {
    EigenSystem::new(a.clone())?.eei_modulus(i, j)
}

/// Unit eigenvector for `λ_i` via the quaternion adjugate.
pub fn eigenvector_from_qadj(a: &HermitianQMatrix, i: usize) -> Result<EigenPair> {
    EigenSystem::new(a.clone())?.eigenvector(i)
}

pub fn eei_report(a: &HermitianQMatrix) -> Result<Vec<EEIReport>> {
    EigenSystem::new(a.clone())?.eei_report()
}

pub fn verify_outer_product(a: &HermitianQMatrix, i: usize) -> Result<f64> {
    EigenSystem::new(a.clone())?.outer_product_residual(i)
}

/// Stacks eigenvector columns into `V`.
pub fn eigenvector_matrix(pairs: &[EigenPair]) -> QMatrix {
    let n = pairs.first().map_or(0, |p| p.vector.nrows());
    QMatrix::from_fn(n, pairs.len(), |r, c| pairs[c].vector[(r, 0)])
}

/// `‖V* V - E‖∞`.
pub fn unitarity_residual(pairs: &[EigenPair]) -> f64 {
    let v = eigenvector_matrix(pairs);
    let gram = v.conj_transpose().matmul(&v).expect("conformable");
    gram.try_sub(&QMatrix::identity(pairs.len())).expect("same shape").inf_norm()
}

/// Right-multiplies `v` by the unit quaternion that best aligns it with
/// `reference`. Eigenvectors are only defined up to such a factor.
pub fn align_phase(reference: &QMatrix, v: &QMatrix) -> QMatrix {
    let s: Quaternion = (0..v.nrows()).map(|r| v[(r, 0)].conj() * reference[(r, 0)]).sum();
    let m = s.modulus();
    if m == 0.0 {
        return v.clone();
    }
    v.scale_right(s / m)
}

/// Largest componentwise gap between `reference` and phase-aligned `v`.
pub fn phase_aligned_deviation(reference: &QMatrix, v: &QMatrix) -> f64 {
    align_phase(reference, v).max_abs_diff(reference)
}
