//! Brute-force cross-checks that share no code path with the adjugate
//! reconstruction: quaternion Gaussian elimination for right null spaces,
//! and the Cauchy–Binet type determinant identity.

use crate::eigen::{right_eigenvalues, EigenPair, Spectrum, Tolerances};
use crate::error::{Error, Result};
use crate::qdet::det;
use crate::qmatrix::{HermitianQMatrix, QMatrix};
use crate::quat::Quaternion;

/// `P M = L U` with `L` unit lower triangular and `U` in row echelon form.
/// Row operations multiply on the left, so right null spaces survive.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    /// Row `r` of `P M` is row `perm[r]` of `M`.
    pub perm: Vec<usize>,
    pub lower: QMatrix,
    pub upper: QMatrix,
    /// 0-based pivot column of each nonzero row of `upper`.
    pub pivot_cols: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// `P M` rebuilt from the factors, for reconstruction checks.
    pub fn permuted_product(&self) -> QMatrix {
        self.lower.matmul(&self.upper).expect("conformable")
    }
}

pub fn default_pivot_tol(m: &QMatrix) -> f64 {
    1e-10 * (1.0 + m.inf_norm())
}

/// Gaussian elimination with max-modulus partial pivoting. Columns whose
/// best candidate pivot is at most `pivot_tol` are skipped as free.
pub fn row_echelon(m: &QMatrix, pivot_tol: f64) -> RowEchelon {
    let (rows, cols) = m.dims();
    let mut u = m.clone();
    let mut lower = QMatrix::identity(rows);
    let mut perm: Vec<usize> = (0..rows).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;

    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, best_mod) = (r..rows)
            .map(|k| (k, u[(k, c)].modulus()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_mod <= pivot_tol {
            continue;
        }
        if best != r {
            swap_rows(&mut u, r, best);
            perm.swap(r, best);
            // multipliers already recorded in L follow their rows
            for k in 0..r {
                let t = lower[(r, k)];
                lower[(r, k)] = lower[(best, k)];
                lower[(best, k)] = t;
            }
        }
        let inv = u[(r, c)].inverse().expect("pivot above tolerance");
        for k in r + 1..rows {
            let factor = u[(k, c)] * inv;
            if factor.is_zero() {
                continue;
            }
            lower[(k, r)] = factor;
            for cc in c..cols {
                let delta = factor * u[(r, cc)];
                u[(k, cc)] -= delta;
            }
            u[(k, c)] = Quaternion::ZERO;
        }
        pivot_cols.push(c);
        r += 1;
    }
    // entries below tolerance left in non-pivot rows are numerical zeros
    for k in r..rows {
        for cc in 0..cols {
            u[(k, cc)] = Quaternion::ZERO;
        }
    }

    RowEchelon {
        perm,
        lower,
        upper: u,
        pivot_cols,
    }
}

fn swap_rows(m: &mut QMatrix, a: usize, b: usize) {
    for c in 0..m.ncols() {
        let t = m[(a, c)];
        m[(a, c)] = m[(b, c)];
        m[(b, c)] = t;
    }
}

/// Orthonormal basis of the right null space `{v : M v = 0}`.
#[derive(Clone, Debug)]
pub struct NullSpaceResult {
    pub basis: Vec<QMatrix>,
    pub rank: usize,
    pub pivot_tol: f64,
}

impl NullSpaceResult {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

pub fn null_space(m: &QMatrix, pivot_tol: f64) -> Result<NullSpaceResult> {
    let n = m.require_square()?;
    let ech = row_echelon(m, pivot_tol);
    let u = &ech.upper;
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivot_cols.contains(c)).collect();

    let mut basis: Vec<QMatrix> = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Quaternion::ZERO; n];
        v[f] = Quaternion::ONE;
        for (r, &p) in ech.pivot_cols.iter().enumerate().rev() {
            let s: Quaternion = (p + 1..n).map(|c| u[(r, c)] * v[c]).sum();
            v[p] = -(u[(r, p)].inverse()? * s);
        }
        let mut col = QMatrix::column(v);
        // right-linear Gram-Schmidt: v <- v - b (b* v)
        for b in &basis {
            let proj: Quaternion = (0..n).map(|k| b[(k, 0)].conj() * col[(k, 0)]).sum();
            col = col.try_sub(&b.scale_right(proj))?;
        }
        let norm = col.frobenius_norm();
        basis.push(col.map(|e| e / norm));
    }
    Ok(NullSpaceResult {
        basis,
        rank: ech.rank(),
        pivot_tol,
    })
}

/// Right-multiplies by a unit quaternion so the largest-modulus component
/// becomes real and positive. Returns the vector and the 1-based pivot.
pub fn fix_phase(v: &QMatrix) -> (QMatrix, usize) {
    let m = (0..v.nrows())
        .max_by(|&a, &b| v[(a, 0)].norm_sq().total_cmp(&v[(b, 0)].norm_sq()))
        .unwrap_or(0);
    let p = v[(m, 0)];
    let phase = p.conj() / p.modulus();
    let mut out = v.scale_right(phase);
    // drop rounding residue in the pivot's imaginary part
    out[(m, 0)] = Quaternion::real(out[(m, 0)].w);
    (out, m + 1)
}

/// Eigenpairs by eliminating `A - λE` for each right eigenvalue.
pub fn traditional_eigenpairs(a: &HermitianQMatrix) -> Result<Vec<EigenPair>> {
    let spectrum = right_eigenvalues(a)?;
    let tol = Tolerances::default();
    for i in 1..=spectrum.len() {
        spectrum.require_simple(i, &tol)?;
    }
    spectrum
        .values
        .iter()
        .map(|&lambda| {
            let shifted = a.shifted(lambda);
            let ns = null_space(shifted.as_qmatrix(), default_pivot_tol(shifted.as_qmatrix()))?;
            if ns.nullity() != 1 {
                return Err(Error::IdentityViolation {
                    what: format!("null space dimension at λ = {lambda}"),
                    value: ns.nullity() as f64,
                });
            }
            let (v, pivot) = fix_phase(&ns.basis[0]);
            EigenPair::new(a.as_qmatrix(), lambda, v, pivot)
        })
        .collect()
}

/// Index (0-based) of the eigenvalue nearest zero.
fn zero_eigenvalue(spectrum: &Spectrum) -> Result<usize> {
    let (k, closest) = spectrum
        .values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(k, &v)| (k, v))
        .expect("non-empty spectrum");
    if closest.abs() > 1e-8 {
        return Err(Error::NoZeroEigenvalue { closest });
    }
    Ok(k)
}

/// `|Π_{λ≠0} λ · det((B v)* (B v)) - det(B* A B)|` for singular Hermitian
/// `A` with unit null vector `v` and an n×(n-1) matrix `B`.
pub fn cauchy_binet_residual(a: &HermitianQMatrix, b: &QMatrix) -> Result<f64> {
    let n = a.dim();
    if b.dims() != (n, n - 1) {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", n, n - 1),
            found: format!("{}x{}", b.nrows(), b.ncols()),
        });
    }
    let spectrum = right_eigenvalues(a)?;
    let zero = zero_eigenvalue(&spectrum)?;
    let others: f64 = spectrum
        .values
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != zero)
        .map(|(_, &l)| l)
        .product();

    let am = a.as_qmatrix();
    let ns = null_space(am, default_pivot_tol(am))?;
    let v = ns.basis.first().ok_or(Error::NoZeroEigenvalue {
        closest: spectrum.values[zero],
    })?;

    let bv = QMatrix::from_fn(n, n, |r, c| if c < n - 1 { b[(r, c)] } else { v[(r, 0)] });
    let gram = bv.conj_transpose().matmul(&bv)?;
    let lhs = det(&gram)? * others;
    let rhs = det(&b.conj_transpose().matmul(am)?.matmul(b)?)?;
    Ok((lhs - rhs).modulus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::phase_aligned_deviation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example_one() -> HermitianQMatrix {
        QMatrix::from_rows(&[
            vec![Quaternion::real(3.0), Quaternion::new(0.0, 1.0, -1.0, 1.0)],
            vec![Quaternion::new(0.0, -1.0, 1.0, -1.0), Quaternion::real(2.0)],
        ])
        .unwrap()
        .validate_hermitian()
        .unwrap()
    }

    #[test]
    fn null_space_of_zero_and_diagonal() {
        let ns = null_space(&QMatrix::zeros(2, 2), 1e-10).unwrap();
        assert_eq!(ns.rank, 0);
        assert_eq!(
            ns.basis,
            vec![
                QMatrix::column(vec![Quaternion::ONE, Quaternion::ZERO]),
                QMatrix::column(vec![Quaternion::ZERO, Quaternion::ONE])
            ]
        );
        let ns = null_space(&QMatrix::diagonal(&[1.0, 0.0, 2.0]), 1e-10).unwrap();
        assert_eq!(ns.rank, 2);
        assert_eq!(
            ns.basis,
            vec![QMatrix::column(vec![Quaternion::ZERO, Quaternion::ONE, Quaternion::ZERO])]
        );
    }

    #[test]
    fn null_space_of_example_one() {
        let s13 = 13f64.sqrt();
        let lam = (5.0 + s13) / 2.0;
        let m = example_one().shifted(lam).into_inner();
        let ns = null_space(&m, default_pivot_tol(&m)).unwrap();
        assert_eq!(ns.nullity(), 1);
        let c1 = 2.0 * 6f64.sqrt() / ((s13 - 1.0) * (13.0 + s13).sqrt());
        let c2 = 6f64.sqrt() / (13.0 + s13).sqrt();
        let closed_form = QMatrix::column(vec![Quaternion::new(0.0, c1, -c1, c1), Quaternion::real(c2)]);
        assert!(phase_aligned_deviation(&closed_form, &ns.basis[0]) < 1e-12);
    }

    #[test]
    fn echelon_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=6 {
            let m = QMatrix::random(n, n, &mut rng);
            let ech = row_echelon(&m, 1e-12);
            let pm = m.select(&ech.perm, &(0..n).collect::<Vec<_>>());
            assert!(ech.permuted_product().max_abs_diff(&pm) < 1e-9);
            assert_eq!(ech.rank(), n);
        }
        // a rank-deficient product still reconstructs
        let b = QMatrix::random(4, 2, &mut rng);
        let m = b.matmul(&b.conj_transpose()).unwrap();
        let ech = row_echelon(&m, default_pivot_tol(&m));
        assert_eq!(ech.rank(), 2);
        let pm = m.select(&ech.perm, &[0, 1, 2, 3]);
        assert!(ech.permuted_product().max_abs_diff(&pm) < 1e-9);
        let ns = null_space(&m, default_pivot_tol(&m)).unwrap();
        assert_eq!(ns.nullity(), 2);
        for v in &ns.basis {
            assert!(m.matmul(v).unwrap().frobenius_norm() < 1e-8 * m.inf_norm());
            assert!((v.frobenius_norm() - 1.0).abs() < 1e-12);
        }
        let cross: Quaternion = (0..4).map(|k| ns.basis[0][(k, 0)].conj() * ns.basis[1][(k, 0)]).sum();
        assert!(cross.modulus() < 1e-12);
    }

    #[test]
    fn traditional_pairs() {
        let s13 = 13f64.sqrt();
        let pairs = traditional_eigenpairs(&example_one()).unwrap();
        let top = &pairs[1];
        assert!((top.modulus_sq(1) - (s13 + 13.0) / 26.0).abs() < 1e-12);
        assert!((top.modulus_sq(2) - (13.0 - s13) / 26.0).abs() < 1e-12);
        let d = traditional_eigenpairs(&HermitianQMatrix::real_diagonal(&[1.0, 2.0, 3.0])).unwrap();
        for (k, p) in d.iter().enumerate() {
            let mut e = vec![Quaternion::ZERO; 3];
            e[k] = Quaternion::ONE;
            assert_eq!(p.vector, QMatrix::column(e));
        }
        assert!(matches!(
            traditional_eigenpairs(&HermitianQMatrix::real_diagonal(&[2.0, 2.0])),
            Err(Error::DegenerateEigenvalue { .. })
        ));
    }

    #[test]
    fn cauchy_binet_cases() {
        let h = example_one();
        let top = right_eigenvalues(&h).unwrap().values[1];
        let shifted = h.shifted(top);
        let b = QMatrix::column(vec![Quaternion::ZERO, Quaternion::ONE]);
        assert!(cauchy_binet_residual(&shifted, &b).unwrap() < 1e-9);
        assert_eq!(cauchy_binet_residual(&shifted, &QMatrix::zeros(2, 1)).unwrap(), 0.0);
        assert!(matches!(
            cauchy_binet_residual(&h, &b),
            Err(Error::NoZeroEigenvalue { .. })
        ));
        assert!(matches!(
            cauchy_binet_residual(&shifted, &QMatrix::zeros(2, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
