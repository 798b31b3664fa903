//! Cyclic Jacobi eigensolver for real symmetric matrices.

use crate::error::{Error, Result};
use crate::qmatrix::RealMatrix;

pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvector
/// columns.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
    pub sweeps: usize,
}

fn off_diagonal_mass(a: &RealMatrix) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += a[(p, q)] * a[(p, q)];
            }
        }
    }
    sum.sqrt()
}

/// Diagonalizes `s` by plane rotations, sweeping the upper triangle row by
/// row until the off-diagonal Frobenius mass drops below `1e-12 ‖S‖_F`.
pub fn symmetric_eig(s: &RealMatrix) -> Result<SymmetricEigen> {
    let (n, m) = s.dims();
    if n != m {
        return Err(Error::NotSquare { rows: n, cols: m });
    }
    let sym_tol = 1e-10 * s.as_slice().iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    for p in 0..n {
        for q in p + 1..n {
            let dev = (s[(p, q)] - s[(q, p)]).abs();
            if dev > sym_tol {
                return Err(Error::NotSymmetric {
                    row: p + 1,
                    col: q + 1,
                    deviation: dev,
                });
            }
        }
    }

    // work on the exactly symmetrized copy
    let mut a = RealMatrix::from_fn(n, n, |p, q| 0.5 * (s[(p, q)] + s[(q, p)]));
    let mut v = RealMatrix::identity(n);
    let threshold = 1e-12 * a.frobenius_norm();

    let mut sweeps = 0;
    while off_diagonal_mass(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].total_cmp(&a[(y, y)]));
    let values = order.iter().map(|&k| a[(k, k)] + 0.0).collect();
    let vectors = RealMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn residual(s: &RealMatrix, e: &SymmetricEigen) -> f64 {
        let n = s.nrows();
        let sv = s.matmul(&e.vectors).unwrap();
        let vl = RealMatrix::from_fn(n, n, |r, c| e.vectors[(r, c)] * e.values[c]);
        sv.max_abs_diff(&vl)
    }

    #[test]
    fn known_spectra() {
        let d = RealMatrix::from_rows(&[vec![3.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 2.0]]).unwrap();
        assert_eq!(symmetric_eig(&d).unwrap().values, vec![1.0, 2.0, 3.0]);
        let x = RealMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = symmetric_eig(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        assert!(residual(&x, &e) < 1e-15);
        let z = RealMatrix::zeros(3, 3);
        assert_eq!(symmetric_eig(&z).unwrap().values, vec![0.0; 3]);
    }

    #[test]
    fn rejects_bad_input() {
        let a = RealMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(symmetric_eig(&a), Err(Error::NotSymmetric { row: 1, col: 2, .. })));
        assert!(matches!(symmetric_eig(&RealMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn random_symmetric_decompositions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=24 {
            let mut s = RealMatrix::zeros(n, n);
            for p in 0..n {
                for q in p..n {
                    let v: f64 = rng.random_range(-1.0..1.0);
                    s[(p, q)] = v;
                    s[(q, p)] = v;
                }
            }
            let e = symmetric_eig(&s).unwrap();
            assert!(residual(&s, &e) < 1e-8 * s.inf_norm().max(1.0));
            let vtv = e.vectors.transpose().matmul(&e.vectors).unwrap();
            assert!(vtv.max_abs_diff(&RealMatrix::identity(n)) < 1e-12);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
