#![allow(dead_code)]

use qeei_core::eigen::right_eigenvalues;
use qeei_core::HermitianQMatrix;
use rand_chacha::ChaCha8Rng;

/// Random Hermitian matrix whose right eigenvalues are pairwise more than
/// `min_gap` apart, resampling as needed.
pub fn hermitian_with_gap(n: usize, min_gap: f64, rng: &mut ChaCha8Rng) -> HermitianQMatrix {
    loop {
        let h = HermitianQMatrix::random(n, rng);
        let s = right_eigenvalues(&h).expect("spectrum");
        if s.values.windows(2).all(|w| w[1] - w[0] > min_gap) {
            return h;
        }
    }
}

/// Classical determinant by Laplace expansion along the first row.
pub fn laplace_det(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    if n == 0 {
        return 1.0;
    }
    if n == 1 {
        return a[0][0];
    }
    (0..n)
        .map(|c| {
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            sign * a[0][c] * laplace_det(&delete(a, 0, c))
        })
        .sum()
}

pub fn delete(a: &[Vec<f64>], row: usize, col: usize) -> Vec<Vec<f64>> {
    a.iter()
        .enumerate()
        .filter(|&(r, _)| r != row)
        .map(|(_, rv)| {
            rv.iter()
                .enumerate()
                .filter(|&(c, _)| c != col)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Classical adjugate: `adj[p][q] = (-1)^(p+q) det(A without row q, col p)`.
pub fn classical_adjugate(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|p| {
            (0..n)
                .map(|q| {
                    let sign = if (p + q) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * laplace_det(&delete(a, q, p))
                })
                .collect()
        })
        .collect()
}
