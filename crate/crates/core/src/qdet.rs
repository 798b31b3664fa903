//! Permutation-sum determinants over the quaternions.
//!
//! Both [`det`] and [`row_expansion`] sum `ε(σ) a_{x σ(x)} …` over the
//! symmetric group; they differ only in how the factors of each term are
//! ordered, which matters because quaternion products do not commute.
//!
//! * [`det`]: each cycle is read starting from its largest element and
//!   the cycles are concatenated by descending leader.
//! * [`row_expansion`]: the chain starts in row 1 and follows the
//!   permutation; each time a cycle closes it restarts from the smallest
//!   unused row.
//!
//! The sign is `(-1)^(n - #cycles)` in both cases. Terms are summed in
//! lexicographic permutation order so results are bit-reproducible.

use crate::error::{Error, Result};
use crate::qmatrix::{check_index, natural_submatrix_with, HermitianQMatrix, QMatrix, SubmatrixConvention};
use crate::quat::Quaternion;

/// Largest dimension accepted by the factorial-cost routines.
pub const MAX_PERMUTATION_DIM: usize = 8;

/// Which factor ordering a cycle decomposition is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleForm {
    /// Largest element leads each cycle; cycles by descending leader.
    DetNormal,
    /// Smallest element leads each cycle; cycles by ascending leader.
    RowChain,
}

/// Disjoint cycles of a permutation of `{1..n}` (1-based labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub sign: i8,
}

impl CycleDecomposition {
    /// Decomposes the 0-based permutation `perm` (`x -> perm[x]`).
    pub fn of(perm: &[usize], form: CycleForm) -> Self {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        // scanning from 0 yields cycles already led by their smallest element
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = perm[x];
            }
            cycles.push(cycle);
        }
        if form == CycleForm::DetNormal {
            for c in &mut cycles {
                let lead = c.iter().enumerate().max_by_key(|(_, &v)| v).map(|(p, _)| p).unwrap();
                c.rotate_left(lead);
            }
            cycles.sort_by(|a, b| b[0].cmp(&a[0]));
        }
        let sign = if (n - cycles.len()).is_multiple_of(2) { 1 } else { -1 };
        Self { cycles, sign }
    }

    /// Factor positions `(row, col)`, 0-based, in multiplication order.
    pub fn factors(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in &self.cycles {
            for (k, &from) in c.iter().enumerate() {
                let to = c[(k + 1) % c.len()];
                out.push((from - 1, to - 1));
            }
        }
        out
    }
}

/// One signed, ordered product of a permutation sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationTerm {
    pub sign: i8,
    pub factors: Vec<(usize, usize)>,
}

impl PermutationTerm {
    pub fn evaluate(&self, a: &QMatrix) -> Quaternion {
        let p: Quaternion = self.factors.iter().map(|&(r, c)| a[(r, c)]).product();
        if self.sign < 0 {
            -p
        } else {
            p
        }
    }
}

/// Advances `perm` to its lexicographic successor; false after the last.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All `n!` terms of the permutation sum, in lexicographic order of σ.
pub fn permutation_terms(n: usize, form: CycleForm) -> Vec<PermutationTerm> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut terms = Vec::new();
    loop {
        let cd = CycleDecomposition::of(&perm, form);
        terms.push(PermutationTerm {
            sign: cd.sign,
            factors: cd.factors(),
        });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    terms
}

fn check_dim(a: &QMatrix) -> Result<usize> {
    let n = a.require_square()?;
    if n > MAX_PERMUTATION_DIM {
        return Err(Error::ComplexityLimit {
            n,
            limit: MAX_PERMUTATION_DIM,
        });
    }
    Ok(n)
}

fn permutation_sum(a: &QMatrix, form: CycleForm) -> Result<Quaternion> {
    let n = check_dim(a)?;
    Ok(permutation_terms(n, form).iter().map(|t| t.evaluate(a)).sum())
}

/// Permutation determinant in cycle normal form. Real for Hermitian input.
pub fn det(a: &QMatrix) -> Result<Quaternion> {
    permutation_sum(a, CycleForm::DetNormal)
}

/// Row expansion `|A|^row`.
pub fn row_expansion(a: &QMatrix) -> Result<Quaternion> {
    permutation_sum(a, CycleForm::RowChain)
}

/// Quaternion adjugate: diagonal `|A_pp|^row`, off-diagonal `-|A_qp|^row`,
/// where `A_qp` is the natural submatrix with row `q` and column `p`
/// removed. For Hermitian `A`, `qadj(A) A = A qadj(A) = det(A) E`.
pub fn qadj(a: &QMatrix) -> Result<QMatrix> {
    qadj_with(a, SubmatrixConvention::default())
}

pub fn qadj_with(a: &QMatrix, convention: SubmatrixConvention) -> Result<QMatrix> {
    let n = check_dim(a)?;
    if n == 1 {
        // empty row expansion is 1
        return Ok(QMatrix::identity(1));
    }
    let terms = permutation_terms(n - 1, CycleForm::RowChain);
    let expand = |m: &QMatrix| -> Quaternion { terms.iter().map(|t| t.evaluate(m)).sum() };
    let mut out = QMatrix::zeros(n, n);
    for p in 1..=n {
        for q in 1..=n {
            let sub = natural_submatrix_with(a, q, p, convention)?;
            let v = expand(&sub);
            out[(p - 1, q - 1)] = if p == q { v } else { -v };
        }
    }
    Ok(out)
}

/// The elementary matrix `P(k, j_λ)`: identity with `λ` added at row `j`,
/// column `k` (λ times column `j` added to column `k`). 1-based.
pub fn column_addition(n: usize, k: usize, j: usize, lambda: Quaternion) -> Result<QMatrix> {
    check_index(k, n)?;
    check_index(j, n)?;
    if j == k {
        return Err(Error::EqualIndices { index: j });
    }
    let mut p = QMatrix::identity(n);
    p[(j - 1, k - 1)] = lambda;
    Ok(p)
}

/// `|det(P* H P) - det(H)|` for `P = P(k, j_λ)`; vanishes for Hermitian `H`.
pub fn det_invariance_check(h: &HermitianQMatrix, k: usize, j: usize, lambda: Quaternion) -> Result<f64> {
    let a = h.as_qmatrix();
    let p = column_addition(h.dim(), k, j, lambda)?;
    let congruent = p.conj_transpose().matmul(a)?.matmul(&p)?;
    Ok((det(&congruent)? - det(a)?).modulus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example_one() -> QMatrix {
        QMatrix::from_rows(&[
            vec![Quaternion::real(3.0), Quaternion::new(0.0, 1.0, -1.0, 1.0)],
            vec![Quaternion::new(0.0, -1.0, 1.0, -1.0), Quaternion::real(2.0)],
        ])
        .unwrap()
    }

    /// Classical Laplace expansion along the first row; an independent
    /// route for commuting (real) entries.
    fn laplace(a: &[Vec<f64>]) -> f64 {
        let n = a.len();
        if n == 1 {
            return a[0][0];
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<f64>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &v)| v).collect())
                    .collect();
                let s = if c % 2 == 0 { 1.0 } else { -1.0 };
                s * a[0][c] * laplace(&minor)
            })
            .sum()
    }

    #[test]
    fn cycle_forms() {
        // σ = 1->2, 2->1, 3->4, 4->3 (0-based [1,0,3,2])
        let perm = [1, 0, 3, 2];
        let row = CycleDecomposition::of(&perm, CycleForm::RowChain);
        assert_eq!(row.cycles, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(row.sign, 1);
        let det = CycleDecomposition::of(&perm, CycleForm::DetNormal);
        assert_eq!(det.cycles, vec![vec![4, 3], vec![2, 1]]);
        // 1->3->2->1 with 4 fixed
        let perm = [2, 0, 1, 3];
        let det = CycleDecomposition::of(&perm, CycleForm::DetNormal);
        assert_eq!(det.cycles, vec![vec![4], vec![3, 2, 1]]);
        assert_eq!(det.sign, 1);
        assert_eq!(det.factors(), vec![(3, 3), (2, 1), (1, 0), (0, 2)]);
    }

    #[test]
    fn term_counts_are_factorial() {
        let mut fact = 1;
        for n in 1..=5 {
            fact *= n;
            assert_eq!(permutation_terms(n, CycleForm::DetNormal).len(), fact);
            assert_eq!(permutation_terms(n, CycleForm::RowChain).len(), fact);
        }
    }

    #[test]
    fn row_expansion_term_order_4x4() {
        let terms = permutation_terms(4, CycleForm::RowChain);
        let find = |f: &[(usize, usize)]| -> i8 {
            let f0: Vec<(usize, usize)> = f.iter().map(|&(r, c)| (r - 1, c - 1)).collect();
            terms.iter().find(|t| t.factors == f0).map(|t| t.sign).expect("term present")
        };
        assert_eq!(find(&[(1, 1), (2, 2), (3, 3), (4, 4)]), 1);
        assert_eq!(find(&[(1, 1), (2, 3), (3, 4), (4, 2)]), 1);
        assert_eq!(find(&[(1, 1), (2, 4), (4, 3), (3, 2)]), 1);
        assert_eq!(find(&[(1, 1), (2, 4), (4, 2), (3, 3)]), -1);
        assert_eq!(find(&[(1, 2), (2, 1), (3, 4), (4, 3)]), 1);
        assert_eq!(find(&[(1, 4), (4, 1), (2, 3), (3, 2)]), 1);
    }

    #[test]
    fn two_by_two_row_expansion_order() {
        let a = QMatrix::from_rows(&[
            vec![Quaternion::I, Quaternion::J],
            vec![Quaternion::K, Quaternion::new(1.0, 1.0, 0.0, 0.0)],
        ])
        .unwrap();
        let expected = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
        assert_eq!(row_expansion(&a).unwrap(), expected);
        let single = QMatrix::scalar(1, Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!(row_expansion(&single).unwrap(), single[(0, 0)]);
        assert_eq!(det(&single).unwrap(), single[(0, 0)]);
    }

    #[test]
    fn det_examples() {
        assert!(det(&example_one()).unwrap().approx_eq(Quaternion::real(3.0), 1e-12));
        let d = QMatrix::diagonal(&[2.0, -3.0, 0.5, 4.0]);
        assert_eq!(det(&d).unwrap(), Quaternion::real(-12.0));
        assert_eq!(det(&QMatrix::zeros(2, 3)), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert_eq!(
            det(&QMatrix::identity(9)),
            Err(Error::ComplexityLimit { n: 9, limit: 8 })
        );
        assert!(matches!(row_expansion(&QMatrix::identity(9)), Err(Error::ComplexityLimit { .. })));
        assert!(matches!(qadj(&QMatrix::identity(9)), Err(Error::ComplexityLimit { .. })));
        assert_eq!(det(&QMatrix::identity(8)).unwrap(), Quaternion::ONE);
    }

    #[test]
    fn real_entries_reduce_to_classical() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            let a = QMatrix::random(n, n, &mut rng).map(|q| Quaternion::real(q.w));
            let rows: Vec<Vec<f64>> = a.to_rows().iter().map(|r| r.iter().map(|q| q.w).collect()).collect();
            let classical = laplace(&rows);
            assert!(det(&a).unwrap().approx_eq(Quaternion::real(classical), 1e-12));
            assert!(row_expansion(&a).unwrap().approx_eq(Quaternion::real(classical), 1e-12));
        }
    }

    #[test]
    fn qadj_of_scalar_is_one() {
        let a = QMatrix::scalar(1, Quaternion::new(0.0, 5.0, 0.0, 0.0));
        assert_eq!(qadj(&a).unwrap(), QMatrix::identity(1));
    }

    #[test]
    fn qadj_of_shifted_example_one() {
        let s13 = 13f64.sqrt();
        let lam = (5.0 + s13) / 2.0;
        let b = example_one().shifted_negation(lam).unwrap();
        let q = qadj(&b).unwrap();
        let [b0, b1, b2, b3] = q.components();
        let expect = |m: &crate::qmatrix::RealMatrix, rows: [[f64; 2]; 2]| {
            for r in 0..2 {
                for c in 0..2 {
                    assert!((m[(r, c)] - rows[r][c]).abs() < 1e-12, "{m:?}");
                }
            }
        };
        expect(&b0, [[(1.0 + s13) / 2.0, 0.0], [0.0, (-1.0 + s13) / 2.0]]);
        expect(&b1, [[0.0, 1.0], [-1.0, 0.0]]);
        expect(&b2, [[0.0, -1.0], [1.0, 0.0]]);
        expect(&b3, [[0.0, 1.0], [-1.0, 0.0]]);
    }

    fn lemma_six_residual(h: &QMatrix, convention: SubmatrixConvention) -> f64 {
        let n = h.nrows();
        let d = det(h).unwrap();
        let q = qadj_with(h, convention).unwrap();
        let target = QMatrix::scalar(n, d);
        let left = q.matmul(h).unwrap().max_abs_diff(&target);
        let right = h.matmul(&q).unwrap().max_abs_diff(&target);
        left.max(right)
    }

    #[test]
    fn adjugate_identity_selects_the_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for n in 2..=5 {
            for _ in 0..20 {
                let h = HermitianQMatrix::random(n, &mut rng).into_inner();
                let scale = 1.0 + h.inf_norm().powi(n as i32);
                assert!(lemma_six_residual(&h, SubmatrixConvention::ChainLeading) < 1e-9 * scale);
            }
        }
        // the alternatives break the identity from n = 3 on
        let h = HermitianQMatrix::random(4, &mut rng).into_inner();
        assert!(lemma_six_residual(&h, SubmatrixConvention::Deletion) > 1e-3);
        assert!(lemma_six_residual(&h, SubmatrixConvention::RowCycle) > 1e-3);
    }

    #[test]
    fn hermitian_det_is_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=6 {
            let h = HermitianQMatrix::random(n, &mut rng);
            assert!(det(h.as_qmatrix()).unwrap().imag_abs_max() < 1e-10);
        }
    }

    #[test]
    fn det_invariance() {
        let h = example_one().validate_hermitian().unwrap();
        assert!(det_invariance_check(&h, 2, 1, Quaternion::I).unwrap() < 1e-10);
        assert_eq!(det_invariance_check(&h, 1, 2, Quaternion::ZERO).unwrap(), 0.0);
        assert_eq!(
            det_invariance_check(&h, 1, 1, Quaternion::I),
            Err(Error::EqualIndices { index: 1 })
        );
        assert!(matches!(
            det_invariance_check(&h, 3, 1, Quaternion::I),
            Err(Error::IndexOutOfRange { .. })
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let h = HermitianQMatrix::random(3, &mut rng);
            let lam = QMatrix::random(1, 1, &mut rng)[(0, 0)];
            assert!(det_invariance_check(&h, 1, 3, lam).unwrap() < 1e-9);
            assert!(det_invariance_check(&h, 2, 1, lam).unwrap() < 1e-9);
        }
    }
}
