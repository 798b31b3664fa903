use qeei_core::eigen::{unitarity_residual, EigenSystem, Tolerances};
use qeei_core::qdet::{det, qadj};
use qeei_core::{Error, HermitianQMatrix, QMatrix};

use crate::input::LoadedInput;
use crate::report::{adjugate_report, PairReport, Report, ToleranceSet};

/// Everything a subcommand needs besides its own flags.
pub struct Context {
    pub command: &'static str,
    pub arguments: Vec<String>,
    pub input: LoadedInput,
    pub tol: f64,
}

impl Context {
    fn tolerances(&self) -> Tolerances {
        Tolerances::scaled(self.tol)
    }

    fn report(&self) -> Report {
        Report::new(
            self.command,
            self.arguments.clone(),
            self.input.file.clone(),
            self.input.sha256.clone(),
            ToleranceSet::new(self.tol, &self.tolerances()),
        )
    }

    fn hermitian(&self) -> Result<HermitianQMatrix, Error> {
        self.input.matrix.clone().validate_hermitian()
    }

    fn system(&self) -> Result<EigenSystem, Error> {
        EigenSystem::with_tolerances(self.hermitian()?, self.tolerances())
    }

    fn a(&self) -> &QMatrix {
        &self.input.matrix
    }

    /// The matrix a `--lambda` flag refers to: `λE - A`, or `A` itself.
    fn shifted(&self, lambda: Option<f64>) -> Result<QMatrix, Error> {
        match lambda {
            Some(l) => self.a().shifted_negation(l),
            None => Ok(self.a().clone()),
        }
    }
}

pub fn eig(ctx: &Context) -> Result<Report, Error> {
    let sys = ctx.system()?;
    let mut report = ctx.report();
    let spec = sys.spectrum();
    report.spectrum = Some(spec.values.clone());
    report.residual("quadruple_spread", spec.max_spread, spec.grouping_tol);
    let repeated: Vec<usize> = (1..=spec.len())
        .filter(|&i| spec.require_simple(i, sys.tolerances()).is_err())
        .collect();
    if !repeated.is_empty() {
        report.message = Some(format!("eigenvalues {repeated:?} are not simple"));
    }
    Ok(report)
}

pub fn vec(ctx: &Context, index: usize, pivot: Option<usize>) -> Result<Report, Error> {
    let sys = ctx.system()?;
    let pair = match pivot {
        Some(m) => sys.eigenvector_with_pivot(index, m)?,
        None => sys.eigenvector(index)?,
    };
    let mut report = ctx.report();
    let scale = 1.0 + ctx.a().inf_norm();
    report.spectrum = Some(sys.spectrum().values.clone());
    report.residual(format!("eigen_residual[{index}]"), pair.residual, ctx.tol * scale);
    report.residual(format!("norm_deviation[{index}]"), pair.norm_dev, ctx.tol * scale);
    let q = sys.shifted_adjugate(index)?;
    report.residual(
        format!("outer_product[{index}]"),
        sys.outer_product_residual(index)?,
        ctx.tol * (1.0 + q.inf_norm()),
    );
    report.eigenpairs.push(PairReport::new(index, &pair));
    Ok(report)
}

pub fn determinant(ctx: &Context, lambda: Option<f64>) -> Result<Report, Error> {
    let b = ctx.shifted(lambda)?;
    let d = det(&b)?;
    let mut report = ctx.report();
    report.det = Some(d.to_array());
    if b.clone().validate_hermitian().is_ok() {
        report.residual("det_imaginary_part", d.imag_abs_max(), ctx.tol * (1.0 + d.modulus()));
    }
    Ok(report)
}

pub fn adjugate(ctx: &Context, lambda: Option<f64>) -> Result<Report, Error> {
    let b = ctx.shifted(lambda)?;
    let adj = qadj(&b)?;
    let mut report = ctx.report();
    if let Ok(h) = b.clone().validate_hermitian() {
        lemma_residuals(&mut report, &h, &adj, ctx.tol)?;
    }
    report.qadj = Some(adjugate_report(lambda, &adj));
    Ok(report)
}

pub fn verify(ctx: &Context) -> Result<Report, Error> {
    let mut sys = ctx.system()?;
    let h = sys.matrix().clone();
    let n = sys.dim();
    let tol = ctx.tol;
    let mut report = ctx.report();
    let spec = sys.spectrum().clone();
    report.spectrum = Some(spec.values.clone());
    report.residual("quadruple_spread", spec.max_spread, spec.grouping_tol);

    let adj = qadj(h.as_qmatrix())?;
    let d = lemma_residuals(&mut report, &h, &adj, tol)?;
    report.det = Some(d.to_array());
    let product: f64 = spec.values.iter().product();
    report.residual(
        "det_vs_eigenvalue_product",
        (d.w - product).abs(),
        tol * (1.0 + product.abs()),
    );

    let repeated: Vec<usize> = (1..=n)
        .filter(|&i| spec.require_simple(i, sys.tolerances()).is_err())
        .collect();
    if !repeated.is_empty() {
        report.mark_degenerate(format!(
            "eigenvalues {repeated:?} are not simple; eigenvector checks skipped"
        ));
        return Ok(report);
    }

    let scale = 1.0 + h.as_qmatrix().inf_norm();
    let pairs = sys.eigenpairs()?;
    for (idx, pair) in pairs.iter().enumerate() {
        let i = idx + 1;
        report.residual(format!("eigen_residual[{i}]"), pair.residual, tol * scale);
        report.residual(format!("norm_deviation[{i}]"), pair.norm_dev, tol * scale);
        let q = sys.shifted_adjugate(i)?;
        report.residual(
            format!("outer_product[{i}]"),
            sys.outer_product_residual(i)?,
            tol * (1.0 + q.inf_norm()),
        );
        report.eigenpairs.push(PairReport::new(i, pair));
    }
    report.residual("unitarity", unitarity_residual(&pairs), tol * scale);

    let rows = sys.eei_report()?;
    let mut worst = 0.0f64;
    for r in &rows {
        let c = spec.gap_product(r.i)?.abs();
        worst = worst.max(r.residual / (1.0 + c));
    }
    report.residual("eei_relative", worst, tol * scale);
    let mut outside = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            let ratio = sys.eei_ratio(i, j)?;
            outside = outside.max(-ratio).max(ratio - 1.0);
        }
    }
    report.residual("eei_ratio_range", outside.max(0.0), sys.tolerances().clamp);
    report.eei = rows.iter().map(Into::into).collect();
    Ok(report)
}

/// Records `‖qadj(H) H - det E‖∞` and `‖H qadj(H) - det E‖∞`; returns `det H`.
fn lemma_residuals(
    report: &mut Report,
    h: &HermitianQMatrix,
    adj: &QMatrix,
    tol: f64,
) -> Result<qeei_core::Quaternion, Error> {
    let a = h.as_qmatrix();
    let d = det(a)?;
    let target = QMatrix::scalar(h.dim(), d);
    let left = adj.matmul(a)?.try_sub(&target)?.inf_norm();
    let right = a.matmul(adj)?.try_sub(&target)?.inf_norm();
    let scale = 1.0 + d.modulus() + adj.inf_norm() * a.inf_norm();
    report.residual("qadj_times_matrix", left, tol * scale);
    report.residual("matrix_times_qadj", right, tol * scale);
    Ok(d)
}
