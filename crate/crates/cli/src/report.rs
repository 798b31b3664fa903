use std::fmt::Write as _;

use qeei_core::eigen::{EEIReport, EigenPair, Tolerances};
use qeei_core::{QMatrix, Quaternion};
use serde::Serialize;

use crate::input::MatrixFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Degenerate,
    Violation,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ToleranceSet {
    pub base: f64,
    pub grouping: f64,
    pub simple: f64,
    pub clamp: f64,
    pub pivot: f64,
}

impl ToleranceSet {
    pub fn new(base: f64, t: &Tolerances) -> Self {
        Self {
            base,
            grouping: t.grouping,
            simple: t.simple,
            clamp: t.clamp,
            pivot: t.pivot,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub index: usize,
    pub lambda: f64,
    pub pivot: usize,
    /// `[w, x, y, z]` per component.
    pub components: Vec<[f64; 4]>,
    pub residual: f64,
    pub norm_dev: f64,
}

impl PairReport {
    pub fn new(index: usize, p: &EigenPair) -> Self {
        Self {
            index,
            lambda: p.lambda,
            pivot: p.pivot,
            components: (0..p.vector.nrows()).map(|r| p.vector[(r, 0)].to_array()).collect(),
            residual: p.residual,
            norm_dev: p.norm_dev,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EeiRow {
    pub i: usize,
    pub j: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl From<&EEIReport> for EeiRow {
    fn from(r: &EEIReport) -> Self {
        Self {
            i: r.i,
            j: r.j,
            lhs: r.lhs,
            rhs: r.rhs,
            residual: r.residual,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjugateReport {
    pub lambda: Option<f64>,
    pub matrix: MatrixFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub arguments: Vec<String>,
    pub input: MatrixFile,
    pub input_sha256: String,
    pub tolerances: ToleranceSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub eigenpairs: Vec<PairReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qadj: Option<AdjugateReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub eei: Vec<EeiRow>,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str, arguments: Vec<String>, input: MatrixFile, sha: String, tolerances: ToleranceSet) -> Self {
        Self {
            command: command.to_string(),
            arguments,
            input,
            input_sha256: sha,
            tolerances,
            spectrum: None,
            eigenpairs: Vec::new(),
            det: None,
            qadj: None,
            eei: Vec::new(),
            residuals: Vec::new(),
            message: None,
            status: Status::Ok,
        }
    }

    pub fn residual(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        let ok = value <= tolerance;
        self.residuals.push(Residual {
            name: name.into(),
            value,
            tolerance,
            ok,
        });
        if !ok {
            self.status = Status::Violation;
        }
    }

    pub fn mark_degenerate(&mut self, message: String) {
        if self.status == Status::Ok {
            self.status = Status::Degenerate;
        }
        self.message = Some(message);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(spec) = &self.spectrum {
            let vals: Vec<String> = spec.iter().map(|v| format!("{}", v + 0.0)).collect();
            let _ = writeln!(out, "eigenvalues: {}", vals.join(", "));
        }
        for p in &self.eigenpairs {
            let _ = writeln!(out, "eigenvector {} (lambda = {}, pivot {}):", p.index, p.lambda, p.pivot);
            for (j, c) in p.components.iter().enumerate() {
                let _ = writeln!(out, "  v{}{} = {:.8}", p.index, j + 1, Quaternion::from_array(*c));
            }
        }
        if let Some(d) = self.det {
            let q = Quaternion::from_array(d);
            let _ = writeln!(out, "det = {q}  [{}, {}, {}, {}]", d[0], d[1], d[2], d[3]);
        }
        if let Some(adj) = &self.qadj {
            match adj.lambda {
                Some(l) => {
                    let _ = writeln!(out, "qadj({l}*E - A):");
                }
                None => {
                    let _ = writeln!(out, "qadj(A):");
                }
            }
            let m = &adj.matrix;
            for (name, part) in [("B0", &m.re), ("B1", &m.im_i), ("B2", &m.im_j), ("B3", &m.im_k)] {
                let rows: Vec<String> = part
                    .iter()
                    .map(|r| r.iter().map(|v| format!("{}", v + 0.0)).collect::<Vec<_>>().join(","))
                    .collect();
                let _ = writeln!(out, "{name}=[{}];", rows.join(";"));
            }
        }
        if !self.eei.is_empty() {
            let worst = self.eei.iter().map(|r| r.residual).fold(0.0, f64::max);
            let _ = writeln!(out, "eigenvector-eigenvalue identity: {} pairs, max residual {worst:e}", self.eei.len());
        }
        for r in &self.residuals {
            let _ = writeln!(
                out,
                "{:<28} {:>12.3e}  (tol {:.1e}) {}",
                r.name,
                r.value,
                r.tolerance,
                if r.ok { "ok" } else { "VIOLATION" }
            );
        }
        if let Some(m) = &self.message {
            let _ = writeln!(out, "note: {m}");
        }
        let status = match self.status {
            Status::Ok => "ok",
            Status::Degenerate => "degenerate",
            Status::Violation => "violation",
        };
        let _ = writeln!(out, "status: {status}");
        out
    }
}

pub fn adjugate_report(lambda: Option<f64>, m: &QMatrix) -> AdjugateReport {
    AdjugateReport {
        lambda,
        matrix: MatrixFile::from_qmatrix(m),
    }
}
