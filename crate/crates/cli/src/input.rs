use std::fs;
use std::path::Path;

use qeei_core::{QMatrix, RealMatrix};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// On-disk matrix: `A = re + im_i i + im_j j + im_k k`, each part n×n.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im_i: Vec<Vec<f64>>,
    pub im_j: Vec<Vec<f64>>,
    pub im_k: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_qmatrix(m: &QMatrix) -> Self {
        let [re, im_i, im_j, im_k] = m.components().map(|c| c.to_rows());
        Self {
            n: m.nrows(),
            re,
            im_i,
            im_j,
            im_k,
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| format!("invalid matrix file: {e}"))?;
        file.check_shape()?;
        Ok(file)
    }

    fn check_shape(&self) -> Result<(), String> {
        if self.n == 0 {
            return Err("n must be positive".into());
        }
        for (name, part) in self.parts() {
            if part.len() != self.n || part.iter().any(|row| row.len() != self.n) {
                return Err(format!("{name} must be {n}x{n}", n = self.n));
            }
        }
        Ok(())
    }

    fn parts(&self) -> [(&'static str, &Vec<Vec<f64>>); 4] {
        [
            ("re", &self.re),
            ("im_i", &self.im_i),
            ("im_j", &self.im_j),
            ("im_k", &self.im_k),
        ]
    }

    pub fn to_qmatrix(&self) -> Result<QMatrix, String> {
        let [a0, a1, a2, a3] = self.parts().map(|(_, p)| RealMatrix::from_rows(p));
        let lift = |r: qeei_core::Result<RealMatrix>| r.map_err(|e| e.to_string());
        QMatrix::from_components(&lift(a0)?, &lift(a1)?, &lift(a2)?, &lift(a3)?).map_err(|e| e.to_string())
    }
}

/// A parsed input together with the SHA-256 of its raw bytes.
pub struct LoadedInput {
    pub file: MatrixFile,
    pub matrix: QMatrix,
    pub sha256: String,
}

pub fn load(path: &Path) -> Result<LoadedInput, String> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| format!("{} is not UTF-8: {e}", path.display()))?;
    let file = MatrixFile::parse(text)?;
    let matrix = file.to_qmatrix()?;
    Ok(LoadedInput {
        file,
        matrix,
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates_shape() {
        let ok = r#"{"n":1,"re":[[2.5]],"im_i":[[0]],"im_j":[[0]],"im_k":[[1]]}"#;
        let f = MatrixFile::parse(ok).unwrap();
        let m = f.to_qmatrix().unwrap();
        assert_eq!(m[(0, 0)], qeei_core::Quaternion::new(2.5, 0.0, 0.0, 1.0));
        assert_eq!(MatrixFile::from_qmatrix(&m), f);

        let short = r#"{"n":2,"re":[[1,0],[0,1]],"im_i":[[0,0]],"im_j":[[0,0],[0,0]],"im_k":[[0,0],[0,0]]}"#;
        assert!(MatrixFile::parse(short).unwrap_err().contains("im_i"));
        let zero = r#"{"n":0,"re":[],"im_i":[],"im_j":[],"im_k":[]}"#;
        assert!(MatrixFile::parse(zero).is_err());
        let extra = r#"{"n":1,"re":[[1]],"im_i":[[0]],"im_j":[[0]],"im_k":[[0]],"x":1}"#;
        assert!(MatrixFile::parse(extra).is_err());
        assert!(MatrixFile::parse("not json").is_err());
    }
}
