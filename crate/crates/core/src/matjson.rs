//! JSON interchange format for dense complex matrices:
//! `{ "n": int, "re": [[...]], "im": [[...]] }` in row-major order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{C64, CMatrix, Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let n = m.nrows();
        let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        Ok(Self {
            n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        })
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.n;
        let check = |name: &str, rows: &Vec<Vec<f64>>| -> Result<()> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::ShapeMismatch(format!(
                    "field '{name}' is not an {n}x{n} array"
                )));
            }
            Ok(())
        };
        check("re", &self.re)?;
        check("im", &self.im)?;
        Ok(CMatrix::from_fn(n, n, |i, j| {
            C64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)?;
    let parsed: MatrixJson = serde_json::from_str(&text)?;
    parsed.to_matrix()
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    let json = serde_json::to_string_pretty(&MatrixJson::from_matrix(m)?)?;
    std::fs::write(path, json)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.5, -0.25),
                C64::new(0.5, 0.25),
                C64::new(-1.0, 0.0),
            ],
        );
        let json = MatrixJson::from_matrix(&m).unwrap();
        let back = json.to_matrix().unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn shape_mismatch_detected() {
        let bad = MatrixJson {
            n: 2,
            re: vec![vec![1.0, 0.0]],
            im: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        };
        assert!(matches!(bad.to_matrix(), Err(Error::ShapeMismatch(_))));
    }
}
