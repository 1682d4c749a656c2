use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, entries: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(FieldMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &FieldMatrix, field: &Field) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = FieldMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::ZERO;
                for k in 0..self.cols {
                    acc = field.add(acc, field.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Copy with the given rows and columns removed.
    pub fn without(&self, rows: &[usize], cols: &[usize]) -> FieldMatrix {
        let keep_r: Vec<usize> = (0..self.rows).filter(|r| !rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|c| !cols.contains(c)).collect();
        let mut out = FieldMatrix::zeros(keep_r.len(), keep_c.len());
        for (i, &r) in keep_r.iter().enumerate() {
            for (j, &c) in keep_c.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn determinant(&self, field: &Field) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let mut work = self.entries.clone();
        Ok(det_in_place(field, self.rows, &mut work))
    }
}

/// Determinant of the `n x n` row-major matrix in `m` by Gaussian
/// elimination with pivot search. Destroys `m`.
pub fn det_in_place(field: &Field, n: usize, m: &mut [FieldElement]) -> FieldElement {
    debug_assert_eq!(m.len(), n * n);
    let mut det = FieldElement::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
            return FieldElement::ZERO;
        };
        if pivot != col {
            for k in col..n {
                m.swap(pivot * n + k, col * n + k);
            }
            det = field.neg(det);
        }
        let pv = m[col * n + col];
        det = field.mul(det, pv);
        let pinv = field.inv_nonzero(pv);
        for r in col + 1..n {
            let lead = m[r * n + col];
            if lead.is_zero() {
                continue;
            }
            let factor = field.neg(field.mul(lead, pinv));
            for k in col + 1..n {
                let v = field.mul(factor, m[col * n + k]);
                m[r * n + k] = field.add(m[r * n + k], v);
            }
        }
    }
    det
}
