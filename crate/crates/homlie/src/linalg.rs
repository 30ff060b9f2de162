//! Dense exact linear algebra over a coefficient field (rationals or the
//! fraction field of a polynomial ring).

use thiserror::Error;

use crate::ring::{CoefficientRing, RingElement, RingEndomorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("singular system: no pivot for column {column} (leading {column}x{column} minor degenerate)")]
    Singular { column: usize },
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl Matrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElement) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RingElement>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Matrix {
            rows: nr,
            cols: nc,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(ring: &CoefficientRing, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity(ring: &CoefficientRing, n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { ring.one() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &RingElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<RingElement> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<RingElement> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&RingElement) -> RingElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    /// Entrywise application of the substitution endomorphism.
    pub fn apply_endo(&self, endo: &RingEndomorphism) -> Matrix {
        self.map(|e| endo.apply(e))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = self.at(r, 0) * other.at(0, c);
            for k in 1..self.cols {
                acc = &acc + &(self.at(r, k) * other.at(k, c));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.at(r, 0) * &v[0];
                for k in 1..self.cols {
                    acc = &acc + &(self.at(r, k) * &v[k]);
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// First nonzero entry, if any, as a failure witness.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &RingElement)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.at(r, c);
                if !e.is_zero() {
                    return Some((r, c, e));
                }
            }
        }
        None
    }

    /// Row echelon form; returns (echelon matrix, pivot columns).
    fn echelon(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.at(row, col).inverse().expect("pivot nonzero");
            for c in 0..m.cols {
                m.set(row, c, m.at(row, c) * &inv);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in 0..m.cols {
                        let v = m.at(r, c) - &(&factor * m.at(row, c));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn determinant(&self) -> RingElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let ring = self.entries[0].ring().clone();
        let mut m = self.clone();
        let mut det = ring.one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                return ring.zero();
            };
            if p != col {
                det = det.neg();
                for c in 0..m.cols {
                    let a = m.at(col, c).clone();
                    let b = m.at(p, c).clone();
                    m.set(col, c, b);
                    m.set(p, c, a);
                }
            }
            let pivot = m.at(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("pivot nonzero");
            for r in col + 1..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = &(m.at(r, col).clone()) * &inv;
                for c in col..m.cols {
                    let v = m.at(r, c) - &(&factor * m.at(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Solves the square system `self * x = b` exactly.
    pub fn solve(&self, b: &[RingElement]) -> Result<Vec<RingElement>, LinalgError> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} system with rhs of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let mut aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        for col in 0..self.cols {
            let Some(p) = (col..aug.rows).find(|&r| !aug.at(r, col).is_zero()) else {
                return Err(LinalgError::Singular { column: col });
            };
            if p != col {
                for c in 0..aug.cols {
                    let a = aug.at(col, c).clone();
                    let b2 = aug.at(p, c).clone();
                    aug.set(col, c, b2);
                    aug.set(p, c, a);
                }
            }
            let inv = aug.at(col, col).inverse().expect("pivot nonzero");
            for c in 0..aug.cols {
                aug.set(col, c, aug.at(col, c) * &inv);
            }
            for r in 0..aug.rows {
                if r != col && !aug.at(r, col).is_zero() {
                    let factor = aug.at(r, col).clone();
                    for c in 0..aug.cols {
                        let v = aug.at(r, c) - &(&factor * aug.at(col, c));
                        aug.set(r, c, v);
                    }
                }
            }
        }
        Ok(aug.column(self.cols))
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        assert_eq!(self.rows, self.cols);
        let ring = self.entries[0].ring().clone();
        let cols: Result<Vec<Vec<RingElement>>, LinalgError> = (0..self.cols)
            .map(|j| {
                let e: Vec<RingElement> = (0..self.rows)
                    .map(|r| if r == j { ring.one() } else { ring.zero() })
                    .collect();
                self.solve(&e)
            })
            .collect();
        let cols = cols?;
        Ok(Matrix::from_fn(self.rows, self.cols, |r, c| cols[c][r].clone()))
    }

    /// Least structure solve of the possibly rectangular `self * x = b`;
    /// `Err(Inconsistent)` when `b` lies outside the column span.
    pub fn solve_in_span(&self, b: &[RingElement]) -> Result<Vec<RingElement>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "rhs length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (ech, pivots) = aug.echelon();
        if pivots.contains(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let ring = if self.entries.is_empty() {
            b[0].ring().clone()
        } else {
            self.entries[0].ring().clone()
        };
        let mut x = vec![ring.zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = ech.at(row, self.cols).clone();
        }
        Ok(x)
    }

    /// Basis of the right nullspace (columns are kernel vectors).
    pub fn nullspace(&self) -> Vec<Vec<RingElement>> {
        let ring = self.entries[0].ring().clone();
        let (ech, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![ring.zero(); self.cols];
                v[fc] = ring.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = ech.at(row, fc).neg();
                }
                v
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let cells: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(ring: &CoefficientRing, n: i64) -> RingElement {
        ring.from_int(n)
    }

    #[test]
    fn solve_and_det() {
        let r = CoefficientRing::rationals();
        let m = Matrix::from_rows(vec![
            vec![q(&r, 2), q(&r, 1)],
            vec![q(&r, 1), q(&r, 1)],
        ]);
        assert_eq!(m.determinant(), q(&r, 1));
        let x = m.solve(&[q(&r, 3), q(&r, 2)]).unwrap();
        assert_eq!(x, vec![q(&r, 1), q(&r, 1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&r, 2));
    }

    #[test]
    fn singular_reports_column() {
        let r = CoefficientRing::rationals();
        let m = Matrix::from_rows(vec![
            vec![q(&r, 1), q(&r, 2)],
            vec![q(&r, 2), q(&r, 4)],
        ]);
        assert_eq!(m.determinant(), q(&r, 0));
        assert_eq!(
            m.solve(&[q(&r, 1), q(&r, 0)]),
            Err(LinalgError::Singular { column: 1 })
        );
    }

    #[test]
    fn rank_and_span() {
        let f = CoefficientRing::fraction_field(&["t"]).unwrap();
        let t = f.var(0);
        // columns (1, t) and (t, t^2) are proportional
        let m = Matrix::from_rows(vec![
            vec![f.one(), t.clone()],
            vec![t.clone(), &t * &t],
        ]);
        assert_eq!(m.rank(), 1);
        let sol = m.solve_in_span(&[t.clone(), &t * &t]).unwrap();
        assert_eq!(m.mul_vec(&sol), vec![t.clone(), &t * &t]);
        assert_eq!(
            m.solve_in_span(&[f.one(), f.one()]),
            Err(LinalgError::Inconsistent)
        );
        assert_eq!(m.nullspace().len(), 1);
    }
}
