//! Exact Gaussian elimination and rank over Q(√2, √3).
//!
//! Classical elimination with exact field inversion: the matrices here are
//! at most 8×9 and scalar inversion is cheap. Pivots are the first nonzero
//! entry in column order; pivot rows are normalized to 1 so that appended
//! rows reduce by plain back-substitution.

use crate::scalar::Scalar;
use crate::weight::Weight;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("row of length {got} appended to a matrix with {want} columns")]
pub struct DimensionMismatch {
    pub want: usize,
    pub got: usize,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    /// The augmented matrix `(self | b)`.
    pub fn augment(&self, b: &Weight) -> ExactMatrix {
        assert_eq!(b.dim(), self.rows);
        let mut out = ExactMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
            *out.at_mut(i, self.cols) = b.0[i].clone();
        }
        out
    }
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            writeln!(
                f,
                "[{}]",
                (0..self.cols)
                    .map(|j| self.at(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        Ok(())
    }
}

/// Row-echelon form with unit pivots; rows below `rank` are exactly zero.
#[derive(Clone)]
pub struct EchelonForm {
    pub matrix: ExactMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

/// Exact row reduction.
pub fn echelon(m: &ExactMatrix) -> EchelonForm {
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        let Some(src) = (pivot_row..a.rows).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for j in 0..a.cols {
                let hi = pivot_row * a.cols + j;
                let lo = src * a.cols + j;
                a.data.swap(hi, lo);
            }
        }
        let inv = a.at(pivot_row, col).invert().expect("pivot is nonzero");
        for j in col..a.cols {
            let v = a.at(pivot_row, j) * &inv;
            *a.at_mut(pivot_row, j) = v;
        }
        for r in 0..a.rows {
            if r == pivot_row || a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).clone();
            for j in col..a.cols {
                let delta = &factor * a.at(pivot_row, j);
                *a.at_mut(r, j) -= &delta;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    EchelonForm {
        matrix: a,
        rank: pivot_cols.len(),
        pivot_cols,
    }
}

/// Rank of the original matrix with `row` appended, computed by one
/// back-substitution pass against the echelon rows; `e` is not modified.
pub fn rank_with_row(e: &EchelonForm, row: &[Scalar]) -> Result<usize, DimensionMismatch> {
    if row.len() != e.matrix.cols {
        return Err(DimensionMismatch {
            want: e.matrix.cols,
            got: row.len(),
        });
    }
    let mut work: Vec<Scalar> = row.to_vec();
    for (r, &col) in e.pivot_cols.iter().enumerate() {
        if work[col].is_zero() {
            continue;
        }
        let factor = work[col].clone();
        for j in col..e.matrix.cols {
            let delta = &factor * e.matrix.at(r, j);
            work[j] -= &delta;
        }
    }
    if work.iter().all(Scalar::is_zero) {
        Ok(e.rank)
    } else {
        Ok(e.rank + 1)
    }
}

/// A basis of the kernel of the (unaugmented) matrix whose echelon is `e`:
/// one vector per free column, with that free variable set to 1.
pub fn kernel_basis(e: &EchelonForm) -> Vec<Weight> {
    let cols = e.matrix.cols;
    let mut out = Vec::new();
    for free in 0..cols {
        if e.pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![Scalar::zero(); cols];
        x[free] = Scalar::one();
        for (r, &col) in e.pivot_cols.iter().enumerate().rev() {
            let mut value = Scalar::zero();
            for j in col + 1..cols {
                let term = e.matrix.at(r, j) * &x[j];
                value -= &term;
            }
            x[col] = value;
        }
        out.push(Weight(x));
    }
    out
}

/// Reads `e` as the echelon of an augmented system `(A | b)` and returns one
/// exact solution with all free variables set to zero, or `None` when the
/// system is inconsistent (a pivot sits in the augmentation column).
pub fn sample_solution(e: &EchelonForm) -> Option<Weight> {
    let vars = e.matrix.cols - 1;
    if e.pivot_cols.iter().any(|&c| c == vars) {
        return None;
    }
    let mut x = vec![Scalar::zero(); vars];
    // Pivots are unit and the echelon may not be fully reduced, so solve
    // bottom-up.
    for (r, &col) in e.pivot_cols.iter().enumerate().rev() {
        let mut value = e.matrix.at(r, vars).clone();
        for j in col + 1..vars {
            let term = e.matrix.at(r, j) * &x[j];
            value -= &term;
        }
        x[col] = value;
    }
    Some(Weight(x))
}
