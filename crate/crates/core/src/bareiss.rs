//! Fraction-free integer elimination for the verifier's hot loop.
//!
//! The exceptional realizations become purely rational after the diagonal
//! substitution λ̃ = Dλ with D = diag(2,...,2, 2√3) for E6 and
//! diag(2,...,2, √2) for E7, and every matrix of interest clears to integer
//! entries after scaling rows by 4. Rank questions are then settled by
//! one-step Bareiss elimination over i64 with i128 intermediates.
//!
//! Entry growth is bounded: Bareiss entries are minors of the input, so by
//! Hadamard's inequality they stay below (√9 · 33)⁸ < 2⁴⁴ for our 8×9
//! systems with entries of magnitude ≤ 33, and the i128 products below
//! 2⁸⁸. All divisions are checked for exactness and the narrowing
//! conversion is checked, so an out-of-model input aborts instead of
//! wrapping. Everything here is fixed-size and allocation-free.

/// Maximum ambient dimension (E7 plus one spare for type A at rank 7).
pub const MAX_DIM: usize = 8;

pub type Row = [i64; MAX_DIM];
pub type Mat = [Row; MAX_DIM];

pub fn zero_mat() -> Mat {
    [[0; MAX_DIM]; MAX_DIM]
}

#[inline]
fn exact_div(num: i128, den: i64) -> i64 {
    debug_assert!(den != 0);
    let den = den as i128;
    let q = num / den;
    assert!(q * den == num, "inexact Bareiss division");
    i64::try_from(q).expect("Bareiss entry overflow")
}

/// One pivot step, recorded so the same row operations can be replayed on
/// an appended column. `mults[i]` is the eliminated entry of row `i`.
#[derive(Clone, Copy, Debug, Default)]
struct Step {
    pivot_row: u8,
    swap_with: u8,
    pivot: i64,
    prev_pivot: i64,
    mults: Row,
}

/// Echelon data of an n×n integer matrix with the replay script.
#[derive(Clone, Debug)]
pub struct Elim {
    pub n: usize,
    pub rank: usize,
    pub rows: Mat,
    pub pivot_cols: [u8; MAX_DIM],
    steps: [Step; MAX_DIM],
}

/// One-step Bareiss elimination with rank-profile column skipping.
pub fn eliminate(mat: &Mat, n: usize) -> Elim {
    let mut a = *mat;
    let mut steps = [Step::default(); MAX_DIM];
    let mut pivot_cols = [0u8; MAX_DIM];
    let mut prev: i64 = 1;
    let mut r = 0usize;
    for col in 0..n {
        if r == n {
            break;
        }
        let Some(src) = (r..n).find(|&i| a[i][col] != 0) else {
            continue;
        };
        if src != r {
            a.swap(r, src);
        }
        let p = a[r][col];
        let step = &mut steps[r];
        step.pivot_row = r as u8;
        step.swap_with = src as u8;
        step.pivot = p;
        step.prev_pivot = prev;
        for i in r + 1..n {
            let m = a[i][col];
            step.mults[i] = m;
            for j in 0..n {
                let v = (p as i128) * (a[i][j] as i128) - (m as i128) * (a[r][j] as i128);
                a[i][j] = exact_div(v, prev);
            }
        }
        pivot_cols[r] = col as u8;
        prev = p;
        r += 1;
    }
    Elim {
        n,
        rank: r,
        rows: a,
        pivot_cols,
        steps,
    }
}

impl Elim {
    /// Replays the recorded row operations on an appended column, returning
    /// the transformed column. The appended system `(A | b)` is consistent
    /// exactly when every entry below the rank comes back zero.
    pub fn transform_column(&self, b: &Row) -> Row {
        let mut col = *b;
        for step in &self.steps[..self.rank] {
            let r = step.pivot_row as usize;
            if step.swap_with as usize != r {
                col.swap(r, step.swap_with as usize);
            }
            let p = step.pivot as i128;
            let head = col[r] as i128;
            for i in r + 1..self.n {
                let v = p * (col[i] as i128) - (step.mults[i] as i128) * head;
                col[i] = exact_div(v, step.prev_pivot);
            }
        }
        col
    }

    pub fn column_consistent(&self, transformed: &Row) -> bool {
        transformed[self.rank..self.n].iter().all(|&x| x == 0)
    }

    /// Whether appending the row `(row | rhs)` to the augmented system
    /// `(A | b)` leaves the rank unchanged, i.e. whether the extra equation
    /// is implied by the system. `b` must already be transformed by
    /// `transform_column`.
    pub fn row_is_implied(&self, b: &Row, row: &Row, rhs: i64) -> bool {
        let mut work = *row;
        let mut aug = rhs;
        let mut prev: i64 = 1;
        for k in 0..self.rank {
            let col = self.pivot_cols[k] as usize;
            let p = self.rows[k][col];
            let m = work[col];
            for j in 0..self.n {
                let v = (p as i128) * (work[j] as i128)
                    - (m as i128) * (self.rows[k][j] as i128);
                work[j] = exact_div(v, prev);
            }
            let v = (p as i128) * (aug as i128) - (m as i128) * (b[k] as i128);
            aug = exact_div(v, prev);
            prev = p;
        }
        work[..self.n].iter().all(|&x| x == 0) && aug == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> (Mat, usize) {
        let n = rows.len();
        let mut m = zero_mat();
        for (i, r) in rows.iter().enumerate() {
            m[i][..r.len()].copy_from_slice(r);
        }
        (m, n)
    }

    fn col(entries: &[i64]) -> Row {
        let mut c = [0; MAX_DIM];
        c[..entries.len()].copy_from_slice(entries);
        c
    }

    #[test]
    fn rank_of_simple_matrices() {
        let (m, n) = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(eliminate(&m, n).rank, 2);
        let (m, n) = mat(&[&[0, 0], &[0, 0]]);
        assert_eq!(eliminate(&m, n).rank, 0);
        let (m, n) = mat(&[&[0, 5], &[7, 0]]);
        assert_eq!(eliminate(&m, n).rank, 2);
    }

    #[test]
    fn consistency_decision() {
        // x + y = 1, 2x + 2y = 2 (consistent); = 3 (not).
        let (m, n) = mat(&[&[1, 1], &[2, 2]]);
        let e = eliminate(&m, n);
        assert_eq!(e.rank, 1);
        let b = e.transform_column(&col(&[1, 2]));
        assert!(e.column_consistent(&b));
        let b = e.transform_column(&col(&[1, 3]));
        assert!(!e.column_consistent(&b));
    }

    #[test]
    fn implied_rows() {
        // System: x − y = 0, y − z = 1. Then x − z = 1 is implied and
        // x + z = 0 is not.
        let (m, n) = mat(&[&[1, -1, 0], &[0, 1, -1], &[0, 0, 0]]);
        let e = eliminate(&m, n);
        assert_eq!(e.rank, 2);
        let b = e.transform_column(&col(&[0, 1, 0]));
        assert!(e.column_consistent(&b));
        assert!(e.row_is_implied(&b, &col(&[1, 0, -1]), 1));
        assert!(!e.row_is_implied(&b, &col(&[1, 0, -1]), 2));
        assert!(!e.row_is_implied(&b, &col(&[1, 0, 1]), 0));
    }

    #[test]
    fn replay_matches_direct_elimination_with_column() {
        // Eliminating (A | b) directly and replaying b over the script of A
        // must agree about consistency for a batch of awkward matrices.
        let cases: &[(&[&[i64]], &[i64])] = &[
            (&[&[2, -1, 0], &[4, -2, 0], &[0, 3, 3]], &[1, 2, 3]),
            (&[&[2, -1, 0], &[4, -2, 0], &[0, 3, 3]], &[1, 3, 3]),
            (&[&[0, 0, 2], &[0, 0, 4], &[1, 1, 1]], &[2, 4, 0]),
            (&[&[0, 0, 2], &[0, 0, 4], &[1, 1, 1]], &[2, 5, 0]),
        ];
        for (rows, rhs) in cases {
            let (m, n) = mat(rows);
            let e = eliminate(&m, n);
            let b = e.transform_column(&col(rhs));
            // Direct route: eliminate the n×(n+1) system embedded in a
            // square matrix with a zero row appended; consistency means no
            // pivot lands in the rhs column.
            let mut wide = zero_mat();
            for i in 0..n {
                wide[i][..n].copy_from_slice(&rows[i][..n]);
                wide[i][n] = rhs[i];
            }
            let direct = eliminate(&wide, n + 1);
            let consistent_direct = direct.pivot_cols[..direct.rank]
                .iter()
                .all(|&c| c as usize != n);
            assert_eq!(e.column_consistent(&b), consistent_direct);
        }
    }
}
