//! Exact linear systems over `Q[q, q^-1]`.
//!
//! Forward elimination stays inside the Laurent ring: a pivot that is a unit
//! (a single term `c q^k`) divides exactly, any other pivot is handled by
//! cross-multiplication. Back-substitution runs in `Q(q)`, so the returned
//! solution may carry denominators; it does so only when a non-unit pivot was
//! unavoidable.

use crate::coeffs::{Field, Laurent, RatFunc};

#[derive(Clone, Debug)]
pub struct SolveOutcome<F> {
    /// Rank of the coefficient matrix.
    pub rank: usize,
    /// Rank of the augmented matrix; the system is consistent iff the two agree.
    pub augmented_rank: usize,
    pub solution: Option<Vec<RatFunc<F>>>,
    /// True when every pivot was a unit, in which case the solution is Laurent.
    pub unit_pivots: bool,
}

/// Solve `A x = b` where `matrix[i][j]` is the entry in row `i`, column `j`.
/// Free variables are set to zero.
pub fn solve<F: Field>(matrix: &[Vec<Laurent<F>>], rhs: &[Laurent<F>]) -> SolveOutcome<F> {
    let nrows = matrix.len();
    assert_eq!(nrows, rhs.len(), "right-hand side length must match the row count");
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<Laurent<F>>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();

    let mut row_used = vec![false; nrows];
    let mut col_used = vec![false; ncols];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut unit_pivots = true;

    while let Some((pr, pc)) = choose_pivot(&rows, &row_used, &col_used) {
        row_used[pr] = true;
        col_used[pc] = true;
        pivots.push((pr, pc));
        let pivot_row = rows[pr].clone();
        let p = pivot_row[pc].clone();
        let unit = p.is_unit();
        unit_pivots &= unit;
        for (r, used) in row_used.iter().enumerate() {
            if *used || rows[r][pc].is_zero() {
                continue;
            }
            let a = rows[r][pc].clone();
            if unit {
                let f = a.div_unit(&p).expect("unit pivot divides exactly");
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            } else {
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = &(&p * &*x) - &(&a * y);
                }
            }
            debug_assert!(rows[r][pc].is_zero());
        }
    }

    let rank = pivots.len();
    let inconsistent = (0..nrows).any(|r| !row_used[r] && !rows[r][ncols].is_zero());
    let augmented_rank = rank + usize::from(inconsistent);
    if inconsistent {
        return SolveOutcome {
            rank,
            augmented_rank,
            solution: None,
            unit_pivots,
        };
    }

    let mut x = vec![RatFunc::zero(); ncols];
    for &(pr, pc) in pivots.iter().rev() {
        let row = &rows[pr];
        let mut acc = RatFunc::from_laurent(row[ncols].clone());
        for (c, a) in row[..ncols].iter().enumerate() {
            if c != pc && !a.is_zero() && !x[c].is_zero() {
                acc = &acc - &(&RatFunc::from_laurent(a.clone()) * &x[c]);
            }
        }
        x[pc] = acc
            .checked_div(&RatFunc::from_laurent(row[pc].clone()))
            .expect("pivot entries are nonzero");
    }
    SolveOutcome {
        rank,
        augmented_rank,
        solution: Some(x),
        unit_pivots,
    }
}

/// Rank of a Laurent matrix.
pub fn rank<F: Field>(matrix: &[Vec<Laurent<F>>]) -> usize {
    let zeros = vec![Laurent::zero(); matrix.len()];
    solve(matrix, &zeros).rank
}

// Prefer a unit pivot; otherwise the entry with the fewest terms. Ties go to
// the column with the fewest nonzeros, then lowest indices.
fn choose_pivot<F: Field>(rows: &[Vec<Laurent<F>>], row_used: &[bool], col_used: &[bool]) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), (usize, usize))> = None;
    for (c, used) in col_used.iter().enumerate() {
        if *used {
            continue;
        }
        let mut count = 0;
        let mut cand: Option<(usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row_used[r] || row[c].is_zero() {
                continue;
            }
            count += 1;
            let len = row[c].len();
            if cand.is_none_or(|(l, _)| len < l) {
                cand = Some((len, r));
            }
        }
        if let Some((len, r)) = cand {
            let key = (len.min(2), count);
            if best.is_none_or(|(k, _)| key < k) {
                best = Some((key, (r, c)));
            }
        }
    }
    best.map(|(_, rc)| rc)
}
