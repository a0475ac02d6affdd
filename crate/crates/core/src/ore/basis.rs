//! PBW basis of a multidegree component.
//!
//! Normal monomials of a given multidegree correspond one-to-one to `n x n`
//! nonnegative integer matrices with the prescribed row and column sums: the
//! entry `(i, j)` counts occurrences of `t^i_j`, and the sorted word is the
//! unique normal monomial with those counts.

use crate::algebra::{Generator, Monomial, MultiDegree};

use super::OreError;

pub fn enumerate_basis(d: &MultiDegree) -> Result<Vec<Monomial>, OreError> {
    if !d.is_balanced() {
        return Err(OreError::UnbalancedMultiDegree(d.clone()));
    }
    let n = d.rows.len();
    let mut out = Vec::new();
    let mut table = vec![0u32; n * n];
    let mut col_left = d.cols.clone();
    fill_row(0, d, &mut col_left, &mut table, &mut out);
    out.sort();
    Ok(out)
}

fn fill_row(row: usize, d: &MultiDegree, col_left: &mut [u32], table: &mut [u32], out: &mut Vec<Monomial>) {
    let n = d.rows.len();
    if row == n {
        if col_left.iter().all(|&c| c == 0) {
            out.push(table_to_monomial(n, table));
        }
        return;
    }
    fill_cell(row, 0, d.rows[row], d, col_left, table, out);
}

fn fill_cell(
    row: usize,
    col: usize,
    remaining: u32,
    d: &MultiDegree,
    col_left: &mut [u32],
    table: &mut [u32],
    out: &mut Vec<Monomial>,
) {
    let n = d.rows.len();
    if col == n - 1 {
        if remaining <= col_left[col] {
            table[row * n + col] = remaining;
            col_left[col] -= remaining;
            fill_row(row + 1, d, col_left, table, out);
            col_left[col] += remaining;
            table[row * n + col] = 0;
        }
        return;
    }
    for v in 0..=remaining.min(col_left[col]) {
        table[row * n + col] = v;
        col_left[col] -= v;
        fill_cell(row, col + 1, remaining - v, d, col_left, table, out);
        col_left[col] += v;
    }
    table[row * n + col] = 0;
}

fn table_to_monomial(n: usize, table: &[u32]) -> Monomial {
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for _ in 0..table[i * n + j] {
                v.push(Generator::new(i as u8 + 1, j as u8 + 1));
            }
        }
    }
    Monomial::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(rows: &[u32], cols: &[u32]) -> MultiDegree {
        MultiDegree::new(rows.to_vec(), cols.to_vec())
    }

    #[test]
    fn two_tables_at_unit_margins() {
        let b = enumerate_basis(&md(&[1, 1], &[1, 1])).unwrap();
        let s: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(s, vec!["t[1,1] t[2,2]", "t[1,2] t[2,1]"]);
    }

    #[test]
    fn single_generator_component() {
        let b = enumerate_basis(&md(&[1, 0], &[0, 1])).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].to_string(), "t[1,2]");
    }

    #[test]
    fn permutation_matrices() {
        assert_eq!(enumerate_basis(&md(&[1, 1, 1], &[1, 1, 1])).unwrap().len(), 6);
    }

    #[test]
    fn unbalanced_rejected() {
        assert!(enumerate_basis(&md(&[2, 0], &[1, 0])).is_err());
    }

    #[test]
    fn zero_multidegree_is_the_unit() {
        let b = enumerate_basis(&md(&[0, 0], &[0, 0])).unwrap();
        assert_eq!(b, vec![Monomial::unit()]);
    }
}
