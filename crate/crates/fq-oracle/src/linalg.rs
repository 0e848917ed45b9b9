//! Exact Gaussian elimination over `F_{p^k}`.
//!
//! Everything downstream — line canonicalization, chord spans, secant
//! rank tests, and the linear system behind the cubic generator — runs
//! through the single reduced-row-echelon routine here, so canonical
//! forms agree across the crate by construction.

use crate::field::FqField;

/// Reduced row echelon form computed in place.
///
/// Returns the pivot columns in order; the rank is their count.  Rows
/// are normalized to leading 1 and cleared above and below, and the
/// nonzero rows end up first, so equal row spaces produce identical
/// matrices.
pub fn rref(field: &FqField, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(src) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, src);
        let inv = field.inv(rows[r][col]);
        for c in col..ncols {
            rows[r][c] = field.mul(rows[r][c], inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for c in col..ncols {
                    let sub = field.mul(factor, rows[r][c]);
                    rows[i][c] = field.sub(rows[i][c], sub);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(field: &FqField, rows: &[Vec<u32>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of the right kernel of the matrix, one vector per free column,
/// in ascending free-column order.  Each basis vector has a 1 in its
/// free column, making the basis canonical.
pub fn kernel_basis(field: &FqField, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(m[row][free]);
        }
        basis.push(v);
    }
    basis
}
