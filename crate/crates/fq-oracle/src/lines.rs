//! Lines in `P^n(F_q)` and exhaustive enumeration of the lines on a
//! cubic hypersurface.
//!
//! A line is stored as the reduced row echelon form of any 2 x (n+1)
//! spanning matrix.  RREF is a complete invariant of the row space, so
//! two spanning pairs describe the same line iff their `FqLine` values
//! are bit-identical — which is what lets enumeration results be
//! deduplicated, sorted, and compared across runs and thread counts.

use rayon::prelude::*;
use serde::Serialize;

use crate::field::FqField;
use crate::forms::CubicForm;
use crate::linalg;
use crate::{OracleError, LINE_BUDGET};

/// A line in `P^n(F_q)`, canonically represented by the RREF basis of
/// its span.  Ordering and equality are on that representation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FqLine {
    rows: [Vec<u32>; 2],
}

impl FqLine {
    /// Canonicalizes the span of two vectors.  Fails when they do not
    /// span a plane (rank two), i.e. when they are proportional.
    pub fn from_span(field: &FqField, a: &[u32], b: &[u32]) -> Result<FqLine, OracleError> {
        assert_eq!(a.len(), b.len(), "spanning vectors of different lengths");
        let mut m = vec![a.to_vec(), b.to_vec()];
        let rank = linalg::rref(field, &mut m).len();
        if rank != 2 {
            return Err(OracleError::DegenerateSpan { rank });
        }
        let mut it = m.into_iter();
        Ok(FqLine {
            rows: [it.next().unwrap(), it.next().unwrap()],
        })
    }

    /// Internal constructor for rows already in RREF.
    pub(crate) fn from_rref_rows(r0: Vec<u32>, r1: Vec<u32>) -> FqLine {
        FqLine { rows: [r0, r1] }
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn rows(&self) -> &[Vec<u32>; 2] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    /// Whether the point (given by homogeneous coordinates, not all
    /// zero) lies on the line.
    pub fn contains_point(&self, field: &FqField, point: &[u32]) -> bool {
        assert_eq!(point.len(), self.rows[0].len());
        assert!(point.iter().any(|&c| c != 0), "not a projective point");
        let m = vec![self.rows[0].clone(), self.rows[1].clone(), point.to_vec()];
        linalg::rank(field, &m) == 2
    }

    /// Whether two lines in the same `P^n` intersect.  Two distinct
    /// lines meet iff their spans together have rank at most 3.
    pub fn meets(&self, field: &FqField, other: &FqLine) -> bool {
        assert_eq!(self.n(), other.n(), "lines in different spaces");
        let m = vec![
            self.rows[0].clone(),
            self.rows[1].clone(),
            other.rows[0].clone(),
            other.rows[1].clone(),
        ];
        linalg::rank(field, &m) <= 3
    }

    /// All `q + 1` rational points of the line.
    pub fn points(&self, field: &FqField) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(field.q() as usize + 1);
        out.push(self.rows[1].clone());
        for lambda in field.elements() {
            let pt: Vec<u32> = self.rows[0]
                .iter()
                .zip(&self.rows[1])
                .map(|(&a, &b)| field.add(a, field.mul(lambda, b)))
                .collect();
            out.push(pt);
        }
        out
    }
}

/// One RREF shape: pivot columns `(i, j)` with the remaining entries of
/// both rows free.  Shapes partition the Grassmannian of lines.
struct Shape {
    i: usize,
    j: usize,
    /// Free positions of row 0 and row 1, in the decode order used by
    /// `line_at` (row 1 varies fastest).
    free: Vec<(usize, usize)>,
    /// Candidate lines of this shape: `q^free.len()`.
    count: u64,
    /// Cumulative offset of this shape in the global candidate index.
    offset: u64,
}

fn shapes(n: usize, q: u32) -> Vec<Shape> {
    let mut out = Vec::new();
    let mut offset = 0u64;
    for i in 0..n {
        for j in (i + 1)..=n {
            let mut free = Vec::new();
            for col in (i + 1)..=n {
                if col != j {
                    free.push((0, col));
                }
            }
            for col in (j + 1)..=n {
                free.push((1, col));
            }
            let count = u64::from(q).pow(free.len() as u32);
            out.push(Shape {
                i,
                j,
                free,
                count,
                offset,
            });
            offset += count;
        }
    }
    out
}

/// Decodes global candidate index -> RREF rows for the shape covering it.
fn line_at(shapes: &[Shape], q: u32, n: usize, index: u64) -> ([u32; 5], [u32; 5]) {
    let shape = shapes
        .iter()
        .rfind(|s| s.offset <= index)
        .expect("index below total");
    let mut rows = ([0u32; 5], [0u32; 5]);
    rows.0[shape.i] = 1;
    rows.1[shape.j] = 1;
    let mut rem = index - shape.offset;
    for &(r, col) in shape.free.iter().rev() {
        let digit = (rem % u64::from(q)) as u32;
        rem /= u64::from(q);
        if r == 0 {
            rows.0[col] = digit;
        } else {
            rows.1[col] = digit;
        }
    }
    debug_assert_eq!(rem, 0);
    let _ = n;
    rows
}

/// Every line of `P^n(F_q)` contained in the cubic hypersurface
/// `{form = 0}`, for `n` in `{3, 4}`.
///
/// Candidates are the RREF matrices themselves — each line of the
/// Grassmannian appears exactly once — and membership is decided by the
/// exact symbolic restriction of the cubic to the candidate, never by
/// sampling points.  The scan is embarrassingly parallel; results are
/// collected and sorted canonically, so the output is identical for
/// every thread count and work partition.
///
/// Fails when the Grassmannian has more than [`LINE_BUDGET`] points.
pub fn lines_in_hypersurface(form: &CubicForm) -> Result<Vec<FqLine>, OracleError> {
    let n = form.n();
    assert!(n == 3 || n == 4, "only P^3 and P^4 are supported");
    let field = form.field();
    let q = field.q();
    let shapes = shapes(n, q);
    let total: u64 = shapes.iter().map(|s| s.count).sum();
    if total > LINE_BUDGET {
        return Err(OracleError::BudgetExceeded {
            candidates: total,
            budget: LINE_BUDGET,
        });
    }
    let mut lines: Vec<FqLine> = (0..total)
        .into_par_iter()
        .filter_map(|index| {
            let (r0, r1) = line_at(&shapes, q, n, index);
            if form.restrict_to_rows(&r0[..=n], &r1[..=n]) == [0, 0, 0, 0] {
                Some(FqLine::from_rref_rows(r0[..=n].to_vec(), r1[..=n].to_vec()))
            } else {
                None
            }
        })
        .collect();
    lines.sort();
    Ok(lines)
}

/// Edges of the incidence graph on a list of lines: `(i, j)` with
/// `i < j` whenever lines `i` and `j` meet.
pub fn incidence_edges(field: &FqField, lines: &[FqLine]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if lines[i].meets(field, &lines[j]) {
                edges.push((i, j));
            }
        }
    }
    edges
}
