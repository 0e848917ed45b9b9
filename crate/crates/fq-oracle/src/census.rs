//! Chord lines of rational curves and Frobenius-orbit censuses of
//! secant lines, by exhaustive enumeration over finite fields.
//!
//! # How a divisor's span is computed
//!
//! A binary form `q` of degree `m` cuts a length-`m` divisor on the
//! curve.  Inside the space of degree-`d` binary forms, the multiples
//! of `q` span a codimension-`m` subspace; reducing each curve
//! component modulo that subspace leaves a residue supported on the `m`
//! non-pivot coordinates.  Stacking the residues gives an
//! `(n+1) x m` matrix whose column space is exactly the linear span of
//! the divisor, because evaluating the residue basis at a root of `q`
//! writes the corresponding curve point as a combination of those
//! columns.  The divisor spans a line iff that matrix has rank 2.
//!
//! # How geometric points are counted
//!
//! For each extension degree `e` the census counts `N_e`, the number of
//! secant divisors rational over `F_{p^e}`.  A closed point of degree
//! `d` contributes `d` rational points over `F_{p^e}` exactly when
//! `d | e`, so the number `a_e` of closed points of degree `e` follows
//! by the recursion `a_e = (N_e - sum_{d | e, d < e} d * a_d) / e`, and
//! the weighted geometric count is `sum e * a_e`.  The divisions must
//! be exact — Frobenius orbits have whole sizes — and are asserted.

use std::collections::BTreeMap;

use rand::RngCore;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::field::FqField;
use crate::forms::{cubic_monomials, CubicForm, RncCurve};
use crate::linalg;
use crate::lines::FqLine;
use crate::{make_field, OracleError};

/// Printed alongside census results: membership of the curve in the
/// cubic and secancy of every reported line are verified exactly, but
/// smoothness of a generated cubic is not checked, so censuses certify
/// generic instances rather than arbitrary ones.
pub const SMOOTHNESS_NOTE: &str =
    "note: the cubic is not checked for smoothness; counts certify this instance, \
     not every member of the family";

// ---------------------------------------------------------------------------
// Divisor spans and chord lines
// ---------------------------------------------------------------------------

/// Reusable buffers for [`divisor_span`].  Census sweeps call it once
/// per divisor of a projective space, so the working matrices must not
/// be reallocated per call; rayon's `map_init` hands each worker its
/// own scratch.
#[derive(Default)]
struct SpanScratch {
    multiples: Vec<Vec<u32>>,
    non_pivots: Vec<usize>,
    residue: Vec<u32>,
    /// After a call, the first `rank` rows hold the RREF span basis.
    span: Vec<Vec<u32>>,
}

/// Rank of the linear span of the divisor `{q = 0}` on the curve; the
/// RREF basis of the span is left in `scratch.span[..rank]`.  The
/// divisor has degree `m = q.len() - 1`.
fn divisor_span(field: &FqField, curve: &RncCurve, q: &[u32], scratch: &mut SpanScratch) -> usize {
    let d = curve.degree();
    let m = q.len() - 1;
    assert!(m >= 1 && m <= d, "divisor degree out of range");
    assert!(q.iter().any(|&c| c != 0), "zero form cuts no divisor");

    // Multiples q * s^{d-m-j} t^j, j = 0..=d-m, as degree-d coefficient rows.
    scratch.multiples.truncate(d - m + 1);
    while scratch.multiples.len() < d - m + 1 {
        scratch.multiples.push(Vec::new());
    }
    for (j, row) in scratch.multiples.iter_mut().enumerate() {
        row.clear();
        row.resize(d + 1, 0);
        row[j..j + m + 1].copy_from_slice(q);
    }
    let pivots = linalg::rref(field, &mut scratch.multiples);
    assert_eq!(
        pivots.len(),
        d - m + 1,
        "multiples of a nonzero form are linearly independent"
    );
    scratch.non_pivots.clear();
    scratch.non_pivots.extend((0..=d).filter(|c| !pivots.contains(c)));

    // Reduce each component modulo the multiples; the residue lives on
    // the non-pivot coordinates, and the span of the divisor is the
    // column space of the residue matrix.
    scratch.span.truncate(m);
    while scratch.span.len() < m {
        scratch.span.push(Vec::new());
    }
    for row in scratch.span.iter_mut() {
        row.clear();
        row.resize(curve.n() + 1, 0);
    }
    for (i, comp) in curve.components().iter().enumerate() {
        scratch.residue.clear();
        scratch.residue.extend_from_slice(comp);
        for (row, &pc) in scratch.multiples.iter().zip(&pivots) {
            let factor = scratch.residue[pc];
            if factor != 0 {
                for (r, &m_c) in scratch.residue.iter_mut().zip(row) {
                    *r = field.sub(*r, field.mul(factor, m_c));
                }
            }
        }
        debug_assert!(pivots.iter().all(|&pc| scratch.residue[pc] == 0));
        for (t, &np) in scratch.non_pivots.iter().enumerate() {
            scratch.span[t][i] = scratch.residue[np];
        }
    }
    linalg::rref(field, &mut scratch.span).len()
}

/// The chord (2-secant line) of the curve through the length-2 divisor
/// cut by the nonzero binary quadratic `q = q0 s^2 + q1 st + q2 t^2`.
///
/// Fails when the divisor does not span a line — for a nondegenerate
/// curve of degree at least 2 that means a degenerate parametrization.
pub fn chord_line(curve: &RncCurve, q: &[u32; 3]) -> Result<FqLine, OracleError> {
    assert!(curve.degree() >= 2, "chords need degree at least 2");
    assert!(q.iter().any(|&c| c != 0), "q must be nonzero");
    let mut scratch = SpanScratch::default();
    let rank = divisor_span(curve.field(), curve, q, &mut scratch);
    if rank != 2 {
        return Err(OracleError::DegenerateSpan { rank });
    }
    Ok(FqLine::from_rref_rows(
        scratch.span[0].clone(),
        scratch.span[1].clone(),
    ))
}

// ---------------------------------------------------------------------------
// Projective enumeration helpers
// ---------------------------------------------------------------------------

/// Number of points of `P^m(F_q)`.
fn proj_count(q: u32, m: usize) -> u64 {
    let mut total = 0u64;
    let mut pow = 1u64;
    for _ in 0..=m {
        total += pow;
        pow *= u64::from(q);
    }
    total
}

/// The `index`-th point of `P^m(F_q)` in a fixed order: representatives
/// are scaled so the first nonzero coordinate is 1, grouped by the
/// position of that coordinate.
fn proj_point(q: u32, m: usize, index: u64) -> Vec<u32> {
    let mut v = vec![0u32; m + 1];
    let mut index = index;
    for fz in 0..=m {
        let block = u64::from(q).pow((m - fz) as u32);
        if index < block {
            v[fz] = 1;
            for pos in (fz + 1..=m).rev() {
                v[pos] = (index % u64::from(q)) as u32;
                index /= u64::from(q);
            }
            return v;
        }
        index -= block;
    }
    panic!("projective index out of range");
}

// ---------------------------------------------------------------------------
// Census result type
// ---------------------------------------------------------------------------

/// A secant line rational over one extension field, as evidence: the
/// divisor's binary form (coefficients in that extension) and the
/// canonical line it spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantWitness {
    pub divisor: Vec<u32>,
    pub line: FqLine,
}

/// Outcome of a secant census over `F_p` and its extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecantCensus {
    /// Characteristic of the base field.
    pub p: u32,
    /// Largest extension degree swept.
    pub k_max: u32,
    /// `rational_counts[e - 1]` is `N_e`, the number of secant divisors
    /// rational over `F_{p^e}`.
    pub rational_counts: Vec<u64>,
    /// `degree_counts[e]` is `a_e`, the number of closed points (i.e.
    /// Frobenius orbits) of degree `e`.
    pub degree_counts: BTreeMap<u32, u64>,
    /// `sum e * a_e`: geometric points found within the sweep, each
    /// counted once however many conjugates it has.
    pub geometric_total: u64,
    /// Witnesses keyed by extension degree: every divisor rational over
    /// `F_{p^e}` with its line.  Not serialized; counts are the result,
    /// witnesses are for re-verification.
    #[serde(skip)]
    pub witnesses: BTreeMap<u32, Vec<SecantWitness>>,
}

fn orbit_counts(rational_counts: &[u64]) -> (BTreeMap<u32, u64>, u64) {
    let mut degree_counts = BTreeMap::new();
    for e in 1..=rational_counts.len() as u32 {
        let mut rest = 0u64;
        for d in 1..e {
            if e % d == 0 {
                rest += u64::from(d) * degree_counts[&d];
            }
        }
        let n_e = rational_counts[e as usize - 1];
        let diff = n_e
            .checked_sub(rest)
            .expect("rational points over subfields persist in extensions");
        assert_eq!(
            diff % u64::from(e),
            0,
            "Frobenius orbits of degree {e} must contribute {e} points each"
        );
        degree_counts.insert(e, diff / u64::from(e));
    }
    let total = degree_counts.iter().map(|(&e, &a)| u64::from(e) * a).sum();
    (degree_counts, total)
}

// ---------------------------------------------------------------------------
// Two-secant census
// ---------------------------------------------------------------------------

/// Counts, Frobenius-orbit-weighted, the chords of a degree-4 rational
/// curve in `P^4` that lie on a given cubic threefold, sweeping divisors
/// rational over `F_{p^e}` for `e = 1..=k_max` (`k_max <= 4`).
///
/// The curve and cubic must be defined over a prime field, and the
/// curve must lie on the cubic.  Chords are parametrized by the `P^2`
/// of binary quadratics; each one's span is computed exactly and the
/// cubic is restricted to it symbolically.  For a smooth cubic the
/// weighted count can never exceed 16; an instance that exceeds the
/// bound is reported as special rather than counted.
pub fn two_secant_census(
    curve: &RncCurve,
    cubic: &CubicForm,
    k_max: u32,
) -> Result<SecantCensus, OracleError> {
    assert_eq!(curve.n(), 4, "census lives in P^4");
    assert_eq!(curve.degree(), 4, "two-secant census expects a quartic");
    assert_eq!(cubic.n(), 4, "cubic must be a threefold form");
    assert_eq!(curve.field(), cubic.field(), "field mismatch");
    assert_eq!(curve.field().k(), 1, "census instances live over a prime field");
    assert!((1..=4).contains(&k_max), "k_max must be in 1..=4");
    if !cubic.contains_curve(curve) {
        return Err(OracleError::CurveNotOnCubic);
    }

    let p = curve.field().p();
    let mut rational_counts = Vec::new();
    let mut witnesses = BTreeMap::new();
    for e in 1..=k_max {
        let ext = make_field(p, e)?;
        let curve_e = curve.lift_to(&ext);
        let cubic_e = cubic.lift_to(&ext);
        let total = proj_count(ext.q(), 2);
        let mut found: Vec<SecantWitness> = (0..total)
            .into_par_iter()
            .map_init(
                SpanScratch::default,
                |scratch, index| -> Result<Option<SecantWitness>, OracleError> {
                    let q = proj_point(ext.q(), 2, index);
                    let rank = divisor_span(&ext, &curve_e, &q, scratch);
                    if rank != 2 {
                        return Err(OracleError::DegenerateSpan { rank });
                    }
                    let restricted =
                        cubic_e.restrict_to_rows(&scratch.span[0], &scratch.span[1]);
                    if restricted != [0, 0, 0, 0] {
                        return Ok(None);
                    }
                    let line = FqLine::from_rref_rows(
                        scratch.span[0].clone(),
                        scratch.span[1].clone(),
                    );
                    Ok(Some(SecantWitness { divisor: q, line }))
                },
            )
            .filter_map(Result::transpose)
            .collect::<Result<_, _>>()?;
        found.sort_by(|a, b| a.divisor.cmp(&b.divisor));
        rational_counts.push(found.len() as u64);
        witnesses.insert(e, found);
    }

    let (degree_counts, geometric_total) = orbit_counts(&rational_counts);
    if geometric_total > 16 {
        // Only a special cubic carries more — e.g. the chord surface of
        // the curve is itself a cubic threefold, and handing it in makes
        // every chord count.  Refuse rather than certify a bogus number.
        return Err(OracleError::SpecialInstance {
            counted: "chords",
            found: geometric_total,
            bound: 16,
        });
    }
    Ok(SecantCensus {
        p,
        k_max,
        rational_counts,
        degree_counts,
        geometric_total,
        witnesses,
    })
}

// ---------------------------------------------------------------------------
// Three-secant census
// ---------------------------------------------------------------------------

/// Counts, Frobenius-orbit-weighted, the 3-secant lines of a degree-5
/// rational curve in `P^4`, sweeping divisors rational over `F_{p^e}`
/// for `e = 1..=k` (`k <= 2`).
///
/// Divisors are the `P^3` of binary cubics; a divisor's three points
/// span a line exactly when the residue matrix has rank 2.  A general
/// quintic has a unique 3-secant; a projection special enough to exceed
/// that bound is reported as an error, not counted.
pub fn three_secant_census(curve: &RncCurve, k: u32) -> Result<SecantCensus, OracleError> {
    assert_eq!(curve.n(), 4, "census lives in P^4");
    assert_eq!(curve.field().k(), 1, "census instances live over a prime field");
    assert!((1..=2).contains(&k), "k must be 1 or 2");
    if curve.degree() != 5 {
        return Err(OracleError::WrongDegree {
            expected: 5,
            found: curve.degree(),
        });
    }
    if !curve.is_nondegenerate() {
        return Err(OracleError::DegenerateCurve);
    }

    let p = curve.field().p();
    let mut rational_counts = Vec::new();
    let mut witnesses = BTreeMap::new();
    for e in 1..=k {
        let ext = make_field(p, e)?;
        let curve_e = curve.lift_to(&ext);
        let total = proj_count(ext.q(), 3);
        let mut found: Vec<SecantWitness> = (0..total)
            .into_par_iter()
            .map_init(SpanScratch::default, |scratch, index| {
                let q = proj_point(ext.q(), 3, index);
                let rank = divisor_span(&ext, &curve_e, &q, scratch);
                if rank == 2 {
                    let line = FqLine::from_rref_rows(
                        scratch.span[0].clone(),
                        scratch.span[1].clone(),
                    );
                    Some(SecantWitness { divisor: q, line })
                } else {
                    None
                }
            })
            .flatten()
            .collect();
        found.sort_by(|a, b| a.divisor.cmp(&b.divisor));
        rational_counts.push(found.len() as u64);
        witnesses.insert(e, found);
    }

    let (degree_counts, geometric_total) = orbit_counts(&rational_counts);
    if geometric_total > 1 {
        // A projection center sitting on a chord variety gives the image
        // curve a node, and whole pencils through the node count as
        // 3-secants.  Such a projection proves nothing about the general
        // quintic, so report it instead of the inflated count.
        return Err(OracleError::SpecialInstance {
            counted: "3-secant lines",
            found: geometric_total,
            bound: 1,
        });
    }
    Ok(SecantCensus {
        p,
        k_max: k,
        rational_counts,
        degree_counts,
        geometric_total,
        witnesses,
    })
}

// ---------------------------------------------------------------------------
// Cubics through a curve
// ---------------------------------------------------------------------------

/// Condition matrix for cubics vanishing on the curve: one column per
/// cubic monomial of `P^4`, one row per coefficient of the degree-`3d`
/// restriction to the curve.
fn vanishing_conditions(curve: &RncCurve) -> Vec<Vec<u32>> {
    assert_eq!(curve.n(), 4, "cubics live in P^4");
    let field = curve.field();
    let monomials = cubic_monomials(4);
    let nrows = 3 * curve.degree() + 1;
    let mut matrix = vec![vec![0u32; monomials.len()]; nrows];
    for (col, m) in monomials.iter().enumerate() {
        let mut restricted = vec![1u32];
        for (v, &e) in m.iter().enumerate() {
            for _ in 0..e {
                restricted = crate::forms::bf_mul(field, &restricted, curve.component(v));
            }
        }
        for (row, &c) in restricted.iter().enumerate() {
            matrix[row][col] = c;
        }
    }
    matrix
}

/// Dimension of the space of cubic forms on `P^4` vanishing on the
/// curve (as a vector space of coefficient tuples).
pub fn cubics_through_curve_dim(curve: &RncCurve) -> usize {
    let matrix = vanishing_conditions(curve);
    cubic_monomials(4).len() - linalg::rank(curve.field(), &matrix)
}

/// A seeded pseudorandom cubic form in `P^4` vanishing on the curve.
///
/// Vanishing on a degree-`d` rational curve imposes `3d + 1` linear
/// conditions on the 35 cubic coefficients; the kernel of that system
/// is computed exactly and a nonzero element is drawn from it using a
/// counter-based stream keyed by `seed`, so results are reproducible
/// bit-for-bit.  The restriction of the result to the curve is
/// re-checked to be identically zero before returning.
pub fn cubic_through_curve(curve: &RncCurve, seed: u64) -> CubicForm {
    let field = curve.field().clone();
    let monomials = cubic_monomials(4);
    let matrix = vanishing_conditions(curve);
    let basis = linalg::kernel_basis(&field, &matrix);
    assert!(
        !basis.is_empty(),
        "no cubic vanishes on a curve of this degree"
    );

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut coeffs = vec![0u32; monomials.len()];
        for b in &basis {
            let lambda = rng.next_u32() % field.q();
            if lambda == 0 {
                continue;
            }
            for (c, &bi) in coeffs.iter_mut().zip(b) {
                *c = field.add(*c, field.mul(lambda, bi));
            }
        }
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let cubic = CubicForm::from_dense(&field, 4, coeffs);
        assert!(
            cubic.contains_curve(curve),
            "kernel elements must restrict to zero"
        );
        return cubic;
    }
}
