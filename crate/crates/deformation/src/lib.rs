//! Dimension arithmetic for deformations of curves on a cubic threefold.
//!
//! Everything reduces to line-bundle cohomology on `P¹` and `P¹×P¹` plus
//! one Euler-characteristic formula:
//!
//! - [`chi_normal`] computes `χ(N_{C/Y}) = (−K_Y·C) + (1 − p_a)(dim Y − 3)`,
//!   the expected dimension of the Hilbert scheme at a curve `C ⊂ Y`. On a
//!   cubic threefold `−K = 2H`, so the expected dimension is `2d`,
//!   independent of the genus (the second term carries `dim Y − 3 = 0`).
//! - [`expected_dims`] tabulates that `2d` value over the degree/genus
//!   range treated in the source analysis.
//! - [`h0_h1`] evaluates `h⁰`/`h¹` of a split bundle. On `P¹`,
//!   `h⁰(O(k)) = max(k+1, 0)` and `h¹(O(k)) = max(−k−1, 0)`. On `P¹×P¹`
//!   the Künneth rule gives, for `O(a,b)`,
//!   `h⁰ = h⁰(a)·h⁰(b)`, `h¹ = h⁰(a)·h¹(b) + h¹(a)·h⁰(b)`
//!   (and `h² = h¹(a)·h¹(b)`, not reported here). For nonnegative `a, b`
//!   this is the familiar `h⁰ = (a+1)(b+1)`, `h¹ = 0`; for mixed signs
//!   `h¹ = (a+1)·max(−b−1, 0) + max(−a−1, 0)·(b+1)`.
//! - [`feasible_splittings`] enumerates candidate Grothendieck splitting
//!   types: all multisets of a given rank in a summand range with a given
//!   total degree. Geometric constraints (like lower bounds on the top
//!   summand from ambient positivity) are the caller's business; this is a
//!   pure enumerator.
//! - [`pushforward_split`] is the splitting type of the pushforward of a
//!   line bundle under a degree-2 cover `E → P¹`: degree `2e+1` gives
//!   `O(e) ⊕ O(e−1)`; degree `2e` gives `O(e) ⊕ O(e−2)` when the bundle is
//!   pulled back from the base and `O(e−1) ⊕ O(e−1)` when it is not. In
//!   all cases the total degree drops by exactly 2 (the cover is branched
//!   with `χ` bookkeeping `deg π_*L = deg L − 2`).

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from splitting-type bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    /// Pushforward of a pullback bundle must have even degree.
    #[error("pullback bundles have even degree")]
    PullbackOddDegree { degree: i64 },
}

/// A direct sum of line bundles on `P¹` or on a smooth quadric `P¹×P¹`,
/// stored with summands sorted descending (the canonical form of a
/// Grothendieck splitting type).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "base", content = "summands")]
pub enum SplitBundle {
    /// `O(k₁) ⊕ … ⊕ O(k_r)` on `P¹`.
    P1(Vec<i64>),
    /// `O(a₁,b₁) ⊕ … ⊕ O(a_r,b_r)` on `P¹×P¹`.
    Quadric(Vec<(i64, i64)>),
}

impl SplitBundle {
    /// Bundle on `P¹` with the given summand degrees (any order).
    pub fn on_p1(degrees: impl Into<Vec<i64>>) -> Self {
        let mut degrees = degrees.into();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplitBundle::P1(degrees)
    }

    /// Bundle on the quadric with the given bidegrees (any order).
    pub fn on_quadric(bidegrees: impl Into<Vec<(i64, i64)>>) -> Self {
        let mut bidegrees = bidegrees.into();
        bidegrees.sort_unstable_by(|a, b| b.cmp(a));
        SplitBundle::Quadric(bidegrees)
    }

    /// Number of line-bundle summands.
    pub fn rank(&self) -> usize {
        match self {
            SplitBundle::P1(ks) => ks.len(),
            SplitBundle::Quadric(bs) => bs.len(),
        }
    }

    /// Sum of the summand degrees (total degree of `a + b` per summand on
    /// the quadric).
    pub fn total_degree(&self) -> i64 {
        match self {
            SplitBundle::P1(ks) => ks.iter().sum(),
            SplitBundle::Quadric(bs) => bs.iter().map(|(a, b)| a + b).sum(),
        }
    }
}

/// A curve on a smooth threefold (or higher-dimensional host), reduced to
/// the numbers its deformation theory needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveOnThreefold {
    /// Curve degree; at least 1.
    pub degree: i64,
    /// Arithmetic genus.
    pub arith_genus: i64,
    /// Dimension of the host variety (3 for the cubic threefold).
    pub ambient_dim: i64,
    /// `(−K_Y)·C` of the host against the curve.
    pub minus_k_dot_c: i64,
}

impl CurveOnThreefold {
    /// A degree-`d` genus-`g` curve on the cubic threefold, where
    /// `−K = 2H` forces `(−K)·C = 2d`.
    pub fn on_cubic_threefold(degree: i64, arith_genus: i64) -> Self {
        assert!(degree >= 1, "degree must be at least 1, got {degree}");
        CurveOnThreefold {
            degree,
            arith_genus,
            ambient_dim: 3,
            minus_k_dot_c: 2 * degree,
        }
    }
}

/// `χ(N_{C/Y}) = (−K_Y·C) + (1 − p_a)(dim Y − 3)`: every component of the
/// Hilbert scheme through `[C]` has at least this dimension.
pub fn chi_normal(c: &CurveOnThreefold) -> i64 {
    c.minus_k_dot_c + (1 - c.arith_genus) * (c.ambient_dim - 3)
}

/// The degree/genus pairs covered by the dimension analysis.
pub const TREATED_PAIRS: [(i64, i64); 9] = [
    (1, 0),
    (2, 0),
    (3, 0),
    (3, 1),
    (4, 0),
    (4, 1),
    (5, 0),
    (5, 1),
    (5, 2),
];

/// Expected-dimension table `(d, g, 2d)` for all treated pairs with
/// `d ≤ d_max`.
pub fn expected_dims(d_max: i64) -> Vec<(i64, i64, i64)> {
    assert!(d_max >= 1, "d_max must be at least 1, got {d_max}");
    TREATED_PAIRS
        .iter()
        .filter(|(d, _)| *d <= d_max)
        .map(|&(d, g)| {
            let dim = chi_normal(&CurveOnThreefold::on_cubic_threefold(d, g));
            (d, g, dim)
        })
        .collect()
}

/// `h⁰(O_{P¹}(k))`.
fn h0_p1(k: i64) -> i64 {
    (k + 1).max(0)
}

/// `h¹(O_{P¹}(k))`.
fn h1_p1(k: i64) -> i64 {
    (-k - 1).max(0)
}

/// `(h⁰, h¹)` of a split bundle twisted by `O(twist)` (on the quadric, by
/// `O(twist, twist)`, the restriction of the ambient hyperplane twist).
pub fn h0_h1(b: &SplitBundle, twist: i64) -> (i64, i64) {
    match b {
        SplitBundle::P1(ks) => {
            let h0 = ks.iter().map(|&k| h0_p1(k + twist)).sum();
            let h1 = ks.iter().map(|&k| h1_p1(k + twist)).sum();
            (h0, h1)
        }
        SplitBundle::Quadric(bs) => {
            let mut h0 = 0;
            let mut h1 = 0;
            for &(a, b) in bs {
                let (a, b) = (a + twist, b + twist);
                h0 += h0_p1(a) * h0_p1(b);
                h1 += h0_p1(a) * h1_p1(b) + h1_p1(a) * h0_p1(b);
            }
            (h0, h1)
        }
    }
}

/// All splitting types on `P¹` of the given rank with summands in
/// `[min_summand, max_summand]` and the given total degree, as a sorted,
/// duplicate-free list of multisets.
pub fn feasible_splittings(
    rank: usize,
    total_deg: i64,
    min_summand: i64,
    max_summand: i64,
) -> Vec<SplitBundle> {
    assert!(rank >= 1, "rank must be at least 1, got {rank}");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(rank);
    // Enumerate descending sequences (multiset canonical form) directly.
    fn recurse(
        slots: usize,
        remaining: i64,
        upper: i64,
        lower: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<SplitBundle>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(SplitBundle::P1(current.clone()));
            }
            return;
        }
        let slots_i = slots as i64;
        for k in (lower..=upper).rev() {
            // Remaining slots each take a value in [lower, k].
            let rest = remaining - k;
            if rest < (slots_i - 1) * lower || rest > (slots_i - 1) * k {
                continue;
            }
            current.push(k);
            recurse(slots - 1, rest, k, lower, current, out);
            current.pop();
        }
    }
    recurse(
        rank,
        total_deg,
        max_summand,
        min_summand,
        &mut current,
        &mut out,
    );
    out.sort();
    out
}

/// Splitting type of `π_*L` for a line bundle `L` of degree `deg` on a
/// curve with a degree-2 map `π` to `P¹`:
///
/// - odd degree `2e+1` → `O(e) ⊕ O(e−1)`;
/// - even degree `2e`, `L` pulled back from `P¹` → `O(e) ⊕ O(e−2)`;
/// - even degree `2e`, `L` not a pullback → `O(e−1) ⊕ O(e−1)`.
///
/// The total degree always drops by 2.
pub fn pushforward_split(deg: i64, is_pullback: bool) -> Result<SplitBundle, DeformationError> {
    if deg.rem_euclid(2) == 1 {
        if is_pullback {
            return Err(DeformationError::PullbackOddDegree { degree: deg });
        }
        let e = (deg - 1) / 2;
        Ok(SplitBundle::on_p1([e, e - 1]))
    } else {
        let e = deg / 2;
        if is_pullback {
            Ok(SplitBundle::on_p1([e, e - 2]))
        } else {
            Ok(SplitBundle::on_p1([e - 1, e - 1]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_normal_on_the_cubic_threefold() {
        let cases = [(3, 0, 6), (5, 2, 10), (1, 0, 2)];
        for (d, g, want) in cases {
            let c = CurveOnThreefold::on_cubic_threefold(d, g);
            assert_eq!(chi_normal(&c), want);
        }
    }

    #[test]
    fn chi_normal_sees_the_genus_only_off_threefolds() {
        // On a threefold the (1 − p_a)(dim − 3) term vanishes.
        for g in -2..=5 {
            let c = CurveOnThreefold {
                degree: 4,
                arith_genus: g,
                ambient_dim: 3,
                minus_k_dot_c: 8,
            };
            assert_eq!(chi_normal(&c), 8);
        }
        // On a fourfold host it does not.
        let c = CurveOnThreefold {
            degree: 4,
            arith_genus: 2,
            ambient_dim: 4,
            minus_k_dot_c: 8,
        };
        assert_eq!(chi_normal(&c), 8 - 1);
    }

    #[test]
    fn expected_dims_table() {
        let table = expected_dims(5);
        assert_eq!(table.len(), 9);
        for (d, _, dim) in &table {
            assert_eq!(*dim, 2 * d);
        }
        assert!(table.contains(&(4, 0, 8)));
        assert!(table.contains(&(4, 1, 8)));
        assert!(table.contains(&(5, 1, 10)));
        assert!(table.contains(&(2, 0, 4)));
        // Truncation by d_max.
        assert_eq!(expected_dims(2).len(), 2);
        assert_eq!(expected_dims(1), vec![(1, 0, 2)]);
    }

    #[test]
    fn h0_h1_on_p1() {
        assert_eq!(h0_h1(&SplitBundle::on_p1([2, 2]), 0), (6, 0));
        assert_eq!(h0_h1(&SplitBundle::on_p1([5, -1]), 0), (6, 0));
        // All four balanced-to-unbalanced splittings of degree 4 have
        // vanishing h¹.
        for a in 2..=5 {
            let b = SplitBundle::on_p1([a, 4 - a]);
            assert_eq!(h0_h1(&b, 0).1, 0, "h1 must vanish for {b:?}");
        }
        // Twisting shifts: O(2) ⊕ O(2) twisted by −3 has h⁰ = 0, h¹ = 0
        // at O(−1) each.
        assert_eq!(h0_h1(&SplitBundle::on_p1([2, 2]), -3), (0, 0));
        assert_eq!(h0_h1(&SplitBundle::on_p1([-3]), 0), (0, 2));
    }

    #[test]
    fn h0_h1_on_the_quadric() {
        let b = SplitBundle::on_quadric([(0, 1), (1, 2)]);
        assert_eq!(h0_h1(&b, 0), (8, 0));
        // Mixed signs produce h¹ by Künneth.
        assert_eq!(h0_h1(&SplitBundle::on_quadric([(1, -2)]), 0), (0, 2));
        assert_eq!(h0_h1(&SplitBundle::on_quadric([(-2, 1)]), 0), (0, 2));
        // Deeply negative bidegrees have h⁰ = h¹ = 0 (everything sits in
        // h²).
        assert_eq!(h0_h1(&SplitBundle::on_quadric([(-2, -2)]), 0), (0, 0));
    }

    #[test]
    fn feasible_splittings_examples() {
        assert_eq!(
            feasible_splittings(2, 4, -1, 5),
            vec![
                SplitBundle::on_p1([2, 2]),
                SplitBundle::on_p1([3, 1]),
                SplitBundle::on_p1([4, 0]),
                SplitBundle::on_p1([5, -1]),
            ]
        );
        assert_eq!(
            feasible_splittings(2, 2, 0, 2),
            vec![SplitBundle::on_p1([1, 1]), SplitBundle::on_p1([2, 0])]
        );
        assert!(feasible_splittings(1, 7, 0, 5).is_empty());
    }

    #[test]
    fn unobstructedness_certificates() {
        // Every feasible normal-bundle splitting in the two families has
        // h¹ = 0, which is what makes the corresponding Hilbert-scheme
        // points smooth.
        for b in feasible_splittings(2, 4, -1, 5) {
            assert_eq!(h0_h1(&b, 0).1, 0);
        }
        for b in feasible_splittings(2, 2, 0, 2) {
            assert_eq!(h0_h1(&b, 0).1, 0);
        }
    }

    #[test]
    fn pushforward_split_cases() {
        assert_eq!(
            pushforward_split(5, false).unwrap(),
            SplitBundle::on_p1([2, 1])
        );
        assert_eq!(
            pushforward_split(0, true).unwrap(),
            SplitBundle::on_p1([0, -2])
        );
        assert_eq!(
            pushforward_split(0, false).unwrap(),
            SplitBundle::on_p1([-1, -1])
        );
        let err = pushforward_split(5, true).unwrap_err();
        assert_eq!(err.to_string(), "pullback bundles have even degree");
        assert_eq!(err, DeformationError::PullbackOddDegree { degree: 5 });
    }

    #[test]
    fn pushforward_degree_drops_by_two() {
        for deg in -7..=9 {
            for pullback in [false, true] {
                if let Ok(b) = pushforward_split(deg, pullback) {
                    assert_eq!(b.total_degree(), deg - 2);
                    assert_eq!(b.rank(), 2);
                }
            }
        }
    }
}
