//! Exact divisor-class arithmetic on three rational-surface Picard lattices.
//!
//! The three built-in lattices are the ones that carry every class
//! computation in this workspace:
//!
//! - **Cubic surface** — rank 7, basis `(l, e1..e6)` from the blowup of the
//!   plane in six points; Gram matrix `diag(1, −1, …, −1)`; canonical class
//!   `K = −3l + e1 + … + e6`; hyperplane class `H = −K` (anticanonical
//!   embedding).
//! - **Cubic scroll** — rank 2, basis `(D, F)` with `D` the directrix
//!   (−1-curve) and `F` a line of the ruling; `D·D = −1`, `D·F = 1`,
//!   `F·F = 0`; `K = −2D − 3F`; `H = D + 2F` (degree-3 embedding).
//! - **Quadric** — rank 2, basis `(A, B)` the two rulings of `P¹×P¹`;
//!   hyperbolic Gram matrix; `K = (−2, −2)`; `H = (1, 1)`.
//!
//! All three lattices are unimodular and have `χ(O) = 1`. Operations are
//! pure integer arithmetic: intersection pairing, degree (pairing with `H`),
//! adjunction genus, surface Riemann–Roch, and residual classes. No floating
//! point anywhere.
//!
//! Coefficients are `i64`. Every quantity that appears in practice is tiny
//! (single digits to a few hundred); overflow checks stay on in release
//! builds so an out-of-range input panics instead of wrapping.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Errors from divisor-class arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    /// Two classes from different lattices were combined.
    #[error("lattice mismatch: {left} vs {right}")]
    Mismatch {
        left: SurfaceLattice,
        right: SurfaceLattice,
    },
    /// A coefficient vector of the wrong length was supplied.
    #[error("{lattice} has rank {expected}, got {got} coefficients")]
    WrongRank {
        lattice: SurfaceLattice,
        expected: usize,
        got: usize,
    },
}

/// Errors from parsing the symbolic class notation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a class on {lattice}: {reason}")]
pub struct ParseClassError {
    pub lattice: SurfaceLattice,
    pub input: String,
    pub reason: String,
}

/// One of the three built-in Picard lattices.
///
/// The lattice data (rank, Gram matrix, canonical class, hyperplane class,
/// `χ(O)`) is fixed; the enum is the whole identity of a lattice.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceLattice {
    /// Blowup of the plane in six points, embedded anticanonically.
    CubicSurface,
    /// The Hirzebruch surface F1 embedded by `D + 2F` as a cubic scroll.
    Scroll,
    /// `P¹ × P¹` with its two rulings.
    Quadric,
}

impl fmt::Display for SurfaceLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceLattice::CubicSurface => write!(f, "cubic surface"),
            SurfaceLattice::Scroll => write!(f, "scroll"),
            SurfaceLattice::Quadric => write!(f, "quadric"),
        }
    }
}

static CUBIC_GRAM: [[i64; 7]; 7] = {
    let mut g = [[0i64; 7]; 7];
    g[0][0] = 1;
    let mut i = 1;
    while i < 7 {
        g[i][i] = -1;
        i += 1;
    }
    g
};
static SCROLL_GRAM: [[i64; 2]; 2] = [[-1, 1], [1, 0]];
static QUADRIC_GRAM: [[i64; 2]; 2] = [[0, 1], [1, 0]];

impl SurfaceLattice {
    /// Rank of the lattice (length of every coefficient vector).
    pub fn rank(self) -> usize {
        match self {
            SurfaceLattice::CubicSurface => 7,
            SurfaceLattice::Scroll | SurfaceLattice::Quadric => 2,
        }
    }

    /// Intersection form entry for basis vectors `i`, `j`.
    pub fn gram(self, i: usize, j: usize) -> i64 {
        match self {
            SurfaceLattice::CubicSurface => CUBIC_GRAM[i][j],
            SurfaceLattice::Scroll => SCROLL_GRAM[i][j],
            SurfaceLattice::Quadric => QUADRIC_GRAM[i][j],
        }
    }

    /// Determinant of the Gram matrix; `±1` for all built-in lattices.
    pub fn gram_det(self) -> i64 {
        match self {
            SurfaceLattice::CubicSurface => -1, // diag(1, −1⁶)
            SurfaceLattice::Scroll => -1,       // −1·0 − 1·1
            SurfaceLattice::Quadric => -1,      // 0·0 − 1·1
        }
    }

    /// Names of the basis classes, in coefficient order.
    pub fn basis_names(self) -> &'static [&'static str] {
        match self {
            SurfaceLattice::CubicSurface => &["l", "e1", "e2", "e3", "e4", "e5", "e6"],
            SurfaceLattice::Scroll => &["D", "F"],
            SurfaceLattice::Quadric => &["A", "B"],
        }
    }

    /// The canonical class `K`.
    pub fn canonical(self) -> DivisorClass {
        let coeffs = match self {
            SurfaceLattice::CubicSurface => vec![-3, 1, 1, 1, 1, 1, 1],
            SurfaceLattice::Scroll => vec![-2, -3],
            SurfaceLattice::Quadric => vec![-2, -2],
        };
        DivisorClass {
            lattice: self,
            coeffs,
        }
    }

    /// The hyperplane class `H` of the embedding used throughout.
    pub fn hyperplane(self) -> DivisorClass {
        let coeffs = match self {
            SurfaceLattice::CubicSurface => vec![3, -1, -1, -1, -1, -1, -1],
            SurfaceLattice::Scroll => vec![1, 2],
            SurfaceLattice::Quadric => vec![1, 1],
        };
        DivisorClass {
            lattice: self,
            coeffs,
        }
    }

    /// `χ(O)` of the surface; 1 for all three rational surfaces.
    pub fn chi_structure(self) -> i64 {
        1
    }

    /// The zero class.
    pub fn zero(self) -> DivisorClass {
        DivisorClass {
            lattice: self,
            coeffs: vec![0; self.rank()],
        }
    }

    /// The `i`-th basis class (`l`, `e1`, …; `D`, `F`; `A`, `B`).
    pub fn basis(self, i: usize) -> DivisorClass {
        assert!(i < self.rank(), "basis index {i} out of range");
        let mut coeffs = vec![0; self.rank()];
        coeffs[i] = 1;
        DivisorClass {
            lattice: self,
            coeffs,
        }
    }

    /// Build a class from coefficients in basis order.
    pub fn class(self, coeffs: &[i64]) -> Result<DivisorClass, LatticeError> {
        if coeffs.len() != self.rank() {
            return Err(LatticeError::WrongRank {
                lattice: self,
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        Ok(DivisorClass {
            lattice: self,
            coeffs: coeffs.to_vec(),
        })
    }
}

/// An integer divisor class on one of the built-in lattices.
///
/// Ordering and hashing are lexicographic on `(lattice, coefficients)`,
/// which is the canonical order used by every enumeration in the workspace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    lattice: SurfaceLattice,
    coeffs: Vec<i64>,
}

impl DivisorClass {
    /// Construct from a coefficient vector; length must equal the rank.
    pub fn new(lattice: SurfaceLattice, coeffs: Vec<i64>) -> Result<Self, LatticeError> {
        if coeffs.len() != lattice.rank() {
            return Err(LatticeError::WrongRank {
                lattice,
                expected: lattice.rank(),
                got: coeffs.len(),
            });
        }
        Ok(DivisorClass { lattice, coeffs })
    }

    pub fn lattice(&self) -> SurfaceLattice {
        self.lattice
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &DivisorClass) -> Result<(), LatticeError> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(LatticeError::Mismatch {
                left: self.lattice,
                right: other.lattice,
            })
        }
    }

    /// Intersection pairing `c1 · c2 = c1ᵀ · gram · c2`; symmetric and
    /// bilinear.
    pub fn pair(&self, other: &DivisorClass) -> Result<i64, LatticeError> {
        self.check_same(other)?;
        let lat = self.lattice;
        let mut acc = 0i64;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc += a * lat.gram(i, j) * b;
            }
        }
        Ok(acc)
    }

    /// Pairing with a class of the same lattice; panics on mismatch.
    /// Internal convenience for the same-lattice invariants below.
    fn dot(&self, other: &DivisorClass) -> i64 {
        self.pair(other).expect("classes share a lattice")
    }

    /// Degree of the class: pairing with the hyperplane class `H`.
    pub fn degree(&self) -> i64 {
        self.dot(&self.lattice.hyperplane())
    }

    /// Arithmetic genus from adjunction: `p_a = 1 + (C·C + C·K)/2`.
    ///
    /// `C·C + C·K` is even for every class of a smooth-surface Picard
    /// lattice (adjunction integrality); asserted, never truncated.
    pub fn arith_genus(&self) -> i64 {
        let k = self.lattice.canonical();
        let cc = self.dot(self);
        let ck = self.dot(&k);
        debug_assert_eq!((cc + ck).rem_euclid(2), 0, "adjunction parity violated");
        1 + (cc + ck) / 2
    }

    /// Surface Riemann–Roch: `χ(C) = (C·C − C·K)/2 + χ(O)`.
    pub fn chi_rr(&self) -> i64 {
        let k = self.lattice.canonical();
        let cc = self.dot(self);
        let ck = self.dot(&k);
        debug_assert_eq!((cc - ck).rem_euclid(2), 0, "adjunction parity violated");
        (cc - ck) / 2 + self.lattice.chi_structure()
    }

    /// Residual class `ambient − Σ parts`.
    ///
    /// Involutive in the single-part case:
    /// `residual(a, [residual(a, [p])]) = p`.
    pub fn residual(
        ambient: &DivisorClass,
        parts: &[DivisorClass],
    ) -> Result<DivisorClass, LatticeError> {
        let mut out = ambient.clone();
        for p in parts {
            ambient.check_same(p)?;
            for (o, c) in out.coeffs.iter_mut().zip(&p.coeffs) {
                *o -= c;
            }
        }
        Ok(out)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.lattice, rhs.lattice, "lattice mismatch");
        DivisorClass {
            lattice: self.lattice,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.lattice, rhs.lattice, "lattice mismatch");
        DivisorClass {
            lattice: self.lattice,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            lattice: self.lattice,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul<i64> for &DivisorClass {
    type Output = DivisorClass;
    fn mul(self, rhs: i64) -> DivisorClass {
        DivisorClass {
            lattice: self.lattice,
            coeffs: self.coeffs.iter().map(|a| a * rhs).collect(),
        }
    }
}

/// Symbolic notation, one style per lattice:
///
/// - scroll: `aD+bF` (terms with zero coefficient omitted; `0` if all zero)
/// - quadric: `(a,b)`
/// - cubic surface: signed sum over `l`, `e1`, …, `e6`, e.g. `2l-e1-e2-e3`
impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lattice {
            SurfaceLattice::Quadric => {
                write!(f, "({},{})", self.coeffs[0], self.coeffs[1])
            }
            SurfaceLattice::Scroll | SurfaceLattice::CubicSurface => {
                let names = self.lattice.basis_names();
                let mut wrote = false;
                for (c, name) in self.coeffs.iter().zip(names) {
                    if *c == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "{}", if *c > 0 { "+" } else { "-" })?;
                    } else if *c < 0 {
                        write!(f, "-")?;
                    }
                    if c.abs() != 1 {
                        write!(f, "{}", c.abs())?;
                    }
                    write!(f, "{name}")?;
                    wrote = true;
                }
                if !wrote {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

/// Parse the symbolic notation of [`DivisorClass`]'s `Display` impl.
pub fn parse_class(lattice: SurfaceLattice, input: &str) -> Result<DivisorClass, ParseClassError> {
    let err = |reason: &str| ParseClassError {
        lattice,
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    if lattice == SurfaceLattice::Quadric {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| err("expected (a,b)"))?;
        let mut parts = inner.split(',');
        let a = parts
            .next()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| err("expected integer bidegree"))?;
        let b = parts
            .next()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| err("expected integer bidegree"))?;
        if parts.next().is_some() {
            return Err(err("expected exactly two components"));
        }
        return Ok(DivisorClass {
            lattice,
            coeffs: vec![a, b],
        });
    }
    // Signed term sum over the named basis.
    let names = lattice.basis_names();
    let mut coeffs = vec![0i64; lattice.rank()];
    if s == "0" {
        return Ok(DivisorClass { lattice, coeffs });
    }
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('+') {
            if first {
                return Err(err("leading +"));
            }
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !first {
            return Err(err("expected + or - between terms"));
        }
        first = false;
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        rest = &rest[digits.len()..];
        let magnitude: i64 = if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|_| err("coefficient overflow"))?
        };
        let (idx, name_len) = names
            .iter()
            .enumerate()
            // Longest match first so `e1` is not read as prefix of nothing;
            // basis names are prefix-free except none here, but be explicit.
            .filter(|(_, n)| rest.starts_with(**n))
            .max_by_key(|(_, n)| n.len())
            .map(|(i, n)| (i, n.len()))
            .ok_or_else(|| err("unknown basis symbol"))?;
        rest = &rest[name_len..];
        coeffs[idx] += sign * magnitude;
    }
    Ok(DivisorClass { lattice, coeffs })
}

impl FromStr for DivisorClass {
    type Err = ParseClassError;

    /// Parses with the lattice inferred from the notation: `(a,b)` is a
    /// quadric class, anything mentioning `D`/`F` a scroll class, anything
    /// mentioning `l`/`e…` a cubic-surface class.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let lattice = if trimmed.starts_with('(') {
            SurfaceLattice::Quadric
        } else if trimmed.contains('D') || trimmed.contains('F') {
            SurfaceLattice::Scroll
        } else {
            SurfaceLattice::CubicSurface
        };
        parse_class(lattice, trimmed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scroll(a: i64, b: i64) -> DivisorClass {
        SurfaceLattice::Scroll.class(&[a, b]).unwrap()
    }

    fn quadric(a: i64, b: i64) -> DivisorClass {
        SurfaceLattice::Quadric.class(&[a, b]).unwrap()
    }

    fn cubic(coeffs: [i64; 7]) -> DivisorClass {
        SurfaceLattice::CubicSurface.class(&coeffs).unwrap()
    }

    #[test]
    fn scroll_gram_entries() {
        let d = SurfaceLattice::Scroll.basis(0);
        let f = SurfaceLattice::Scroll.basis(1);
        assert_eq!(d.pair(&d).unwrap(), -1);
        assert_eq!(d.pair(&f).unwrap(), 1);
        assert_eq!(f.pair(&f).unwrap(), 0);
    }

    #[test]
    fn pairing_with_zero_vanishes() {
        for lat in [
            SurfaceLattice::CubicSurface,
            SurfaceLattice::Scroll,
            SurfaceLattice::Quadric,
        ] {
            assert_eq!(lat.zero().pair(&lat.hyperplane()).unwrap(), 0);
        }
    }

    #[test]
    fn pairing_rejects_lattice_mismatch() {
        let d = SurfaceLattice::Scroll.basis(0);
        let a = SurfaceLattice::Quadric.basis(0);
        assert_eq!(
            d.pair(&a),
            Err(LatticeError::Mismatch {
                left: SurfaceLattice::Scroll,
                right: SurfaceLattice::Quadric,
            })
        );
    }

    #[test]
    fn hyperplane_self_intersections() {
        // Degrees of the embedded surfaces: cubic surface 3, scroll 3,
        // quadric 2.
        let h = |l: SurfaceLattice| l.hyperplane().pair(&l.hyperplane()).unwrap();
        assert_eq!(h(SurfaceLattice::CubicSurface), 3);
        assert_eq!(h(SurfaceLattice::Scroll), 3);
        assert_eq!(h(SurfaceLattice::Quadric), 2);
    }

    #[test]
    fn degrees_match_known_classes() {
        assert_eq!(scroll(2, 2).degree(), 4);
        assert_eq!(quadric(2, 2).degree(), 4);
        assert_eq!(cubic([1, -1, -1, 0, 0, 0, 0]).degree(), 1);
    }

    #[test]
    fn arith_genus_examples() {
        assert_eq!(scroll(2, 3).arith_genus(), 1);
        assert_eq!(scroll(1, 2).arith_genus(), 0);
        assert_eq!(quadric(2, 2).arith_genus(), 1);
    }

    #[test]
    fn chi_rr_examples() {
        // Line bundle with L² = 1, L·K = −3 on the cubic surface: χ = 3.
        let l = cubic([1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(l.chi_rr(), 3);
        // χ(O) = 1 on every lattice.
        for lat in [
            SurfaceLattice::CubicSurface,
            SurfaceLattice::Scroll,
            SurfaceLattice::Quadric,
        ] {
            assert_eq!(lat.zero().chi_rr(), 1);
        }
        // Scroll hyperplane class: H² = 3, H·K = −5, so χ = (3+5)/2 + 1 = 5.
        assert_eq!(scroll(1, 2).chi_rr(), 5);
    }

    #[test]
    fn residual_examples() {
        let r = DivisorClass::residual(&scroll(3, 6), &[scroll(2, 2), scroll(0, 2)]).unwrap();
        assert_eq!(r, scroll(1, 2));
        let r = DivisorClass::residual(&quadric(3, 3), &[quadric(1, 1)]).unwrap();
        assert_eq!(r, quadric(2, 2));
        let r = DivisorClass::residual(&scroll(3, 6), &[scroll(1, 3)]).unwrap();
        assert_eq!(r, scroll(2, 3));
    }

    #[test]
    fn residual_is_involutive_on_single_parts() {
        let ambient = scroll(3, 6);
        let p = scroll(2, 2);
        let r = DivisorClass::residual(&ambient, std::slice::from_ref(&p)).unwrap();
        assert_eq!(
            DivisorClass::residual(&ambient, std::slice::from_ref(&r)).unwrap(),
            p
        );
    }

    #[test]
    fn gram_matrices_are_unimodular_and_symmetric() {
        for lat in [
            SurfaceLattice::CubicSurface,
            SurfaceLattice::Scroll,
            SurfaceLattice::Quadric,
        ] {
            assert_eq!(lat.gram_det().abs(), 1, "{lat} not unimodular");
            for i in 0..lat.rank() {
                for j in 0..lat.rank() {
                    assert_eq!(lat.gram(i, j), lat.gram(j, i), "{lat} gram not symmetric");
                }
            }
        }
    }

    #[test]
    fn display_round_trips() {
        let cases = [
            scroll(2, 3),
            scroll(0, 0),
            scroll(-1, 4),
            scroll(1, 0),
            quadric(3, 3),
            quadric(-2, 0),
            cubic([2, -1, -1, -1, 0, 0, 0]),
            cubic([0, 1, 0, 0, 0, 0, 0]),
            cubic([-3, 1, 1, 1, 1, 1, 1]),
            cubic([0, 0, 0, 0, 0, 0, 0]),
        ];
        for c in cases {
            let printed = c.to_string();
            let reparsed = parse_class(c.lattice(), &printed).unwrap();
            assert_eq!(reparsed, c, "round trip failed for {printed}");
        }
    }

    #[test]
    fn display_examples() {
        assert_eq!(scroll(2, 3).to_string(), "2D+3F");
        assert_eq!(scroll(1, 2).to_string(), "D+2F");
        assert_eq!(quadric(3, 3).to_string(), "(3,3)");
        assert_eq!(cubic([2, -1, -1, -1, 0, 0, 0]).to_string(), "2l-e1-e2-e3");
        assert_eq!(cubic([0, 1, 0, 0, 0, 0, 0]).to_string(), "e1");
    }

    #[test]
    fn from_str_infers_lattice() {
        assert_eq!("2D+3F".parse::<DivisorClass>().unwrap(), scroll(2, 3));
        assert_eq!("(1,4)".parse::<DivisorClass>().unwrap(), quadric(1, 4));
        assert_eq!(
            "l-e1-e2".parse::<DivisorClass>().unwrap(),
            cubic([1, -1, -1, 0, 0, 0, 0])
        );
    }
}
