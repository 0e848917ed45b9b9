//! Divisor-class solving on the scroll and quadric lattices.
//!
//! Three kinds of bookkeeping, all exact integer arithmetic:
//!
//! - [`solve_classes`] answers "which effective-candidate classes have this
//!   degree and arithmetic genus?" by bounded exhaustive search. On the
//!   scroll, `aD + bF` has degree `a + b`, so the search runs over
//!   `0 ≤ a, b` with `a + b = degree`; on the quadric, over
//!   `0 ≤ a, b ≤ degree`. "Effective candidate" is a numeric notion: the
//!   pairings against the ruling `F` and the hyperplane-section complement
//!   `D + F` are nonnegative (scroll), or both bidegree entries are
//!   nonnegative (quadric). An optional irreducibility filter drops classes
//!   whose pairing with the directrix `D` is negative (such a class
//!   contains `D` as a fixed component), keeping `D` itself.
//! - [`residual_profile`] subtracts a curve-plus-secants configuration from
//!   the class of a cubic hypersurface section (`3H`: `3D + 6F` on the
//!   scroll, `(3,3)` on the quadric) and reports the residual class with
//!   its degree and genus. Residuals with negative coordinates are a hard
//!   "not effective" error.
//! - [`secant_plane_guarantee`] evaluates the sufficient condition
//!   `(r+2)·k ≥ (r+1)·(n+1)` for a rational normal curve in `Pⁿ` to admit a
//!   k-secant (k−1)-plane through every r-plane.

use serde::{Deserialize, Serialize};
use surface_lattice::{DivisorClass, LatticeError, SurfaceLattice};
use thiserror::Error;

/// Errors from class queries and residual bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScrollClassError {
    /// Underlying lattice arithmetic failed (mixed lattices, wrong rank).
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    /// Class queries and hypersurface cuts are defined on the scroll and
    /// quadric lattices only.
    #[error("operation defined on the scroll and quadric lattices, not the {found}")]
    UnsupportedLattice { found: SurfaceLattice },
    /// Degree must be at least 1.
    #[error("degree must be at least 1, got {degree}")]
    DegreeOutOfRange { degree: i64 },
    /// A secant query violated `0 ≤ r < n` or `k ≥ 1`.
    #[error("invalid secant query (n={n}, r={r}, k={k}): requires 0 ≤ r < n and k ≥ 1")]
    InvalidSecantQuery { n: i64, r: i64, k: i64 },
    /// A residual class left the effective cone.
    #[error("residual class {class} is not effective: negative coordinate in the standard basis")]
    NotEffective { class: String },
}

/// A degree/genus class query on the scroll or quadric lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassQuery {
    lattice: SurfaceLattice,
    degree: i64,
    genus: i64,
    require_irreducible_candidate: bool,
}

impl ClassQuery {
    /// Build a query; rejects degree < 1 and the cubic-surface lattice
    /// (class solving there is the business of the 27-line enumeration).
    pub fn new(
        lattice: SurfaceLattice,
        degree: i64,
        genus: i64,
        require_irreducible_candidate: bool,
    ) -> Result<Self, ScrollClassError> {
        if lattice == SurfaceLattice::CubicSurface {
            return Err(ScrollClassError::UnsupportedLattice { found: lattice });
        }
        if degree < 1 {
            return Err(ScrollClassError::DegreeOutOfRange { degree });
        }
        Ok(ClassQuery {
            lattice,
            degree,
            genus,
            require_irreducible_candidate,
        })
    }

    pub fn lattice(&self) -> SurfaceLattice {
        self.lattice
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn require_irreducible_candidate(&self) -> bool {
        self.require_irreducible_candidate
    }
}

/// A k-secant-plane feasibility query: does a degree-n rational normal
/// curve in `Pⁿ` admit a k-secant (k−1)-plane through every r-plane?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantQuery {
    /// Ambient projective dimension (and degree of the rational normal
    /// curve).
    n: i64,
    /// Dimension of the linear space the secant plane must pass through.
    r: i64,
    /// Number of secant points.
    k: i64,
}

impl SecantQuery {
    /// Build a query; requires `0 ≤ r < n` and `k ≥ 1`.
    pub fn new(n: i64, r: i64, k: i64) -> Result<Self, ScrollClassError> {
        if r < 0 || r >= n || k < 1 {
            return Err(ScrollClassError::InvalidSecantQuery { n, r, k });
        }
        Ok(SecantQuery { n, r, k })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn k(&self) -> i64 {
        self.k
    }
}

/// Numeric effectivity certificate. Scroll: pairings with the ruling `F`
/// and with `D + F` are both ≥ 0 (these read off `a` and `b`). Quadric:
/// both bidegree entries ≥ 0.
pub fn is_effective_candidate(c: &DivisorClass) -> Result<bool, ScrollClassError> {
    match c.lattice() {
        SurfaceLattice::CubicSurface => Err(ScrollClassError::UnsupportedLattice {
            found: c.lattice(),
        }),
        SurfaceLattice::Scroll => {
            let f = SurfaceLattice::Scroll.basis(1);
            let d_plus_f = SurfaceLattice::Scroll.class(&[1, 1]).expect("rank 2");
            Ok(c.pair(&f)? >= 0 && c.pair(&d_plus_f)? >= 0)
        }
        SurfaceLattice::Quadric => Ok(c.coeffs().iter().all(|&x| x >= 0)),
    }
}

/// All effective-candidate classes matching the query's degree and genus,
/// in canonical (lexicographic) order.
///
/// With the irreducibility filter on, classes pairing negatively with the
/// scroll directrix `D` are dropped (they contain `D` as a fixed
/// component), except `D` itself. The filter is the paper-level exclusion
/// mechanism, not a general irreducibility test; hence "candidate".
pub fn solve_classes(q: &ClassQuery) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    match q.lattice {
        SurfaceLattice::Scroll => {
            let directrix = SurfaceLattice::Scroll.basis(0);
            // degree(aD + bF) = a + b, so candidates lie on one diagonal.
            for a in 0..=q.degree {
                let b = q.degree - a;
                let c = SurfaceLattice::Scroll.class(&[a, b]).expect("rank 2");
                if c.arith_genus() != q.genus {
                    continue;
                }
                debug_assert!(is_effective_candidate(&c).expect("scroll class"));
                if q.require_irreducible_candidate
                    && c.pair(&directrix).expect("same lattice") < 0
                    && c != directrix
                {
                    continue;
                }
                out.push(c);
            }
        }
        SurfaceLattice::Quadric => {
            for a in 0..=q.degree {
                for b in 0..=q.degree {
                    let c = SurfaceLattice::Quadric.class(&[a, b]).expect("rank 2");
                    if c.degree() == q.degree && c.arith_genus() == q.genus {
                        out.push(c);
                    }
                }
            }
        }
        SurfaceLattice::CubicSurface => unreachable!("rejected by ClassQuery::new"),
    }
    out.sort();
    out
}

/// The class of a cubic hypersurface section: `3H`, i.e. `3D + 6F` on the
/// scroll and `(3,3)` on the quadric.
///
/// Errors on the cubic-surface lattice (there the cubic cuts out the whole
/// surface, not a divisor).
pub fn x_cut_class(lat: SurfaceLattice) -> Result<DivisorClass, ScrollClassError> {
    if lat == SurfaceLattice::CubicSurface {
        return Err(ScrollClassError::UnsupportedLattice { found: lat });
    }
    Ok(&lat.hyperplane() * 3)
}

/// Residual class with its degree and arithmetic genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualProfile {
    pub class: DivisorClass,
    pub degree: i64,
    pub genus: i64,
}

/// Subtract `curve + secants` from the cubic cut `3H` and profile the
/// residual.
///
/// Errors on lattice mismatch and, loudly, when the residual has a
/// negative coordinate — every legitimate use has a genuinely effective
/// residual, so leaving the effective cone means the configuration was
/// wrong, not that a "virtual" answer is wanted.
pub fn residual_profile(
    lat: SurfaceLattice,
    curve: &DivisorClass,
    secants: &DivisorClass,
) -> Result<ResidualProfile, ScrollClassError> {
    let cut = x_cut_class(lat)?;
    let class = DivisorClass::residual(&cut, &[curve.clone(), secants.clone()])?;
    if class.coeffs().iter().any(|&c| c < 0) {
        return Err(ScrollClassError::NotEffective {
            class: class.to_string(),
        });
    }
    Ok(ResidualProfile {
        degree: class.degree(),
        genus: class.arith_genus(),
        class,
    })
}

/// The k-secant-plane guarantee: true iff `(r+2)·k ≥ (r+1)·(n+1)`, the
/// sufficient condition for a k-secant (k−1)-plane of a rational normal
/// curve in `Pⁿ` through every r-plane.
pub fn secant_plane_guarantee(q: &SecantQuery) -> bool {
    (q.r + 2) * q.k >= (q.r + 1) * (q.n + 1)
}
