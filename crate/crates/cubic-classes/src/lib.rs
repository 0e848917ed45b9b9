//! Distinguished classes on the cubic-surface lattice.
//!
//! Everything here is exact integer combinatorics on the rank-7 Picard
//! lattice of a cubic surface (basis `l, e1..e6`):
//!
//! - [`enumerate_classes`] solves the Diophantine system
//!   `3a − Σb_i = degree`, `a² − Σb_i² = self_int` for classes
//!   `a·l − Σ b_i e_i` by bounded exhaustive search. Degree 1, self-int −1
//!   yields the 27 lines; degree 3, self-int 1 yields the 72 twisted-cubic
//!   classes.
//! - [`s6_orbits`] partitions a class set under the S6 action permuting
//!   `e1..e6`.
//! - [`weyl_orbit`] closes a seed class under the Weyl group W(E6),
//!   generated by reflections in the simple roots `e_i − e_{i+1}`
//!   (adjacent transpositions) and the Cremona root `l − e1 − e2 − e3`.
//! - [`double_sixes`] finds all 36 Schläfli double-sixes among the 27 lines.
//! - [`count_lines_meeting`] and [`incidence_graph`] give the incidence
//!   counts (each line meets exactly 10 others; 135 incident pairs; 5 lines
//!   meet any two disjoint lines).
//!
//! Correctness is certified by closure and invariance checks rather than
//! trusted: every Weyl generator is verified to preserve the pairing and fix
//! the canonical class, and the 72-class set is computed along two
//! independent routes (direct enumeration vs. Weyl closure) that must agree.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use surface_lattice::{DivisorClass, LatticeError, SurfaceLattice};
use thiserror::Error;

/// Cap on Weyl-orbit size; a guard against divergence, not a real bound
/// (the Weyl group is finite, so no orbit can exceed its order 51840).
pub const WEYL_ORBIT_CAP: usize = 1_000_000;

/// Errors from class enumeration and incidence counting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicClassError {
    /// Underlying lattice arithmetic failed (mixed lattices, wrong rank).
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    /// A class expected to be a line (degree 1, self-intersection −1)
    /// is not one.
    #[error("not a line class: {class} has degree {degree} and self-intersection {self_int}")]
    NotALine {
        class: String,
        degree: i64,
        self_int: i64,
    },
    /// A class on a lattice other than the cubic surface was supplied.
    #[error("expected a cubic-surface class, got one on the {found} lattice")]
    WrongLattice { found: SurfaceLattice },
    /// Orbit closure exceeded [`WEYL_ORBIT_CAP`] classes.
    #[error("Weyl orbit exceeded the cap of {cap} classes")]
    OrbitTooLarge { cap: usize },
}

/// A duplicate-free, canonically sorted set of classes on one lattice.
///
/// The canonical order is lexicographic on coefficient vectors, so output
/// is deterministic regardless of the search order that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSet {
    lattice: SurfaceLattice,
    classes: Vec<DivisorClass>,
}

impl ClassSet {
    /// Build a set from arbitrary classes: sorts, deduplicates, and checks
    /// that all classes share `lattice`.
    pub fn from_classes(
        lattice: SurfaceLattice,
        classes: impl IntoIterator<Item = DivisorClass>,
    ) -> Result<Self, CubicClassError> {
        let mut classes: Vec<DivisorClass> = classes.into_iter().collect();
        for c in &classes {
            if c.lattice() != lattice {
                return Err(CubicClassError::Lattice(LatticeError::Mismatch {
                    left: lattice,
                    right: c.lattice(),
                }));
            }
        }
        classes.sort();
        classes.dedup();
        Ok(ClassSet { lattice, classes })
    }

    pub fn lattice(&self) -> SurfaceLattice {
        self.lattice
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Membership test by binary search in the canonical order.
    pub fn contains(&self, class: &DivisorClass) -> bool {
        self.classes.binary_search(class).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DivisorClass> {
        self.classes.iter()
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    pub fn into_vec(self) -> Vec<DivisorClass> {
        self.classes
    }
}

impl<'a> IntoIterator for &'a ClassSet {
    type Item = &'a DivisorClass;
    type IntoIter = std::slice::Iter<'a, DivisorClass>;
    fn into_iter(self) -> Self::IntoIter {
        self.classes.iter()
    }
}

/// A Schläfli double-six: two sextuples of pairwise-skew lines where each
/// line of one sextuple meets every line of the other except its partner
/// at the same index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleSix {
    /// First sextuple, sorted in canonical class order.
    pub e_lines: [DivisorClass; 6],
    /// Partner sextuple, aligned so `g_lines[i]` is the unique line skew
    /// to `e_lines[i]` but meeting every other `e_lines[j]`.
    pub g_lines: [DivisorClass; 6],
}

impl DoubleSix {
    /// Check the defining incidences: both sextuples pairwise skew,
    /// `e_i·g_i = 0`, and `e_i·g_j = 1` for `i ≠ j`.
    pub fn is_valid(&self) -> bool {
        let dot = |a: &DivisorClass, b: &DivisorClass| a.pair(b).expect("same lattice");
        for i in 0..6 {
            for j in 0..6 {
                if i != j
                    && (dot(&self.e_lines[i], &self.e_lines[j]) != 0
                        || dot(&self.g_lines[i], &self.g_lines[j]) != 0)
                {
                    return false;
                }
                let want = if i == j { 0 } else { 1 };
                if dot(&self.e_lines[i], &self.g_lines[j]) != want {
                    return false;
                }
            }
        }
        true
    }
}

/// Build the class `a·l − Σ b_i e_i` from its plane-model data `(a; b1..b6)`.
pub fn blowup_class(a: i64, b: [i64; 6]) -> DivisorClass {
    let coeffs = [a, -b[0], -b[1], -b[2], -b[3], -b[4], -b[5]];
    SurfaceLattice::CubicSurface
        .class(&coeffs)
        .expect("rank-7 coefficient vector")
}

fn require_cubic(c: &DivisorClass) -> Result<(), CubicClassError> {
    if c.lattice() == SurfaceLattice::CubicSurface {
        Ok(())
    } else {
        Err(CubicClassError::WrongLattice {
            found: c.lattice(),
        })
    }
}

fn is_line(c: &DivisorClass) -> bool {
    c.lattice() == SurfaceLattice::CubicSurface
        && c.degree() == 1
        && c.pair(c).expect("same lattice") == -1
}

/// All classes `C = a·l − Σ b_i e_i` with `C·(−K) = degree` and
/// `C·C = self_int`, by exhaustive search within `|a| ≤ 3·degree`,
/// `|b_i| ≤ 3·degree`.
///
/// The box is provably sufficient: Cauchy–Schwarz gives
/// `(Σb_i)² ≤ 6·Σb_i²`, i.e. `(3a − degree)² ≤ 6(a² − self_int)`, which
/// bounds `a` inside the box for every query with solutions, and then
/// `b_i² ≤ Σb_i² = a² − self_int` bounds each `b_i`.
///
/// # Panics
///
/// If `degree < 1`.
pub fn enumerate_classes(degree: i64, self_int: i64) -> ClassSet {
    assert!(degree >= 1, "degree must be at least 1, got {degree}");
    let bound = 3 * degree;
    let mut found = Vec::new();
    // Coefficients are raw lattice coordinates: c0 = a, c_i = −b_i.
    for a in -bound..=bound {
        // Need Σc_i = degree − 3a and Σc_i² = a² − self_int.
        let target_sum = degree - 3 * a;
        let target_sq = a * a - self_int;
        if target_sq < 0 {
            continue;
        }
        let mut coeffs = [a, 0, 0, 0, 0, 0, 0];
        search_tail(&mut coeffs, 1, target_sum, target_sq, bound, &mut found);
    }
    ClassSet::from_classes(SurfaceLattice::CubicSurface, found)
        .expect("all classes constructed on the cubic-surface lattice")
}

/// Fill `coeffs[pos..7]` with integers of absolute value ≤ `bound` summing
/// to `sum` with squares summing to `sq`, pruning by Cauchy–Schwarz
/// (`sum² ≤ slots·sq`) at every step.
fn search_tail(
    coeffs: &mut [i64; 7],
    pos: usize,
    sum: i64,
    sq: i64,
    bound: i64,
    found: &mut Vec<DivisorClass>,
) {
    let slots = (7 - pos) as i64;
    if slots == 0 {
        if sum == 0 && sq == 0 {
            found.push(
                SurfaceLattice::CubicSurface
                    .class(&coeffs[..])
                    .expect("rank-7 coefficient vector"),
            );
        }
        return;
    }
    if sq < 0 || sum * sum > slots * sq || sum.abs() > slots * bound {
        return;
    }
    for c in -bound..=bound {
        if c * c > sq {
            continue;
        }
        coeffs[pos] = c;
        search_tail(coeffs, pos + 1, sum - c, sq - c * c, bound, found);
    }
    coeffs[pos] = 0;
}

/// Partition a cubic-surface class set under the S6 action permuting
/// `e1..e6`.
///
/// Returns `(representative, orbit size)` pairs in canonical order of the
/// representatives. The representative of an orbit is its lexicographically
/// least member, i.e. the member whose `e`-coefficients are sorted
/// ascending (equivalently, `b_i` sorted descending in the `(a; b)` form).
pub fn s6_orbits(cs: &ClassSet) -> Result<Vec<(DivisorClass, usize)>, CubicClassError> {
    if cs.lattice() != SurfaceLattice::CubicSurface {
        return Err(CubicClassError::WrongLattice {
            found: cs.lattice(),
        });
    }
    let mut orbits: BTreeMap<DivisorClass, usize> = BTreeMap::new();
    for c in cs {
        let mut coeffs = c.coeffs().to_vec();
        coeffs[1..].sort_unstable();
        let rep = SurfaceLattice::CubicSurface
            .class(&coeffs)
            .expect("same rank as input");
        *orbits.entry(rep).or_insert(0) += 1;
    }
    Ok(orbits.into_iter().collect())
}

/// The chosen W(E6) generators, as roots (`r·r = −2`): the five adjacent
/// transpositions `e_i − e_{i+1}` and the Cremona root `l − e1 − e2 − e3`.
///
/// Reflection in `e_i − e_j` swaps the `e_i`, `e_j` coefficients, so the
/// five adjacent roots generate all of S6; adding the Cremona root
/// generates the full Weyl group.
pub fn weyl_generators() -> Vec<DivisorClass> {
    let lat = SurfaceLattice::CubicSurface;
    let mut roots = Vec::with_capacity(6);
    for i in 0..5 {
        let mut coeffs = [0i64; 7];
        coeffs[1 + i] = 1;
        coeffs[2 + i] = -1;
        roots.push(lat.class(&coeffs).expect("rank-7 coefficient vector"));
    }
    roots.push(
        lat.class(&[1, -1, -1, -1, 0, 0, 0])
            .expect("rank-7 coefficient vector"),
    );
    roots
}

/// Reflect a class in a root `r` with `r·r = −2`: `C ↦ C + (C·r)·r`.
pub fn reflect(class: &DivisorClass, root: &DivisorClass) -> Result<DivisorClass, CubicClassError> {
    debug_assert_eq!(root.pair(root)?, -2, "reflection root must have square −2");
    let t = class.pair(root)?;
    Ok(class + &(root * t))
}

/// Close `seed` under the Weyl generators by breadth-first search with a
/// sorted-set frontier, so the output is canonical regardless of
/// exploration order.
///
/// Errors if the closure exceeds [`WEYL_ORBIT_CAP`] classes (a divergence
/// guard; the group is finite, so this indicates a bug, not a big orbit).
pub fn weyl_orbit(seed: &DivisorClass) -> Result<ClassSet, CubicClassError> {
    require_cubic(seed)?;
    let generators = weyl_generators();
    let mut seen: BTreeSet<DivisorClass> = BTreeSet::new();
    let mut frontier: BTreeSet<DivisorClass> = BTreeSet::new();
    frontier.insert(seed.clone());
    while let Some(current) = frontier.pop_first() {
        if !seen.insert(current.clone()) {
            continue;
        }
        if seen.len() > WEYL_ORBIT_CAP {
            return Err(CubicClassError::OrbitTooLarge {
                cap: WEYL_ORBIT_CAP,
            });
        }
        for root in &generators {
            let image = reflect(&current, root)?;
            if !seen.contains(&image) {
                frontier.insert(image);
            }
        }
    }
    ClassSet::from_classes(SurfaceLattice::CubicSurface, seen)
}

/// The 27 line classes (degree 1, self-intersection −1) in canonical order.
pub fn line_classes() -> ClassSet {
    enumerate_classes(1, -1)
}

/// All Schläfli double-sixes among the 27 lines, deduplicated up to
/// swapping the two sextuples and permuting indices consistently.
///
/// Search: enumerate the 6-subsets of pairwise-skew lines (there are 72,
/// one per blowdown structure); each skew sextuple has a unique partner
/// sextuple (`g_i` = the one line skew to `e_i` meeting every other `e_j`),
/// and the unordered pair of sextuples is the double-six. The 72 sextuples
/// pair up into 36 double-sixes.
pub fn double_sixes() -> Vec<DoubleSix> {
    let lines = line_classes().into_vec();
    let n = lines.len();
    let meets: Vec<Vec<bool>> = lines
        .iter()
        .map(|a| {
            lines
                .iter()
                .map(|b| a.pair(b).expect("same lattice") == 1)
                .collect()
        })
        .collect();
    let skew = |i: usize, j: usize| i != j && !meets[i][j];

    // All 6-subsets of pairwise-skew lines, as ascending index lists.
    let mut sextuples: Vec<[usize; 6]> = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(6);
    fn extend(
        start: usize,
        n: usize,
        stack: &mut Vec<usize>,
        skew: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<[usize; 6]>,
    ) {
        if stack.len() == 6 {
            out.push(stack[..].try_into().expect("six entries"));
            return;
        }
        for i in start..n {
            if stack.iter().all(|&j| skew(i, j)) {
                stack.push(i);
                extend(i + 1, n, stack, skew, out);
                stack.pop();
            }
        }
    }
    extend(0, n, &mut stack, &skew, &mut sextuples);

    // Partner of a sextuple: for each member, the unique line skew to it
    // but meeting the other five.
    let partner = |sextuple: &[usize; 6]| -> [usize; 6] {
        sextuple.map(|i| {
            let candidates: Vec<usize> = (0..n)
                .filter(|&g| {
                    !sextuple.contains(&g)
                        && skew(g, i)
                        && sextuple.iter().all(|&j| j == i || meets[g][j])
                })
                .collect();
            assert_eq!(
                candidates.len(),
                1,
                "each sextuple member has exactly one partner line"
            );
            candidates[0]
        })
    };

    let mut seen: BTreeSet<[[usize; 6]; 2]> = BTreeSet::new();
    let mut out = Vec::new();
    for e in &sextuples {
        let g = partner(e);
        let mut g_sorted = g;
        g_sorted.sort_unstable();
        let mut key = [*e, g_sorted];
        key.sort_unstable();
        if seen.insert(key) {
            // Canonical stored form: the lex-smaller sextuple (already
            // ascending) as e_lines, partners index-aligned.
            let (e_idx, g_idx) = if *e <= g_sorted {
                (*e, g)
            } else {
                (g_sorted, partner(&g_sorted))
            };
            out.push(DoubleSix {
                e_lines: e_idx.map(|i| lines[i].clone()),
                g_lines: g_idx.map(|i| lines[i].clone()),
            });
        }
    }
    out.sort_by(|a, b| a.e_lines.cmp(&b.e_lines));
    out
}

/// Number of line classes, outside `targets`, meeting every target
/// (`L·T = 1` for all `T`).
///
/// Errors if any target is not a line class.
pub fn count_lines_meeting(targets: &[DivisorClass]) -> Result<usize, CubicClassError> {
    for t in targets {
        require_cubic(t)?;
        if !is_line(t) {
            return Err(CubicClassError::NotALine {
                class: t.to_string(),
                degree: t.degree(),
                self_int: t.pair(t)?,
            });
        }
    }
    let lines = line_classes();
    let mut count = 0;
    for line in &lines {
        if targets.contains(line) {
            continue;
        }
        if targets.iter().all(|t| line.pair(t).expect("same lattice") == 1) {
            count += 1;
        }
    }
    Ok(count)
}

/// The incidence graph of the 27 lines: vertices in canonical class order,
/// an edge wherever `L·L' = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceGraph {
    vertices: Vec<DivisorClass>,
    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    edges: Vec<(usize, usize)>,
}

impl IncidenceGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[DivisorClass] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        i != j && self.edges.binary_search(&key).is_ok()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == i || *b == i)
            .count()
    }

    /// Vertex degrees in vertex order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs = vec![0usize; self.vertices.len()];
        for &(a, b) in &self.edges {
            degs[a] += 1;
            degs[b] += 1;
        }
        degs
    }

    /// Index of a class among the vertices, if present.
    pub fn vertex_index(&self, class: &DivisorClass) -> Option<usize> {
        self.vertices.binary_search(class).ok()
    }
}

/// Build the incidence graph of the 27 lines.
pub fn incidence_graph() -> IncidenceGraph {
    let vertices = line_classes().into_vec();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            if vertices[i].pair(&vertices[j]).expect("same lattice") == 1 {
                edges.push((i, j));
            }
        }
    }
    IncidenceGraph { vertices, edges }
}
