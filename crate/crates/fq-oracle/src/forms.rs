//! Cubic forms on projective space and rational curves given by binary
//! forms, over a finite field.
//!
//! Binary forms in `(s, t)` of degree `d` are coefficient vectors of
//! length `d + 1` indexed by the `t`-degree: entry `j` is the
//! coefficient of `s^{d-j} t^j`.  Cubic forms are dense coefficient
//! vectors over the canonical degree-3 monomial list returned by
//! [`cubic_monomials`].

use crate::field::FqField;
use crate::linalg;
use crate::lines::FqLine;
use crate::OracleError;

// ---------------------------------------------------------------------------
// Binary-form arithmetic (shared by curves, restrictions, and censuses)
// ---------------------------------------------------------------------------

pub(crate) fn bf_mul(field: &FqField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(ai, bj));
        }
    }
    out
}

pub(crate) fn bf_add_scaled(field: &FqField, acc: &mut [u32], c: u32, f: &[u32]) {
    for (a, &fi) in acc.iter_mut().zip(f) {
        *a = field.add(*a, field.mul(c, fi));
    }
}

pub(crate) fn bf_eval(field: &FqField, f: &[u32], s: u32, t: u32) -> u32 {
    let d = f.len() - 1;
    let mut acc = 0u32;
    for (j, &c) in f.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = field.mul(
            c,
            field.mul(field.pow(s, (d - j) as u64), field.pow(t, j as u64)),
        );
        acc = field.add(acc, term);
    }
    acc
}

// ---------------------------------------------------------------------------
// Degree-3 monomials
// ---------------------------------------------------------------------------

/// Exponent tuples of the degree-3 monomials in `n + 1` variables, in
/// descending lexicographic order (so `x_0^3` comes first).  This is the
/// coefficient order used by [`CubicForm`].
pub fn cubic_monomials(n: usize) -> Vec<Vec<u8>> {
    fn go(slots: usize, remaining: u8, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if slots == 1 {
            let mut m = prefix.clone();
            m.push(remaining);
            out.push(m);
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            go(slots - 1, remaining - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n + 1, 3, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Cubic forms
// ---------------------------------------------------------------------------

/// A nonzero cubic form in `n + 1` variables over a finite field, stored
/// densely over [`cubic_monomials`].
#[derive(Clone, Debug)]
pub struct CubicForm {
    field: FqField,
    n: usize,
    coeffs: Vec<u32>,
    /// Cached sparse view of `coeffs`: each nonzero term as the size-3
    /// multiset of its variables, e.g. `x0^2 x1` as `([0, 0, 1], c)`.
    /// Restrictions run per-candidate in enumeration loops and must not
    /// re-derive this.
    terms: Vec<([usize; 3], u32)>,
}

impl PartialEq for CubicForm {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.coeffs == other.coeffs
    }
}

impl Eq for CubicForm {}

impl CubicForm {
    /// Builds a form from sparse `(exponents, coefficient)` terms.
    /// Exponent tuples must have length `n + 1` and total degree 3;
    /// coefficients are element indices.  Repeated monomials accumulate.
    pub fn from_terms(field: &FqField, n: usize, terms: &[(Vec<u8>, u32)]) -> Self {
        let monomials = cubic_monomials(n);
        let mut coeffs = vec![0u32; monomials.len()];
        for (exps, c) in terms {
            assert_eq!(exps.len(), n + 1, "exponent tuple length must be n + 1");
            assert_eq!(
                exps.iter().map(|&e| u32::from(e)).sum::<u32>(),
                3,
                "monomial degree must be 3"
            );
            assert!(*c < field.q(), "coefficient index out of range");
            let idx = monomials
                .iter()
                .position(|m| m == exps)
                .expect("every degree-3 tuple appears in the monomial list");
            coeffs[idx] = field.add(coeffs[idx], *c);
        }
        Self::from_dense(field, n, coeffs)
    }

    pub(crate) fn from_dense(field: &FqField, n: usize, coeffs: Vec<u32>) -> Self {
        let monomials = cubic_monomials(n);
        assert_eq!(coeffs.len(), monomials.len());
        assert!(
            coeffs.iter().any(|&c| c != 0),
            "cubic form must not be identically zero"
        );
        let mut terms = Vec::new();
        for (m, &c) in monomials.iter().zip(&coeffs) {
            if c == 0 {
                continue;
            }
            let mut vars = [0usize; 3];
            let mut at = 0;
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    vars[at] = v;
                    at += 1;
                }
            }
            terms.push((vars, c));
        }
        CubicForm {
            field: field.clone(),
            n,
            coeffs,
            terms,
        }
    }

    /// The Fermat cubic surface `x0^3 + x1^3 + x2^3 + x3^3` in `P^3`.
    pub fn fermat_surface(field: &FqField) -> Self {
        Self::fermat(field, 3)
    }

    /// The Fermat cubic threefold `x0^3 + ... + x4^3` in `P^4`.
    pub fn fermat_threefold(field: &FqField) -> Self {
        Self::fermat(field, 4)
    }

    fn fermat(field: &FqField, n: usize) -> Self {
        let terms: Vec<(Vec<u8>, u32)> = (0..=n)
            .map(|i| {
                let mut e = vec![0u8; n + 1];
                e[i] = 3;
                (e, 1)
            })
            .collect();
        Self::from_terms(field, n, &terms)
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dense coefficients over [`cubic_monomials`]`(n)`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn eval(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.n + 1);
        let mut acc = 0u32;
        for &(vars, c) in &self.terms {
            let prod = self.field.mul(
                point[vars[0]],
                self.field.mul(point[vars[1]], point[vars[2]]),
            );
            acc = self.field.add(acc, self.field.mul(c, prod));
        }
        acc
    }

    /// Restricts the form to the line `{ u a + v b }`, returning the
    /// binary cubic in `(u, v)` as 4 coefficients indexed by `v`-degree.
    /// The line lies in the hypersurface iff all 4 vanish; this is an
    /// exact symbolic criterion, valid over every field size.
    pub(crate) fn restrict_to_rows(&self, a: &[u32], b: &[u32]) -> [u32; 4] {
        let f = &self.field;
        let mut acc = [0u32; 4];
        for &(vars, c) in &self.terms {
            // Expand c * prod_i (a_{v_i} u + b_{v_i} v) one linear factor
            // at a time.
            let mut poly = [c, 0, 0, 0];
            let mut deg = 0;
            for &v in &vars {
                let (av, bv) = (a[v], b[v]);
                let mut next = [0u32; 4];
                for (j, &pj) in poly.iter().enumerate().take(deg + 1) {
                    next[j] = f.add(next[j], f.mul(pj, av));
                    next[j + 1] = f.add(next[j + 1], f.mul(pj, bv));
                }
                poly = next;
                deg += 1;
            }
            for (a_j, p_j) in acc.iter_mut().zip(poly) {
                *a_j = f.add(*a_j, p_j);
            }
        }
        acc
    }

    pub fn restrict_to_line(&self, line: &FqLine) -> [u32; 4] {
        assert_eq!(line.n(), self.n, "line and form live in different spaces");
        self.restrict_to_rows(line.row(0), line.row(1))
    }

    pub fn contains_line(&self, line: &FqLine) -> bool {
        self.restrict_to_line(line) == [0, 0, 0, 0]
    }

    /// Substitutes the curve's components for the variables, returning a
    /// binary form of degree `3 d` in `(s, t)`.
    pub fn restrict_to_curve(&self, curve: &RncCurve) -> Vec<u32> {
        assert_eq!(curve.n(), self.n, "curve and form live in different spaces");
        assert_eq!(curve.field(), &self.field, "field mismatch");
        let f = &self.field;
        let mut acc = vec![0u32; 3 * curve.degree() + 1];
        for &(vars, c) in &self.terms {
            let prod = bf_mul(
                f,
                &bf_mul(f, curve.component(vars[0]), curve.component(vars[1])),
                curve.component(vars[2]),
            );
            bf_add_scaled(f, &mut acc, c, &prod);
        }
        acc
    }

    pub fn contains_curve(&self, curve: &RncCurve) -> bool {
        self.restrict_to_curve(curve).iter().all(|&c| c == 0)
    }

    /// Re-reads the form over an extension of its prime field.  Only
    /// forms over `F_p` can be lifted; their coefficients are
    /// prime-subfield indices in every extension.
    pub fn lift_to(&self, ext: &FqField) -> CubicForm {
        assert_eq!(self.field.k(), 1, "only prime-field forms lift");
        assert_eq!(self.field.p(), ext.p(), "characteristic mismatch");
        CubicForm::from_dense(ext, self.n, self.coeffs.clone())
    }
}

/// Parses the one-monomial-per-line cubic-form format: `n + 1` exponent
/// integers followed by one coefficient, whitespace-separated, with `#`
/// starting a comment.  Coefficients are element indices `0..q`; a
/// negative integer `-c` denotes the prime-subfield element `-c mod p`.
pub fn parse_cubic_form(field: &FqField, n: usize, text: &str) -> Result<CubicForm, OracleError> {
    let mut terms: Vec<(Vec<u8>, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != n + 2 {
            return Err(OracleError::FormParse {
                line: line_no,
                message: format!(
                    "expected {} exponents and a coefficient, found {} tokens",
                    n + 1,
                    tokens.len()
                ),
            });
        }
        let mut exps = Vec::with_capacity(n + 1);
        for tok in &tokens[..n + 1] {
            let e: u8 = tok.parse().map_err(|_| OracleError::FormParse {
                line: line_no,
                message: format!("bad exponent `{tok}`"),
            })?;
            exps.push(e);
        }
        if exps.iter().map(|&e| u32::from(e)).sum::<u32>() != 3 {
            return Err(OracleError::FormParse {
                line: line_no,
                message: "exponents must sum to 3".into(),
            });
        }
        let tok = tokens[n + 1];
        let value: i64 = tok.parse().map_err(|_| OracleError::FormParse {
            line: line_no,
            message: format!("bad coefficient `{tok}`"),
        })?;
        let coeff = if value < 0 {
            let p = i64::from(field.p());
            (((value % p) + p) % p) as u32
        } else if value < i64::from(field.q()) {
            value as u32
        } else {
            return Err(OracleError::FormParse {
                line: line_no,
                message: format!(
                    "coefficient {value} out of range for a field with {} elements",
                    field.q()
                ),
            });
        };
        terms.push((exps, coeff));
    }
    if terms.is_empty() {
        return Err(OracleError::FormParse {
            line: text.lines().count() + 1,
            message: "no monomials given".into(),
        });
    }
    let monomials = cubic_monomials(n);
    let mut coeffs = vec![0u32; monomials.len()];
    for (exps, c) in &terms {
        let pos = monomials
            .iter()
            .position(|m| m == exps)
            .expect("degree checked above");
        coeffs[pos] = field.add(coeffs[pos], *c);
    }
    if coeffs.iter().all(|&c| c == 0) {
        return Err(OracleError::FormParse {
            line: text.lines().count() + 1,
            message: "form is identically zero".into(),
        });
    }
    Ok(CubicForm::from_dense(field, n, coeffs))
}

// ---------------------------------------------------------------------------
// Rational curves
// ---------------------------------------------------------------------------

/// A rational curve of degree `d` in `P^n`, given by `n + 1` binary
/// forms of degree `d` in `(s, t)`.  The curve is nondegenerate (spans
/// `P^n`) exactly when the components are linearly independent; that is
/// checked where an operation needs it, not at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RncCurve {
    field: FqField,
    n: usize,
    degree: usize,
    components: Vec<Vec<u32>>,
}

impl RncCurve {
    pub fn new(field: &FqField, n: usize, degree: usize, components: Vec<Vec<u32>>) -> Self {
        assert!(degree >= 1, "curve degree must be positive");
        assert_eq!(components.len(), n + 1, "need n + 1 components");
        for c in &components {
            assert_eq!(c.len(), degree + 1, "component degree mismatch");
            assert!(c.iter().all(|&x| x < field.q()), "coefficient out of range");
        }
        RncCurve {
            field: field.clone(),
            n,
            degree,
            components,
        }
    }

    /// The standard rational normal curve of degree `n` in `P^n`:
    /// `x_i = s^{n-i} t^i`.
    pub fn rational_normal(field: &FqField, n: usize) -> Self {
        let components = (0..=n)
            .map(|i| {
                let mut c = vec![0u32; n + 1];
                c[i] = 1;
                c
            })
            .collect();
        Self::new(field, n, n, components)
    }

    /// A degree-5 rational curve in `P^4` obtained by applying a seeded
    /// rank-5 linear projection to the rational normal quintic in `P^5`.
    /// Matrix entries are drawn from a counter-based stream keyed by
    /// `seed`, so the same `(field, seed)` pair reproduces the same
    /// curve everywhere; draws repeat until the matrix has full rank.
    pub fn projected_quintic(field: &FqField, seed: u64) -> Self {
        use rand::RngCore;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        loop {
            let rows: Vec<Vec<u32>> = (0..5)
                .map(|_| (0..6).map(|_| rng.next_u32() % field.q()).collect())
                .collect();
            if linalg::rank(field, &rows) == 5 {
                // Components of the quintic RNC are the monomial basis,
                // so projected components are exactly the matrix rows.
                return Self::new(field, 4, 5, rows);
            }
        }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[u32] {
        &self.components[i]
    }

    /// Components linearly independent over the field.
    pub fn is_nondegenerate(&self) -> bool {
        linalg::rank(&self.field, &self.components) == self.n + 1
    }

    /// The image of the parameter `[s : t]`, as `n + 1` coordinates.
    pub fn point_at(&self, s: u32, t: u32) -> Vec<u32> {
        self.components
            .iter()
            .map(|c| bf_eval(&self.field, c, s, t))
            .collect()
    }

    /// Re-reads the curve over an extension of its prime field.
    pub fn lift_to(&self, ext: &FqField) -> RncCurve {
        assert_eq!(self.field.k(), 1, "only prime-field curves lift");
        assert_eq!(self.field.p(), ext.p(), "characteristic mismatch");
        RncCurve {
            field: ext.clone(),
            n: self.n,
            degree: self.degree,
            components: self.components.clone(),
        }
    }
}
