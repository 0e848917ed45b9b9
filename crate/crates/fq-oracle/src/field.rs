//! Arithmetic in the finite field `F_{p^k}`.
//!
//! Elements are `u32` indices: the element with polynomial coordinates
//! `c_0 + c_1 a + ... + c_{k-1} a^{k-1}` (where `a` is the class of `x`
//! modulo the field's defining polynomial) has index `c_0 + c_1 p + ... +
//! c_{k-1} p^{k-1}`.  Index arithmetic is therefore base-`p` digit
//! arithmetic, and the prime subfield occupies exactly the indices
//! `0..p`, so prime-field constants embed into every extension of the
//! same characteristic without translation.
//!
//! The defining polynomial is pinned, not chosen arbitrarily: it is the
//! lexicographically least monic irreducible of degree `k`, comparing
//! coefficient tuples from the highest non-leading coefficient down.
//! Every run on every machine therefore builds the *same* field tables,
//! which is what makes the enumeration outputs of this crate
//! bit-for-bit reproducible.
//!
//! Small fields (`q <= 2^16`) get discrete log/exp tables and do
//! multiplication by table lookup; larger fields fall back to on-the-fly
//! polynomial reduction.  Both paths implement the same arithmetic and
//! the property suite pits them against the field axioms.

use crate::OracleError;

/// Largest field order for which log/exp multiplication tables are built.
const TABLE_Q: u32 = 1 << 16;

/// Largest field order for which a full q x q addition table is built.
/// Censuses hammer addition in extension fields, where digitwise
/// addition costs a division chain; a 1024^2 table tops out at 4 MiB.
const ADD_TABLE_Q: u32 = 1 << 10;

/// The finite field `F_{p^k}` with its deterministic defining polynomial
/// and (for small orders) precomputed multiplication tables.
#[derive(Clone)]
pub struct FqField {
    p: u32,
    k: u32,
    q: u32,
    /// Defining polynomial, ascending degree, length `k + 1`, monic.
    modulus: Vec<u32>,
    /// `exp[i]` is `g^i` for a fixed generator `g`; length `2(q-1)` so a
    /// sum of two logs never needs reduction.  Empty for large fields.
    exp: Vec<u32>,
    /// `log[x]` inverts `exp` on `1..q`; `log[0]` is a sentinel.
    log: Vec<u32>,
    /// Flattened `q x q` sum table (`add[a * q + b]`).  Empty for fields
    /// above [`ADD_TABLE_Q`].
    add: Vec<u32>,
    /// `neg[a]` is `-a`.  Empty when `add` is.
    neg: Vec<u32>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

impl std::fmt::Debug for FqField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FqField")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Builds `F_{p^k}`.
///
/// Fails if `p` is not prime or if `p^k` does not fit the `u32` element
/// representation.  The degree is capped at 6 because every consumer in
/// this crate enumerates the field (or projective spaces over it)
/// exhaustively.
pub fn make_field(p: u32, k: u32) -> Result<FqField, OracleError> {
    if !is_prime(p) {
        return Err(OracleError::NotPrime { p });
    }
    assert!((1..=6).contains(&k), "extension degree {k} outside 1..=6");
    let mut q: u64 = 1;
    for _ in 0..k {
        q *= u64::from(p);
        if q > u64::from(u32::MAX / 2) {
            return Err(OracleError::FieldTooLarge { p, k });
        }
    }
    let q = q as u32;
    let modulus = least_irreducible(p, k);
    let mut field = FqField {
        p,
        k,
        q,
        modulus,
        exp: Vec::new(),
        log: Vec::new(),
        add: Vec::new(),
        neg: Vec::new(),
    };
    if q <= TABLE_Q {
        field.build_tables();
    }
    if k > 1 && q <= ADD_TABLE_Q {
        field.build_add_tables();
    }
    Ok(field)
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FqField {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements, `p^k`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial in ascending degree, length `k + 1`, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// All element indices, `0..q`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    fn digits(&self, x: u32) -> Vec<u32> {
        let mut out = vec![0; self.k as usize];
        let mut x = x;
        for d in out.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        debug_assert_eq!(x, 0, "element index out of range");
        out
    }

    fn from_digits(&self, digits: &[u32]) -> u32 {
        let mut x = 0u32;
        for &d in digits.iter().rev() {
            x = x * self.p + d;
        }
        x
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if self.k == 1 {
            return (a + b) % self.p;
        }
        if !self.add.is_empty() {
            return self.add[(a * self.q + b) as usize];
        }
        self.add_digitwise(a, b)
    }

    /// Digitwise base-p addition: no carries cross digit boundaries.
    fn add_digitwise(&self, a: u32, b: u32) -> u32 {
        let mut out = 0u32;
        let mut pow = 1u32;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * pow;
            a /= self.p;
            b /= self.p;
            pow *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        if !self.neg.is_empty() {
            return self.neg[a as usize];
        }
        self.neg_digitwise(a)
    }

    fn neg_digitwise(&self, a: u32) -> u32 {
        let mut out = 0u32;
        let mut pow = 1u32;
        let mut a = a;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * pow;
            a /= self.p;
            pow *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            return self.exp[(self.log[a as usize] + self.log[b as usize]) as usize];
        }
        self.mul_direct(a, b)
    }

    /// Schoolbook polynomial product followed by reduction modulo the
    /// defining polynomial.  Correct for every field; used directly when
    /// tables are not built and to bootstrap the tables themselves.
    fn mul_direct(&self, a: u32, b: u32) -> u32 {
        let p = u64::from(self.p);
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * self.k as usize - 1];
        for (i, &ai) in da.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(ai) * u64::from(bj)) % p;
            }
        }
        // The modulus is monic, so clearing the top coefficient at degree
        // d >= k subtracts that coefficient times x^{d-k} * modulus.
        for d in (self.k as usize..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mi) in self.modulus.iter().enumerate().take(self.k as usize) {
                let idx = d - self.k as usize + i;
                prod[idx] = (prod[idx] + (p - u64::from(mi) % p) * c) % p;
            }
        }
        let digits: Vec<u32> = prod[..self.k as usize].iter().map(|&c| c as u32).collect();
        self.from_digits(&digits)
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        if !self.exp.is_empty() {
            return self.exp[(self.q - 1 - self.log[a as usize]) as usize];
        }
        self.pow(a, u64::from(self.q) - 2)
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut base = a;
        let mut e = e;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The field's Frobenius endomorphism `x -> x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, u64::from(self.p))
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        let factors = prime_factors(order);
        // Start at 1 so the two-element field, whose multiplicative group
        // is trivial, finds its generator; for larger fields the element 1
        // never passes the order test.
        let generator = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_direct(g, u64::from(order / r)) != 1)
            })
            .expect("every finite field has a primitive element");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            exp[(i + order) as usize] = x;
            log[x as usize] = i;
            x = self.mul_direct(x, generator);
        }
        assert_eq!(x, 1, "generator order must be q - 1");
        self.exp = exp;
        self.log = log;
    }

    fn build_add_tables(&mut self) {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        for a in 0..self.q {
            for b in a..self.q {
                let s = self.add_digitwise(a, b);
                add[(a as usize) * q + b as usize] = s;
                add[(b as usize) * q + a as usize] = s;
            }
        }
        self.neg = (0..self.q).map(|a| self.neg_digitwise(a)).collect();
        self.add = add;
    }

    /// `pow` routed through `mul_direct`, for use before tables exist.
    fn pow_direct(&self, a: u32, e: u64) -> u32 {
        let mut base = a;
        let mut e = e;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_direct(acc, base);
            }
            base = self.mul_direct(base, base);
            e >>= 1;
        }
        acc
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The lexicographically least monic irreducible of degree `k` over
/// `F_p`, comparing the coefficient tuple `(c_{k-1}, ..., c_0)`.
///
/// Candidates are scanned in that order by counting an integer whose
/// base-`p` digits are the non-leading coefficients (most significant
/// digit = coefficient of `x^{k-1}`), so the first irreducible found is
/// the least one.  Returned ascending-degree, length `k + 1`.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let mut count: u64 = 1;
    for _ in 0..k {
        count *= u64::from(p);
    }
    for m in 0..count {
        // Base-p digits of m are the non-leading coefficients, least
        // significant digit on x^0; counting m upward therefore walks the
        // tuples (c_{k-1}, ..., c_0) in ascending lexicographic order.
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut m = m;
        for c in coeffs.iter_mut().take(k as usize) {
            *c = (m % u64::from(p)) as u32;
            m /= u64::from(p);
        }
        coeffs[k as usize] = 1;
        if poly_is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducibles of every degree exist over every prime field")
}

/// Irreducibility over `F_p` via the Frobenius criterion: monic `f` of
/// degree `k` is irreducible iff `x^{p^k} = x (mod f)` and, for every
/// prime `r | k`, `gcd(x^{p^{k/r}} - x, f) = 1`.
fn poly_is_irreducible(p: u32, f: &[u32]) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let xpk = poly_powmod_x(p, f, pow_u64(p, k as u32));
    if !poly_mod_sub(p, &xpk, &x).is_empty() {
        return false;
    }
    for r in prime_factors(k as u32) {
        let e = k as u32 / r;
        let xpe = poly_powmod_x(p, f, pow_u64(p, e));
        let diff = poly_mod_sub(p, &xpe, &x);
        if poly_gcd(p, &diff, f).len() != 1 {
            return false;
        }
    }
    true
}

fn pow_u64(p: u32, e: u32) -> u64 {
    let mut out = 1u64;
    for _ in 0..e {
        out *= u64::from(p);
    }
    out
}

/// `x^e mod f` over `F_p`, coefficients ascending, trailing zeros trimmed.
fn poly_powmod_x(p: u32, f: &[u32], e: u64) -> Vec<u32> {
    let mut base = poly_rem(p, &[0, 1], f);
    let mut acc = vec![1u32];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(p, &poly_mul(p, &acc, &base), f);
        }
        base = poly_rem(p, &poly_mul(p, &base, &base), f);
        e >>= 1;
    }
    acc
}

fn poly_trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + u64::from(ai) * u64::from(bj)) % u64::from(p);
        }
    }
    poly_trim(out.into_iter().map(|c| c as u32).collect())
}

fn poly_mod_sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        *o = (ai + p - bi) % p;
    }
    poly_trim(out)
}

/// Remainder of `a` modulo monic-leading `f` over `F_p`.
fn poly_rem(p: u32, a: &[u32], f: &[u32]) -> Vec<u32> {
    let mut rem: Vec<u32> = a.to_vec();
    let df = f.len() - 1;
    let lead_inv = mod_inv(p, f[df]);
    while rem.len() > df {
        let d = rem.len() - 1;
        let c = (u64::from(rem[d]) * u64::from(lead_inv) % u64::from(p)) as u32;
        if c != 0 {
            for (i, &fi) in f.iter().enumerate() {
                let idx = d - df + i;
                let sub = (u64::from(c) * u64::from(fi) % u64::from(p)) as u32;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        rem.pop();
        while rem.last() == Some(&0) {
            rem.pop();
        }
    }
    rem
}

fn poly_gcd(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = mod_inv(p, lead);
        for c in a.iter_mut() {
            *c = (u64::from(*c) * u64::from(inv) % u64::from(p)) as u32;
        }
    }
    a
}

fn mod_inv(p: u32, a: u32) -> u32 {
    assert!(a % p != 0, "zero has no inverse");
    // Fermat: a^(p-2) mod p.
    let mut base = u64::from(a % p);
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    acc as u32
}
