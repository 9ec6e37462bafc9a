//! Arithmetic in GF(2^m) = GF(2)[t]/(modulus).
//!
//! Elements are bit-vectors of length `m` packed in a `u32` (bit `i` is the
//! coefficient of `t^i`). Every element remembers which modulus it was built
//! under; combining elements of different fields panics instead of silently
//! reinterpreting the bits.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;
/// Extension degree used when nothing else is requested. 12 = lcm(1, 2, 3, 4, 6).
pub const DEFAULT_DEGREE: u32 = 12;
/// Log/antilog tables are built up to this degree; above it multiplication
/// falls back to shift-and-add.
const TABLE_LIMIT: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} out of range 1..=24")]
    DegreeOutOfRange(u32),
    #[error("modulus {0} is not irreducible over GF(2)")]
    Reducible(String),
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: u32, found: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("element of {found} used where {expected} was expected")]
    ContextMismatch { expected: String, found: String },
    #[error("bits {bits:#x} do not encode an element of GF(2^{m})")]
    OutOfRange { bits: u32, m: u32 },
    #[error("GF(2^{k}) is not a subfield of GF(2^{m})")]
    NotASubfield { k: u32, m: u32 },
    #[error("malformed field spec `{0}`")]
    BadSpec(String),
}

/// An element of GF(2^m), tagged with the modulus of its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    bits: u32,
    field: u32,
}

impl FieldElement {
    /// Raw coefficient vector.
    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.bits == 1
    }

    /// Identifier of the owning field (its modulus as a bit-vector).
    #[inline]
    pub fn field_id(self) -> u32 {
        self.field
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field, self.bits).cmp(&(other.field, other.bits))
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.field, rhs.field, "adding elements of different fields");
        FieldElement {
            bits: self.bits ^ rhs.bits,
            field: self.field,
        }
    }
}

impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

/// Prints the element as a polynomial in `u`, the residue class of `t`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_u_poly(f, self.bits)
    }
}

pub(crate) fn write_u_poly(f: &mut impl fmt::Write, bits: u32) -> fmt::Result {
    if bits == 0 {
        return f.write_str("0");
    }
    let mut first = true;
    for i in (0..32).rev() {
        if bits >> i & 1 == 1 {
            if !first {
                f.write_char('+')?;
            }
            first = false;
            match i {
                0 => f.write_char('1')?,
                1 => f.write_char('u')?,
                _ => write!(f, "u^{i}")?,
            }
        }
    }
    Ok(())
}

struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

struct Inner {
    m: u32,
    modulus: u32,
    mask: u32,
    primitive: u32,
    order_factors: Vec<u64>,
    tables: Option<Tables>,
}

/// The ambient field GF(2^m). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name(), self.modulus_string())
    }
}

// ---- GF(2)[t] helpers on u64 bit-vectors ----

fn gf2_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn gf2_mod(mut a: u64, b: u64) -> u64 {
    let db = gf2_degree(b);
    while gf2_degree(a) >= db {
        a ^= b << (gf2_degree(a) - db);
    }
    a
}

fn gf2_mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    let mut r: u128 = 0;
    let mut bb = b;
    let mut i = 0;
    while bb != 0 {
        if bb & 1 == 1 {
            r ^= (a as u128) << i;
        }
        bb >>= 1;
        i += 1;
    }
    let d = gf2_degree(modulus);
    let mut k = 127 - r.leading_zeros() as i32;
    while k >= d {
        if r >> k & 1 == 1 {
            r ^= (modulus as u128) << (k - d);
        }
        k -= 1;
    }
    r as u64
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = gf2_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Distinct-degree irreducibility test for a polynomial over GF(2).
pub fn is_irreducible_gf2(p: u64) -> bool {
    let d = gf2_degree(p);
    if d <= 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    // x^(2^i) mod p for i = 1..=d/2 must be coprime to x^(2^i) - x
    let mut x_pow = 0b10u64;
    for _ in 1..=d / 2 {
        x_pow = gf2_mulmod(x_pow, x_pow, p);
        if gf2_gcd(p, x_pow ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible of degree `m`, candidates ordered by their
/// coefficient tuple read from the constant term upward.
fn sieve_modulus(m: u32) -> u64 {
    for r in 0u64..(1u64 << m) {
        let mut low = 0u64;
        for i in 0..m {
            // coefficient of t^i is bit (m-1-i) of r
            if r >> (m - 1 - i) & 1 == 1 {
                low |= 1 << i;
            }
        }
        let p = (1u64 << m) | low;
        if is_irreducible_gf2(p) {
            return p;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// GF(2^m) with the sieve-chosen modulus.
    pub fn new(m: u32) -> Result<Self, FieldError> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        Self::with_modulus(m, sieve_modulus(m) as u32)
    }

    /// GF(2^m) with an explicit modulus given as a bit-vector of `m + 1` coefficients.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Self, FieldError> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        let found = gf2_degree(modulus as u64);
        if found != m as i32 {
            return Err(FieldError::ModulusDegree {
                expected: m,
                found: found.max(0) as u32,
            });
        }
        if !is_irreducible_gf2(modulus as u64) {
            return Err(FieldError::Reducible(gf2_poly_string(modulus)));
        }
        let order = (1u64 << m) - 1;
        let order_factors = prime_factors(order);
        let mut inner = Inner {
            m,
            modulus,
            mask: ((1u64 << m) - 1) as u32,
            primitive: 1,
            order_factors,
            tables: None,
        };
        inner.primitive = find_primitive(&inner);
        if m <= TABLE_LIMIT {
            let n = order as usize;
            let mut exp = vec![0u32; 2 * n + 1];
            let mut log = vec![0u32; 1 << m];
            let mut x = 1u32;
            for (i, slot) in exp.iter_mut().enumerate().take(n) {
                *slot = x;
                log[x as usize] = i as u32;
                x = slow_mul(&inner, x, inner.primitive);
            }
            for i in n..exp.len() {
                exp[i] = exp[i - n];
            }
            inner.tables = Some(Tables { log, exp });
        }
        Ok(FieldCtx {
            inner: Arc::new(inner),
        })
    }

    /// Parses `GF(2^m)` or `GF(2^m):t^m+...+1`.
    pub fn from_spec(spec: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::BadSpec(spec.to_string());
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (s.as_str(), None),
        };
        let m: u32 = head
            .strip_prefix("GF(2^")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        match modulus {
            None => Self::new(m),
            Some(text) => {
                let bits = parse_gf2_poly(text).ok_or_else(bad)?;
                if bits > u32::MAX as u64 {
                    return Err(bad());
                }
                Self::with_modulus(m, bits as u32)
            }
        }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Number of elements, `2^m`.
    #[inline]
    pub fn size(&self) -> u64 {
        1u64 << self.inner.m
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.inner.modulus
    }

    pub fn modulus_string(&self) -> String {
        gf2_poly_string(self.inner.modulus)
    }

    /// `GF(2^m)`.
    pub fn name(&self) -> String {
        format!("GF(2^{})", self.inner.m)
    }

    /// Identifier carried by every element of this field.
    #[inline]
    pub fn id(&self) -> u32 {
        self.inner.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The residue class of `t`.
    pub fn u(&self) -> FieldElement {
        self.wrap(self.reduce_wide(0b10))
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive(&self) -> FieldElement {
        self.wrap(self.inner.primitive)
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement, FieldError> {
        if bits & !self.inner.mask != 0 {
            return Err(FieldError::OutOfRange {
                bits,
                m: self.inner.m,
            });
        }
        Ok(self.wrap(bits))
    }

    /// `u^k`, reduced.
    pub fn u_pow(&self, k: u64) -> FieldElement {
        self.pow(self.u(), k)
    }

    #[inline]
    pub(crate) fn wrap(&self, bits: u32) -> FieldElement {
        FieldElement {
            bits,
            field: self.inner.modulus,
        }
    }

    /// Checks that `x` belongs to this field.
    pub fn adopt(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.field != self.inner.modulus {
            return Err(self.mismatch(x));
        }
        Ok(x)
    }

    fn mismatch(&self, x: FieldElement) -> FieldError {
        FieldError::ContextMismatch {
            expected: format!("{}:{}", self.name(), self.modulus_string()),
            found: gf2_poly_string(x.field),
        }
    }

    #[inline]
    #[track_caller]
    fn check(&self, x: FieldElement) -> u32 {
        if x.field != self.inner.modulus {
            panic!("{}", self.mismatch(x));
        }
        x.bits
    }

    // ---- raw arithmetic on bit-vectors (no field tag checks) ----

    fn reduce_wide(&self, mut r: u64) -> u32 {
        let m = self.inner.m as i32;
        let modulus = self.inner.modulus as u64;
        let mut k = gf2_degree(r);
        while k >= m {
            if r >> k & 1 == 1 {
                r ^= modulus << (k - m);
            }
            k -= 1;
        }
        r as u32
    }

    /// Log and antilog tables (antilog doubled in length), when the field is small enough.
    pub(crate) fn log_exp(&self) -> Option<(&[u32], &[u32])> {
        self.inner.tables.as_ref().map(|t| (&t.log[..], &t.exp[..]))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.inner.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    // SAFETY-free fast path: indices are bounded by construction
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => slow_mul(&self.inner, a, b),
        }
    }

    #[inline]
    pub(crate) fn sqr_raw(&self, a: u32) -> u32 {
        self.mul_raw(a, a)
    }

    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        match &self.inner.tables {
            Some(t) => {
                let n = (1u32 << self.inner.m) - 1;
                t.exp[((n - t.log[a as usize]) % n) as usize]
            }
            None => self.pow_raw(a, (1u64 << self.inner.m) - 2),
        }
    }

    pub(crate) fn pow_raw(&self, a: u32, mut e: u64) -> u32 {
        if let Some(t) = &self.inner.tables {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let n = (1u64 << self.inner.m) - 1;
            let l = (t.log[a as usize] as u64 * (e % n)) % n;
            return t.exp[l as usize];
        }
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub(crate) fn sqrt_raw(&self, a: u32) -> u32 {
        self.pow_raw(a, 1u64 << (self.inner.m - 1))
    }

    // ---- checked element API ----

    #[track_caller]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.wrap(self.check(a) ^ self.check(b))
    }

    #[track_caller]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.wrap(self.mul_raw(self.check(a), self.check(b)))
    }

    #[track_caller]
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let bits = self.check(a);
        if bits == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.wrap(self.inv_raw(bits)))
    }

    #[track_caller]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    #[track_caller]
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        self.wrap(self.pow_raw(self.check(a), e))
    }

    /// `x^2`.
    #[track_caller]
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.wrap(self.sqr_raw(self.check(x)))
    }

    /// The unique `y` with `y^2 = x`, i.e. `x^(2^(m-1))`.
    #[track_caller]
    pub fn sqrt(&self, x: FieldElement) -> FieldElement {
        self.wrap(self.sqrt_raw(self.check(x)))
    }

    /// Absolute trace `sum_{i<m} x^(2^i)`, which lies in GF(2).
    #[track_caller]
    pub fn trace(&self, x: FieldElement) -> u8 {
        self.trace_raw(self.check(x))
    }

    pub(crate) fn trace_raw(&self, x: u32) -> u8 {
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..self.inner.m {
            acc ^= y;
            y = self.sqr_raw(y);
        }
        debug_assert!(acc <= 1);
        acc as u8
    }

    /// All roots of `z^2 + b z + c` in the field, sorted.
    #[track_caller]
    pub fn solve_quadratic(&self, b: FieldElement, c: FieldElement) -> Vec<FieldElement> {
        let (b, c) = (self.check(b), self.check(c));
        self.solve_quadratic_raw(b, c)
            .into_iter()
            .map(|r| self.wrap(r))
            .collect()
    }

    pub(crate) fn solve_quadratic_raw(&self, b: u32, c: u32) -> Vec<u32> {
        if b == 0 {
            return vec![self.sqrt_raw(c)];
        }
        // z = b w  turns the equation into  w^2 + w = c / b^2
        let e = self.mul_raw(c, self.inv_raw(self.sqr_raw(b)));
        match self.artin_schreier_raw(e) {
            Some(w0) => {
                let r0 = self.mul_raw(b, w0);
                let r1 = r0 ^ b;
                let mut roots = vec![r0, r1];
                roots.sort_unstable();
                roots
            }
            None => Vec::new(),
        }
    }

    /// One solution of `w^2 + w = e`, if any (solvable iff trace(e) = 0).
    pub(crate) fn artin_schreier_raw(&self, e: u32) -> Option<u32> {
        if self.trace_raw(e) != 0 {
            return None;
        }
        let m = self.inner.m;
        let w = if m % 2 == 1 {
            // half-trace: sum of e^(4^i), i = 0..=(m-1)/2
            let mut acc = 0;
            let mut y = e;
            for _ in 0..=(m - 1) / 2 {
                acc ^= y;
                y = self.sqr_raw(self.sqr_raw(y));
            }
            acc
        } else {
            self.solve_linear_as(e)?
        };
        debug_assert_eq!(self.sqr_raw(w) ^ w, e);
        Some(w)
    }

    /// Solves `w^2 + w = e` as a GF(2)-linear system in the coordinates of `w`.
    fn solve_linear_as(&self, e: u32) -> Option<u32> {
        let m = self.inner.m as usize;
        // row i of the augmented system: sum_j L[i][j] w_j = e_i, where column j is L(t^j)
        let cols: Vec<u32> = (0..m)
            .map(|j| {
                let x = 1u32 << j;
                self.sqr_raw(x) ^ x
            })
            .collect();
        // rows as bitmasks over the unknowns plus the rhs in bit m
        let mut rows: Vec<u32> = (0..m)
            .map(|i| {
                let mut r = 0u32;
                for (j, c) in cols.iter().enumerate() {
                    if c >> i & 1 == 1 {
                        r |= 1 << j;
                    }
                }
                r | ((e >> i & 1) << m)
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..m {
            let Some(p) = (pivot_row..m).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(pivot_row, p);
            for r in 0..m {
                if r != pivot_row && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[pivot_row];
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|r| r >> m & 1 == 1) {
            return None;
        }
        let mut w = 0u32;
        for (r, &col) in pivots.iter().enumerate() {
            if rows[r] >> m & 1 == 1 {
                w |= 1 << col;
            }
        }
        Some(w)
    }

    /// Smallest `d | m` with `x^(2^d) = x`.
    #[track_caller]
    pub fn subfield_degree(&self, x: FieldElement) -> u32 {
        self.subfield_degree_raw(self.check(x))
    }

    pub(crate) fn subfield_degree_raw(&self, x: u32) -> u32 {
        let m = self.inner.m;
        let mut y = x;
        for d in 1..=m {
            y = self.sqr_raw(y);
            if m.is_multiple_of(d) && y == x {
                return d;
            }
        }
        m
    }

    #[inline]
    pub(crate) fn in_subfield_raw(&self, x: u32, k: u32) -> bool {
        if k == self.inner.m {
            return true;
        }
        let mut y = x;
        for _ in 0..k {
            y = self.sqr_raw(y);
        }
        y == x
    }

    pub fn in_subfield(&self, x: FieldElement, k: u32) -> bool {
        self.in_subfield_raw(self.check(x), k)
    }

    /// Primitive element of the subfield GF(2^k): `g^((2^m-1)/(2^k-1))`.
    pub fn subfield_generator(&self, k: u32) -> Result<FieldElement, FieldError> {
        let m = self.inner.m;
        if k == 0 || !m.is_multiple_of(k) {
            return Err(FieldError::NotASubfield { k, m });
        }
        let e = ((1u64 << m) - 1) / ((1u64 << k) - 1);
        Ok(self.wrap(self.pow_raw(self.inner.primitive, e)))
    }

    /// All elements of GF(2^k) inside this field, sorted by bits.
    pub fn subfield_elements(&self, k: u32) -> Result<Vec<FieldElement>, FieldError> {
        Ok(self
            .subfield_elements_raw(k)?
            .into_iter()
            .map(|b| self.wrap(b))
            .collect())
    }

    pub(crate) fn subfield_elements_raw(&self, k: u32) -> Result<Vec<u32>, FieldError> {
        let m = self.inner.m;
        if k == 0 || !m.is_multiple_of(k) {
            return Err(FieldError::NotASubfield { k, m });
        }
        if k == m {
            return Ok((0..(1u32 << m)).collect());
        }
        let h = self.subfield_generator(k)?.bits;
        let mut out = vec![0u32];
        let mut x = 1u32;
        for _ in 0..((1u32 << k) - 1) {
            out.push(x);
            x = self.mul_raw(x, h);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Divisors of the extension degree, ascending.
    pub fn subfield_degrees(&self) -> Vec<u32> {
        (1..=self.inner.m)
            .filter(|d| self.inner.m.is_multiple_of(*d))
            .collect()
    }
}

fn slow_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    gf2_mulmod(a as u64, b as u64, inner.modulus as u64) as u32
}

fn find_primitive(inner: &Inner) -> u32 {
    let n = (1u64 << inner.m) - 1;
    if n == 1 {
        return 1;
    }
    let pow = |mut base: u32, mut e: u64| {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(inner, acc, base);
            }
            base = slow_mul(inner, base, base);
            e >>= 1;
        }
        acc
    };
    (2..=inner.mask)
        .find(|&g| inner.order_factors.iter().all(|p| pow(g, n / p) != 1))
        .expect("multiplicative group is cyclic")
}

/// Formats a GF(2)[t] bit-vector as `t^12+t^3+1`.
pub fn gf2_poly_string(p: u32) -> String {
    let mut s = String::new();
    write_u_poly(&mut s, p).unwrap();
    s.replace('u', "t")
}

fn parse_gf2_poly(text: &str) -> Option<u64> {
    let mut bits = 0u64;
    for term in text.split('+') {
        let e: u32 = match term {
            "1" => 0,
            "0" => continue,
            "t" => 1,
            _ => term.strip_prefix("t^")?.parse().ok()?,
        };
        if e > 40 {
            return None;
        }
        bits ^= 1 << e;
    }
    Some(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_moduli() {
        // m=1: the prime field itself, modulus t
        let f1 = FieldCtx::new(1).unwrap();
        assert_eq!(f1.modulus(), 0b10);
        assert!(f1.u().is_zero());
        let f2 = FieldCtx::new(2).unwrap();
        assert_eq!(f2.modulus(), 0b111);
        assert!(matches!(
            FieldCtx::new(0),
            Err(FieldError::DegreeOutOfRange(0))
        ));
        assert!(matches!(
            FieldCtx::new(25),
            Err(FieldError::DegreeOutOfRange(25))
        ));
    }

    #[test]
    fn sieve_golden_moduli() {
        // pinned after running the sieve; constant term upward ordering
        let expected = [
            (3, "t^3+t^2+1"),
            (4, "t^4+t^3+1"),
            (8, "t^8+t^7+t^5+t^4+1"),
            (12, "t^12+t^9+1"),
        ];
        for (m, s) in expected {
            assert_eq!(FieldCtx::new(m).unwrap().modulus_string(), s, "m={m}");
        }
    }

    #[test]
    fn gf4_hand_checks() {
        let f = FieldCtx::new(2).unwrap();
        let t = f.u();
        let t1 = f.add(t, f.one());
        assert_eq!(f.inv(t).unwrap(), t1);
        assert_eq!(f.mul(f.mul(t, t), t), f.one());
        assert_eq!(f.trace(t), 1);
        assert!(f.inv(f.zero()).is_err());
    }

    #[test]
    fn spec_strings() {
        let f = FieldCtx::from_spec("GF(2^12)").unwrap();
        assert_eq!(f.degree(), 12);
        let g = FieldCtx::from_spec("GF(2^4):t^4+t+1").unwrap();
        assert_eq!(g.modulus(), 0b10011);
        assert!(FieldCtx::from_spec("GF(2^4):t^4+1").is_err());
        assert!(FieldCtx::from_spec("GF(3^4)").is_err());
        assert!(FieldCtx::from_spec("GF(2^4):t^3+t+1").is_err());
    }

    #[test]
    #[should_panic]
    fn mixed_fields_panic() {
        let a = FieldCtx::new(4).unwrap();
        let b = FieldCtx::new(5).unwrap();
        let _ = a.mul(a.u(), b.u());
    }

    #[test]
    fn adopt_reports_mismatch() {
        let a = FieldCtx::new(4).unwrap();
        let b = FieldCtx::new(5).unwrap();
        assert!(matches!(
            a.adopt(b.one()),
            Err(FieldError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn inverse_exhaustive_small() {
        for m in 1..=8 {
            let f = FieldCtx::new(m).unwrap();
            for bits in 1..(1u32 << m) {
                let x = f.element(bits).unwrap();
                assert_eq!(f.mul(f.inv(x).unwrap(), x), f.one(), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn inverse_random_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [12, 17, 24] {
            let f = FieldCtx::new(m).unwrap();
            for _ in 0..500 {
                let x = f.element(rng.gen_range(1..(1u32 << m))).unwrap();
                assert_eq!(f.mul(f.inv(x).unwrap(), x), f.one());
            }
        }
    }

    #[test]
    fn table_and_shift_add_agree() {
        let f = FieldCtx::new(12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let a = rng.gen_range(0..4096);
            let b = rng.gen_range(0..4096);
            assert_eq!(f.mul_raw(a, b), slow_mul(&f.inner, a, b));
        }
    }

    #[test]
    fn sqrt_and_frobenius() {
        let f = FieldCtx::new(12).unwrap();
        assert!(f.sqrt(f.zero()).is_zero());
        assert!(f.sqrt(f.one()).is_one());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let x = f.element(rng.gen_range(0..4096)).unwrap();
            let y = f.element(rng.gen_range(0..4096)).unwrap();
            assert_eq!(f.frobenius(f.sqrt(x)), x);
            assert_eq!(f.sqrt(f.frobenius(x)), x);
            assert_eq!(
                f.frobenius(f.add(x, y)),
                f.add(f.frobenius(x), f.frobenius(y))
            );
        }
    }

    #[test]
    fn trace_linear_and_surjective() {
        for m in [1, 2, 5, 12] {
            let f = FieldCtx::new(m).unwrap();
            let mut seen = [false; 2];
            for a in 0..(1u32 << m).min(512) {
                for b in [0u32, 1, a.rotate_left(1) & ((1 << m) - 1)] {
                    let (x, y) = (f.element(a).unwrap(), f.element(b).unwrap());
                    assert_eq!(f.trace(f.add(x, y)), f.trace(x) ^ f.trace(y));
                }
                seen[f.trace(f.element(a).unwrap()) as usize] = true;
            }
            assert!(seen[0] && seen[1], "m={m}");
        }
    }

    #[test]
    fn solve_quadratic_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in 1..=12 {
            let f = FieldCtx::new(m).unwrap();
            let all = f.subfield_elements(m).unwrap();
            let trials = if m <= 4 { usize::MAX } else { 40 };
            let mut pairs: Vec<(u32, u32)> = Vec::new();
            if trials == usize::MAX {
                for b in 0..(1u32 << m) {
                    for c in 0..(1u32 << m) {
                        pairs.push((b, c));
                    }
                }
            } else {
                for _ in 0..trials {
                    pairs.push((rng.gen_range(0..1 << m), rng.gen_range(0..1 << m)));
                }
                pairs.push((0, rng.gen_range(0..1 << m)));
            }
            for (b, c) in pairs {
                let (b, c) = (f.element(b).unwrap(), f.element(c).unwrap());
                let scan: Vec<FieldElement> = all
                    .iter()
                    .copied()
                    .filter(|&z| f.add(f.mul(z, z), f.add(f.mul(b, z), c)).is_zero())
                    .collect();
                assert_eq!(f.solve_quadratic(b, c), scan, "m={m} b={b} c={c}");
            }
        }
    }

    #[test]
    fn quadratic_small_cases() {
        let f = FieldCtx::new(12).unwrap();
        let roots = f.solve_quadratic(f.one(), f.zero());
        assert_eq!(roots, vec![f.zero(), f.one()]);
        let x = f.u_pow(5);
        assert_eq!(f.solve_quadratic(f.zero(), x), vec![f.sqrt(x)]);
    }

    #[test]
    fn gf4_inside_gf4096() {
        let f = FieldCtx::new(12).unwrap();
        let u = f.subfield_generator(2).unwrap();
        assert_eq!(f.add(f.add(f.mul(u, u), u), f.one()), f.zero());
        assert_eq!(f.subfield_degree(u), 2);
        assert_eq!(f.subfield_degree(f.zero()), 1);
        assert_eq!(f.subfield_degree(f.one()), 1);
        // z^2 + z + u^2 has no root in GF(4), both roots generate GF(16)
        let roots = f.solve_quadratic(f.one(), f.mul(u, u));
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert_eq!(f.subfield_degree(r), 4);
            assert!(!f.in_subfield(r, 2));
        }
    }

    #[test]
    fn subfield_sizes() {
        let f = FieldCtx::new(12).unwrap();
        for k in [1, 2, 3, 4, 6, 12] {
            let els = f.subfield_elements(k).unwrap();
            assert_eq!(els.len(), 1 << k);
            assert!(els.iter().all(|&x| f.in_subfield(x, k)));
        }
        assert!(f.subfield_elements(5).is_err());
    }

    #[test]
    fn display_u_polys() {
        let f = FieldCtx::new(12).unwrap();
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.element(0b101).unwrap().to_string(), "u^2+1");
        assert_eq!(f.u().to_string(), "u");
    }
}
