//! Univariate polynomials over GF(2^m): Euclid and root extraction.
//!
//! Roots are found by first isolating the part of `f` that splits over the
//! field, `gcd(f, x^q - x)`, and then separating its linear factors with
//! random trace maps.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ff2k::{FieldCtx, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniPolyError {
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
}

/// Dense univariate polynomial, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &FieldCtx, coeffs: &[FieldElement]) -> Self {
        let mut raw: Vec<u32> = coeffs
            .iter()
            .map(|&c| field.adopt(c).unwrap().bits())
            .collect();
        trim(&mut raw);
        Self::from_raw(field, raw)
    }

    pub(crate) fn from_raw(field: &FieldCtx, raw: Vec<u32>) -> Self {
        UniPoly {
            coeffs: raw.into_iter().map(|b| field.wrap(b)).collect(),
        }
    }

    fn raw(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.bits()).collect()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, field: &FieldCtx, x: FieldElement) -> FieldElement {
        let xb = field.adopt(x).unwrap().bits();
        field.wrap(eval_raw(field, &self.raw(), xb))
    }
}

/// Monic gcd by Euclid's algorithm.
pub fn univariate_gcd(field: &FieldCtx, a: &UniPoly, b: &UniPoly) -> Result<UniPoly, UniPolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(UniPolyError::GcdOfZeros);
    }
    Ok(UniPoly::from_raw(field, gcd_raw(field, a.raw(), b.raw())))
}

/// All roots in the ambient field, sorted. The random splitting is driven by
/// `seed`, so the call is deterministic.
pub fn univariate_roots(
    field: &FieldCtx,
    coeffs: &[FieldElement],
    seed: u64,
) -> Result<Vec<FieldElement>, UniPolyError> {
    let p = UniPoly::new(field, coeffs);
    if p.is_zero() {
        return Err(UniPolyError::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots = roots_raw(field, p.raw(), &mut rng);
    roots.sort_unstable();
    Ok(roots.into_iter().map(|r| field.wrap(r)).collect())
}

// ---- raw layer ----

pub(crate) fn trim(p: &mut Vec<u32>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn eval_raw(field: &FieldCtx, p: &[u32], x: u32) -> u32 {
    p.iter().rev().fold(0, |acc, &c| field.mul_raw(acc, x) ^ c)
}

fn make_monic(field: &FieldCtx, p: &mut [u32]) {
    if let Some(&lead) = p.last() {
        if lead != 1 {
            let inv = field.inv_raw(lead);
            for c in p.iter_mut() {
                *c = field.mul_raw(*c, inv);
            }
        }
    }
}

/// Remainder of `a` modulo nonzero `b`; `a` is reduced in place.
fn rem_in_place(field: &FieldCtx, a: &mut Vec<u32>, b: &[u32]) {
    let db = b.len() - 1;
    let inv_lead = field.inv_raw(b[db]);
    trim(a);
    while a.len() > db {
        let da = a.len() - 1;
        let f = field.mul_raw(a[da], inv_lead);
        let shift = da - db;
        for (i, &c) in b.iter().enumerate() {
            a[shift + i] ^= field.mul_raw(c, f);
        }
        trim(a);
    }
}

/// Quotient and remainder.
fn div_rem(field: &FieldCtx, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = b.len() - 1;
    let inv_lead = field.inv_raw(b[db]);
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let dr = r.len() - 1;
        let f = field.mul_raw(r[dr], inv_lead);
        let shift = dr - db;
        q[shift] = f;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] ^= field.mul_raw(c, f);
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn gcd_raw(field: &FieldCtx, mut a: Vec<u32>, mut b: Vec<u32>) -> Vec<u32> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_in_place(field, &mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(field, &mut a);
    a
}

fn sqr_mod(field: &FieldCtx, a: &[u32], m: &[u32]) -> Vec<u32> {
    // Frobenius is additive in characteristic 2
    let mut out = vec![0u32; (2 * a.len()).saturating_sub(1)];
    for (i, &x) in a.iter().enumerate() {
        out[2 * i] = field.sqr_raw(x);
    }
    rem_in_place(field, &mut out, m);
    out
}

/// Roots of a nonzero polynomial, unsorted.
pub(crate) fn roots_raw(field: &FieldCtx, mut f: Vec<u32>, rng: &mut impl Rng) -> Vec<u32> {
    trim(&mut f);
    assert!(!f.is_empty(), "roots of the zero polynomial");
    make_monic(field, &mut f);
    match f.len() {
        1 => return Vec::new(),
        2 => return vec![f[0]],
        _ => {}
    }
    // split part: gcd(f, x^q - x)
    let mut xq = vec![0u32, 1];
    rem_in_place(field, &mut xq, &f);
    for _ in 0..field.degree() {
        xq = sqr_mod(field, &xq, &f);
    }
    xq.resize(xq.len().max(2), 0);
    xq[1] ^= 1;
    let split = gcd_raw(field, f, xq);
    let mut out = Vec::new();
    split_linear(field, split, rng, &mut out);
    out
}

/// `h` is monic, squarefree and a product of distinct linear factors.
fn split_linear(field: &FieldCtx, h: Vec<u32>, rng: &mut impl Rng, out: &mut Vec<u32>) {
    match h.len() {
        0 | 1 => return,
        2 => {
            out.push(h[0]);
            return;
        }
        3 => {
            out.extend(field.solve_quadratic_raw(h[1], h[0]));
            return;
        }
        _ => {}
    }
    let mask = (field.size() - 1) as u32;
    loop {
        let a = rng.gen::<u32>() & mask;
        if a == 0 {
            continue;
        }
        // trace map T(a x) = sum_{i<m} (a x)^(2^i) mod h
        let mut s = vec![0u32, a];
        rem_in_place(field, &mut s, &h);
        let mut t = s.clone();
        for _ in 1..field.degree() {
            s = sqr_mod(field, &s, &h);
            add_assign(&mut t, &s);
        }
        trim(&mut t);
        if t.is_empty() {
            continue;
        }
        let d = gcd_raw(field, h.clone(), t);
        if d.len() > 1 && d.len() < h.len() {
            let (q, _) = div_rem(field, &h, &d);
            let mut q = q;
            make_monic(field, &mut q);
            split_linear(field, d, rng, out);
            split_linear(field, q, rng, out);
            return;
        }
    }
}

fn add_assign(a: &mut Vec<u32>, b: &[u32]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, &y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

#[allow(dead_code)]
pub(crate) fn mul_raw_poly(field: &FieldCtx, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; (a.len() + b.len()).saturating_sub(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= field.mul_raw(x, y);
        }
    }
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan_roots(field: &FieldCtx, coeffs: &[FieldElement]) -> Vec<FieldElement> {
        let p = UniPoly::new(field, coeffs);
        field
            .subfield_elements(field.degree())
            .unwrap()
            .into_iter()
            .filter(|&x| p.eval(field, x).is_zero())
            .collect()
    }

    #[test]
    fn x2_plus_x() {
        let f = FieldCtx::new(12).unwrap();
        let r = univariate_roots(&f, &[f.zero(), f.one(), f.one()], 1).unwrap();
        assert_eq!(r, vec![f.zero(), f.one()]);
    }

    #[test]
    fn seventh_roots_of_unity() {
        let f = FieldCtx::new(12).unwrap();
        let mut c = vec![f.zero(); 8];
        c[0] = f.one();
        c[7] = f.one();
        let r = univariate_roots(&f, &c, 9).unwrap();
        assert_eq!(r.len(), 7);
        for x in r {
            assert!(f.pow(x, 7).is_one());
            assert!(f.in_subfield(x, 3));
        }
    }

    #[test]
    fn zero_rejected() {
        let f = FieldCtx::new(4).unwrap();
        assert_eq!(
            univariate_roots(&f, &[f.zero()], 0),
            Err(UniPolyError::ZeroPolynomial)
        );
        let z = UniPoly::new(&f, &[]);
        assert_eq!(univariate_gcd(&f, &z, &z), Err(UniPolyError::GcdOfZeros));
    }

    #[test]
    fn gcd_basics() {
        let f = FieldCtx::new(4).unwrap();
        let (o, z, u) = (f.one(), f.zero(), f.u());
        let p = UniPoly::new(&f, &[u, o, u]);
        let monic = UniPoly::new(&f, &[o, f.inv(u).unwrap(), o]);
        assert_eq!(
            univariate_gcd(&f, &p, &UniPoly::new(&f, &[])).unwrap(),
            monic
        );
        let a = UniPoly::new(&f, &[z, o, o]);
        let b = UniPoly::new(&f, &[z, o]);
        assert_eq!(univariate_gcd(&f, &a, &b).unwrap(), b);
    }

    #[test]
    fn agrees_with_scan_small_fields() {
        // every polynomial of degree <= 4 over GF(2) and GF(4); sampled over GF(8), GF(16)
        for m in 1..=4u32 {
            let f = FieldCtx::new(m).unwrap();
            let q = 1u32 << m;
            let total = q.pow(5);
            let step = if total > 20_000 {
                total / 20_000 + 1
            } else {
                1
            };
            let mut idx = 0;
            while idx < total {
                let mut c = Vec::new();
                let mut r = idx;
                for _ in 0..5 {
                    c.push(f.element(r % q).unwrap());
                    r /= q;
                }
                idx += step;
                if c.iter().all(|x| x.is_zero()) {
                    continue;
                }
                assert_eq!(
                    univariate_roots(&f, &c, idx as u64).unwrap(),
                    scan_roots(&f, &c),
                    "m={m} coeffs={c:?}"
                );
            }
        }
    }

    #[test]
    fn degree_eight_products() {
        let f = FieldCtx::new(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let mut p = vec![1u32];
            for _ in 0..8 {
                let r = rng.gen_range(0..256u32);
                p = mul_raw_poly(&f, &p, &[r, 1]);
            }
            let coeffs: Vec<FieldElement> = p.iter().map(|&b| f.element(b).unwrap()).collect();
            assert_eq!(
                univariate_roots(&f, &coeffs, 3).unwrap(),
                scan_roots(&f, &coeffs)
            );
        }
    }
}
