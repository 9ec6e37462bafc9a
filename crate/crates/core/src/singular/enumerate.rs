//! Common zeros of homogeneous polynomials over P^{n-1}, n = 3 or 4.
//!
//! Projective space is stratified by the position `c` of the first nonzero
//! coordinate. On stratum `c` the point is `(0, .., 0, 1, a, b, t)`: the
//! coordinates strictly between the pinned one and the last are enumerated
//! and every polynomial becomes a univariate polynomial in the last
//! coordinate `t`. Points of the slice are the roots of the gcd of those
//! univariate polynomials.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ff2k::FieldCtx;
use crate::geometry::ProjPoint;
use crate::mpoly::MultiPoly;
use crate::upoly::roots_raw;
use crate::{for_each_index, Parallelism};

use super::{Scope, SingularError};

/// Largest degree in a single variable the dense kernel accepts.
pub const MAX_KERNEL_DEGREE: usize = 8;
const W: usize = MAX_KERNEL_DEGREE + 1;

/// Outcome of an enumeration: every point found, or nothing if more than
/// `cap` points exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub points: Vec<ProjPoint>,
    pub truncated: bool,
}

pub(crate) trait Arith: Sync {
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
    /// Multiplication by a fixed nonzero element, prepared once.
    fn prepare(&self, x: u32) -> u32;
    fn mul_prepared(&self, a: u32, px: u32) -> u32;
}

pub(crate) struct TableArith<'a> {
    log: &'a [u32],
    exp: &'a [u32],
    order: u32,
}

impl Arith for TableArith<'_> {
    #[inline(always)]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline(always)]
    fn inv(&self, a: u32) -> u32 {
        self.exp[(self.order - self.log[a as usize]) as usize]
    }

    #[inline(always)]
    fn prepare(&self, x: u32) -> u32 {
        self.log[x as usize]
    }

    #[inline(always)]
    fn mul_prepared(&self, a: u32, px: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + px) as usize]
        }
    }
}

pub(crate) struct PlainArith<'a>(&'a FieldCtx);

impl Arith for PlainArith<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul_raw(a, b)
    }

    fn inv(&self, a: u32) -> u32 {
        self.0.inv_raw(a)
    }

    fn prepare(&self, x: u32) -> u32 {
        x
    }

    fn mul_prepared(&self, a: u32, px: u32) -> u32 {
        self.0.mul_raw(a, px)
    }
}

/// Univariate polynomial of degree at most `MAX_KERNEL_DEGREE`; `len == 0` is zero.
#[derive(Clone, Copy)]
struct SmallPoly {
    c: [u32; W],
    len: usize,
}

impl SmallPoly {
    const ZERO: SmallPoly = SmallPoly { c: [0; W], len: 0 };

    #[inline(always)]
    fn trim(&mut self) {
        while self.len > 0 && self.c[self.len - 1] == 0 {
            self.len -= 1;
        }
    }

    /// `self mod b` for nonzero `b`.
    #[inline(always)]
    fn reduce<A: Arith>(&mut self, b: &SmallPoly, ar: &A) {
        let db = b.len - 1;
        if self.len <= db {
            return;
        }
        let inv = ar.inv(b.c[db]);
        while self.len > db {
            let top = self.c[self.len - 1];
            let shift = self.len - 1 - db;
            if top != 0 {
                let f = ar.mul(top, inv);
                let pf = ar.prepare(f);
                for i in 0..db {
                    self.c[shift + i] ^= ar.mul_prepared(b.c[i], pf);
                }
            }
            self.len -= 1;
        }
        self.trim();
    }

    /// Replaces `self` by `gcd(self, other)` (not normalized).
    #[inline(always)]
    fn gcd_with<A: Arith>(&mut self, other: &SmallPoly, ar: &A) {
        if other.len == 0 {
            return;
        }
        if self.len == 0 {
            *self = *other;
            return;
        }
        let mut a = *self;
        let mut b = *other;
        if a.len < b.len {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len > 0 {
            if b.len == 1 {
                a = b;
                break;
            }
            a.reduce(&b, ar);
            std::mem::swap(&mut a, &mut b);
        }
        *self = a;
    }
}

/// Dense coefficients `coef[k][a][b]` of a polynomial on one stratum, where
/// `k`, `a`, `b` are the exponents of `t` and the two enumerated coordinates.
struct Dense {
    coef: Vec<u32>,
    kmax: usize,
    amax: usize,
    bmax: [usize; W],
}

impl Dense {
    #[inline(always)]
    fn at(&self, k: usize, a: usize, b: usize) -> u32 {
        self.coef[(k * W + a) * W + b]
    }
}

/// Restriction of `p` to stratum `c`: coordinates before `c` vanish, `x_c = 1`.
/// `None` if the restriction is identically zero.
fn densify(p: &MultiPoly, c: usize) -> Result<Option<Dense>, SingularError> {
    let n = p.nvars();
    let free = n - 2 - c;
    let mut coef = vec![0u32; W * W * W];
    let mut any = false;
    let (mut kmax, mut amax, mut bmax) = (0, 0, [0usize; W]);
    for (m, v) in p.terms() {
        if m.0[..c].iter().any(|&e| e > 0) {
            continue;
        }
        let k = m.0[n - 1] as usize;
        let a = if free >= 1 { m.0[c + 1] as usize } else { 0 };
        let b = if free == 2 { m.0[c + 2] as usize } else { 0 };
        if k.max(a).max(b) > MAX_KERNEL_DEGREE {
            return Err(SingularError::DegreeTooLarge(MAX_KERNEL_DEGREE as u32));
        }
        coef[(k * W + a) * W + b] ^= v.bits();
        any = true;
    }
    if !any || coef.iter().all(|&x| x == 0) {
        return Ok(None);
    }
    for k in 0..W {
        for a in 0..W {
            for b in 0..W {
                if coef[(k * W + a) * W + b] != 0 {
                    kmax = kmax.max(k);
                    amax = amax.max(a);
                    bmax[k] = bmax[k].max(b);
                }
            }
        }
    }
    Ok(Some(Dense {
        coef,
        kmax,
        amax,
        bmax,
    }))
}

/// Shared state of one enumeration run.
struct Run<'a> {
    field: &'a FieldCtx,
    n: usize,
    scope_k: Option<u32>,
    values: &'a [u32],
    seed: u64,
    cap: usize,
    found: AtomicUsize,
    stop: AtomicBool,
}

impl Run<'_> {
    fn in_scope(&self, x: u32) -> bool {
        match self.scope_k {
            None => true,
            Some(k) => self.field.in_subfield_raw(x, k),
        }
    }

    /// Records `k` new points; returns false once the cap is exceeded.
    fn account(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let total = self.found.fetch_add(k, Ordering::Relaxed) + k;
        if total > self.cap {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

/// Common zeros over the scope. `system(c)` lists the polynomials to use on
/// stratum `c` (all of them must vanish).
pub(crate) fn enumerate_common_zeros(
    field: &FieldCtx,
    n: usize,
    system: &dyn Fn(usize) -> Vec<MultiPoly>,
    scope: Scope,
    cap: usize,
    seed: u64,
    par: Parallelism,
) -> Result<Enumeration, SingularError> {
    assert!(n == 3 || n == 4, "kernel handles P^2 and P^3");
    let scope_k = scope.subfield_degree(field)?;
    let values: Vec<u32> = match scope_k {
        None => (0..field.size() as u32).collect(),
        Some(k) => field
            .subfield_elements_raw(k)
            .map_err(|_| SingularError::BadScope(k, field.degree()))?,
    };
    let run = Run {
        field,
        n,
        scope_k,
        values: &values,
        seed,
        cap,
        found: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
    };
    let mut raw_points: Vec<Vec<u32>> = Vec::new();
    for c in 0..n {
        let polys = system(c);
        for p in &polys {
            assert_eq!(
                p.nvars(),
                n,
                "system polynomial in the wrong number of variables"
            );
        }
        if c == n - 1 {
            let mut pt = vec![0u32; n];
            pt[n - 1] = 1;
            if polys.iter().all(|p| p.eval_raw(&pt) == 0) {
                run.account(1);
                raw_points.push(pt);
            }
            continue;
        }
        let mut dense = Vec::new();
        for p in &polys {
            if let Some(d) = densify(p, c)? {
                dense.push(d);
            }
        }
        // lowest t-degree first so the running gcd shrinks early
        dense.sort_by_key(|d| d.kmax);
        let chunks = match field.log_exp() {
            Some((log, exp)) => {
                let ar = TableArith {
                    log,
                    exp,
                    order: (field.size() - 1) as u32,
                };
                stratum(&run, c, &dense, &ar, par)
            }
            None => stratum(&run, c, &dense, &PlainArith(field), par),
        };
        raw_points.extend(chunks);
        if run.stopped() {
            break;
        }
    }
    if run.stopped() {
        return Ok(Enumeration {
            points: Vec::new(),
            truncated: true,
        });
    }
    let mut points: Vec<ProjPoint> = raw_points
        .iter()
        .map(|r| ProjPoint::from_normalized_raw(field, r))
        .collect();
    points.sort();
    Ok(Enumeration {
        points,
        truncated: false,
    })
}

fn stratum<A: Arith>(
    run: &Run<'_>,
    c: usize,
    dense: &[Dense],
    ar: &A,
    par: Parallelism,
) -> Vec<Vec<u32>> {
    let n = run.n;
    let free = n - 2 - c;
    let outer: &[u32] = if free >= 1 { run.values } else { &[0] };
    let inner: &[u32] = if free == 2 { run.values } else { &[0] };
    let per_outer = for_each_index(par, outer.len(), |ia| {
        if run.stopped() {
            return Vec::new();
        }
        let xa = outer[ia];
        // fold the first enumerated coordinate into d[p][k][b]
        let mut partial: Vec<[[u32; W]; W]> = vec![[[0; W]; W]; dense.len()];
        let pa = if xa != 0 { ar.prepare(xa) } else { 0 };
        for (dp, out) in dense.iter().zip(partial.iter_mut()) {
            for k in 0..=dp.kmax {
                for b in 0..=dp.bmax[k] {
                    let mut acc = 0u32;
                    if xa == 0 {
                        acc = dp.at(k, 0, b);
                    } else {
                        for a in (0..=dp.amax).rev() {
                            acc = ar.mul_prepared(acc, pa) ^ dp.at(k, a, b);
                        }
                    }
                    out[k][b] = acc;
                }
            }
        }
        let mut found = Vec::new();
        for &xb in inner {
            let pb = if xb != 0 { ar.prepare(xb) } else { 0 };
            let mut g = SmallPoly::ZERO;
            let mut empty = false;
            for (dp, d) in dense.iter().zip(partial.iter()) {
                let mut s = SmallPoly::ZERO;
                for k in 0..=dp.kmax {
                    let row = &d[k];
                    let v = if xb == 0 {
                        row[0]
                    } else {
                        let mut acc = 0u32;
                        for b in (0..=dp.bmax[k]).rev() {
                            acc = ar.mul_prepared(acc, pb) ^ row[b];
                        }
                        acc
                    };
                    s.c[k] = v;
                }
                s.len = dp.kmax + 1;
                s.trim();
                g.gcd_with(&s, ar);
                if g.len == 1 {
                    empty = true;
                    break;
                }
            }
            if empty {
                continue;
            }
            let ts: Vec<u32> = if g.len == 0 {
                run.values.to_vec()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    run.seed ^ ((c as u64) << 56) ^ ((xa as u64) << 28) ^ xb as u64,
                );
                roots_raw(run.field, g.c[..g.len].to_vec(), &mut rng)
                    .into_iter()
                    .filter(|&t| run.in_scope(t))
                    .collect()
            };
            if !run.account(ts.len()) {
                return Vec::new();
            }
            for t in ts {
                let mut pt = vec![0u32; n];
                pt[c] = 1;
                if free >= 1 {
                    pt[c + 1] = xa;
                }
                if free == 2 {
                    pt[c + 2] = xb;
                }
                pt[n - 1] = t;
                found.push(pt);
            }
        }
        found
    });
    per_outer.into_iter().flatten().collect()
}

/// Every point of P^{n-1}(GF(2^k)) at which all `polys` vanish, by direct scan.
pub(crate) fn brute_force_scan(
    field: &FieldCtx,
    n: usize,
    polys: &[MultiPoly],
    k: u32,
) -> Result<Vec<ProjPoint>, SingularError> {
    let elems = field
        .subfield_elements_raw(k)
        .map_err(|_| SingularError::BadScope(k, field.degree()))?;
    let mut out = Vec::new();
    for c in 0..n {
        let free = n - 1 - c;
        let total = elems.len().pow(free as u32);
        for idx in 0..total {
            let mut pt = vec![0u32; n];
            pt[c] = 1;
            let mut r = idx;
            for j in 0..free {
                pt[c + 1 + j] = elems[r % elems.len()];
                r /= elems.len();
            }
            if polys.iter().all(|p| p.eval_raw(&pt) == 0) {
                out.push(ProjPoint::from_normalized_raw(field, &pt));
            }
        }
    }
    out.sort();
    Ok(out)
}
