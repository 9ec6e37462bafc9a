//! Local intersection multiplicity `dim O_P / (F, F_1, F_2)` by truncated
//! linear algebra.
//!
//! For `D = 2, 3, ..` the quotient of the polynomials of degree `< D` by the
//! span of truncated monomial multiples of the generators has dimension
//! `dim O / (I + m^D)`. Once two consecutive values agree, `m^D` lies in `I`
//! (Nakayama) and the value is exact.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ff2k::FieldCtx;
use crate::geometry::ProjPoint;
use crate::linalg::{rank_raw, Matrix};
use crate::mpoly::{monomials_of_degree, Monomial, MultiPoly};

/// Result of the truncated-quotient computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalMultiplicity {
    /// The multiplicity, or `None` if the dimensions had not stabilized by `D_max`.
    pub value: Option<u32>,
    /// The degree `D` with `dim(D) = dim(D + 1)`, or the last degree tried.
    pub stab_degree: u32,
    /// `dim(D)` at the last degree computed; a lower bound when inconclusive.
    pub lower_bound: u32,
}

pub const DEFAULT_DMAX: u32 = 12;

/// Random invertible change of coordinates whose last row is `p`.
pub(crate) fn random_frame(field: &FieldCtx, p: &ProjPoint, rng: &mut impl Rng) -> Matrix {
    let n = p.coords().len();
    let mask = (field.size() - 1) as u32;
    loop {
        let mut rows: Vec<Vec<_>> = (0..n - 1)
            .map(|_| {
                (0..n)
                    .map(|_| field.element(rng.gen::<u32>() & mask).unwrap())
                    .collect()
            })
            .collect();
        rows.push(p.coords().to_vec());
        let m = Matrix::from_rows(rows);
        if m.inverse(field).is_some() {
            return m;
        }
    }
}

/// Sets the last variable to 1, giving a polynomial in the remaining three.
fn dehomogenize_last(p: &MultiPoly) -> MultiPoly {
    MultiPoly::from_terms(
        p.field(),
        3,
        p.terms().map(|(mut m, c)| {
            m.0[3] = 0;
            (m, c)
        }),
    )
}

fn order(p: &MultiPoly) -> u32 {
    p.terms().map(|(m, _)| m.degree()).min().unwrap_or(u32::MAX)
}

/// `(F, F_1, F_2)_P` for a singular point `P` of the surface `F`.
pub fn local_multiplicity(f: &MultiPoly, p: &ProjPoint, seed: u64, dmax: u32) -> LocalMultiplicity {
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_frame(field, p, &mut rng);
    let g = f.linear_substitute(&m).expect("frame is invertible");
    let gens: Vec<MultiPoly> = [g.clone(), g.partial(0), g.partial(1)]
        .iter()
        .map(dehomogenize_last)
        .filter(|h| !h.is_zero())
        .collect();
    let mut prev: Option<u32> = None;
    let mut last = 0;
    for d in 1..=dmax.max(2) {
        let dim = truncated_quotient_dim(field, &gens, d);
        last = dim;
        if let Some(pd) = prev {
            if pd == dim && d > 2 {
                return LocalMultiplicity {
                    value: Some(dim),
                    stab_degree: d - 1,
                    lower_bound: dim,
                };
            }
        }
        prev = Some(dim);
    }
    LocalMultiplicity {
        value: None,
        stab_degree: dmax,
        lower_bound: last,
    }
}

/// `dim K[y1,y2,y3] / (gens + m^D)`.
fn truncated_quotient_dim(field: &FieldCtx, gens: &[MultiPoly], d: u32) -> u32 {
    let mut cols: Vec<Monomial> = Vec::new();
    for e in 0..d {
        cols.extend(monomials_of_degree(3, e));
    }
    let index: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        let o = order(g);
        if o >= d {
            continue;
        }
        for e in 0..d - o {
            for mm in monomials_of_degree(3, e) {
                let mut row = vec![0u32; cols.len()];
                let mut any = false;
                for (gm, c) in g.terms() {
                    let prod = gm.mul(mm);
                    if let Some(&i) = index.get(&prod) {
                        row[i] ^= c.bits();
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let rank = rank_raw(field, rows, cols.len());
    (cols.len() - rank) as u32
}
