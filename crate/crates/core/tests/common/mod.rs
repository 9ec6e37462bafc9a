//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use quartic_core::ff2k::{FieldCtx, FieldElement};
use quartic_core::linalg::Matrix;
use quartic_core::mpoly::{monomials_of_degree, MultiPoly};
use rand::Rng;

pub fn random_element(field: &FieldCtx, rng: &mut impl Rng) -> FieldElement {
    field
        .element(rng.gen_range(0..field.size()) as u32)
        .unwrap()
}

/// Homogeneous form of degree `d` with coefficients drawn from `pool`, each
/// monomial present with probability `density`.
pub fn random_form(
    field: &FieldCtx,
    nvars: usize,
    d: u32,
    pool: &[FieldElement],
    density: f64,
    rng: &mut impl Rng,
) -> MultiPoly {
    let terms: Vec<_> = monomials_of_degree(nvars, d)
        .into_iter()
        .filter_map(|m| {
            rng.gen_bool(density)
                .then(|| (m, pool[rng.gen_range(0..pool.len())]))
        })
        .collect();
    MultiPoly::from_terms(field, nvars, terms)
}

/// A mix of quartics with singular points over small subfields: dense random
/// forms, inseparable double planes `x4^2 Q + B`, and products of two quadrics.
pub fn random_quartic(
    field: &FieldCtx,
    pool: &[FieldElement],
    kind: usize,
    rng: &mut impl Rng,
) -> MultiPoly {
    match kind % 3 {
        0 => random_form(field, 4, 4, pool, 0.6, rng),
        1 => {
            let x4 = MultiPoly::var(field, 4, 3);
            let q = random_form(field, 3, 2, pool, 0.7, rng).with_nvars(4);
            let b = random_form(field, 3, 4, pool, 0.6, rng).with_nvars(4);
            x4.square().mul(&q).add(&b)
        }
        _ => {
            let a = random_form(field, 4, 2, pool, 0.5, rng);
            let b = random_form(field, 4, 2, pool, 0.5, rng);
            a.mul(&b)
        }
    }
}

pub fn random_invertible(field: &FieldCtx, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| random_element(field, rng)).collect())
            .collect();
        let m = Matrix::from_rows(rows);
        if m.inverse(field).is_some() {
            return m;
        }
    }
}
