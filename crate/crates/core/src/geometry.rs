//! Projective points, S4 orbits and the classification of conics in characteristic 2.

use std::fmt;

use thiserror::Error;

use crate::ff2k::{FieldCtx, FieldElement};
use crate::linalg::Matrix;
use crate::mpoly::{Monomial, MultiPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("the zero polynomial is not a conic")]
    ZeroConic,
    #[error("expected a homogeneous quadratic form in 3 variables")]
    NotAConic,
}

/// A point of projective space with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
    defdeg: u32,
}

impl ProjPoint {
    /// Scales `raw` so that its first nonzero coordinate is 1.
    pub fn normalize(field: &FieldCtx, raw: &[FieldElement]) -> Result<Self, GeometryError> {
        let lead = raw
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroVector)?;
        let inv = field.inv(lead).expect("nonzero");
        let coords: Vec<FieldElement> = raw.iter().map(|&c| field.mul(c, inv)).collect();
        let defdeg = coords
            .iter()
            .map(|&c| field.subfield_degree(c))
            .fold(1, lcm);
        Ok(ProjPoint { coords, defdeg })
    }

    /// Builds a point from raw bits that are already normalized.
    pub(crate) fn from_normalized_raw(field: &FieldCtx, raw: &[u32]) -> Self {
        debug_assert_eq!(raw.iter().find(|&&b| b != 0), Some(&1));
        let coords: Vec<FieldElement> = raw.iter().map(|&b| field.wrap(b)).collect();
        let defdeg = raw
            .iter()
            .map(|&b| field.subfield_degree_raw(b))
            .fold(1, lcm);
        ProjPoint { coords, defdeg }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Degree over GF(2) of the smallest subfield containing every coordinate.
    pub fn defdeg(&self) -> u32 {
        self.defdeg
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Image under `v -> v M` (row-vector convention), renormalized.
    pub fn transform(&self, field: &FieldCtx, m: &Matrix) -> ProjPoint {
        let n = self.coords.len();
        assert_eq!(m.rows(), n);
        let img: Vec<FieldElement> = (0..m.cols())
            .map(|j| {
                (0..n).fold(field.zero(), |acc, i| {
                    field.add(acc, field.mul(self.coords[i], m[(i, j)]))
                })
            })
            .collect();
        ProjPoint::normalize(field, &img).expect("invertible transform")
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the coordinate bit-vectors.
impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" : ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// All coordinate permutations of a point, normalized, deduplicated and sorted.
pub fn s4_orbit(field: &FieldCtx, p: &ProjPoint) -> Vec<ProjPoint> {
    let c = p.coords();
    let n = c.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    permutations(&mut idx, 0, &mut |perm| {
        let raw: Vec<FieldElement> = perm.iter().map(|&i| c[i]).collect();
        out.push(ProjPoint::normalize(field, &raw).expect("nonzero"));
    });
    out.sort();
    out.dedup();
    out
}

fn permutations(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        f(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permutations(idx, k + 1, f);
        idx.swap(k, i);
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ConicKind {
    DoubleLine,
    TwoLines,
    SmoothConic,
}

impl ConicKind {
    /// `x1^2`, `x1*x2` or `x1*x2 + x3^2`.
    pub fn normal_form(self, field: &FieldCtx) -> MultiPoly {
        let terms: &[[u8; 4]] = match self {
            ConicKind::DoubleLine => &[[2, 0, 0, 0]],
            ConicKind::TwoLines => &[[1, 1, 0, 0]],
            ConicKind::SmoothConic => &[[1, 1, 0, 0], [0, 0, 2, 0]],
        };
        MultiPoly::from_terms(field, 3, terms.iter().map(|&e| (Monomial(e), field.one())))
    }
}

impl fmt::Display for ConicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConicKind::DoubleLine => "DoubleLine",
            ConicKind::TwoLines => "TwoLines",
            ConicKind::SmoothConic => "SmoothConic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicClass {
    pub kind: ConicKind,
    /// `M` with `Q(x M)` equal to the normal form. Absent when the two lines of
    /// a line pair are conjugate over a quadratic extension of the field.
    pub transform: Option<Matrix>,
    pub inverse: Option<Matrix>,
    /// The vertex `(a23, a13, a12)` where the gradient vanishes; absent for a double line.
    pub strange_point: Option<Vec<FieldElement>>,
}

/// Classifies a nonzero quadratic form in three variables.
pub fn conic_normal_form(q: &MultiPoly) -> Result<ConicClass, GeometryError> {
    if q.is_zero() {
        return Err(GeometryError::ZeroConic);
    }
    if q.nvars() != 3 || q.homogeneous_degree() != Some(2) {
        return Err(GeometryError::NotAConic);
    }
    let f = q.field();
    let co = |e: [u8; 4]| q.coeff(Monomial(e));
    let diag = [co([2, 0, 0, 0]), co([0, 2, 0, 0]), co([0, 0, 2, 0])];
    let (a12, a13, a23) = (co([1, 1, 0, 0]), co([1, 0, 1, 0]), co([0, 1, 1, 0]));
    let (z, o) = (f.zero(), f.one());

    if a12.is_zero() && a13.is_zero() && a23.is_zero() {
        // Q = L^2 with L = sum sqrt(a_ii) x_i; send L to x1
        let c: Vec<FieldElement> = diag.iter().map(|&a| f.sqrt(a)).collect();
        let k = c.iter().position(|x| !x.is_zero()).unwrap();
        let mut cols = vec![c];
        cols.extend((0..3).filter(|&j| j != k).map(|j| unit(f, 3, j)));
        return Ok(finish(q, ConicKind::DoubleLine, Some(&cols), None));
    }

    let a = vec![a23, a13, a12];
    // basis u = e_i / a_ij, v = e_j, a with polar form B(u, v) = 1
    let (i, j, aij) = if !a12.is_zero() {
        (0, 1, a12)
    } else if !a13.is_zero() {
        (0, 2, a13)
    } else {
        (1, 2, a23)
    };
    let mut u = unit(f, 3, i);
    u[i] = f.inv(aij).unwrap();
    let v = unit(f, 3, j);
    let r = Matrix::from_rows(vec![u.clone(), v.clone(), a.clone()]);
    let qu = q.eval(&u);
    let qv = q.eval(&v);
    let qa = q.eval(&a);
    // in y-coordinates (x = y R): Q = qu y1^2 + y1 y2 + qv y2^2 + qa y3^2
    if !qa.is_zero() {
        let s = [f.sqrt(qu), f.sqrt(qv), f.sqrt(qa)];
        let cols = vec![vec![o, z, z], vec![z, o, z], s.to_vec()];
        return Ok(finish(
            q,
            ConicKind::SmoothConic,
            Some(&cols),
            Some((&r, a)),
        ));
    }
    let cols = if qu.is_zero() {
        // y2 (y1 + qv y2)
        Some(vec![vec![o, qv, z], vec![z, o, z], vec![z, z, o]])
    } else {
        let inv_qu = f.inv(qu).unwrap();
        let roots = f.solve_quadratic(inv_qu, f.mul(qv, inv_qu));
        match roots.as_slice() {
            [t1, t2] => Some(vec![
                vec![o, *t1, z],
                vec![qu, f.mul(qu, *t2), z],
                vec![z, z, o],
            ]),
            _ => None,
        }
    };
    Ok(finish(
        q,
        ConicKind::TwoLines,
        cols.as_deref(),
        Some((&r, a)),
    ))
}

fn unit(f: &FieldCtx, n: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// `cols[k]` holds the coefficients of the new coordinate `w_k` in terms of
/// `y`, where `x = y R`. Then `x = w W^{-1} R`.
fn finish(
    q: &MultiPoly,
    kind: ConicKind,
    cols: Option<&[Vec<FieldElement>]>,
    basis: Option<(&Matrix, Vec<FieldElement>)>,
) -> ConicClass {
    let f = q.field();
    let transform = cols.map(|cols| {
        let w = Matrix::from_rows(cols.to_vec()).transpose();
        let s = w.inverse(f).expect("coordinate change is invertible");
        match &basis {
            Some((r, _)) => s.mul(f, r),
            None => s,
        }
    });
    if let Some(m) = &transform {
        debug_assert_eq!(q.linear_substitute(m).unwrap(), kind.normal_form(f));
    }
    let inverse = transform.as_ref().map(|m| m.inverse(f).unwrap());
    ConicClass {
        kind,
        transform,
        inverse,
        strange_point: basis.map(|(_, a)| a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse;

    #[test]
    fn normalize_examples() {
        let f = FieldCtx::new(2).unwrap();
        let (z, u) = (f.zero(), f.u());
        let p = ProjPoint::normalize(&f, &[z, z, u, u]).unwrap();
        assert_eq!(p.coords(), &[z, z, f.one(), f.one()]);
        let q = ProjPoint::normalize(&f, &[u, f.mul(u, u), z, z]).unwrap();
        assert_eq!(q.coords(), &[f.one(), u, z, z]);
        assert_eq!(q.defdeg(), 2);
        assert_eq!(
            ProjPoint::normalize(&f, &[z, z]),
            Err(GeometryError::ZeroVector)
        );
    }

    #[test]
    fn display() {
        let f = FieldCtx::new(4).unwrap();
        let p = ProjPoint::normalize(&f, &[f.one(), f.u(), f.zero()]).unwrap();
        assert_eq!(p.to_string(), "(1 : u : 0)");
    }

    #[test]
    fn orbit_sizes() {
        let f = FieldCtx::new(4).unwrap();
        let (z, o) = (f.zero(), f.one());
        let pt = |c: &[FieldElement]| ProjPoint::normalize(&f, c).unwrap();
        assert_eq!(s4_orbit(&f, &pt(&[z, z, o, o])).len(), 6);
        assert_eq!(s4_orbit(&f, &pt(&[o, o, o, o])).len(), 1);
        assert_eq!(s4_orbit(&f, &pt(&[z, z, z, o])).len(), 4);
        let b = f.u();
        let c = f.mul(f.u(), f.u());
        assert_eq!(s4_orbit(&f, &pt(&[o, o, b, c])).len(), 12);
    }

    #[test]
    fn conic_examples() {
        let f = FieldCtx::new(12).unwrap();
        let k = |s: &str| conic_normal_form(&parse(s, &f, 3).unwrap()).unwrap();
        assert_eq!(k("x1^2").kind, ConicKind::DoubleLine);
        assert_eq!(k("x1*x2+x1*x3+x2*x3").kind, ConicKind::SmoothConic);
        let two = k("x1*x2 + x1^2");
        assert_eq!(two.kind, ConicKind::TwoLines);
        assert_eq!(
            two.strange_point.unwrap(),
            vec![f.zero(), f.zero(), f.one()]
        );
        let smooth = k("x1*x2+x3^2");
        assert_eq!(smooth.transform.unwrap(), Matrix::identity(&f, 3));
        assert!(conic_normal_form(&parse("0", &f, 3).unwrap()).is_err());
        assert!(conic_normal_form(&parse("x1^3", &f, 3).unwrap()).is_err());
    }

    #[test]
    fn transforms_reach_normal_forms() {
        let f = FieldCtx::new(4).unwrap();
        for text in [
            "x1^2 + u*x2^2 + x3^2",
            "x1*x2 + u*x1*x3 + x3^2",
            "(x1+x2)*(x1+u*x3)",
            "x2*x3 + x2^2 + u*x3^2",
            "x1*x3 + x2^2 + x1^2",
        ] {
            let q = parse(text, &f, 3).unwrap();
            let c = conic_normal_form(&q).unwrap();
            if let Some(m) = &c.transform {
                assert_eq!(
                    q.linear_substitute(m).unwrap(),
                    c.kind.normal_form(&f),
                    "{text}"
                );
                assert_eq!(
                    m.mul(&f, c.inverse.as_ref().unwrap()),
                    Matrix::identity(&f, 3)
                );
            }
        }
    }

    #[test]
    fn conjugate_line_pair_has_no_rational_transform() {
        // x1^2 + x1 x2 + x2^2 is irreducible over GF(2)
        let f = FieldCtx::new(1).unwrap();
        let c = conic_normal_form(&parse("x1^2 + x1*x2 + x2^2", &f, 3).unwrap()).unwrap();
        assert_eq!(c.kind, ConicKind::TwoLines);
        assert!(c.transform.is_none());
    }
}
