//! Explicit surfaces with known singular loci, each with a closed-form
//! prediction of its singular points.
//!
//! Coordinates are `(x1, x2, x3, x4)`. For the inseparable double covers the
//! distinguished variable `z` (or `w`) is `x4`.

use thiserror::Error;

use crate::ff2k::{FieldCtx, FieldElement};
use crate::geometry::{s4_orbit, ProjPoint};
use crate::mpoly::{elementary_symmetric, linear_form, parse, MultiPoly, PolyError};
use crate::singular::{critical_points_plane, ConeType, EnumOptions, SingularError};
use crate::upoly::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("a3 must be nonzero")]
    A3Zero,
    #[error("a3 must differ from 1")]
    A3One,
    #[error("genericity inequation {name} fails (root {root})")]
    Inequation { name: &'static str, root: String },
    #[error("all symmetric coefficients are zero")]
    ZeroSpec,
    #[error("the critical locus of B is not finite")]
    CriticalLocusInfinite,
    #[error("critical point {0} of B lies on the line ell = 0")]
    CriticalPointOnLine(String),
    #[error("expected a plane quartic and a linear form in 3 variables")]
    BadCurve,
    #[error("the GF(4) generator is not available in GF(2^{0})")]
    NoF4(u32),
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A predicted S4-orbit of singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedOrbit {
    /// Representative; `None` when its coordinates are not in the field.
    pub base: Option<ProjPoint>,
    pub size: usize,
    pub label: &'static str,
}

/// What a closed form predicts about the singular locus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyExpectation {
    pub orbits: Vec<PredictedOrbit>,
    /// Predicted points with coordinates in the ambient field, sorted.
    pub points: Vec<ProjPoint>,
    /// Number of singular points over the algebraic closure, when finite.
    pub total: Option<usize>,
    /// Tangent-cone type claimed for every point.
    pub cone: Option<ConeType>,
    pub reducible: bool,
    pub infinite: bool,
}

impl FamilyExpectation {
    pub fn degenerate(&self) -> bool {
        self.reducible || self.infinite
    }

    /// Predicted points over the subfield GF(2^k).
    pub fn points_over(&self, field: &FieldCtx, k: u32) -> Vec<ProjPoint> {
        self.points
            .iter()
            .filter(|p| p.coords().iter().all(|&c| field.in_subfield(c, k)))
            .cloned()
            .collect()
    }
}

/// The order-3 element generating GF(4) inside the field.
pub fn f4_generator(field: &FieldCtx) -> Result<FieldElement, FamilyError> {
    field
        .subfield_generator(2)
        .map_err(|_| FamilyError::NoF4(field.degree()))
}

fn point(field: &FieldCtx, c: &[FieldElement]) -> ProjPoint {
    ProjPoint::normalize(field, c).expect("nonzero point")
}

/// The Cayley cubic `sigma_3 = 0`, with its four coordinate points.
pub fn cayley_cubic(field: &FieldCtx) -> (MultiPoly, FamilyExpectation) {
    let f = elementary_symmetric(field, 3);
    let (z, o) = (field.zero(), field.one());
    let mut points: Vec<ProjPoint> = (0..4)
        .map(|i| {
            let mut c = vec![z; 4];
            c[i] = o;
            point(field, &c)
        })
        .collect();
    points.sort();
    let exp = FamilyExpectation {
        orbits: vec![PredictedOrbit {
            base: Some(point(field, &[z, z, z, o])),
            size: 4,
            label: "coordinate points",
        }],
        points,
        total: Some(4),
        cone: Some(ConeType::Node),
        ..Default::default()
    };
    (f, exp)
}

/// Parameters of the inseparable double plane with 14 singular points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step4Params {
    pub a1: FieldElement,
    pub a2: FieldElement,
    pub a3: FieldElement,
}

/// `z^2 (x1 x2 + x3^2) + y1 y2 y3 y4` with `y3 = a1 x1 + a2 x2 + a3 x3`,
/// `y1 = y3 + x1`, `y2 = y3 + x2`, `y4 = y3 + x1 + x2`.
pub fn step4_polynomial(field: &FieldCtx, p: Step4Params) -> MultiPoly {
    let x = |i| MultiPoly::var(field, 4, i);
    let y3 = linear_form(field, &[p.a1, p.a2, p.a3, field.zero()]);
    let y1 = y3.add(&x(0));
    let y2 = y3.add(&x(1));
    let y4 = y3.add(&x(0)).add(&x(1));
    let q = x(0).mul(&x(1)).add(&x(2).square());
    x(3).square().mul(&q).add(&y1.mul(&y2).mul(&y3).mul(&y4))
}

/// Roots of `(a3^2 + 1) t^2 + a3 t + c0` in the field.
fn step4_quadratic(field: &FieldCtx, a3: FieldElement, c0: FieldElement) -> Vec<FieldElement> {
    let lead = field.add(field.mul(a3, a3), field.one());
    let inv = field.inv(lead).expect("a3 != 1");
    field.solve_quadratic(field.mul(a3, inv), field.mul(c0, inv))
}

/// The inseparable double plane and its 14 predicted singular points.
///
/// The genericity inequations are checked on the roots `b, c, d` of the three
/// quadratics that locate the last six points: `b` avoids `a2, 1 + a2`, `c`
/// avoids `a1, 1 + a1`, `d` avoids `a1 + a2, 1 + a1 + a2`, and `d != 1`
/// (equivalently `a1 + a2 + a3` is not 0 or 1; otherwise `x = (1, 1, 1)` lies
/// on `Q = B = 0` and only 13 points remain).
pub fn inseparable_step4(
    field: &FieldCtx,
    p: Step4Params,
) -> Result<(MultiPoly, FamilyExpectation), FamilyError> {
    let (z, o) = (field.zero(), field.one());
    let add = |a, b| field.add(a, b);
    if p.a3.is_zero() {
        return Err(FamilyError::A3Zero);
    }
    if p.a3.is_one() {
        return Err(FamilyError::A3One);
    }
    let sq_plus = |a: FieldElement| add(field.mul(a, a), a);
    let b_const = sq_plus(p.a2);
    let c_const = sq_plus(p.a1);
    let d_const = add(add(sq_plus(p.a1), sq_plus(p.a2)), o);
    let bs = step4_quadratic(field, p.a3, b_const);
    let cs = step4_quadratic(field, p.a3, c_const);
    let ds = step4_quadratic(field, p.a3, d_const);
    let checks: [(&'static str, &[FieldElement], FieldElement); 7] = [
        ("b != a2", &bs, p.a2),
        ("b != 1 + a2", &bs, add(o, p.a2)),
        ("c != a1", &cs, p.a1),
        ("c != 1 + a1", &cs, add(o, p.a1)),
        ("d != a1 + a2", &ds, add(p.a1, p.a2)),
        ("d != 1 + a1 + a2", &ds, add(o, add(p.a1, p.a2))),
        ("d != 1", &ds, o),
    ];
    for (name, roots, bad) in checks {
        if let Some(r) = roots.iter().find(|&&r| r == bad) {
            return Err(FamilyError::Inequation {
                name,
                root: r.to_string(),
            });
        }
    }

    let f = step4_polynomial(field, p);
    let q = |x: &[FieldElement]| add(field.mul(x[0], x[1]), field.mul(x[2], x[2]));
    let b_of = |x: &[FieldElement]| f.eval(&[x[0], x[1], x[2], z]);
    let inv3 = field.inv(p.a3).unwrap();
    let mut points = vec![point(field, &[z, z, z, o])];
    // nodes of the four lines, lifted to z = 0
    for (x1, x2, num) in [
        (z, o, p.a2),
        (z, o, add(o, p.a2)),
        (o, z, p.a1),
        (o, z, add(o, p.a1)),
        (o, o, add(p.a1, p.a2)),
        (o, o, add(o, add(p.a1, p.a2))),
    ] {
        points.push(point(field, &[x1, x2, field.mul(num, inv3), z]));
    }
    // over the vertex x1 = x2 = 0 of Q: z^2 = B / Q = a3^4
    points.push(point(field, &[z, z, o, field.mul(p.a3, p.a3)]));
    // z^2 = B(x) / Q(x) over the remaining solutions
    for (x1, x2, roots) in [(z, o, &bs), (o, z, &cs), (o, o, &ds)] {
        for &r in roots.iter() {
            let x = [x1, x2, r];
            let qx = q(&x);
            if qx.is_zero() {
                continue;
            }
            let zz = field.sqrt(field.div(b_of(&x), qx).unwrap());
            points.push(point(field, &[x1, x2, r, zz]));
        }
    }
    points.sort();
    points.dedup();
    let exp = FamilyExpectation {
        points,
        total: Some(14),
        ..Default::default()
    };
    Ok((f, exp))
}

/// The point list with `x3` set to the bare numerators `a2, 1 + a2, a1, 1 + a1,
/// a1 + a2, 1 + a1 + a2` (no division by `a3`) and `(0:0:1:1)` over the vertex
/// of `Q`. It agrees with the singular locus only when `a3 = 1`, which the
/// construction excludes; kept so the discrepancy stays checkable.
pub fn step4_listed_points(field: &FieldCtx, p: Step4Params) -> Vec<ProjPoint> {
    let (z, o) = (field.zero(), field.one());
    let add = |a, b| field.add(a, b);
    let mut points = vec![point(field, &[z, z, z, o]), point(field, &[z, z, o, o])];
    for (x1, x2, x3) in [
        (z, o, p.a2),
        (z, o, add(o, p.a2)),
        (o, z, p.a1),
        (o, z, add(o, p.a1)),
        (o, o, add(p.a1, p.a2)),
        (o, o, add(o, add(p.a1, p.a2))),
    ] {
        points.push(point(field, &[x1, x2, x3, z]));
    }
    points
}

/// Step-IV parameters `a3 = u, a1 = a2 = u^2` with `u` the GF(4) generator.
pub fn f16_params(field: &FieldCtx) -> Result<Step4Params, FamilyError> {
    let u = f4_generator(field)?;
    let u2 = field.mul(u, u);
    Ok(Step4Params {
        a1: u2,
        a2: u2,
        a3: u,
    })
}

/// The instance whose 14 singular points are all defined over GF(16).
pub fn f16_instance(field: &FieldCtx) -> Result<(MultiPoly, FamilyExpectation), FamilyError> {
    inseparable_step4(field, f16_params(field)?)
}

/// The Klein quartic `x1^3 x2 + x2^3 x3 + x3^3 x1`.
pub fn klein_quartic(field: &FieldCtx) -> MultiPoly {
    parse("x1^3*x2 + x2^3*x3 + x3^3*x1", field, 3).expect("valid literal")
}

/// Product of four lines in general position: the `B` of the Step-IV
/// construction at the GF(16) parameters, restricted to `z = 0`.
pub fn four_lines(field: &FieldCtx) -> Result<MultiPoly, FamilyError> {
    let f = step4_polynomial(field, f16_params(field)?);
    Ok(MultiPoly::from_terms(
        field,
        3,
        f.terms().filter(|(m, _)| m.0[3] == 0),
    ))
}

/// `w^4 + w^2 ell^2 + B` with `w = x4`, and its `2 |C_B|` predicted singular points.
pub fn schuett_quartic(
    b: &MultiPoly,
    ell: &MultiPoly,
    opts: &EnumOptions,
) -> Result<(MultiPoly, FamilyExpectation), FamilyError> {
    let field = b.field();
    if b.nvars() != 3
        || ell.nvars() != 3
        || b.homogeneous_degree() != Some(4)
        || ell.homogeneous_degree() != Some(1)
    {
        return Err(FamilyError::BadCurve);
    }
    let crit = critical_points_plane(b, opts)?;
    if crit.identically_critical || crit.truncated {
        return Err(FamilyError::CriticalLocusInfinite);
    }
    for p in &crit.points {
        if ell.eval(p.coords()).is_zero() {
            return Err(FamilyError::CriticalPointOnLine(p.to_string()));
        }
    }
    let w = MultiPoly::var(field, 4, 3);
    let b4 = b.with_nvars(4);
    let l4 = ell.with_nvars(4);
    let f = w.pow(4).add(&w.square().mul(&l4.square())).add(&b4);
    // F = (w^2 + ell w + sqrt(B))^2 on each fibre
    let mut points = Vec::new();
    for p in &crit.points {
        let c = p.coords();
        let l = ell.eval(c);
        let s = field.sqrt(b.eval(c));
        for r in field.solve_quadratic(l, s) {
            points.push(point(field, &[c[0], c[1], c[2], r]));
        }
    }
    points.sort();
    let exp = FamilyExpectation {
        points,
        total: Some(2 * crit.points.len()),
        cone: Some(ConeType::Node),
        ..Default::default()
    };
    Ok((f, exp))
}

/// Coefficients of `a1 s1^4 + a2 s1^2 s2 + a3 s1 s3 + a4 s4 + beta s2^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricFamilySpec {
    pub a1: FieldElement,
    pub a2: FieldElement,
    pub a3: FieldElement,
    pub a4: FieldElement,
    pub beta: FieldElement,
}

impl SymmetricFamilySpec {
    pub fn new(
        a1: FieldElement,
        a2: FieldElement,
        a3: FieldElement,
        a4: FieldElement,
        beta: FieldElement,
    ) -> Result<Self, FamilyError> {
        let s = SymmetricFamilySpec {
            a1,
            a2,
            a3,
            a4,
            beta,
        };
        if [a1, a2, a3, a4, beta].iter().all(|c| c.is_zero()) {
            return Err(FamilyError::ZeroSpec);
        }
        Ok(s)
    }

    /// The pencil member `c s1 s3 + s4`.
    pub fn pencil(field: &FieldCtx, c: FieldElement) -> Self {
        let z = field.zero();
        SymmetricFamilySpec {
            a1: z,
            a2: z,
            a3: c,
            a4: field.one(),
            beta: z,
        }
    }

    /// `s4 + beta s2^2`.
    pub fn d4(field: &FieldCtx, beta: FieldElement) -> Self {
        let z = field.zero();
        SymmetricFamilySpec {
            a1: z,
            a2: z,
            a3: z,
            a4: field.one(),
            beta,
        }
    }
}

pub fn symmetric_quartic(field: &FieldCtx, s: &SymmetricFamilySpec) -> MultiPoly {
    let sig: Vec<MultiPoly> = (1..=4).map(|i| elementary_symmetric(field, i)).collect();
    let s1sq = sig[0].square();
    [
        s1sq.square().scale(s.a1),
        s1sq.mul(&sig[1]).scale(s.a2),
        sig[0].mul(&sig[2]).scale(s.a3),
        sig[3].scale(s.a4),
        sig[1].square().scale(s.beta),
    ]
    .iter()
    .fold(MultiPoly::zero(field, 4), |acc, t| acc.add(t))
}

/// The cubic `f(t) = a3 s1 t^3 + (a2 + a3) s1^2 t^2 + (a2 s1^3 + a3 (s3 + s1 s2)) t + a4 s4`
/// with the `s_i` evaluated at `point`; every coordinate of a singular point is a root.
pub fn symmetric_fz(field: &FieldCtx, s: &SymmetricFamilySpec, point: &[FieldElement]) -> UniPoly {
    let sig: Vec<FieldElement> = (1..=4)
        .map(|i| elementary_symmetric(field, i).eval(point))
        .collect();
    let (s1, s2, s3, s4) = (sig[0], sig[1], sig[2], sig[3]);
    let m = |a, b| field.mul(a, b);
    let s1sq = m(s1, s1);
    let c0 = m(s.a4, s4);
    let c1 = field.add(m(s.a2, m(s1sq, s1)), m(s.a3, field.add(s3, m(s1, s2))));
    let c2 = m(field.add(s.a2, s.a3), s1sq);
    let c3 = m(s.a3, s1);
    UniPoly::new(field, &[c0, c1, c2, c3])
}

/// Predicted singular orbits of a symmetric quartic, with degeneracy flags.
pub fn classify_symmetric(field: &FieldCtx, s: &SymmetricFamilySpec) -> FamilyExpectation {
    let (z, o) = (field.zero(), field.one());
    let add = |a, b| field.add(a, b);
    let mul = |a, b| field.mul(a, b);
    let SymmetricFamilySpec {
        a1,
        a2,
        a3,
        a4,
        beta,
    } = *s;
    let mut exp = FamilyExpectation::default();

    // sigma_1 divides F, F is a square, or F is a multiple of sigma_4
    exp.reducible = (beta.is_zero() && a4.is_zero())
        || (a1.is_zero() && a2.is_zero() && a3.is_zero() && (a4.is_zero() || beta.is_zero()));
    // a singular curve: {s1 = s2 = 0}; a one-parameter family of (1,1,b,c);
    // or a one-parameter family of (1,1,1,b)
    let z12 = (!a2.is_zero()).then(|| field.div(a3, a2).unwrap());
    let twelve_shape = z12.is_some_and(|zz| !zz.is_zero() && a4 == mul(mul(zz, zz), a2));
    let p12_rhs = z12.map(|zz| {
        let z2 = mul(zz, zz);
        add(mul(a1, mul(z2, z2)), mul(a2, mul(z2, add(o, zz))))
    });
    exp.infinite = (a3.is_zero() && a4.is_zero())
        || (beta.is_zero() && twelve_shape && p12_rhs.is_some_and(|r| r.is_zero()))
        || (a1.is_zero() && a2.is_zero() && a4.is_zero() && beta == a3);
    if exp.degenerate() {
        return exp;
    }

    let mut orbit = |label: &'static str, size: usize, base: Option<Vec<FieldElement>>| {
        exp.orbits.push(PredictedOrbit {
            base: base.map(|c| point(field, &c)),
            size,
            label,
        });
    };
    if beta.is_zero() {
        orbit("(0,0,1,1)", 6, Some(vec![z, z, o, o]));
    }
    if a1.is_zero() && a2.is_zero() {
        orbit("(0,0,0,1)", 4, Some(vec![z, z, z, o]));
    }
    if a4.is_zero() {
        orbit("(1,1,1,1)", 1, Some(vec![o, o, o, o]));
    }
    // (1,1,1,b), b != 1: a4 = a2 s, beta = a1 s + a2 + a3 with s = (1+b)^2 != 0
    let s_val = if !a2.is_zero() {
        Some(field.div(a4, a2).unwrap())
    } else if a4.is_zero() && !a1.is_zero() {
        Some(field.div(add(beta, a3), a1).unwrap())
    } else {
        None
    };
    if let Some(sv) = s_val {
        if !sv.is_zero() && a4 == mul(a2, sv) && beta == add(add(mul(a1, sv), a2), a3) {
            let b = add(o, field.sqrt(sv));
            orbit("(1,1,1,b)", 4, Some(vec![o, o, o, b]));
        }
    }
    // (0,0,1,b): a2 = a3 = 0, b^2 + sqrt(beta/a1) b + 1 = 0
    if a2.is_zero() && a3.is_zero() && !a1.is_zero() && !beta.is_zero() {
        let k = field.sqrt(field.div(beta, a1).unwrap());
        let roots = field.solve_quadratic(k, o);
        orbit("(0,0,1,b)", 12, roots.first().map(|&b| vec![z, z, o, b]));
    }
    if let (Some(zz), Some(rhs)) = (z12, p12_rhs) {
        if twelve_shape {
            // (0,1,1,z), z != 1
            if !zz.is_one() && beta == rhs {
                orbit("(0,1,1,z)", 12, Some(vec![z, o, o, zz]));
            }
            // (1,1,b,c) with b + c = z and bc = 1 + sqrt(rhs / beta)
            if !beta.is_zero() {
                let bc = add(o, field.sqrt(field.div(rhs, beta).unwrap()));
                if !bc.is_zero() && !add(add(o, zz), bc).is_zero() {
                    let roots = field.solve_quadratic(zz, bc);
                    orbit(
                        "(1,1,b,c)",
                        12,
                        (roots.len() == 2).then(|| vec![o, o, roots[0], roots[1]]),
                    );
                }
            }
        }
    }
    let mut points: Vec<ProjPoint> = exp
        .orbits
        .iter()
        .filter_map(|o| o.base.as_ref())
        .flat_map(|b| s4_orbit(field, b))
        .collect();
    points.sort();
    points.dedup();
    exp.points = points;
    exp.total = Some(exp.orbits.iter().map(|o| o.size).sum());
    exp
}

/// `c s1 s3 + s4`: 10 nodes for `c != 0`.
pub fn pencil_ten(field: &FieldCtx, c: FieldElement) -> (MultiPoly, FamilyExpectation) {
    let spec = SymmetricFamilySpec::pencil(field, c);
    let mut exp = classify_symmetric(field, &spec);
    if !exp.degenerate() {
        exp.cone = Some(ConeType::Node);
    }
    (symmetric_quartic(field, &spec), exp)
}

/// `s4 + beta s2^2`: four uniplanar points for `beta != 0`.
pub fn d4_family(field: &FieldCtx, beta: FieldElement) -> (MultiPoly, FamilyExpectation) {
    let spec = SymmetricFamilySpec::d4(field, beta);
    let mut exp = classify_symmetric(field, &spec);
    if !exp.degenerate() {
        exp.cone = Some(ConeType::Uniplanar);
    }
    (symmetric_quartic(field, &spec), exp)
}

/// `z G + B` with `G = x1 x2 x3` and `B = x1^4 + x2^4 + x3^4 + x1 x2 x3 (x1 + x2 + x3)`:
/// a quartic with a triple point at `(0:0:0:1)`.
pub fn triple_point_example(field: &FieldCtx) -> MultiPoly {
    parse(
        "x4*x1*x2*x3 + x1^4 + x2^4 + x3^4 + x1*x2*x3*(x1+x2+x3)",
        field,
        4,
    )
    .expect("valid literal")
}
