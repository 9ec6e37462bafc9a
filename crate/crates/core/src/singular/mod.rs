//! Singular loci of surfaces in P^3 and critical loci of plane curves, with
//! tangent-cone classification and the degree-formula bookkeeping.

mod enumerate;
mod local;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ff2k::{FieldCtx, FieldElement};
use crate::geometry::{conic_normal_form, ConicKind, ProjPoint};
use crate::linalg::Matrix;
use crate::mpoly::{taylor_at_singular_point, MultiPoly, TaylorError};
use crate::upoly::gcd_raw;
use crate::{for_each_index, Parallelism, DEFAULT_SEED};

pub use enumerate::{Enumeration, MAX_KERNEL_DEGREE};
pub use local::{local_multiplicity, LocalMultiplicity, DEFAULT_DMAX};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error("degree in a single variable exceeds the kernel limit {0}")]
    DegreeTooLarge(u32),
    #[error("GF(2^{0}) is not a subfield of GF(2^{1})")]
    BadScope(u32, u32),
    #[error("expected a nonzero homogeneous polynomial")]
    NotHomogeneous,
    #[error("expected a polynomial in {expected} variables, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("expected a quartic, got degree {0}")]
    NotQuartic(u32),
    #[error("point {0} is not a double point")]
    NotDoublePoint(String),
    #[error("an empty system of equations")]
    EmptySystem,
    #[error(transparent)]
    Taylor(#[from] TaylorError),
}

/// Which points are searched: all of P^n(GF(2^m)) or those over a subfield.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Ambient,
    Subfield(u32),
}

impl Scope {
    /// `None` for the whole ambient field.
    fn subfield_degree(self, field: &FieldCtx) -> Result<Option<u32>, SingularError> {
        match self {
            Scope::Ambient => Ok(None),
            Scope::Subfield(k) if k == field.degree() => Ok(None),
            Scope::Subfield(k) if k >= 1 && field.degree().is_multiple_of(k) => Ok(Some(k)),
            Scope::Subfield(k) => Err(SingularError::BadScope(k, field.degree())),
        }
    }

    /// Degree over GF(2) of the searched field.
    pub fn degree(self, field: &FieldCtx) -> u32 {
        match self {
            Scope::Ambient => field.degree(),
            Scope::Subfield(k) => k,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Ambient => f.write_str("ambient"),
            Scope::Subfield(k) => write!(f, "GF(2^{k})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub scope: Scope,
    /// Stop (and report truncation) once more than this many points are found.
    pub cap: Option<usize>,
    pub seed: u64,
    pub parallelism: Parallelism,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            scope: Scope::Ambient,
            cap: None,
            seed: DEFAULT_SEED,
            parallelism: Parallelism::default(),
        }
    }
}

impl EnumOptions {
    pub fn scoped(scope: Scope) -> Self {
        EnumOptions {
            scope,
            ..Self::default()
        }
    }
}

fn check_form(f: &MultiPoly, nvars: usize) -> Result<u32, SingularError> {
    if f.nvars() != nvars {
        return Err(SingularError::WrongArity {
            expected: nvars,
            found: f.nvars(),
        });
    }
    f.homogeneous_degree().ok_or(SingularError::NotHomogeneous)
}

/// Equations used on stratum `c`: the partials (minus the one with respect to
/// the pinned coordinate when the degree is even) followed by `F` itself.
fn singular_system(f: &MultiPoly, degree: u32) -> impl Fn(usize) -> Vec<MultiPoly> + '_ {
    let grad = f.gradient();
    move |c| {
        let mut v: Vec<MultiPoly> = grad
            .iter()
            .enumerate()
            .filter(|(i, _)| degree % 2 == 1 || *i != c)
            .map(|(_, p)| p.clone())
            .collect();
        v.push(f.clone());
        v
    }
}

/// Singular points of the surface `F = 0` in P^3 over the chosen scope.
pub fn singular_points(f: &MultiPoly, opts: &EnumOptions) -> Result<Enumeration, SingularError> {
    let d = check_form(f, 4)?;
    let sys = singular_system(f, d);
    enumerate::enumerate_common_zeros(
        f.field(),
        4,
        &sys,
        opts.scope,
        opts.cap.unwrap_or(usize::MAX),
        opts.seed,
        opts.parallelism,
    )
}

/// Singular points over GF(2^k) by checking `F` and all four partials at every
/// point. Meant as an independent check of [`singular_points`].
pub fn brute_force_oracle(f: &MultiPoly, k: u32) -> Result<Vec<ProjPoint>, SingularError> {
    check_form(f, 4)?;
    if k > 4 {
        return Err(SingularError::BadScope(k, f.field().degree()));
    }
    let mut polys = f.gradient();
    polys.push(f.clone());
    enumerate::brute_force_scan(f.field(), 4, &polys, k)
}

/// Points of P^2 where all partials of a plane curve vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalLocus {
    pub points: Vec<ProjPoint>,
    /// The gradient is identically zero, so every point is critical; `points` is empty.
    pub identically_critical: bool,
    pub truncated: bool,
}

pub fn critical_points_plane(
    b: &MultiPoly,
    opts: &EnumOptions,
) -> Result<CriticalLocus, SingularError> {
    let d = check_form(b, 3)?;
    let grad = b.gradient();
    if grad.iter().all(|g| g.is_zero()) {
        return Ok(CriticalLocus {
            points: Vec::new(),
            identically_critical: true,
            truncated: false,
        });
    }
    // Euler: for even degree the partial along the pinned coordinate is dependent
    let sys = |c: usize| -> Vec<MultiPoly> {
        grad.iter()
            .enumerate()
            .filter(|(i, _)| d % 2 == 1 || *i != c)
            .map(|(_, p)| p.clone())
            .collect()
    };
    let e = enumerate::enumerate_common_zeros(
        b.field(),
        3,
        &sys,
        opts.scope,
        opts.cap.unwrap_or(usize::MAX),
        opts.seed,
        opts.parallelism,
    )?;
    Ok(CriticalLocus {
        points: e.points,
        identically_critical: false,
        truncated: e.truncated,
    })
}

/// Set-theoretic common zeros in P^2 of a list of homogeneous forms.
pub fn common_zeros_plane(
    polys: &[MultiPoly],
    opts: &EnumOptions,
) -> Result<Enumeration, SingularError> {
    let first = polys.first().ok_or(SingularError::EmptySystem)?;
    for p in polys {
        if p.nvars() != 3 {
            return Err(SingularError::WrongArity {
                expected: 3,
                found: p.nvars(),
            });
        }
        if !p.is_zero() && p.homogeneous_degree().is_none() {
            return Err(SingularError::NotHomogeneous);
        }
    }
    let sys = |_c: usize| polys.to_vec();
    enumerate::enumerate_common_zeros(
        first.field(),
        3,
        &sys,
        opts.scope,
        opts.cap.unwrap_or(usize::MAX),
        opts.seed,
        opts.parallelism,
    )
}

/// Tangent-cone type of a double point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeType {
    /// Smooth conic.
    Node,
    /// Two distinct planes.
    Biplanar,
    /// A double plane.
    Uniplanar,
}

impl From<ConicKind> for ConeType {
    fn from(k: ConicKind) -> Self {
        match k {
            ConicKind::SmoothConic => ConeType::Node,
            ConicKind::TwoLines => ConeType::Biplanar,
            ConicKind::DoubleLine => ConeType::Uniplanar,
        }
    }
}

impl fmt::Display for ConeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConeType::Node => "Node",
            ConeType::Biplanar => "Biplanar",
            ConeType::Uniplanar => "Uniplanar",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPointRecord {
    pub point: ProjPoint,
    /// Order of vanishing of the local equation.
    pub mult: u32,
    /// Tangent-cone type when `mult == 2`.
    pub cone: Option<ConeType>,
    pub local: LocalMultiplicity,
}

impl SingularPointRecord {
    pub fn defdeg(&self) -> u32 {
        self.point.defdeg()
    }

    /// Node -> 2, Biplanar -> at least 3, Uniplanar -> at least 8.
    pub fn consistent(&self) -> bool {
        let Some(v) = self.local.value else {
            return true;
        };
        match self.cone {
            Some(ConeType::Node) => v == 2,
            Some(ConeType::Biplanar) => v >= 3,
            Some(ConeType::Uniplanar) => v >= 8,
            None => v >= 2,
        }
    }
}

/// Multiplicity, tangent cone and local intersection multiplicity at a singular point.
pub fn classify_point(
    f: &MultiPoly,
    p: &ProjPoint,
    seed: u64,
    dmax: u32,
) -> Result<SingularPointRecord, SingularError> {
    let t = taylor_at_singular_point(f, p)?;
    let mult = t.multiplicity().unwrap_or(u32::MAX);
    let cone = if mult == 2 {
        Some(
            conic_normal_form(&t.q)
                .expect("nonzero quadratic part")
                .kind
                .into(),
        )
    } else {
        None
    };
    Ok(SingularPointRecord {
        point: p.clone(),
        mult,
        cone,
        local: local_multiplicity(f, p, seed, dmax),
    })
}

/// Whether the projection from the double point `p` is inseparable (`G == 0`).
pub fn is_inseparable_projection(f: &MultiPoly, p: &ProjPoint) -> Result<bool, SingularError> {
    let t = taylor_at_singular_point(f, p)?;
    if t.multiplicity() != Some(2) {
        return Err(SingularError::NotDoublePoint(p.to_string()));
    }
    Ok(t.g.is_zero())
}

/// Whether the partials are linearly dependent, i.e. the Gauss image lies in a plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussPlane {
    pub planar: bool,
    /// A nonzero `v` with `sum v_i F_i = 0`, normalized.
    pub witness: Option<ProjPoint>,
}

pub fn gauss_plane_test(f: &MultiPoly) -> Result<GaussPlane, SingularError> {
    let d = check_form(f, 4)?;
    let field = f.field();
    let grad = f.gradient();
    let vecs: Vec<Vec<FieldElement>> = grad.iter().map(|g| g.coefficient_vector(d - 1)).collect();
    // columns are the partials
    let a = Matrix::from_rows(vecs).transpose();
    let ker = a.kernel(field);
    let witness = ker
        .first()
        .map(|v| ProjPoint::normalize(field, v).expect("kernel vectors are nonzero"));
    Ok(GaussPlane {
        planar: witness.is_some(),
        witness,
    })
}

/// Heuristic verdict on whether the singular locus is finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normality {
    ProbablyNormal,
    NonNormalDetected,
    Inconclusive,
}

impl fmt::Display for Normality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normality::ProbablyNormal => "probably-normal",
            Normality::NonNormalDetected => "non-normal-detected",
            Normality::Inconclusive => "inconclusive",
        })
    }
}

/// Evidence collected by [`normality_heuristic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityEvidence {
    pub verdict: Normality,
    pub gradient_vanishes: bool,
    pub common_factor: bool,
    pub too_many_points: bool,
    /// Random planes carrying a singular point outside the enumerated set.
    pub plane_hits: usize,
}

const NORMALITY_LINES: usize = 4;
const NORMALITY_PLANES: usize = 8;

/// Threshold above which a point count alone signals a singular curve.
pub fn count_threshold(field: &FieldCtx, scope: Scope) -> usize {
    (1usize << scope.degree(field)) / 2
}

/// Heuristic normality check given the enumeration over `scope`.
///
/// Non-normal: identically vanishing gradient; `F` and its partials share a
/// root on every one of several random lines (a common factor); more than
/// `q/2` singular points over the searched field; or singular points outside
/// the enumerated set on at least two of several random planes. Probably
/// normal: none of these, and every point is already defined over a maximal
/// proper subfield of the searched field, so the counts have stabilized
/// along a chain of subfields.
pub fn normality_heuristic(
    f: &MultiPoly,
    found: &Enumeration,
    scope: Scope,
    seed: u64,
) -> Result<NormalityEvidence, SingularError> {
    check_form(f, 4)?;
    let field = f.field();
    let grad = f.gradient();
    let mut ev = NormalityEvidence {
        verdict: Normality::Inconclusive,
        gradient_vanishes: grad.iter().all(|g| g.is_zero()),
        common_factor: false,
        too_many_points: found.truncated || found.points.len() > count_threshold(field, scope),
        plane_hits: 0,
    };
    if ev.gradient_vanishes || ev.too_many_points {
        ev.verdict = Normality::NonNormalDetected;
        return Ok(ev);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e6f726d);
    let mut system = grad.clone();
    system.push(f.clone());

    let mut shared = 0;
    for _ in 0..NORMALITY_LINES {
        let frame = local::random_frame(
            field,
            &ProjPoint::normalize(field, &[field.one(); 4]).unwrap(),
            &mut rng,
        );
        // the line spanned by the first two rows, parametrized by (s, 1)
        let images: Vec<MultiPoly> = (0..4)
            .map(|j| {
                MultiPoly::from_terms(
                    field,
                    1,
                    [
                        (crate::mpoly::Monomial([1, 0, 0, 0]), frame[(0, j)]),
                        (crate::mpoly::Monomial([0, 0, 0, 0]), frame[(1, j)]),
                    ],
                )
            })
            .collect();
        let mut g: Vec<u32> = Vec::new();
        let mut all_zero = true;
        for p in &system {
            let r = p.compose(&images);
            let mut dense = vec![0u32; r.total_degree().map_or(0, |d| d as usize + 1)];
            for (m, c) in r.terms() {
                dense[m.0[0] as usize] ^= c.bits();
            }
            if dense.iter().any(|&c| c != 0) {
                all_zero = false;
            }
            g = gcd_raw(field, g, dense);
        }
        if all_zero || g.len() > 1 {
            shared += 1;
        }
    }
    ev.common_factor = shared == NORMALITY_LINES;
    if ev.common_factor {
        ev.verdict = Normality::NonNormalDetected;
        return Ok(ev);
    }

    let known: BTreeSet<&ProjPoint> = found.points.iter().collect();
    for _ in 0..NORMALITY_PLANES {
        let frame = local::random_frame(
            field,
            &ProjPoint::normalize(field, &[field.one(); 4]).unwrap(),
            &mut rng,
        );
        let images: Vec<MultiPoly> = (0..4)
            .map(|j| {
                crate::mpoly::linear_form(field, &[frame[(0, j)], frame[(1, j)], frame[(2, j)]])
            })
            .collect();
        let restricted: Vec<MultiPoly> = system.iter().map(|p| p.compose(&images)).collect();
        let on_plane = common_zeros_plane(
            &restricted,
            &EnumOptions {
                scope: Scope::Ambient,
                cap: Some(64),
                seed,
                parallelism: Parallelism::Sequential,
            },
        )?;
        let new_point = on_plane.truncated
            || on_plane.points.iter().any(|pp| {
                let c = pp.coords();
                let img: Vec<FieldElement> = (0..4)
                    .map(|j| {
                        (0..3).fold(field.zero(), |acc, i| {
                            field.add(acc, field.mul(c[i], frame[(i, j)]))
                        })
                    })
                    .collect();
                let q = ProjPoint::normalize(field, &img).unwrap();
                !known.contains(&q)
            });
        if new_point {
            ev.plane_hits += 1;
        }
    }
    if ev.plane_hits >= 2 {
        ev.verdict = Normality::NonNormalDetected;
        return Ok(ev);
    }

    let s = scope.degree(field);
    let stable = proper_maximal_divisors(s)
        .into_iter()
        .any(|k| found.points.iter().all(|p| k % p.defdeg() == 0));
    ev.verdict = if stable {
        Normality::ProbablyNormal
    } else {
        Normality::Inconclusive
    };
    Ok(ev)
}

/// Divisors `k < s` of `s` not properly contained in another such divisor.
fn proper_maximal_divisors(s: u32) -> Vec<u32> {
    let divs: Vec<u32> = (1..s).filter(|k| s.is_multiple_of(*k)).collect();
    divs.iter()
        .copied()
        .filter(|&k| !divs.iter().any(|&l| l != k && l % k == 0))
        .collect()
}

/// Outcome of checking `residual >= 3` when the Gauss image is not planar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualCheck {
    Holds,
    Violated,
    /// Not asserted: planar Gauss image, unknown multiplicities, or not a quartic.
    Skipped,
}

impl fmt::Display for ResidualCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualCheck::Holds => "holds",
            ResidualCheck::Violated => "violated",
            ResidualCheck::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeFormula {
    /// `sum (F, F_1, F_2)_P`, if every term is known.
    pub local_sum: Option<u32>,
    /// `36 - local_sum`.
    pub residual: Option<i64>,
    pub check: ResidualCheck,
}

/// `36 - sum (F, F_1, F_2)_P` over the given records.
pub fn degree_formula_report(
    f: &MultiPoly,
    records: &[SingularPointRecord],
    gauss_plane: bool,
) -> Result<DegreeFormula, SingularError> {
    let d = check_form(f, 4)?;
    if d != 4 {
        return Err(SingularError::NotQuartic(d));
    }
    let local_sum: Option<u32> = records.iter().map(|r| r.local.value).sum();
    let residual = local_sum.map(|s| 36 - s as i64);
    let check = match residual {
        Some(r) if !gauss_plane => {
            if r >= 3 {
                ResidualCheck::Holds
            } else {
                ResidualCheck::Violated
            }
        }
        _ => ResidualCheck::Skipped,
    };
    Ok(DegreeFormula {
        local_sum,
        residual,
        check,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub scope: Scope,
    pub seed: u64,
    pub dmax: u32,
    pub parallelism: Parallelism,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            scope: Scope::Ambient,
            seed: DEFAULT_SEED,
            dmax: DEFAULT_DMAX,
            parallelism: Parallelism::default(),
        }
    }
}

/// Everything known about the singular locus of one surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularReport {
    pub surface: String,
    pub field: String,
    pub scope: Scope,
    pub records: Vec<SingularPointRecord>,
    /// Number of points, or the cap that was exceeded when `truncated`.
    pub total: usize,
    pub truncated: bool,
    pub by_defdeg: BTreeMap<u32, usize>,
    pub degree: u32,
    /// Present for quartics.
    pub degree_formula: Option<DegreeFormula>,
    pub gauss_plane: GaussPlane,
    pub normality: NormalityEvidence,
}

impl SingularReport {
    pub fn points(&self) -> Vec<&ProjPoint> {
        self.records.iter().map(|r| &r.point).collect()
    }

    /// Records whose local multiplicity did not stabilize.
    pub fn inconclusive(&self) -> bool {
        self.normality.verdict == Normality::Inconclusive
            || self.records.iter().any(|r| r.local.value.is_none())
    }
}

/// Enumerates, classifies and summarizes the singular locus of `F = 0`.
pub fn analyze(f: &MultiPoly, opts: &AnalyzeOptions) -> Result<SingularReport, SingularError> {
    let d = check_form(f, 4)?;
    let field = f.field();
    let cap = count_threshold(field, opts.scope).max(32);
    let found = singular_points(
        f,
        &EnumOptions {
            scope: opts.scope,
            cap: Some(cap),
            seed: opts.seed,
            parallelism: opts.parallelism,
        },
    )?;
    let normality = normality_heuristic(f, &found, opts.scope, opts.seed)?;
    let gauss_plane = gauss_plane_test(f)?;
    let records: Vec<SingularPointRecord> = if normality.verdict == Normality::NonNormalDetected {
        Vec::new()
    } else {
        let res = for_each_index(opts.parallelism, found.points.len(), |i| {
            classify_point(f, &found.points[i], opts.seed, opts.dmax)
        });
        res.into_iter().collect::<Result<_, _>>()?
    };
    let mut by_defdeg = BTreeMap::new();
    for p in &found.points {
        *by_defdeg.entry(p.defdeg()).or_insert(0) += 1;
    }
    let degree_formula = if d == 4 && normality.verdict != Normality::NonNormalDetected {
        Some(degree_formula_report(f, &records, gauss_plane.planar)?)
    } else {
        None
    };
    Ok(SingularReport {
        surface: f.to_string(),
        field: field.name(),
        scope: opts.scope,
        total: if found.truncated {
            cap
        } else {
            found.points.len()
        },
        truncated: found.truncated,
        records,
        by_defdeg,
        degree: d,
        degree_formula,
        gauss_plane,
        normality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse;

    fn gf(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    #[test]
    fn scope_checks() {
        let k = gf(12);
        assert_eq!(count_threshold(&k, Scope::Ambient), 2048);
        assert_eq!(count_threshold(&k, Scope::Subfield(4)), 8);
        let f = parse("x1^4+x2*x3*x4^2", &k, 4).unwrap();
        assert_eq!(
            singular_points(&f, &EnumOptions::scoped(Scope::Subfield(5))),
            Err(SingularError::BadScope(5, 12))
        );
    }

    #[test]
    fn arity_and_homogeneity() {
        let k = gf(4);
        let plane = parse("x1^4+x2^4", &k, 3).unwrap();
        assert!(matches!(
            singular_points(&plane, &EnumOptions::default()),
            Err(SingularError::WrongArity {
                expected: 4,
                found: 3
            })
        ));
        let mixed = parse("x1^4+x2", &k, 4).unwrap();
        assert_eq!(
            singular_points(&mixed, &EnumOptions::default()),
            Err(SingularError::NotHomogeneous)
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let k = gf(4);
        for text in [
            "x1*x2*x3*x4",
            "x4^2*(x1*x2+x3^2)+x1^4+x2^4+x1*x2*x3^2",
            "(x1*x2+x3*x4)*(x1^2+x2*x4)",
            "x1^3*x2+x2^3*x3+x3^3*x1+x4^4",
        ] {
            let f = parse(text, &k, 4).unwrap();
            let mut oracle = brute_force_oracle(&f, 4).unwrap();
            oracle.sort();
            for par in [Parallelism::Sequential, Parallelism::Parallel] {
                let opts = EnumOptions {
                    parallelism: par,
                    ..EnumOptions::default()
                };
                assert_eq!(singular_points(&f, &opts).unwrap().points, oracle, "{text}");
            }
        }
    }

    #[test]
    fn cap_truncates() {
        let k = gf(4);
        let f = parse("x1^2*x2^2", &k, 4).unwrap();
        let opts = EnumOptions {
            cap: Some(8),
            ..EnumOptions::default()
        };
        let e = singular_points(&f, &opts).unwrap();
        assert!(e.truncated);
        assert!(e.points.is_empty());
    }

    #[test]
    fn critical_loci() {
        let k = gf(12);
        let klein = parse("x1^3*x2+x2^3*x3+x3^3*x1", &k, 3).unwrap();
        let c = critical_points_plane(&klein, &EnumOptions::default()).unwrap();
        assert_eq!(c.points.len(), 7);
        let sq = parse("(x1*x2+x3^2)^2", &k, 3).unwrap();
        assert!(
            critical_points_plane(&sq, &EnumOptions::default())
                .unwrap()
                .identically_critical
        );
    }

    #[test]
    fn node_record() {
        let k = gf(4);
        // affine chart x4 = 1: x1 x2 + x3^2 + higher order terms
        let f = parse("x4^2*(x1*x2+x3^2)+x1^4+x2^4+x3^4", &k, 4).unwrap();
        let p = ProjPoint::normalize(&k, &[k.zero(), k.zero(), k.zero(), k.one()]).unwrap();
        let r = classify_point(&f, &p, DEFAULT_SEED, DEFAULT_DMAX).unwrap();
        assert_eq!(r.mult, 2);
        assert_eq!(r.cone, Some(ConeType::Node));
        assert_eq!(r.local.value, Some(2));
        assert!(r.consistent());
    }

    #[test]
    fn gauss_plane_cases() {
        let k = gf(4);
        let fourth = parse("x1^4+x2^4+x3^4+x4^4", &k, 4).unwrap();
        assert!(gauss_plane_test(&fourth).unwrap().planar);
        let inseparable = parse("x4^2*(x1*x2+x3^2)+x1^3*x2+x2^3*x3+x3^3*x1", &k, 4).unwrap();
        // F_4 does not occur, so (0,0,0,1) is a witness
        let g = gauss_plane_test(&inseparable).unwrap();
        assert!(g.planar);
        assert_eq!(g.witness.unwrap().coords()[3], k.one());
        let generic = parse("x1^3*x2+x2^3*x3+x3^3*x4+x4^3*x1", &k, 4).unwrap();
        assert!(!gauss_plane_test(&generic).unwrap().planar);
    }

    #[test]
    fn degree_formula_without_points() {
        let k = gf(4);
        let f = parse("x1^3*x2+x2^3*x3+x3^3*x4+x4^3*x1", &k, 4).unwrap();
        let d = degree_formula_report(&f, &[], false).unwrap();
        assert_eq!(d.residual, Some(36));
        assert_eq!(d.check, ResidualCheck::Holds);
        let cubic = parse("x1*x2*x3", &k, 4).unwrap();
        assert_eq!(
            degree_formula_report(&cubic, &[], false),
            Err(SingularError::NotQuartic(3))
        );
    }

    #[test]
    fn fourth_powers_are_non_normal() {
        let k = gf(4);
        let f = parse("x1^4+x2^4+x3^4+x4^4", &k, 4).unwrap();
        let r = analyze(&f, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.normality.verdict, Normality::NonNormalDetected);
        assert!(r.normality.gradient_vanishes);
    }
}
