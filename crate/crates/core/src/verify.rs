//! Checks of the closed-form claims about the explicit families against
//! computation. Each claim yields one row with what was expected, what was
//! observed, and a verdict.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::families::{
    cayley_cubic, classify_symmetric, d4_family, f16_instance, f16_params, f4_generator,
    four_lines, inseparable_step4, klein_quartic, pencil_ten, schuett_quartic, step4_listed_points,
    symmetric_fz, symmetric_quartic, triple_point_example, FamilyError, Step4Params,
    SymmetricFamilySpec,
};
use crate::ff2k::FieldCtx;
use crate::geometry::ProjPoint;
use crate::mpoly::{linear_form, MultiPoly};
use crate::singular::{
    analyze, critical_points_plane, is_inseparable_projection, normality_heuristic,
    singular_points, AnalyzeOptions, ConeType, EnumOptions, Normality, Scope, SingularError,
    SingularReport,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("claims need GF(2^12) or GF(2^24) (GF(8) and GF(16) as subfields), got GF(2^{0})")]
    FieldTooSmall(u32),
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Singular(#[from] SingularError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimRow {
    pub id: &'static str,
    /// Short statement of the claim being checked.
    pub claim: &'static str,
    pub expected: String,
    pub observed: String,
    pub verdict: Verdict,
}

type ClaimFn = fn(&Ctx) -> Result<(String, String, bool), VerifyError>;

struct Claim {
    id: &'static str,
    claim: &'static str,
    run: ClaimFn,
}

const CLAIMS: &[Claim] = &[
    Claim { id: "klein7", claim: "Klein quartic: the critical locus has at most 7 points, here exactly (1:e:e^5) with e^7 = 1", run: klein7 },
    Claim { id: "f16", claim: "Step-IV instance a3 = u, a1 = a2 = u^2: 14 singular points over GF(16), 8 over GF(4), 4 over GF(2)", run: f16 },
    Claim { id: "f16-closed-form", claim: "Step-IV instance: points equal the closed form with x3 = numerator / a3 and z^2 = B/Q", run: f16_closed_form },
    Claim { id: "f16-listed", claim: "Step-IV instance: the listed points, x3 equal to the bare numerators and (0:0:1:1)", run: f16_listed },
    Claim { id: "f16-inseparable", claim: "Step-IV instance: projection from (0:0:0:1) is inseparable, G = 0", run: f16_inseparable },
    Claim { id: "step4-genericity", claim: "Step-IV construction rejects a3 = 0 and a failing inequation b != a2", run: step4_genericity },
    Claim { id: "schuett-klein", claim: "w^4 + w^2 x1^2 + Klein: 14 nodes, local multiplicity 2 each, Gauss image planar", run: schuett_klein },
    Claim { id: "schuett-lines", claim: "w^4 + w^2 ell^2 + four general lines: 2 |C_B| = 14 singular points", run: schuett_lines },
    Claim { id: "pencil10", claim: "c s1 s3 + s4: 10 nodes for c != 0, degenerate at c = 0", run: pencil10 },
    Claim { id: "d4", claim: "s4 + beta s2^2: 4 uniplanar points with (F, F1, F2) >= 8", run: d4 },
    Claim { id: "symmetric-sweep", claim: "all 1023 nonzero symmetric specs over GF(4): enumeration equals the predicted orbits", run: symmetric_sweep },
    Claim { id: "symmetric-cardinalities", claim: "normal symmetric quartics have 0, 1, 4, 5, 6, 10 or 12 singular points", run: symmetric_cardinalities },
    Claim { id: "symmetric-fz", claim: "coordinates of singular points of symmetric quartics are roots of the cubic f", run: symmetric_fz_roots },
    Claim { id: "triple-point", claim: "a quartic with a triple point has at most 7 singular points", run: triple_point },
    Claim { id: "cayley", claim: "Cayley cubic s3: the 4 coordinate points, all nodes", run: cayley },
    Claim { id: "bound16", claim: "every probably-normal quartic above has at most 16 singular points", run: bound16 },
    Claim { id: "bound15-uniplanar", claim: "a quartic with a uniplanar point has at most 15 singular points", run: bound15 },
];

/// Ids of all claims, in run order.
pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

struct Ctx {
    field: FieldCtx,
    seed: u64,
    sweep: OnceCell<Vec<SweepEntry>>,
    reports: OnceCell<Vec<SingularReport>>,
}

impl Ctx {
    fn analyze(&self, f: &MultiPoly) -> Result<SingularReport, VerifyError> {
        Ok(analyze(
            f,
            &AnalyzeOptions {
                seed: self.seed,
                ..AnalyzeOptions::default()
            },
        )?)
    }

    fn enum_opts(&self, scope: Scope) -> EnumOptions {
        EnumOptions {
            seed: self.seed,
            ..EnumOptions::scoped(scope)
        }
    }

    fn gf4_specs(&self) -> Vec<SymmetricFamilySpec> {
        let f4 = self
            .field
            .subfield_elements(2)
            .expect("GF(4) is a subfield");
        (1..1024usize)
            .map(|i| {
                let c: Vec<_> = (0..5).map(|k| f4[(i >> (2 * k)) & 3]).collect();
                SymmetricFamilySpec::new(c[0], c[1], c[2], c[3], c[4]).expect("nonzero")
            })
            .collect()
    }
}

/// Runs the claim whose id equals `filter`, else those whose id contains it
/// (all when `None`).
pub fn run_claims(
    field: &FieldCtx,
    filter: Option<&str>,
    seed: u64,
) -> Result<Vec<ClaimRow>, VerifyError> {
    if !field.degree().is_multiple_of(12) {
        return Err(VerifyError::FieldTooSmall(field.degree()));
    }
    let exact = filter.is_some_and(|s| CLAIMS.iter().any(|c| c.id == s));
    let selected: Vec<&Claim> = CLAIMS
        .iter()
        .filter(|c| match filter {
            None => true,
            Some(s) if exact => c.id == s,
            Some(s) => c.id.contains(s),
        })
        .collect();
    if selected.is_empty() {
        return Err(VerifyError::UnknownClaim(filter.unwrap_or("").to_string()));
    }
    let ctx = Ctx {
        field: field.clone(),
        seed,
        sweep: OnceCell::new(),
        reports: OnceCell::new(),
    };
    selected
        .into_iter()
        .map(|c| {
            let (expected, observed, ok) = (c.run)(&ctx)?;
            Ok(ClaimRow {
                id: c.id,
                claim: c.claim,
                expected,
                observed,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            })
        })
        .collect()
}

fn fmt_hist(h: &BTreeMap<u32, usize>) -> String {
    let parts: Vec<String> = h.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn hist_of(points: &[ProjPoint]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for p in points {
        *h.entry(p.defdeg()).or_insert(0) += 1;
    }
    h
}

fn klein7(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let crit = critical_points_plane(&klein_quartic(field), &ctx.enum_opts(Scope::Ambient))?;
    let mut want: Vec<ProjPoint> = field
        .subfield_elements(3)
        .expect("GF(8) is a subfield")
        .into_iter()
        .filter(|e| !e.is_zero())
        .map(|e| ProjPoint::normalize(field, &[field.one(), e, field.pow(e, 5)]).unwrap())
        .collect();
    want.sort();
    let ok = !crit.identically_critical && !crit.truncated && crit.points == want;
    Ok((
        format!("7 points {}", fmt_hist(&hist_of(&want))),
        format!(
            "{} points {}",
            crit.points.len(),
            fmt_hist(&hist_of(&crit.points))
        ),
        ok,
    ))
}

fn f16(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let (f, _) = f16_instance(&ctx.field)?;
    let r = ctx.analyze(&f)?;
    let want: BTreeMap<u32, usize> = [(1, 4), (2, 4), (4, 6)].into_iter().collect();
    let ok = !r.truncated && r.total == 14 && r.by_defdeg == want;
    Ok((
        format!("14 points {}", fmt_hist(&want)),
        format!("{} points {}", r.total, fmt_hist(&r.by_defdeg)),
        ok,
    ))
}

fn f16_closed_form(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let (f, exp) = f16_instance(&ctx.field)?;
    let found = singular_points(&f, &ctx.enum_opts(Scope::Subfield(4)))?;
    let missing = exp
        .points
        .iter()
        .filter(|p| !found.points.contains(p))
        .count();
    let extra = found
        .points
        .iter()
        .filter(|p| !exp.points.contains(p))
        .count();
    Ok((
        format!("{} predicted points", exp.points.len()),
        format!(
            "{} found, {missing} missing, {extra} extra",
            found.points.len()
        ),
        missing == 0 && extra == 0 && !found.truncated,
    ))
}

fn f16_listed(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let (f, _) = f16_instance(&ctx.field)?;
    let listed = step4_listed_points(&ctx.field, f16_params(&ctx.field)?);
    let found = singular_points(&f, &ctx.enum_opts(Scope::Subfield(4)))?;
    let absent: Vec<String> = listed
        .iter()
        .filter(|p| !found.points.contains(p))
        .map(|p| p.to_string())
        .collect();
    Ok((
        format!("all {} listed points singular", listed.len()),
        if absent.is_empty() {
            "all present".to_string()
        } else {
            format!("absent: {}", absent.join(", "))
        },
        absent.is_empty(),
    ))
}

fn f16_inseparable(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let (f, _) = f16_instance(field)?;
    let p = ProjPoint::normalize(
        field,
        &[field.zero(), field.zero(), field.zero(), field.one()],
    )
    .unwrap();
    let insep = is_inseparable_projection(&f, &p)?;
    Ok(("G = 0".into(), format!("G = 0: {insep}"), insep))
}

fn step4_genericity(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let u = f4_generator(field)?;
    let zero_a3 = inseparable_step4(
        field,
        Step4Params {
            a1: u,
            a2: u,
            a3: field.zero(),
        },
    );
    // a2 = 0 makes b = 0 = a2 a root of the b-quadratic
    let bad_b = inseparable_step4(
        field,
        Step4Params {
            a1: u,
            a2: field.zero(),
            a3: u,
        },
    );
    let ok = matches!(zero_a3, Err(FamilyError::A3Zero))
        && matches!(
            bad_b,
            Err(FamilyError::Inequation {
                name: "b != a2",
                ..
            })
        );
    let show = |r: &Result<_, FamilyError>| match r {
        Ok(_) => "accepted".to_string(),
        Err(e) => e.to_string(),
    };
    Ok((
        "both rejected, naming the failing condition".into(),
        format!("{}; {}", show(&zero_a3), show(&bad_b)),
        ok,
    ))
}

fn schuett_klein(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let x1 = linear_form(field, &[field.one(), field.zero(), field.zero()]);
    let (f, exp) = schuett_quartic(&klein_quartic(field), &x1, &ctx.enum_opts(Scope::Ambient))?;
    let r = ctx.analyze(&f)?;
    let nodes = r.records.iter().all(|x| x.cone == Some(ConeType::Node));
    let locals = r.records.iter().all(|x| x.local.value == Some(2));
    let df = r.degree_formula;
    let sum = df.and_then(|d| d.local_sum);
    let res = df.and_then(|d| d.residual);
    let same = r.records.iter().map(|x| &x.point).eq(exp.points.iter());
    let ok = r.total == 14
        && !r.truncated
        && nodes
        && locals
        && sum == Some(28)
        && res == Some(8)
        && r.gauss_plane.planar
        && same;
    Ok((
        "14 nodes, local 2 each, sum 28, residual 8, planar".into(),
        format!(
            "{} points, all nodes {nodes}, all local 2 {locals}, sum {}, residual {}, planar {}",
            r.total,
            sum.map_or("?".into(), |s| s.to_string()),
            res.map_or("?".into(), |s| s.to_string()),
            r.gauss_plane.planar
        ),
        ok,
    ))
}

/// A linear form avoiding the critical points of the four-lines curve.
pub fn lines_ell(field: &FieldCtx) -> MultiPoly {
    linear_form(
        field,
        &[field.one(), field.u(), field.mul(field.u(), field.u())],
    )
}

fn schuett_lines(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let b = four_lines(field)?;
    let (f, exp) = schuett_quartic(&b, &lines_ell(field), &ctx.enum_opts(Scope::Ambient))?;
    let found = singular_points(&f, &ctx.enum_opts(Scope::Ambient))?;
    let ok = exp.total == Some(14) && found.points == exp.points;
    Ok((
        format!("2 |C_B| = {}", exp.total.unwrap_or(0)),
        format!("{} points", found.points.len()),
        ok,
    ))
}

fn pencil10(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let u = f4_generator(field)?;
    let mut obs = Vec::new();
    let mut ok = true;
    for c in [field.one(), u] {
        let (f, exp) = pencil_ten(field, c);
        let r = ctx.analyze(&f)?;
        let nodes = r.records.iter().all(|x| x.cone == Some(ConeType::Node));
        let pts: Vec<ProjPoint> = r.records.iter().map(|x| x.point.clone()).collect();
        ok &= r.total == 10 && nodes && pts == exp.points;
        obs.push(format!("c={c}: {} points, nodes {nodes}", r.total));
    }
    let (f0, exp0) = pencil_ten(field, field.zero());
    let r0 = ctx.analyze(&f0)?;
    ok &= exp0.reducible && r0.normality.verdict != Normality::ProbablyNormal;
    obs.push(format!(
        "c=0: reducible {}, {}",
        exp0.reducible, r0.normality.verdict
    ));
    Ok((
        "10 nodes at c = 1, u; c = 0 flagged".into(),
        obs.join("; "),
        ok,
    ))
}

fn d4(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let u = f4_generator(field)?;
    let mut obs = Vec::new();
    let mut ok = true;
    for beta in [field.one(), u] {
        let (f, _) = d4_family(field, beta);
        let r = ctx.analyze(&f)?;
        let uni = r
            .records
            .iter()
            .all(|x| x.cone == Some(ConeType::Uniplanar));
        let min_local = r.records.iter().filter_map(|x| x.local.value).min();
        let all_known = r.records.iter().all(|x| x.local.value.is_some());
        ok &= r.total == 4 && uni && all_known && min_local.is_some_and(|m| m >= 8);
        obs.push(format!(
            "beta={beta}: {} points, uniplanar {uni}, min local {}",
            r.total,
            min_local.map_or("?".into(), |m| m.to_string())
        ));
    }
    Ok(("4 uniplanar, local >= 8".into(), obs.join("; "), ok))
}

struct SweepEntry {
    spec: SymmetricFamilySpec,
    degenerate: bool,
    predicted: Vec<ProjPoint>,
    total: Option<usize>,
    found: Vec<ProjPoint>,
    truncated: bool,
    normality: Normality,
}

fn sweep(ctx: &Ctx) -> Result<&[SweepEntry], VerifyError> {
    if let Some(s) = ctx.sweep.get() {
        return Ok(s);
    }
    let entries = compute_sweep(ctx)?;
    Ok(ctx.sweep.get_or_init(|| entries))
}

fn compute_sweep(ctx: &Ctx) -> Result<Vec<SweepEntry>, VerifyError> {
    let field = &ctx.field;
    let opts = ctx.enum_opts(Scope::Subfield(4));
    ctx.gf4_specs()
        .into_iter()
        .map(|spec| {
            let exp = classify_symmetric(field, &spec);
            let f = symmetric_quartic(field, &spec);
            let found = singular_points(&f, &opts)?;
            let normality = normality_heuristic(&f, &found, Scope::Subfield(4), ctx.seed)?.verdict;
            Ok(SweepEntry {
                spec,
                degenerate: exp.degenerate(),
                predicted: exp.points_over(field, 4),
                total: exp.total,
                found: found.points,
                truncated: found.truncated,
                normality,
            })
        })
        .collect()
}

fn symmetric_sweep(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let entries = sweep(ctx)?;
    let mut mismatched = 0;
    let mut degenerate_normal = 0;
    let mut degenerate = 0;
    for e in entries {
        if e.degenerate {
            degenerate += 1;
            if e.normality == Normality::ProbablyNormal {
                degenerate_normal += 1;
            }
        } else if e.truncated || e.found != e.predicted || e.total != Some(e.found.len()) {
            mismatched += 1;
        }
    }
    Ok((
        "0 mismatches; no flagged spec probably-normal".into(),
        format!(
            "{} specs, {degenerate} flagged, {mismatched} mismatches, {degenerate_normal} flagged but probably-normal",
            entries.len()
        ),
        mismatched == 0 && degenerate_normal == 0,
    ))
}

fn symmetric_cardinalities(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let allowed = [0usize, 1, 4, 5, 6, 10, 12];
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for e in sweep(ctx)?.iter().filter(|e| !e.degenerate) {
        *seen.entry(e.found.len()).or_insert(0) += 1;
    }
    let ok = seen.keys().all(|k| allowed.contains(k));
    let parts: Vec<String> = seen.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    Ok((
        "totals in {0, 1, 4, 5, 6, 10, 12}".into(),
        format!("total:count {{{}}}", parts.join(", ")),
        ok,
    ))
}

fn symmetric_fz_roots(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let mut checked = 0;
    let mut bad = 0;
    for e in sweep(ctx)?.iter().filter(|e| !e.degenerate) {
        for p in &e.found {
            let fz = symmetric_fz(field, &e.spec, p.coords());
            checked += 1;
            if !fz.is_zero() && p.coords().iter().any(|&c| !fz.eval(field, c).is_zero()) {
                bad += 1;
            }
        }
    }
    Ok((
        "every coordinate a root, or f = 0".into(),
        format!("{checked} points, {bad} violations"),
        bad == 0,
    ))
}

fn triple_point(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let field = &ctx.field;
    let r = ctx.analyze(&triple_point_example(field))?;
    let vertex = ProjPoint::normalize(
        field,
        &[field.zero(), field.zero(), field.zero(), field.one()],
    )
    .unwrap();
    let triple = r.records.iter().any(|x| x.point == vertex && x.mult == 3);
    let ok = r.normality.verdict == Normality::ProbablyNormal && r.total <= 7 && triple;
    Ok((
        "at most 7, triple point at (0:0:0:1)".into(),
        format!(
            "{} points, triple {triple}, {}",
            r.total, r.normality.verdict
        ),
        ok,
    ))
}

fn cayley(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let (f, exp) = cayley_cubic(&ctx.field);
    let found = singular_points(&f, &ctx.enum_opts(Scope::Ambient))?;
    let r = ctx.analyze(&f)?;
    let nodes = r.records.iter().all(|x| x.cone == Some(ConeType::Node));
    Ok((
        "4 coordinate points, nodes".into(),
        format!("{} points, nodes {nodes}", found.points.len()),
        found.points == exp.points && nodes,
    ))
}

/// Reports of every quartic analyzed by the other claims.
fn suite_reports(ctx: &Ctx) -> Result<&[SingularReport], VerifyError> {
    if let Some(r) = ctx.reports.get() {
        return Ok(r);
    }
    let reports = compute_suite_reports(ctx)?;
    Ok(ctx.reports.get_or_init(|| reports))
}

fn compute_suite_reports(ctx: &Ctx) -> Result<Vec<SingularReport>, VerifyError> {
    let field = &ctx.field;
    let u = f4_generator(field)?;
    let x1 = linear_form(field, &[field.one(), field.zero(), field.zero()]);
    let opts = ctx.enum_opts(Scope::Ambient);
    let mut polys = vec![
        f16_instance(field)?.0,
        schuett_quartic(&klein_quartic(field), &x1, &opts)?.0,
        schuett_quartic(&four_lines(field)?, &lines_ell(field), &opts)?.0,
        triple_point_example(field),
    ];
    for c in [field.one(), u, field.zero()] {
        polys.push(pencil_ten(field, c).0);
    }
    for b in [field.one(), u] {
        polys.push(d4_family(field, b).0);
    }
    polys.iter().map(|f| ctx.analyze(f)).collect()
}

fn bound16(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let mut max = 0;
    let mut count = 0;
    for r in suite_reports(ctx)? {
        if r.normality.verdict == Normality::ProbablyNormal {
            count += 1;
            max = max.max(r.total);
        }
    }
    for e in sweep(ctx)?.iter() {
        if e.normality == Normality::ProbablyNormal {
            count += 1;
            max = max.max(e.found.len());
        }
    }
    Ok((
        "max <= 16".into(),
        format!("{count} probably-normal quartics, max {max}"),
        max <= 16,
    ))
}

fn bound15(ctx: &Ctx) -> Result<(String, String, bool), VerifyError> {
    let mut max = 0;
    let mut count = 0;
    for r in suite_reports(ctx)? {
        if r.records
            .iter()
            .any(|x| x.cone == Some(ConeType::Uniplanar))
        {
            count += 1;
            max = max.max(r.total);
        }
    }
    Ok((
        "max <= 15".into(),
        format!("{count} quartics with a uniplanar point, max {max}"),
        count > 0 && max <= 15,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids = claim_ids();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn field_and_filter_errors() {
        let small = FieldCtx::new(8).unwrap();
        assert!(matches!(
            run_claims(&small, None, 0),
            Err(VerifyError::FieldTooSmall(8))
        ));
        let k = FieldCtx::new(12).unwrap();
        assert!(matches!(
            run_claims(&k, Some("no-such-claim"), 0),
            Err(VerifyError::UnknownClaim(_))
        ));
    }

    #[test]
    fn exact_id_selects_one_row() {
        let k = FieldCtx::new(12).unwrap();
        let rows = run_claims(&k, Some("klein7"), 0).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].verdict, Verdict::Pass);
        let f16 = run_claims(&k, Some("f16"), 0).unwrap();
        assert_eq!(f16.len(), 1);
        assert_eq!(f16[0].id, "f16");
    }
}
