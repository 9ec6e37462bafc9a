//! Table and JSON renderings of command results. Both are built from the
//! same values, so they always carry the same numbers.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use quartic_core::families::FamilyExpectation;
use quartic_core::ff2k::FieldCtx;
use quartic_core::geometry::{ConicClass, ProjPoint};
use quartic_core::linalg::Matrix;
use quartic_core::mpoly::MultiPoly;
use quartic_core::singular::{CriticalLocus, Enumeration, SingularReport};
use quartic_core::verify::ClaimRow;

use crate::{CliError, GlobalOpts};

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Clone, Debug)]
pub struct Header {
    pub schema: u32,
    pub field: String,
    pub modulus: String,
    pub seed: u64,
    pub dmax: u32,
}

impl Header {
    pub fn new(field: &FieldCtx, g: &GlobalOpts) -> Self {
        Header {
            schema: SCHEMA,
            field: field.name(),
            modulus: field.modulus_string(),
            seed: g.seed,
            dmax: g.dmax,
        }
    }

    fn line(&self, command: &str) -> String {
        format!(
            "# quartic {command} | field {} modulus {} | seed {} | dmax {}\n",
            self.field, self.modulus, self.seed, self.dmax
        )
    }
}

pub struct Output {
    table: String,
    json: String,
    pub error: Option<CliError>,
}

fn coords(p: &ProjPoint) -> Vec<String> {
    p.coords().iter().map(|c| c.to_string()).collect()
}

fn hist_text(h: &BTreeMap<u32, usize>) -> String {
    if h.is_empty() {
        return "-".into();
    }
    h.iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn hist_of(points: &[ProjPoint]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for p in points {
        *h.entry(p.defdeg()).or_insert(0) += 1;
    }
    h
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|c| c.to_string()).collect())
        .collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or("?".into(), |x| x.to_string())
}

#[derive(Serialize)]
struct PointJson {
    point: Vec<String>,
    defdeg: u32,
    mult: u32,
    cone: Option<String>,
    local_int_mult: Option<u32>,
    local_lower_bound: u32,
    local_stab_degree: u32,
    consistent: bool,
}

#[derive(Serialize)]
struct DegreeJson {
    local_sum: Option<u32>,
    residual: Option<i64>,
    check: String,
}

#[derive(Serialize)]
struct NormalityJson {
    verdict: String,
    gradient_vanishes: bool,
    common_factor: bool,
    too_many_points: bool,
    plane_hits: usize,
}

#[derive(Serialize)]
struct AnalyzeJson {
    #[serde(flatten)]
    header: Header,
    command: &'static str,
    surface: String,
    degree: u32,
    scope: String,
    total: usize,
    truncated: bool,
    by_defdeg: BTreeMap<u32, usize>,
    points: Vec<PointJson>,
    degree_formula: Option<DegreeJson>,
    gauss_plane: bool,
    gauss_witness: Option<Vec<String>>,
    normality: NormalityJson,
    inconclusive: bool,
}

#[derive(Serialize)]
struct ClaimJson {
    id: &'static str,
    claim: &'static str,
    expected: String,
    observed: String,
    verdict: String,
}

#[derive(Serialize)]
struct VerifyJson {
    #[serde(flatten)]
    header: Header,
    command: &'static str,
    passed: usize,
    failed: usize,
    claims: Vec<ClaimJson>,
}

#[derive(Serialize)]
struct ConicJson {
    #[serde(flatten)]
    header: Header,
    command: &'static str,
    conic: String,
    kind: String,
    normal_form: String,
    transform: Option<Vec<Vec<String>>>,
    strange_point: Option<Vec<String>>,
}

#[derive(Serialize)]
struct CriticalJson {
    #[serde(flatten)]
    header: Header,
    command: &'static str,
    curve: String,
    identically_critical: bool,
    truncated: bool,
    total: usize,
    by_defdeg: BTreeMap<u32, usize>,
    points: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct OrbitJson {
    label: &'static str,
    base: Option<Vec<String>>,
    size: usize,
}

#[derive(Serialize)]
struct FamilyJson {
    #[serde(flatten)]
    header: Header,
    command: &'static str,
    family: String,
    polynomial: String,
    predicted_total: Option<usize>,
    predicted_cone: Option<String>,
    reducible: bool,
    infinite: bool,
    orbits: Vec<OrbitJson>,
    predicted_points: Vec<Vec<String>>,
    found_total: usize,
    found_truncated: bool,
    found_points: Vec<Vec<String>>,
    missing: Vec<Vec<String>>,
    extra: Vec<Vec<String>>,
    matches: bool,
}

impl Output {
    fn new(table: String, json: impl Serialize) -> Self {
        let mut json = serde_json::to_string_pretty(&json).expect("serializable");
        json.push('\n');
        Output {
            table,
            json,
            error: None,
        }
    }

    pub fn failing(mut self, e: CliError) -> Self {
        self.error = Some(e);
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.json.clone()
        } else {
            self.table.clone()
        }
    }

    pub fn poly_only(f: &MultiPoly) -> Self {
        #[derive(Serialize)]
        struct PolyJson {
            schema: u32,
            polynomial: String,
        }
        Output::new(
            format!("{f}\n"),
            PolyJson {
                schema: SCHEMA,
                polynomial: f.to_string(),
            },
        )
    }

    pub fn analyze(header: Header, r: &SingularReport) -> Self {
        let points: Vec<PointJson> = r
            .records
            .iter()
            .map(|x| PointJson {
                point: coords(&x.point),
                defdeg: x.defdeg(),
                mult: x.mult,
                cone: x.cone.map(|c| c.to_string()),
                local_int_mult: x.local.value,
                local_lower_bound: x.local.lower_bound,
                local_stab_degree: x.local.stab_degree,
                consistent: x.consistent(),
            })
            .collect();
        let df = r.degree_formula.map(|d| DegreeJson {
            local_sum: d.local_sum,
            residual: d.residual,
            check: d.check.to_string(),
        });
        let n = &r.normality;

        let mut t = header.line("analyze");
        let _ = writeln!(t, "surface: {}", r.surface);
        let _ = writeln!(t, "degree: {}", r.degree);
        let _ = writeln!(t, "scope: {}", r.scope);
        let _ = writeln!(t, "total: {}", r.total);
        let _ = writeln!(t, "truncated: {}", r.truncated);
        let _ = writeln!(t, "by defdeg: {}", hist_text(&r.by_defdeg));
        let _ = writeln!(
            t,
            "normality: {} (gradient zero {}, common factor {}, too many points {}, plane hits {})",
            n.verdict, n.gradient_vanishes, n.common_factor, n.too_many_points, n.plane_hits
        );
        let _ = writeln!(
            t,
            "gauss plane: {}{}",
            r.gauss_plane.planar,
            r.gauss_plane
                .witness
                .as_ref()
                .map_or(String::new(), |w| format!(" {w}"))
        );
        match &df {
            Some(d) => {
                let _ = writeln!(
                    t,
                    "degree formula: local sum {}, residual {}, check {}",
                    opt(d.local_sum),
                    opt(d.residual),
                    d.check
                );
            }
            None => {
                let _ = writeln!(t, "degree formula: -");
            }
        }
        if !points.is_empty() {
            let _ = writeln!(
                t,
                "{:>3}  {:<40} {:>6} {:>4}  {:<9} {:>5}",
                "#", "point", "defdeg", "mult", "cone", "local"
            );
        }
        for (i, (p, x)) in points.iter().zip(&r.records).enumerate() {
            let _ = writeln!(
                t,
                "{:>3}  {:<40} {:>6} {:>4}  {:<9} {:>5}",
                i + 1,
                x.point.to_string(),
                p.defdeg,
                p.mult,
                p.cone.clone().unwrap_or_else(|| "-".into()),
                p.local_int_mult
                    .map_or(format!(">={}", p.local_lower_bound), |v| v.to_string())
            );
        }

        let json = AnalyzeJson {
            header,
            command: "analyze",
            surface: r.surface.clone(),
            degree: r.degree,
            scope: r.scope.to_string(),
            total: r.total,
            truncated: r.truncated,
            by_defdeg: r.by_defdeg.clone(),
            points,
            degree_formula: df,
            gauss_plane: r.gauss_plane.planar,
            gauss_witness: r.gauss_plane.witness.as_ref().map(coords),
            normality: NormalityJson {
                verdict: n.verdict.to_string(),
                gradient_vanishes: n.gradient_vanishes,
                common_factor: n.common_factor,
                too_many_points: n.too_many_points,
                plane_hits: n.plane_hits,
            },
            inconclusive: r.inconclusive(),
        };
        Output::new(t, json)
    }

    pub fn verify(header: Header, rows: &[ClaimRow]) -> Self {
        let failed = rows
            .iter()
            .filter(|r| r.verdict == quartic_core::verify::Verdict::Fail)
            .count();
        let mut t = header.line("verify-paper");
        for r in rows {
            let _ = writeln!(t, "{} {}", r.verdict, r.id);
            let _ = writeln!(t, "    claim:    {}", r.claim);
            let _ = writeln!(t, "    expected: {}", r.expected);
            let _ = writeln!(t, "    observed: {}", r.observed);
        }
        let _ = writeln!(t, "passed: {}, failed: {failed}", rows.len() - failed);
        let json = VerifyJson {
            header,
            command: "verify-paper",
            passed: rows.len() - failed,
            failed,
            claims: rows
                .iter()
                .map(|r| ClaimJson {
                    id: r.id,
                    claim: r.claim,
                    expected: r.expected.clone(),
                    observed: r.observed.clone(),
                    verdict: r.verdict.to_string(),
                })
                .collect(),
        };
        Output::new(t, json)
    }

    pub fn conic(header: Header, q: &MultiPoly, c: &ConicClass) -> Self {
        let field = q.field();
        let transform = c.transform.as_ref().map(matrix_rows);
        let strange: Option<Vec<String>> = c
            .strange_point
            .as_ref()
            .map(|v| v.iter().map(|x| x.to_string()).collect());
        let mut t = header.line("conic");
        let _ = writeln!(t, "conic: {q}");
        let _ = writeln!(t, "class: {}", c.kind);
        let _ = writeln!(t, "normal form: {}", c.kind.normal_form(field));
        match &transform {
            Some(rows) => {
                let _ = writeln!(t, "transform (Q(x M) = normal form), rows of M:");
                for r in rows {
                    let _ = writeln!(t, "  [{}]", r.join(", "));
                }
            }
            None => {
                let _ = writeln!(t, "transform: none over this field");
            }
        }
        let _ = writeln!(
            t,
            "strange point: {}",
            strange
                .as_ref()
                .map_or("-".into(), |s| format!("({})", s.join(" : ")))
        );
        let json = ConicJson {
            header,
            command: "conic",
            conic: q.to_string(),
            kind: c.kind.to_string(),
            normal_form: c.kind.normal_form(field).to_string(),
            transform,
            strange_point: strange,
        };
        Output::new(t, json)
    }

    pub fn critical(header: Header, b: &MultiPoly, c: &CriticalLocus) -> Self {
        let h = hist_of(&c.points);
        let mut t = header.line("critical");
        let _ = writeln!(t, "curve: {b}");
        let _ = writeln!(t, "identically critical: {}", c.identically_critical);
        let _ = writeln!(t, "truncated: {}", c.truncated);
        let _ = writeln!(t, "total: {}", c.points.len());
        let _ = writeln!(t, "by defdeg: {}", hist_text(&h));
        for (i, p) in c.points.iter().enumerate() {
            let _ = writeln!(t, "{:>3}  {:<40} {:>6}", i + 1, p.to_string(), p.defdeg());
        }
        let json = CriticalJson {
            header,
            command: "critical",
            curve: b.to_string(),
            identically_critical: c.identically_critical,
            truncated: c.truncated,
            total: c.points.len(),
            by_defdeg: h,
            points: c.points.iter().map(coords).collect(),
        };
        Output::new(t, json)
    }

    pub fn family(
        header: Header,
        name: &str,
        f: &MultiPoly,
        exp: &FamilyExpectation,
        found: &Enumeration,
    ) -> Self {
        let predicted_known = exp.total.is_some();
        let missing: Vec<&ProjPoint> = exp
            .points
            .iter()
            .filter(|p| !found.points.contains(p))
            .collect();
        let extra: Vec<&ProjPoint> = if predicted_known {
            found
                .points
                .iter()
                .filter(|p| !exp.points.contains(p))
                .collect()
        } else {
            Vec::new()
        };
        let matches = predicted_known && !found.truncated && missing.is_empty() && extra.is_empty();

        let mut t = header.line("families");
        let _ = writeln!(t, "family: {name}");
        let _ = writeln!(t, "polynomial: {f}");
        let _ = writeln!(
            t,
            "predicted: total {}, cone {}, reducible {}, infinite {}",
            opt(exp.total),
            opt(exp.cone),
            exp.reducible,
            exp.infinite
        );
        for o in &exp.orbits {
            let _ = writeln!(
                t,
                "  orbit {:<10} size {:>2}  base {}",
                o.label,
                o.size,
                o.base
                    .as_ref()
                    .map_or("not rational".into(), |b| b.to_string())
            );
        }
        let _ = writeln!(t, "predicted rational points: {}", exp.points.len());
        let _ = writeln!(
            t,
            "found: {}{}",
            found.points.len(),
            if found.truncated { " (truncated)" } else { "" }
        );
        for p in &found.points {
            let _ = writeln!(t, "  {:<40} defdeg {}", p.to_string(), p.defdeg());
        }
        for p in &missing {
            let _ = writeln!(t, "  missing {p}");
        }
        for p in &extra {
            let _ = writeln!(t, "  extra {p}");
        }
        let _ = writeln!(
            t,
            "matches: {}",
            if predicted_known {
                matches.to_string()
            } else {
                "no prediction".into()
            }
        );

        let json = FamilyJson {
            header,
            command: "families",
            family: name.to_string(),
            polynomial: f.to_string(),
            predicted_total: exp.total,
            predicted_cone: exp.cone.map(|c| c.to_string()),
            reducible: exp.reducible,
            infinite: exp.infinite,
            orbits: exp
                .orbits
                .iter()
                .map(|o| OrbitJson {
                    label: o.label,
                    base: o.base.as_ref().map(coords),
                    size: o.size,
                })
                .collect(),
            predicted_points: exp.points.iter().map(coords).collect(),
            found_total: found.points.len(),
            found_truncated: found.truncated,
            found_points: found.points.iter().map(coords).collect(),
            missing: missing.into_iter().map(coords).collect(),
            extra: extra.into_iter().map(coords).collect(),
            matches,
        };
        Output::new(t, json)
    }
}
