use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use quartic_core::families::{
    self, FamilyError, FamilyExpectation, Step4Params, SymmetricFamilySpec,
};
use quartic_core::ff2k::{FieldCtx, FieldElement, FieldError};
use quartic_core::geometry::conic_normal_form;
use quartic_core::mpoly::{parse, parse_element, MultiPoly, PolyError};
use quartic_core::singular::{
    analyze, critical_points_plane, singular_points, AnalyzeOptions, EnumOptions, Scope,
    SingularError, DEFAULT_DMAX,
};
use quartic_core::verify::{self, Verdict, VerifyError};
use quartic_core::{run_with_threads, DEFAULT_SEED};

mod report;

use report::Output;

#[derive(Parser, Debug)]
#[command(
    name = "quartic",
    version,
    about = "Singular points of surfaces over GF(2^m)"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Field as GF(2^m) or GF(2^m):<modulus>, e.g. GF(2^8):t^8+t^4+t^3+t+1
    #[arg(long, global = true, default_value = "GF(2^12)")]
    field: String,
    /// Emit JSON instead of a table
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest truncation degree for local multiplicities
    #[arg(long, global = true, default_value_t = DEFAULT_DMAX)]
    dmax: u32,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Exit with status 3 when any result is inconclusive
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singular points of a surface in P^3, with classification
    Analyze {
        /// Polynomial file, or - for stdin
        file: PathBuf,
        /// Only search points over GF(2^k)
        #[arg(long)]
        subfield: Option<u32>,
    },
    /// Check the closed-form claims about the families against computation
    VerifyPaper {
        /// Run only the claim with this id, or those whose id contains it
        #[arg(long)]
        case: Option<String>,
    },
    /// Classify a conic in P^2
    Conic { file: PathBuf },
    /// Critical points of a plane curve
    Critical { file: PathBuf },
    /// Build an explicit surface and compare its predicted singular points with enumeration
    Families {
        #[command(subcommand)]
        family: Family,
        /// Print only the polynomial
        #[arg(long, global = true)]
        poly_only: bool,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum Family {
    /// The Cayley cubic sigma_3
    Cayley,
    /// z^2 (x1 x2 + x3^2) + y1 y2 y3 y4 with y3 = a1 x1 + a2 x2 + a3 x3
    Step4 { a1: String, a2: String, a3: String },
    /// The step4 instance a3 = omega, a1 = a2 = omega^2
    F16,
    /// w^4 + w^2 ell^2 + B(x1, x2, x3)
    Schuett {
        #[arg(long, value_enum, default_value_t = Curve::Klein)]
        curve: Curve,
        /// Linear form in x1, x2, x3 (default x1 for klein, x1+u*x2+u^2*x3 for lines)
        #[arg(long)]
        ell: Option<String>,
    },
    /// a1 s1^4 + a2 s1^2 s2 + a3 s1 s3 + a4 s4 + beta s2^2
    Symmetric {
        a1: String,
        a2: String,
        a3: String,
        a4: String,
        beta: String,
    },
    /// c s1 s3 + s4
    Pencil { c: String },
    /// s4 + beta s2^2
    D4 { beta: String },
    /// A quartic with a triple point at (0:0:0:1)
    Triple,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Curve {
    Klein,
    Lines,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0} claim(s) failed")]
    ClaimsFailed(usize),
    #[error("result is inconclusive")]
    Inconclusive,
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::ClaimsFailed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Inconclusive => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SingularError> for CliError {
    fn from(e: SingularError) -> Self {
        match e {
            SingularError::NotHomogeneous
            | SingularError::WrongArity { .. }
            | SingularError::DegreeTooLarge(..)
            | SingularError::BadScope(..) => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Singular(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::FieldTooSmall(_) | VerifyError::UnknownClaim(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn element(field: &FieldCtx, text: &str) -> Result<FieldElement, CliError> {
    Ok(parse_element(text, field)?)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let g = cli.global;
    let field = FieldCtx::from_spec(&g.field)?;
    let header = report::Header::new(&field, &g);
    match cli.command {
        Command::Analyze { file, subfield } => {
            let f = parse(&read_input(&file)?, &field, 4)?;
            let opts = AnalyzeOptions {
                scope: subfield.map_or(Scope::Ambient, Scope::Subfield),
                seed: g.seed,
                dmax: g.dmax,
                ..AnalyzeOptions::default()
            };
            let r = analyze(&f, &opts)?;
            let inconclusive = r.inconclusive();
            let out = Output::analyze(header, &r);
            if g.strict && inconclusive {
                return Ok(out.failing(CliError::Inconclusive));
            }
            Ok(out)
        }
        Command::VerifyPaper { case } => {
            let rows = verify::run_claims(&field, case.as_deref(), g.seed)?;
            let failed = rows.iter().filter(|r| r.verdict == Verdict::Fail).count();
            let out = Output::verify(header, &rows);
            Ok(if failed > 0 {
                out.failing(CliError::ClaimsFailed(failed))
            } else {
                out
            })
        }
        Command::Conic { file } => {
            let q = parse(&read_input(&file)?, &field, 3)?;
            let class = conic_normal_form(&q).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(Output::conic(header, &q, &class))
        }
        Command::Critical { file } => {
            let b = parse(&read_input(&file)?, &field, 3)?;
            let opts = EnumOptions {
                seed: g.seed,
                ..EnumOptions::default()
            };
            let crit = critical_points_plane(&b, &opts)?;
            Ok(Output::critical(header, &b, &crit))
        }
        Command::Families { family, poly_only } => {
            let (name, f, exp) = build_family(&field, &family, g.seed)?;
            if poly_only {
                return Ok(Output::poly_only(&f));
            }
            let opts = EnumOptions {
                seed: g.seed,
                cap: Some(quartic_core::singular::count_threshold(&field, Scope::Ambient).max(32)),
                ..EnumOptions::default()
            };
            let found = singular_points(&f, &opts)?;
            Ok(Output::family(header, &name, &f, &exp, &found))
        }
    }
}

fn build_family(
    field: &FieldCtx,
    family: &Family,
    seed: u64,
) -> Result<(String, MultiPoly, FamilyExpectation), CliError> {
    let el = |s: &str| element(field, s);
    Ok(match family {
        Family::Cayley => {
            let (f, e) = families::cayley_cubic(field);
            ("cayley".into(), f, e)
        }
        Family::Step4 { a1, a2, a3 } => {
            let p = Step4Params {
                a1: el(a1)?,
                a2: el(a2)?,
                a3: el(a3)?,
            };
            let (f, e) = families::inseparable_step4(field, p)?;
            ("step4".into(), f, e)
        }
        Family::F16 => {
            let (f, e) = families::f16_instance(field)?;
            ("f16".into(), f, e)
        }
        Family::Schuett { curve, ell } => {
            let (b, default_ell, name) = match curve {
                Curve::Klein => (families::klein_quartic(field), "x1".to_string(), "klein"),
                Curve::Lines => (
                    families::four_lines(field)?,
                    verify::lines_ell(field).to_string(),
                    "lines",
                ),
            };
            let ell = parse(ell.as_deref().unwrap_or(&default_ell), field, 3)?;
            let opts = EnumOptions {
                seed,
                ..EnumOptions::default()
            };
            let (f, e) = families::schuett_quartic(&b, &ell, &opts)?;
            (format!("schuett-{name}"), f, e)
        }
        Family::Symmetric {
            a1,
            a2,
            a3,
            a4,
            beta,
        } => {
            let spec = SymmetricFamilySpec::new(el(a1)?, el(a2)?, el(a3)?, el(a4)?, el(beta)?)?;
            (
                "symmetric".into(),
                families::symmetric_quartic(field, &spec),
                families::classify_symmetric(field, &spec),
            )
        }
        Family::Pencil { c } => {
            let (f, e) = families::pencil_ten(field, el(c)?);
            ("pencil".into(), f, e)
        }
        Family::D4 { beta } => {
            let (f, e) = families::d4_family(field, el(beta)?);
            ("d4".into(), f, e)
        }
        Family::Triple => (
            "triple".into(),
            families::triple_point_example(field),
            FamilyExpectation::default(),
        ),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.global.threads;
    let json = cli.global.json;
    let result = if threads > 0 {
        run_with_threads(threads, || run(cli))
    } else {
        run(cli)
    };
    match result {
        Ok(out) => {
            print!("{}", out.render(json));
            match out.error {
                Some(e) => {
                    eprintln!("quartic: {e}");
                    ExitCode::from(e.code())
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("quartic: {e}");
            ExitCode::from(e.code())
        }
    }
}
