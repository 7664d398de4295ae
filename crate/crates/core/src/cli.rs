//! The `detrep` command line: JSON pencils in on standard input, JSON out.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Error;
use crate::family::{selfadjoint_pfaffian_decomposable, selfadjoint_pfaffian_indecomposable, RepDescriptor, RepKind};
use crate::pencil::{ConstMatrix, Definiteness, Pencil};
use crate::reduce::{classify, complete_group_element, random_group_element, reduce, Branch, TriangleBlock};
use crate::ring::{parse_scalar, CurveForm, CurveSpec, GaussianRational, Param, Poly, Var};
use crate::selftest::{self, Fixtures};

#[derive(Parser, Debug)]
#[command(name = "detrep", version, about = "Determinantal and pfaffian representations of plane cubics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the output document to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<String>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BranchArg {
    First,
    Second,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a family member.
    Construct {
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "symbolic")]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        sign: i8,
    },
    /// Check `det = c·F^r` (and `pf = ±F`) for the pencil on standard input.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Determinant of the pencil on standard input.
    Det,
    /// Pfaffian of the skew pencil on standard input.
    Pf,
    /// Orbit representative of a canonical-pair pfaffian representation.
    Reduce {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Classification of a canonical-pair pfaffian representation.
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Complete triangle blocks to a group element, or sample one.
    GroupComplete {
        /// Comma-separated `p1,p2,p3` of the block.
        #[arg(long, allow_hyphen_values = true)]
        p1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        p3: Option<String>,
        #[arg(long, value_enum, default_value = "first")]
        branch: BranchArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
    /// Non-definiteness of the self-adjoint 6×6 families at random real points.
    KippenhahnCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Run every built-in check and print one line per item.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

/// Runs one invocation. Returns the exit code: 0 on success, 1 on domain
/// errors (reported as `{"error", "detail"}`), 2 on usage errors.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let (output, code) = match execute(&cli.command, stdin) {
        Ok((out, passed)) => (out, if passed { 0 } else { 1 }),
        Err(e) => (Output::Json(json!({ "error": e.code(), "detail": e.to_string() })), 1),
    };
    let text = match output {
        Output::Json(v) => v.to_string(),
        Output::Text(t) => t,
    };
    let written = match &cli.out {
        Some(path) if code == 0 => std::fs::write(path, format!("{text}\n")),
        _ => writeln!(stdout, "{text}"),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "{e}");
        return 1;
    }
    code
}

fn read_pencil(stdin: &mut dyn Read) -> Result<Pencil, Error> {
    let mut text = String::new();
    stdin.read_to_string(&mut text).map_err(|e| Error::Json(e.to_string()))?;
    Pencil::from_json(&text)
}

/// Curve from flags; numeric curves must be smooth.
fn curve_from_flags(args: &CurveArgs) -> Result<Option<CurveSpec>, Error> {
    let spec = match (&args.lambda, &args.alpha, &args.beta) {
        (None, None, None) => return Ok(None),
        (Some(l), None, None) => CurveSpec::lambda(Param::parse(l)?),
        (None, Some(a), Some(b)) => CurveSpec::ab(Param::parse(a)?, Param::parse(b)?),
        _ => return Err(Error::PreconditionViolated("give either --lambda or both --alpha and --beta".into())),
    };
    if let Ok(false) = spec.is_smooth() {
        return Err(Error::SingularCurve(curve_label(args)));
    }
    Ok(Some(spec))
}

fn curve_label(args: &CurveArgs) -> String {
    match (&args.lambda, &args.alpha, &args.beta) {
        (Some(l), _, _) => format!("lambda = {l}"),
        (_, Some(a), Some(b)) => format!("alpha = {a}, beta = {b}"),
        _ => String::new(),
    }
}

/// Curve from flags, else from the pencil; the pencil's twisted flag is kept.
fn resolve_curve(args: &CurveArgs, pencil: &Pencil) -> Result<CurveSpec, Error> {
    let twisted = pencil.curve.as_ref().is_some_and(|c| c.twisted);
    match (curve_from_flags(args)?, &pencil.curve) {
        (Some(c), _) if twisted => Ok(c.twisted()),
        (Some(c), _) => Ok(c),
        (None, Some(c)) => Ok(c.clone()),
        (None, None) => Err(Error::PreconditionViolated("no curve given and the pencil carries none".into())),
    }
}

fn numeric_lambda(spec: &CurveSpec) -> Result<GaussianRational, Error> {
    match &spec.form {
        CurveForm::Lambda { lambda: Param::Value(l) } => Ok(l.clone()),
        CurveForm::Lambda { lambda: Param::Symbolic } => Err(Error::SymbolicParameters("lambda".into())),
        CurveForm::AB { .. } => Err(Error::PreconditionViolated("classification needs a lambda-form curve".into())),
    }
}

fn parse_block(text: &Option<String>) -> Result<TriangleBlock, Error> {
    let Some(text) = text else {
        return Ok(TriangleBlock::zero());
    };
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::MalformedScalar(format!("expected three comma-separated scalars, got `{text}`")));
    }
    Ok(TriangleBlock::new(parse_scalar(parts[0])?, parse_scalar(parts[1])?, parse_scalar(parts[2])?))
}

fn render_matrix(m: &ConstMatrix) -> Value {
    Value::from(m.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn render_block(b: &TriangleBlock) -> Value {
    json!([b.p1.to_string(), b.p2.to_string(), b.p3.to_string()])
}

fn execute(command: &Command, stdin: &mut dyn Read) -> Result<(Output, bool), Error> {
    let ok = |v: Value| Ok((Output::Json(v), true));
    match command {
        Command::Construct { kind, curve, t, s, sign } => {
            let kind: RepKind = kind.parse()?;
            let spec = curve_from_flags(curve)?
                .ok_or_else(|| Error::PreconditionViolated("construct needs --lambda or --alpha/--beta".into()))?;
            let s = s.clone().unwrap_or_else(|| if kind.is_indecomposable() { "0".into() } else { "symbolic".into() });
            let mut d = RepDescriptor::new(
                kind,
                spec,
                RepDescriptor::parse_coordinate(t, Var::T)?,
                RepDescriptor::parse_coordinate(&s, Var::S)?,
            );
            d.sign = *sign;
            let pencil = d.build()?;
            Ok((Output::Text(pencil.to_json()), true))
        }
        Command::Verify { curve } => {
            let pencil = read_pencil(stdin)?;
            let spec = resolve_curve(curve, &pencil)?;
            ok(serde_json::to_value(pencil.verify_representation(&spec)).expect("serializable"))
        }
        Command::Det => {
            let pencil = read_pencil(stdin)?;
            let det = pencil.determinant();
            let det = pencil.curve.as_ref().map(|c| c.normalize(&det)).unwrap_or(det);
            ok(Value::from(render_poly(&det)))
        }
        Command::Pf => {
            let pencil = read_pencil(stdin)?;
            let pf = pencil.pfaffian()?;
            let pf = pencil.curve.as_ref().map(|c| c.normalize(&pf)).unwrap_or(pf);
            ok(Value::from(render_poly(&pf)))
        }
        Command::Reduce { curve } => {
            let pencil = read_pencil(stdin)?;
            let lambda = numeric_lambda(&resolve_curve(curve, &pencil)?)?;
            let (rep, _) = reduce(&pencil, &lambda)?;
            Ok((Output::Text(rep.to_json()), true))
        }
        Command::Classify { curve } => {
            let pencil = read_pencil(stdin)?;
            let lambda = numeric_lambda(&resolve_curve(curve, &pencil)?)?;
            ok(serde_json::to_value(classify(&pencil, &lambda)?).expect("serializable"))
        }
        Command::GroupComplete { p1, p2, p3, branch, seed, bound } => {
            let g = match seed {
                Some(seed) => {
                    if *bound < 1 {
                        return Err(Error::PreconditionViolated("--bound must be at least 1".into()));
                    }
                    random_group_element(*seed, *bound)
                }
                None => {
                    let branch = match branch {
                        BranchArg::First => Branch::First,
                        BranchArg::Second => Branch::Second,
                    };
                    complete_group_element(parse_block(p1)?, parse_block(p2)?, parse_block(p3)?, branch)?
                }
            };
            ok(json!({
                "branch": match g.branch { Branch::First => "first", Branch::Second => "second" },
                "P1": render_block(&g.p1),
                "P2": render_block(&g.p2),
                "P3": render_block(&g.p3),
                "realized": render_matrix(&g.realized),
                "preserves_pair": crate::reduce::preserves_pair(&g.realized),
                "det": g.realized.det().to_string(),
            }))
        }
        Command::KippenhahnCheck { seed, trials } => {
            let report = kippenhahn_check(*seed, *trials)?;
            let passed = report["passed"].as_bool().unwrap_or(false);
            Ok((Output::Json(report), passed))
        }
        Command::Selftest { seed, trials } => {
            let mut fixtures = Fixtures::default();
            if let Some(trials) = trials {
                fixtures.trials = *trials;
            }
            let report = selftest::run(*seed, &fixtures);
            let passed = report.all_passed();
            Ok((Output::Text(report.to_string()), passed))
        }
    }
}

fn render_poly(p: &Poly) -> String {
    p.as_constant().map(|c| c.to_string()).unwrap_or_else(|| p.render())
}

/// Both self-adjoint 6×6 families at numeric members: self-adjointness,
/// `det = -F²`, the common zero diagonal, and non-definiteness at random
/// real points.
pub fn kippenhahn_check(seed: u64, trials: usize) -> Result<Value, Error> {
    let members = [
        ("selfadjoint-pfaff-decomposable", GaussianRational::from_frac(5, 2), {
            let spec = CurveSpec::lambda(Param::value(GaussianRational::from_frac(5, 2)));
            selfadjoint_pfaffian_decomposable(&spec, &Poly::int(2), &Poly::int(1))?
        }),
        ("selfadjoint-pfaff-indecomposable", GaussianRational::from_int(2), {
            let spec = CurveSpec::lambda(Param::value(2));
            selfadjoint_pfaffian_indecomposable(&spec, &Poly::int(1))?
        }),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut families = Vec::new();
    let mut all = true;
    for (name, lambda, p) in members {
        let spec = p.curve.clone().expect("family members carry their curve");
        let f2 = spec.curve_poly().pow(2);
        let det_ok = spec.poly_equal(&p.determinant(), &-&f2);
        let witness: Vec<usize> = p.zero_diagonal_witness()?.into_iter().collect();
        let mut definite = 0;
        for _ in 0..trials {
            let point = loop {
                let mut coord = || GaussianRational::from_frac(rng.gen_range(-9..=9), rng.gen_range(1..=9));
                let p = [coord(), coord(), coord()];
                if p.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                    break p;
                }
            };
            if p.is_definite_at(&point)? != Definiteness::None {
                definite += 1;
            }
        }
        let passed = p.is_self_adjoint() && det_ok && definite == 0 && witness.len() >= 3;
        all &= passed;
        families.push(json!({
            "family": name,
            "lambda": lambda.to_string(),
            "self_adjoint": p.is_self_adjoint(),
            "det_is_minus_f_squared": det_ok,
            "zero_diagonal": witness,
            "trials": trials,
            "definite_points": definite,
            "passed": passed,
        }));
    }
    Ok(json!({ "seed": seed, "families": families, "passed": all }))
}
