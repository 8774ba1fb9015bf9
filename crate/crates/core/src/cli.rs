//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::ellcurve::{ec_torsion, CurveSpec, TorsionTable};
use crate::embedding::PrecisionLadder;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, RatPoly};
use crate::golden::{verify_presets, Check};
use crate::mordell::{compute, identify_l, ASSUMPTIONS};
use crate::numberfield::{catalog_labels, preset_minpoly, NumberField, PRESET_LABELS};

pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_PRECISION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "quartic-points", version, about = "Quadratic points on x^4 + y^4 = 1 over number fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report: torsion, Step I, Step II table, S0 and the count.
    Compute(FieldArgs),
    /// Torsion subgroups of E1 and E2 with their reduction certificates.
    Torsion(FieldArgs),
    /// The number of quadratic points and its breakdown.
    Count(FieldArgs),
    /// Recomputes the five preset fields and compares with the reference tables.
    VerifyPaper(OutputArgs),
    /// The largest preset field contained in K.
    #[command(name = "identify-L")]
    IdentifyL(FieldArgs),
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Named field: Q, Qi, Qsqrt2, Qzeta8, Qalpha, a catalog label, or Qsqrt<D> for a catalog D.
    #[arg(long, conflicts_with = "field", required_unless_present = "field")]
    pub preset: Option<String>,
    /// Minimal polynomial as comma-separated rationals, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub field: Option<String>,
    /// Assume E1(K) and E2(K) have rank 0 (required for fields outside the catalog).
    #[arg(long)]
    pub assume_rank_zero: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Preset(String),
    Minpoly(RatPoly),
}

/// Everything a run needs, validated before any computation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub assume_rank_zero: bool,
    pub ladder: PrecisionLadder,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Parses `"c0,c1,...,cn"` (constant first) and divides by the leading
/// coefficient.
pub fn parse_field_poly(s: &str) -> Result<RatPoly> {
    let coeffs = s
        .split(',')
        .map(|c| parse_rational(c.trim()))
        .collect::<Result<Vec<_>>>()?;
    let p = RatPoly::new(coeffs);
    match p.degree() {
        Some(d) if d >= 1 => Ok(p.monic()),
        _ => Err(Error::InvalidInput(format!("{s:?} does not define a polynomial of degree >= 1"))),
    }
}

/// Catalog label whose minimal polynomial is exactly `f`.
fn catalog_label_for(f: &RatPoly) -> Option<String> {
    catalog_labels().into_iter().find(|l| preset_minpoly(l).map(|g| g == *f).unwrap_or(false))
}

impl RunConfig {
    pub fn from_args(args: &FieldArgs) -> Result<Self> {
        let field = match (&args.preset, &args.field) {
            (Some(p), None) => FieldSpec::Preset(p.clone()),
            (None, Some(f)) => FieldSpec::Minpoly(parse_field_poly(f)?),
            _ => return Err(Error::InvalidInput("give exactly one of --preset and --field".into())),
        };
        let config = RunConfig {
            field,
            assume_rank_zero: args.assume_rank_zero,
            ladder: PrecisionLadder::from_env(),
            format: args.output.format,
            out: args.output.out.clone(),
        };
        config.validate()?;
        Ok(config)
    }

    /// The catalog label of the field, if it has one.
    pub fn label(&self) -> Option<String> {
        match &self.field {
            FieldSpec::Preset(l) => Some(l.clone()),
            FieldSpec::Minpoly(f) => catalog_label_for(f),
        }
    }

    /// Rejects unknown presets, and fields outside the catalog unless rank 0
    /// is assumed.
    pub fn validate(&self) -> Result<()> {
        if let FieldSpec::Preset(l) = &self.field {
            preset_minpoly(l)?;
        }
        if !self.assume_rank_zero && self.label().is_none() {
            return Err(Error::InvalidInput(
                "field is not in the catalog; pass --assume-rank-zero to assume E1(K) and E2(K) have rank 0".into(),
            ));
        }
        Ok(())
    }

    pub fn number_field(&self) -> Result<Arc<NumberField>> {
        let minpoly = match &self.field {
            FieldSpec::Preset(l) => preset_minpoly(l)?,
            FieldSpec::Minpoly(f) => f.clone(),
        };
        NumberField::with_ladder(minpoly, self.label(), self.ladder.clone())
    }

    fn assumptions(&self) -> Vec<String> {
        let mut out: Vec<String> = ASSUMPTIONS.iter().map(|s| s.to_string()).collect();
        out.push(if self.label().is_some() { "catalog_field".into() } else { "user_assumed".into() });
        out
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::ZeroInput | Error::DegreeTooLarge(_) => EXIT_INPUT,
        Error::NonConvergence { .. }
        | Error::PrecisionExhausted { .. }
        | Error::IncompleteRoots(_)
        | Error::Inconclusive => EXIT_PRECISION,
        _ => EXIT_VERIFICATION,
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": exit_code(e) } })
}

fn field_label(k: &NumberField) -> String {
    k.label().map(str::to_string).unwrap_or_else(|| k.minpoly().to_string().replace('x', "t"))
}

fn torsion_text(t: &TorsionTable) -> String {
    let mut out = format!("{}: {} (bound {})\n", t.curve.name(), t.structure_name(), t.bound.bound);
    for p in &t.points {
        out += &format!("  {p}\n");
    }
    out
}

pub fn cmd_compute(config: &RunConfig) -> Result<String> {
    let k = config.number_field()?;
    let mut report = compute(&k)?;
    report.assumptions = config.assumptions();
    Ok(match config.format {
        Format::Json => pretty(&report.to_json()),
        Format::Text => report.to_text(),
    })
}

pub fn cmd_torsion(config: &RunConfig) -> Result<String> {
    let k = config.number_field()?;
    let (t1, t2) = rayon::join(|| ec_torsion(&CurveSpec::e1(&k)), || ec_torsion(&CurveSpec::e2(&k)));
    let (t1, t2) = (t1?, t2?);
    Ok(match config.format {
        Format::Json => pretty(&json!({ "field": k.to_json(), "E1": t1.to_json(), "E2": t2.to_json() })),
        Format::Text => format!("field: {}\n{}{}", field_label(&k), torsion_text(&t1), torsion_text(&t2)),
    })
}

pub fn cmd_count(config: &RunConfig) -> Result<String> {
    let k = config.number_field()?;
    let report = compute(&k)?;
    let v = json!({
        "field": k.to_json(),
        "identified_L": report.identified_l,
        "assumptions": config.assumptions(),
        "notes": report.notes,
        "gamma2_count": report.gamma2_count,
        "trivial": { "affine": report.trivial_affine, "infinity": report.trivial_infinity },
        "nontrivial_count": report.expanded.len(),
        "s0_size": report.s0.len(),
    });
    Ok(match config.format {
        Format::Json => pretty(&v),
        Format::Text => format!(
            "{}: {} = {} + {} + {} (S0: {} orbits)\n",
            field_label(&k),
            report.gamma2_count,
            report.trivial_affine,
            report.trivial_infinity,
            report.expanded.len(),
            report.s0.len()
        ),
    })
}

pub fn cmd_identify_l(config: &RunConfig) -> Result<String> {
    let k = config.number_field()?;
    let l = identify_l(&k)?;
    Ok(match config.format {
        Format::Json => pretty(&json!({ "field": k.to_json(), "identified_L": l })),
        Format::Text => format!("{l}\n"),
    })
}

/// Per-check ledger and whether every check passed.
pub fn cmd_verify_paper(format: Format) -> (String, bool) {
    let checks = verify_presets(&PRESET_LABELS);
    let passed = checks.iter().all(|c| c.passed);
    let text = match format {
        Format::Json => pretty(&json!({
            "passed": passed,
            "checks": checks.iter().map(|c: &Check| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out: String = checks.iter().map(|c| format!("{c}\n")).collect();
            let failed = checks.iter().filter(|c| !c.passed).count();
            out += &format!("{} checks, {} failed\n", checks.len(), failed);
            out
        }
    };
    (text, passed)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidInput(format!("cannot write to stdout: {e}")))
        }
    }
}

fn fail(e: &Error, format: Format) -> ExitCode {
    match format {
        Format::Json => eprintln!("{}", error_json(e)),
        Format::Text => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(e))
}

pub fn run(cli: Cli) -> ExitCode {
    let (args, cmd): (&FieldArgs, fn(&RunConfig) -> Result<String>) = match &cli.command {
        Command::VerifyPaper(o) => {
            let (text, passed) = cmd_verify_paper(o.format);
            if let Err(e) = emit(&o.out, &text) {
                return fail(&e, o.format);
            }
            return if passed { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFICATION) };
        }
        Command::Compute(a) => (a, cmd_compute),
        Command::Torsion(a) => (a, cmd_torsion),
        Command::Count(a) => (a, cmd_count),
        Command::IdentifyL(a) => (a, cmd_identify_l),
    };
    let format = args.output.format;
    let result = RunConfig::from_args(args).and_then(|config| {
        let text = cmd(&config)?;
        emit(&config.out, &text)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e, format),
    }
}

pub fn main() -> ExitCode {
    run(Cli::parse())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_polynomials_are_made_monic() {
        let f = parse_field_poly("-1, -3, 0, 1").unwrap();
        assert_eq!(f, RatPoly::from_ints(&[-1, -3, 0, 1]));
        let g = parse_field_poly("2,0,2").unwrap();
        assert_eq!(g, RatPoly::from_ints(&[1, 0, 1]));
        assert!(parse_field_poly("5").is_err());
        assert!(parse_field_poly("1,x").is_err());
    }

    #[test]
    fn rank_assumption_gate() {
        let args = |preset: Option<&str>, field: Option<&str>, assume| FieldArgs {
            preset: preset.map(str::to_string),
            field: field.map(str::to_string),
            assume_rank_zero: assume,
            output: OutputArgs { format: Format::Json, out: None },
        };
        assert!(RunConfig::from_args(&args(Some("Qzeta8"), None, false)).is_ok());
        assert!(RunConfig::from_args(&args(Some("Qsqrt33"), None, false)).is_ok());
        let e = RunConfig::from_args(&args(None, Some("3,0,1"), false)).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_INPUT);
        assert!(RunConfig::from_args(&args(None, Some("3,0,1"), true)).is_ok());
        // a catalog polynomial keeps its label
        let c = RunConfig::from_args(&args(None, Some("-1,-3,0,1"), false)).unwrap();
        assert_eq!(c.label().as_deref(), Some("cubic-2"));
        let e = RunConfig::from_args(&args(Some("Qsqrt7"), None, true)).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_INPUT);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::PrecisionExhausted { bits: 64, context: String::new() }), EXIT_PRECISION);
        assert_eq!(exit_code(&Error::Inconclusive), EXIT_PRECISION);
        assert_eq!(exit_code(&Error::Internal(String::new())), EXIT_VERIFICATION);
        assert_eq!(error_json(&Error::Inconclusive)["error"]["kind"], "inconclusive");
    }
}
