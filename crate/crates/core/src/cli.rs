//! Command-line front end. Three subcommands:
//!
//! * `eval`   — evaluate a structure series on a formal class,
//! * `glue`   — glue two manifold descriptions and write the report,
//! * `verify` — run the built-in conformance suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 validation failure, 4 computation-precondition failure.
//!
//! `eval` prints the canonical expression (machine-readable) on
//! stdout; setting `DONALDSON_VERBOSE=1` adds a human-readable header
//! on stderr. `glue` writes a JSON report and prints a summary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::exppoly::{ExpElement, GaussRat, Var};
use crate::fibersum::{glue_eval, sum_rules, GlueInput, GlueReport, RuleCase};
use crate::manifest::ManifoldFile;
use crate::quantum::RingClass;
use crate::series::{dd_eval, dx_from_dd, Alpha, StructureSeries};
use crate::verify::{run_checks, Section, VerifyOptions};
use crate::Error;

/// Exact series calculator for simple-type 4-manifolds and their
/// fiber sums along genus-2 surfaces.
#[derive(Parser, Debug)]
#[command(name = "donaldson", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the structure series of one manifold on a formal class
    /// such as "s*sigma + t*dbar".
    Eval {
        /// Manifold description file (JSON).
        #[arg(long)]
        manifold: PathBuf,
        /// Formal class: terms `var*class` with optional rational
        /// scales, e.g. "s*sigma + 2*t*E1".
        #[arg(long = "class")]
        class_expr: String,
        /// Evaluate the combined series (both chamber series) instead
        /// of the plain structure series.
        #[arg(long)]
        combined: bool,
    },
    /// Glue two manifold descriptions along their surfaces and write
    /// the basic-class report.
    Glue {
        /// First side (JSON file).
        #[arg(long)]
        m1: PathBuf,
        /// Second side (JSON file).
        #[arg(long)]
        m2: PathBuf,
        /// Optional probe class over the glued manifold, e.g.
        /// "s*sigma + t*d" or "u*m1.E1 + t*d".
        #[arg(long)]
        probe: Option<String>,
        /// Assert the one-to-one correspondence between basic classes
        /// and contributing pairs (every surface 1-cycle bounds a
        /// (-1)-disc on both sides).
        #[arg(long)]
        one_to_one: bool,
        /// Output report file (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in conformance suite.
    Verify {
        /// Restrict to one section: ring, matrices, cap, gluing,
        /// witten, or all.
        #[arg(long, default_value = "all")]
        section: String,
    },
}

/// Maps library errors onto the exit-code contract.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::Io(_) => 2,
        Error::Validation(_)
        | Error::NotSimpleType
        | Error::GenusMismatch
        | Error::GenusUnsupported
        | Error::BadTopology => 3,
        Error::NotNormalized(_)
        | Error::SectorMismatch(_)
        | Error::SingularCap(_)
        | Error::SingularMatrix
        | Error::NonConstantMatrix
        | Error::NonIntegralSign
        | Error::QuadraticInVar(_)
        | Error::OutOfDomain(_) => 4,
    }
}

fn verbose() -> bool {
    std::env::var("DONALDSON_VERBOSE").is_ok_and(|v| v != "0" && !v.is_empty())
}

/// Writes a line to stdout, ignoring broken pipes (the reader may
/// close the stream early, as `... | head` does).
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

// ---------------------------------------------------------------------
// Formal-class expressions
// ---------------------------------------------------------------------

/// One parsed probe term: optional rational scale, variable, class name.
struct ProbeTerm {
    scale: GaussRat,
    var: String,
    class: String,
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().unwrap().is_ascii_alphabetic()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

/// Splits "2*s*sigma - t*dbar" into signed terms of the shape
/// `[scale*]var*class`.
fn parse_class_expr(expr: &str) -> Result<Vec<ProbeTerm>, Error> {
    fn flush(raw: &str, sign: i64, terms: &mut Vec<ProbeTerm>) -> Result<(), Error> {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(Error::Parse("empty term in class expression".into()));
        }
        let parts: Vec<&str> = raw.split('*').map(str::trim).collect();
        let (scale, rest) = match parts.len() {
            2 => (GaussRat::from_int(1), &parts[..]),
            3 => {
                let c: GaussRat = parts[0]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad scale `{}`", parts[0])))?;
                (c, &parts[1..])
            }
            _ => {
                return Err(Error::Parse(format!(
                    "term `{raw}` must be [scale*]var*class"
                )))
            }
        };
        let (var, class) = (rest[0], rest[1]);
        if !is_ident(var) || var.contains('.') {
            return Err(Error::Parse(format!("bad variable `{var}`")));
        }
        if !is_ident(class) {
            return Err(Error::Parse(format!("bad class name `{class}`")));
        }
        terms.push(ProbeTerm {
            scale: scale.scale_int(sign),
            var: var.to_string(),
            class: class.to_string(),
        });
        Ok(())
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    for c in expr.chars() {
        match c {
            '+' | '-' if current.trim().is_empty() && terms.is_empty() => {
                // leading sign(s)
                if c == '-' {
                    sign = -sign;
                }
            }
            '+' | '-' if !current.trim().is_empty() => {
                flush(&current, sign, &mut terms)?;
                current.clear();
                sign = if c == '-' { -1 } else { 1 };
            }
            '+' | '-' => {
                return Err(Error::Parse("misplaced sign in class expression".into()));
            }
            _ => current.push(c),
        }
    }
    flush(&current, sign, &mut terms)?;
    Ok(terms)
}

/// Builds the evaluation class for `eval` from named classes of one
/// manifold file.
fn build_alpha(file: &ManifoldFile, expr: &str) -> Result<Alpha, Error> {
    let mut alpha = Alpha::new();
    for term in parse_class_expr(expr)? {
        let vector = file
            .class(&term.class)
            .ok_or_else(|| Error::Parse(format!("unknown class `{}`", term.class)))?;
        let scaled: Vec<GaussRat> = vector
            .iter()
            .map(|&n| term.scale.scale_int(n))
            .collect();
        alpha.push(Var::new(&term.var), scaled);
    }
    Ok(alpha)
}

/// The probe directions of a glued evaluation.
struct GlueProbe {
    alpha: Alpha,
    beta: Alpha,
    s_var: Option<Var>,
    t_var: Option<Var>,
}

/// Builds the glued probe: `sigma` and `d` refer to the glued surface
/// and cross-neck classes (unit scale only); `m1.NAME` / `m2.NAME`
/// refer to probe classes of the two sides.
fn build_glue_probe(
    f1: &ManifoldFile,
    f2: &ManifoldFile,
    expr: &str,
) -> Result<GlueProbe, Error> {
    let mut probe = GlueProbe {
        alpha: Alpha::new(),
        beta: Alpha::new(),
        s_var: None,
        t_var: None,
    };
    for term in parse_class_expr(expr)? {
        match term.class.as_str() {
            "sigma" | "d" => {
                if !term.scale.is_one() {
                    return Err(Error::Parse(format!(
                        "`{}` cannot be rescaled in a glued probe",
                        term.class
                    )));
                }
                let slot = if term.class == "sigma" {
                    &mut probe.s_var
                } else {
                    &mut probe.t_var
                };
                if slot.is_some() {
                    return Err(Error::Parse(format!(
                        "`{}` appears twice in the probe",
                        term.class
                    )));
                }
                *slot = Some(Var::new(&term.var));
            }
            name => {
                let (side_file, alpha) = match name.strip_prefix("m1.") {
                    Some(rest) => (f1.class(rest), &mut probe.alpha),
                    None => match name.strip_prefix("m2.") {
                        Some(rest) => (f2.class(rest), &mut probe.beta),
                        None => {
                            return Err(Error::Parse(format!(
                                "probe class `{name}` must be sigma, d, m1.NAME or m2.NAME"
                            )))
                        }
                    },
                };
                let vector = side_file
                    .ok_or_else(|| Error::Parse(format!("unknown probe class `{name}`")))?;
                let scaled: Vec<GaussRat> =
                    vector.iter().map(|&n| term.scale.scale_int(n)).collect();
                alpha.push(Var::new(&term.var), scaled);
            }
        }
    }
    Ok(probe)
}

// ---------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------

fn cmd_eval(manifold: &Path, class_expr: &str, combined: bool) -> Result<String, Error> {
    let file = ManifoldFile::from_path(manifold)?;
    let series: StructureSeries = file.to_series()?;
    let alpha = build_alpha(&file, class_expr)?;
    let value: ExpElement = if combined {
        dx_from_dd(&series)?.eval(&alpha)
    } else {
        dd_eval(&series, &alpha)
    };
    if verbose() {
        eprintln!(
            "manifold: {} (rank {}, genus {})",
            file.name, file.rank, file.genus
        );
        eprintln!("class: {class_expr}");
        eprintln!(
            "series: {}",
            if combined { "combined" } else { "structure" }
        );
    }
    Ok(value.to_string())
}

fn rule_case_name(case: RuleCase) -> &'static str {
    match case {
        RuleCase::PositiveSector => "positive-sector",
        RuleCase::NegativeSector => "negative-sector",
        RuleCase::ZeroSector => "zero-sector",
        RuleCase::NotInGroup => "not-in-group",
    }
}

fn report_to_json(
    report: &GlueReport,
    names: (&str, &str),
    probe: Option<(&str, &ExpElement)>,
) -> serde_json::Value {
    let rules: Vec<serde_json::Value> = report
        .rules
        .iter()
        .map(|rule| {
            let kappas: Vec<serde_json::Value> = rule
                .kappas
                .iter()
                .map(|k| {
                    serde_json::json!({
                        "k": k.k,
                        "l": k.l,
                        "sector": k.sector,
                        "pi_k": k.pi_k,
                        "pi_l": k.pi_l,
                        "kappa_dot_d": k.kappa_dot_d,
                        "kappa_sq": k.kappa_sq,
                        "coefficient": k.coefficient.to_string(),
                    })
                })
                .collect();
            serde_json::json!({
                "case": rule_case_name(rule.case),
                "pi_k": rule.pi_k,
                "pi_l": rule.pi_l,
                "sum": rule.claimed_sum.to_string(),
                "kappas": kappas,
            })
        })
        .collect();
    let mut doc = serde_json::json!({
        "m1": names.0,
        "m2": names.1,
        "topology": {
            "euler": report.topology.euler,
            "signature": report.topology.signature,
            "b_plus": report.topology.b_plus,
            "d0_parity": report.topology.d0_parity,
        },
        "coefficient_magnitude": report.coefficient_magnitude.to_string(),
        "one_to_one": report.one_to_one,
        "no_zero_sector_basics": report.no_zero_sector_basics,
        "dbar1": report.dbar1,
        "dbar2": report.dbar2,
        "rules": rules,
        "default_rule": "every fiber over a pair not listed here sums to zero",
    });
    if let Some((expr, value)) = probe {
        doc["probe"] = serde_json::json!({
            "expr": expr,
            "value": value.to_string(),
        });
    }
    doc
}

fn cmd_glue(
    m1: &Path,
    m2: &Path,
    probe: Option<&str>,
    one_to_one: bool,
    out: &Path,
) -> Result<String, Error> {
    let f1 = ManifoldFile::from_path(m1)?;
    let f2 = ManifoldFile::from_path(m2)?;
    let mut input = GlueInput::new(f1.to_series()?, f2.to_series()?)?;
    if one_to_one {
        input = input.with_one_to_one();
    }
    let report = sum_rules(&input)?;
    let probe_value = match probe {
        Some(expr) => {
            let p = build_glue_probe(&f1, &f2, expr)?;
            let value = glue_eval(
                &input,
                &p.alpha,
                &p.beta,
                p.s_var.as_ref(),
                p.t_var.as_ref(),
            )?;
            Some((expr, value))
        }
        None => None,
    };
    let doc = report_to_json(
        &report,
        (&f1.name, &f2.name),
        probe_value.as_ref().map(|(e, v)| (*e, v)),
    );
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    std::fs::write(out, &text).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let nonzero = report
        .rules
        .iter()
        .filter(|r| !r.claimed_sum.is_zero())
        .count();
    let mut summary = format!(
        "glued `{}` and `{}`: {} sum rules ({} nonzero), report written to {}",
        f1.name,
        f2.name,
        report.rules.len(),
        nonzero,
        out.display()
    );
    if let Some((expr, value)) = &probe_value {
        summary.push_str(&format!("\nprobe {expr}: {value}"));
    }
    Ok(summary)
}

/// The point-class override test hook: lets the conformance suite be
/// run against a deliberately wrong point-class image to confirm the
/// cap check catches it.
fn verify_options_from_env() -> VerifyOptions {
    let mut opts = VerifyOptions::default();
    match std::env::var("DONALDSON_TEST_MU_X").ok().as_deref() {
        Some("scaled-quadratic") => {
            opts.mu_x_override = Some(RingClass::new([
                GaussRat::from_int(2),
                GaussRat::zero(),
                GaussRat::from_int(-4),
                GaussRat::zero(),
            ]));
        }
        Some("opposite-sign") => {
            opts.mu_x_override = Some(RingClass::new([
                GaussRat::from_int(2),
                GaussRat::zero(),
                GaussRat::ratio(-1, 4),
                GaussRat::zero(),
            ]));
        }
        _ => {}
    }
    opts
}

fn cmd_verify(section: &str) -> Result<(String, bool), Error> {
    let section = Section::parse(section)
        .ok_or_else(|| Error::Parse(format!("unknown section `{section}`")))?;
    let results = run_checks(section, &verify_options_from_env());
    let mut lines = Vec::new();
    let mut counts: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    let mut all_ok = true;
    for r in &results {
        let slot = counts.entry(r.section.as_str()).or_insert((0, 0));
        slot.1 += 1;
        match &r.error {
            None => {
                slot.0 += 1;
                lines.push(format!("PASS {}.{}", r.section.as_str(), r.name));
            }
            Some(msg) => {
                all_ok = false;
                lines.push(format!("FAIL {}.{}: {msg}", r.section.as_str(), r.name));
            }
        }
    }
    for (name, (ok, total)) in counts {
        lines.push(format!("{name}: {ok}/{total} checks passed"));
    }
    Ok((lines.join("\n"), all_ok))
}

/// Runs the CLI on explicit arguments; returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 2 };
        }
    };
    match cli.command {
        Command::Eval {
            manifold,
            class_expr,
            combined,
        } => match cmd_eval(&manifold, &class_expr, combined) {
            Ok(text) => {
                emit(&text);
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Command::Glue {
            m1,
            m2,
            probe,
            one_to_one,
            out,
        } => match cmd_glue(&m1, &m2, probe.as_deref(), one_to_one, &out) {
            Ok(summary) => {
                emit(&summary);
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Command::Verify { section } => match cmd_verify(&section) {
            Ok((text, all_ok)) => {
                emit(&text);
                if all_ok {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
    }
}
