//! The `fourfold` command line. [`run`] returns the process exit code:
//! 0 when everything verified, 2 for a sound negative verdict, 1 for errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fourfold_core::arith::integer::primes_from;
use fourfold_core::arith::{parse_rat, Rat};
use fourfold_core::geometry::{
    check_zero_cycle_certificate, coordinate_vars, unirational_param_degree2, verify_degree_two_certificate,
    zero_cycle_two_torsion_certificate, DegreeTwoMapCertificate, LineInSpace, ZeroCycleCertificate, FERMAT_LINE,
    FERMAT_SURFACE, FOURFOLD_LINE, FOURFOLD_WITH_LINE,
};
use fourfold_core::milnor::{FieldCtx, SquareClass};
use fourfold_core::pipeline::{
    check_norm_certificate, clifford_symbol, extract_bundle, parse_and_validate, verify_main_identity,
    NormCertificate, RamificationParams, X0_TEXT,
};
use fourfold_core::poly::{parse_poly, vars, MPoly};
use fourfold_core::report::{analyze, canonical_json, AnalysisReport};
use fourfold_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "fourfold", version, about = "Quadric bundles, quaternion symbols and certificates for cubic hypersurfaces")]
pub struct Cli {
    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Comma-separated primes for specialization; default: 8 primes from 10007.
    #[arg(long)]
    pub primes: Option<String>,
    /// ProbablyTrivial needs confidence 1 - 2^-k.
    #[arg(long, default_value_t = 40)]
    pub confidence: u32,
}

impl SamplingArgs {
    fn params(&self) -> Result<RamificationParams> {
        let primes = match &self.primes {
            None => primes_from(10_007, 8),
            Some(s) => s
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|_| Error::InvalidInput(format!("bad prime `{p}`"))))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(RamificationParams { seed: self.seed, primes, confidence_bits: self.confidence })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full pipeline on a cubic fourfold containing the plane x0 = x1 = x2 = 0.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Record stage timings (makes the report run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Check a norm certificate for f against the discriminant of a fourfold.
    CertifyNorm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// (ab, ad, f) = (a,b,f) + (a,a,f) + (ab,d,f) for given rationals, or
    /// with indeterminates when --symbolic is set.
    IdentityCheck {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "symbolic")]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "symbolic")]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "symbolic")]
        d: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "symbolic")]
        f: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Degree-2 unirational parameterization from a line on a cubic.
    Unirational {
        #[arg(long)]
        cubic: PathBuf,
        /// Two rows separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        line: String,
    },
    /// Certificate for 2(P - Q) = 0 on a cubic surface through a line.
    ZeroCycle {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        line: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Re-checks a certificate or report produced by another subcommand.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Runs the built-in fixtures.
    Selftest,
}

/// A JSON document and whether it records a verified result.
pub struct Outcome {
    pub output: Value,
    pub verified: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn parse_point(text: &str) -> Result<Vec<Rat>> {
    text.split(|c: char| c.is_whitespace() || c == ',' || c == ':')
        .filter(|s| !s.is_empty())
        .map(|s| parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("bad coordinate `{s}`"))))
        .collect()
}

fn parse_arg_rat(name: &str, v: &Option<String>) -> Result<Rat> {
    let s = v.as_deref().ok_or_else(|| Error::InvalidInput(format!("--{name} is required")))?;
    parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("--{name}: bad rational `{s}`")))
}

fn cubic_for_line(text: &str, line: &LineInSpace) -> Result<MPoly> {
    parse_poly(text.trim(), &coordinate_vars(line.ambient()))
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Analyze { input, sampling, timing } => {
            let report = analyze(&read(input)?, &sampling.params()?, *timing)?;
            Ok(Outcome { verified: report.verified(), output: report.to_value() })
        }
        Command::CertifyNorm { input, cert } => {
            let x = parse_and_validate(read(input)?.trim())?;
            let cs = clifford_symbol(&extract_bundle(&x))?;
            let raw: Value = serde_json::from_str(&read(cert)?)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", cert.display())))?;
            let c = NormCertificate::from_json(&raw, &cs.chart.vars)?;
            let check = check_norm_certificate(&c, &cs)?;
            Ok(Outcome { verified: check.passed(), output: json!({ "norm_certificate": check.to_json() }) })
        }
        Command::IdentityCheck { a, b, d, f, symbolic } => {
            let (classes, label) = if *symbolic {
                let v = vars(&["a", "b", "d", "f"]);
                let ctx = FieldCtx::FunctionField(v.clone());
                let cs = (0..4)
                    .map(|i| SquareClass::of(&ctx, MPoly::var(&v, i)))
                    .collect::<Result<Vec<_>>>()?;
                (cs, json!("indeterminates"))
            } else {
                let rs = [("a", a), ("b", b), ("d", d), ("f", f)]
                    .iter()
                    .map(|(n, v)| parse_arg_rat(n, v))
                    .collect::<Result<Vec<_>>>()?;
                let label = json!(rs.iter().map(fourfold_core::arith::fmt_rat).collect::<Vec<_>>());
                (rs.iter().map(SquareClass::rat).collect::<Result<Vec<_>>>()?, label)
            };
            let ok = verify_main_identity(&classes[0], &classes[1], &classes[2], &classes[3])?;
            Ok(Outcome { verified: ok, output: json!({ "identity": { "inputs": label, "verified": ok } }) })
        }
        Command::Unirational { cubic, line } => {
            let line = LineInSpace::parse(line)?;
            let x = cubic_for_line(&read(cubic)?, &line)?;
            let cert = unirational_param_degree2(&x, &line)?;
            Ok(Outcome { verified: cert.passes(), output: json!({ "unirational": cert.to_json() }) })
        }
        Command::ZeroCycle { surface, line, p, q } => {
            let line = LineInSpace::parse(line)?;
            let s = cubic_for_line(&read(surface)?, &line)?;
            let cert = zero_cycle_two_torsion_certificate(&s, &line, &parse_point(p)?, &parse_point(q)?)?;
            let check = check_zero_cycle_certificate(&cert);
            Ok(Outcome {
                verified: check.accepted,
                output: json!({ "zero_cycle": cert.to_json(), "check": check.to_json() }),
            })
        }
        Command::Verify { cert } => {
            let text = read(cert)?;
            let raw: Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", cert.display())))?;
            verify_document(&raw)
        }
        Command::Selftest => selftest(),
    }
}

/// Dispatches on the shape of a document written by another subcommand.
fn verify_document(raw: &Value) -> Result<Outcome> {
    if raw.get("schema_version").is_some() {
        let report = AnalysisReport::parse(&raw.to_string())?;
        let params = RamificationParams {
            seed: report.params["seed"].as_u64().unwrap_or(0x5eed),
            primes: serde_json::from_value(report.params["primes"].clone())
                .map_err(|e| Error::InvalidInput(format!("params.primes: {e}")))?,
            confidence_bits: report.params["confidence_bits"].as_u64().unwrap_or(40) as u32,
        };
        let mut again = analyze(&report.input, &params, false)?;
        again.timing = None;
        let mut stored = report.clone();
        stored.timing = None;
        let same = again.serialize() == stored.serialize();
        return Ok(Outcome {
            verified: same && again.verified(),
            output: json!({ "verify": { "kind": "analysis_report", "reproduced": same, "verified": again.verified() } }),
        });
    }
    if let Some(c) = raw.get("unirational") {
        let cert = DegreeTwoMapCertificate::from_json(c)?;
        let ok = verify_degree_two_certificate(&cert)?;
        return Ok(Outcome { verified: ok, output: json!({ "verify": { "kind": "unirational", "passes": ok } }) });
    }
    if let Some(c) = raw.get("zero_cycle") {
        let cert = ZeroCycleCertificate::from_json(c)?;
        let check = check_zero_cycle_certificate(&cert);
        return Ok(Outcome {
            verified: check.accepted,
            output: json!({ "verify": { "kind": "zero_cycle", "check": check.to_json() } }),
        });
    }
    Err(Error::InvalidInput("unrecognized document".into()))
}

fn selftest() -> Result<Outcome> {
    let mut results = serde_json::Map::new();
    let mut all = true;
    let mut record = |name: &str, ok: bool, detail: Value| {
        all &= ok;
        results.insert(name.to_string(), json!({ "ok": ok, "detail": detail }));
    };

    let report = analyze(X0_TEXT, &RamificationParams::default(), false)?;
    record("x0_analysis", report.verified(), report.outcome.clone());

    let fermat = parse_poly(FERMAT_SURFACE, &coordinate_vars(4))?;
    let line = LineInSpace::parse(FERMAT_LINE)?;
    let cert = unirational_param_degree2(&fermat, &line)?;
    record("fermat_unirational", cert.passes(), json!({ "fiber_degree": cert.fiber_degree }));

    let y = parse_poly(FOURFOLD_WITH_LINE, &coordinate_vars(6))?;
    let cert = unirational_param_degree2(&y, &LineInSpace::parse(FOURFOLD_LINE)?)?;
    record("fourfold_unirational", cert.passes(), json!({ "fiber_degree": cert.fiber_degree }));

    let p = parse_point("3 4 5 -6")?;
    let q = parse_point("1 -1 1 -1")?;
    let zc = zero_cycle_two_torsion_certificate(&fermat, &line, &p, &q)?;
    let check = check_zero_cycle_certificate(&zc);
    record("fermat_zero_cycle", check.accepted, json!(format!("{:?}", zc.kind)));

    let c = SquareClass::int;
    let ok = verify_main_identity(&c(2), &c(3), &c(5), &c(7))?;
    record("main_identity", ok, json!([2, 3, 5, 7]));

    Ok(Outcome { verified: all, output: json!({ "selftest": results }) })
}

fn emit(out: &Value, json_path: Option<&Path>) -> std::io::Result<()> {
    let text = canonical_json(out) + "\n";
    match json_path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            if let Err(e) = emit(&o.output, cli.json.as_deref()) {
                eprintln!("error: {e}");
                return 1;
            }
            if o.verified {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
