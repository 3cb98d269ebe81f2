//! `itk`: command-line access to the itk-core computations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use itk_core::io::{self, Report, SCHEMA_VERSION};
use itk_core::lambda::{self, LambdaFile};
use itk_core::module::coinvariant_order;
use itk_core::padic::{DEFAULT_PRECISION, DEFAULT_TRUNCATION};
use itk_core::rank::{self, default_n_max, kurihara_pollack_check, RankProfile};
use itk_core::{Error, IntPoly, PadicContext};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "itk", version, about = "Iwasawa-theoretic toolkit for rank-growth data")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Working precision as "N,M": coefficients mod p^N, series mod X^M.
    #[arg(long, global = true, env = "ITK_PRECISION", value_name = "N,M")]
    precision: Option<Precision>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy)]
struct Precision {
    n: u32,
    m: usize,
}

impl FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (n, m) = s
            .split_once(',')
            .ok_or_else(|| format!("expected \"N,M\", got {s:?}"))?;
        let n = n.trim().parse().map_err(|e| format!("bad N: {e}"))?;
        let m = m.trim().parse().map_err(|e| format!("bad M: {e}"))?;
        Ok(Precision { n, m })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fine characteristic ideal from a rank profile.
    CharFine(ProfileArgs),
    /// gcd of the plus and minus characteristic ideals.
    CharPmGcd(ProfileArgs),
    /// Bezout cofactors for the plus/minus pair at level n.
    BezoutPm {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Weierstrass preparation of a power series file.
    Weierstrass {
        #[arg(long)]
        input: PathBuf,
    },
    /// Apply the involution X -> -X/(1+X) to a power series file.
    Iota {
        #[arg(long)]
        input: PathBuf,
    },
    /// Cyclotomic part of gcd(f, g).
    CycloGcd {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Order of (Lambda/Phi_c) modulo omega_n.
    CoinvariantOrder {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        n: u32,
    },
    /// Compare gcd(L_p^+, L_p^-) with the plus/minus prediction.
    KpCheck {
        #[arg(long)]
        record: PathBuf,
        #[arg(long)]
        lp_plus: PathBuf,
        #[arg(long)]
        lp_minus: PathBuf,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Validate curve records.
    VerifyRecord {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Worker threads; output order never depends on it.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
    },
}

#[derive(Args)]
struct ProfileArgs {
    /// Curve record file.
    #[arg(long, conflicts_with_all = ["e", "p"])]
    record: Option<PathBuf>,
    /// Comma-separated normalized rank jumps e_0,e_1,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "p")]
    e: Option<Vec<i64>>,
    #[arg(long, requires = "e")]
    p: Option<u64>,
}

/// Exit status 2: the input was rejected.
const EXIT_INPUT: u8 = 2;

struct Failure {
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::Validation(v) => format!("validation failed ({}): {v}", v.kind()),
            other => other.to_string(),
        };
        Failure {
            message,
            code: if e.is_input_error() { EXIT_INPUT } else { 1 },
        }
    }
}

impl From<itk_core::ValidationError> for Failure {
    fn from(e: itk_core::ValidationError) -> Self {
        Error::Validation(e).into()
    }
}

type CliResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::CharFine(args) => char_command(cli, args, false),
        Command::CharPmGcd(args) => char_command(cli, args, true),
        Command::BezoutPm { p, n } => bezout(cli, *p, *n),
        Command::Weierstrass { input } => weierstrass(cli, input),
        Command::Iota { input } => iota(cli, input),
        Command::CycloGcd { f, g, n_max } => cyclo_gcd(cli, f, g, *n_max),
        Command::CoinvariantOrder { p, c, n } => coinvariant(cli, *p, *c, *n),
        Command::KpCheck {
            record,
            lp_plus,
            lp_minus,
            n_max,
        } => kp_check(cli, record, lp_plus, lp_minus, *n_max),
        Command::VerifyRecord { paths, jobs } => verify_records(cli, paths, *jobs as usize),
    }
}

fn context(cli: &Cli, p: u64) -> Result<PadicContext, Error> {
    let prec = cli.precision.unwrap_or(Precision {
        n: DEFAULT_PRECISION,
        m: DEFAULT_TRUNCATION,
    });
    PadicContext::new(p, prec.n, prec.m)
}

fn render(value: &impl serde::Serialize) -> CliResult {
    Ok(io::to_canonical_json(value)?)
}

fn poly_strings(f: &IntPoly) -> Vec<String> {
    f.coeffs().iter().map(ToString::to_string).collect()
}

fn char_command(cli: &Cli, args: &ProfileArgs, pm: bool) -> CliResult {
    let (profile, hypotheses) = match (&args.record, &args.e, args.p) {
        (Some(path), _, _) => {
            let record = if pm {
                io::load_record_for_pm(path)?
            } else {
                io::load_record(path)?
            };
            (record.validate()?, record.hypotheses())
        }
        (None, Some(e), Some(p)) => (RankProfile::direct(p, e)?, Default::default()),
        _ => {
            return Err(Failure {
                message: "give either --record or both --e and --p".into(),
                code: EXIT_INPUT,
            })
        }
    };
    if cli.json {
        return render(&Report::new(profile, hypotheses));
    }
    let ideal = if pm {
        rank::pm_gcd_char(&profile)
    } else {
        rank::fine_char_ideal(&profile)
    };
    Ok(format!("{ideal}\n"))
}

fn bezout(cli: &Cli, p: u64, n: u32) -> CliResult {
    let ctx = context(cli, p)?;
    let b = lambda::bezout_pm(n, &ctx)?;
    let ok = b.verify();
    if !ok {
        return Err(Failure {
            message: format!("identity check failed for p={p}, n={n}"),
            code: 1,
        });
    }
    if cli.json {
        let (ma, mb) = b.minimal();
        return render(&json!({
            "schema_version": SCHEMA_VERSION,
            "p": p,
            "n": n,
            "a": poly_strings(&b.a),
            "b": poly_strings(&b.b),
            "m": b.m,
            "minimal": {"a": poly_strings(ma), "b": poly_strings(mb), "m": b.minimal_m},
            "identity_ok": ok,
        }));
    }
    Ok(format!(
        "A = {}\nB = {}\nm = {}\nminimal m = {}\nidentity OK\n",
        b.a, b.b, b.m, b.minimal_m
    ))
}

fn weierstrass(cli: &Cli, input: &Path) -> CliResult {
    let f = io::load_lambda(input)?;
    let w = lambda::weierstrass_prepare(&f)?;
    if cli.json {
        return render(&json!({
            "schema_version": SCHEMA_VERSION,
            "mu": w.mu,
            "lambda": w.lambda(),
            "distinguished": w.distinguished,
            "unit": LambdaFile::from_element(&w.unit),
        }));
    }
    Ok(format!(
        "mu = {}\nlambda = {}\nP = {}\nP precision = {}\n",
        w.mu,
        w.lambda(),
        w.distinguished.coeffs,
        w.distinguished.precision
    ))
}

fn iota(cli: &Cli, input: &Path) -> CliResult {
    let f = io::load_lambda(input)?;
    let g = lambda::iota(&f);
    if cli.json {
        return render(&LambdaFile::from_element(&g));
    }
    Ok(format!("{}\n", g.to_poly()))
}

fn cyclo_gcd(cli: &Cli, f: &Path, g: &Path, n_max: Option<u32>) -> CliResult {
    let f = io::load_lambda(f)?;
    let g = io::load_lambda(g)?;
    if f.ctx() != g.ctx() {
        return Err(Error::ContextMismatch("f and g have different p, N or M".into()).into());
    }
    let n_max = n_max.unwrap_or_else(|| default_n_max(f.ctx().p(), f.ctx().truncation()));
    let r = lambda::cyclotomic_gcd(&f, &g, n_max)?;
    if cli.json {
        let mut v = serde_json::to_value(&r).map_err(|e| Error::Schema(e.to_string()))?;
        v["schema_version"] = json!(SCHEMA_VERSION);
        v["n_max"] = json!(n_max);
        return render(&v);
    }
    Ok(format!(
        "gcd = {}\nmu = {}\nf = {}\ng = {}\n",
        r.common, r.mu_common, r.f_part, r.g_part
    ))
}

fn coinvariant(cli: &Cli, p: u64, c: u32, n: u32) -> CliResult {
    let ctx = context(cli, p)?;
    let order = coinvariant_order(c, n, &ctx);
    if cli.json {
        let value = order.value().map(|v| v.to_string());
        return render(&json!({
            "schema_version": SCHEMA_VERSION,
            "p": p,
            "c": c,
            "n": n,
            "order": value,
        }));
    }
    Ok(format!("{order}\n"))
}

fn kp_check(
    cli: &Cli,
    record: &Path,
    lp_plus: &Path,
    lp_minus: &Path,
    n_max: Option<u32>,
) -> CliResult {
    let record = io::load_record_for_pm(record)?;
    let profile = record.validate()?;
    let plus = io::load_lambda(lp_plus)?;
    let minus = io::load_lambda(lp_minus)?;
    let kp = kurihara_pollack_check(&plus, &minus, &profile, n_max)?;
    if cli.json {
        return render(&Report::new(profile, record.hypotheses()).with_kp(kp));
    }
    let mut out = String::new();
    out.push_str(&format!("label: {}\n", record.label));
    out.push_str(&format!("expected: {}\nobserved: {}\n", kp.expected, kp.observed));
    out.push_str(&format!("mu: + {} / - {}\n", kp.mu_plus, kp.mu_minus));
    out.push_str("n\texpected\tobserved\tmatch\n");
    for c in &kp.comparisons {
        let flag = if c.matches { "yes" } else { "NO" };
        out.push_str(&format!("{}\t{}\t{}\t{}\n", c.n, c.expected, c.observed, flag));
    }
    let mismatched = kp.mismatched_levels();
    if mismatched.is_empty() {
        out.push_str("all levels match\n");
    } else {
        let list: Vec<String> = mismatched.iter().map(ToString::to_string).collect();
        out.push_str(&format!("mismatch at n = {}\n", list.join(", ")));
    }
    Ok(out)
}

/// One record's outcome, rendered independently of the others.
fn verify_one(path: &Path) -> (bool, Value, String) {
    let name = path.display().to_string();
    match io::load_record(path) {
        Ok(record) => {
            let profile = record.validate().expect("validated on load");
            let pm_ready = record.validate_pm().is_ok();
            let text = format!(
                "{name}: OK label={} p={} e={:?} pm={}\n",
                record.label, profile.p, profile.e, pm_ready
            );
            let value = json!({"path": name, "ok": true, "label": record.label, "e": profile.e, "pm_ready": pm_ready});
            (true, value, text)
        }
        Err(e) => {
            let failure = Failure::from(e.clone());
            let kind = match &e {
                Error::Validation(v) => v.kind().to_string(),
                Error::Schema(_) => "Schema".into(),
                Error::Io(_) => "Io".into(),
                _ => "Other".into(),
            };
            let text = format!("{name}: FAILED {}\n", failure.message);
            let value = json!({"path": name, "ok": false, "error": kind, "message": failure.message});
            (false, value, text)
        }
    }
}

fn verify_records(cli: &Cli, paths: &[PathBuf], jobs: usize) -> CliResult {
    let mut results: Vec<Option<(bool, Value, String)>> = vec![None; paths.len()];
    let workers = jobs.min(paths.len()).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    paths
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, p)| (i, verify_one(p)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                results[i] = Some(r);
            }
        }
    });
    let results: Vec<_> = results.into_iter().map(|r| r.expect("every path visited")).collect();
    let all_ok = results.iter().all(|r| r.0);
    let out = if cli.json {
        let values: Vec<Value> = results.iter().map(|r| r.1.clone()).collect();
        io::to_canonical_json(&json!({"schema_version": SCHEMA_VERSION, "records": values}))?
    } else {
        results.iter().map(|r| r.2.as_str()).collect()
    };
    if all_ok {
        Ok(out)
    } else {
        // the per-record lines still go to stdout before failing
        print!("{out}");
        Err(Failure {
            message: "one or more records failed validation".into(),
            code: EXIT_INPUT,
        })
    }
}
