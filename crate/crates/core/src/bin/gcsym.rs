use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gcsym::gcs::{integrability_witness, spinor_report, ReportOptions};
use gcsym::homology::parse_complex;
use gcsym::scalar::{parse_rational, GaussRat, Rational};
use gcsym::suite::{report_json, report_markdown, run_all, run_suite, SuiteResult, DEFAULT_CASES};
use gcsym::surfaces::{cp2_table, cubic_from_coefficients, delpezzo_table, hirzebruch_consistency, hirzebruch_table};
use gcsym::surgery::{connected_sum_trace, kappa_track, surgery_report, SurgeryData};
use gcsym::symkernel::json::parse_file;
use gcsym::symkernel::Point;
use gcsym::{Error, Result};

const THREADS_VAR: &str = "GCSYM_THREADS";

#[derive(Parser)]
#[command(name = "gcsym", version, about = "Exact symbolic checks for generalized complex structures")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Write the Markdown report here.
    #[arg(long, global = true, value_name = "FILE")]
    md: Option<PathBuf>,
    /// Random instances per identity (verify) or sample points (spinor).
    #[arg(long, global = true, value_name = "N")]
    samples: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites.
    Verify {
        /// One suite; all suites when omitted.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Spinor report for an expression file.
    Spinor {
        file: PathBuf,
        /// JSON map from variable to `[re, im]`; random when omitted.
        #[arg(long, value_name = "FILE")]
        point: Option<PathBuf>,
        /// Fail unless the spinor has this type at the point.
        #[arg(long = "type", value_name = "K")]
        expect_type: Option<usize>,
        /// Fail unless the spinor is pure and nondegenerate at the point.
        #[arg(long)]
        pure: bool,
        /// Search an integrability witness with coefficients of this degree.
        #[arg(long, value_name = "N")]
        witness_degree: Option<usize>,
    },
    /// Cohomology of a cochain complex file.
    Cohomology {
        #[arg(long)]
        input: PathBuf,
    },
    /// Lie algebroid cohomology tables.
    Tables {
        #[arg(long, value_enum)]
        surface: Surface,
        /// Number of blown-up points or Hirzebruch index.
        #[arg(long, default_value_t = 0)]
        param: usize,
        /// Nodes of the anticanonical curve.
        #[arg(long, default_value_t = 0)]
        nodes: usize,
        /// Ten coefficients in the order 1, z1, z2, z1², z1z2, z2², z1³, z1²z2, z1z2², z2³.
        #[arg(long)]
        cubic: Option<String>,
        /// Kernel dimension of the first differential on S_k.
        #[arg(long, default_value_t = 0)]
        ker: usize,
    },
    /// Surgery spinor report.
    Surgery {
        #[arg(long, value_name = "m,p,a,b")]
        data: Option<String>,
        #[arg(long = "C", value_name = "num/den", default_value = "1")]
        c: String,
        /// Apply the transformation n times starting from κ0.
        #[arg(long, value_name = "κ0,n")]
        track: Option<String>,
        /// H² of the k-fold elliptic connected sum after m transformations.
        #[arg(long, value_name = "k,m")]
        connected_sum: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Surface {
    Cp2,
    Delpezzo,
    Hirzebruch,
}

/// Output of one subcommand.
struct Outcome {
    json: String,
    markdown: String,
    stdout: String,
    passed: bool,
}

impl Outcome {
    fn value(v: serde_json::Value, markdown: String, passed: bool) -> Self {
        let json = serde_json::to_string_pretty(&v).expect("plain data") + "\n";
        Outcome { stdout: json.clone(), json, markdown, passed }
    }
}

fn integers(s: &str, n: usize, what: &str) -> Result<Vec<i64>> {
    let v: std::result::Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    match v {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(Error::Parse(format!("{what} needs {n} comma-separated integers, got `{s}`"))),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_point(path: &Path) -> Result<Point> {
    let raw: std::collections::BTreeMap<String, (serde_json::Value, serde_json::Value)> =
        serde_json::from_str(&read(path)?)?;
    let part = |v: &serde_json::Value| -> Result<Rational> {
        match v {
            serde_json::Value::Number(n) => parse_rational(&n.to_string()),
            serde_json::Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!("point coordinate must be a number or string, got {other}"))),
        }
    };
    let mut p = Point::new();
    for (name, (re, im)) in raw {
        p.set(&name, GaussRat::new(part(&re)?, part(&im)?));
    }
    Ok(p)
}

fn verify(suite: Option<&str>, seed: u64, samples: usize) -> Result<Outcome> {
    let results: Vec<SuiteResult> = match suite {
        Some(name) => vec![run_suite(name, seed, samples)?],
        None => run_all(seed, samples)?,
    };
    let mut stdout = String::new();
    for r in &results {
        let failures: usize = r.failures.len();
        stdout += &format!(
            "{:<18} {:>5} cases  {:>3} failures  {:>7.2}s  {}\n",
            r.suite,
            r.cases,
            failures,
            r.wall_seconds,
            if r.passed() { "PASS" } else { "FAIL" }
        );
        for f in &r.failures {
            stdout += &format!("  {} / {}: expected {}, got {}\n", f.group, f.case, f.expected, f.got);
        }
        if !r.passed() {
            stdout += &format!("  reproduce: {}\n", r.reproduce);
        }
    }
    Ok(Outcome {
        json: report_json(&results),
        markdown: report_markdown(&results),
        stdout,
        passed: results.iter().all(SuiteResult::passed),
    })
}

fn spinor(
    file: &Path,
    point: Option<&Path>,
    expect_type: Option<usize>,
    pure: bool,
    witness_degree: Option<usize>,
    seed: u64,
    samples: Option<usize>,
) -> Result<Outcome> {
    let (chart, value) = parse_file(&read(file)?)?;
    let phi = value.into_form(&chart)?;
    let at = match point {
        Some(p) => read_point(p)?,
        None => {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            gcsym::gcs::random_point(&chart, &mut rng)
        }
    };
    let mut opts = ReportOptions { seed, ..ReportOptions::default() };
    if let Some(n) = samples {
        opts.samples = n;
    }
    let report = spinor_report(&phi, &at, &opts)?;
    let mut v = report.to_json(&chart);
    let mut passed = true;
    if let Some(k) = expect_type {
        passed &= report.type_number == Some(k);
    }
    if pure {
        passed &= report.is_pure && report.is_nondegenerate_at_point;
    }
    if let Some(n) = witness_degree {
        let w = integrability_witness(&phi, n)?;
        let certified = match &w {
            Some(e) => e.clifford(&phi)? == phi.d()?,
            None => false,
        };
        passed &= certified;
        v["witness"] = json!({ "degree_bound": n, "witness": w.map(|e| e.to_string()), "certified": certified });
    }
    v["point"] = json!(at.iter().map(|(k, x)| (k.clone(), x.to_string())).collect::<std::collections::BTreeMap<_, _>>());
    let md = format!(
        "| field | value |\n|---|---|\n| pure | {} |\n| nondegenerate at point | {} |\n| type | {} |\n| ⟨φ,φ̄⟩ | {} |\n",
        report.is_pure,
        report.is_nondegenerate_at_point,
        report.type_number.map_or("-".into(), |t| t.to_string()),
        report.pairing_value.display(&chart)
    );
    Ok(Outcome::value(v, md, passed))
}

fn cohomology(input: &Path) -> Result<Outcome> {
    let c = parse_complex(&read(input)?)?;
    let h = c.cohomology_dims();
    let v = json!({
        "dims": c.dims(),
        "ranks": c.ranks(),
        "cohomology": h,
        "euler_characteristic": c.euler_characteristic(),
    });
    let mut md = String::from("| k | dim V | dim H |\n|---|---|---|\n");
    for (k, (d, hk)) in c.dims().iter().zip(&h).enumerate() {
        md += &format!("| {k} | {d} | {hk} |\n");
    }
    Ok(Outcome::value(v, md, true))
}

fn tables(surface: Surface, param: usize, nodes: usize, cubic: Option<&str>, ker: usize, seed: u64) -> Result<Outcome> {
    let table = match surface {
        Surface::Cp2 => {
            let coeffs: Vec<Rational> = match cubic {
                Some(s) => s.split(',').map(|x| parse_rational(x.trim())).collect::<Result<_>>()?,
                None => [1, 0, 0, 0, 0, 0, 1, 0, 0, 1].iter().map(|&n| gcsym::scalar::int(n)).collect(),
            };
            cp2_table(&cubic_from_coefficients(&coeffs)?, nodes, seed)?
        }
        Surface::Delpezzo => delpezzo_table(param, ker, seed)?,
        Surface::Hirzebruch => match hirzebruch_table(param, seed) {
            Ok(t) => t,
            Err(Error::Certificate(_)) => {
                let outcome = hirzebruch_consistency(param)?;
                let v = json!({ "name": "Hirzebruch", "parameter": param, "outcome": outcome });
                let md = format!("Hirzebruch F_{param}: {}\n", serde_json::to_string(&outcome).expect("plain data"));
                return Ok(Outcome::value(v, md, false));
            }
            Err(e) => return Err(e),
        },
    };
    Ok(Outcome::value(table.to_json(), table.to_markdown(), true))
}

fn surgery(data: Option<&str>, c: &str, track: Option<&str>, connected_sum: Option<&str>) -> Result<Outcome> {
    if data.is_none() && connected_sum.is_none() {
        return Err(Error::Parse("surgery needs --data or --connected-sum".into()));
    }
    let mut v = json!({});
    let mut md = String::new();
    if let Some(s) = data {
        let x = integers(s, 4, "--data")?;
        let d = SurgeryData::new(x[0], x[1], x[2], x[3], parse_rational(c)?)?;
        let (kappa0, times) = match track {
            Some(t) => {
                let y = integers(t, 2, "--track")?;
                (y[0], usize::try_from(y[1]).map_err(|_| Error::Parse("--track count must be ≥ 0".into()))?)
            }
            None => (0, 1),
        };
        let report = surgery_report(&d, kappa0)?;
        let kappa = kappa_track(&vec![d; times], kappa0)?;
        md += &format!(
            "| field | value |\n|---|---|\n| shift | {:?} |\n| pairing factor | {} |\n| closed | {} |\n| κ after {times} | {kappa} |\n",
            report.shift, report.pairing_factor, report.closed_both_regimes
        );
        v["report"] = serde_json::to_value(&report).expect("plain data");
        v["track"] = json!({ "kappa_before": kappa0, "transformations": times, "kappa_after": kappa });
    }
    if let Some(s) = connected_sum {
        let x = integers(s, 2, "--connected-sum")?;
        let t = connected_sum_trace(x[0], x[1])?;
        md += &format!("\nH² = {} for k = {}, m = {}\n\n| term | dim |\n|---|---|\n", t.h2, t.k, t.m);
        for (l, d) in t.labels.iter().zip(&t.dims) {
            md += &format!("| {l} | {d} |\n");
        }
        v["connected_sum"] = serde_json::to_value(&t).expect("plain data");
    }
    Ok(Outcome::value(v, md, true))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::Verify { suite } => verify(suite.as_deref(), seed, cli.samples.unwrap_or(DEFAULT_CASES)),
        Command::Spinor { file, point, expect_type, pure, witness_degree } => {
            spinor(file, point.as_deref(), *expect_type, *pure, *witness_degree, seed, cli.samples)
        }
        Command::Cohomology { input } => cohomology(input),
        Command::Tables { surface, param, nodes, cubic, ker } => {
            tables(*surface, *param, *nodes, cubic.as_deref(), *ker, seed)
        }
        Command::Surgery { data, c, track, connected_sum } => {
            surgery(data.as_deref(), c, track.as_deref(), connected_sum.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var(THREADS_VAR) {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: {THREADS_VAR} must be a positive integer, got `{n}`");
                return ExitCode::from(2);
            }
        }
    }
    let (json_path, md_path) = (cli.json.clone(), cli.md.clone());
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            for (path, text) in [(json_path, &out.json), (md_path, &out.markdown)] {
                if let Some(p) = path {
                    if let Err(e) = write(&p, text) {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
