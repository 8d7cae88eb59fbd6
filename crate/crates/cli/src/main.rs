use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ttstar_cli::golden::{compare, table_for_group};
use ttstar_cli::{
    exit_code, render_all, render_cos_pairs, render_records, require_region, ConvertRecord, OutputFormat,
    EXIT_ASYMPTOTICS_FAILED, EXIT_VERIFY_FAILED,
};
use ttstar_core::case::{asymptotic_to_k, k_to_asymptotic, AsymptoticData, KVector};
use ttstar_core::enumeration::{all_integral_solutions, enumerate_cos_pairs, table_rows};
use ttstar_core::qdo::{catalog, find_record, match_ci, qdo_from_ci, verify_corollary_with, CISpec};
use ttstar_core::radial::{solve_radial, verify_asymptotics, write_profile_csv};
use ttstar_core::scalar::parse_rational;
use ttstar_core::stokes::stokes_from_k;
use ttstar_core::{CaseId, Error, Group, Rational, SolverConfig};

#[derive(Parser)]
#[command(name = "ttstar", version, about = "Asymptotic, holomorphic and Stokes data of the two-function tt*-Toda cases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Asymptotic,
    K,
}

#[derive(Subcommand)]
enum Command {
    /// Convert asymptotic data or holomorphic data to all other data.
    Convert {
        case: String,
        #[arg(long, value_enum)]
        from: Source,
        /// γ δ, or k_0 … k_n.
        #[arg(required = true, allow_hyphen_values = true, num_args = 1..)]
        values: Vec<String>,
        /// N for the holomorphic data when converting from asymptotic data.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        n: String,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// List the solutions with integral Stokes data.
    Enumerate {
        case: Option<String>,
        #[arg(long)]
        all: bool,
        /// All 19 rows for even n+1 (by default only those with a ≥ b).
        #[arg(long)]
        full: bool,
        /// The 33 cosine pairs instead of solutions.
        #[arg(long)]
        raw: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Quantum differential operator of a weighted projective complete intersection.
    Qdo {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u32>,
        /// Report the integral solution with this T_k.
        #[arg(long = "match")]
        match_: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Check the catalog, the converse sweep and the golden table of a case.
    Verify {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 12)]
        bound: u32,
        /// Corrupt one catalog entry; the run must then fail.
        #[arg(long)]
        self_test: bool,
    },
    /// Solve the radial boundary-value problem.
    Solve(SolveArgs),
}

#[derive(Args)]
struct SolveArgs {
    case: String,
    #[arg(allow_hyphen_values = true)]
    gamma: String,
    #[arg(allow_hyphen_values = true)]
    delta: String,
    #[arg(long, default_value_t = -12.0, allow_hyphen_values = true)]
    t_min: f64,
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    t_max: f64,
    #[arg(long, default_value_t = 2048)]
    grid_points: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 200)]
    max_iterations: usize,
    #[arg(long, default_value_t = 1.0)]
    damping: f64,
    #[arg(long, default_value_t = 0.05)]
    slope_tol: f64,
    /// Profile CSV destination; the profile goes to stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

fn parse_case(s: &str) -> Result<CaseId, Failure> {
    s.parse::<CaseId>().map_err(Failure::from)
}

fn rationals(values: &[String]) -> Result<Vec<Rational>, Failure> {
    values.iter().map(|v| parse_rational(v).map_err(Failure::from)).collect()
}

/// Values accept a leading hyphen, so options written after them arrive here.
fn trailing_options(values: &[String], n: &mut String, format: &mut OutputFormat) -> Result<Vec<String>, Failure> {
    let mut rest = Vec::new();
    let mut it = values.iter();
    while let Some(v) = it.next() {
        let (key, inline) = match v.split_once('=') {
            Some((k, x)) if k.starts_with("--") => (k, Some(x.to_string())),
            _ => (v.as_str(), None),
        };
        if key != "--n" && key != "--format" {
            rest.push(v.clone());
            continue;
        }
        let value = inline
            .or_else(|| it.next().cloned())
            .ok_or(Failure { code: 2, message: format!("{key} needs a value") })?;
        if key == "--n" {
            *n = value;
        } else {
            *format = OutputFormat::from_str(&value, true)
                .map_err(|_| Failure { code: 2, message: format!("unknown format {value}") })?;
        }
    }
    Ok(rest)
}

fn convert(case: &str, from: Source, values: &[String], n: &str, format: OutputFormat) -> Result<String, Failure> {
    let case = parse_case(case)?;
    let (mut n, mut format) = (n.to_string(), format);
    let values = trailing_options(values, &mut n, &mut format)?;
    let n = n.as_str();
    let vals = rationals(&values)?;
    let k = match from {
        Source::Asymptotic => {
            if vals.len() != 2 {
                return Err(Error::Length { case: case.to_string(), expected: 2, got: vals.len() }.into());
            }
            let a = AsymptoticData::new(vals[0].clone(), vals[1].clone());
            require_region(case, &a)?;
            asymptotic_to_k(case, &a, &parse_rational(n)?)?
        }
        Source::K => {
            let k = KVector::new(case, vals)?;
            require_region(case, &k_to_asymptotic(&k))?;
            k
        }
    };
    let a = k_to_asymptotic(&k);
    Ok(ConvertRecord::new(&k, &a, &stokes_from_k(&k)).render(format))
}

fn enumerate(case: Option<&str>, all: bool, full: bool, raw: bool, format: OutputFormat) -> Result<String, Failure> {
    if raw {
        return Ok(render_cos_pairs(&enumerate_cos_pairs(), format));
    }
    if all {
        let mut sets = all_integral_solutions();
        if !full {
            for (c, recs) in &mut sets {
                *recs = table_rows(*c, false);
            }
        }
        return Ok(render_all(&sets, format));
    }
    let case = case.ok_or(Failure { code: 2, message: "a case, --all or --raw is required".into() })?;
    Ok(render_records(&table_rows(parse_case(case)?, full), format))
}

fn qdo(weights: Vec<u32>, degrees: Vec<u32>, do_match: bool, format: OutputFormat) -> Result<String, Failure> {
    let spec = CISpec::new(weights, degrees)?;
    let q = qdo_from_ci(&spec)?;
    let mut matches = Vec::new();
    if do_match {
        for g in Group::ALL {
            let case = g.cases()[0];
            for (a, b) in find_record(case, &q) {
                let names: Vec<String> = g.cases().iter().map(|c| c.to_string()).collect();
                matches.push((names.join("/"), a, b));
            }
        }
    }
    let minimal = match_ci(&q.theta, spec.weight_sum()).filter(|m| *m != spec);
    Ok(match format {
        OutputFormat::Json => {
            let v = serde_json::json!({
                "spec": spec.to_string(),
                "lambda_power": q.lambda_power,
                "theta": q.theta.to_string(),
                "operator": q.to_string(),
                "matches": matches.iter().map(|(c, a, b)| serde_json::json!({"cases": c, "a": a.to_string(), "b": b.to_string()})).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        OutputFormat::Csv => {
            let m: Vec<String> = matches.iter().map(|(c, a, b)| format!("{c} ({a};{b})")).collect();
            format!("spec,lambda_power,theta,match\n{spec},{},{},{}\n", q.lambda_power, q.theta, m.join(" "))
        }
        OutputFormat::Latex => format!(
            "$\\lambda^{{{}}} {} - z$\n",
            q.lambda_power,
            ttstar_cli::latex_theta(&q.theta)
        ),
        OutputFormat::Table => {
            let mut out = format!("{spec}: {q}\n");
            if let Some(m) = minimal {
                out.push_str(&format!("same operator as {m}\n"));
            }
            if do_match {
                if matches.is_empty() {
                    out.push_str("match: none\n");
                }
                for (c, a, b) in &matches {
                    out.push_str(&format!("match: cases {c}, (a,b) = π({a},{b})\n"));
                }
            }
            out
        }
    })
}

fn verify(case: &str, bound: u32, self_test: bool) -> Result<String, Failure> {
    let case = parse_case(case)?;
    if bound < 6 {
        return Err(Failure { code: 2, message: format!("bound must be at least 6, got {bound}") });
    }
    let mut entries = catalog(case.group());
    if self_test {
        let e = &mut entries[1];
        let mut w = e.spec.weights().to_vec();
        w.push(1);
        e.spec = CISpec::new(w, e.spec.degrees().to_vec())?;
    }
    let rep = verify_corollary_with(case, bound, &entries);
    let table = table_for_group(case.group());
    let golden = compare(table, case);
    let mut out = String::new();
    let ok_cat = rep.catalog.iter().filter(|c| c.ok).count();
    out.push_str(&format!("case {case}, bound {bound}\n"));
    out.push_str(&format!("catalog: {ok_cat}/{} entries match\n", rep.catalog.len()));
    out.push_str(&format!(
        "converse: {} operators swept, {} satisfy (Q) and (G), {} abstract only, spaces searched up to Σv = {}\n",
        rep.swept,
        rep.qg_operators.len(),
        rep.abstract_only().count(),
        rep.ci_bound
    ));
    for t in &rep.a_n_type {
        out.push_str(&format!("A_n type (fails Q): {t}\n"));
    }
    out.push_str(&format!(
        "golden {}: {} rows, {} cells, {} listed errata confirmed\n",
        table.name,
        golden.rows,
        golden.cells_compared,
        golden.errata_confirmed.len()
    ));
    let failure = rep.first_failure().or_else(|| golden.first_failure());
    match failure {
        None if rep.passed() && golden.passed() => {
            out.push_str("result: pass\n");
            Ok(out)
        }
        other => {
            print!("{out}");
            Err(Failure {
                code: EXIT_VERIFY_FAILED,
                message: format!("result: FAIL: {}", other.unwrap_or_else(|| "unknown".into())),
            })
        }
    }
}

fn solve(args: &SolveArgs) -> Result<String, Failure> {
    let case = parse_case(&args.case)?;
    let a = AsymptoticData::new(parse_rational(&args.gamma)?, parse_rational(&args.delta)?);
    let cfg = SolverConfig {
        t_min: args.t_min,
        t_max: args.t_max,
        grid_points: args.grid_points,
        newton_tol: args.tol,
        max_iterations: args.max_iterations,
        damping: args.damping,
    };
    let sol = solve_radial(case, &a, &cfg)?;
    let rep = verify_asymptotics(&sol, args.slope_tol);
    let mut report = format!(
        "case {case}, (γ,δ) = ({},{})\nnewton iterations: {}\nresidual: {:.3e}\nfitted slopes: {:.6} {:.6}\nfitted constants: {:.6} {:.6}\nslope errors: {:.3e} {:.3e}\nasymptotics: {}\n",
        a.gamma,
        a.delta,
        sol.iterations,
        sol.residual_norm,
        sol.fitted_gamma,
        sol.fitted_delta,
        sol.fitted_u_intercept,
        sol.fitted_v_intercept,
        rep.gamma_error,
        rep.delta_error,
        if rep.passed() { "pass" } else { "FAIL" }
    );
    match &args.output {
        Some(path) => write_profile_csv(&sol, BufWriter::new(File::create(path)?))?,
        None => {
            let stdout = io::stdout();
            write_profile_csv(&sol, stdout.lock())?;
            eprint!("{report}");
            report.clear();
        }
    }
    if rep.passed() {
        Ok(report)
    } else {
        print!("{report}");
        Err(Failure { code: EXIT_ASYMPTOTICS_FAILED, message: "fitted slopes or boundary values out of tolerance".into() })
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("TTSTAR_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Convert { case, from, values, n, format } => convert(case, *from, values, n, *format),
        Command::Enumerate { case, all, full, raw, format } => enumerate(case.as_deref(), *all, *full, *raw, *format),
        Command::Qdo { weights, degrees, match_, format } => qdo(weights.clone(), degrees.clone(), *match_, *format),
        Command::Verify { case, bound, self_test } => verify(case, *bound, *self_test),
        Command::Solve(args) => solve(args),
    };
    match result {
        Ok(text) => {
            let mut out = io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
