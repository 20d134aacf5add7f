//! Command-line front end. JSON is the canonical output; CSV and text are
//! views of the same records. Timing goes to stderr so that JSON output is
//! byte-identical across runs and thread counts.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use crate::chars::{check_character_identities, check_jacobi_reductions};
use crate::digraph::{multicolor_tournament, verify_subgraph_formulas};
use crate::error::Error;
use crate::ff::{build_field_of_order, FieldSpec, FieldTable};
use crate::formulas::{self, Method, ResidualMode};
use crate::hyp::identity_suite;
use crate::orbits::{enumerate_orbits, orbits_to_csv, verify_orbit_values};
use crate::ramsey::{search_zero, table1, BoundRecord, TableRow, DEFAULT_Q_MAX};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "paley",
    version,
    about = "Transitive subtournaments of power Paley digraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = "PALEY_THREADS", default_value_t = 0)]
    pub threads: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Enumerate transitive subtournaments on the digraph.
    Brute,
    /// K_4 from the hypergeometric sum over every parameter tuple.
    Thm1,
    /// K_4 from Jacobi aggregates plus the reduced residual sum.
    Thm2,
    /// K_3 from the Jacobi aggregate R_k.
    Thm3,
    /// Closed forms for k = 2 and k = 4.
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Thm1 => Method::FullSum,
            MethodArg::Thm2 => Method::Reduced,
            MethodArg::Thm3 => Method::Jacobi,
            MethodArg::Closed => Method::Closed,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResidualArg {
    Full,
    Orbits,
    Both,
}

impl From<ResidualArg> for ResidualMode {
    fn from(m: ResidualArg) -> ResidualMode {
        match m {
            ResidualArg::Full => ResidualMode::Full,
            ResidualArg::Orbits => ResidualMode::Orbits,
            ResidualArg::Both => ResidualMode::Both,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    /// Character, Gauss and Jacobi sum identities.
    Chars,
    /// Jacobi sums over the order-k family reduced to aggregates.
    Reductions,
    /// Hypergeometric reductions, symmetries and transformations.
    Hyp,
    /// Edge counts of the induced subgraphs against their formulas.
    Subgraphs,
    /// Orbit sign rules against tabulated values.
    Orbits,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count transitive subtournaments K_m(G_k(q)).
    Count {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = ResidualArg::Both)]
        residual: ResidualArg,
    },
    /// Run identity and structural checks; exits 1 if any fails.
    Verify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        suites: Vec<Suite>,
        /// Random parameter draws per randomized suite.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Orbits of the reduced parameter set X_k.
    Orbits {
        #[arg(long)]
        k: u32,
    },
    /// Largest q < qmax with K_m(G_k(q)) = 0.
    Search {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_Q_MAX)]
        qmax: u64,
    },
    /// Lower bounds for R_t(3) and R_t(4), t = 1..=5.
    Table {
        #[arg(long, default_value_t = DEFAULT_Q_MAX)]
        qmax: u64,
    },
    /// The k/2-coloured tournament P_k(q) as an arc list.
    Export {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u64,
    },
}

/// A failed run: usage errors exit 2, everything else 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NotPrime(_)
            | Error::NotPrimePower(_)
            | Error::ZeroDegree
            | Error::FieldTooLarge { .. }
            | Error::NotDivisor { .. }
            | Error::InvalidParameters { .. }
            | Error::UnsupportedOrder(_)
            | Error::Unsupported(_)
            | Error::InvalidSeed(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

/// Rendered output plus whether every check passed.
pub struct Output {
    pub body: String,
    pub passed: bool,
}

#[derive(Serialize)]
struct FieldInfo<'a> {
    #[serde(flatten)]
    spec: &'a FieldSpec,
    /// The primitive element, as polynomial coefficients low degree first.
    omega: Vec<u32>,
}

fn field_info(f: &FieldTable) -> FieldInfo<'_> {
    FieldInfo {
        spec: f.spec(),
        omega: f.coefficients(f.primitive()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Brute => "brute",
        MethodArg::Thm1 => "thm1",
        MethodArg::Thm2 => "thm2",
        MethodArg::Thm3 => "thm3",
        MethodArg::Closed => "closed",
    }
}

fn render_report(report: &Report, format: Format, header: serde_json::Value) -> String {
    match format {
        Format::Json => {
            let mut v = header;
            v["passed"] = json!(report.passed());
            v["checks"] = json!(report.checks);
            to_json(&v)
        }
        Format::Csv => {
            let mut s = String::from("name,passed,detail\n");
            for c in &report.checks {
                writeln!(
                    s,
                    "\"{}\",{},\"{}\"",
                    c.name.replace('"', "\"\""),
                    c.passed,
                    c.detail.replace('"', "\"\"")
                )
                .unwrap();
            }
            s
        }
        Format::Text => {
            let failed = report.failures().count();
            format!("{report}{} checks, {failed} failed\n", report.len())
        }
    }
}

fn render_bound(r: &BoundRecord, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut s = String::from("k,m,q_max,witness\n");
            for q in &r.witnesses {
                writeln!(s, "{},{},{},{q}", r.k, r.m, r.q_max).unwrap();
            }
            s
        }
        Format::Text => {
            let bound = r.bound.map_or("none".to_string(), |b| b.to_string());
            format!(
                "k = {}, m = {}, q < {}: witnesses {:?}\nR_{}({}) >= {bound}\n",
                r.k, r.m, r.q_max, r.witnesses, r.t, r.m
            )
        }
    }
}

fn render_table(rows: &[TableRow], format: Format) -> String {
    let show = |b: Option<u64>| b.map_or(String::new(), |b| b.to_string());
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from("t,k,r3,r4\n");
            for r in rows {
                writeln!(
                    s,
                    "{},{},{},{}",
                    r.t,
                    r.k,
                    show(r.m3.bound),
                    show(r.m4.bound)
                )
                .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:>2} {:>3} {:>8} {:>8}\n", "t", "k", "R_t(3)", "R_t(4)");
            for r in rows {
                writeln!(
                    s,
                    "{:>2} {:>3} {:>8} {:>8}",
                    r.t,
                    r.k,
                    show(r.m3.bound),
                    show(r.m4.bound)
                )
                .unwrap();
            }
            s
        }
    }
}

fn run_verify(
    f: &FieldTable,
    k: u32,
    suites: &[Suite],
    trials: usize,
    seed: u64,
) -> Result<Report, Error> {
    let all = suites.contains(&Suite::All);
    let wants = |s: Suite| all || suites.contains(&s);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = Report::new();
    if wants(Suite::Chars) {
        report.extend(check_character_identities(f, k, trials, &mut rng)?);
        if f.order() % 4 == 1 {
            report.extend(formulas::check_order4_jacobi(f)?);
        }
    }
    if wants(Suite::Reductions) {
        report.extend(check_jacobi_reductions(f, k)?);
        if k == 4 {
            report.extend(formulas::check_order4_aggregates(f)?);
        }
    }
    if wants(Suite::Hyp) {
        report.extend(identity_suite(f, k, trials, &mut rng)?);
    }
    if wants(Suite::Subgraphs) {
        report.extend(verify_subgraph_formulas(f, k)?);
    }
    if wants(Suite::Orbits) {
        report.extend(verify_orbit_values(f, k)?);
    }
    Ok(report)
}

/// Executes one parsed command.
pub fn execute(cli: &Cli) -> Result<Output, Failure> {
    let format = cli.format;
    let ok = |body| Ok(Output { body, passed: true });
    match cli.command {
        Command::Count {
            k,
            q,
            m,
            method,
            residual,
        } => {
            let f = build_field_of_order(q)?;
            let start = Instant::now();
            let count = formulas::count(&f, k, m, method.into(), residual.into())?;
            eprintln!("count took {:.3?}", start.elapsed());
            match format {
                Format::Json => ok(to_json(&json!({
                    "field": field_info(&f),
                    "k": k,
                    "m": m,
                    "method": method_name(method),
                    "count": count,
                }))),
                Format::Csv => ok(format!(
                    "q,k,m,method,count\n{q},{k},{m},{},{count}\n",
                    method_name(method)
                )),
                Format::Text => ok(format!("K_{m}(G_{k}({q})) = {count}\n")),
            }
        }
        Command::Verify {
            k,
            q,
            ref suites,
            trials,
            seed,
        } => {
            let f = build_field_of_order(q)?;
            let start = Instant::now();
            let report = run_verify(&f, k, suites, trials, seed)?;
            eprintln!("verify took {:.3?}", start.elapsed());
            let header = json!({ "field": field_info(&f), "k": k, "trials": trials, "seed": seed });
            Ok(Output {
                body: render_report(&report, format, header),
                passed: report.passed(),
            })
        }
        Command::Orbits { k } => {
            let orbits = enumerate_orbits(k)?;
            match format {
                Format::Json => ok(to_json(&json!({ "k": k, "orbits": orbits }))),
                Format::Csv => ok(orbits_to_csv(&orbits)),
                Format::Text => {
                    let mut s = String::new();
                    for o in &orbits {
                        let net = if o.zero_valued {
                            "zero".to_string()
                        } else {
                            o.net.to_string()
                        };
                        writeln!(s, "{} size {} net {net}", o.representative, o.size).unwrap();
                    }
                    writeln!(s, "{} orbits", orbits.len()).unwrap();
                    ok(s)
                }
            }
        }
        Command::Search { k, m, qmax } => {
            let start = Instant::now();
            let record = search_zero(k, m, qmax)?;
            eprintln!("search took {:.3?}", start.elapsed());
            ok(render_bound(&record, format))
        }
        Command::Table { qmax } => {
            let start = Instant::now();
            let rows = table1(qmax)?;
            eprintln!("table took {:.3?}", start.elapsed());
            ok(render_table(&rows, format))
        }
        Command::Export { k, q } => {
            let f = build_field_of_order(q)?;
            let t = multicolor_tournament(&f, k)?;
            match format {
                Format::Json => {
                    let n = t.order();
                    let arcs: Vec<[usize; 3]> = (0..n)
                        .flat_map(|a| (0..n).map(move |b| (a, b)))
                        .filter_map(|(a, b)| t.arc(a, b).map(|c| [a, b, c as usize]))
                        .collect();
                    ok(to_json(&json!({
                        "field": field_info(&f),
                        "k": k,
                        "colours": t.colours(),
                        "arcs": arcs,
                    })))
                }
                Format::Csv => ok(format!(
                    "from,to,colour\n{}",
                    t.to_edge_list().replace(' ', ",")
                )),
                Format::Text => ok(t.to_edge_list()),
            }
        }
    }
}

/// Parses `args`, runs the command and writes its output.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.threads > 0 {
        // Fails only if a global pool already exists, which then stays in use.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let output = match execute(&cli) {
        Ok(output) => output,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &output.body),
        None => std::io::stdout().write_all(output.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(if output.passed { 0 } else { 1 })
}
