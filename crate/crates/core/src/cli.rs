//! `gridram` command-line interface.
//!
//! Exit codes: 0 on success, 1 on invalid input or a failed verification,
//! 2 when an instance exceeds a search envelope.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{bound_table, diag_inequality_check, theorem_params, BoundReport, Which};
use crate::cert::{self, Certificate};
use crate::colorability::extend_to_full;
use crate::constructions::{row_index_coloring, shelah_find_rectangle, shelah_refute};
use crate::error::{invalid, Error, Result};
use crate::search::{g_exact, verify, Oracle, SearchConfig, Verdict, G_exact};
use crate::transforms::{stabilise_first_logged, stabilise_step, SwitchRecord};

#[derive(Parser, Debug)]
#[command(name = "gridram", version, about = "Grid Ramsey numbers: certificates, constructions, bounds and exact search")]
struct Cli {
    /// Output layout for summaries.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Lines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Naive,
    Vertical,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact bound formulas: one statement (`--r --which`) or a table (`--r-max`).
    Bounds(BoundsArgs),
    /// Compute g(m, n) by exhaustive search.
    #[command(name = "search-g")]
    SearchG(SearchGArgs),
    /// Compute G(r) (r <= 2) by exhaustive search up to a grid size cap.
    #[command(name = "search-G")]
    SearchBigG(SearchBigGArgs),
    /// Check a certificate: alternating rectangles (full) or goodness (vertical).
    Verify(InputArgs),
    /// Extend a good vertical colouring to a full colouring without alternating rectangles.
    Extend(EmitArgs),
    /// Stabilise column 1 (default), or run one stabilisation step at level `--k`.
    Stabilise(StabiliseArgs),
    /// Run the stabilisation chain on a vertical colouring until an agreement graph fails.
    Refute(RefuteArgs),
    /// Find an alternating rectangle by the two-pigeonhole argument.
    #[command(name = "shelah-find")]
    ShelahFind(InputArgs),
    /// Check the diagonal family inequality exactly.
    #[command(name = "check-ineq")]
    CheckIneq(CheckIneqArgs),
    /// Emit the row-index colouring of an m x n grid (m <= n), which uses m colours.
    #[command(name = "make-lower")]
    MakeLower(MakeLowerArgs),
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Colour count for a single statement.
    #[arg(long, requires = "which", conflicts_with = "r_max")]
    r: Option<u64>,
    /// shelah, gyarfas, thm1, thm2, prop_diag or prop_offdiag.
    #[arg(long)]
    which: Option<String>,
    /// Emit the table for r = 2..=r_max.
    #[arg(long)]
    r_max: Option<u64>,
}

#[derive(Args, Debug)]
struct SearchGArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Largest colour count to try (default min(m, n)).
    #[arg(long)]
    r_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "vertical")]
    oracle: OracleArg,
    /// Write the certificate here (`-` for standard output).
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchBigGArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n_cap: usize,
    #[arg(long, value_enum, default_value = "vertical")]
    oracle: OracleArg,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Certificate path (`-` for standard input).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct EmitArgs {
    #[arg(long)]
    input: PathBuf,
    /// Output path (`-` for standard output).
    #[arg(long, default_value = "-")]
    emit: PathBuf,
}

#[derive(Args, Debug)]
struct StabiliseArgs {
    #[arg(long)]
    input: PathBuf,
    /// Stabilisation level; 0 stabilises column 1 only.
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value = "-")]
    emit: PathBuf,
    /// Write one `s <a> <b> <c> <c'>` line per switch applied.
    #[arg(long)]
    log_switches: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RefuteArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    log_switches: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckIneqArgs {
    #[arg(long, conflicts_with = "r_max", required_unless_present = "r_max")]
    r: Option<u64>,
    #[arg(long)]
    r_max: Option<u64>,
}

#[derive(Args, Debug)]
struct MakeLowerArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "-")]
    emit: PathBuf,
}

/// Outcome of a subcommand: text for standard output plus an exit code.
struct Output {
    stdout: String,
    code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return 1;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::TooLarge(_) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<Output> {
    let format = cli.format;
    match cli.command {
        Command::Bounds(a) => bounds(a, format),
        Command::SearchG(a) => search_g(a),
        Command::SearchBigG(a) => search_big_g(a),
        Command::Verify(a) => verify_cmd(&a.input),
        Command::Extend(a) => {
            let chi = read_cert(&a.input)?.vertical().clone();
            let full = extend_to_full(&chi)?;
            emit(&a.emit, &Certificate::Full(full).to_text())
        }
        Command::Stabilise(a) => stabilise(a),
        Command::Refute(a) => refute(a),
        Command::ShelahFind(a) => match read_cert(&a.input)? {
            Certificate::Full(f) => {
                let rect = shelah_find_rectangle(&f)?;
                let (x, y) = (rect.rows, rect.cols);
                Ok(Output::ok(format!("rectangle {} {} {} {}\n", x.0, x.1, y.0, y.1)))
            }
            Certificate::Vertical(_) => Err(invalid("shelah-find needs a `type full` certificate")),
        },
        Command::CheckIneq(a) => check_ineq(a, format),
        Command::MakeLower(a) => {
            let full = row_index_coloring(a.m, a.n)?;
            emit(&a.emit, &Certificate::Full(full).to_text())
        }
    }
}

fn read_cert(path: &Path) -> Result<Certificate> {
    let text = cert::read_text(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    cert::parse(&text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
}

/// Sends `text` to `path`, or returns it as standard output for `-`.
fn emit(path: &Path, text: &str) -> Result<Output> {
    if path.as_os_str() == "-" {
        return Ok(Output::ok(text.to_string()));
    }
    write_file(path, text)?;
    Ok(Output::ok(String::new()))
}

fn switch_log(log: &[SwitchRecord]) -> String {
    log.iter().map(|s| format!("{s}\n")).collect()
}

fn table(format: Format, rows: &[Vec<(String, String)>]) -> String {
    let mut out = String::new();
    match format {
        Format::Tsv => {
            if let Some(first) = rows.first() {
                let header: Vec<_> = first.iter().map(|(k, _)| k.as_str()).collect();
                let _ = writeln!(out, "{}", header.join("\t"));
            }
            for row in rows {
                let vals: Vec<_> = row.iter().map(|(_, v)| v.as_str()).collect();
                let _ = writeln!(out, "{}", vals.join("\t"));
            }
        }
        Format::Lines => {
            for row in rows {
                let kv: Vec<_> = row.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "{}", kv.join(" "));
            }
        }
    }
    out
}

fn report_value(rep: &BoundReport, key: &str) -> String {
    rep.value(key).map(|v| v.to_string()).unwrap_or_default()
}

fn bounds(a: BoundsArgs, format: Option<Format>) -> Result<Output> {
    if let Some(r_max) = a.r_max {
        let rows: Vec<_> = bound_table(r_max)?
            .iter()
            .map(|rep| {
                let mut row = vec![("r".to_string(), rep.r.to_string())];
                for key in ["shelah", "gyarfas", "thm1_m", "thm1_n", "thm2_m", "thm2_n"] {
                    row.push((key.to_string(), report_value(rep, key)));
                }
                let ok = rep.flag_value("diag_ineq_ok").unwrap_or(false);
                row.push(("diag_ineq_ok".to_string(), ok.to_string()));
                row
            })
            .collect();
        return Ok(Output::ok(table(format.unwrap_or(Format::Tsv), &rows)));
    }
    let (Some(r), Some(which)) = (a.r, a.which) else {
        return Err(invalid("bounds needs either --r-max, or --r together with --which"));
    };
    let p = theorem_params(r, which.parse::<Which>()?)?;
    let mut row = vec![("m".to_string(), p.m.to_string()), ("n".to_string(), p.n.to_string())];
    if p.n_floored {
        row.push(("n_floored".to_string(), "true".to_string()));
    }
    Ok(Output::ok(table(format.unwrap_or(Format::Lines), &[row])))
}

fn check_ineq(a: CheckIneqArgs, format: Option<Format>) -> Result<Output> {
    let rs: Vec<u64> = match (a.r, a.r_max) {
        (Some(r), _) => vec![r],
        (None, Some(r_max)) => (2..=r_max).collect(),
        (None, None) => unreachable!("clap requires one of --r, --r-max"),
    };
    let mut rows = Vec::new();
    let mut all = true;
    for r in rs {
        let rep = diag_inequality_check(r)?;
        all &= rep.satisfied == Some(true);
        let mut row = vec![("r".to_string(), r.to_string())];
        for key in ["ell", "lhs_ground_m", "lhs_ground_m_plus_1", "rhs_floor", "margin_ground_m", "margin_ground_m_plus_1"] {
            row.push((key.to_string(), report_value(&rep, key)));
        }
        row.push(("degenerate".to_string(), rep.flag_value("degenerate_family").unwrap_or(false).to_string()));
        row.push(("ok".to_string(), (rep.satisfied == Some(true)).to_string()));
        rows.push(row);
    }
    Ok(Output { stdout: table(format.unwrap_or(Format::Lines), &rows), code: if all { 0 } else { 1 } })
}

fn oracles(arg: OracleArg) -> Vec<Oracle> {
    match arg {
        OracleArg::Naive => vec![Oracle::Naive],
        OracleArg::Vertical => vec![Oracle::Vertical],
        OracleArg::Both => vec![Oracle::Naive, Oracle::Vertical],
    }
}

fn show_value(name: &str, v: Option<usize>, cap: usize) -> String {
    match v {
        Some(v) => format!("{name}={v}"),
        None => format!("{name}>{cap}"),
    }
}

fn search_g(a: SearchGArgs) -> Result<Output> {
    let cfg = SearchConfig::from_env()?;
    let r_cap = a.r_cap.unwrap_or(a.m.min(a.n)).max(1);
    let mut results = Vec::new();
    for oracle in oracles(a.oracle) {
        results.push((oracle, g_exact(oracle, a.m, a.n, r_cap, &cfg)?));
    }
    let value = results[0].1.value;
    let agree = results.iter().all(|(_, r)| r.value == value);
    let mut line = show_value("g", value, r_cap);
    if results.len() > 1 {
        if !agree {
            line = results
                .iter()
                .map(|(o, r)| show_value(&format!("g_{o}"), r.value, r_cap))
                .collect::<Vec<_>>()
                .join(" ");
        }
        line.push_str(&format!(" oracles_agree={agree}"));
    }
    line.push('\n');

    let mut out = Output { stdout: String::new(), code: if agree { 0 } else { 1 } };
    // the certificate of the last oracle run (the vertical one when both ran)
    let cert = results.last().and_then(|(_, r)| r.certificate.clone());
    match (&a.emit, cert) {
        (Some(path), Some(cert)) if path.as_os_str() == "-" => {
            eprint!("{line}");
            out.stdout = Certificate::Full(cert).to_text();
        }
        (Some(path), Some(cert)) => {
            write_file(path, &Certificate::Full(cert).to_text())?;
            out.stdout = line;
        }
        _ => out.stdout = line,
    }
    Ok(out)
}

fn search_big_g(a: SearchBigGArgs) -> Result<Output> {
    let cfg = SearchConfig::from_env()?;
    let mut values = Vec::new();
    for oracle in oracles(a.oracle) {
        values.push((oracle, G_exact(oracle, a.r, a.n_cap, &cfg)?));
    }
    let value = values[0].1;
    let agree = values.iter().all(|(_, v)| *v == value);
    let mut line = if agree {
        show_value("G", value, a.n_cap)
    } else {
        values.iter().map(|(o, v)| show_value(&format!("G_{o}"), *v, a.n_cap)).collect::<Vec<_>>().join(" ")
    };
    if values.len() > 1 {
        line.push_str(&format!(" oracles_agree={agree}"));
    }
    line.push('\n');
    Ok(Output { stdout: line, code: if agree { 0 } else { 1 } })
}

fn verify_cmd(input: &Path) -> Result<Output> {
    let verdict = verify(&read_cert(input)?);
    let mut out = String::new();
    match &verdict {
        Verdict::Full(rects) if rects.is_empty() => out.push_str("valid: no alternating rectangle\n"),
        Verdict::Full(rects) => {
            let _ = writeln!(out, "invalid: {} alternating rectangle(s)", rects.len());
            for r in rects {
                let _ = writeln!(out, "rectangle {} {} {} {}", r.rows.0, r.rows.1, r.cols.0, r.cols.1);
            }
        }
        Verdict::Vertical(rep) if rep.good => out.push_str("valid: good vertical colouring\n"),
        Verdict::Vertical(rep) => {
            let (i, j) = rep.failing_pair.expect("failing pair on a bad colouring");
            let _ = writeln!(out, "invalid: agreement graph of columns {i} {j} is not r-colourable");
        }
    }
    Ok(Output { stdout: out, code: if verdict.is_valid() { 0 } else { 1 } })
}

fn stabilise(a: StabiliseArgs) -> Result<Output> {
    let chi = read_cert(&a.input)?.vertical().clone();
    let (out, log) = if a.k == 0 {
        stabilise_first_logged(&chi)
    } else {
        let step = stabilise_step(&chi, a.k)?;
        (step.coloring, step.switches)
    };
    if let Some(path) = &a.log_switches {
        write_file(path, &switch_log(&log))?;
    }
    emit(&a.emit, &Certificate::Vertical(out).to_text())
}

fn refute(a: RefuteArgs) -> Result<Output> {
    let chi = read_cert(&a.input)?.vertical().clone();
    // refutation starts from a 1-stabilised colouring; switching keeps goodness
    let (start, mut log) = stabilise_first_logged(&chi);
    let w = shelah_refute(&start)?;
    log.extend(w.switches.iter().copied());
    if let Some(path) = &a.log_switches {
        write_file(path, &switch_log(&log))?;
    }
    let rows: Vec<_> = w.rows.iter().map(|r| r.to_string()).collect();
    let edges: Vec<_> = w.original_edges().iter().map(|(x, y)| format!("{x}-{y}")).collect();
    let mut out = String::new();
    let _ = writeln!(out, "witness columns={} {} level={}", w.columns.0, w.columns.1, w.level);
    let _ = writeln!(out, "rows {}", rows.join(" "));
    let _ = writeln!(out, "edges {}", edges.join(" "));
    Ok(Output::ok(out))
}
