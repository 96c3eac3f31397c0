use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use uksat::constructions::{double_star, near_complete_construction, tau_critical_construction};
use uksat::format::{read_uhg, write_uhg};
use uksat::hypercore::{complement_hypergraph, complementary_hypergraph};
use uksat::search::{existence_table, solve_existence, SearchConfig, SearchStatus, TableBudget};
use uksat::transversal::{
    is_uniquely_tau_critical, nonexistence_bound, transversal_number, tuza_bound, verify_tau_critical_complement,
};
use uksat::verify::{verify_complementary, verify_uniquely_saturated};
use uksat::{Error, UniformHypergraph, Verdict};

const EXIT_OK: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_ABORTED: u8 = 3;

#[derive(Parser)]
#[command(name = "uksat", version, about = "Primitive uniquely K_r^(k)-saturated hypergraphs: verify, construct, search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a .uhg file.
    Verify {
        #[command(subcommand)]
        mode: VerifyMode,
    },
    /// Build a certified example and write it as .uhg plus a JSON record.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Decide existence for the complementary parameters (n, t, s).
    Search(SearchArgs),
    /// Existence table for one uniformity.
    Table(TableArgs),
    /// Print the transversal bounds.
    Bounds {
        #[arg(long)]
        k: usize,
        /// n - r; prints the non-existence threshold on n.
        #[arg(long, conflicts_with = "tau")]
        ell: Option<usize>,
        /// Prints the vertex bound for τ-critical hypergraphs.
        #[arg(long)]
        tau: Option<usize>,
    },
}

#[derive(Subcommand)]
enum VerifyMode {
    /// H is primitive uniquely K_r^(k)-saturated.
    Saturated {
        #[arg(long)]
        r: usize,
        file: PathBuf,
    },
    /// R satisfies the three complementary-hypergraph properties.
    Complementary {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
        file: PathBuf,
    },
    /// H is uniquely τ-critical; with --tau also checks τ and isolated vertices.
    TauCritical {
        #[arg(long)]
        tau: Option<usize>,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Complementary hypergraph R of the double star (k ≥ 4, k < r ≤ 2k−3, n > r).
    DoubleStar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Uniquely τ-critical H with τ = ell + 1 from a Johnson-graph coloring.
    TauCritical {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// H^c with τ = 2 whose complement is uniquely K_{n-1}^(k)-saturated.
    NearComplete {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct OutArgs {
    /// Certificate path; the JSON record goes next to it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    s: usize,
    /// Worker threads (default: UKSAT_THREADS or 1).
    #[arg(long)]
    parallel: Option<usize>,
    /// Fix {1, …, t} as an edge.
    #[arg(long)]
    symmetry: bool,
    /// Enumerate all solutions (n ≤ 7).
    #[arg(long)]
    all: bool,
    /// Allow the parallel certificate to depend on scheduling.
    #[arg(long)]
    nondeterministic: bool,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Certificate path for a SAT result.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    max_ell: usize,
    #[arg(long)]
    max_s: usize,
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Seconds per searched cell.
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Fix {1, …, t} as an edge in every searched cell.
    #[arg(long)]
    symmetry: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
    format: TableFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

#[derive(Serialize)]
struct RunRecord {
    command: &'static str,
    theorem: Option<&'static str>,
    params: serde_json::Value,
    verdict: serde_json::Value,
    tau: Option<usize>,
    certificate_path: Option<PathBuf>,
    stats: serde_json::Value,
    tool_version: &'static str,
}

fn threads(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("UKSAT_THREADS").ok()?.parse().ok())
        .unwrap_or(1)
        .max(1)
}

fn input_error(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn report(verdict: &Verdict) -> ExitCode {
    println!("{verdict}");
    ExitCode::from(if verdict.is_ok() { EXIT_OK } else { EXIT_FALSE })
}

fn run_verify(mode: VerifyMode) -> ExitCode {
    let (file, check): (PathBuf, Box<dyn Fn(&UniformHypergraph) -> uksat::Result<Verdict>>) = match mode {
        VerifyMode::Saturated { r, file } => (file, Box::new(move |h| verify_uniquely_saturated(h, r))),
        VerifyMode::Complementary { t, s, file } => (file, Box::new(move |h| verify_complementary(h, t, s))),
        VerifyMode::TauCritical { tau, file } => (
            file,
            Box::new(move |h| match tau {
                Some(tau) => Ok(verify_tau_critical_complement(h, tau)),
                None => is_uniquely_tau_critical(h),
            }),
        ),
    };
    let h = match read_uhg(&file) {
        Ok(h) => h,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match check(&h) {
        Ok(v) => report(&v),
        Err(e) => input_error(&e),
    }
}

fn record_path(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".json");
    PathBuf::from(p)
}

fn write_record(out: &Path, record: &RunRecord) -> uksat::Result<()> {
    let text = serde_json::to_string_pretty(record).expect("records serialize");
    std::fs::write(record_path(out), text + "\n")?;
    Ok(())
}

/// Writes the certificate, reloads it, and checks it again.
fn emit(out: &Path, h: &UniformHypergraph, recheck: impl Fn(&UniformHypergraph) -> uksat::Result<Verdict>) -> uksat::Result<Verdict> {
    write_uhg(out, h)?;
    let loaded = read_uhg(out)?;
    if &loaded != h {
        return Err(Error::ConstructionDefect(format!("{} does not round-trip", out.display())));
    }
    recheck(&loaded)
}

fn run_construct(family: Family) -> ExitCode {
    let result = match family {
        Family::DoubleStar { n, k, r, out } => double_star(n, k, r).and_then(|rh| {
            let (t, s) = (n - k, r - k);
            let v = emit(&out.out, &rh, |x| verify_complementary(x, t, s))?;
            let h = complementary_hypergraph(&rh)?;
            let sat = verify_uniquely_saturated(&h, r)?;
            let record = RunRecord {
                command: "construct double-star",
                theorem: Some("thm3.2"),
                params: json!({"n": n, "k": k, "r": r, "t": t, "s": s}),
                verdict: json!({"complementary": v, "saturated": sat}),
                tau: None,
                certificate_path: Some(out.out.clone()),
                stats: json!({"edges": rh.edge_count()}),
                tool_version: env!("CARGO_PKG_VERSION"),
            };
            write_record(&out.out, &record)?;
            Ok((rh, v.is_ok() && sat.is_ok()))
        }),
        Family::TauCritical { k, ell, n, out } => tau_critical_construction(k, ell, n, None).and_then(|h| {
            let v = emit(&out.out, &h, |x| Ok(verify_tau_critical_complement(x, ell + 1)))?;
            let sat = verify_uniquely_saturated(&complement_hypergraph(&h), n - ell)?;
            let record = RunRecord {
                command: "construct tau-critical",
                theorem: Some("thm4.5"),
                params: json!({"k": k, "ell": ell, "n": n, "r": n - ell}),
                verdict: json!({"tau_critical": v, "complement_saturated": sat}),
                tau: Some(transversal_number(&h)),
                certificate_path: Some(out.out.clone()),
                stats: json!({"edges": h.edge_count()}),
                tool_version: env!("CARGO_PKG_VERSION"),
            };
            write_record(&out.out, &record)?;
            Ok((h, v.is_ok() && sat.is_ok()))
        }),
        Family::NearComplete { k, n, out } => near_complete_construction(k, n).and_then(|h| {
            let v = emit(&out.out, &h, |x| Ok(verify_tau_critical_complement(x, 2)))?;
            let sat = verify_uniquely_saturated(&complement_hypergraph(&h), n - 1)?;
            let record = RunRecord {
                command: "construct near-complete",
                theorem: Some("thm5.1"),
                params: json!({"k": k, "n": n, "r": n - 1}),
                verdict: json!({"tau_critical": v, "complement_saturated": sat}),
                tau: Some(2),
                certificate_path: Some(out.out.clone()),
                stats: json!({"edges": h.edge_count()}),
                tool_version: env!("CARGO_PKG_VERSION"),
            };
            write_record(&out.out, &record)?;
            Ok((h, v.is_ok() && sat.is_ok()))
        }),
    };
    match result {
        Ok((h, true)) => {
            println!("ok: {} edges, {}-uniform on {} vertices", h.edge_count(), h.k(), h.n());
            ExitCode::from(EXIT_OK)
        }
        Ok((_, false)) => {
            eprintln!("error: certificate failed re-verification after writing");
            ExitCode::from(EXIT_FALSE)
        }
        Err(e @ (Error::OutOfRange { .. } | Error::InvalidArgument(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FALSE)
        }
        Err(e) => input_error(&e),
    }
}

fn run_search(args: SearchArgs) -> ExitCode {
    let config = SearchConfig {
        symmetry: args.symmetry,
        all_solutions: args.all,
        node_limit: args.node_limit,
        time_limit: args.time_limit.map(Duration::from_secs_f64),
        threads: threads(args.parallel),
        deterministic: !args.nondeterministic,
    };
    let res = match solve_existence(args.n, args.t, args.s, &config) {
        Ok(r) => r,
        Err(e) => return input_error(&e),
    };
    let k = args.n - args.t;
    let mut certificate_path = None;
    let mut verdict = json!(null);
    if let (Some(out), Some(cert)) = (&args.out, &res.certificate) {
        match emit(out, cert, |x| verify_complementary(x, args.t, args.s)) {
            Ok(v) => verdict = json!(v),
            Err(e) => return input_error(&e),
        }
        certificate_path = Some(out.clone());
    }
    let status = match res.status {
        SearchStatus::Sat => "sat",
        SearchStatus::Unsat => "unsat",
        SearchStatus::Aborted => "aborted",
    };
    println!(
        "{status}: n={} t={} s={} (k={k}, r={}) nodes={} propagations={} time={:.3}s",
        args.n,
        args.t,
        args.s,
        k + args.s,
        res.stats.nodes,
        res.stats.propagations,
        res.stats.wall.as_secs_f64()
    );
    if args.all {
        println!("solutions: {}", res.solutions.len());
    }
    if let Some(out) = &args.out {
        let record = RunRecord {
            command: "search",
            theorem: None,
            params: json!({"n": args.n, "t": args.t, "s": args.s, "k": k, "r": k + args.s}),
            verdict: json!({"status": res.status, "certificate": verdict}),
            tau: None,
            certificate_path,
            stats: json!({
                "nodes": res.stats.nodes,
                "propagations": res.stats.propagations,
                "wall_seconds": res.stats.wall.as_secs_f64(),
                "solutions": res.solutions.len(),
            }),
            tool_version: env!("CARGO_PKG_VERSION"),
        };
        if let Err(e) = write_record(out, &record) {
            return input_error(&e);
        }
    }
    ExitCode::from(match res.status {
        SearchStatus::Sat => EXIT_OK,
        SearchStatus::Unsat => EXIT_FALSE,
        SearchStatus::Aborted => EXIT_ABORTED,
    })
}

fn run_table(args: TableArgs) -> ExitCode {
    let budget = TableBudget {
        nodes: args.budget_nodes,
        time: args.budget_secs.map(Duration::from_secs_f64),
        threads: threads(None),
        symmetry: args.symmetry,
    };
    let table = match existence_table(args.k, 1..=args.max_ell, 1..=args.max_s, &budget) {
        Ok(t) => t,
        Err(e) => return input_error(&e),
    };
    match args.format {
        TableFormat::Tsv => print!("{}", table.to_tsv()),
        TableFormat::Json => println!("{}", serde_json::to_string_pretty(&table).expect("tables serialize")),
    }
    ExitCode::from(EXIT_OK)
}

fn run_bounds(k: usize, ell: Option<usize>, tau: Option<usize>) -> ExitCode {
    if k < 1 {
        eprintln!("error: k must be at least 1");
        return ExitCode::from(EXIT_INPUT);
    }
    match (ell, tau) {
        (Some(ell), _) if ell >= 1 => {
            println!("nonexistence_bound(k={k}, ell={ell}) = {}", nonexistence_bound(k, ell))
        }
        (None, Some(tau)) if tau >= 1 => println!("tuza_bound(k={k}, tau={tau}) = {}", tuza_bound(k, tau)),
        (None, None) => {
            println!("ell\tnonexistence_bound");
            for ell in 1..=10 {
                println!("{ell}\t{}", nonexistence_bound(k, ell));
            }
        }
        _ => {
            eprintln!("error: ell and tau must be at least 1");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Verify { mode } => run_verify(mode),
        Command::Construct { family } => run_construct(family),
        Command::Search(args) => run_search(args),
        Command::Table(args) => run_table(args),
        Command::Bounds { k, ell, tau } => run_bounds(k, ell, tau),
    }
}
