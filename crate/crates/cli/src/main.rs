//! `sgcc`: circuit covers of signed cubic graphs from the command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sgcc_core::generate::random_signed_cubic;
use sgcc_core::{
    cdc_exists, cover_even_with, cover_main_with, exact_scc, gen_no_cdc, is_two_edge_connected, negativeness_with,
    parse_cover, parse_signed_graph, signed_girth, verify_records, write_cover, CdcOutcome, CoverOptions, Error,
    NegativenessBudget, OracleBudget, OracleStatus, SignedGraph, TreePortfolio,
};

#[derive(Parser)]
#[command(name = "sgcc", version, about = "Short circuit covers of signed cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Largest vertex count for exact negativeness.
    #[arg(long, default_value_t = 26)]
    max_n: usize,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print size, connectivity, negativeness and signed girth.
    Analyze {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build a circuit cover.
    Cover {
        graph: PathBuf,
        /// Use the even-negativeness pipeline only.
        #[arg(long)]
        even_only: bool,
        /// Print the report as JSON after the cover.
        #[arg(long)]
        json: bool,
        /// Seed for the random spanning trees.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the exact oracle for up to this many seconds and report the gap.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a cover file against a graph and print the report.
    Verify {
        graph: PathBuf,
        cover: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Exact shortest circuit cover.
    OracleScc {
        graph: PathBuf,
        /// Time limit in seconds.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether a circuit double cover exists.
    OracleCdc {
        graph: PathBuf,
        /// Time limit in seconds.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Sign a cubic graph with a 2-edge-cut so that it has no circuit double cover.
    GenNoCdc {
        graph: PathBuf,
        /// The two cut edges (1-based); found automatically when omitted.
        #[arg(long, num_args = 2, value_names = ["E1", "E2"])]
        cut: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// Random 2-edge-connected cubic signed graph.
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        negatives: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::LoopEdge { .. }
            | Error::VertexOutOfRange { .. }
            | Error::EdgeCountMismatch { .. }
            | Error::UnknownVertex(_)
            | Error::UnknownEdge(_) => 1,
            Error::ExactUnavailable { .. } | Error::BudgetExceeded => 3,
            Error::BoundViolation(_) | Error::Internal(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: String) -> Failure {
    Failure { code: 1, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<SignedGraph, Failure> {
    parse_signed_graph(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Output gathered in memory and written in one go at the end.
struct Output {
    text: String,
    code: u8,
}

fn ok(text: String) -> Output {
    Output { text, code: 0 }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(command: Command) -> Result<(Output, Option<PathBuf>), Failure> {
    match command {
        Command::Analyze { graph, common } => {
            let g = read_graph(&graph)?;
            let summary = negativeness_with(
                &g,
                NegativenessBudget {
                    max_vertices: common.max_n,
                },
            )?;
            let gs = signed_girth(&g).map_or("inf".to_string(), |x| x.to_string());
            let text = format!(
                "n={} m={} cubic={} 2ec={} eps={} flow-admissible={} gs={gs}\n",
                g.vertex_count(),
                g.edge_count(),
                yes_no(g.is_cubic()),
                yes_no(is_two_edge_connected(&g).two_edge_connected()),
                summary.negativeness,
                yes_no(summary.flow_admissible),
            );
            Ok((ok(text), common.out))
        }
        Command::Cover {
            graph,
            even_only,
            json,
            seed,
            budget,
            common,
        } => {
            let g = read_graph(&graph)?;
            let opts = CoverOptions {
                negativeness: NegativenessBudget {
                    max_vertices: common.max_n,
                },
                portfolio: TreePortfolio {
                    seed,
                    ..TreePortfolio::default()
                },
                ..CoverOptions::default()
            };
            let (fam, mut report) = if even_only {
                cover_even_with(&g, &opts)?
            } else {
                cover_main_with(&g, &opts)?
            };
            if let Some(secs) = budget {
                if let Ok(r) = exact_scc(&g, OracleBudget::seconds(secs)) {
                    if r.status == OracleStatus::Exact {
                        report.set_oracle_optimum(r.optimum);
                    }
                }
            }
            let mut text = format!("# seed {seed}\n{}", write_cover(&fam));
            if json {
                writeln!(text, "{}", report.to_json()).expect("write to string");
            }
            let code = if report.within_expected_bound() { 0 } else { 4 };
            if code != 0 {
                eprintln!(
                    "sgcc: cover of length {} misses its bound (m = {})",
                    report.length, report.m
                );
            }
            Ok((Output { text, code }, common.out))
        }
        Command::Verify { graph, cover, common } => {
            let g = read_graph(&graph)?;
            // accept `cover --json` output verbatim: report lines are blanked, keeping line numbers
            let text: String = read(&cover)?
                .lines()
                .map(|l| {
                    if l.trim_start().starts_with('{') {
                        "\n".to_string()
                    } else {
                        format!("{l}\n")
                    }
                })
                .collect();
            let records = parse_cover(&text).map_err(|e| invalid(format!("{}: {e}", cover.display())))?;
            let mut report = verify_records(&g, &records);
            report.branch = "verify".into();
            let mut text = format!("{}\n", report.to_json());
            for (i, why) in &report.invalid_members {
                writeln!(text, "# member {}: {why}", i + 1).expect("write to string");
            }
            let code = if report.valid { 0 } else { 1 };
            Ok((Output { text, code }, common.out))
        }
        Command::OracleScc { graph, budget, common } => {
            let g = read_graph(&graph)?;
            let r = exact_scc(&g, budget.map(OracleBudget::seconds).unwrap_or_default())?;
            let text = format!("{}{}\n", write_cover(&r.witness), r.stats_json());
            let code = if r.status == OracleStatus::Exact { 0 } else { 3 };
            Ok((Output { text, code }, common.out))
        }
        Command::OracleCdc { graph, budget, common } => {
            let g = read_graph(&graph)?;
            let (outcome, nodes) = cdc_exists(&g, budget.map(OracleBudget::seconds).unwrap_or_default())?;
            let (text, code) = match outcome {
                CdcOutcome::Exists(fam) => (format!("# cdc yes, {nodes} nodes\n{}", write_cover(&fam)), 0),
                CdcOutcome::NotExists => (format!("# cdc no, {nodes} nodes\n"), 0),
                CdcOutcome::Unknown => (format!("# cdc unknown, {nodes} nodes\n"), 3),
            };
            Ok((Output { text, code }, common.out))
        }
        Command::GenNoCdc { graph, cut, common } => {
            let g = read_graph(&graph)?;
            let cut = match cut.as_deref() {
                Some(&[a, b]) if a > 0 && b > 0 => Some((a - 1, b - 1)),
                Some(_) => return Err(invalid("cut edges are 1-based ids".into())),
                None => None,
            };
            Ok((ok(gen_no_cdc(&g, cut)?.to_text()), common.out))
        }
        Command::GenRandom {
            n,
            negatives,
            seed,
            common,
        } => {
            let g = random_signed_cubic(n, negatives, seed)?;
            let text = format!("# gen-random n {n} negatives {negatives} seed {seed}\n{}", g.to_text());
            Ok((ok(text), common.out))
        }
    }
}

/// Writes through a sibling temporary file so readers never see a partial file.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}

fn configure_threads() {
    let threads = std::env::var("SGCC_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok());
    if let Some(n) = threads.filter(|&n| n > 0) {
        // a second initialisation can only fail if something already built the pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((out, path)) => {
            match path {
                Some(p) => {
                    if let Err(e) = write_atomically(&p, &out.text) {
                        eprintln!("sgcc: {}: {e}", p.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("sgcc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
