//! Command-line front end.
//!
//! Every command prints a line-oriented `key: value` report to the given
//! writer and returns an exit status:
//! 0 success, 1 invalid certificate or claim counterexample,
//! 2 usage or format error, 3 stuck solver or exhausted budget.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::equivalences::{
    conv_1_to_2, conv_2_to_3, conv_3_to_4, conv_4_to_1, parse_certificates, verify_packing,
    verify_pq_homomorphism, verify_cut_continuous_cycle, Certificate, CertError, Packing,
};
use crate::graphs::{cubic_completion, gen_high_girth_cubic, is_cycle, load_graph, write_edge_list, GenError, GenOptions, Graph};
use crate::labeling::CostTable;
use crate::menus::{verify_claim, ClaimConfig, SearchConfig};
use crate::optimizer::{solve, Outcome, SolveOptions, StuckReason};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_STUCK: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "clebsch", version, about = "Cut complement packings of subcubic graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustive menu search for the weight-2 repair claim.
    VerifyClaim {
        #[arg(long, default_value_t = 9)]
        d1: usize,
        #[arg(long, default_value_t = 8)]
        d2: usize,
        /// Drop menus with M(∅) < 0 after every level.
        #[arg(long)]
        prune: bool,
        /// Rerun with the opposite pruning setting and compare verdicts.
        #[arg(long)]
        cross_check: bool,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write every level as a canonical dump into this directory.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
        /// Cost table as five comma-separated integers a(0),...,a(4).
        #[arg(long, default_value = "0,1,10,40,1000")]
        cost: CostTable,
        #[arg(long, default_value_t = crate::menus::MenuSet::DEFAULT_CAPACITY)]
        capacity: usize,
    },
    /// Runs the local-improvement solver and writes certificates.
    Solve {
        graph: PathBuf,
        /// Regular auxiliary graph for completing a subcubic input.
        #[arg(long)]
        aux: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        max_iters: Option<u64>,
    },
    /// Converts a certificate between equivalent forms.
    Convert {
        #[arg(long, value_enum)]
        from: Form,
        #[arg(long, value_enum)]
        to: Form,
        graph: PathBuf,
        cert: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verifies a certificate; exits 0 only if it is valid.
    Check {
        #[arg(value_enum)]
        form: Form,
        graph: PathBuf,
        cert: PathBuf,
    },
    /// Generates a random cubic graph of prescribed girth.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        girth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Total swap attempts before giving up.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prints the girth of a graph, or `inf` for a forest.
    Girth { graph: PathBuf },
}

/// Certificate forms, in the order of the conversion cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    /// `2k` pairwise disjoint cut complements.
    Packing,
    /// `2k + 1` pairwise disjoint cut complements covering every edge.
    Partition,
    /// Homomorphism into the projective cube.
    Hom,
    /// Cut-continuous map onto an odd cycle.
    Cutcont,
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Stuck(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Stuck(_) => EXIT_STUCK,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn invalid(e: CertError) -> CliError {
    CliError::Invalid(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    let mut report = String::new();
    let result = dispatch(cli.command, &mut report);
    let _ = out.write_all(report.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32, CliError> {
    match cmd {
        Command::VerifyClaim {
            d1,
            d2,
            prune,
            cross_check,
            jobs,
            dump_dir,
            cost,
            capacity,
        } => {
            let cfg = ClaimConfig {
                d1,
                d2,
                search: SearchConfig { cost, capacity, prune },
                cross_check,
            };
            cmd_verify_claim(&cfg, jobs, dump_dir.as_deref(), out)
        }
        Command::Solve {
            graph,
            aux,
            out: cert,
            trace,
            max_iters,
        } => cmd_solve(&graph, aux.as_deref(), cert.as_deref(), trace.as_deref(), max_iters, out),
        Command::Convert {
            from,
            to,
            graph,
            cert,
            out: dest,
        } => cmd_convert(from, to, &graph, &cert, dest.as_deref(), out),
        Command::Check { form, graph, cert } => cmd_check(form, &graph, &cert, out),
        Command::Gen {
            n,
            girth,
            seed,
            budget,
            out: dest,
        } => {
            let mut opts = GenOptions::new(n, girth, seed);
            if let Some(b) = budget {
                opts.budget = b;
            }
            cmd_gen(&opts, dest.as_deref(), out)
        }
        Command::Girth { graph } => {
            let g = read_graph(&graph)?;
            match g.girth() {
                Some(k) => writeln!(out, "{k}").unwrap(),
                None => writeln!(out, "inf").unwrap(),
            }
            Ok(EXIT_OK)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    load_graph(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_verify_claim(cfg: &ClaimConfig, jobs: usize, dump_dir: Option<&Path>, out: &mut String) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(usage)?;
    let report = pool.install(|| verify_claim(cfg)).map_err(usage)?;
    let cost = &cfg.search.cost;
    writeln!(out, "command: verify-claim").unwrap();
    writeln!(out, "d1: {}", cfg.d1).unwrap();
    writeln!(out, "d2: {}", cfg.d2).unwrap();
    writeln!(out, "cost: {cost}").unwrap();
    writeln!(out, "prune: {}", cfg.search.prune).unwrap();
    for w in &report.levels {
        writeln!(out, "level {}: {}", w.depth, w.len()).unwrap();
    }
    writeln!(out, "root_fixed {}: {}", report.root_fixed.depth, report.root_fixed.len()).unwrap();
    writeln!(out, "triples: {}", report.outcome.triples).unwrap();
    for (s, &c) in report.outcome.histogram.iter().enumerate() {
        if c > 0 {
            writeln!(out, "witness {s}: {c}").unwrap();
        }
    }
    if let Some(agree) = report.cross_check {
        writeln!(out, "cross_check: {}", if agree { "agree" } else { "disagree" }).unwrap();
    }
    writeln!(out, "elapsed_s: {:.3}", report.elapsed.as_secs_f64()).unwrap();
    if let Some(dir) = dump_dir {
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        for w in &report.levels {
            write_file(&dir.join(format!("W{}.txt", w.depth)), &w.dump(cost))?;
        }
        let f = &report.root_fixed;
        write_file(&dir.join(format!("W{}_fixed.txt", f.depth)), &f.dump(cost))?;
    }
    if let Some(ce) = &report.outcome.counterexample {
        writeln!(out, "counterexample_w1: {}", ce.w1).unwrap();
        writeln!(out, "counterexample_w2: {}", ce.w2).unwrap();
        writeln!(out, "counterexample_w3: {}", ce.w3).unwrap();
    }
    let ok = report.passed();
    writeln!(out, "verdict: {}", if ok { "OK" } else { "FAIL" }).unwrap();
    Ok(if ok { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_solve(
    path: &Path,
    aux: Option<&Path>,
    cert: Option<&Path>,
    trace: Option<&Path>,
    max_iters: Option<u64>,
    out: &mut String,
) -> Result<i32, CliError> {
    let g = read_graph(path)?;
    if g.max_degree() > 3 {
        return Err(usage(format!("input has maximum degree {} > 3", g.max_degree())));
    }
    let work = if g.is_cubic() {
        g.clone()
    } else {
        let aux = aux.ok_or_else(|| usage("input is not cubic; pass --aux with a regular auxiliary graph"))?;
        cubic_completion(&g, &read_graph(aux)?).map_err(usage)?
    };
    let opts = SolveOptions {
        max_iters,
        ..SolveOptions::default()
    };
    let report = solve(&work, &opts).map_err(usage)?;
    writeln!(out, "command: solve").unwrap();
    writeln!(out, "n: {}", g.n()).unwrap();
    writeln!(out, "m: {}", g.m()).unwrap();
    writeln!(out, "solved_n: {}", work.n()).unwrap();
    writeln!(out, "iterations: {}", report.iterations).unwrap();
    writeln!(out, "final_cost: {}", report.final_cost(&opts.cost)).unwrap();
    if let Some(p) = trace {
        write_file(p, &report.trace_text())?;
    }
    match &report.outcome {
        Outcome::Wonderful => {}
        Outcome::Stuck { edge, reason } => {
            let (u, v) = work.endpoints(*edge);
            writeln!(out, "outcome: stuck").unwrap();
            writeln!(out, "edge: {u} {v}").unwrap();
            if let StuckReason::ShortCycle(c) = reason {
                debug_assert!(is_cycle(&work, c));
                let vs: Vec<String> = c.iter().map(usize::to_string).collect();
                writeln!(out, "cycle_length: {}", c.len()).unwrap();
                writeln!(out, "cycle: {}", vs.join(" ")).unwrap();
            }
            return Err(CliError::Stuck("solver is stuck".into()));
        }
        Outcome::IterationLimit => {
            writeln!(out, "outcome: iteration-limit").unwrap();
            return Err(CliError::Stuck("iteration limit reached".into()));
        }
    }
    writeln!(out, "outcome: wonderful").unwrap();
    // The input is copy 0 of the completion, so restricting to its vertices
    // keeps every certificate valid.
    let sets = report
        .vertex_sets()
        .into_iter()
        .map(|u| {
            let mut r = g.empty_vertex_set();
            r.extend(u.ones().filter(|&v| v < g.n()));
            r
        })
        .collect();
    let partition = conv_1_to_2(&g, &Packing::new(sets)).map_err(invalid)?;
    let hom = conv_2_to_3(&g, &partition).map_err(invalid)?;
    writeln!(out, "certificates: verified").unwrap();
    if let Some(p) = cert {
        let text = Certificate::Packing(partition).to_text(&g) + &Certificate::Hom(hom).to_text(&g);
        write_file(p, &text)?;
    }
    Ok(EXIT_OK)
}

/// Finds the block for `form` and verifies it.
fn load_form(g: &Graph, form: Form, certs: Vec<Certificate>) -> Result<Certificate, CliError> {
    let kind = match form {
        Form::Packing | Form::Partition => "packing",
        Form::Hom => "hom",
        Form::Cutcont => "cutcont",
    };
    let cert = certs
        .into_iter()
        .find(|c| c.kind() == kind)
        .ok_or_else(|| usage(format!("certificate has no {kind} block")))?;
    match &cert {
        Certificate::Packing(p) => {
            let even = p.len() % 2 == 0;
            if p.is_empty() || even != (form == Form::Packing) {
                return Err(invalid(CertError::Size(format!(
                    "{} sets is the wrong count for a {form:?} certificate",
                    p.len()
                ))));
            }
            verify_packing(g, p, form == Form::Partition).map_err(invalid)?;
        }
        Certificate::Hom(f) => verify_pq_homomorphism(g, f).map_err(invalid)?,
        Certificate::CutCont(c) => verify_cut_continuous_cycle(g, c).map_err(invalid)?,
        Certificate::Labeling(_) => unreachable!(),
    }
    Ok(cert)
}

fn read_cert(g: &Graph, path: &Path) -> Result<Vec<Certificate>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_certificates(g, &text).map_err(|e| match e {
        CertError::Parse { .. } => usage(format!("{}: {e}", path.display())),
        e => invalid(e),
    })
}

/// One step along packing → partition → hom → cutcont → packing.
fn step(g: &Graph, cert: &Certificate, form: Form) -> Result<(Certificate, Form), CertError> {
    Ok(match (cert, form) {
        (Certificate::Packing(p), Form::Packing) => (Certificate::Packing(conv_1_to_2(g, p)?), Form::Partition),
        (Certificate::Packing(p), Form::Partition) => (Certificate::Hom(conv_2_to_3(g, p)?), Form::Hom),
        (Certificate::Hom(f), _) => (Certificate::CutCont(conv_3_to_4(g, f)?), Form::Cutcont),
        (Certificate::CutCont(c), _) => {
            let mut p = conv_4_to_1(g, c)?;
            p.sets.pop();
            verify_packing(g, &p, false)?;
            (Certificate::Packing(p), Form::Packing)
        }
        _ => return Err(CertError::Invalid("unsupported certificate".into())),
    })
}

fn cmd_convert(from: Form, to: Form, graph: &Path, cert: &Path, dest: Option<&Path>, out: &mut String) -> Result<i32, CliError> {
    let g = read_graph(graph)?;
    let mut cur = load_form(&g, from, read_cert(&g, cert)?)?;
    let mut form = from;
    let mut path = vec![format!("{form:?}").to_lowercase()];
    while form != to {
        let (next, f) = step(&g, &cur, form).map_err(invalid)?;
        cur = next;
        form = f;
        path.push(format!("{form:?}").to_lowercase());
    }
    let text = cur.to_text(&g);
    writeln!(out, "command: convert").unwrap();
    writeln!(out, "path: {}", path.join(" -> ")).unwrap();
    match dest {
        Some(p) => write_file(p, &text)?,
        None => out.push_str(&text),
    }
    Ok(EXIT_OK)
}

fn cmd_check(form: Form, graph: &Path, cert: &Path, out: &mut String) -> Result<i32, CliError> {
    let g = read_graph(graph)?;
    load_form(&g, form, read_cert(&g, cert)?)?;
    writeln!(out, "valid: true").unwrap();
    Ok(EXIT_OK)
}

fn cmd_gen(opts: &GenOptions, dest: Option<&Path>, out: &mut String) -> Result<i32, CliError> {
    match gen_high_girth_cubic(opts) {
        Ok(r) => {
            let text = write_edge_list(&r.graph);
            writeln!(out, "command: gen").unwrap();
            writeln!(out, "n: {}", opts.n).unwrap();
            writeln!(out, "girth_target: {}", opts.girth).unwrap();
            let girth = r.graph.girth().map_or("inf".to_string(), |k| k.to_string());
            writeln!(out, "girth: {girth}").unwrap();
            writeln!(out, "attempts: {}", r.attempts).unwrap();
            writeln!(out, "accepted: {}", r.accepted).unwrap();
            writeln!(out, "restarts: {}", r.restarts).unwrap();
            match dest {
                Some(p) => write_file(p, &text)?,
                None => out.push_str(&text),
            }
            Ok(EXIT_OK)
        }
        Err(e @ GenError::Infeasible(_)) => Err(usage(e)),
        Err(e @ GenError::BudgetExhausted { .. }) => Err(CliError::Stuck(e.to_string())),
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock())
}
