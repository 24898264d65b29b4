//! Command-line driver: validate documents, classify surfaces, inspect
//! spirality, build witness sequences, trace crossing bounds, export DOT.
//!
//! Exit codes: 0 success, 1 validation failure, 2 parse failure (input
//! document, trace config, or malformed argument syntax), 3 precondition
//! failure (unknown component, trivial witness cycle, inconsistent trace
//! config).

use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use surfdist::document::{parse_trace_config, TraceDefaults};
use surfdist::rational::{parse_positive_rational, Rational};
use surfdist::{
    almost_fiber, analyze, build_witness, export_dot, governor, lambda_bound, parse_input,
    render_json, render_text, spirality, supercritical_cycle_through_gi, trace_bounds, validate,
    verify_witness, weight, DirectedCycle, Document, XiPeriod,
};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "surfdist",
    version,
    about = "Spirality, separability and distortion classification for surfaces in non-geometric 3-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against every model invariant.
    Validate { file: PathBuf },
    /// Full analysis: validation, spirality per component, classification.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Spirality details of the almost-fiber components.
    Spirality {
        file: PathBuf,
        /// Restrict to the component containing this piece.
        #[arg(long)]
        component: Option<String>,
    },
    /// Build and verify a witness sequence along a directed cycle.
    Witness {
        file: PathBuf,
        /// Cycle as `curve[:fwd|rev],...`.
        #[arg(long)]
        cycle: String,
        /// Seed bound as a positive rational `p/q`.
        #[arg(long)]
        mu: String,
        /// Number of sequence steps to build.
        #[arg(long)]
        steps: usize,
    },
    /// Trace the crossing recurrences for a config file.
    Trace {
        file: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Export the surface dual graph as DOT.
    ExportDot { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes, like other unix filters
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Report { file, format } => cmd_report(&file, format),
        Command::Spirality { file, component } => cmd_spirality(&file, component.as_deref()),
        Command::Witness {
            file,
            cycle,
            mu,
            steps,
        } => cmd_witness(&file, &cycle, &mu, steps),
        Command::Trace { file, config } => cmd_trace(&file, &config),
        Command::ExportDot { file } => cmd_export_dot(&file),
    }
}

fn load_document(path: &Path) -> Result<Document, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        EXIT_PARSE
    })?;
    parse_input(&text).map_err(|failure| {
        for issue in &failure.issues {
            eprintln!("{issue}");
        }
        EXIT_PARSE
    })
}

fn cmd_validate(file: &Path) -> u8 {
    let doc = match load_document(file) {
        Ok(doc) => doc,
        Err(code) => return code,
    };
    let report = validate(&doc.manifold, &doc.surface);
    if report.is_valid() {
        println!("ok");
        EXIT_OK
    } else {
        print!("{report}");
        EXIT_INVALID
    }
}

fn cmd_report(file: &Path, format: Format) -> u8 {
    let doc = match load_document(file) {
        Ok(doc) => doc,
        Err(code) => return code,
    };
    let report = analyze(&doc);
    match format {
        Format::Text => print!("{}", render_text(&report)),
        Format::Json => print!("{}", render_json(&report)),
    }
    if report.valid {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn cmd_spirality(file: &Path, piece: Option<&str>) -> u8 {
    let doc = match load_document(file) {
        Ok(doc) => doc,
        Err(code) => return code,
    };
    let validation = validate(&doc.manifold, &doc.surface);
    if !validation.is_valid() {
        eprint!("{validation}");
        return EXIT_INVALID;
    }
    let components = almost_fiber(&doc.surface);
    let selected: Vec<_> = match piece {
        None => components.iter().collect(),
        Some(id) => {
            let found: Vec<_> = components
                .iter()
                .filter(|c| c.pieces.contains(id))
                .collect();
            if found.is_empty() {
                eprintln!("piece {id:?} is not in any almost-fiber component");
                return EXIT_PRECONDITION;
            }
            found
        }
    };
    for (i, component) in selected.iter().enumerate() {
        if i > 0 {
            println!();
        }
        let hom = spirality(&doc.surface, component);
        println!("component {}", i + 1);
        println!(
            "  pieces: {}",
            component.pieces.iter().cloned().collect::<Vec<_>>().join(", ")
        );
        println!(
            "  spirality: {}",
            if hom.trivial { "trivial" } else { "nontrivial" }
        );
        println!(
            "  separable: {}",
            if hom.trivial { "yes" } else { "no" }
        );
        println!("  governor: {}", governor(&doc.surface, component));
        if let Ok(lambda) = lambda_bound(&doc.surface, component) {
            println!("  lambda: {lambda}");
        }
        for (cycle, w) in &hom.basis {
            println!("  basis cycle: {cycle}  weight {w}");
        }
        if let Ok(cycle) = supercritical_cycle_through_gi(&doc.surface, component) {
            println!("  supercritical cycle: {cycle}");
        }
    }
    EXIT_OK
}

fn cmd_witness(file: &Path, cycle_spec: &str, mu_spec: &str, steps: usize) -> u8 {
    let doc = match load_document(file) {
        Ok(doc) => doc,
        Err(code) => return code,
    };
    let validation = validate(&doc.manifold, &doc.surface);
    if !validation.is_valid() {
        eprint!("{validation}");
        return EXIT_INVALID;
    }
    let cycle = match DirectedCycle::from_str(cycle_spec) {
        Ok(cycle) => cycle,
        Err(e) => {
            eprintln!("cannot parse cycle: {e}");
            return EXIT_PARSE;
        }
    };
    let mu = match parse_positive_rational(mu_spec) {
        Ok(mu) => mu,
        Err(e) => {
            eprintln!("cannot parse mu: {e}");
            return EXIT_PARSE;
        }
    };
    if steps == 0 {
        eprintln!("steps must be at least 1");
        return EXIT_PRECONDITION;
    }
    if let Err(e) = cycle.validate(&doc.surface) {
        eprintln!("invalid cycle: {e}");
        return EXIT_PRECONDITION;
    }
    let w = weight(&doc.surface, &cycle);
    if w == Rational::from_integer(1.into()) {
        eprintln!("cycle has trivial weight 1: no witness growth to demonstrate");
        return EXIT_PRECONDITION;
    }
    let ratios: Vec<Rational> = cycle
        .edges
        .iter()
        .map(|e| {
            let curve = doc.surface.curve(&e.curve).expect("validated cycle");
            surfdist::xi(curve, e.orientation)
        })
        .collect();
    let period = XiPeriod::new(ratios).expect("validated cycle is nonempty");
    let ws = build_witness(&period, &mu, steps);
    println!("cycle: {cycle}");
    println!(
        "period: {} (m = {}, w = {})",
        period
            .ratios()
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        period.len(),
        ws.w
    );
    println!("mu: {mu}  t0: {}", ws.t[0]);
    println!("A: {}  D: {}", ws.a_bound, ws.d_bound);
    println!("{:>6}  {:>8}  t_j", "j", "xi_j");
    println!("{:>6}  {:>8}  {}", 0, "-", ws.t[0]);
    for j in 1..ws.t.len() {
        println!("{:>6}  {:>8}  {}", j, period.ratio_at(j).to_string(), ws.t[j]);
    }
    let verification = verify_witness(&ws);
    let line = |name: &str, ok: bool| {
        println!("  {name}: {}", if ok { "pass" } else { "FAIL" });
    };
    println!("certificates:");
    line("quotients integral", verification.quotients_integral);
    line("step bounds", verification.steps_in_range);
    line("lower growth", verification.lower_growth);
    line("log upper bound", verification.log_upper_bound);
    if verification.all_passed() {
        EXIT_OK
    } else {
        EXIT_PRECONDITION
    }
}

fn cmd_trace(file: &Path, config: &Path) -> u8 {
    let doc = match load_document(file) {
        Ok(doc) => doc,
        Err(code) => return code,
    };
    let text = match std::fs::read_to_string(config) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("cannot read {}: {e}", config.display());
            return EXIT_PARSE;
        }
    };
    let defaults: Option<&TraceDefaults> = doc.trace_defaults.as_ref();
    let cfg = match parse_trace_config(&text, defaults) {
        Ok(cfg) => cfg,
        Err(failure) => {
            for issue in &failure.issues {
                eprintln!("{issue}");
            }
            return EXIT_PARSE;
        }
    };
    let report = match trace_bounds(&cfg) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_PRECONDITION;
        }
    };
    println!(
        "crossings: {}  n: {}  L': {}  rho: {}  epsilon: {}",
        cfg.crossings.len(),
        cfg.total_distance(),
        cfg.l_prime,
        cfg.rho,
        cfg.governor
    );
    println!("{:>4}  {:>16}  {:>16}  {:>16}", "j", "a_j", "b_j", "claim2_j");
    for j in 0..report.a.len() {
        println!(
            "{:>4}  {:>16}  {:>16}  {:>16}",
            j + 1,
            report.a[j].to_string(),
            report.b[j].to_string(),
            report.claim2[j].to_string()
        );
    }
    println!(
        "claim2 (b_j <= L'*n*sum eps^i): {}",
        if report.claim2_holds() { "holds" } else { "VIOLATED" }
    );
    match (&report.claim3, report.claim3_holds()) {
        (Some(cap), Some(ok)) => {
            println!(
                "claim3 (b_j <= Lambda*L'*n = {cap}): {}",
                if ok { "holds" } else { "VIOLATED" }
            );
        }
        _ => println!("claim3: not applicable (no Lambda configured)"),
    }
    println!("log_sum: {}", report.log_sum);
    EXIT_OK
}

fn cmd_export_dot(file: &Path) -> u8 {
    let doc = match load_document(file) {
        Ok(doc) => doc,
        Err(code) => return code,
    };
    let validation = validate(&doc.manifold, &doc.surface);
    if !validation.is_valid() {
        eprint!("{validation}");
        return EXIT_INVALID;
    }
    print!("{}", export_dot(&doc));
    EXIT_OK
}
