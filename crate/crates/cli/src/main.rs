//! `sumprod`: colorings, configurations, searches and bounds from the
//! command line.
//!
//! Standard output carries only machine-readable payloads; notes go to
//! standard error. Exit codes: 0 success (or "avoiding"), 10 witnesses
//! found, 11 clean pipeline failure, 2 usage error, 3 I/O or format error,
//! 1 internal error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumprod_core::configurations::find_witnesses;
use sumprod_core::extraction::{extract_configuration_with, required_domain, ExtractionOptions};
use sumprod_core::lower_bounds::{h_lower_certificate, lift_coloring};
use sumprod_core::model::{read_coloring_auto, write_coloring};
use sumprod_core::ramsey::ramsey_number_with_budget;
use sumprod_core::search::{export_cnf, search_extremal, SearchOptions};
use sumprod_core::tower::{evaluate, h_lower, h_upper, Evaluation, TowerExpr};
use sumprod_core::{
    Certificate, CertificateBody, Coloring, Error, Format, Interval, PredicateId, PredicateTag,
};

const EXIT_WITNESSES: u8 = 10;
const EXIT_PIPELINE: u8 = 11;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_INTERNAL: u8 = 1;

#[derive(Parser)]
#[command(
    name = "sumprod",
    version,
    about = "Monochromatic sum-product configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List monochromatic configurations of a coloring.
    Verify(VerifyArgs),
    /// Search for the longest interval with an avoiding coloring.
    Search(SearchArgs),
    /// Lift a coloring of [1, L] to [2, 2^L] through the prime-factor count.
    Lift {
        file: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Emit an r-coloring of [1, 2^(2^r)] free of sum-product configurations.
    CertifyLower {
        #[arg(short = 'r', long = "colors")]
        r: u32,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run the constructive extraction on a coloring of [1, N].
    Extract {
        file: PathBuf,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(short = 'm', default_value_t = 2)]
        m: usize,
        /// Vertex cap for computing R(m + 1; r).
        #[arg(long, default_value_t = ExtractionOptions::default().ramsey_cap)]
        ramsey_cap: usize,
    },
    /// Compute the Ramsey number R(k; r).
    Ramsey {
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'r', long = "colors")]
        r: u32,
        #[arg(long, default_value_t = 16)]
        cap: usize,
        #[arg(long, default_value_t = sumprod_core::ramsey::DEFAULT_RAMSEY_NODES)]
        max_nodes: u64,
    },
    /// Print the lower and upper bounds and the required domain.
    Bounds {
        #[arg(short = 'r', long = "colors")]
        r: u32,
        #[arg(long, default_value_t = 1000)]
        digit_cap: u64,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(short = 'm', default_value_t = 2)]
        m: usize,
    },
    /// Write the avoidance problem as DIMACS CNF.
    Cnf {
        #[command(flatten)]
        predicate: PredicateArgs,
        #[arg(short = 'r', long = "colors")]
        r: u32,
        /// Largest integer of the domain [start, N].
        #[arg(short = 'N')]
        width: u64,
        #[arg(long, default_value_t = 1)]
        start: u64,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Extract from seeded random colorings and check every certificate.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 5000)]
        hi: u64,
        #[arg(short = 'r', long = "colors", default_value_t = 2)]
        r: u32,
    },
}

#[derive(Args)]
struct PredicateArgs {
    /// additive-schur, multiplicative-schur, sum-product, sum-product-weak
    /// or double-schur-product
    #[arg(long)]
    predicate: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    allow_equal: Option<bool>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    nontrivial: Option<bool>,
    /// Do not require the common value to be colored.
    #[arg(long)]
    weak: bool,
}

impl PredicateArgs {
    fn resolve(&self) -> sumprod_core::Result<PredicateId> {
        let mut p = PredicateId::parse(&self.predicate, self.n, self.m)?;
        if self.weak {
            match p.tag {
                PredicateTag::SumProduct { n, m } => {
                    p = PredicateId::sum_product_weak(n, m)?.with_nontrivial(p.nontrivial)
                }
                PredicateTag::SumProductWeak { .. } => {}
                _ => {
                    return Err(Error::InvalidArgument(
                        "--weak applies to sum-product predicates only".into(),
                    ))
                }
            }
        }
        if let Some(v) = self.allow_equal {
            p = p.with_allow_equal(v);
        }
        if let Some(v) = self.nontrivial {
            p = p.with_nontrivial(v);
        }
        Ok(p)
    }
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[command(flatten)]
    predicate: PredicateArgs,
    /// Stop after this many witnesses.
    #[arg(long, default_value_t = 100)]
    limit: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    predicate: PredicateArgs,
    #[arg(short = 'r', long = "colors")]
    r: u32,
    #[arg(long, default_value_t = 200)]
    cap: u64,
    #[arg(long, default_value_t = 1)]
    start: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = SearchOptions::default().max_nodes)]
    max_nodes: u64,
    /// Include wall time in the output (makes it run-dependent).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::RamseyFailure { .. } | Error::CapExceeded { .. } => EXIT_PIPELINE,
                Error::Io(_) | Error::Json(_) | Error::Parse { .. } => EXIT_IO,
                Error::InvalidInterval { .. }
                | Error::DomainTooLarge { .. }
                | Error::InvalidArgument(_) => EXIT_USAGE,
                Error::SelfCheckFailure(_) => EXIT_INTERNAL,
            };
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return EXIT_IO;
        }
    }
    EXIT_INTERNAL
}

fn load(path: &Path) -> anyhow::Result<Coloring> {
    let file = File::open(path)
        .map_err(Error::from)
        .with_context(|| format!("opening {}", path.display()))?;
    read_coloring_auto(io::BufReader::new(file))
        .with_context(|| format!("reading {}", path.display()))
}

fn print_json(value: &impl serde::Serialize) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(Error::from)?;
    writeln!(out).map_err(Error::from)?;
    Ok(())
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Verify(args) => verify(args),
        Command::Search(args) => search(args),
        Command::Lift { file, format } => {
            let lifted = lift_coloring(&load(&file)?)?;
            write_coloring(&lifted, format, io::stdout().lock())?;
            Ok(0)
        }
        Command::CertifyLower { r, format } => {
            let cert = h_lower_certificate(r)?;
            write_coloring(&cert.coloring, format, io::stdout().lock())?;
            eprintln!("coloring of {} with {r} colors", cert.coloring.domain());
            for check in &cert.checks {
                eprintln!("self-check {}: {} found", check.name, check.witnesses_found);
            }
            eprintln!(
                "no nontrivial sum-product configuration, so H({r}) > {}",
                cert.coloring.domain().hi()
            );
            Ok(0)
        }
        Command::Extract {
            file,
            n,
            m,
            ramsey_cap,
        } => {
            let c = load(&file)?;
            let options = ExtractionOptions {
                ramsey_cap,
                ..ExtractionOptions::default()
            };
            let cert = extract_configuration_with(&c, n, m, options)?;
            eprintln!(
                "value {} = sum of {:?} = product of {:?}, color {}",
                cert.witness.value, cert.witness.addends, cert.witness.factors, cert.pair_color
            );
            if cert.degenerate {
                eprintln!("note: some factor equals 1");
            }
            print_json(&Certificate::new(
                CertificateBody::Extraction(Box::new(cert)),
                &c,
            ))?;
            Ok(0)
        }
        Command::Ramsey {
            k,
            r,
            cap,
            max_nodes,
        } => {
            let outcome = ramsey_number_with_budget(k, r, cap, max_nodes)?;
            match outcome.exact() {
                Some(v) => eprintln!("R({k}; {r}) = {v}"),
                None => eprintln!("R({k}; {r}) not settled within the cap or budget"),
            }
            print_json(&outcome)?;
            Ok(0)
        }
        Command::Bounds { r, digit_cap, n, m } => bounds(r, digit_cap, n, m),
        Command::Cnf {
            predicate,
            r,
            width,
            start,
            output,
        } => {
            let p = predicate.resolve()?;
            if width < start {
                return Err(
                    Error::InvalidArgument(format!("N = {width} is below start {start}")).into(),
                );
            }
            let cnf = export_cnf(&p, r, start, width)?;
            let file = File::create(&output)
                .map_err(Error::from)
                .with_context(|| format!("creating {}", output.display()))?;
            let mut w = BufWriter::new(file);
            w.write_all(cnf.to_dimacs().as_bytes())
                .map_err(Error::from)?;
            w.flush().map_err(Error::from)?;
            eprintln!("{} variables, {} clauses", cnf.num_vars, cnf.clauses.len());
            Ok(0)
        }
        Command::Fuzz { seed, count, hi, r } => fuzz(seed, count, hi, r),
    }
}

fn verify(args: VerifyArgs) -> anyhow::Result<u8> {
    let c = load(&args.file)?;
    let p = args.predicate.resolve()?;
    let witnesses = find_witnesses(&c, &p, args.limit.max(1));
    if witnesses.is_empty() {
        println!("avoiding");
        return Ok(0);
    }
    let mut out = io::stdout().lock();
    for w in witnesses {
        serde_json::to_writer(&mut out, &Certificate::new(w, &c)).map_err(Error::from)?;
        writeln!(out).map_err(Error::from)?;
    }
    Ok(EXIT_WITNESSES)
}

fn search(args: SearchArgs) -> anyhow::Result<u8> {
    let p = args.predicate.resolve()?;
    let options = SearchOptions {
        jobs: args.jobs.max(1),
        max_nodes: args.max_nodes,
        record_time: args.timing,
    };
    let outcome = search_extremal(&p, args.r, args.cap, args.start, options)?;
    match outcome.forced_at() {
        Some(n) => eprintln!("forced at {n}"),
        None => eprintln!("avoidable up to {}", outcome.avoidable_up_to()),
    }
    print_json(&outcome)?;
    Ok(0)
}

fn describe(name: &str, e: &TowerExpr, digit_cap: u64) -> Vec<String> {
    let mut lines = vec![format!("{name} = {e}")];
    match evaluate(e, digit_cap) {
        Evaluation::Exact(v) => {
            if v.to_string() != e.to_string() {
                lines.push(format!("{name} value = {v}"));
            }
        }
        other => lines.push(format!("{name} size = {other}")),
    }
    lines
}

fn bounds(r: u32, digit_cap: u64, n: usize, m: usize) -> anyhow::Result<u8> {
    if r == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()).into());
    }
    let mut lines = Vec::new();
    lines.extend(describe("H lower", &h_lower(u64::from(r)), digit_cap));
    lines.extend(describe("H upper", &h_upper(u64::from(r)), digit_cap));
    let domain = required_domain(n, m, r)?;
    lines.extend(describe(
        &format!("required domain (n = {n}, m = {m})"),
        &domain.expr,
        digit_cap,
    ));
    for s in &domain.substitutions {
        let how = if s.exact { "exact" } else { "upper bound" };
        lines.push(format!(
            "R({}; {}) <= {} ({how})",
            s.clique_size, s.colors, s.value
        ));
    }
    if r == 1 {
        eprintln!("note: the displayed bounds are meant for r >= 2");
    }
    let mut out = io::stdout().lock();
    for line in lines {
        writeln!(out, "{line}").map_err(Error::from)?;
    }
    Ok(0)
}

fn fuzz(seed: u64, count: u64, hi: u64, r: u32) -> anyhow::Result<u8> {
    if r == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()).into());
    }
    let domain = Interval::new(1, hi)?;
    let mut successes = 0u64;
    let mut failures = 0u64;
    for run in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(run));
        let c = Coloring::from_fn(domain, r, |_| rng.gen_range(0..r))?;
        match extract_configuration_with(&c, 2, 2, ExtractionOptions::default()) {
            Ok(cert) => {
                if let Err(v) = cert.verify(&c) {
                    return Err(Error::SelfCheckFailure(format!("run {run}: {v}")).into());
                }
                successes += 1;
            }
            Err(Error::RamseyFailure { .. }) => failures += 1,
            Err(e) => return Err(e).with_context(|| format!("run {run}")),
        }
    }
    print_json(&serde_json::json!({
        "seed": seed,
        "runs": count,
        "certificates": successes,
        "ramsey_failures": failures,
    }))?;
    Ok(0)
}
