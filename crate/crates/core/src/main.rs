use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symplectic_brauer::diagram_algebra::TripleMode;
use symplectic_brauer::invariants::{dimension_table, king_tableaux, weyl_dim_c, Partition};
use symplectic_brauer::scalars::FieldSpec;
use symplectic_brauer::verification::{self as v, CheckReport, Job};

const USAGE_EXIT: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Exact checks for truncated symplectic Brauer algebras")]
struct Cli {
    /// List every check with the statement it verifies.
    #[arg(long)]
    list: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one check.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Graded dimension table as CSV.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_l: usize,
    },
    /// Tableau counts against Weyl dimensions, or the tableaux of one shape.
    Tableaux {
        #[arg(long, default_value_t = 4)]
        max_l: usize,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        /// Comma-separated parts, e.g. 2,1; lists its tableaux for `--m`.
        #[arg(long, requires = "m")]
        shape: Option<String>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// The default grid. With `--out FILE` a CSV summary goes to FILE.csv.
    All {
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Check {
    DoubleCentraliser,
    Faithfulness,
    Homomorphism,
    Ideal,
    Schur,
    Associativity,
    SignTwist,
    Pfaffian,
    HomogeneousEnvelope,
}

#[derive(Args, Debug)]
struct VerifyOpts {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, default_value = "q")]
    field: FieldSpec,
    #[arg(long)]
    seed: Option<u64>,
    /// Highest degree in the graded ideal comparison.
    #[arg(long)]
    max_l: Option<usize>,
    /// Sampled triples for associativity; exhaustive when omitted.
    #[arg(long)]
    samples: Option<usize>,
}

struct Usage(String);

fn need<T>(x: Option<T>, flag: &str, check: &str) -> Result<T, Usage> {
    x.ok_or_else(|| Usage(format!("{check} requires --{flag}")))
}

fn job_for(check: Check, o: &VerifyOpts) -> Result<(Job, u64), Usage> {
    let name = check.to_possible_value().expect("no skipped variants").get_name().to_string();
    let ns = || Ok::<_, Usage>((need(o.n, "n", &name)?, need(o.s, "s", &name)?));
    let seed = || need(o.seed, "seed", &name);
    Ok(match check {
        Check::Homomorphism => {
            let (n, s) = ns()?;
            (Job::Homomorphism(n, s), 0)
        }
        Check::Faithfulness => {
            let (n, s) = ns()?;
            (Job::Faithfulness(n, s), 0)
        }
        Check::Ideal => {
            let (n, s) = ns()?;
            (Job::Ideal(n, s, o.max_l.unwrap_or(s)), 0)
        }
        Check::DoubleCentraliser => {
            let (n, s) = ns()?;
            (Job::DoubleCentraliser(n, s, o.field), seed()?)
        }
        Check::HomogeneousEnvelope => {
            let (n, s) = ns()?;
            (Job::HomogeneousEnvelope(n, s, o.field), seed()?)
        }
        Check::Schur => {
            let (n, s) = ns()?;
            (Job::Schur(n, s), seed()?)
        }
        Check::Pfaffian => {
            let (n, s) = ns()?;
            (Job::Pfaffian(n, s), seed()?)
        }
        Check::SignTwist => (Job::SignTwist(need(o.s, "s", &name)?), 0),
        Check::Associativity => {
            let s = need(o.s, "s", &name)?;
            match o.samples {
                None => (Job::Associativity(s, TripleMode::Exhaustive), 0),
                Some(count) => {
                    let seed = seed()?;
                    (Job::Associativity(s, TripleMode::Sampled { count, seed }), seed)
                }
            }
        }
    })
}

fn render(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => v::to_json(reports),
        Format::Csv => v::to_csv(reports),
        Format::Pretty => v::to_pretty(reports),
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(k) = std::env::var("BRAUER_THREADS").ok().and_then(|x| x.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    let out = cli.out.as_deref();
    let io = |e: std::io::Error| Usage(format!("cannot write output: {e}"));
    if cli.list {
        let text: String = v::CATALOGUE.iter().map(|(name, what)| format!("{name:<22} {what}\n")).collect();
        emit(out, &text).map_err(io)?;
        return Ok(ExitCode::SUCCESS);
    }
    let Some(command) = cli.command else {
        return Err(Usage("no command given".into()));
    };
    match command {
        Command::Verify { check, opts } => {
            let (job, seed) = job_for(check, &opts)?;
            let report = v::run_job(&job, seed).map_err(|e| Usage(e.to_string()))?;
            let reports = [report];
            emit(out, &render(&reports, cli.format)).map_err(io)?;
            Ok(ExitCode::from(v::exit_code(&reports) as u8))
        }
        Command::Dims { n, max_l } => {
            let rows = dimension_table(n, max_l).map_err(|e| Usage(e.to_string()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(|e| Usage(e.to_string()))?;
            }
            let text = String::from_utf8(w.into_inner().expect("flush")).expect("utf8");
            emit(out, &text).map_err(io)?;
            Ok(if rows.iter().all(|r| r.pass) { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Tableaux { shape: Some(shape), m, .. } => {
            let m = m.expect("clap enforces --m");
            let parts: Result<Vec<usize>, _> = shape.split(',').filter(|p| !p.is_empty()).map(|p| p.trim().parse()).collect();
            let shape = Partition::new(parts.map_err(|_| Usage(format!("bad shape {shape:?}")))?);
            let tabs = king_tableaux(&shape, m).map_err(|e| Usage(e.to_string()))?;
            let weyl = weyl_dim_c(&shape, m).map_err(|e| Usage(e.to_string()))?;
            let mut text = format!("shape {shape} m={m} count={} weyl={weyl}\n", tabs.len());
            for t in &tabs {
                text += &format!("{t}\n");
            }
            emit(out, &text).map_err(io)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tableaux { max_l, max_m, .. } => {
            let reports = [v::check_tableaux(max_l, max_m)];
            emit(out, &render(&reports, cli.format)).map_err(io)?;
            Ok(ExitCode::from(v::exit_code(&reports) as u8))
        }
        Command::All { seed } => {
            let seed = need(seed, "seed", "all")?;
            let reports = v::run_all(seed);
            emit(out, &render(&reports, cli.format)).map_err(io)?;
            if let Some(p) = out {
                fs::write(p.with_extension("csv"), v::to_csv(&reports)).map_err(io)?;
            }
            Ok(ExitCode::from(v::exit_code(&reports) as u8))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(USAGE_EXIT);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}\n\nUsage: brauer [--list] [--out FILE] [--format json|csv|pretty] <verify|dims|tableaux|all> ...");
            ExitCode::from(USAGE_EXIT)
        }
    }
}
