use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperpack_core::auxgraph::{audit_degree_properties, audit_partition_regularity, AuditMode, PropertyFamily};
use hyperpack_core::cycles::{parse_packing, verify_packing};
use hyperpack_core::hypercore::{parse_hypergraph, write_hypergraph};
use hyperpack_core::packers::{brute_force_pm_oracle, parse_bipartite, pack_perfect_matchings};
use hyperpack_core::partitions::{Mode, DEFAULT_PSEUDO_EPS};
use hyperpack_core::pipeline::{run_packing, InputSource, RunConfig};
use hyperpack_core::{Error, Hypergraph, Regime, Result};

#[derive(Parser)]
#[command(name = "hyperpack", version, about = "Pack hypergraph edges into edge-disjoint Hamilton cycles or perfect matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random hypergraph H(n, p, k).
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the packing pipeline.
    Pack(PackArgs),
    /// Check a cycle or matching file against a hypergraph.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cycles: PathBuf,
    },
    /// Audit the pseudo-randomness properties of a hypergraph.
    Audit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = DEFAULT_PSEUDO_EPS)]
        eps: f64,
        /// Sample this many sets instead of enumerating exactly.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report_out: Option<PathBuf>,
    },
    /// Exact maximum number of edge-disjoint perfect matchings of a small bipartite graph.
    OraclePm {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct PackArgs {
    #[arg(long = "in", conflicts_with = "gen", required_unless_present = "gen")]
    input: Option<PathBuf>,
    /// Generate the input as `n,k,p`.
    #[arg(long)]
    gen: Option<String>,
    /// Seed for `--gen`; defaults to `--seed`.
    #[arg(long)]
    gen_seed: Option<u64>,
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    f0: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use the pseudo-random parameter formulas.
    #[arg(long)]
    pseudo_random: bool,
    #[arg(long)]
    cycles_out: Option<PathBuf>,
    #[arg(long)]
    report_out: Option<PathBuf>,
    /// `exact` or `sampled:COUNT`.
    #[arg(long)]
    audit: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
    /// Record wall time per stage in the report.
    #[arg(long)]
    timings: bool,
}

fn parse_audit(text: &str) -> Result<AuditMode> {
    match text.split_once(':') {
        None if text == "exact" => Ok(AuditMode::Exact),
        Some(("sampled", count)) => count
            .parse()
            .map(AuditMode::Sampled)
            .map_err(|_| Error::InvalidParameter(format!("bad sample count {count:?}"))),
        _ => Err(Error::InvalidParameter(format!("audit must be exact or sampled:COUNT, got {text:?}"))),
    }
}

fn parse_gen(text: &str, seed: u64) -> Result<InputSource> {
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || Error::InvalidParameter(format!("--gen expects n,k,p, got {text:?}"));
    let [n, k, p] = parts[..] else {
        return Err(bad());
    };
    Ok(InputSource::Generate {
        n: n.trim().parse().map_err(|_| bad())?,
        k: k.trim().parse().map_err(|_| bad())?,
        p: p.trim().parse().map_err(|_| bad())?,
        seed,
    })
}

fn read_hypergraph(path: &PathBuf) -> Result<Hypergraph> {
    parse_hypergraph(BufReader::new(File::open(path)?))
}

fn pack(args: PackArgs) -> Result<()> {
    let source = match (&args.input, &args.gen) {
        (Some(path), _) => InputSource::File(path.clone()),
        (None, Some(g)) => parse_gen(g, args.gen_seed.unwrap_or(args.seed))?,
        (None, None) => return Err(Error::InvalidParameter("one of --in or --gen is required".into())),
    };
    let mut config = RunConfig::new(source, args.ell, args.seed);
    config.overrides.r = args.r;
    config.overrides.f0 = args.f0;
    config.overrides.eps = args.eps;
    if args.pseudo_random {
        config.regime = Regime::PseudoRandom;
    }
    config.audit = args.audit.as_deref().map(parse_audit).transpose()?;
    config.workers = args.workers;
    config.record_timings = args.timings;
    config.cycles_out = args.cycles_out;
    config.report_out = args.report_out;
    let (_, report) = run_packing(&config)?;
    let t = &report.totals;
    println!(
        "items {} edges_used {} coverage {:.6} unlabeled {} labeled_unpacked {}",
        t.items, t.edges_used, t.coverage, t.unlabeled, t.labeled_unpacked
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { n, k, p, seed, out } => {
            let h = Hypergraph::generate(n, k, p, seed)?;
            write_hypergraph(&h, BufWriter::new(File::create(out)?))?;
            println!("m {}", h.m());
        }
        Command::Pack(args) => pack(args)?,
        Command::Validate { input, cycles } => {
            let h = read_hypergraph(&input)?;
            let packing = parse_packing(BufReader::new(File::open(cycles)?), h.m())?;
            let verdict = verify_packing(&h, &packing);
            println!("{}", serde_json::to_string(&verdict)?);
            if !verdict.is_ok() {
                return Err(Error::InvalidParameter("packing does not verify".into()));
            }
        }
        Command::Audit {
            input,
            ell,
            eps,
            samples,
            seed,
            report_out,
        } => {
            let h = read_hypergraph(&input)?;
            let mode = samples.map_or(AuditMode::Exact, AuditMode::Sampled);
            let reports = match Mode::for_case(h.k(), ell)? {
                Mode::BipartitionCycle => audit_degree_properties(&h, ell, eps, mode, PropertyFamily::P, seed)?,
                Mode::Matching => audit_degree_properties(&h, ell, eps, mode, PropertyFamily::R, seed)?,
                Mode::FullPartition => {
                    vec![audit_partition_regularity(&h, ell, eps, 20, samples.unwrap_or(1000), seed)?]
                }
            };
            for r in &reports {
                println!("{} {:?} measured {} bound {}", r.property, r.verdict, r.measured, r.bound);
            }
            if let Some(path) = report_out {
                std::fs::write(path, serde_json::to_string_pretty(&reports)?)?;
            }
        }
        Command::OraclePm { input } => {
            let g = parse_bipartite(BufReader::new(File::open(input)?))?;
            let oracle = brute_force_pm_oracle(&g)?;
            let flow = pack_perfect_matchings(&g)?.t();
            println!("oracle {oracle} flow {flow}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
