use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graphcx::enumerate::{ComplexSpec, Limits};
use graphcx::graph::{Parity, Side, Variant};
use graphcx::io::{resolve_cache_dir, weight1_table, Cache, Config, OutputFormat, Store, CACHE_ENV};
use graphcx::linalg::DimReport;
use graphcx::stable::{Family, StableSpec};
use graphcx::verify::{self, Params};
use std::path::PathBuf;
use std::process::ExitCode;

/// Decorated graph complexes: bases, exact homology and verification scenarios.
#[derive(Parser)]
#[command(name = "graphcx", version)]
struct Cli {
    /// Cache root; overrides the environment variable.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Compute everything afresh and write nothing to the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the choice of primes and for random instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest stratum that may be enumerated.
    #[arg(long, global = true)]
    max_stratum: Option<usize>,
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    #[arg(long, global = true)]
    max_edges: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate a graded basis.
    Basis {
        #[command(flatten)]
        spec: SpecArgs,
        /// Only the stratum sizes.
        #[arg(long)]
        summary: bool,
    },
    /// Homology dimensions, by degree for a given m or by E-number.
    Cohomology {
        #[command(flatten)]
        spec: SpecArgs,
        /// The degree parameter; its parity must match --parity.
        #[arg(long)]
        m: Option<i64>,
        /// Print raw E-number strata instead of degrees.
        #[arg(long)]
        e_number: bool,
    },
    /// Run verification scenarios (all when none are named).
    Verify {
        names: Vec<String>,
        /// Smaller ranges, a few seconds each.
        #[arg(long)]
        quick: bool,
        /// Number of random cores for the cgamma scenario.
        #[arg(long, default_value_t = 50)]
        cores: usize,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List the registered scenarios and exit.
        #[arg(long)]
        list: bool,
    },
    /// Print a recomputed table.
    Table {
        name: TableName,
        #[arg(long, default_value = "odd")]
        parity: Parity,
        #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    Weight1,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Markdown,
    Csv,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long, conflicts_with = "family")]
    variant: Option<Variant>,
    /// Two-colored invariant family: JTp, J or K.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long, default_value = "connected")]
    side: Side,
    /// Genus; for a family, only the scalar 2g(-1)^M depends on it.
    #[arg(long)]
    g: Option<u8>,
    /// Parity of m (default: from --m, else odd).
    #[arg(long)]
    parity: Option<Parity>,
    #[arg(long = "W", short = 'W')]
    w: i64,
    /// External legs of a family complex.
    #[arg(long = "M", default_value_t = 0)]
    legs: usize,
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("unknown family `{s}`"))
}

enum Spec {
    Graph(ComplexSpec),
    Stable(StableSpec),
}

impl SpecArgs {
    fn resolve(&self, m: Option<i64>) -> Result<Spec> {
        let from_m = m.map(Parity::from_m);
        let parity = match (self.parity, from_m) {
            (Some(p), Some(q)) if p != q => bail!("--parity {} conflicts with --m {}", p.name(), m.unwrap()),
            (Some(p), _) | (None, Some(p)) => p,
            (None, None) => Parity::Odd,
        };
        match (self.variant, self.family) {
            (Some(v), None) => {
                let g = self.g.context("--g is required with --variant")?;
                Ok(Spec::Graph(ComplexSpec::new(v, self.side, g, parity, self.w)))
            }
            (None, Some(f)) => {
                let s = StableSpec::new(f, parity, self.legs, self.w);
                Ok(Spec::Stable(match self.g {
                    Some(g) => s.with_g(g),
                    None => s,
                }))
            }
            _ => bail!("give exactly one of --variant and --family"),
        }
    }
}

fn config(cli: &Cli) -> Config {
    let d = Config::default();
    let env = std::env::var(CACHE_ENV).ok();
    Config {
        cache_dir: resolve_cache_dir(cli.cache_dir.as_deref(), env.as_deref()),
        threads: cli.threads,
        seed: cli.seed.unwrap_or(d.seed),
        limits: Limits {
            max_stratum: cli.max_stratum.unwrap_or(d.limits.max_stratum),
            max_vertices: cli.max_vertices.unwrap_or(d.limits.max_vertices),
            max_edges: cli.max_edges.unwrap_or(d.limits.max_edges),
        },
        format: if cli.json { OutputFormat::Json } else { OutputFormat::Text },
        use_cache: !cli.no_cache,
    }
}

fn print_report(r: &DimReport, m: Option<i64>, e_number: bool, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(r)?);
        return Ok(());
    }
    match m {
        Some(m) if !e_number => {
            for (deg, h) in r.by_degree(m) {
                println!("degree {deg}: {h}");
            }
        }
        _ => {
            for (e, h) in r.nonzero_homology() {
                println!("E={e}: {h}");
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = config(&cli);
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("thread pool")?;
    }
    let cache = cfg.use_cache.then(|| Cache::new(&cfg.cache_dir));
    let store = Store::new(cache.as_ref(), &cfg);
    let json = cfg.format == OutputFormat::Json;
    match &cli.cmd {
        Cmd::Basis { spec, summary } => {
            let (strata, summary_line, doc) = match spec.resolve(None)? {
                Spec::Graph(s) => {
                    let b = store.basis(s)?;
                    (b.strata.clone(), b.summary(), serde_json::to_value(&b)?)
                }
                Spec::Stable(s) => {
                    let b = store.stable_basis(s)?;
                    (b.strata.clone(), b.summary(), serde_json::to_value(&b)?)
                }
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else if *summary {
                if !summary_line.is_empty() {
                    println!("{summary_line}");
                }
            } else {
                for (e, encs) in &strata {
                    println!("E={e}:");
                    for enc in encs {
                        println!("  {enc}");
                    }
                }
            }
        }
        Cmd::Cohomology { spec, m, e_number } => {
            let r = match spec.resolve(*m)? {
                Spec::Graph(s) => store.cohomology(s)?,
                Spec::Stable(s) => store.stable_cohomology(s)?,
            };
            print_report(&r, *m, *e_number, json)?;
        }
        Cmd::Verify { names, quick, cores, report, list } => {
            if *list {
                for (name, summary, _) in verify::SCENARIOS {
                    println!("{name:20} {summary}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let params = Params { quick: *quick, seed: cli.seed.unwrap_or(Params::default().seed), cores: *cores };
            let rep = match verify::run_many(names, &params, &store) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(2));
                }
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&rep)?);
            } else {
                for r in &rep.runs {
                    print!("{}", verify::render(r));
                }
            }
            if let Some(path) = report {
                std::fs::write(path, serde_json::to_string_pretty(&rep)?).with_context(|| format!("writing {}", path.display()))?;
            }
            if !rep.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Cmd::Table { name: TableName::Weight1, parity, format } => {
            let t = weight1_table(&store, *parity)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&t)?);
            } else {
                match format {
                    TableFormat::Markdown => print!("{}", t.to_markdown()),
                    TableFormat::Csv => print!("{}", t.to_csv()),
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
