use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use c2_core::c2::{compute_c2, MethodChoice};
use c2_core::catalog::Catalog;
use c2_core::coeff::random::DEFAULT_SEED;
use c2_core::counting::{Limits, Method, DEFAULT_BUDGET_EVALUATIONS, DEFAULT_BUDGET_STATES};
use c2_core::gf::PrimePower;
use c2_core::graph::{parse_edge_list, to_edge_list, Graph};
use c2_core::verify::{self, Format, RunConfig, Suite};

/// Exact c2 invariants of Feynman graphs at prime powers.
#[derive(Parser)]
#[command(name = "c2inv", version)]
struct Cli {
    #[command(flatten)]
    budgets: Budgets,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Budgets {
    /// Maximum polynomial evaluations per point count.
    #[arg(long, global = true, env = "C2INV_BUDGET_EVALS", default_value_t = DEFAULT_BUDGET_EVALUATIONS)]
    budget_evals: u64,
    /// Maximum exponent vectors per capped expansion.
    #[arg(long, global = true, env = "C2INV_BUDGET_STATES", default_value_t = DEFAULT_BUDGET_STATES)]
    budget_states: u64,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true, env = "C2INV_WORKERS")]
    workers: Option<usize>,
    /// Output format: json or table.
    #[arg(long, global = true, env = "C2INV_FORMAT", default_value = "json")]
    format: String,
}

impl Budgets {
    fn limits(&self) -> anyhow::Result<Limits> {
        let workers = self.workers.unwrap_or_else(|| Limits::default().workers);
        if self.budget_evals == 0 || self.budget_states == 0 || workers == 0 {
            bail!("budgets and worker count must be positive");
        }
        Ok(Limits { budget_evaluations: self.budget_evals, budget_states: self.budget_states, workers })
    }

    fn format(&self) -> anyhow::Result<Format> {
        Ok(self.format.parse()?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute c2 of one graph at q = p^s.
    C2 {
        /// Catalog name or path to an edge-list file.
        #[arg(long, env = "C2INV_GRAPH")]
        graph: String,
        #[arg(long, env = "C2INV_P")]
        p: u64,
        #[arg(long, env = "C2INV_S", default_value_t = 1)]
        s: u32,
        /// definition, dodgson, coefficient, partition or auto.
        #[arg(long, env = "C2INV_METHOD", default_value = "auto")]
        method: String,
    },
    /// Run a verification suite: lemmas, prop, theorem1 or all.
    Verify {
        #[arg(long, env = "C2INV_SUITE", default_value = "all")]
        suite: String,
        #[arg(long, env = "C2INV_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the report to this file.
        #[arg(long, env = "C2INV_OUTPUT")]
        output: Option<PathBuf>,
    },
    /// List the shipped graphs, optionally writing their edge lists.
    Catalog {
        #[arg(long, env = "C2INV_EMIT_DIR")]
        emit_dir: Option<PathBuf>,
    },
}

fn load_graph(arg: &str) -> anyhow::Result<Graph> {
    let catalog = Catalog::load()?;
    if let Some(g) = catalog.graph(arg) {
        return Ok(g.clone());
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!("{arg:?} is neither a catalog graph nor a file");
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let name = path.file_stem().map_or(arg.to_string(), |s| s.to_string_lossy().into_owned());
    Ok(parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))?.with_name(name))
}

fn cmd_c2(budgets: &Budgets, graph: &str, p: u64, s: u32, method: &str) -> anyhow::Result<ExitCode> {
    let g = load_graph(graph)?;
    let order = PrimePower::new(p, s)?;
    let choice: MethodChoice = method.parse()?;
    let report = compute_c2(&g, order, choice, &budgets.limits()?)?;
    match budgets.format()? {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => {
            let scope = if report.modulus == report.q { "" } else { " (coefficient routes determine c2 mod p only)" };
            println!(
                "{} q={} method={} c2 = {} mod {}{}",
                report.graph, report.q, report.method, report.residue, report.modulus, scope
            );
            if let Some(count) = report.count {
                let what = match report.method {
                    Method::Partition => "edge partitions",
                    _ => "zeros",
                };
                println!("  {what}: {count}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(budgets: &Budgets, suite: &str, seed: u64, output: Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let suite: Suite = suite.parse()?;
    let limits = budgets.limits()?;
    let config = RunConfig {
        budget_evaluations: limits.budget_evaluations,
        budget_states: limits.budget_states,
        seed,
        output_path: output.clone(),
        format: budgets.format()?,
        workers: limits.workers,
    };
    let report = verify::run(suite, &config)?;
    let text = report.render();
    print!("{text}");
    if let Some(path) = output {
        fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.failed() == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_catalog(budgets: &Budgets, emit_dir: Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let catalog = Catalog::load()?;
    let json = budgets.format()? == Format::Json;
    for e in &catalog.entries {
        let g = &e.decompletion;
        if json {
            let record = serde_json::json!({
                "name": e.name,
                "completion": e.completion_name,
                "apex": e.apex,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "note": e.note,
            });
            println!("{record}");
        } else {
            println!(
                "{:<6} completion {:<6} apex {:<2} |V| = {} |E| = {}  {}",
                e.name,
                e.completion_name,
                e.apex,
                g.vertex_count(),
                g.edge_count(),
                e.note
            );
        }
    }
    for d in &catalog.documented {
        if json {
            println!("{}", serde_json::json!({ "name": d.name, "run": false, "known_c2": d.known_c2, "note": d.note }));
        } else {
            println!("{:<6} not run; recorded c2 {:?}  {}", d.name, d.known_c2, d.note);
        }
    }
    if let Some(dir) = emit_dir {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for e in &catalog.entries {
            for (name, g) in [(&e.name, &e.decompletion), (&e.completion_name, &e.completion)] {
                let path = dir.join(format!("{name}.edges"));
                fs::write(&path, to_edge_list(g)).with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::C2 { graph, p, s, method } => cmd_c2(&cli.budgets, &graph, p, s, &method),
        Command::Verify { suite, seed, output } => cmd_verify(&cli.budgets, &suite, seed, output),
        Command::Catalog { emit_dir } => cmd_catalog(&cli.budgets, emit_dir),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
