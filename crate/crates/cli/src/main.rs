use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use popmatch::acceptance::{run_criterion, CRITERIA};
use popmatch::constrained::{solve_pmffe, SearchBudget};
use popmatch::dominant::{all_dominant_matchings, build_levelled_instance, max_weight_dominant, two_level_gale_shapley};
use popmatch::oracle::{popular_set, DEFAULT_CAP};
use popmatch::popularity::{is_dominant, is_popular};
use popmatch::reduction::{build_graph, normalize_monotone, to_monotone, CnfFormula};
use popmatch::stable::{all_stable_matchings, gale_shapley, max_weight_stable};
use popmatch::weighted::{miwp_exact, mwp_exact, mwp_half_approx, node_weighted_opt, Direction};
use popmatch::weights::format_weight;
use popmatch::{ConstraintSet, Matching, NodeWeights, PreferenceSystem, Side, Weight, WeightMap};

const FOUND: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT_ERROR: u8 = 2;
const HARD_CASE: u8 = 3;

#[derive(Parser)]
#[command(name = "popmatch", version, about = "Popular matchings in two-sided preference systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a matching is popular (and optionally dominant).
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        matching: PathBuf,
        #[arg(long)]
        dominant: bool,
    },
    /// Deferred acceptance, all stable matchings, or a heaviest stable matching.
    Stable {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "a")]
        side: SideArg,
        #[command(flatten)]
        listing: Listing,
    },
    /// A maximum-size popular matching from the two-level instance.
    Dominant {
        #[command(flatten)]
        common: Common,
        /// Write the two-level instance here.
        #[arg(long)]
        emit_gprime: Option<PathBuf>,
        #[command(flatten)]
        listing: Listing,
    },
    /// Popular matching with forced and forbidden nodes and edges.
    Pmffe {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long = "force-node")]
        force_node: Vec<String>,
        #[arg(long = "forbid-node")]
        forbid_node: Vec<String>,
        /// Edge as `u:v`.
        #[arg(long = "force-edge")]
        force_edge: Vec<String>,
        #[arg(long = "forbid-edge")]
        forbid_edge: Vec<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Maximum-weight popular matching.
    Mwp(WeightedArgs),
    /// Minimum-weight popular matching.
    Miwp(WeightedArgs),
    /// Build the popular-matching instance of a 3-SAT formula.
    Reduce {
        /// DIMACS CNF file.
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        normalize: bool,
    },
    /// Exhaustive popular, stable and dominant sets.
    Enumerate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Edge weights, one `u v <decimal>` per line.
    #[arg(long, requires = "max")]
    weights: Option<PathBuf>,
    /// Maximize the weight given by --weights.
    #[arg(long, requires = "weights")]
    max: bool,
}

#[derive(Args)]
struct Listing {
    /// List every matching instead of one.
    #[arg(long, conflicts_with = "weights")]
    list: bool,
    #[arg(long, default_value_t = DEFAULT_CAP, requires = "list")]
    cap: usize,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long)]
    allow_exponential: bool,
    /// Largest edge count the exponential search accepts.
    #[arg(long, default_value_t = SearchBudget::DEFAULT_MAX_EDGES)]
    max_edges: usize,
}

impl BudgetArgs {
    fn budget(self) -> SearchBudget {
        let base = if self.allow_exponential {
            SearchBudget::exponential()
        } else {
            SearchBudget::polynomial_only()
        };
        base.with_max_edges(self.max_edges)
    }
}

#[derive(Args)]
struct WeightedArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, conflicts_with = "node_weights", required_unless_present = "node_weights")]
    weights: Option<PathBuf>,
    /// Nonnegative node weights, one `v <decimal>` per line.
    #[arg(long)]
    node_weights: Option<PathBuf>,
    /// Exhaustive search over all popular matchings.
    #[arg(long, conflicts_with = "node_weights")]
    exact: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    #[value(alias = "A")]
    A,
    #[value(alias = "B")]
    B,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> anyhow::Result<PreferenceSystem> {
    let text = read(path)?;
    PreferenceSystem::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn load_weights(ps: &PreferenceSystem, path: &Path) -> anyhow::Result<WeightMap> {
    WeightMap::parse(ps, &read(path)?).with_context(|| format!("in {}", path.display()))
}

fn parse_edge(ps: &PreferenceSystem, spec: &str) -> anyhow::Result<popmatch::Edge> {
    let Some((u, v)) = spec.split_once(':') else {
        bail!("edge `{spec}` is not of the form u:v");
    };
    Ok(ps.edge_by_names(u, v)?)
}

fn with_value(ps: &PreferenceSystem, m: &Matching, value: &Weight) -> String {
    format!("# weight {}\n{}", format_weight(value), m.render(ps))
}

fn listing(ps: &PreferenceSystem, all: &[Matching]) -> String {
    let mut out = format!("# {} matchings\n", all.len());
    for (i, m) in all.iter().enumerate() {
        out.push_str(&format!("# matching {}\n{}", i + 1, m.render(ps)));
    }
    out
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Verify {
            input,
            matching,
            dominant,
        } => {
            let ps = load_instance(&input)?;
            let m = Matching::parse(&ps, &read(&matching)?).with_context(|| format!("in {}", matching.display()))?;
            let cert = is_popular(&ps, &m)?;
            if !cert.popular {
                println!("NOT POPULAR");
                if let Some(w) = cert.witness {
                    println!("WITNESS {} {}", w.violation.tag(), w.render(&ps));
                }
                return Ok(NEGATIVE);
            }
            println!("POPULAR");
            if dominant {
                let d = is_dominant(&ps, &m)?;
                if !d.dominant {
                    println!("NOT DOMINANT");
                    if let Some(path) = d.augmenting_path {
                        let names: Vec<&str> = path.iter().map(|&v| ps.name(v)).collect();
                        println!("AUGMENTING {}", names.join(" "));
                    }
                    return Ok(NEGATIVE);
                }
                println!("DOMINANT");
            }
            Ok(FOUND)
        }
        Command::Stable { common, side, listing: list } => {
            let ps = load_instance(&common.input)?;
            let text = if let Some(path) = &common.weights {
                let (m, value) = max_weight_stable(&ps, &load_weights(&ps, path)?)?;
                with_value(&ps, &m, &value)
            } else if list.list {
                listing(&ps, &all_stable_matchings(&ps, list.cap)?)
            } else {
                let side = match side {
                    SideArg::A => Side::A,
                    SideArg::B => Side::B,
                };
                gale_shapley(&ps, side).render(&ps)
            };
            emit(common.output.as_deref(), &text)?;
            Ok(FOUND)
        }
        Command::Dominant {
            common,
            emit_gprime,
            listing: list,
        } => {
            let ps = load_instance(&common.input)?;
            if let Some(path) = &emit_gprime {
                write(path, &build_levelled_instance(&ps).gprime.render())?;
            }
            let text = if let Some(path) = &common.weights {
                let (m, value) = max_weight_dominant(&ps, &load_weights(&ps, path)?)?;
                with_value(&ps, &m, &value)
            } else if list.list {
                listing(&ps, &all_dominant_matchings(&ps, list.cap)?)
            } else {
                two_level_gale_shapley(&ps).render(&ps)
            };
            emit(common.output.as_deref(), &text)?;
            Ok(FOUND)
        }
        Command::Pmffe {
            input,
            output,
            force_node,
            forbid_node,
            force_edge,
            forbid_edge,
            budget,
        } => {
            let ps = load_instance(&input)?;
            let mut cs = ConstraintSet::new();
            for v in &force_node {
                cs = cs.force_node(ps.require_vertex(v)?);
            }
            for v in &forbid_node {
                cs = cs.forbid_node(ps.require_vertex(v)?);
            }
            for e in &force_edge {
                cs = cs.force_edge(parse_edge(&ps, e)?);
            }
            for e in &forbid_edge {
                cs = cs.forbid_edge(parse_edge(&ps, e)?);
            }
            let outcome = solve_pmffe(&ps, &cs, budget.budget())?;
            eprintln!("case: {}", outcome.case);
            match outcome.matching() {
                Some(m) => {
                    emit(output.as_deref(), &m.render(&ps))?;
                    Ok(FOUND)
                }
                None => {
                    println!("INFEASIBLE");
                    Ok(NEGATIVE)
                }
            }
        }
        Command::Mwp(args) => weighted(args, Direction::Max),
        Command::Miwp(args) => weighted(args, Direction::Min),
        Command::Reduce {
            input,
            output,
            map,
            normalize,
        } => {
            let formula = CnfFormula::parse_dimacs(&read(&input)?).with_context(|| format!("in {}", input.display()))?;
            let mut monotone = to_monotone(&formula);
            if normalize {
                monotone = normalize_monotone(&monotone)?;
            }
            let (ps, gm) = build_graph(&monotone)?;
            write(&output, &ps.render())?;
            write(&map, &gm.to_json())?;
            eprintln!(
                "{} clauses, {} vertices, {} edges",
                monotone.clauses().len(),
                ps.num_vertices(),
                ps.num_edges()
            );
            Ok(FOUND)
        }
        Command::Enumerate { input, cap, report } => {
            let ps = load_instance(&input)?;
            let r = popular_set(&ps, cap)?;
            let mut out = format!(
                "matchings {}\npopular {}\nstable {}\ndominant {}\nmin-popular-size {}\nmax-popular-size {}\n",
                r.matching_count,
                r.popular.len(),
                r.stable.len(),
                r.dominant.len(),
                r.min_popular_size,
                r.max_popular_size
            );
            for m in &r.popular {
                let kind = match (r.stable.contains(m), r.dominant.contains(m)) {
                    (true, true) => "stable,dominant",
                    (true, false) => "stable",
                    (false, true) => "dominant",
                    (false, false) => "popular",
                };
                let edges: Vec<String> = m.edges().into_iter().map(|e| ps.edge_label(e)).collect();
                out.push_str(&format!("matching {kind}: {}\n", edges.join(", ")));
            }
            emit(report.as_deref(), &out)?;
            Ok(FOUND)
        }
        Command::Selftest { seed, only } => {
            let ids: Vec<usize> = match only {
                Some(id) if CRITERIA.iter().any(|(i, _)| *i == id) => vec![id],
                Some(id) => bail!("no criterion {id}"),
                None => CRITERIA.iter().map(|(i, _)| *i).collect(),
            };
            let mut failed = 0;
            for id in ids {
                let outcome = run_criterion(id, seed);
                println!("{outcome}");
                failed += usize::from(!outcome.passed);
            }
            Ok(if failed == 0 { FOUND } else { NEGATIVE })
        }
    }
}

fn weighted(args: WeightedArgs, direction: Direction) -> anyhow::Result<u8> {
    let ps = load_instance(&args.input)?;
    let output = args.output.as_deref();
    if let Some(path) = &args.node_weights {
        let wv = NodeWeights::parse(&ps, &read(path)?).with_context(|| format!("in {}", path.display()))?;
        let (m, value) = node_weighted_opt(&ps, &wv, direction)?;
        emit(output, &with_value(&ps, &m, &value))?;
        return Ok(FOUND);
    }
    let w = load_weights(&ps, args.weights.as_deref().expect("clap requires weights"))?;
    let text = match (direction, args.exact) {
        (Direction::Max, false) => {
            let r = mwp_half_approx(&ps, &w)?;
            format!(
                "# stable {} dominant {}\n{}",
                format_weight(&r.stable_value),
                format_weight(&r.dominant_value),
                with_value(&ps, &r.matching, &r.value)
            )
        }
        (Direction::Max, true) => {
            let (m, value) = mwp_exact(&ps, &w, args.budget.budget())?;
            with_value(&ps, &m, &value)
        }
        (Direction::Min, true) => {
            let (m, value) = miwp_exact(&ps, &w, args.budget.budget())?;
            with_value(&ps, &m, &value)
        }
        (Direction::Min, false) => bail!("miwp has no polynomial approximation; pass --exact --allow-exponential"),
    };
    emit(output, &text)?;
    Ok(FOUND)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<popmatch::Error>() {
        Some(popmatch::Error::HardCase { .. } | popmatch::Error::CapExceeded { .. }) => HARD_CASE,
        _ => INPUT_ERROR,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
