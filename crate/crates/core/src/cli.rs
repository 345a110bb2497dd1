//! The `mncolor` command line.
//!
//! Exit codes: 0 decided or produced, 1 negative decision, 2 usage or
//! input error, 3 budget exceeded. Payloads go to stdout, diagnostics to
//! stderr. A file argument of `-` reads standard input.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{self, FamilyDescriptor};
use crate::error::{Error, Result};
use crate::experiments;
use crate::graph::{MixedGraph, Signature, SimpleGraph};
use crate::homsearch::{self, MaxChromaticOptions, Partition};
use crate::rigidity::{self, CliqueWitness};
use crate::signed::{self, Connectors, NaeFormula, PairRule, SignedCliqueCheck, TwoEdgeColoring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn negative(stdout: String) -> Self {
        CommandResult {
            code: 1,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(err: &Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        CommandResult {
            code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "mncolor",
    version,
    about = "Cliques, chromatic numbers and reductions for (m,n)-colored mixed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct SigArgs {
    /// Arc colors.
    #[arg(long)]
    m: u32,
    /// Edge colors.
    #[arg(long)]
    n: u32,
}

impl SigArgs {
    fn signature(self) -> Result<Signature> {
        Signature::new(self.m, self.n)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a mixed graph is an (m,n)-clique.
    CheckClique { file: PathBuf },
    /// Largest set of pairwise rigid vertices.
    RelativeClique { file: PathBuf },
    /// Largest vertex set inducing an (m,n)-clique.
    AbsoluteClique { file: PathBuf },
    /// Exact (m,n)-chromatic number with a witness partition.
    Chromatic { file: PathBuf },
    /// Search for a homomorphism from G to H.
    Hom { g: PathBuf, h: PathBuf },
    /// Maximum chromatic number over all colorings of a simple graph.
    MaxChromatic {
        file: PathBuf,
        #[command(flatten)]
        sig: SigArgs,
        /// Largest number of colorings to examine.
        #[arg(long, default_value_t = homsearch::DEFAULT_MAX_CHROMATIC_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Generate a graph family.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Build G_F (and H_F) for a monotone NAE-3SAT formula.
    ReduceNae {
        file: PathBuf,
        /// Write the graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ConnectorArg::Double)]
        connectors: ConnectorArg,
    },
    /// Find a not-all-equal satisfying assignment.
    NaeSolve {
        file: PathBuf,
        /// Largest number of assignments to examine.
        #[arg(long, default_value_t = signed::DEFAULT_NAE_BUDGET)]
        budget: u128,
    },
    /// Find a 2-edge-coloring making a simple graph a signed clique.
    SignedColorable {
        file: PathBuf,
        /// Require every pair, adjacent or not, to lie on an unbalanced 4-cycle.
        #[arg(long)]
        strict_all_pairs: bool,
        /// Largest edge count accepted.
        #[arg(long, default_value_t = signed::DEFAULT_SIGNED_EDGE_CAP)]
        budget: usize,
    },
    /// Check a 2-edge-coloring against the signed-clique condition.
    VerifySigned {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        strict_all_pairs: bool,
    },
    /// Random-model experiments.
    Experiment {
        #[command(subcommand)]
        kind: Experiment,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    OuterplanarClique {
        #[command(flatten)]
        sig: SigArgs,
    },
    PlanarClique {
        #[command(flatten)]
        sig: SigArgs,
    },
    /// A + B with a universal vertex.
    Join { a: PathBuf, b: PathBuf },
    /// H_k: k copies of H chained by joins.
    Iterate {
        h: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Path with N edges.
    Path { edges: usize },
    /// Cycle of length N.
    Cycle { length: usize },
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Monte-Carlo clique fraction.
    Random {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exact clique count over all labeled graphs of order k.
    Enumerate {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = experiments::DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
    },
    /// Exact non-clique count against the union bound.
    UnionBound {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = experiments::DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ConnectorArg {
    Single,
    Double,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult::ok(text)
            };
        }
    };
    match run(cli.command) {
        Ok(result) => result,
        Err(err) => CommandResult::failure(&err),
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    let outcome = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    outcome.map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn read_mixed(path: &PathBuf) -> Result<MixedGraph> {
    MixedGraph::parse(&read_input(path)?)
}

fn read_simple(path: &PathBuf) -> Result<SimpleGraph> {
    SimpleGraph::parse(&read_input(path)?)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut line = serde_json::to_string(value).expect("payload serializes");
    line.push('\n');
    line
}

fn partition_line(prefix: &str, p: &Partition) -> String {
    let mut line = String::from(prefix);
    for &part in p.assignment() {
        write!(line, " {part}").unwrap();
    }
    line.push('\n');
    line
}

fn with_roles(graph_text: String, descriptor: &FamilyDescriptor) -> String {
    graph_text + &descriptor.role_lines()
}

#[derive(Serialize)]
struct CliquePayload<'a> {
    size: usize,
    vertices: &'a [usize],
}

#[derive(Serialize)]
struct ReductionSummary {
    vertices: usize,
    edges: usize,
    hf_vertices: usize,
    hf_edges: usize,
    representative_pairs: usize,
}

#[derive(Serialize)]
struct UnionBoundPayload {
    m: u32,
    n: u32,
    k: usize,
    exact_noncliques: u128,
    bound: u128,
    holds: bool,
}

fn run(command: Command) -> Result<CommandResult> {
    match command {
        Command::CheckClique { file } => {
            let g = read_mixed(&file)?;
            Ok(match rigidity::is_clique(&g) {
                CliqueWitness::Clique => CommandResult::ok("clique\n".into()),
                CliqueWitness::FailingPair(u, v) => {
                    CommandResult::negative(format!("failing-pair {u} {v}\n"))
                }
            })
        }
        Command::RelativeClique { file } => {
            let c = rigidity::relative_clique_number(&read_mixed(&file)?);
            Ok(CommandResult::ok(json_line(&CliquePayload {
                size: c.size,
                vertices: &c.vertices,
            })))
        }
        Command::AbsoluteClique { file } => {
            let c = rigidity::absolute_clique_number(&read_mixed(&file)?);
            Ok(CommandResult::ok(json_line(&CliquePayload {
                size: c.size,
                vertices: &c.vertices,
            })))
        }
        Command::Chromatic { file } => {
            let r = homsearch::chromatic_number(&read_mixed(&file)?);
            Ok(CommandResult::ok(format!(
                "{}\n{}",
                r.value,
                partition_line("partition", &r.partition)
            )))
        }
        Command::Hom { g, h } => {
            let (g, h) = (read_mixed(&g)?, read_mixed(&h)?);
            Ok(match homsearch::find_homomorphism(&g, &h)? {
                Some(map) => {
                    let mut line = String::from("hom");
                    for x in &map.0 {
                        write!(line, " {x}").unwrap();
                    }
                    line.push('\n');
                    CommandResult::ok(line)
                }
                None => CommandResult::negative("none\n".into()),
            })
        }
        Command::MaxChromatic {
            file,
            sig,
            budget,
            jobs,
        } => {
            let g = read_simple(&file)?;
            let r = homsearch::max_chromatic(
                &g,
                sig.signature()?,
                MaxChromaticOptions { budget, jobs },
            )?;
            Ok(CommandResult::ok(format!(
                "{}\n{}{}",
                r.value,
                r.witness.to_text(),
                partition_line("# partition", &r.partition)
            )))
        }
        Command::Construct { family } => construct(family),
        Command::ReduceNae {
            file,
            out,
            connectors,
        } => {
            let f = NaeFormula::parse(&read_input(&file)?)?;
            let connectors = match connectors {
                ConnectorArg::Single => Connectors::Single,
                ConnectorArg::Double => Connectors::Double,
            };
            let art = signed::build_gf_with(&f, connectors);
            let text = art.graph.to_text() + &art.sidecar();
            match out {
                Some(path) => {
                    std::fs::write(&path, text)
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    Ok(CommandResult::ok(json_line(&ReductionSummary {
                        vertices: art.graph.vertex_count(),
                        edges: art.graph.edge_count(),
                        hf_vertices: art.hf.graph.vertex_count(),
                        hf_edges: art.hf.graph.edge_count(),
                        representative_pairs: art.hf.representative_pairs.len(),
                    })))
                }
                None => Ok(CommandResult::ok(text)),
            }
        }
        Command::NaeSolve { file, budget } => {
            let f = NaeFormula::parse(&read_input(&file)?)?;
            Ok(match signed::nae_solve(&f, budget)? {
                Some(a) => {
                    let mut line = String::from("sat");
                    for x in a {
                        line.push_str(if x { " 1" } else { " 0" });
                    }
                    line.push('\n');
                    CommandResult::ok(line)
                }
                None => CommandResult::negative("unsat\n".into()),
            })
        }
        Command::SignedColorable {
            file,
            strict_all_pairs,
            budget,
        } => {
            let g = read_simple(&file)?;
            Ok(
                match signed::signed_clique_colorable(&g, rule(strict_all_pairs), budget)? {
                    Some(c) => CommandResult::ok(c.to_text()),
                    None => CommandResult::negative("none\n".into()),
                },
            )
        }
        Command::VerifySigned {
            graph,
            coloring,
            strict_all_pairs,
        } => {
            let g = read_simple(&graph)?;
            let c = TwoEdgeColoring::parse(&read_input(&coloring)?)?;
            Ok(
                match signed::is_signed_clique(&g, &c, rule(strict_all_pairs))? {
                    SignedCliqueCheck::SignedClique => CommandResult::ok("signed-clique\n".into()),
                    SignedCliqueCheck::Failing(u, v) => {
                        CommandResult::negative(format!("failing-pair {u} {v}\n"))
                    }
                },
            )
        }
        Command::Experiment { kind } => experiment(kind),
    }
}

fn rule(strict: bool) -> PairRule {
    if strict {
        PairRule::AllPairs
    } else {
        PairRule::NonAdjacent
    }
}

fn construct(family: Family) -> Result<CommandResult> {
    let text = match family {
        Family::OuterplanarClique { sig } => {
            let c = constructions::outerplanar_clique(sig.signature()?)?;
            with_roles(c.graph.to_text(), &c.descriptor)
        }
        Family::PlanarClique { sig } => {
            let c = constructions::planar_clique(sig.signature()?)?;
            with_roles(c.graph.to_text(), &c.descriptor)
        }
        Family::Join { a, b } => {
            let c = constructions::join(&read_simple(&a)?, &read_simple(&b)?);
            with_roles(c.graph.to_text(), &c.descriptor)
        }
        Family::Iterate { h, k } => {
            let c = constructions::iterated_join(&read_simple(&h)?, k)?;
            with_roles(c.graph.to_text(), &c.descriptor)
        }
        Family::Path { edges } => numbered(constructions::path(edges), "p"),
        Family::Cycle { length } => numbered(constructions::cycle(length)?, "c"),
    };
    Ok(CommandResult::ok(text))
}

fn numbered(g: SimpleGraph, prefix: &str) -> String {
    let mut text = g.to_text();
    for v in 0..g.vertex_count() {
        writeln!(text, "# role {v} {prefix}{v}").unwrap();
    }
    text
}

fn experiment(kind: Experiment) -> Result<CommandResult> {
    match kind {
        Experiment::Random {
            sig,
            k,
            trials,
            seed,
            jobs,
        } => {
            let report = experiments::clique_fraction(sig.signature()?, k, trials, seed, jobs)?;
            Ok(CommandResult::ok(report.to_line() + "\n"))
        }
        Experiment::Enumerate { sig, k, budget } => {
            let report = experiments::exact_report(sig.signature()?, k, budget)?;
            Ok(CommandResult::ok(report.to_line() + "\n"))
        }
        Experiment::UnionBound { sig, k, budget } => {
            let s = sig.signature()?;
            let c = experiments::union_bound_check(s, k, budget)?;
            let payload = json_line(&UnionBoundPayload {
                m: s.arc_colors(),
                n: s.edge_colors(),
                k,
                exact_noncliques: c.exact_noncliques,
                bound: c.bound,
                holds: c.holds(),
            });
            Ok(if c.holds() {
                CommandResult::ok(payload)
            } else {
                CommandResult::negative(payload)
            })
        }
    }
}
