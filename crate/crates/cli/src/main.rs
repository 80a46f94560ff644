//! Single binary over the library: partition decisions, packings, convex
//! and string representations, gadget search, one-sided certificates, and
//! the counting experiments.
//!
//! Exit codes: 0 success, 1 negative decision (not great, certificate not
//! found, check failed), 2 usage error, 3 internal defect (a guarantee the
//! construction promises was violated).

use clap::{Args, Parser, Subcommand};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use canongraph::convexrep::{represent_canonical, verify_representation, ConvexRepresentation};
use canongraph::embedding::PlanarEmbedding;
use canongraph::gadgets::{
    base_with_mask, build_universal, contains_universal, find_gadget_for_type,
    grid_string_search, verify_lemma6_pattern, CertificateType,
};
use canongraph::graph::Graph;
use canongraph::graph6::{from_graph6, to_graph6};
use canongraph::lab;
use canongraph::packing::{check_packing, min_gap_angle, pack};
use canongraph::partition::{
    count_great_partitions, find_great_partition, pstar_check,
};
use canongraph::strings::strings_from_convex;
use canongraph::svg;

#[derive(Parser)]
#[command(name = "canongraph", version, about = "canonical graphs, exact convex representations, non-string gadgets")]
struct Cli {
    /// rng seed (default: CANONGRAPH_SEED env var, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// worker threads; omit for sequential runs
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GraphInput {
    /// graph6 input file; stdin when omitted
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// find or count great partitions
    Partition {
        #[command(subcommand)]
        sub: PartitionCmd,
    },
    /// check the partition-identifiability conditions
    Pstar {
        #[command(subcommand)]
        sub: PstarCmd,
    },
    /// pack a builtin plane template into tangent circles
    Pack {
        /// triangle | k4 | k5me | wheel:K | cycle:N | path:N | star:K
        #[arg(long)]
        template: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// build and exactly verify a convex representation of a great graph
    Represent {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// re-verify a representation JSON against a graph
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// representation JSON produced by `represent`
        #[arg(long)]
        rep: PathBuf,
    },
    /// polyline string representation of a great graph
    Strings {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// non-string gadget family
    Gadget {
        #[command(subcommand)]
        sub: GadgetCmd,
    },
    /// one-sided string / non-string certificates
    Certify {
        #[command(subcommand)]
        sub: CertifyCmd,
    },
    /// counting experiments
    Lab {
        #[command(subcommand)]
        sub: LabCmd,
    },
    /// universal bipartite graph U(k): build or containment check
    Universal {
        #[arg(long)]
        k: usize,
        /// check this graph for U(k) containment instead of building
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// print a great partition or exit 1
    Find {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// count ordered great partition tuples
    Count {
        #[command(flatten)]
        graph: GraphInput,
    },
}

#[derive(Subcommand)]
enum PstarCmd {
    /// evaluate the conditions on the graph's great partition
    Check {
        #[command(flatten)]
        graph: GraphInput,
    },
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// emit a gadget for an optional-edge mask (default: none)
    Build {
        #[arg(long, default_value_t = 0)]
        mask: u32,
    },
    /// search for the first gadget with a typed partition certificate
    Find {
        /// a | b | c | d | e
        #[arg(long = "type")]
        tag: String,
    },
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// positive certificate: curves on a k x k grid
    String {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// negative certificate: the 15-vertex non-string pattern
    Nonstring {
        #[command(flatten)]
        graph: GraphInput,
    },
}

#[derive(Subcommand)]
enum LabCmd {
    /// exhaustive canonical count
    Count {
        #[arg(long)]
        n: usize,
    },
    /// speed lower bound at n
    Speed {
        #[arg(long)]
        n: usize,
    },
    /// great-partition ratio experiment
    Ratio {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// common-neighbor statistics
    Pstar {
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

enum Outcome {
    Ok,
    Negative(String),
    Usage(String),
    Defect(String),
}

impl Outcome {
    fn code(&self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Negative(_) => 1,
            Outcome::Usage(_) => 2,
            Outcome::Defect(_) => 3,
        }
    }
}

fn read_graph(input: &Option<PathBuf>) -> Result<Graph, String> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {}", path.display(), e))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {}", e))?;
            buf
        }
    };
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or("empty graph input")?;
    from_graph6(line.trim()).map_err(|e| e.to_string())
}

fn write_file(path: &Path, content: &str) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("cannot write {}: {}", path.display(), e))
}

fn template_by_name(name: &str) -> Result<PlanarEmbedding, String> {
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    let parse = |a: Option<&str>| -> Result<usize, String> {
        a.ok_or(format!("{} needs a size, e.g. {}:5", kind, kind))?
            .parse::<usize>()
            .map_err(|e| format!("bad size: {}", e))
    };
    match kind {
        "triangle" => Ok(PlanarEmbedding::triangle()),
        "k4" => Ok(PlanarEmbedding::complete4()),
        "k5me" => Ok(PlanarEmbedding::k5_minus_edge()),
        "diamond" => Ok(PlanarEmbedding::diamond()),
        "wheel" => PlanarEmbedding::wheel(parse(arg)?).map_err(|e| e.to_string()),
        "cycle" => PlanarEmbedding::cycle(parse(arg)?).map_err(|e| e.to_string()),
        "path" => PlanarEmbedding::path(parse(arg)?).map_err(|e| e.to_string()),
        "star" => PlanarEmbedding::star(parse(arg)?).map_err(|e| e.to_string()),
        _ => Err(format!("unknown template {:?}", name)),
    }
}

fn representation_of(input: &Option<PathBuf>) -> Result<(Graph, ConvexRepresentation), Outcome> {
    let g = read_graph(input).map_err(Outcome::Usage)?;
    match represent_canonical(&g) {
        Ok(Some(rep)) => Ok((g, rep)),
        Ok(None) => Err(Outcome::Negative("graph is not great".into())),
        Err(e) => Err(Outcome::Defect(format!(
            "construction failed on a great graph: {}",
            e
        ))),
    }
}

fn lab_outcome(report: Result<lab::ExperimentReport, canongraph::ParamError>) -> Outcome {
    match report {
        Ok(r) => {
            println!("{}", r.to_json());
            eprintln!("{}", r.human());
            if r.pass {
                Outcome::Ok
            } else {
                Outcome::Negative("experiment expectation not met".into())
            }
        }
        Err(e) => Outcome::Usage(e.to_string()),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Partition { sub } => match sub {
            PartitionCmd::Find { graph } => match read_graph(&graph.input) {
                Err(e) => Outcome::Usage(e),
                Ok(g) => match find_great_partition(&g) {
                    Some(p) => {
                        println!("{}", p.to_json());
                        Outcome::Ok
                    }
                    None => Outcome::Negative("graph is not great".into()),
                },
            },
            PartitionCmd::Count { graph } => match read_graph(&graph.input) {
                Err(e) => Outcome::Usage(e),
                Ok(g) => {
                    let count = count_great_partitions(&g);
                    let mode = if g.n() <= 16 { "exact" } else { "restricted" };
                    println!(
                        "{}",
                        serde_json::json!({"n": g.n(), "count": count, "mode": mode})
                    );
                    Outcome::Ok
                }
            },
        },
        Cmd::Pstar { sub } => match sub {
            PstarCmd::Check { graph } => match read_graph(&graph.input) {
                Err(e) => Outcome::Usage(e),
                Ok(g) => match find_great_partition(&g) {
                    None => Outcome::Negative("graph is not great".into()),
                    Some(p) => match pstar_check(&g, &p) {
                        Err(e) => Outcome::Defect(e.to_string()),
                        Ok(report) => {
                            println!("{}", serde_json::to_string(&report).unwrap());
                            if report.holds {
                                Outcome::Ok
                            } else {
                                Outcome::Negative("conditions violated".into())
                            }
                        }
                    },
                },
            },
        },
        Cmd::Pack { template, tol, svg: svg_path } => {
            let emb = match template_by_name(&template) {
                Ok(e) => e,
                Err(e) => return Outcome::Usage(e),
            };
            let p = match pack(&emb, tol) {
                Ok(p) => p,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            let report = check_packing(&emb, &p, tol);
            if !report.violations.is_empty() {
                return Outcome::Defect(format!(
                    "packing failed its own check: {:?}",
                    report.violations
                ));
            }
            println!("{}", p.to_json());
            eprintln!(
                "min tangency gap angle: {:.6}",
                min_gap_angle(&p).map(|a| a.to_string()).unwrap_or_else(|_| "n/a".into())
            );
            if let Some(path) = svg_path {
                if let Err(e) = write_file(&path, &svg::packing_svg(&p)) {
                    return Outcome::Usage(e);
                }
            }
            Outcome::Ok
        }
        Cmd::Represent { graph, svg: svg_path } => match representation_of(&graph.input) {
            Err(out) => out,
            Ok((_, rep)) => match rep.to_json() {
                Err(e) => Outcome::Defect(e.to_string()),
                Ok(json) => {
                    println!("{}", json);
                    if let Some(path) = svg_path {
                        if let Err(e) = write_file(&path, &svg::representation_svg(&rep)) {
                            return Outcome::Usage(e);
                        }
                    }
                    Outcome::Ok
                }
            },
        },
        Cmd::Verify { graph, rep } => {
            let g = match read_graph(&graph.input) {
                Ok(g) => g,
                Err(e) => return Outcome::Usage(e),
            };
            let text = match std::fs::read_to_string(&rep) {
                Ok(t) => t,
                Err(e) => return Outcome::Usage(format!("cannot read {}: {}", rep.display(), e)),
            };
            let parsed = match ConvexRepresentation::from_json(&text) {
                Ok(r) => r,
                Err(e) => return Outcome::Usage(e.to_string()),
            };
            match verify_representation(&parsed, &g) {
                Err(e) => Outcome::Usage(e.to_string()),
                Ok(report) => {
                    println!("{}", serde_json::to_string(&report).unwrap());
                    if report.ok() {
                        Outcome::Ok
                    } else {
                        Outcome::Negative("representation does not match the graph".into())
                    }
                }
            }
        }
        Cmd::Strings { graph, svg: svg_path } => match representation_of(&graph.input) {
            Err(out) => out,
            Ok((_, rep)) => match strings_from_convex(&rep) {
                Err(e) => Outcome::Defect(e.to_string()),
                Ok(s) => match s.to_json() {
                    Err(e) => Outcome::Defect(e.to_string()),
                    Ok(json) => {
                        println!("{}", json);
                        if let Some(path) = svg_path {
                            if let Err(e) = write_file(&path, &svg::strings_svg(&s)) {
                                return Outcome::Usage(e);
                            }
                        }
                        Outcome::Ok
                    }
                },
            },
        },
        Cmd::Gadget { sub } => match sub {
            GadgetCmd::Build { mask } => {
                if mask >= 1 << 30 {
                    return Outcome::Usage("mask has only 30 bits".into());
                }
                let g = base_with_mask(mask);
                println!("{}", to_graph6(&g));
                eprintln!("{} vertices, {} edges", g.n(), g.edge_count());
                Outcome::Ok
            }
            GadgetCmd::Find { tag } => {
                let tag = match CertificateType::parse(&tag) {
                    Ok(t) => t,
                    Err(e) => return Outcome::Usage(e.to_string()),
                };
                match find_gadget_for_type(tag) {
                    Err(e) => Outcome::Defect(e.to_string()),
                    Ok((g, cert)) => {
                        println!("{}", to_graph6(&g));
                        println!("{}", cert.to_json());
                        Outcome::Ok
                    }
                }
            }
        },
        Cmd::Certify { sub } => match sub {
            CertifyCmd::String { graph, k } => match read_graph(&graph.input) {
                Err(e) => Outcome::Usage(e),
                Ok(g) => match grid_string_search(&g, k) {
                    Err(e) => Outcome::Usage(e.to_string()),
                    Ok(Some(rep)) => {
                        println!("{}", rep.to_json());
                        Outcome::Ok
                    }
                    Ok(None) => Outcome::Negative(
                        "no grid representation within bounds (proves nothing)".into(),
                    ),
                },
            },
            CertifyCmd::Nonstring { graph } => match read_graph(&graph.input) {
                Err(e) => Outcome::Usage(e),
                Ok(g) => match verify_lemma6_pattern(&g) {
                    Some(w) => {
                        println!("{}", serde_json::to_string(&w).unwrap());
                        Outcome::Ok
                    }
                    None => Outcome::Negative(
                        "no non-string pattern found (proves nothing)".into(),
                    ),
                },
            },
        },
        Cmd::Lab { sub } => {
            let seed = cli.seed.unwrap_or_else(|| {
                std::env::var("CANONGRAPH_SEED")
                    .ok()
                    .and_then(|s| s.parse().ok())
                    .unwrap_or(0)
            });
            match sub {
                LabCmd::Count { n } => match lab::count_canonical_exact(n) {
                    Err(e) => Outcome::Usage(e.to_string()),
                    Ok(count) => {
                        println!("{}", serde_json::json!({"n": n, "count": count}));
                        Outcome::Ok
                    }
                },
                LabCmd::Speed { n } => lab_outcome(lab::speed_lower_bound_check(n)),
                LabCmd::Ratio { n, samples } => {
                    lab_outcome(lab::great_partition_ratio_experiment(n, samples, seed))
                }
                LabCmd::Pstar { n, samples } => {
                    lab_outcome(lab::pstar_statistics(n, samples, seed))
                }
            }
        }
        Cmd::Universal { k, input } => match input {
            None => match build_universal(k) {
                Err(e) => Outcome::Usage(e.to_string()),
                Ok(g) => {
                    println!("{}", to_graph6(&g));
                    Outcome::Ok
                }
            },
            Some(path) => match read_graph(&Some(path)) {
                Err(e) => Outcome::Usage(e),
                Ok(g) => match contains_universal(&g, k) {
                    Err(e) => Outcome::Usage(e.to_string()),
                    Ok(true) => {
                        println!("contains U({})", k);
                        Outcome::Ok
                    }
                    Ok(false) => Outcome::Negative(format!("does not contain U({})", k)),
                },
            },
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // default stays sequential; an existing pool is fine in tests
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    } else {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    }
    let outcome = run(cli);
    match &outcome {
        Outcome::Ok => {}
        Outcome::Negative(msg) | Outcome::Usage(msg) | Outcome::Defect(msg) => {
            eprintln!("{}", msg);
        }
    }
    ExitCode::from(outcome.code())
}
