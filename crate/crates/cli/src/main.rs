//! drgen: decide whether digraphs are generated by k derangements and
//! whether bipartite graphs are covered by k 1-factors.
//!
//! Exit codes: 0 feasible/ok, 1 infeasible/refuted (a certificate or reason
//! is printed), 2 usage or parse error, 3 unresolved (window only).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use drgen_core::cover::{cover_with_k, min_cover, Extendability, MinCoverOutcome};
use drgen_core::derange::{
    generate_with_k, min_derangements, Generability, MinDerangementsOutcome,
};
use drgen_core::dgf::{parse, serialize_bipartite, DgfObject};
use drgen_core::graph::{bipartite_double, BipartiteMultigraph, Digraph, Side};
use drgen_core::lazy::{
    lower_bound_scan_bipartite, lower_bound_scan_digraph, window_refute_bipartite,
    window_refute_digraph, Family, FamilyGraph, LazyBipartite, LazyDigraph, ScanRow,
    WindowReport, WindowVerdict,
};
use drgen_core::oracle::{
    brute_conditions_digraph, brute_conditions_graph, brute_min_cover, brute_min_derangements,
    brute_one_extendable, enumerate_perfect_matchings,
};
use drgen_core::Feasibility;

const OK: u8 = 0;
const INFEASIBLE: u8 = 1;
const UNRESOLVED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "drgen",
    version,
    about = "Generate digraphs by derangements and cover bipartite graphs by 1-factors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputFlags {
    /// Ignore exactly repeated arc or edge lines instead of rejecting them.
    #[arg(long)]
    dedup: bool,
    /// Replace each arc (x, y) of a digraph input with the pair (x, y), (y, x).
    #[arg(long)]
    undirected: bool,
}

#[derive(Args)]
struct OutputFlags {
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FamilyFlags {
    /// Built-in family: ladder-digraph, ladder-graph, subdivided-product, Gk, or Dk.
    #[arg(long)]
    family: String,
    /// k parameter for the finite families Gk and Dk.
    #[arg(long = "k-param")]
    k_param: Option<u32>,
    /// DGF file with the bipartite graph H for subdivided-product.
    #[arg(long = "H", value_name = "FILE")]
    h_file: Option<PathBuf>,
    /// Window center; defaults to the family's seed vertex.
    #[arg(long)]
    center: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility at the given k and print a certificate if not.
    Check {
        #[arg(short)]
        k: u32,
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Compute the minimum k, or explain why none exists.
    MinK {
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Print a generating set of k derangements for a digraph input.
    Synthesize {
        #[arg(short)]
        k: u32,
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Print a cover by k 1-factors for a bipartite input.
    Cover {
        #[arg(short)]
        k: u32,
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Emit the bipartite double of a digraph input as DGF.
    Double {
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
    },
    /// Try to refute a family at one k on the ball of one radius.
    Window {
        #[command(flatten)]
        family: FamilyFlags,
        #[arg(short)]
        k: u32,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Smallest refuting radius for each k up to a bound.
    Scan {
        #[command(flatten)]
        family: FamilyFlags,
        #[arg(long = "k-max", default_value_t = 8)]
        k_max: u32,
        /// Largest radius tried per k; defaults to 4 times k-max.
        #[arg(long = "r-max")]
        r_max: Option<u32>,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Exhaustive reference computations for small inputs.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Search all vertex subsets for a violated counting condition.
    Conditions {
        #[arg(short)]
        k: u32,
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Enumerate all perfect matchings of a bipartite input.
    Matchings {
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Minimum 1-factor cover size by exhaustive search.
    MinCover {
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Minimum derangement set size by exhaustive search.
    MinDerangements {
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// 1-extendability by enumerating every perfect matching.
    OneExtendable {
        file: PathBuf,
        #[command(flatten)]
        input: InputFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path, input: &InputFlags) -> Result<DgfObject, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let obj = parse(&text, input.dedup).map_err(|e| e.to_string())?;
    if !input.undirected {
        return Ok(obj);
    }
    match obj {
        DgfObject::Digraph(d) => Ok(DgfObject::Digraph(d.symmetrized())),
        DgfObject::Bipartite(_) => {
            Err("--undirected applies only to digraph input".to_string())
        }
    }
}

fn load_digraph(path: &Path, input: &InputFlags, what: &str) -> Result<Digraph, String> {
    match load(path, input)? {
        DgfObject::Digraph(d) => Ok(d),
        DgfObject::Bipartite(_) => Err(format!("{what} needs a digraph input")),
    }
}

fn load_bipartite(
    path: &Path,
    input: &InputFlags,
    what: &str,
) -> Result<BipartiteMultigraph, String> {
    match load(path, input)? {
        DgfObject::Bipartite(g) => Ok(g),
        DgfObject::Digraph(_) => Err(format!("{what} needs a bipartite input")),
    }
}

enum LazyEither {
    D(LazyDigraph),
    B(LazyBipartite),
}

fn build_family(flags: &FamilyFlags) -> Result<LazyEither, String> {
    let h = match &flags.h_file {
        None => None,
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            match parse(&text, false).map_err(|e| e.to_string())? {
                DgfObject::Bipartite(g) => Some(g),
                DgfObject::Digraph(_) => {
                    return Err("--H needs a bipartite DGF file".to_string())
                }
            }
        }
    };
    let family = Family::from_parts(&flags.family, flags.k_param, h).map_err(|e| e.to_string())?;
    match family.build().map_err(|e| e.to_string())? {
        FamilyGraph::Lazy(l) => Ok(LazyEither::D(l)),
        FamilyGraph::LazyBipartite(l) => Ok(LazyEither::B(l)),
        FamilyGraph::FiniteDigraph(d) => Ok(LazyEither::D(
            LazyDigraph::from_digraph(&d).map_err(|e| e.to_string())?,
        )),
        FamilyGraph::FiniteBipartite(g) => Ok(LazyEither::B(
            LazyBipartite::from_bipartite(&g).map_err(|e| e.to_string())?,
        )),
    }
}

fn finish_window<C: serde::Serialize>(report: &WindowReport<C>, json: bool) -> u8 {
    match &report.verdict {
        WindowVerdict::Refuted(cert) => {
            let cert_json = serde_json::to_string(cert).expect("certificates serialize");
            if json {
                println!(
                    "{{\"verdict\":\"refuted\",\"k\":{},\"radius\":{},\"window_size\":{},\"certificate\":{}}}",
                    report.k, report.radius, report.window_size, cert_json
                );
            } else {
                println!("{cert_json}");
            }
            INFEASIBLE
        }
        WindowVerdict::Unresolved => {
            if json {
                println!(
                    "{{\"verdict\":\"unresolved\",\"k\":{},\"radius\":{},\"window_size\":{}}}",
                    report.k, report.radius, report.window_size
                );
            } else {
                println!("unresolved");
            }
            UNRESOLVED
        }
    }
}

fn print_scan(rows: &[ScanRow], json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string(rows).expect("scan rows serialize")
        );
        return;
    }
    for row in rows {
        match (row.refuting_radius, row.window_size) {
            (Some(r), Some(size)) => println!("k={} radius={r} window={size}", row.k),
            _ => println!("k={} unresolved", row.k),
        }
    }
}

fn generability_reason(g: &Generability) -> String {
    let list = |t: &[String]| t.join(", ");
    match g {
        Generability::Deficient {
            forward,
            t,
            neighborhood,
        } => {
            let dir = if *forward { "out" } else { "in" };
            format!(
                "not generable: T = {{{}}} has {dir}-neighborhood {{{}}} smaller than T",
                list(t),
                list(neighborhood)
            )
        }
        Generability::TightNotClosed { forward, t, closure } => {
            let dir = if *forward { "out" } else { "in" };
            format!(
                "not generable: tight set T = {{{}}} is not {dir}-closed (closure {{{}}})",
                list(t),
                list(closure)
            )
        }
        Generability::Generable => "not generable at any finite k".to_string(),
    }
}

fn extendability_reason(e: &Extendability) -> String {
    match e {
        Extendability::BlockedEdge { x, y } => {
            format!("not coverable: edge {{{x}, {y}}} lies in no perfect matching")
        }
        Extendability::NoFactor { side, t } => {
            let part = match side {
                Side::Left => "left",
                Side::Right => "right",
            };
            format!(
                "not coverable: no perfect matching, |N(T)| < |T| for the {part} set T = {{{}}}",
                t.join(", ")
            )
        }
        Extendability::Extendable => "not coverable at any finite k".to_string(),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Check {
            k,
            file,
            input,
            output,
        } => match load(&file, &input)? {
            DgfObject::Digraph(d) => {
                let out = generate_with_k(&d, k).map_err(|e| e.to_string())?;
                finish_check(out.map_json(), k, output.json)
            }
            DgfObject::Bipartite(g) => {
                let out = cover_with_k(&g, k).map_err(|e| e.to_string())?;
                finish_check(out.map_json(), k, output.json)
            }
        },
        Command::MinK {
            file,
            input,
            output,
        } => match load(&file, &input)? {
            DgfObject::Digraph(d) => {
                match min_derangements(&d).map_err(|e| e.to_string())? {
                    MinDerangementsOutcome::Generable { k_min, set } => {
                        if output.json {
                            println!("{}", set.to_json());
                        } else {
                            println!("k={k_min}");
                        }
                        Ok(OK)
                    }
                    MinDerangementsOutcome::NotGenerable(reason) => {
                        let text = generability_reason(&reason);
                        if output.json {
                            println!(
                                "{{\"k\":null,\"reason\":{}}}",
                                serde_json::to_string(&text).expect("strings serialize")
                            );
                        } else {
                            println!("{text}");
                        }
                        Ok(INFEASIBLE)
                    }
                }
            }
            DgfObject::Bipartite(g) => match min_cover(&g).map_err(|e| e.to_string())? {
                MinCoverOutcome::Coverable { k_min, cover } => {
                    if output.json {
                        println!("{}", cover.to_json());
                    } else {
                        println!("k={k_min}");
                    }
                    Ok(OK)
                }
                MinCoverOutcome::NotCoverable(reason) => {
                    let text = extendability_reason(&reason);
                    if output.json {
                        println!(
                            "{{\"k\":null,\"reason\":{}}}",
                            serde_json::to_string(&text).expect("strings serialize")
                        );
                    } else {
                        println!("{text}");
                    }
                    Ok(INFEASIBLE)
                }
            },
        },
        Command::Synthesize {
            k,
            file,
            input,
            output,
        } => {
            let d = load_digraph(&file, &input, "synthesize")?;
            match generate_with_k(&d, k).map_err(|e| e.to_string())? {
                Feasibility::Feasible(set) => {
                    if output.json {
                        println!("{}", set.to_json());
                    } else {
                        for line in set.notations() {
                            println!("{line}");
                        }
                    }
                    Ok(OK)
                }
                Feasibility::Infeasible(cert) => {
                    println!("{}", cert.to_json());
                    Ok(INFEASIBLE)
                }
            }
        }
        Command::Cover {
            k,
            file,
            input,
            output,
        } => {
            let g = load_bipartite(&file, &input, "cover")?;
            match cover_with_k(&g, k).map_err(|e| e.to_string())? {
                Feasibility::Feasible(cover) => {
                    if output.json {
                        println!("{}", cover.to_json());
                    } else {
                        for f in cover.factors() {
                            println!(
                                "{}",
                                serde_json::to_string(f).expect("factors serialize")
                            );
                        }
                    }
                    Ok(OK)
                }
                Feasibility::Infeasible(cert) => {
                    println!("{}", cert.to_json());
                    Ok(INFEASIBLE)
                }
            }
        }
        Command::Double { file, input } => {
            let d = load_digraph(&file, &input, "double")?;
            print!("{}", serialize_bipartite(&bipartite_double(&d)));
            Ok(OK)
        }
        Command::Window {
            family,
            k,
            radius,
            output,
        } => {
            let built = build_family(&family)?;
            match built {
                LazyEither::D(l) => {
                    let center = family.center.clone().unwrap_or_else(|| l.seed().to_string());
                    let report = window_refute_digraph(&l, k, &center, radius)
                        .map_err(|e| e.to_string())?;
                    Ok(finish_window(&report, output.json))
                }
                LazyEither::B(l) => {
                    let center = family.center.clone().unwrap_or_else(|| l.seed().to_string());
                    let report = window_refute_bipartite(&l, k, &center, radius)
                        .map_err(|e| e.to_string())?;
                    Ok(finish_window(&report, output.json))
                }
            }
        }
        Command::Scan {
            family,
            k_max,
            r_max,
            output,
        } => {
            let r_max = r_max.unwrap_or(4 * k_max);
            let built = build_family(&family)?;
            let rows = match built {
                LazyEither::D(l) => {
                    let center = family.center.clone().unwrap_or_else(|| l.seed().to_string());
                    lower_bound_scan_digraph(&l, &center, k_max, r_max)
                        .map_err(|e| e.to_string())?
                }
                LazyEither::B(l) => {
                    let center = family.center.clone().unwrap_or_else(|| l.seed().to_string());
                    lower_bound_scan_bipartite(&l, &center, k_max, r_max)
                        .map_err(|e| e.to_string())?
                }
            };
            print_scan(&rows, output.json);
            Ok(OK)
        }
        Command::Oracle { op } => run_oracle(op),
    }
}

/// Adapter so the two check paths share one printer: the certificate is
/// pre-serialized.
trait MapJson {
    fn map_json(self) -> Feasibility<(), String>;
}

impl<T, C: serde::Serialize> MapJson for Feasibility<T, C> {
    fn map_json(self) -> Feasibility<(), String> {
        match self {
            Feasibility::Feasible(_) => Feasibility::Feasible(()),
            Feasibility::Infeasible(c) => Feasibility::Infeasible(
                serde_json::to_string(&c).expect("certificates serialize"),
            ),
        }
    }
}

fn finish_check(out: Feasibility<(), String>, k: u32, json: bool) -> Result<u8, String> {
    match out {
        Feasibility::Feasible(()) => {
            if json {
                println!("{{\"feasible\":true,\"k\":{k}}}");
            } else {
                println!("feasible");
            }
            Ok(OK)
        }
        Feasibility::Infeasible(cert_json) => {
            if json {
                println!("{{\"feasible\":false,\"k\":{k},\"certificate\":{cert_json}}}");
            } else {
                println!("{cert_json}");
            }
            Ok(INFEASIBLE)
        }
    }
}

fn run_oracle(op: OracleOp) -> Result<u8, String> {
    match op {
        OracleOp::Conditions {
            k,
            file,
            input,
            output,
        } => {
            let cert_json = match load(&file, &input)? {
                DgfObject::Digraph(d) => brute_conditions_digraph(&d, k)
                    .map_err(|e| e.to_string())?
                    .map(|c| c.to_json()),
                DgfObject::Bipartite(g) => brute_conditions_graph(&g, k)
                    .map_err(|e| e.to_string())?
                    .map(|c| c.to_json()),
            };
            match cert_json {
                Some(cert) => {
                    println!("{cert}");
                    Ok(INFEASIBLE)
                }
                None => {
                    if output.json {
                        println!("{{\"feasible\":true,\"k\":{k}}}");
                    } else {
                        println!("ok");
                    }
                    Ok(OK)
                }
            }
        }
        OracleOp::Matchings {
            file,
            input,
            output,
        } => {
            let g = load_bipartite(&file, &input, "oracle matchings")?;
            let ms = enumerate_perfect_matchings(&g).map_err(|e| e.to_string())?;
            if output.json {
                println!(
                    "{}",
                    serde_json::to_string(&ms).expect("factors serialize")
                );
            } else {
                for m in &ms {
                    println!("{}", serde_json::to_string(m).expect("factors serialize"));
                }
            }
            Ok(OK)
        }
        OracleOp::MinCover {
            file,
            input,
            output,
        } => {
            let g = load_bipartite(&file, &input, "oracle min-cover")?;
            finish_minimum(
                brute_min_cover(&g).map_err(|e| e.to_string())?,
                "not coverable",
                output.json,
            )
        }
        OracleOp::MinDerangements {
            file,
            input,
            output,
        } => {
            let d = load_digraph(&file, &input, "oracle min-derangements")?;
            finish_minimum(
                brute_min_derangements(&d).map_err(|e| e.to_string())?,
                "not generable",
                output.json,
            )
        }
        OracleOp::OneExtendable {
            file,
            input,
            output,
        } => {
            let g = load_bipartite(&file, &input, "oracle one-extendable")?;
            let yes = brute_one_extendable(&g).map_err(|e| e.to_string())?;
            if output.json {
                println!("{{\"one_extendable\":{yes}}}");
            } else {
                println!("{yes}");
            }
            Ok(if yes { OK } else { INFEASIBLE })
        }
    }
}

fn finish_minimum(min: Option<u32>, miss: &str, json: bool) -> Result<u8, String> {
    match min {
        Some(m) => {
            if json {
                println!("{{\"k\":{m}}}");
            } else {
                println!("k={m}");
            }
            Ok(OK)
        }
        None => {
            if json {
                println!("{{\"k\":null}}");
            } else {
                println!("{miss}");
            }
            Ok(INFEASIBLE)
        }
    }
}
