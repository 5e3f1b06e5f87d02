use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use maneuver_route::io::{
    parse_maneuvers, parse_network, serialize_maneuvers, serialize_network, serialize_result,
    serialize_trace,
};
use maneuver_route::oracle::{
    cross_check, is_strongly_connected, random_proper_network, GenParams, OracleError,
};
use maneuver_route::{Error, MDijkstra, ParseError, RoadNetwork, VertexId};

const OK: u8 = 0;
const FAILED: u8 = 1;
const INPUT: u8 = 2;
const IMPROPER: u8 = 3;
const INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "mroute", version, about = "Shortest valid walks in road networks with maneuvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Files {
    #[arg(long)]
    network: PathBuf,
    #[arg(long)]
    maneuvers: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Shortest valid walk between two vertices
    Query {
        #[command(flatten)]
        files: Files,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// print the search trace to stderr
        #[arg(long)]
        trace: bool,
        /// run on networks that are not proper (result is best-effort)
        #[arg(long)]
        skip_properness_check: bool,
    },
    /// Check the properness rules
    Validate {
        #[command(flatten)]
        files: Files,
    },
    /// Compare the search with the reference oracles
    Oracle {
        #[command(flatten)]
        files: Files,
        /// `all` or `s,t`
        #[arg(long, default_value = "all")]
        pairs: String,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Write a random proper network
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        min_vertices: usize,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        min_edges: usize,
        #[arg(long, default_value_t = 25)]
        max_edges: usize,
        #[arg(long, default_value_t = 1)]
        min_maneuvers: usize,
        #[arg(long, default_value_t = 6)]
        max_maneuvers: usize,
        #[arg(long, default_value_t = 4)]
        max_maneuver_edges: usize,
        /// write network.txt and maneuvers.txt here instead of stdout
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Strong connectivity with maneuvers
    Connectivity {
        #[command(flatten)]
        files: Files,
    },
    /// Time queries on generated networks of growing size
    Bench {
        #[arg(long)]
        seed: u64,
        /// comma-separated vertex counts
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
        sizes: Vec<usize>,
    },
}

fn load(files: &Files) -> Result<RoadNetwork, u8> {
    let read = |p: &Path| {
        fs::read_to_string(p).map_err(|e| {
            eprintln!("error: {}: {e}", p.display());
            INPUT
        })
    };
    let report = |path: &Path, e: ParseError| {
        for d in &e.diagnostics {
            eprintln!("error: {}:{d}", path.display());
        }
        INPUT
    };
    let g = parse_network(&read(&files.network)?).map_err(|e| report(&files.network, e))?;
    let specs = parse_maneuvers(&read(&files.maneuvers)?, &g)
        .map_err(|e| report(&files.maneuvers, e))?;
    RoadNetwork::new(g, specs).map_err(|e| {
        eprintln!("error: {e}");
        INPUT
    })
}

fn vertex(net: &RoadNetwork, name: &str) -> Result<VertexId, u8> {
    net.vertex(name).map_err(|e| {
        eprintln!("error: {e}");
        INPUT
    })
}

fn engine_error(e: Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        Error::Improper(_) => IMPROPER,
        Error::Internal(_) => INTERNAL,
        _ => INPUT,
    }
}

fn query(files: &Files, from: &str, to: &str, trace: bool, skip: bool) -> Result<u8, u8> {
    let net = load(files)?;
    let (s, t) = (vertex(&net, from)?, vertex(&net, to)?);
    let engine = if skip {
        MDijkstra::unchecked(&net)
    } else {
        MDijkstra::new(&net).map_err(engine_error)?
    };
    let result = if trace {
        let (result, rows) = engine.trace(s, t).map_err(engine_error)?;
        eprint!("{}", serialize_trace(&net, &rows));
        result
    } else {
        engine.query(s, t).map_err(engine_error)?
    };
    if result.best_effort {
        println!("# best-effort: properness not checked, optimality not guaranteed");
    }
    print!("{}", serialize_result(net.graph(), &result));
    Ok(if result.is_reachable() { OK } else { FAILED })
}

fn validate(files: &Files) -> Result<u8, u8> {
    let net = load(files)?;
    let report = net.check_proper();
    println!("{report}");
    Ok(if report.proper { OK } else { FAILED })
}

fn oracle(files: &Files, pairs: &str, max_edges: Option<usize>) -> Result<u8, u8> {
    let net = load(files)?;
    let selected = if pairs == "all" {
        None
    } else {
        let Some((s, t)) = pairs.split_once(',') else {
            eprintln!("error: --pairs takes `all` or `s,t`");
            return Err(INPUT);
        };
        Some(vec![(vertex(&net, s.trim())?, vertex(&net, t.trim())?)])
    };
    let check = cross_check(&net, selected.as_deref(), max_edges).map_err(|e| match e {
        OracleError::Engine(e) => engine_error(e),
        other => {
            eprintln!("error: {other}");
            INTERNAL
        }
    })?;
    if let Some(why) = &check.enumeration_skipped {
        println!("# enumeration skipped: {why}");
    }
    let g = net.graph();
    let fmt = maneuver_route::io::format_value;
    for v in &check.verdicts {
        println!(
            "{} {} engine={} bellman_ford={} enumeration={} {}",
            g.vertex_name(v.source),
            g.vertex_name(v.target),
            fmt(v.engine),
            fmt(v.bellman_ford),
            v.enumeration.map_or("skipped".to_string(), fmt),
            if v.agrees() { "agree" } else { "DISAGREE" }
        );
    }
    Ok(if check.all_agree() { OK } else { INTERNAL })
}

fn connectivity(files: &Files) -> Result<u8, u8> {
    let net = load(files)?;
    let connected = is_strongly_connected(&net);
    println!("{}", if connected { "strongly connected" } else { "not strongly connected" });
    Ok(if connected { OK } else { FAILED })
}

fn bench(seed: u64, sizes: &[usize]) -> Result<u8, u8> {
    println!("size,c_M,pairs,relaxations,millis");
    for &size in sizes {
        let params = GenParams {
            seed,
            vertices: size..=size,
            edges: 3 * size..=3 * size,
            maneuvers: size / 4..=size / 4,
            ..GenParams::default()
        };
        let generated = random_proper_network(&params).map_err(|e| {
            eprintln!("error: {e}");
            INTERNAL
        })?;
        let net = generated.network;
        let engine = MDijkstra::new(&net).map_err(engine_error)?;
        let n = net.graph().vertex_count() as u32;
        let started = Instant::now();
        let (mut pairs, mut relaxations) = (0, 0);
        for i in 0..10u32 {
            let s = VertexId(i * 7919 % n);
            let t = VertexId((i * 104_729 + 1) % n);
            let r = engine.query(s, t).map_err(engine_error)?;
            pairs += r.stats.pairs_scanned;
            relaxations += r.stats.relaxations;
        }
        println!(
            "{size},{},{pairs},{relaxations},{}",
            net.maneuvers().c_m(),
            started.elapsed().as_millis()
        );
    }
    Ok(OK)
}

#[allow(clippy::too_many_arguments)]
fn gen(
    seed: u64,
    vertices: (usize, usize),
    edges: (usize, usize),
    maneuvers: (usize, usize),
    max_maneuver_edges: usize,
    out_dir: Option<&Path>,
) -> Result<u8, u8> {
    if vertices.0 == 0 || vertices.0 > vertices.1 || edges.0 > edges.1 || maneuvers.0 > maneuvers.1 {
        eprintln!("error: empty range in generation parameters");
        return Err(INPUT);
    }
    let params = GenParams {
        seed,
        vertices: vertices.0..=vertices.1,
        edges: edges.0..=edges.1,
        maneuvers: maneuvers.0..=maneuvers.1,
        maneuver_edges: 0..=max_maneuver_edges,
        ..GenParams::default()
    };
    let generated = random_proper_network(&params).map_err(|e| {
        eprintln!("error: {e}");
        INTERNAL
    })?;
    for line in &generated.log {
        eprintln!("{line}");
    }
    let g = generated.network.graph();
    let network = serialize_network(g);
    let maneuvers = serialize_maneuvers(g, generated.network.maneuvers()).map_err(engine_error)?;
    match out_dir {
        Some(dir) => {
            let write = |name: &str, text: &str| {
                fs::write(dir.join(name), text).map_err(|e| {
                    eprintln!("error: {}: {e}", dir.join(name).display());
                    INPUT
                })
            };
            fs::create_dir_all(dir).map_err(|e| {
                eprintln!("error: {}: {e}", dir.display());
                INPUT
            })?;
            write("network.txt", &network)?;
            write("maneuvers.txt", &maneuvers)?;
        }
        None => {
            println!("# network");
            print!("{network}");
            println!("# maneuvers");
            print!("{maneuvers}");
        }
    }
    Ok(OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Query {
            files,
            from,
            to,
            trace,
            skip_properness_check,
        } => query(files, from, to, *trace, *skip_properness_check),
        Command::Validate { files } => validate(files),
        Command::Oracle {
            files,
            pairs,
            max_edges,
        } => oracle(files, pairs, *max_edges),
        Command::Gen {
            seed,
            min_vertices,
            max_vertices,
            min_edges,
            max_edges,
            min_maneuvers,
            max_maneuvers,
            max_maneuver_edges,
            out_dir,
        } => gen(
            *seed,
            (*min_vertices, *max_vertices),
            (*min_edges, *max_edges),
            (*min_maneuvers, *max_maneuvers),
            *max_maneuver_edges,
            out_dir.as_deref(),
        ),
        Command::Connectivity { files } => connectivity(files),
        Command::Bench { seed, sizes } => bench(*seed, sizes),
    };
    ExitCode::from(outcome.unwrap_or_else(|code| code))
}
