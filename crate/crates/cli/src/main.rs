//! `shockpath`: resilience surfaces of weighted directed networks from the
//! command line.

mod config;
mod emit;
mod failure;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shockpath::{
    parse_edge_list, parse_node_set, path_stats, pc_census, sweep, Network, PcStrategy, Shock,
};

use crate::config::{GridSpec, SweepConfig, VectorSpec};
use crate::emit::{format_mu, surface_csv, surface_svg, SweepReport};
use crate::failure::Failure;

const STRATEGIES: [&str; 3] = ["pre-traversal", "post-arrival", "literal"];

#[derive(Parser)]
#[command(name = "shockpath", version, about = "Path-based shock propagation resilience of weighted directed networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Node, arc and path counts of an edge list.
    Info { edges: PathBuf },
    /// Number of simple paths per length, as CSV.
    Paths {
        edges: PathBuf,
        /// Stop at paths of this many arcs.
        #[arg(long = "max-k")]
        max_k: Option<usize>,
        /// Break counts down by start node.
        #[arg(long)]
        by_start: bool,
    },
    /// Resilience measure for a single shock size and discount.
    Mu(MuArgs),
    /// Resilience surface over a grid of shock sizes and discounts.
    Sweep(SweepArgs),
    /// Node-induced subnetwork on the labels listed in a file.
    Extract {
        edges: PathBuf,
        #[arg(long)]
        nodes: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct MuArgs {
    edges: PathBuf,
    /// Preset (gamma1, gamma2, gamma3) or comma-separated thresholds.
    #[arg(long)]
    gamma: String,
    /// Preset (theta1, theta2, theta3) or comma-separated weights.
    #[arg(long)]
    theta: String,
    #[arg(long)]
    xi: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, value_parser = STRATEGIES, default_value = "pre-traversal")]
    strategy: String,
}

#[derive(Args)]
struct SweepArgs {
    edges: PathBuf,
    /// JSON configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    /// Comma-separated values or start:stop:step (default 0:10:1).
    #[arg(long = "xi-grid")]
    xi_grid: Option<String>,
    /// Comma-separated values or start:stop:step (default 0:1:0.1).
    #[arg(long = "delta-grid")]
    delta_grid: Option<String>,
    #[arg(long, value_parser = STRATEGIES)]
    strategy: Option<String>,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Include per-length passing path counts for every cell in the JSON.
    #[arg(long = "per-k")]
    per_k: bool,
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn load_network(path: &Path) -> Result<Network, Failure> {
    let (net, report) = parse_edge_list(&read_text(path)?)?;
    for w in &report.warnings {
        eprintln!("warning: {}: line {}: {}", path.display(), w.line, w.message);
    }
    Ok(net)
}

fn info(edges: &Path) -> Result<(), Failure> {
    let net = load_network(edges)?;
    let stats = path_stats(&net);
    let mut line = format!(
        "nodes={} arcs={} kbar={}; paths:",
        net.node_count(),
        net.arc_count(),
        stats.k_bar
    );
    for (k, count) in stats.counts_by_length.iter().enumerate() {
        let _ = write!(line, " k={}:{count}", k + 1);
    }
    println!("{line}");
    Ok(())
}

fn paths(edges: &Path, max_k: Option<usize>, by_start: bool) -> Result<(), Failure> {
    let net = load_network(edges)?;
    let stats = shockpath::enumerate_paths(&net, max_k, |_| std::ops::ControlFlow::Continue(()))?;
    let mut out = String::new();
    if by_start {
        out.push_str("start,k,count\n");
        for (start, counts) in stats.counts_by_start.iter().enumerate() {
            for (k, count) in counts.iter().enumerate() {
                let _ = writeln!(out, "{},{},{count}", net.label(start), k + 1);
            }
        }
    } else {
        out.push_str("k,count\n");
        for (k, count) in stats.counts_by_length.iter().enumerate() {
            let _ = writeln!(out, "{},{count}", k + 1);
        }
    }
    print!("{out}");
    if stats.truncated {
        eprintln!("note: longer paths exist beyond --max-k {}", max_k.unwrap_or(0));
    }
    Ok(())
}

fn mu(args: &MuArgs) -> Result<(), Failure> {
    let net = load_network(&args.edges)?;
    let k_bar = path_stats(&net).k_bar;
    let cfg = SweepConfig {
        gamma: Some(VectorSpec::from_arg(&args.gamma)?),
        theta: Some(VectorSpec::from_arg(&args.theta)?),
        strategy: Some(args.strategy.parse()?),
        ..Default::default()
    };
    let resolved = cfg.resolve(k_bar)?;
    let shock = Shock::new(args.xi, args.delta)?;
    let census = pc_census(&net, &resolved.gamma, shock, resolved.strategy)?;
    println!("{}", format_mu(shockpath::mu(&census, &resolved.theta)?));
    Ok(())
}

fn sweep_cmd(args: &SweepArgs) -> Result<(), Failure> {
    let net = load_network(&args.edges)?;
    let file_cfg = match &args.config {
        Some(path) => SweepConfig::from_json(&read_text(path)?)?,
        None => SweepConfig::default(),
    };
    let flag_cfg = SweepConfig {
        gamma: args.gamma.as_deref().map(VectorSpec::from_arg).transpose()?,
        theta: args.theta.as_deref().map(VectorSpec::from_arg).transpose()?,
        xi_grid: args.xi_grid.clone().map(GridSpec::Text),
        delta_grid: args.delta_grid.clone().map(GridSpec::Text),
        strategy: args
            .strategy
            .as_deref()
            .map(str::parse::<PcStrategy>)
            .transpose()?,
        emit_per_k: args.per_k,
    };
    let cfg = file_cfg.overlay(flag_cfg);
    let k_bar = path_stats(&net).k_bar;
    let resolved = cfg.resolve(k_bar)?;

    let mut surface = sweep(
        &net,
        &resolved.gamma,
        &resolved.theta,
        &resolved.xi_grid,
        &resolved.delta_grid,
        resolved.strategy,
    )?;
    surface.network.name = args
        .edges
        .file_name()
        .map(|n| n.to_string_lossy().into_owned());
    if !resolved.emit_per_k {
        surface.pc_counts = None;
    }

    write_text(&args.output, &surface_csv(&surface))?;
    if let Some(path) = &args.svg {
        write_text(path, &surface_svg(&surface))?;
    }
    if let Some(path) = &args.json {
        let report = SweepReport::new(surface.clone(), resolved.gamma_preset, resolved.theta_preset);
        write_text(path, &report.to_json())?;
    }
    eprintln!(
        "{} cells written to {}",
        surface.cell_count(),
        args.output.display()
    );
    Ok(())
}

fn extract(edges: &Path, nodes: &Path, output: &Path) -> Result<(), Failure> {
    let net = load_network(edges)?;
    let keep = parse_node_set(&read_text(nodes)?);
    let (sub, unknown) = net.subnetwork(&keep)?;
    for label in &unknown {
        eprintln!("warning: node `{label}` is not in {}", edges.display());
    }
    write_text(output, &sub.to_edge_list())?;
    println!("nodes={} arcs={}", sub.node_count(), sub.arc_count());
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Info { edges } => info(&edges),
        Command::Paths {
            edges,
            max_k,
            by_start,
        } => paths(&edges, max_k, by_start),
        Command::Mu(args) => mu(&args),
        Command::Sweep(args) => sweep_cmd(&args),
        Command::Extract {
            edges,
            nodes,
            output,
        } => extract(&edges, &nodes, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
