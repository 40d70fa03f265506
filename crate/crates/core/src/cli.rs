//! The `netrecon` command line.
//!
//! Exit status is 0 on success, 1 when a validation or verification check
//! fails (or the input data is inconsistent), and 2 for unreadable input,
//! schema errors and bad arguments. Errors are reported on standard error as
//! `{"error": {"code": ..., "message": ...}}`.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::compliance::clean;
use crate::dot::{graph_to_dot, tree_to_dot};
use crate::error::Error;
use crate::generator::{random_network, GeneratorParams};
use crate::graph::{validate_with, NetworkGraph, ValidationOptions};
use crate::pcd::{build_receiver_tree, build_source_tree, measure, validate_pcd, PathCorrelationData};
use crate::reconstruct::{reconstruct_symmetric_with, reconstruct_with, ReconstructOptions};
use crate::verify::{check_theorem, pcd_max_difference};

#[derive(Debug, Parser)]
#[command(name = "netrecon", version, about = "Reconstruct routed network graphs from path correlation data")]
pub struct Cli {
    /// Tolerance for comparing distances and weights.
    #[arg(long, global = true, default_value_t = crate::DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    General,
    Specialized,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random network graph.
    Generate {
        /// Read generator parameters from a JSON file instead of flags.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        boundary: usize,
        #[arg(long, default_value_t = 6)]
        internal: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 1.0)]
        min_weight: f64,
        #[arg(long, default_value_t = 10.0)]
        max_weight: f64,
        #[arg(long)]
        symmetric_routing: bool,
        #[arg(long)]
        symmetric_weights: bool,
        /// Clean the graph so that it is the canonical form of its data.
        #[arg(long)]
        compliant: bool,
        #[arg(long)]
        no_jitter: bool,
        #[arg(long)]
        integer_weights: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a graph (or, with --pcd, path correlation data).
    Validate {
        input: PathBuf,
        /// The input is path correlation data.
        #[arg(long)]
        pcd: bool,
        /// Check tree consistency on every pair of routes.
        #[arg(long)]
        strict: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Measure the path correlation data of a graph.
    Measure {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the logical source and receiver trees of path correlation data.
    Trees {
        input: PathBuf,
        /// Only this root.
        #[arg(long)]
        root: Option<String>,
        /// Also write source_<root>.dot and receiver_<root>.dot here.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reconstruct a graph from path correlation data.
    Reconstruct {
        input: PathBuf,
        #[arg(long)]
        symmetric_routing: bool,
        #[arg(long, value_enum, default_value_t = Algorithm::General)]
        algorithm: Algorithm,
        /// Write reconstruction counters as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Write the reconstructed graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a graph into its compliant form.
    Clean {
        input: PathBuf,
        #[arg(long)]
        symmetric: bool,
        /// Write the cleaning report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a graph is recovered from its own measurements.
    Verify {
        input: PathBuf,
        /// Also require the graph to reproduce this path correlation data.
        #[arg(long)]
        pcd: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a graph as DOT.
    ExportDot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<String, Error> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            Ok(fs::read_to_string(path)?)
        }
    }

    fn write(&mut self, path: Option<&Path>, text: &str) -> Result<(), Error> {
        let text = if text.ends_with('\n') { text.to_owned() } else { format!("{text}\n") };
        match path {
            Some(p) if p.as_os_str() != "-" => fs::write(p, text)?,
            _ => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    let text = if text.ends_with('\n') { text.to_owned() } else { format!("{text}\n") };
    Ok(fs::write(path, text)?)
}

/// Exit status for an error: 2 for input that could not be read or
/// understood, 1 for data that was read but failed a check.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Json(_)
        | Error::Io(_)
        | Error::UnknownVertex(_)
        | Error::DuplicateVertex(_)
        | Error::DuplicateRoute(..)
        | Error::InvalidArgument(_)
        | Error::UnsatisfiableParams(_) => 2,
        _ => 1,
    }
}

fn error_json(code: &str, message: &str) -> String {
    json!({ "error": { "code": code, "message": message } }).to_string()
}

/// Runs the command line with the given arguments (including the program
/// name) and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let _ = writeln!(stderr, "{}", error_json("USAGE", e.render().to_string().trim()));
            return 2;
        }
    };
    let mut io = Io { stdin, stdout };
    match execute(cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(e.code(), &e.to_string()));
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli, io: &mut Io) -> Result<i32, Error> {
    let eps = cli.epsilon;
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("epsilon must be a finite non-negative number, got {eps}")));
    }
    match cli.command {
        Command::Generate {
            params,
            seed,
            boundary,
            internal,
            density,
            min_weight,
            max_weight,
            symmetric_routing,
            symmetric_weights,
            compliant,
            no_jitter,
            integer_weights,
            output,
        } => {
            let p = match params {
                Some(path) => serde_json::from_str(&io.read(&path)?)?,
                None => GeneratorParams {
                    seed,
                    boundary_count: boundary,
                    internal_count: internal,
                    edge_density: density,
                    weight_range: (min_weight, max_weight),
                    symmetric_routing,
                    symmetric_weights,
                    ensure_compliant: compliant,
                    jitter: !no_jitter,
                    integer_weights,
                },
            };
            let g = random_network(&p)?;
            io.write(output.as_deref(), &g.to_json())?;
            Ok(0)
        }
        Command::Validate { input, pcd, strict, output } => {
            let text = io.read(&input)?;
            let report = if pcd {
                validate_pcd(&PathCorrelationData::from_json(&text)?, eps)
            } else {
                let g = NetworkGraph::from_json(&text)?;
                validate_with(&g, ValidationOptions { strict_tree_consistency: strict })
            };
            io.write(output.as_deref(), &serde_json::to_string_pretty(&report)?)?;
            Ok(if report.valid { 0 } else { 1 })
        }
        Command::Measure { input, output } => {
            let g = NetworkGraph::from_json(&io.read(&input)?)?;
            io.write(output.as_deref(), &measure(&g)?.to_json())?;
            Ok(0)
        }
        Command::Trees {
            input,
            root,
            dot_dir,
            output,
        } => {
            let pcd = PathCorrelationData::from_json(&io.read(&input)?)?;
            let report = validate_pcd(&pcd, eps);
            if !report.valid {
                return Err(Error::InvalidPcd(report));
            }
            let roots: Vec<String> = match root {
                Some(r) => {
                    pcd.index_of(&r).ok_or_else(|| Error::UnknownVertex(r.clone()))?;
                    vec![r]
                }
                None => pcd.boundary().iter().map(|b| b.to_string()).collect(),
            };
            if let Some(dir) = &dot_dir {
                fs::create_dir_all(dir)?;
            }
            let mut source = Vec::new();
            let mut receiver = Vec::new();
            for r in &roots {
                let s = build_source_tree(&pcd, r)?;
                let t = build_receiver_tree(&pcd, r)?;
                if let Some(dir) = &dot_dir {
                    write_file(&dir.join(format!("source_{r}.dot")), &tree_to_dot(&s))?;
                    write_file(&dir.join(format!("receiver_{r}.dot")), &tree_to_dot(&t))?;
                }
                source.push(s.to_value());
                receiver.push(t.to_value());
            }
            let doc = json!({ "source_trees": source, "receiver_trees": receiver });
            io.write(output.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
            Ok(0)
        }
        Command::Reconstruct {
            input,
            symmetric_routing,
            algorithm,
            stats,
            dot,
            output,
        } => {
            if algorithm == Algorithm::Specialized && !symmetric_routing {
                return Err(Error::InvalidArgument(
                    "--algorithm specialized requires --symmetric-routing".into(),
                ));
            }
            let pcd = PathCorrelationData::from_json(&io.read(&input)?)?;
            let opts = ReconstructOptions {
                epsilon: eps,
                triple_order: None,
            };
            let result = match algorithm {
                Algorithm::General => reconstruct_with(&pcd, symmetric_routing, &opts)?,
                Algorithm::Specialized => reconstruct_symmetric_with(&pcd, &opts)?,
            };
            if let Some(path) = stats {
                write_file(&path, &serde_json::to_string_pretty(&result.stats)?)?;
            }
            if let Some(path) = dot {
                write_file(&path, &graph_to_dot(&result.graph))?;
            }
            io.write(output.as_deref(), &result.graph.to_json())?;
            Ok(0)
        }
        Command::Clean {
            input,
            symmetric,
            report,
            output,
        } => {
            let g = NetworkGraph::from_json(&io.read(&input)?)?;
            let (cleaned, r) = clean(&g, symmetric)?;
            if let Some(path) = report {
                write_file(&path, &r.to_json())?;
            }
            io.write(output.as_deref(), &cleaned.to_json())?;
            Ok(0)
        }
        Command::Verify { input, pcd, output } => {
            let g = NetworkGraph::from_json(&io.read(&input)?)?;
            let mut report = check_theorem(&g, eps);
            if let Some(path) = pcd {
                let given = PathCorrelationData::from_json(&io.read(&path)?)?;
                match measure(&g).and_then(|m| pcd_max_difference(&m, &given)) {
                    Ok(d) => report.push("pcd_matches_input", d <= eps, format!("max difference {d:e}")),
                    Err(e) => report.push("pcd_matches_input", false, e.to_string()),
                }
            }
            io.write(output.as_deref(), &report.to_json())?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::ExportDot { input, output } => {
            let g = NetworkGraph::from_json(&io.read(&input)?)?;
            io.write(output.as_deref(), &graph_to_dot(&g))?;
            Ok(0)
        }
    }
}
