//! Command-line front end: every library operation behind one binary with
//! uniform configuration I/O.
//!
//! Configurations are read from a file (or standard input as `-`) in either
//! the compact token format or the JSON object format, auto-detected by the
//! first non-space byte and overridable with `--format`. Exit codes: 0 on
//! success, 1 on domain errors (a single-line reason on standard error),
//! 2 on usage errors.

use std::ffi::OsString;
use std::io::Read;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use config3::census::{census_from_formulas, count_fragments_direct, count_triangles};
use config3::config::{Configuration, ParseError};
use config3::construct::{heawood_chain, triangle_free, ExtensionTrace};
use config3::cyclic::{
    cyclic_configuration, enumerate_cyclic, predict_cyclic_triangles, CyclicTriple,
};
use config3::enumerate::{enumerate_all, triangle_distribution, TriangleDistribution};
use config3::graphs::{count_six_cycles, levi_graph, to_adjacency_text, to_dot, Side};
use config3::is_connected;

/// Result of one invocation: exit code plus the captured output streams.
#[derive(Clone, Debug)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Compact,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Adj,
}

#[derive(Parser)]
#[command(
    name = "config3",
    version,
    about = "Symmetric configurations with block size 3: build, check, count, enumerate"
)]
struct Cli {
    /// Worker threads for the parallel inner loops.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Force the input format instead of auto-detecting it.
    #[arg(long, global = true, value_enum)]
    format: Option<InputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a configuration and report connectivity, girth and triangles.
    Verify {
        /// Input file, or - for standard input.
        file: String,
    },
    /// Print the direct and formula fragment censuses and whether they match.
    Census {
        /// Input file, or - for standard input.
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Build a triangle-free configuration on v points (v = 15 or v >= 17).
    #[command(name = "triangle-free")]
    TriangleFree {
        v: usize,
        /// Report the extension steps (text mode: on standard error).
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Chain n edge-deleted Heawood copies: 7n points, 20n triangles.
    Chain {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// List cyclic representatives for v, or build one from a triple a b c.
    Cyclic {
        v: usize,
        /// Optional starter triple a b c with a+b+c = v.
        #[arg(num_args = 0..=3)]
        triple: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all configurations for v, one per isomorphism class.
    Enumerate {
        v: usize,
        /// Print the triangle-count distribution (the default output).
        #[arg(long)]
        distribution: bool,
        /// Stream the configurations in compact format, one per line.
        #[arg(long)]
        emit: bool,
        /// Skip decomposable configurations (first relevant at v = 14).
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        connected_only: bool,
        /// Allow the long-running orders v >= 13.
        #[arg(long)]
        long_run: bool,
    },
    /// Summarise or export the Levi graph of a configuration.
    Levi {
        /// Input file, or - for standard input.
        file: String,
        #[arg(long, value_enum)]
        export: Option<ExportFormat>,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
    /// Validation report destined for standard output, with exit code 1.
    Invalid {
        report: String,
        summary: String,
    },
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Run the CLI against an argument vector. Standard input can be supplied
/// directly (used by tests); otherwise `-` reads the real stream.
pub fn run<I, S>(argv: I, stdin_text: Option<&str>) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                CommandOutcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CommandOutcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let threads = cli.threads;
    let result = with_threads(threads, || execute(cli, stdin_text));
    match result {
        Ok((stdout, stderr)) => CommandOutcome {
            code: 0,
            stdout,
            stderr,
        },
        Err(CliError::Usage(msg)) => CommandOutcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("usage error: {msg}\nrun with --help for the synopsis\n"),
        },
        Err(CliError::Domain(msg)) => CommandOutcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(CliError::Invalid { report, summary }) => CommandOutcome {
            code: 1,
            stdout: report,
            stderr: format!("error: {summary}\n"),
        },
    }
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("failed to build thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T: Send>(_threads: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}

fn read_text(file: &str, stdin_text: Option<&str>) -> Result<String, CliError> {
    if file == "-" {
        if let Some(text) = stdin_text {
            return Ok(text.to_string());
        }
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Domain(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(file)
            .map_err(|e| CliError::Domain(format!("cannot read {file}: {e}")))
    }
}

fn parse_with_format(text: &str, format: Option<InputFormat>) -> Result<Configuration, ParseError> {
    match format {
        Some(InputFormat::Compact) => Configuration::parse_compact(text),
        Some(InputFormat::Json) => Configuration::parse_json(text),
        None => Configuration::parse_auto(text),
    }
}

fn read_config(
    file: &str,
    format: Option<InputFormat>,
    stdin_text: Option<&str>,
) -> Result<Configuration, CliError> {
    let text = read_text(file, stdin_text)?;
    Ok(parse_with_format(&text, format)?)
}

#[derive(serde::Serialize)]
struct ConfigOutput<'a> {
    v: usize,
    blocks: &'a [config3::Block],
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a ExtensionTrace>,
}

/// Emit a configuration: compact when it fits the alphabet and JSON was not
/// requested, JSON otherwise.
fn render_config(cfg: &Configuration, json: bool, trace: Option<&ExtensionTrace>) -> String {
    if json || cfg.v() > 62 {
        let out = ConfigOutput {
            v: cfg.v(),
            blocks: cfg.blocks(),
            trace,
        };
        format!(
            "{}\n",
            serde_json::to_string(&out).expect("configuration serialises")
        )
    } else {
        format!("{}\n", cfg.to_compact().expect("v <= 62"))
    }
}

fn render_trace_text(trace: &ExtensionTrace) -> String {
    let mut out = format!("base {}, extensions {}\n", trace.base_v, trace.steps);
    for (i, cycle) in trace.cycle_history.iter().enumerate() {
        let ids: Vec<String> = cycle.iter().map(u32::to_string).collect();
        out.push_str(&format!("cycle {}: {}\n", i + 1, ids.join(" ")));
    }
    out
}

fn render_distribution(dist: &TriangleDistribution) -> String {
    let mut out = String::from("t  count\n");
    for (t, count) in &dist.counts {
        out.push_str(&format!("{t:<2} {count:>6}\n"));
    }
    out.push_str(&format!("total {}\n", dist.total()));
    out
}

fn execute(cli: Cli, stdin_text: Option<&str>) -> Result<(String, String), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Verify { file } => {
            let text = read_text(&file, stdin_text)?;
            match parse_with_format(&text, format) {
                Ok(cfg) => {
                    let levi = levi_graph(&cfg);
                    let out = format!(
                        "v: {}\nblocks: {}\nvalid: yes\nconnected: {}\nlevi girth: {}\ntriangles: {}\n",
                        cfg.v(),
                        cfg.blocks().len(),
                        if is_connected(&cfg) { "yes" } else { "no" },
                        levi.girth(),
                        count_triangles(&cfg),
                    );
                    Ok((out, String::new()))
                }
                Err(ParseError::ValidationFailed(report)) => {
                    let mut out = String::from("valid: no\n");
                    for violation in report.violations() {
                        out.push_str(&format!("  {violation}\n"));
                    }
                    Err(CliError::Invalid {
                        report: out,
                        summary: format!("{} violations", report.violations().len()),
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Census { file, json } => {
            let cfg = read_config(&file, format, stdin_text)?;
            let direct = count_fragments_direct(&cfg);
            let formula = census_from_formulas(cfg.v(), direct.t)
                .expect("formulas are feasible for every valid configuration");
            let matched = direct == formula;
            if json {
                let value = serde_json::json!({
                    "v": direct.v,
                    "t": direct.t,
                    "a1": direct.a1,
                    "a2": direct.a2,
                    "b1": direct.b1,
                    "b2": direct.b2,
                    "b3": direct.b3,
                    "b4": direct.b4,
                    "b5": direct.b5,
                    "direct": direct,
                    "formula": formula,
                    "match": matched,
                });
                Ok((format!("{value}\n"), String::new()))
            } else {
                let mut out = format!("v = {}, t = {}\n", direct.v, direct.t);
                out.push_str(&format!(
                    "{:<24} {:>8} {:>8}\n",
                    "fragment", "direct", "formula"
                ));
                let rows = [
                    ("a1 (disjoint pairs)", direct.a1, formula.a1),
                    ("a2 (intersecting pairs)", direct.a2, formula.a2),
                    ("b1 (3-ppc)", direct.b1, formula.b1),
                    ("b2 (hut)", direct.b2, formula.b2),
                    ("b3 (3-star)", direct.b3, formula.b3),
                    ("b4 (3-path)", direct.b4, formula.b4),
                    ("b5 (triangle)", direct.b5, formula.b5),
                ];
                for (label, d, f) in rows {
                    out.push_str(&format!("{label:<24} {d:>8} {f:>8}\n"));
                }
                out.push_str(&format!("match: {}\n", if matched { "yes" } else { "no" }));
                Ok((out, String::new()))
            }
        }
        Command::TriangleFree { v, trace, json } => {
            let (cfg, extension_trace) =
                triangle_free(v).map_err(|e| CliError::Domain(e.to_string()))?;
            let trace_ref = trace.then_some(&extension_trace);
            if json {
                Ok((render_config(&cfg, true, trace_ref), String::new()))
            } else {
                let stderr = trace_ref.map(render_trace_text).unwrap_or_default();
                Ok((render_config(&cfg, false, None), stderr))
            }
        }
        Command::Chain { n, json } => {
            let cfg = heawood_chain(n).map_err(|e| CliError::Domain(e.to_string()))?;
            Ok((render_config(&cfg, json, None), String::new()))
        }
        Command::Cyclic { v, triple, json } => match triple.len() {
            3 => {
                let triple = CyclicTriple::new(v, triple[0], triple[1], triple[2])
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                let cfg = cyclic_configuration(&triple);
                Ok((render_config(&cfg, json, None), String::new()))
            }
            0 => {
                let reps = enumerate_cyclic(v);
                if json {
                    let rows: Vec<serde_json::Value> = reps
                        .iter()
                        .map(|t| {
                            let (a, b, c) = t.elements();
                            let direct = count_triangles(&cyclic_configuration(t));
                            serde_json::json!({
                                "triple": [a, b, c],
                                "predicted": predict_cyclic_triangles(t).ok(),
                                "triangles": direct,
                            })
                        })
                        .collect();
                    Ok((
                        format!("{}\n", serde_json::Value::Array(rows)),
                        String::new(),
                    ))
                } else {
                    let mut out = format!("v = {v}: {} representative(s)\n", reps.len());
                    out.push_str(&format!(
                        "{:<12} {:>9} {:>9}\n",
                        "triple", "predicted", "triangles"
                    ));
                    for t in &reps {
                        let direct = count_triangles(&cyclic_configuration(t));
                        let predicted = predict_cyclic_triangles(t)
                            .map(|p| p.to_string())
                            .unwrap_or_else(|_| "-".to_string());
                        out.push_str(&format!(
                            "{:<12} {predicted:>9} {direct:>9}\n",
                            t.to_string()
                        ));
                    }
                    Ok((out, String::new()))
                }
            }
            n => Err(CliError::Usage(format!(
                "cyclic takes either no triple or exactly three values, got {n}"
            ))),
        },
        Command::Enumerate {
            v,
            distribution,
            emit,
            connected_only,
            long_run,
        } => {
            if v >= 13 && !long_run {
                return Err(CliError::Domain(format!(
                    "enumeration for v = {v} takes a long time; pass --long-run to allow it"
                )));
            }
            let mut out = String::new();
            if emit {
                let all = enumerate_all(v, connected_only)
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                for cfg in &all {
                    out.push_str(&render_config(cfg, false, None));
                }
                if distribution {
                    let mut counts = std::collections::BTreeMap::new();
                    for cfg in &all {
                        *counts.entry(count_triangles(cfg)).or_insert(0u64) += 1;
                    }
                    out.push_str(&render_distribution(&TriangleDistribution { v, counts }));
                }
            } else {
                let dist = triangle_distribution(v, connected_only)
                    .map_err(|e| CliError::Domain(e.to_string()))?;
                out.push_str(&render_distribution(&dist));
            }
            Ok((out, String::new()))
        }
        Command::Levi { file, export } => {
            let cfg = read_config(&file, format, stdin_text)?;
            let levi = levi_graph(&cfg);
            match export {
                Some(ExportFormat::Dot) => Ok((to_dot(&levi), String::new())),
                Some(ExportFormat::Adj) => Ok((to_adjacency_text(levi.graph()), String::new())),
                None => {
                    let points = (0..levi.n() as u32)
                        .filter(|&x| levi.side(x) == Side::Point)
                        .count();
                    let out = format!(
                        "vertices: {} ({} points, {} blocks)\ngirth: {}\nsix-cycles: {}\n",
                        levi.n(),
                        points,
                        levi.n() - points,
                        levi.girth(),
                        count_six_cycles(&levi),
                    );
                    Ok((out, String::new()))
                }
            }
        }
    }
}
