//! The `graph-energy` command line.
//!
//! Exit codes: `0` success, `1` usage, input or numerical errors, `2` when
//! `certify` finds a violated bound.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, BoundReport, CertificationReport, DEFAULT_TOLERANCE};
use crate::ensemble::{self, EnsembleStats, Histogram};
use crate::extremal::{self, SearchResult};
use crate::graphs::{self, Family, Graph};
use crate::linalg::{self, DenseMatrix};
use crate::{Error, Result};

/// Evaluation budget for `search` when `--iterations` is not given and the
/// order is too large to enumerate.
pub const DEFAULT_SEARCH_ITERATIONS: u64 = 5000;

#[derive(Debug, Parser)]
#[command(name = "graph-energy", version, about = "Energy of matrices and graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the energy (sum of singular values) of a matrix or graph.
    Energy {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate every bound and check it against the energy (exit 2 on violation).
    Certify {
        #[command(flatten)]
        input: Input,
        /// Absolute slack before a bound counts as violated.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate every bound without computing the energy.
    Bounds {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Write the edge list of a named graph family.
    Family {
        /// complete:N, complete_bipartite:A:B, cycle:N, path:N, star:N or petersen [default: none, required]
        #[arg(long, value_name = "SPEC")]
        family: String,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo statistics of energy and extreme singular values over G(n, 1/2).
    Montecarlo {
        /// Number of vertices.
        #[arg(long, default_value_t = 400)]
        n: usize,
        /// Number of independent samples.
        #[arg(long, default_value_t = 8)]
        trials: usize,
        /// Base seed; trial t uses a seed derived from it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Histogram of adjacency eigenvalues / sqrt(n) against the semicircle law (CSV in text mode).
    Histogram {
        /// Edge-list file [default: none]
        #[arg(long, value_name = "PATH", conflicts_with_all = ["family", "n"])]
        graph: Option<PathBuf>,
        /// Named family [default: none]
        #[arg(long, value_name = "SPEC", conflicts_with = "n")]
        family: Option<String>,
        /// Sample G(n, 1/2) with --seed instead of reading a graph [default: none]
        #[arg(long)]
        n: Option<usize>,
        /// Seed for the G(n, 1/2) sample.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of bins over [-1.25, 1.25].
        #[arg(long, default_value_t = 50)]
        bins: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Search for a maximum-energy graph on n vertices.
    Search {
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Seed for local-search restarts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Energy-evaluation budget for local search [default: exhaustive when n <= 6, otherwise 5000]
        #[arg(long)]
        iterations: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Matrix text file [default: none]
    #[arg(long, value_name = "PATH")]
    matrix: Option<PathBuf>,
    /// Edge-list file [default: none]
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    /// Named family, e.g. complete:4 [default: none]
    #[arg(long, value_name = "SPEC")]
    family: Option<String>,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of standard output [default: stdout]
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Loaded {
    Matrix(DenseMatrix),
    Graph(Graph),
}

impl Loaded {
    fn matrix(&self) -> DenseMatrix {
        match self {
            Loaded::Matrix(m) => m.clone(),
            Loaded::Graph(g) => g.adjacency(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn with_path<E: Into<Error>>(path: &Path) -> impl FnOnce(E) -> Error + '_ {
    move |e| Error::Usage(format!("{}: {}", path.display(), e.into()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    graphs::parse_edge_list(&read(path)?).map_err(with_path(path))
}

fn load_family(spec: &str) -> Result<Graph> {
    Ok(spec.parse::<Family>()?.build()?)
}

impl Input {
    fn load(&self) -> Result<Loaded> {
        if let Some(path) = &self.matrix {
            let m = linalg::parse_matrix(&read(path)?).map_err(with_path(path))?;
            Ok(Loaded::Matrix(m))
        } else if let Some(path) = &self.graph {
            Ok(Loaded::Graph(load_graph(path)?))
        } else if let Some(spec) = &self.family {
            Ok(Loaded::Graph(load_family(spec)?))
        } else {
            Err(Error::Usage("one of --matrix, --graph or --family is required".into()))
        }
    }
}

/// Formats `x` with 12 significant digits, trailing zeros trimmed but at
/// least one digit after the decimal point.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{x:.11e}");
    let (_, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        let trimmed = if fixed.contains('.') {
            fixed.trim_end_matches('0').to_string()
        } else {
            fixed
        };
        if trimmed.ends_with('.') {
            format!("{trimmed}0")
        } else if trimmed.contains('.') {
            trimmed
        } else {
            format!("{trimmed}.0")
        }
    } else {
        let (mantissa, _) = sci.split_once('e').unwrap();
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn bounds_text(out: &mut String, reports: &[BoundReport]) {
    for r in reports {
        match r.value {
            Some(v) => out.push_str(&format!("{:<16} {}\n", r.name.as_str(), format_number(v))),
            None => {
                let failed: Vec<&str> = r.diagnostics.iter().filter(|d| !d.held).map(|d| d.label).collect();
                out.push_str(&format!(
                    "{:<16} inapplicable ({})\n",
                    r.name.as_str(),
                    failed.join(", ")
                ));
            }
        }
    }
}

fn certification_text(report: &CertificationReport) -> String {
    let mut out = format!("energy           {}\n", format_number(report.energy));
    bounds_text(&mut out, &report.bounds);
    if report.violations.is_empty() {
        out.push_str("violations       none\n");
    } else {
        for v in &report.violations {
            out.push_str(&format!(
                "VIOLATED         {} value {} energy {} excess {}\n",
                v.bound,
                format_number(v.value),
                format_number(v.energy),
                format_number(v.excess)
            ));
        }
    }
    out
}

fn ensemble_text(s: &EnsembleStats) -> String {
    let mut out = format!("n                 {}\ntrials            {}\nseed              {}\n", s.n, s.trials, s.seed);
    out.push_str(&format!("mean_energy_ratio {}\n", format_number(s.mean_energy_ratio)));
    out.push_str(&format!("mean_sigma1_ratio {}\n", format_number(s.mean_sigma1_ratio)));
    out.push_str(&format!("max_sigma2_ratio  {}\n", format_number(s.max_sigma2_ratio)));
    out.push_str(&format!(
        "semicircle        {}\n",
        format_number(ensemble::semicircle_energy_constant())
    ));
    out
}

fn search_text(r: &SearchResult) -> String {
    let method = match r.method {
        extremal::SearchMethod::Exhaustive => "exhaustive",
        extremal::SearchMethod::Local => "local",
    };
    let mut out = format!("n            {}\nmethod       {method}\n", r.n);
    out.push_str(&format!("best_energy  {}\n", format_number(r.best_energy)));
    out.push_str(&format!("km_absolute  {}\n", format_number(r.km_absolute)));
    out.push_str(&format!("ratio        {}\n", format_number(r.ratio)));
    out.push_str(&format!("evaluations  {}\n", r.evaluations));
    if let Some(seed) = r.seed {
        out.push_str(&format!("seed         {seed}\n"));
    }
    out.push_str("best_graph\n");
    out.push_str(&graphs::serialize_edge_list(&r.best_graph));
    out
}

#[derive(Serialize)]
struct HistogramJson<'a> {
    bin_edges: &'a [f64],
    masses: &'a [f64],
    reference_masses: Vec<f64>,
    sample_count: usize,
    l1_distance: f64,
}

impl<'a> From<&'a Histogram> for HistogramJson<'a> {
    fn from(h: &'a Histogram) -> Self {
        Self {
            bin_edges: &h.bin_edges,
            masses: &h.masses,
            reference_masses: h.reference_masses(),
            sample_count: h.sample_count,
            l1_distance: h.l1_distance_to_semicircle(),
        }
    }
}

#[derive(Serialize)]
struct FamilyJson {
    family: String,
    order: usize,
    size: usize,
    edge_list: String,
}

/// Primary output and exit code of a successful command.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn execute(command: Command) -> Result<(Outcome, Option<PathBuf>)> {
    let (outcome, out) = match command {
        Command::Energy { input, output } => {
            let value = match input.load()? {
                Loaded::Matrix(m) => bounds::energy(&m)?,
                Loaded::Graph(g) => bounds::graph_energy(&g)?,
            };
            let text = match output.format {
                Format::Json => to_json(&serde_json::json!({ "energy": value })),
                Format::Text => format!("{}\n", format_number(value)),
            };
            (Outcome::ok(text), output.out)
        }
        Command::Certify {
            input,
            tolerance,
            output,
        } => {
            if !tolerance.is_finite() {
                return Err(Error::Usage(format!("invalid tolerance {tolerance}")));
            }
            let report = bounds::certify(&input.load()?.matrix(), tolerance)?;
            let text = match output.format {
                Format::Json => to_json(&report),
                Format::Text => certification_text(&report),
            };
            let code = if report.is_certified() { 0 } else { 2 };
            (Outcome { text, code }, output.out)
        }
        Command::Bounds { input, output } => {
            let loaded = input.load()?;
            let a = loaded.matrix();
            let mut reports = Vec::new();
            if let Loaded::Graph(g) = &loaded {
                reports.push(bounds::km_upper(g.order(), g.size()));
                reports.push(bounds::km_absolute(g.order()));
            }
            reports.push(bounds::thm1_upper(&a)?);
            reports.push(bounds::thm2_upper(&a));
            reports.push(bounds::weak_upper(&a));
            reports.push(bounds::lowb_lower(&a)?);
            reports.push(bounds::sigma1_rayleigh_lower(&a));
            let text = match output.format {
                Format::Json => to_json(&reports),
                Format::Text => {
                    let mut s = String::new();
                    bounds_text(&mut s, &reports);
                    s
                }
            };
            (Outcome::ok(text), output.out)
        }
        Command::Family { family, output } => {
            let spec: Family = family.parse()?;
            let g = spec.build()?;
            let text = match output.format {
                Format::Json => to_json(&FamilyJson {
                    family: spec.to_string(),
                    order: g.order(),
                    size: g.size(),
                    edge_list: graphs::serialize_edge_list(&g),
                }),
                Format::Text => graphs::serialize_edge_list(&g),
            };
            (Outcome::ok(text), output.out)
        }
        Command::Montecarlo {
            n,
            trials,
            seed,
            output,
        } => {
            let stats = ensemble::montecarlo(n, trials, seed)?;
            let text = match output.format {
                Format::Json => to_json(&stats),
                Format::Text => ensemble_text(&stats),
            };
            (Outcome::ok(text), output.out)
        }
        Command::Histogram {
            graph,
            family,
            n,
            seed,
            bins,
            output,
        } => {
            let g = match (graph, family, n) {
                (Some(path), None, None) => load_graph(&path)?,
                (None, Some(spec), None) => load_family(&spec)?,
                (None, None, Some(n)) if n >= 1 => ensemble::sample_gnp_half(n, seed),
                (None, None, Some(_)) => return Err(Error::Usage("--n must be at least 1".into())),
                _ => {
                    return Err(Error::Usage(
                        "exactly one of --graph, --family or --n is required".into(),
                    ))
                }
            };
            let h = ensemble::spectral_histogram(&g, bins)?;
            let text = match output.format {
                Format::Json => to_json(&HistogramJson::from(&h)),
                Format::Text => h.to_csv(),
            };
            (Outcome::ok(text), output.out)
        }
        Command::Search {
            n,
            seed,
            iterations,
            output,
        } => {
            let result = match iterations {
                None if n <= graphs::MAX_ENUMERATION_ORDER => extremal::exhaustive_max_energy(n)?,
                None => extremal::local_search_max_energy(n, seed, DEFAULT_SEARCH_ITERATIONS)?,
                Some(it) => extremal::local_search_max_energy(n, seed, it)?,
            };
            let text = match output.format {
                Format::Json => to_json(&result),
                Format::Text => search_text(&result),
            };
            (Outcome::ok(text), output.out)
        }
    };
    Ok((outcome, out))
}

/// Parses `args` (program name first) and runs the command, writing primary
/// output to `stdout` (or `--out`) and diagnostics to `stderr`. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    1
                }
            };
        }
    };

    match execute(cli.command) {
        Ok((outcome, out)) => {
            let written = match out {
                Some(path) => fs::write(&path, &outcome.text).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                }),
                None => stdout.write_all(outcome.text.as_bytes()).map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                }),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(2.0), "2.0");
        assert_eq!(format_number(0.0), "0.0");
        assert_eq!(format_number(6f64.sqrt()), "2.44948974278");
        assert_eq!(format_number(-0.5), "-0.5");
        assert_eq!(format_number(1234.5), "1234.5");
        assert_eq!(format_number(1e-9), "1e-9");
        assert_eq!(format_number(2.5e15), "2.5e15");
        assert_eq!(format_number(0.0001), "0.0001");
        assert_eq!(format_number(123456789012.0), "123456789012.0");
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
