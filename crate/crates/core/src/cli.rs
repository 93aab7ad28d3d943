//! The `pattern-edit` command line.
//!
//! Exit codes: 0 when the requested computation finished, 1 when a checked
//! property failed (a pattern was found under `--expect-free`, or an
//! experiment broke the class-merging bound), 2 for usage errors, unreadable
//! or malformed input, and exhausted budgets.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::containment::{enumerate_occurrences, find_occurrence, Mode, OccurrenceQuery};
use crate::editing::{
    extremal_f, merge_smallest_classes, min_edit_distance, theoretical_bound, SolverOptions,
};
use crate::error::Error;
use crate::experiments::{corollary3_sweep, estimate_f_monte_carlo, random_coloring, ExperimentConfig};
use crate::graphs::{is_epsilon_regular, to_coloring, Checker, Epsilon};
use crate::limits::Limits;
use crate::matrix::SymbolMatrix;
use crate::pattern::Pattern;
use crate::text::{parse_matrix, parse_pattern};

#[derive(Debug, Parser)]
#[command(name = "pattern-edit", version, about = "Forbidden submatrix patterns and edit distance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegMode {
    Exact,
    Sampled,
    Auto,
}

#[derive(Debug, Args)]
struct Inputs {
    /// Matrix file (`m n` header, then rows of symbols).
    #[arg(long)]
    matrix: PathBuf,
    /// Pattern file (`k l` header, then rows of labels; `*` is a wildcard).
    #[arg(long)]
    pattern: PathBuf,
    /// Alphabet size; defaults to the largest entry.
    #[arg(long)]
    s: Option<usize>,
    /// Order-preserving row and column injections.
    #[arg(long)]
    ordered: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a pattern occurs in a matrix.
    Contains {
        #[command(flatten)]
        inputs: Inputs,
        /// Print every occurrence instead of the first.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        limit: Option<usize>,
        /// Exit with status 1 if the pattern occurs.
        #[arg(long)]
        expect_free: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Minimum number of entry changes removing every occurrence.
    Edit {
        #[command(flatten)]
        inputs: Inputs,
        /// Search nodes before falling back to a bracket.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Recolor the s - r + 1 smallest classes into the largest one.
    Destroy {
        #[arg(long)]
        matrix: PathBuf,
        /// Pattern to destroy; its class count is used as r.
        #[arg(long, required_unless_present = "r")]
        pattern: Option<PathBuf>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Exhaustive f(m, n; s, A) on tiny instances.
    Extremal {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Print ((s - r + 1) / s) * m * n.
    Bound {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
    },
    /// Epsilon-regularity of the matrix viewed as a colored bipartite pair.
    Regcheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        s: Option<usize>,
        /// Color to check; all colors when omitted.
        #[arg(long)]
        color: Option<u16>,
        /// Decimal or `p/q`, strictly between 0 and 1.
        #[arg(long)]
        epsilon: String,
        #[arg(long, value_enum, default_value = "auto")]
        mode: RegMode,
        /// Subset pairs drawn by the sampled checker.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Emit a seeded uniform random matrix.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo edit-distance sweep over square sizes.
    Experiment {
        /// Comma-separated square sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exact-solver nodes per trial; 0 keeps to the packing bracket.
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Which exact colorings of K_{l,l} occur in seeded random colorings.
    Corollary3 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        seeds: Vec<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// A failure that ends the command with a message and an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn in_file<T>(path: &Path, r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_matrix(path: &Path, s: Option<usize>) -> Result<SymbolMatrix, Failure> {
    in_file(path, parse_matrix(&read(path)?, s))
}

fn load_pattern(path: &Path) -> Result<Pattern, Failure> {
    in_file(path, parse_pattern(&read(path)?))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize")
}

fn mode(ordered: bool) -> Mode {
    if ordered {
        Mode::Ordered
    } else {
        Mode::Unordered
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let limits = Limits::default();
    let mut emit = |s: String| {
        let _ = out.write_all(s.as_bytes());
    };
    match cli.command {
        Command::Contains {
            inputs,
            all,
            limit,
            expect_free,
            format,
        } => {
            let matrix = load_matrix(&inputs.matrix, inputs.s)?;
            let pattern = load_pattern(&inputs.pattern)?;
            let mut found = Vec::new();
            for concrete in pattern.expand_wildcards() {
                let mut q = OccurrenceQuery::new(&concrete, &matrix).with_mode(mode(inputs.ordered));
                if let Some(l) = limit {
                    q = q.with_limit(l);
                }
                if all {
                    found.extend(enumerate_occurrences(&q)?.into_iter().map(|o| (concrete.clone(), o)));
                } else if let Some(o) = find_occurrence(&q)? {
                    found.push((concrete.clone(), o));
                    break;
                }
            }
            let verdict = if found.is_empty() { "free" } else { "contains" };
            match format {
                Format::Json => {
                    emit(format!("{{\"verdict\":\"{verdict}\",\"occurrences\":{}}}\n", found.len()));
                    for (_, o) in &found {
                        emit(format!("{}\n", json(&o.record())));
                    }
                }
                Format::Table => {
                    emit(format!("{verdict}\n"));
                    for (_, o) in &found {
                        let rec = o.record();
                        emit(format!(
                            "rows {:?} cols {:?} classes -> symbols {:?}\n{}",
                            rec.row_map,
                            rec.col_map,
                            rec.class_symbol,
                            o.render(&matrix)
                        ));
                    }
                }
            }
            Ok(if expect_free && !found.is_empty() { 1 } else { 0 })
        }
        Command::Edit {
            inputs,
            budget,
            format,
        } => {
            let matrix = load_matrix(&inputs.matrix, inputs.s)?;
            let pattern = load_pattern(&inputs.pattern)?;
            let targets = pattern.expand_wildcards();
            let outcome = min_edit_distance(
                &matrix,
                &targets,
                SolverOptions {
                    budget,
                    mode: mode(inputs.ordered),
                },
            )?;
            match format {
                Format::Json => emit(format!("{}\n", json(&outcome.record()))),
                Format::Table => {
                    if outcome.exact {
                        emit(format!("cost {}\n", outcome.cost()));
                    } else {
                        emit(format!(
                            "cost in [{}, {}] (budget exhausted)\n",
                            outcome.lower_bound, outcome.upper_bound
                        ));
                    }
                    for e in &outcome.plan.edits {
                        emit(format!("  ({}, {}) -> {}\n", e.row + 1, e.col + 1, e.new));
                    }
                    emit(outcome.plan.result.to_string());
                }
            }
            if outcome.exact {
                Ok(0)
            } else {
                Err(Failure {
                    code: 2,
                    message: format!("node budget {budget} exhausted; reported a bracket"),
                })
            }
        }
        Command::Destroy {
            matrix,
            pattern,
            r,
            s,
            format,
        } => {
            let m = load_matrix(&matrix, s)?;
            let targets = match &pattern {
                Some(p) => load_pattern(p)?.expand_wildcards(),
                None => Vec::new(),
            };
            let r = match r {
                Some(r) => r,
                None => targets.iter().map(Pattern::num_classes).min().unwrap_or(1),
            };
            let plan = merge_smallest_classes(&m, r)?;
            for p in &targets {
                let q = OccurrenceQuery::new(p, &plan.result);
                if find_occurrence(&q)?.is_some() {
                    return Err(Failure {
                        code: 1,
                        message: "class-merging result still contains the pattern".into(),
                    });
                }
            }
            let bound = theoretical_bound(m.rows(), m.cols(), m.max_symbols(), r)?;
            match format {
                Format::Json => {
                    let record = crate::editing::EditOutcome {
                        exact: false,
                        lower_bound: 0,
                        upper_bound: plan.cost(),
                        nodes: 0,
                        plan: plan.clone(),
                    }
                    .record();
                    emit(format!("{}\n", json(&record)));
                }
                Format::Table => {
                    emit(format!("cost {} (bound {bound})\n", plan.cost()));
                    emit(plan.result.to_string());
                }
            }
            Ok(0)
        }
        Command::Extremal {
            m,
            n,
            s,
            pattern,
            format,
        } => {
            let p = load_pattern(&pattern)?;
            let report = extremal_f(m, n, s, &p, &limits)?;
            match format {
                Format::Json => emit(format!("{}\n", json(&report.record()))),
                Format::Table => {
                    emit(format!(
                        "f({m},{n};{s}) = {} (bound {}, {} orbit representatives)\nwitness\n{}",
                        report.f_value, report.upper_bound, report.representatives, report.witness_matrix
                    ));
                }
            }
            Ok(0)
        }
        Command::Bound { m, n, s, r } => {
            emit(format!("{}\n", theoretical_bound(m, n, s, r)?));
            Ok(0)
        }
        Command::Regcheck {
            matrix,
            s,
            color,
            epsilon,
            mode,
            budget,
            seed,
            format,
        } => {
            let m = load_matrix(&matrix, s)?;
            let eps: Epsilon = epsilon.parse()?;
            let pair = to_coloring(&m);
            let exhaustive_fits = m.rows() + m.cols() <= limits.exhaustive_regularity_vertices;
            let checker = match mode {
                RegMode::Exact => Checker::Exhaustive,
                RegMode::Auto if exhaustive_fits => Checker::Exhaustive,
                _ => Checker::Sampled {
                    samples: budget,
                    seed,
                },
            };
            let colors: Vec<u16> = match color {
                Some(c) => vec![c],
                None => (1..=m.max_symbols() as u16).collect(),
            };
            for c in colors {
                let v = is_epsilon_regular(&pair, c, eps, checker, &limits)?;
                match format {
                    Format::Json => emit(format!("{}\n", json(&v.record()))),
                    Format::Table => {
                        let rec = v.record();
                        let status = match (v.regular, v.definitive) {
                            (true, true) => "regular",
                            (true, false) => "no violation found (sampled, not definitive)",
                            (false, _) => "irregular",
                        };
                        emit(format!("color {c}: density {} epsilon {eps}: {status}\n", rec.density));
                        if let Some(w) = rec.witness {
                            emit(format!(
                                "  witness X' = {:?}, Y' = {:?}, density {}\n",
                                w.left_subset, w.right_subset, w.density
                            ));
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Random { m, n, s, seed, out: path } => {
            let text = random_coloring(m, n, s, seed)?.to_string();
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| Failure {
                    code: 2,
                    message: format!("{}: {e}", p.display()),
                })?,
                None => emit(text),
            }
            Ok(0)
        }
        Command::Experiment {
            sizes,
            s,
            pattern,
            trials,
            seed,
            budget,
            format,
            out: path,
        } => {
            let cfg = ExperimentConfig {
                sizes: sizes.iter().map(|&k| (k, k)).collect(),
                s,
                pattern: load_pattern(&pattern)?,
                trials,
                seed,
                solver_budget: budget,
            };
            let report = estimate_f_monte_carlo(&cfg)?;
            let text = match format {
                Format::Json => format!("{}\n", json(&report)),
                Format::Table => report.table(),
            };
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| Failure {
                    code: 2,
                    message: format!("{}: {e}", p.display()),
                })?,
                None => emit(text),
            }
            Ok(if report.upper_within_bound() { 0 } else { 1 })
        }
        Command::Corollary3 {
            m,
            n,
            s,
            l,
            seeds,
            format,
        } => {
            let sweep = corollary3_sweep(m, n, s, l, &seeds, &limits)?;
            match format {
                Format::Json => emit(format!("{}\n", json(&sweep))),
                Format::Table => {
                    for seed in &sweep.seeds {
                        emit(format!(
                            "seed {}: {}/{} colorings of K_{{{l},{l}}} occur, {} missing\n",
                            seed.seed,
                            seed.targets - seed.missing_count,
                            seed.targets,
                            seed.missing_count
                        ));
                    }
                }
            }
            Ok(0)
        }
    }
}

/// Runs the command line on `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point used by the binary.
pub fn cli_main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
