//! Command-line front end. `run` parses arguments, dispatches and returns
//! the process exit code.

use std::io::Write;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rootgrr::grr::{ch_term, RootProblem};
use rootgrr::gw::{gw_invariant_with, gw_table, r1_ranks, EulerConvention, GWQuery};
use rootgrr::rspin::{
    elsv_genus0, hurwitz_oracle, potential_coefficients, w_number_genus0, SpinQuery,
};
use rootgrr::taut::class_to_json;
use rootgrr::verify::{self, Suite};
use rootgrr::{Error, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SUITE_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Dual,
    Direct,
}

#[derive(Debug, Parser)]
#[command(name = "rootgrr", about = "Exact Chern characters of r-th roots and their applications")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree-d Chern character of the pushforward of an r-th root.
    Chern {
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        m: Vec<i64>,
        #[arg(long)]
        degree: usize,
    },
    /// Genus-0 invariant of [C^2/mu_r] from insertion counts n_0,...,n_{r-1}.
    Gw {
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        counts: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Convention::Dual)]
        convention: Convention,
    },
    /// Every admissible invariant with 4 <= n <= max-n.
    GwTable {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        max_n: usize,
    },
    /// Genus-0 r-spin number for indices k.
    Rspin {
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
    },
    /// Coefficients of the genus-0 r-spin potential.
    Potential {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        max_n: usize,
        /// Also emit the coefficient with the floor(k/r) exponent reading.
        #[arg(long)]
        strict_paper: bool,
    },
    /// Genus-0 Hurwitz number from the ELSV formula.
    Elsv {
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
    },
    /// Genus-0 Hurwitz number by direct enumeration.
    HurwitzOracle {
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
    },
    /// Run a self-check suite and report pass/fail as JSON.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

enum Failure {
    Invalid(String),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn csv_field(text: &str) -> String {
    format!("\"{}\"", text.replace('"', "\"\""))
}

fn list<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(
                            self.header
                                .iter()
                                .zip(row)
                                .map(|(h, v)| (h.to_string(), v.clone()))
                                .collect(),
                        )
                    })
                    .collect();
                writeln!(out, "{}", Value::Array(rows))
            }
            Format::Csv | Format::Plain => {
                writeln!(out, "{}", self.header.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(cell).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                Ok(())
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains(',') || s.contains('"') => csv_field(s),
        Value::String(s) => s.clone(),
        Value::Array(items) => csv_field(
            &items
                .iter()
                .map(|x| match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(","),
        ),
        other => other.to_string(),
    }
}

fn single(format: Format, header: Vec<&'static str>, row: Vec<Value>, value: &Rational, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Plain => writeln!(out, "{value}"),
        _ => Table { header, rows: vec![row] }.render(format, out),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(text) = std::env::var("ROOTGRR_THREADS") else {
        return Ok(());
    };
    let threads: usize = text
        .trim()
        .parse()
        .map_err(|_| Failure::Invalid(format!("ROOTGRR_THREADS must be a non-negative integer, got {text:?}")))?;
    #[cfg(feature = "parallel")]
    if threads > 0 {
        // A pool may already exist when run is called more than once in a process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    configure_threads()?;
    let format = cli.format;
    let io = |e: std::io::Error| Failure::Invalid(format!("write failed: {e}"));
    match &cli.command {
        Command::Chern { r, s, m, degree } => {
            let problem = RootProblem::genus0(*r, *s, m.clone())?;
            let class = ch_term(&problem, *degree)?;
            match format {
                Format::Plain => writeln!(out, "{class}").map_err(io)?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "r": r, "s": s, "m": m, "degree": degree, "terms": class_to_json(&class) })
                )
                .map_err(io)?,
                Format::Csv => Table {
                    header: vec!["term", "coefficient"],
                    rows: class
                        .terms()
                        .map(|(t, c)| {
                            let mut j = rootgrr::taut::term_to_json(t, c, class.n());
                            j.as_object_mut().map(|o| o.remove("coeff"));
                            vec![Value::from(csv_field(&j.to_string())), Value::from(c.to_string())]
                        })
                        .collect(),
                }
                .render(format, out)
                .map_err(io)?,
            }
        }
        Command::Gw { r, counts, convention } => {
            let query = GWQuery::new(*r, counts.clone())?;
            let convention = match convention {
                Convention::Dual => EulerConvention::Dual,
                Convention::Direct => EulerConvention::Direct,
            };
            let value = gw_invariant_with(&query, convention)?;
            single(
                format,
                vec!["r", "counts", "n", "value"],
                vec![json!(r), json!(list(counts)), json!(query.n()), json!(value.to_string())],
                &value,
                out,
            )
            .map_err(io)?;
        }
        Command::GwTable { r, max_n } => {
            let rows = gw_table(*r, *max_n)?
                .into_iter()
                .map(|(q, v)| {
                    let (a, b) = r1_ranks(&q)?;
                    let zero = Rational::from_integer(0.into());
                    let concave = a.is_integer() && b.is_integer() && a >= zero && b >= zero;
                    let note = format!("r1_ranks={a}+{b}{}", if concave { ";concave" } else { "" });
                    Ok(vec![json!(r), json!(list(q.counts())), json!(q.n()), json!(v.to_string()), json!(note)])
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Table { header: vec!["r", "counts", "n", "value", "notes"], rows }
                .render(format, out)
                .map_err(io)?;
        }
        Command::Rspin { r, k } => {
            let query = SpinQuery::new(*r, k.clone())?;
            let w_k = w_number_genus0(*r, k)?;
            let w_ma = rootgrr::rspin::descent_factor(&query.m(), &query.a(), *r)? * &w_k;
            single(
                format,
                vec!["r", "k", "m", "a", "w_k", "w_ma"],
                vec![json!(r), json!(list(k)), json!(list(&query.m())), json!(list(&query.a())), json!(w_k.to_string()), json!(w_ma.to_string())],
                &w_k,
                out,
            )
            .map_err(io)?;
        }
        Command::Potential { r, max_n, strict_paper } => {
            let mut header = vec!["r", "k", "m", "a", "w_k", "w_ma", "orderings", "coefficient"];
            if *strict_paper {
                header.push("strict_coefficient");
            }
            let rows = potential_coefficients(*r, *max_n)?
                .into_iter()
                .map(|row| {
                    let mut cells = vec![
                        json!(r),
                        json!(list(&row.k)),
                        json!(list(&row.m)),
                        json!(list(&row.a)),
                        json!(row.w_k.to_string()),
                        json!(row.w_ma.to_string()),
                        json!(row.orderings),
                        json!(row.coefficient.to_string()),
                    ];
                    if *strict_paper {
                        cells.push(json!(row.strict_coefficient.to_string()));
                    }
                    cells
                })
                .collect();
            Table { header, rows }.render(format, out).map_err(io)?;
        }
        Command::Elsv { b } | Command::HurwitzOracle { b } => {
            let value = match &cli.command {
                Command::Elsv { .. } => elsv_genus0(b)?,
                _ => hurwitz_oracle(b)?,
            };
            single(format, vec!["b", "value"], vec![json!(list(b)), json!(value.to_string())], &value, out)
                .map_err(io)?;
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let reports = verify::run(suite);
            let passed = reports.iter().all(|r| r.passed());
            let body = json!({
                "passed": passed,
                "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            let text = match format {
                Format::Plain => serde_json::to_string_pretty(&body).unwrap_or_default(),
                _ => body.to_string(),
            };
            writeln!(out, "{text}").map_err(io)?;
            if !passed {
                return Err(Failure::Suite);
            }
        }
    }
    Ok(())
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Suite) => EXIT_SUITE_FAILED,
        Err(Failure::Invalid(message)) => {
            let usage = Cli::command().render_usage().to_string();
            let _ = writeln!(err, "error: {message}\n\n{usage}");
            EXIT_INVALID
        }
    }
}
