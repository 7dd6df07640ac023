//! Command line front end for the `kacmoody` library.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 a product or
//! intersection ran out of budget, 4 the oracle cross-check disagreed.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kacmoody::oracle::{cross_check, WeightSample, DEFAULT_SAMPLE_CAP};
use kacmoody::strata::{self, Format};
use kacmoody::{
    catalog, ComponentType, Gcm, IndexSet, IntersectStatus, NormalFormFlavor, Realization, WeylMonoid,
    WeylMonoidElement, DEFAULT_INTERSECT_BUDGET,
};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

mod word;

pub use word::{parse_element, WordError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_BUDGET_EXHAUSTED: i32 = 3;
pub const EXIT_ORACLE_DISAGREEMENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "kacmoody", version, about = "Weyl groups, Tits cone faces and the Weyl monoid of a Kac-Moody matrix")]
pub struct Cli {
    #[command(flatten)]
    pub source: Source,
    /// Word-length budget for face intersections.
    #[arg(long, global = true, default_value_t = DEFAULT_INTERSECT_BUDGET)]
    pub budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// JSON file of the form {"matrix": [[...], ...]}.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Inline matrix, e.g. "[[2,-2],[-2,2]]".
    #[arg(long, global = true)]
    pub matrix: Option<String>,
    /// A catalog matrix: A2, B2, G2, A1~, A2~, H2(3,2), A1~+A1, A1~-tail.
    #[arg(long, global = true)]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetrizer, components, types, special sets and their orthogonals.
    Classify,
    /// Products, normal forms and equality of monoid elements.
    #[command(subcommand)]
    Monoid(MonoidCommand),
    /// Monoid elements with normal-form length at most the bound.
    Enum {
        #[arg(long)]
        bound: usize,
    },
    /// Closure order on special sets.
    Poset,
    /// Enumerated elements grouped by orbit.
    Strata {
        #[arg(long)]
        bound: usize,
    },
    /// Torus rank, weight basis and root counts for the big cell of a special set.
    Bigcell {
        /// Comma-separated 1-based indices; empty for the empty set.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Maximum height of the positive real roots counted.
        #[arg(long)]
        height: usize,
    },
    /// Compares products and equality with the partial-map model.
    OracleCheck {
        #[arg(long)]
        bound: usize,
        /// Orbit depth of the weight sample.
        #[arg(long)]
        sample: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_CAP)]
        sample_cap: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum MonoidCommand {
    /// Product of the given words, left to right.
    Mul {
        #[arg(required = true, allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// Both normal forms.
    Nf { word: String },
    /// Whether two words denote the same element.
    Eq { left: String, right: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] kacmoody::Error),
    #[error(transparent)]
    Word(#[from] WordError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(kacmoody::Error::UnsupportedFormat(_)) => EXIT_USAGE,
            _ => EXIT_INVALID_INPUT,
        }
    }
}

struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }

    fn with_status(text: String, status: IntersectStatus) -> Self {
        let code = if status == IntersectStatus::Exact { EXIT_OK } else { EXIT_BUDGET_EXHAUSTED };
        Outcome { text, code }
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = load_gcm(&cli.source).and_then(|gcm| execute(&cli, gcm));
    match result {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|e| e.to_string()),
                None => out.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INVALID_INPUT;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_gcm(source: &Source) -> Result<Gcm, CliError> {
    if let Some(name) = &source.name {
        return catalog::by_name(name).ok_or_else(|| CliError::Input(format!("unknown catalog matrix `{name}`")));
    }
    let input: kacmoody::gcm::GcmInput = if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    } else {
        let text = source.matrix.as_deref().expect("clap requires one source");
        let matrix: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| CliError::Input(format!("--matrix: {e}")))?;
        kacmoody::gcm::GcmInput { matrix }
    };
    Ok(Gcm::from_input(&input)?)
}

fn parse_theta(s: &str) -> Result<IndexSet, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(IndexSet::empty());
    }
    let parts: Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse::<usize>()).collect();
    let parts = parts.map_err(|_| CliError::Input(format!("--theta: cannot parse `{s}`")))?;
    IndexSet::from_one_based(&parts).ok_or_else(|| CliError::Input(format!("--theta: index out of range in `{s}`")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn unsupported(cli: &Cli) -> CliError {
    let name = match cli.format {
        OutputFormat::Json => "json",
        OutputFormat::Dot => "dot",
        OutputFormat::Text => "text",
    };
    CliError::Core(kacmoody::Error::UnsupportedFormat(name.into()))
}

fn execute(cli: &Cli, gcm: Gcm) -> Result<Outcome, CliError> {
    if let Command::Classify = cli.command {
        return classify(cli, &gcm);
    }
    let r = Realization::new(gcm);
    let m = WeylMonoid::with_budget(&r, cli.budget);
    match &cli.command {
        Command::Classify => unreachable!(),
        Command::Monoid(cmd) => monoid(cli, &m, cmd),
        Command::Enum { bound } => enumerate(cli, &m, *bound),
        Command::Poset => {
            let p = strata::orbit_poset(&r);
            Ok(Outcome::ok(match cli.format {
                OutputFormat::Json => strata::emit_poset(&p, Format::Json)?,
                OutputFormat::Dot => strata::emit_poset(&p, Format::Dot)?,
                OutputFormat::Text => {
                    let mut s = String::new();
                    for st in &p.strata {
                        let closure: Vec<String> = st.closure.iter().map(ToString::to_string).collect();
                        writeln!(s, "{} torus_rank={} closure={}", st.theta, st.torus_rank, closure.join(" ")).unwrap();
                    }
                    s
                }
            }))
        }
        Command::Strata { bound } => {
            let p = strata::orbit_poset(&r);
            let counts = strata::stratum_counts(&r, &strata::birkhoff_strata(&m, *bound));
            Ok(Outcome::ok(match cli.format {
                OutputFormat::Json => strata::emit_combined(&p, &counts),
                OutputFormat::Dot => strata::emit_strata(&p, &counts, Format::Dot)?,
                OutputFormat::Text => counts.iter().fold(String::new(), |mut s, c| {
                    writeln!(s, "{} {}", c.theta, c.count).unwrap();
                    s
                }),
            }))
        }
        Command::Bigcell { theta, height } => {
            let data = strata::big_cell_data(&r, parse_theta(theta)?, *height)?;
            match cli.format {
                OutputFormat::Json => Ok(Outcome::ok(to_json(&data))),
                OutputFormat::Text => {
                    let slices: Vec<String> = data.slice_specials.iter().map(ToString::to_string).collect();
                    Ok(Outcome::ok(format!(
                        "theta={}\ntorus_rank={}\nweight_basis={:?}\npositive_roots_outside={} ({})\nslice_specials={}\n",
                        data.theta,
                        data.torus_rank,
                        data.weight_basis,
                        data.positive_roots_outside,
                        data.window,
                        slices.join(" ")
                    )))
                }
                OutputFormat::Dot => Err(unsupported(cli)),
            }
        }
        Command::OracleCheck { bound, sample, sample_cap } => {
            let s = WeightSample::build(&r, *sample, *sample_cap)?;
            let elements = m.enumerate(*bound);
            let report = cross_check(&m, &elements, &s)?;
            let text = match cli.format {
                OutputFormat::Json => to_json(&json!({
                    "bound": bound,
                    "sample_depth": sample,
                    "budget": cli.budget,
                    "report": report,
                    "equality": "on sample",
                })),
                OutputFormat::Text => format!(
                    "elements={} sample_points={} pairs={} exact={} budget_exhausted={} composition_mismatches={} equality_disagreements={} (equality on sample, budget {})\n",
                    report.elements,
                    report.sample_points,
                    report.pairs,
                    report.exact_products,
                    report.budget_exhausted,
                    report.composition_mismatches,
                    report.equality_disagreements,
                    cli.budget
                ),
                OutputFormat::Dot => return Err(unsupported(cli)),
            };
            let code = if !report.is_clean() {
                EXIT_ORACLE_DISAGREEMENT
            } else if report.budget_exhausted > 0 {
                EXIT_BUDGET_EXHAUSTED
            } else {
                EXIT_OK
            };
            Ok(Outcome { text, code })
        }
    }
}

fn type_name(t: ComponentType) -> &'static str {
    match t {
        ComponentType::Finite => "finite",
        ComponentType::Affine => "affine",
        ComponentType::Indefinite => "indefinite",
    }
}

fn classify(cli: &Cli, gcm: &Gcm) -> Result<Outcome, CliError> {
    let comps = gcm.components(gcm.index_set())?;
    let typed: Vec<(IndexSet, ComponentType)> =
        comps.iter().map(|&c| gcm.classify_component(c).map(|t| (c, t))).collect::<Result<_, _>>()?;
    let specials = gcm.enumerate_special();
    match cli.format {
        OutputFormat::Json => {
            let v = json!({
                "matrix": gcm.matrix().to_rows(),
                "rank": gcm.rank(),
                "dimension": 2 * gcm.n() - gcm.rank(),
                "symmetrizer": gcm.symmetrizer(),
                "components": typed.iter().map(|(c, t)| json!({"indices": c, "type": type_name(*t)})).collect::<Vec<_>>(),
                "specials": specials.iter().map(|s| s.theta).collect::<Vec<_>>(),
                "perp": specials.iter().map(|s| json!({"theta": s.theta, "perp": gcm.orthogonal_complement(s.theta)})).collect::<Vec<_>>(),
            });
            Ok(Outcome::ok(to_json(&v)))
        }
        OutputFormat::Text => {
            let mut s = String::new();
            writeln!(s, "rank {} of {}, realization dimension {}", gcm.rank(), gcm.n(), 2 * gcm.n() - gcm.rank()).unwrap();
            writeln!(s, "symmetrizer {:?}", gcm.symmetrizer()).unwrap();
            for (c, t) in &typed {
                writeln!(s, "component {c} {}", type_name(*t)).unwrap();
            }
            for sp in &specials {
                writeln!(s, "special {} perp {}", sp.theta, gcm.orthogonal_complement(sp.theta)).unwrap();
            }
            Ok(Outcome::ok(s))
        }
        OutputFormat::Dot => Err(unsupported(cli)),
    }
}

fn monoid(cli: &Cli, m: &WeylMonoid<'_>, cmd: &MonoidCommand) -> Result<Outcome, CliError> {
    match cmd {
        MonoidCommand::Mul { words } => {
            let mut status = IntersectStatus::Exact;
            let mut factors = Vec::new();
            for w in words {
                let (x, s) = parse_element(w, m)?;
                status = status.and(s);
                factors.push(x);
            }
            let (x, s) = m.product(&factors)?;
            let status = status.and(s);
            let text = match cli.format {
                OutputFormat::Json => to_json(&json!({
                    "element": m.word(&x),
                    "orbit": m.orbit_label(&x),
                    "status": status,
                    "budget": m.budget(),
                })),
                OutputFormat::Text => format!("{}\nstatus {:?} (budget {})\n", m.word(&x), status, m.budget()),
                OutputFormat::Dot => return Err(unsupported(cli)),
            };
            Ok(Outcome::with_status(text, status))
        }
        MonoidCommand::Nf { word } => {
            let (x, status) = parse_element(word, m)?;
            let r = m.realization();
            let render = |flavor| {
                let nf = m.normal_form(&x, flavor);
                (r.word_string(&nf.sigma1), nf.theta, r.word_string(&nf.sigma2))
            };
            let (a1, t1, b1) = render(NormalFormFlavor::Type1);
            let (a2, t2, b2) = render(NormalFormFlavor::Type2);
            let text = match cli.format {
                OutputFormat::Json => to_json(&json!({
                    "type1": {"sigma1": a1, "theta": t1, "sigma2": b1},
                    "type2": {"sigma1": a2, "theta": t2, "sigma2": b2},
                    "status": status,
                    "budget": m.budget(),
                })),
                OutputFormat::Text => format!(
                    "type1 [{a1}] {t1} [{b1}]\ntype2 [{a2}] {t2} [{b2}]\nstatus {status:?} (budget {})\n",
                    m.budget()
                ),
                OutputFormat::Dot => return Err(unsupported(cli)),
            };
            Ok(Outcome::with_status(text, status))
        }
        MonoidCommand::Eq { left, right } => {
            let (x, s1) = parse_element(left, m)?;
            let (y, s2) = parse_element(right, m)?;
            let status = s1.and(s2);
            let equal = m.equals(&x, &y);
            let text = match cli.format {
                OutputFormat::Json => to_json(&json!({"equal": equal, "status": status, "budget": m.budget()})),
                OutputFormat::Text => format!("{}\n", if equal { "equal" } else { "not equal" }),
                OutputFormat::Dot => return Err(unsupported(cli)),
            };
            Ok(Outcome::with_status(text, status))
        }
    }
}

fn enumerate(cli: &Cli, m: &WeylMonoid<'_>, bound: usize) -> Result<Outcome, CliError> {
    let elements: Vec<WeylMonoidElement> = m.enumerate(bound);
    let text = match cli.format {
        OutputFormat::Json => to_json(&json!({
            "bound": bound,
            "elements": elements.iter().map(|x| json!({"word": m.word(x), "orbit": m.orbit_label(x)})).collect::<Vec<_>>(),
        })),
        OutputFormat::Text => elements.iter().fold(String::new(), |mut s, x| {
            writeln!(s, "{}", m.word(x)).unwrap();
            s
        }),
        OutputFormat::Dot => return Err(unsupported(cli)),
    };
    Ok(Outcome::ok(text))
}
