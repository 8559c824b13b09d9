//! `admface`: enumerate admissible sets, their faces and the face map, run
//! the verification suites, and draw rank-two pictures.

mod render;

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use admface::verify::{self, Suite};
use admface::{Case, Error, NodeSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use render::Shading;

#[derive(Parser, Debug)]
#[command(
    name = "admface",
    version,
    about = "Admissible sets, polytope faces and the face map"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CaseArgs {
    /// Cartan type, e.g. A2, C2, G2.
    #[arg(long = "type", value_name = "TYPE")]
    cartan_type: String,
    /// Dominant coweight in fundamental-coweight coordinates, e.g. 2,0.
    #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
    mu: String,
    /// Write output to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List Adm(μ) ordered by length, then serialized form.
    Enumerate {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The face poset of the coweight polytope.
    Faces {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Λ(w) and the smallest face containing it.
    FaceMap {
        #[command(flatten)]
        case: CaseArgs,
        /// Element such as t[1,0]*s1*s2.
        #[arg(long)]
        element: String,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
    },
    /// Draw Adm(μ) as an SVG alcove picture (rank two only).
    Render {
        #[command(flatten)]
        case: CaseArgs,
        /// Shade a face given as <word>:<indices>, e.g. s2:1 or e:1,2.
        /// Its interior is dark, its boundary light.
        #[arg(long)]
        face: Option<String>,
        /// Shade the boundary of Adm(μ) light and the centers of
        /// one-dimensional faces dark.
        #[arg(long)]
        boundary: bool,
    },
}

/// Exit status and message for a failed run.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::Domain(_) | Error::Parse(_) => 2,
            Error::DepthInsufficient { .. } | Error::Invariant(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Enumerate { case, format } => {
            let c = Case::parse(&case.cartan_type, &case.mu)?;
            let text = match format {
                Format::Json => pretty(&enumerate_json(&c)),
                Format::Dot if c.mu().is_zero() => {
                    return Err(usage("the coloured Hasse diagram needs μ ≠ 0"))
                }
                Format::Dot => c.decomposition()?.to_dot(),
            };
            emit(&case.out, &text)?;
            eprintln!("{}: {} elements", c, c.adm().len());
        }
        Command::Faces { case, format } => {
            let c = Case::parse(&case.cartan_type, &case.mu)?;
            let poset = c.poset()?;
            let text = match format {
                Format::Json => pretty(&poset.to_json()),
                Format::Dot => poset.to_dot(),
            };
            emit(&case.out, &text)?;
            eprintln!("{}: {} faces", c, poset.len());
        }
        Command::FaceMap { case, element } => {
            let c = Case::parse(&case.cartan_type, &case.mu)?;
            let d = c.datum();
            let adm = c.adm();
            let w = d.parse_affine(&element)?;
            let i = adm.index_of(&w).ok_or_else(|| {
                usage(format!("{} is not in Adm({})", d.format_affine(&w), c.mu()))
            })?;
            let fd = c.decomposition()?;
            let f = fd.face_map(i);
            let lambda: Vec<_> = adm
                .lambda_indices(i)
                .into_iter()
                .map(|k| &adm.maxima()[k])
                .collect();
            let v = json!({
                "element": adm.label(i),
                "lambda": lambda,
                "face": fd.poset().face_json(f),
            });
            emit(&case.out, &pretty(&v))?;
        }
        Command::Verify { case, suite } => {
            let c = Case::parse(&case.cartan_type, &case.mu)?;
            let suite: Suite = suite.parse()?;
            let report = verify::run(&c, suite)?;
            let mut text = report.to_json();
            text.push('\n');
            emit(&case.out, &text)?;
            let failed: Vec<_> = report.failures().collect();
            for f in &failed {
                eprintln!("FAIL {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
            }
            eprintln!(
                "{}: {} checks, {} failed",
                c,
                report.checks.len(),
                failed.len()
            );
            if !failed.is_empty() {
                return Ok(1);
            }
        }
        Command::Render {
            case,
            face,
            boundary,
        } => {
            let c = Case::parse(&case.cartan_type, &case.mu)?;
            if c.datum().rank() != 2 {
                return Err(usage(format!(
                    "rendering is only supported in rank 2, not {}",
                    c.datum().cartan_type()
                )));
            }
            let shading = shading(&c, face.as_deref(), boundary)?;
            emit(&case.out, &render::render(c.adm(), &shading))?;
        }
    }
    Ok(0)
}

fn enumerate_json(c: &Case) -> Value {
    let adm = c.adm();
    let elements: Vec<Value> = (0..adm.len())
        .map(|i| {
            let lambda: Vec<_> = adm
                .lambda_indices(i)
                .into_iter()
                .map(|k| &adm.maxima()[k])
                .collect();
            json!({ "element": adm.label(i), "length": adm.length(i), "lambda": lambda })
        })
        .collect();
    let maximal: Vec<&str> = (0..adm.maxima().len())
        .map(|k| adm.label(adm.maximum_index(k)))
        .collect();
    json!({
        "type": c.datum().cartan_type().to_string(),
        "mu": c.mu(),
        "count": adm.len(),
        "maximal": maximal,
        "elements": elements,
    })
}

/// Parses `<word>:<indices>` with 1-based indices, e.g. `s2*s1:1` or `e:`.
fn parse_face(c: &Case, spec: &str) -> Result<(admface::FiniteWeylElt, NodeSet), Failure> {
    let d = c.datum();
    let (word, indices) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("face {spec:?} must look like <word>:<indices>")))?;
    let a = d.parse_weyl(word)?;
    let mut set = NodeSet::EMPTY;
    for part in indices.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| usage(format!("bad simple root index {part:?}")))?;
        if i == 0 || i > d.rank() {
            return Err(usage(format!("simple root index {i} out of range")));
        }
        set.insert(i - 1);
    }
    Ok((a, set))
}

fn shading(c: &Case, face: Option<&str>, boundary: bool) -> Result<Shading, Failure> {
    let mut shading = Shading::default();
    if face.is_none() && !boundary {
        return Ok(shading);
    }
    let fd = c.decomposition()?;
    if boundary {
        let top = fd.adm_face_for(fd.poset().top());
        let centers: BTreeSet<usize> = fd
            .faces()
            .iter()
            .filter(|f| fd.poset().face(f.face).dim() == 1)
            .map(|f| f.center)
            .collect();
        shading.light.extend(top.boundary.difference(&centers));
        shading.dark.extend(centers);
    }
    if let Some(spec) = face {
        let (a, set) = parse_face(c, spec)?;
        let f = fd.poset().index_of_pair(&a, set)?;
        let face = fd.adm_face_for(f);
        for w in &face.interior {
            shading.light.remove(w);
            shading.dark.insert(*w);
        }
        for w in &face.boundary {
            shading.dark.remove(w);
            shading.light.insert(*w);
        }
    }
    Ok(shading)
}
