//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! verification fails (reports are still written), 2 for malformed input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::correspondences::{act, compose, diagonal};
use crate::equivariant::{
    bottom_weight_restriction, lift_projectors, stabilization_check, verify_equivariant, EquivariantModelSpec,
    RingSurjection,
};
use crate::io;
use crate::kunneth::{algebraic_projectors, chow_kunneth_projectors, verify_ck_with, VerificationReport, VerifyOptions};
use crate::spaces::{barth_range, eval_class_expr, fano_delta, rep_variety_dim, CiModel, ClassExpr, SpaceSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "chow-kunneth", version, about = "Exact Chow-Kunneth projector synthesis and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Write the machine-readable report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Threads for the orthogonality grid.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a ring from a space description and write it out in full.
    Build {
        /// Space description, inline JSON or a path.
        #[arg(long)]
        space: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the Künneth diagonal of a space.
    Diagonal {
        #[arg(long)]
        space: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct projectors, optionally verifying them.
    Projectors {
        #[arg(long)]
        space: String,
        /// Only build the algebraic projectors in degrees up to this cutoff.
        #[arg(long)]
        cutoff: Option<u32>,
        #[arg(long)]
        verify: bool,
        /// Write the projector file here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Verify a projector file.
    Verify {
        projectors: PathBuf,
        /// Write the machine-readable report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compose two correspondence files, first `f` then `g`.
    Compose {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Push a class through a correspondence.
    Act {
        correspondence: PathBuf,
        /// Class as a JSON object `{"label": "p/q", …}`.
        #[arg(long)]
        class: String,
    },
    /// Lift a projector file to an equivariant model and verify the lift.
    Lift {
        projectors: PathBuf,
        /// Model description, inline JSON or a path.
        #[arg(long)]
        model: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare lifts at two truncations in low degrees.
    Stabilize {
        projectors: PathBuf,
        #[arg(long)]
        model: String,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
    },
    /// Push a projector file along a surjection and verify the image.
    Restrict {
        projectors: PathBuf,
        /// Kill the primitive middle classes of a complete-intersection model.
        #[arg(long, conflicts_with = "model", required_unless_present = "model")]
        kill_primitive: bool,
        /// Lift to this equivariant model, then restrict back.
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Closed-form dimension counts.
    #[command(subcommand)]
    Formulas(Formula),
}

#[derive(Debug, Subcommand)]
pub enum Formula {
    /// Dimension of the variety of r-planes on a complete intersection.
    Fano {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        r: u32,
    },
    /// Dimension of the surface-group representation variety.
    Rep {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
    },
    /// Barth–Larsen cutoff.
    Barth {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

type Outcome = std::result::Result<i32, Failure>;

fn malformed(context: impl std::fmt::Display, e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_MALFORMED, message: format!("{context}: {e}") }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| malformed(path.display(), e))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| malformed(path.display(), e))
}

/// Inline JSON when it starts with `{`, otherwise a path to a JSON file.
fn inline_or_file<T: for<'de> serde::Deserialize<'de>>(arg: &str, what: &str) -> std::result::Result<T, Failure> {
    let (text, origin) = if arg.trim_start().starts_with('{') {
        (arg.to_string(), format!("{what} (inline)"))
    } else {
        (read(Path::new(arg))?, format!("{what} {arg}"))
    };
    io::from_json(&text).map_err(|e| malformed(origin, e))
}

fn load<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> std::result::Result<T, Failure> {
    io::from_json(&read(path)?).map_err(|e| malformed(path.display(), e))
}

fn load_projectors(path: &Path) -> std::result::Result<crate::ProjectorSet, Failure> {
    let file: io::ProjectorFile = load(path)?;
    io::projectors_from_file(&file).map_err(|e| malformed(path.display(), e))
}

fn emit<T: Serialize>(out: &mut dyn Write, path: Option<&Path>, doc: &T) -> std::result::Result<(), Failure> {
    let text = io::to_json(doc);
    match path {
        Some(p) => write(p, &(text + "\n")),
        None => writeln!(out, "{text}").map_err(|e| malformed("stdout", e)),
    }
}

fn report_outcome(out: &mut dyn Write, report: &VerificationReport, path: Option<&Path>) -> Outcome {
    let _ = write!(out, "{}", report.to_text());
    if let Some(p) = path {
        write(p, &(report.to_json() + "\n"))?;
    }
    Ok(if report.all_pass { EXIT_PASS } else { EXIT_FAIL })
}

fn space(arg: &str) -> std::result::Result<Arc<crate::GradedBasisRing>, Failure> {
    let spec: SpaceSpec = inline_or_file(arg, "space")?;
    spec.build().map_err(|e| malformed("space", e))
}

fn model(arg: &str) -> std::result::Result<Arc<crate::equivariant::EquivariantModel>, Failure> {
    let spec: EquivariantModelSpec = inline_or_file(arg, "model")?;
    spec.build().map(Arc::new).map_err(|e| malformed("model", e))
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Outcome {
    let opts = |jobs: usize| VerifyOptions { jobs };
    match cmd {
        Command::Build { space: s, out: path } => {
            let ring = space(s)?;
            let betti: Vec<String> = ring.betti_numbers().iter().map(usize::to_string).collect();
            if path.is_some() {
                let _ = writeln!(out, "betti numbers: {}", betti.join(" "));
            }
            emit(out, path.as_deref(), &io::ring_file(&ring))?;
            Ok(EXIT_PASS)
        }
        Command::Diagonal { space: s, out: path } => {
            let ring = space(s)?;
            let d = diagonal(&ring).map_err(|e| malformed("space", e))?;
            emit(out, path.as_deref(), &io::correspondence_file(&d))?;
            Ok(EXIT_PASS)
        }
        Command::Projectors { space: s, cutoff, verify, out: path, report } => {
            let ring = space(s)?;
            let set = match cutoff {
                Some(m) => algebraic_projectors(&ring, *m, None),
                None => chow_kunneth_projectors(&ring),
            }
            .map_err(|e| malformed("projectors", e))?;
            match path {
                Some(p) => write(p, &(io::to_json(&io::projector_file(&set)) + "\n"))?,
                None if !verify => emit(out, None, &io::projector_file(&set))?,
                None => {}
            }
            if *verify {
                report_outcome(out, &verify_ck_with(&set, opts(report.jobs)), report.report.as_deref())
            } else {
                Ok(EXIT_PASS)
            }
        }
        Command::Verify { projectors, out: path, jobs } => {
            let set = load_projectors(projectors)?;
            report_outcome(out, &verify_ck_with(&set, opts(*jobs)), path.as_deref())
        }
        Command::Compose { f, g, out: path } => {
            let a = io::correspondence_from_file(&load(f)?).map_err(|e| malformed(f.display(), e))?;
            let b = io::correspondence_from_file(&load(g)?).map_err(|e| malformed(g.display(), e))?;
            let c = compose(&a, &b).map_err(|e| malformed("compose", e))?;
            emit(out, path.as_deref(), &io::correspondence_file(&c))?;
            Ok(EXIT_PASS)
        }
        Command::Act { correspondence, class } => {
            let c = io::correspondence_from_file(&load(correspondence)?)
                .map_err(|e| malformed(correspondence.display(), e))?;
            let expr: ClassExpr = inline_or_file(class, "class")?;
            let alpha = eval_class_expr(c.source(), &expr).map_err(|e| malformed("class", e))?;
            let image = act(&c, &alpha).map_err(|e| malformed("act", e))?;
            let _ = writeln!(out, "{image}");
            Ok(EXIT_PASS)
        }
        Command::Lift { projectors, model: m, out: path, report } => {
            let set = load_projectors(projectors)?;
            let lifted = lift_projectors(&set, &model(m)?).map_err(|e| malformed("lift", e))?;
            if let Some(p) = path {
                write(p, &(io::to_json(&io::lift_file(&lifted)) + "\n"))?;
            }
            report_outcome(out, &verify_equivariant(&lifted), report.as_deref())
        }
        Command::Stabilize { projectors, model: m, degree, n1, n2 } => {
            let set = load_projectors(projectors)?;
            let spec: EquivariantModelSpec = inline_or_file(m, "model")?;
            let stable = stabilization_check(&set, &spec, *degree, *n1, *n2).map_err(|e| malformed("stabilize", e))?;
            let _ = writeln!(out, "stable in degrees <= {degree} between N={n1} and N={n2}: {stable}");
            Ok(if stable { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Restrict { projectors, kill_primitive, model: m, out: path, report } => {
            let set = load_projectors(projectors)?;
            let image = if *kill_primitive {
                let spec = set
                    .ring()
                    .spec()
                    .ok_or_else(|| malformed(projectors.display(), "the space has no construction recorded"))?;
                let ci = CiModel::from_spec(spec).map_err(|e| malformed(projectors.display(), e))?;
                let (q, _) = RingSurjection::kill_primitive(&ci).map_err(|e| malformed("restrict", e))?;
                bottom_weight_restriction(&q, &set).map_err(|e| malformed("restrict", e))?
            } else {
                let model = model(m.as_deref().unwrap_or_default())?;
                let lifted = lift_projectors(&set, &model).map_err(|e| malformed("lift", e))?;
                lifted.restrict().map_err(|e| malformed("restrict", e))?
            };
            if let Some(p) = path {
                write(p, &(io::to_json(&io::projector_file(&image)) + "\n"))?;
            }
            report_outcome(out, &verify_ck_with(&image, opts(report.jobs)), report.report.as_deref())
        }
        Command::Formulas(f) => {
            match f {
                Formula::Fano { n, degrees, r } => {
                    let fd = fano_delta(*n, degrees, *r);
                    let _ = writeln!(out, "delta = {}", fd.delta);
                    let _ = writeln!(out, "expected dimension = {}", fd.expected_dimension);
                    for w in &fd.warnings {
                        let _ = writeln!(out, "warning: {w}");
                    }
                }
                Formula::Rep { g, n } => {
                    let _ = writeln!(out, "dim = {}", rep_variety_dim(*g, *n));
                }
                Formula::Barth { n, d } => {
                    let _ = writeln!(out, "range = {}", barth_range(*n, *d));
                }
            }
            Ok(EXIT_PASS)
        }
    }
}

/// Runs a parsed command, writing human-readable output to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            EXIT_MALFORMED
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            EXIT_PASS
        }
    }
}
