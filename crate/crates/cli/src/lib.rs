//! Command dispatch for the `finspace` binary.
//!
//! Exit codes: 0 for a definitive answer, 2 for UNKNOWN, 1 for errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use finspace_core::algebra::{
    edge_path_presentation, euler_characteristic_space, homology, tietze_simplify,
};
use finspace_core::aspherical::{
    a_points, asphericity_certificate, is_strong_aspherical, strong_aspherical_complex,
    whitehead_check, WhiteheadConclusion,
};
use finspace_core::complex::{barycentric, collapse_to_dimension, face_poset, order_complex};
use finspace_core::format::{
    export_dot, parse_complex, parse_space, parse_trace, serialize_complex, serialize_space,
};
use finspace_core::qc::{is_qc_reducible, prop25_check, qc_candidates, qc_reduce};
use finspace_core::reduction::{
    beat_points, core, homotopically_trivial_certificate, is_collapsible, weak_points, BeatKind,
    TIETZE_BUDGET,
};
use finspace_core::{fixtures, Budget, Error, FiniteSpace, SearchOutcome, SimplicialComplex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "finspace",
    version,
    about = "Homotopy reductions of finite spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file (poset format, or facets with --complex)
    pub file: Option<PathBuf>,
    /// Use a built-in space instead of a file
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
    /// Read the input as a simplicial complex
    #[arg(long)]
    pub complex: bool,
    /// Delete these points first (comma separated)
    #[arg(long, value_name = "LABELS")]
    pub remove: Option<String>,
    /// Search budget in nodes
    #[arg(long, default_value_t = finspace_core::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summary of a space: size, height, extremal, beat, weak and a-points
    Info(Input),
    /// Stong core with the beat point removals
    Core(Input),
    /// Collapsibility of a space, or collapse of a complex to dimension --dim
    Collapse {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    /// Integral homology of the order complex (or of the complex)
    Homology(Input),
    /// Edge-path presentation of the fundamental group, simplified
    Pi1(Input),
    /// qc candidates, the three equivalent conditions per pair, and a reduction
    Qc {
        #[command(flatten)]
        input: Input,
        /// Perform one qc-reduction on this pair
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<String>>,
    },
    /// Search for a-reductions down to a point
    StrongAspherical(Input),
    /// Asphericity certificate (height at most 2)
    Aspherical(Input),
    /// Premises and verdicts of the asphericity conjecture for X and the point --remove
    Whitehead(Input),
    /// Facets of the order complex
    OrderComplex(Input),
    /// Face poset of a complex
    FacePoset(Input),
    /// Barycentric subdivision of a complex
    Barycentric(Input),
    /// Check a reduction trace move by move
    Replay { file: PathBuf },
    /// Hasse diagram in DOT format
    ExportDot(Input),
    /// Print a built-in space, or list them
    Fixture { name: Option<String> },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_verdict(stdout: String, definitive: bool) -> Self {
        let code = if definitive { EXIT_OK } else { EXIT_UNKNOWN };
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: message.into() + "\n",
        }
    }
}

/// Parses the arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli.command).unwrap_or_else(|e| Output::error(format!("error: {e}"))),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output::error(text.trim_end())
            } else {
                Output::ok(text)
            }
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Splits on commas outside brackets, so `rel(a,b)` stays one label.
fn split_labels(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in list.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(std::mem::take(&mut current));
        } else {
            current.push(ch);
        }
    }
    out.push(current);
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

enum Loaded {
    Space(FiniteSpace),
    Complex(SimplicialComplex),
}

impl Input {
    fn budget(&self) -> Budget {
        Budget(self.budget)
    }

    fn load(&self, removal: bool, as_complex: bool) -> Result<Loaded, String> {
        let text = match (&self.file, &self.fixture) {
            (Some(_), Some(_)) => return Err("give either a file or --fixture, not both".into()),
            (None, None) => return Err("no input: give a file or --fixture NAME".into()),
            (Some(path), None) => Some(read(path)?),
            (None, Some(_)) => None,
        };
        if self.complex || as_complex {
            let text = text.ok_or("--fixture names a space, not a complex")?;
            let k = parse_complex(&text).map_err(|e| e.to_string())?;
            if removal && self.remove.is_some() {
                return Err("--remove applies to spaces only".into());
            }
            return Ok(Loaded::Complex(k));
        }
        let mut x = match (text, &self.fixture) {
            (Some(text), _) => parse_space(&text).map_err(|e| e.to_string())?,
            (None, Some(name)) => fixtures::by_name(name).ok_or_else(|| {
                format!(
                    "unknown fixture `{name}` (known: {})",
                    fixtures::NAMES.join(", ")
                )
            })?,
            (None, None) => unreachable!(),
        };
        if removal {
            if let Some(list) = &self.remove {
                x = x.remove(&split_labels(list)).map_err(|e| e.to_string())?;
            }
        }
        Ok(Loaded::Space(x))
    }

    fn space(&self) -> Result<FiniteSpace, String> {
        match self.load(true, false)? {
            Loaded::Space(x) => Ok(x),
            Loaded::Complex(_) => Err("this command takes a space, not a complex".into()),
        }
    }

    fn complex(&self) -> Result<SimplicialComplex, String> {
        match self.load(true, true)? {
            Loaded::Complex(k) => Ok(k),
            Loaded::Space(_) => Err("this command takes a complex (use --complex)".into()),
        }
    }

    /// The complex itself, or the order complex of the space.
    fn any_complex(&self) -> Result<SimplicialComplex, String> {
        match self.load(true, false)? {
            Loaded::Complex(k) => Ok(k),
            Loaded::Space(x) => order_complex(&x).map_err(|e| e.to_string()),
        }
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(" ")
    }
}

fn dispatch(command: Command) -> Result<Output, String> {
    let e = |e: Error| e.to_string();
    match command {
        Command::Info(input) => {
            let x = input.space()?;
            let mut out = String::new();
            let _ = writeln!(out, "points: {}", x.len());
            let _ = writeln!(out, "covers: {}", x.cover_count());
            let _ = writeln!(out, "height: {}", x.height().map_err(e)?);
            let _ = writeln!(out, "components: {}", x.components().len());
            let _ = writeln!(out, "maximal: {}", list(&x.maximal_points()));
            let _ = writeln!(out, "minimal: {}", list(&x.minimal_points()));
            let beats: Vec<String> = beat_points(&x)
                .into_iter()
                .map(|(l, k)| match k {
                    BeatKind::Down => format!("{l}(down)"),
                    BeatKind::Up => format!("{l}(up)"),
                })
                .collect();
            let _ = writeln!(out, "beat points: {}", list(&beats));
            let _ = writeln!(out, "weak points: {}", list(&weak_points(&x)));
            if x.height().map_err(e)? <= 2 {
                let _ = writeln!(out, "a-points: {}", list(&a_points(&x)));
            }
            let _ = writeln!(
                out,
                "euler characteristic: {}",
                euler_characteristic_space(&x).map_err(e)?
            );
            let cert = homotopically_trivial_certificate(&x, input.budget()).map_err(e)?;
            let _ = writeln!(out, "homotopy triviality: {}", cert.verdict);
            Ok(Output::ok(out))
        }
        Command::Core(input) => {
            let x = input.space()?;
            let (c, trace) = core(&x).map_err(e)?;
            let mut out = String::new();
            let _ = writeln!(out, "core: {} point(s)", c.len());
            let _ = writeln!(out, "contractible: {}", c.len() == 1);
            let _ = writeln!(out, "removed: {}", trace.moves.len());
            for m in &trace.moves {
                let _ = writeln!(out, "  {m}");
            }
            out.push_str(&serialize_space(&c));
            Ok(Output::ok(out))
        }
        Command::Collapse { input, dim } => match input.load(true, false)? {
            Loaded::Space(x) => {
                let outcome = is_collapsible(&x, input.budget()).map_err(e)?;
                let mut out = String::new();
                match &outcome {
                    SearchOutcome::Found(t) => {
                        let _ = writeln!(out, "COLLAPSIBLE ({} move(s))", t.moves.len());
                        for m in &t.moves {
                            let _ = writeln!(out, "  {m}");
                        }
                    }
                    SearchOutcome::Exhausted => {
                        out.push_str("NOT_COLLAPSIBLE (search exhausted)\n")
                    }
                    SearchOutcome::Unknown => out.push_str("UNKNOWN (budget exhausted)\n"),
                }
                Ok(Output::with_verdict(out, outcome.is_complete()))
            }
            Loaded::Complex(k) => {
                let outcome = collapse_to_dimension(&k, dim, input.budget());
                let mut out = String::new();
                match &outcome {
                    SearchOutcome::Found(seq) => {
                        let _ =
                            writeln!(out, "COLLAPSES to dimension {dim} ({} step(s))", seq.len());
                        for p in &seq.steps {
                            let _ = writeln!(
                                out,
                                "  {{{}}} in {{{}}}",
                                p.face.join(","),
                                p.coface.join(",")
                            );
                        }
                        out.push_str(&serialize_complex(&seq.apply(&k).map_err(e)?));
                    }
                    SearchOutcome::Exhausted => {
                        let _ = writeln!(
                            out,
                            "DOES_NOT_COLLAPSE to dimension {dim} (search exhausted)"
                        );
                    }
                    SearchOutcome::Unknown => out.push_str("UNKNOWN (budget exhausted)\n"),
                }
                Ok(Output::with_verdict(out, outcome.is_complete()))
            }
        },
        Command::Homology(input) => {
            let h = homology(&input.any_complex()?).map_err(e)?;
            Ok(Output::ok(format!("H: {}\n{h}", h.compact())))
        }
        Command::Pi1(input) => {
            let k = input.any_complex()?;
            let base = k.vertices().first().ok_or("empty input")?.clone();
            let p = edge_path_presentation(&k, &base).map_err(e)?;
            let s = tietze_simplify(&p, TIETZE_BUDGET);
            let (rank, torsion) = s.abelianization();
            let torsion: Vec<String> = torsion.iter().map(|d| format!("Z/{d}")).collect();
            let mut out = String::new();
            let _ = writeln!(out, "basepoint: {base}");
            let _ = writeln!(
                out,
                "edge-path: {} generator(s), {} relator(s)",
                p.generators.len(),
                p.relators.len()
            );
            let _ = writeln!(out, "simplified: {s}");
            let _ = writeln!(out, "trivial: {}", s.is_trivial());
            let _ = writeln!(
                out,
                "abelianization: Z^{rank}{}",
                torsion
                    .iter()
                    .map(|t| format!(" + {t}"))
                    .collect::<String>()
            );
            Ok(Output::ok(out))
        }
        Command::Qc { input, pair } => {
            let x = input.space()?;
            let mut out = String::new();
            if let Some(pair) = pair {
                let (y, mv) = qc_reduce(&x, &pair[0], &pair[1]).map_err(e)?;
                let _ = writeln!(out, "qc {} {} -> {}", mv.a, mv.b, mv.relative);
                out.push_str(&serialize_space(&y));
                return Ok(Output::ok(out));
            }
            let candidates = qc_candidates(&x).map_err(e)?;
            if candidates.is_empty() {
                out.push_str("no candidates\n");
            } else {
                let _ = writeln!(out, "candidates: {}", candidates.len());
            }
            let maxima = x.maximal_points();
            for (i, a) in maxima.iter().enumerate() {
                for b in &maxima[i + 1..] {
                    let line = match prop25_check(&x, a, b) {
                        Ok(r) => r.to_string(),
                        Err(Error::HypothesisViolated(r)) => format!("{r} (H_2 != 0)"),
                        Err(other) => return Err(other.to_string()),
                    };
                    let mark = if candidates.contains(&(a.clone(), b.clone())) {
                        "*"
                    } else {
                        " "
                    };
                    let _ = writeln!(out, "{mark} ({a}, {b}): {line}");
                }
            }
            let outcome = is_qc_reducible(&x, input.budget()).map_err(e)?;
            match &outcome {
                SearchOutcome::Found(qc) => {
                    let _ = writeln!(out, "QC_REDUCIBLE ({} move(s))", qc.trace.moves.len());
                    for m in &qc.trace.moves {
                        let _ = writeln!(out, "  {m}");
                    }
                }
                SearchOutcome::Exhausted => out.push_str("NOT_QC_REDUCIBLE (search exhausted)\n"),
                SearchOutcome::Unknown => out.push_str("UNKNOWN (budget exhausted)\n"),
            }
            Ok(Output::with_verdict(out, outcome.is_complete()))
        }
        Command::StrongAspherical(input) => match input.load(true, false)? {
            Loaded::Space(x) => {
                let outcome = is_strong_aspherical(&x, input.budget()).map_err(e)?;
                let mut out = String::new();
                match &outcome {
                    SearchOutcome::Found(t) => {
                        let _ =
                            writeln!(out, "STRONG_ASPHERICAL ({} a-reduction(s))", t.moves.len());
                        for m in &t.moves {
                            let _ = writeln!(out, "  {m}");
                        }
                    }
                    SearchOutcome::Exhausted => {
                        out.push_str("NOT_STRONG_ASPHERICAL (search exhausted)\n")
                    }
                    SearchOutcome::Unknown => out.push_str("UNKNOWN (budget exhausted)\n"),
                }
                Ok(Output::with_verdict(out, outcome.is_complete()))
            }
            Loaded::Complex(k) => {
                let cert = strong_aspherical_complex(&k, input.budget()).map_err(e)?;
                Ok(Output::with_verdict(
                    cert.to_string(),
                    cert.verdict.is_definitive(),
                ))
            }
        },
        Command::Aspherical(input) => {
            let cert = asphericity_certificate(&input.space()?, input.budget()).map_err(e)?;
            Ok(Output::with_verdict(
                cert.to_string(),
                cert.verdict.is_definitive(),
            ))
        }
        Command::Whitehead(input) => {
            let x = match input.load(false, false)? {
                Loaded::Space(x) => x,
                Loaded::Complex(_) => return Err("whitehead takes a space".into()),
            };
            let a = match input.remove.as_deref().map(split_labels).as_deref() {
                Some([a]) => a.clone(),
                _ => return Err("whitehead needs exactly one point: --remove LABEL".into()),
            };
            let report = whitehead_check(&x, &a, input.budget()).map_err(e)?;
            let definitive = report.conclusion != WhiteheadConclusion::Unknown;
            Ok(Output::with_verdict(report.to_string(), definitive))
        }
        Command::OrderComplex(input) => Ok(Output::ok(serialize_complex(
            &order_complex(&input.space()?).map_err(e)?,
        ))),
        Command::FacePoset(input) => Ok(Output::ok(serialize_space(
            &face_poset(&input.complex()?).map_err(e)?,
        ))),
        Command::Barycentric(input) => Ok(Output::ok(serialize_complex(
            &barycentric(&input.complex()?).map_err(e)?,
        ))),
        Command::Replay { file } => {
            let trace = parse_trace(&read(&file)?).map_err(e)?;
            let end = trace.replay().map_err(e)?;
            let mut out = format!(
                "valid: {} move(s), {} point(s) left\n",
                trace.moves.len(),
                end.len()
            );
            if end.has_maximum() {
                out.push_str("final space has a maximum\n");
            }
            out.push_str(&serialize_space(&end));
            Ok(Output::ok(out))
        }
        Command::ExportDot(input) => Ok(Output::ok(export_dot(&input.space()?))),
        Command::Fixture { name } => match name {
            None => Ok(Output::ok(fixtures::NAMES.join("\n") + "\n")),
            Some(name) => {
                let x = fixtures::by_name(&name).ok_or_else(|| {
                    format!(
                        "unknown fixture `{name}` (known: {})",
                        fixtures::NAMES.join(", ")
                    )
                })?;
                Ok(Output::ok(serialize_space(&x)))
            }
        },
    }
}
