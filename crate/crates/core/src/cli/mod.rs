//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `check` or `verify` report a negative
//! result, 2 on usage or parse errors, 3 on domain or precondition errors.

pub mod format;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::conversion::{
    automatic_to_morphic, cross_validate, morphic_to_automatic, AutomaticPresentation, ConversionError,
    MorphicPresentation,
};
use crate::morphisms::{MorphismCheck, MorphismError, ShapeSymmetry};
use crate::numeration::{NumerationError, NumerationSystem};
use crate::symbol::{render_word, Symbol, Word};
use format::{MorphismFile, ParseError, SpecFile, EPS_TOKEN};
pub use render::{render_picture, OutputFormat};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Conversion(#[from] ConversionError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "shapesym", version, about = "Numeration systems, automatic words and shape-symmetric morphisms")]
struct Cli {
    /// Padding symbol used when reading tuples of representations.
    #[arg(long, global = true, default_value = "#")]
    pad: String,
    /// Rendering of pictures.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Grid)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Grid,
    Tsv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Direction {
    /// Morphism file to automatic presentation.
    M2a,
    /// Automatic presentation to morphism file.
    A2m,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the n-th word of the language.
    Rep { file: PathBuf, n: String },
    /// Print the position of a word, or with --count the number of words of a length.
    Val {
        file: PathBuf,
        word: Option<String>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Print a window of the word described by a morphism or presentation file.
    Window {
        file: PathBuf,
        #[arg(required = true)]
        shape: Vec<usize>,
    },
    /// Decide morphism-hood, prolongability and shape-symmetry.
    Check {
        file: PathBuf,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Convert between the morphic and the automatic presentation.
    Convert {
        direction: Direction,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the words of two files on a window.
    Verify {
        first: PathBuf,
        second: PathBuf,
        #[arg(required = true)]
        shape: Vec<usize>,
    },
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path, pad: &Symbol) -> Result<SpecFile, CliError> {
    let text = read(path)?;
    format::parse(&text, pad).map_err(|source| {
        let path = path.display().to_string();
        match source {
            // invalid objects built from well-formed files are domain errors
            ParseError::Conversion(e) => CliError::Conversion(e),
            ParseError::Numeration(e) => CliError::Numeration(e),
            source => CliError::Parse { path, source },
        }
    })
}

fn system_of(file: SpecFile, path: &Path) -> Result<NumerationSystem, CliError> {
    match file {
        SpecFile::Numeration(s) => Ok(s),
        SpecFile::Presentation(p) => Ok(p.system().clone()),
        other => Err(CliError::Usage(format!(
            "{}: expected a numeration or presentation file, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

/// Splits a word into letters: characters when every letter is a single
/// character, whitespace-separated tokens otherwise.
fn parse_word(s: &NumerationSystem, text: &str) -> Word {
    let text = text.trim();
    if text == EPS_TOKEN {
        return Vec::new();
    }
    let single = s.alphabet().letters().iter().all(|l| l.as_str().chars().count() == 1);
    if single {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Symbol::new(c.to_string()))
            .collect()
    } else {
        text.split_whitespace().map(Symbol::new).collect()
    }
}

fn morphic(file: &MorphismFile) -> Result<MorphicPresentation, CliError> {
    Ok(MorphicPresentation::new(
        file.morphism.clone(),
        &file.seed,
        file.coding.clone(),
    )?)
}

enum Word2 {
    Morphic(MorphicPresentation),
    Automatic(AutomaticPresentation),
}

fn generated(file: SpecFile, path: &Path) -> Result<Word2, CliError> {
    match file {
        SpecFile::Morphism(m) => Ok(Word2::Morphic(morphic(&m)?)),
        SpecFile::Presentation(p) => Ok(Word2::Automatic(p)),
        other => Err(CliError::Usage(format!(
            "{}: expected a morphism or presentation file, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let pad = Symbol::new(&cli.pad);
    let fmt = match cli.format {
        FormatArg::Grid => OutputFormat::Grid,
        FormatArg::Tsv => OutputFormat::Tsv,
    };
    let io = |e: std::io::Error| CliError::Io {
        path: "<stdout>".to_string(),
        source: e,
    };
    match &cli.command {
        Command::Rep { file, n } => {
            let s = system_of(load(file, &pad)?, file)?;
            let n: num_bigint::BigUint = n
                .parse()
                .map_err(|_| CliError::Usage(format!("`{n}` is not a natural number")))?;
            writeln!(out, "{}", render_word(&s.rep(n))).map_err(io)?;
            Ok(0)
        }
        Command::Val { file, word, count } => {
            let s = system_of(load(file, &pad)?, file)?;
            match (word, count) {
                (_, Some(len)) => writeln!(out, "{}", s.count_words(*len)).map_err(io)?,
                (Some(w), None) => {
                    let v = s.val(&parse_word(&s, w))?;
                    writeln!(out, "{v}").map_err(io)?;
                }
                (None, None) => return Err(CliError::Usage("give a word or --count".into())),
            }
            Ok(0)
        }
        Command::Window { file, shape } => {
            let pic = match generated(load(file, &pad)?, file)? {
                Word2::Morphic(m) => m.window(shape)?,
                Word2::Automatic(a) => a.window(shape)?,
            };
            write!(out, "{}", render_picture(&pic, fmt)).map_err(io)?;
            Ok(0)
        }
        Command::Check { file, seed } => {
            let m = match load(file, &pad)? {
                SpecFile::Morphism(m) => m,
                other => {
                    return Err(CliError::Usage(format!(
                        "{}: expected a morphism file, found {}",
                        file.display(),
                        other.kind()
                    )))
                }
            };
            let seed = seed.as_ref().map(Symbol::new).unwrap_or_else(|| m.seed.clone());
            let a = m.morphism.require(&seed)?;
            let report = check_report(&m, a);
            write!(out, "{}", report.text).map_err(io)?;
            Ok(if report.all_yes { 0 } else { 1 })
        }
        Command::Convert {
            direction,
            input,
            output,
        } => {
            let file = load(input, &pad)?;
            let text = match (direction, file) {
                (Direction::M2a, SpecFile::Morphism(m)) => {
                    format::print_presentation(&morphic_to_automatic(&morphic(&m)?, &pad)?)
                }
                (Direction::A2m, SpecFile::Presentation(p)) => {
                    let m = automatic_to_morphic(&p)?;
                    format::print_morphism(&MorphismFile {
                        morphism: m.morphism().clone(),
                        seed: m.seed_symbol().clone(),
                        coding: m.coding().to_vec(),
                    })
                }
                (d, f) => {
                    let want = match d {
                        Direction::M2a => "morphism",
                        Direction::A2m => "presentation",
                    };
                    return Err(CliError::Usage(format!(
                        "{}: expected a {want} file, found {}",
                        input.display(),
                        f.kind()
                    )));
                }
            };
            match output {
                Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?,
                None => write!(out, "{text}").map_err(io)?,
            }
            Ok(0)
        }
        Command::Verify { first, second, shape } => {
            let x = generated(load(first, &pad)?, first)?;
            let y = generated(load(second, &pad)?, second)?;
            let (m, a) = match (x, y) {
                (Word2::Morphic(m), Word2::Automatic(a)) | (Word2::Automatic(a), Word2::Morphic(m)) => (m, a),
                (Word2::Morphic(m1), Word2::Morphic(m2)) => {
                    let a = morphic_to_automatic(&m2, &pad)?;
                    (m1, a)
                }
                (Word2::Automatic(a1), Word2::Automatic(a2)) => {
                    let m = automatic_to_morphic(&a1)?;
                    (m, a2)
                }
            };
            let report = cross_validate(&m, &a, shape)?;
            if report.is_ok() {
                writeln!(out, "OK").map_err(io)?;
                Ok(0)
            } else {
                for mm in &report.mismatches {
                    let coords: Vec<String> = mm.coords.iter().map(ToString::to_string).collect();
                    writeln!(
                        out,
                        "mismatch at ({}): morphic {} automatic {}",
                        coords.join(","),
                        mm.morphic,
                        mm.automatic
                    )
                    .map_err(io)?;
                }
                Ok(1)
            }
        }
    }
}

struct CheckReport {
    text: String,
    all_yes: bool,
}

fn check_report(m: &MorphismFile, a: usize) -> CheckReport {
    let mu = &m.morphism;
    let mut text = String::new();
    let (is_morphism, line) = match mu.check_morphism(&[a]) {
        MorphismCheck::Morphism => (true, "morphism: yes".to_string()),
        MorphismCheck::NotMorphism { n, axis, first, second } => (
            false,
            format!(
                "morphism: no (n={n}, direction {}, letters {first} and {second})",
                axis + 1
            ),
        ),
    };
    text.push_str(&line);
    text.push('\n');
    let corner = *mu.image(a).at(&vec![0; mu.dim()]);
    let prolongable = is_morphism && corner == a;
    if prolongable {
        text.push_str("prolongable: yes\n");
    } else if corner != a {
        text.push_str(&format!(
            "prolongable: no (corner of the image of {} is {})\n",
            mu.letter(a),
            mu.letter(corner)
        ));
    } else {
        text.push_str("prolongable: no (not a morphism)\n");
    }
    let symmetric = if prolongable {
        match mu.check_shape_symmetric(a) {
            Ok(ShapeSymmetry::Symmetric) => {
                text.push_str("shape-symmetric: yes\n");
                true
            }
            Ok(ShapeSymmetry::Asymmetric { index, axes, extents }) => {
                text.push_str(&format!(
                    "shape-symmetric: no (k={index}, direction {} has {} and direction {} has {})\n",
                    axes.0 + 1,
                    extents.0,
                    axes.1 + 1,
                    extents.1
                ));
                false
            }
            Err(e) => {
                text.push_str(&format!("shape-symmetric: no ({e})\n"));
                false
            }
        }
    } else {
        text.push_str("shape-symmetric: no (requires a prolongable morphism)\n");
        false
    };
    CheckReport {
        text,
        all_yes: is_morphism && prolongable && symmetric,
    }
}
