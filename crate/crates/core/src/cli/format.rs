//! Line-based text formats for numeration systems, automata with output,
//! morphisms and automatic presentations.
//!
//! Every file starts with `kind: <numeration|dfao|morphism|presentation>`.
//! `#` starts a comment, so the padding symbol is written `@pad` inside
//! files; the empty word is written `@eps`.
//!
//! ```text
//! kind: numeration
//! alphabet: a b
//! states: g h k
//! initial: g
//! finals: g h k
//! g --a--> h
//! ```
//!
//! A `dfao` body adds `dim:`, `outputs: q=x ...` and tuple labels such as
//! `(a,@pad)`; its `alphabet:` lists the digits other than the padding
//! symbol. A `presentation` holds a `[numeration]` and a `[dfao]` section.
//! A `morphism` file lists `dim:`, then for each letter a line
//! `letter a shape s1 s2 ...` followed by `s2*...*sd` lines of `s1`
//! letters (axis 1 across, remaining axes in storage order), then `seed:`
//! and an optional `coding: a=x ...` (unlisted letters code to themselves).

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::automata::{AutomatonError, Dfa, Dfao, Label};
use crate::conversion::{AutomaticPresentation, ConversionError};
use crate::morphisms::{tuple_labels, MorphismError, MultiMorphism};
use crate::numeration::{NumerationError, NumerationSystem, OrderedAlphabet};
use crate::pictures::Picture;
use crate::symbol::{Symbol, Tuple};

pub const PAD_TOKEN: &str = "@pad";
pub const EPS_TOKEN: &str = "@eps";

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` entry")]
    Missing(&'static str),
    #[error("expected a {expected} file, found {found}")]
    WrongKind { expected: String, found: String },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Conversion(#[from] ConversionError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// A morphism file: the morphism need not be valid or prolongable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismFile {
    pub morphism: MultiMorphism,
    pub seed: Symbol,
    pub coding: Vec<Symbol>,
}

/// A standalone automaton-with-output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfaoFile {
    pub dim: usize,
    pub alphabet: Vec<Symbol>,
    pub dfao: Dfao<Tuple>,
}

#[derive(Debug, Clone)]
pub enum SpecFile {
    Numeration(NumerationSystem),
    Dfao(DfaoFile),
    Morphism(MorphismFile),
    Presentation(AutomaticPresentation),
}

impl SpecFile {
    pub fn kind(&self) -> &'static str {
        match self {
            SpecFile::Numeration(_) => "numeration",
            SpecFile::Dfao(_) => "dfao",
            SpecFile::Morphism(_) => "morphism",
            SpecFile::Presentation(_) => "presentation",
        }
    }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn key_value(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    let k = k.trim();
    if k.is_empty() || k.contains(char::is_whitespace) || k.contains("--") {
        return None;
    }
    Some((k, v.trim()))
}

pub fn parse(text: &str, pad: &Symbol) -> Result<SpecFile, ParseError> {
    let lines = content_lines(text);
    let (first_no, first) = *lines.first().ok_or(ParseError::Missing("kind"))?;
    let kind = match key_value(first) {
        Some(("kind", v)) => v,
        _ => return Err(syntax(first_no, "file must start with `kind:`")),
    };
    let body = &lines[1..];
    match kind {
        "numeration" => Ok(SpecFile::Numeration(parse_numeration_lines(body)?)),
        "dfao" => Ok(SpecFile::Dfao(parse_dfao_lines(body, pad)?)),
        "morphism" => Ok(SpecFile::Morphism(parse_morphism_lines(body)?)),
        "presentation" => Ok(SpecFile::Presentation(parse_presentation_lines(body, pad)?)),
        other => Err(syntax(first_no, format!("unknown kind `{other}`"))),
    }
}

fn expect_kind(text: &str, pad: &Symbol, expected: &str) -> Result<SpecFile, ParseError> {
    let f = parse(text, pad)?;
    if f.kind() != expected {
        return Err(ParseError::WrongKind {
            expected: expected.to_string(),
            found: f.kind().to_string(),
        });
    }
    Ok(f)
}

pub fn parse_numeration(text: &str) -> Result<NumerationSystem, ParseError> {
    match expect_kind(text, &Symbol::new("#"), "numeration")? {
        SpecFile::Numeration(s) => Ok(s),
        _ => unreachable!(),
    }
}

pub fn parse_morphism(text: &str) -> Result<MorphismFile, ParseError> {
    match expect_kind(text, &Symbol::new("#"), "morphism")? {
        SpecFile::Morphism(m) => Ok(m),
        _ => unreachable!(),
    }
}

pub fn parse_presentation(text: &str, pad: &Symbol) -> Result<AutomaticPresentation, ParseError> {
    match expect_kind(text, pad, "presentation")? {
        SpecFile::Presentation(p) => Ok(p),
        _ => unreachable!(),
    }
}

pub fn parse_dfao(text: &str, pad: &Symbol) -> Result<DfaoFile, ParseError> {
    match expect_kind(text, pad, "dfao")? {
        SpecFile::Dfao(d) => Ok(d),
        _ => unreachable!(),
    }
}

/// Header entries and transition lines of an automaton body.
struct AutomatonBody<'a> {
    entries: HashMap<&'a str, (usize, &'a str)>,
    transitions: Vec<(usize, &'a str, &'a str, &'a str)>,
}

fn split_automaton_body<'a>(lines: &[(usize, &'a str)]) -> Result<AutomatonBody<'a>, ParseError> {
    let mut entries = HashMap::new();
    let mut transitions = Vec::new();
    for &(no, line) in lines {
        if let Some((from, rest)) = line.split_once("--") {
            let (label, to) = rest
                .rsplit_once("-->")
                .ok_or_else(|| syntax(no, "transition must read `q --label--> q'`"))?;
            let (from, label, to) = (from.trim(), label.trim(), to.trim());
            if from.is_empty() || label.is_empty() || to.is_empty() {
                return Err(syntax(no, "transition must read `q --label--> q'`"));
            }
            transitions.push((no, from, label, to));
        } else if let Some((k, v)) = key_value(line) {
            if entries.insert(k, (no, v)).is_some() {
                return Err(syntax(no, format!("duplicate `{k}` entry")));
            }
        } else {
            return Err(syntax(no, format!("cannot read `{line}`")));
        }
    }
    Ok(AutomatonBody { entries, transitions })
}

fn entry<'a>(body: &AutomatonBody<'a>, key: &'static str) -> Result<(usize, &'a str), ParseError> {
    body.entries.get(key).copied().ok_or(ParseError::Missing(key))
}

fn words(s: &str) -> Vec<Symbol> {
    s.split_whitespace().map(Symbol::new).collect()
}

/// Builds the automaton skeleton (states, initial, finals) from the header.
fn build_dfa<L: Label>(body: &AutomatonBody<'_>, labels: Vec<L>) -> Result<Dfa<L>, ParseError> {
    let (_, states) = entry(body, "states")?;
    let states = words(states);
    let (no, initial) = entry(body, "initial")?;
    let init = states
        .iter()
        .position(|s| s.as_str() == initial)
        .ok_or_else(|| syntax(no, format!("unknown initial state `{initial}`")))?;
    let mut dfa = Dfa::new(states, init, labels)?;
    if let Some(&(no, finals)) = body.entries.get("finals") {
        for f in finals.split_whitespace() {
            let q = dfa
                .state_of(f)
                .ok_or_else(|| syntax(no, format!("unknown final state `{f}`")))?;
            dfa.set_final(q, true);
        }
    }
    Ok(dfa)
}

fn add_transitions<L: Label>(
    dfa: &mut Dfa<L>,
    body: &AutomatonBody<'_>,
    parse_label: impl Fn(&str) -> Option<L>,
) -> Result<(), ParseError> {
    for &(no, from, label, to) in &body.transitions {
        let q = dfa.state_of(from).ok_or_else(|| syntax(no, format!("unknown state `{from}`")))?;
        let t = dfa.state_of(to).ok_or_else(|| syntax(no, format!("unknown state `{to}`")))?;
        let l = parse_label(label).ok_or_else(|| syntax(no, format!("unknown label `{label}`")))?;
        dfa.add_transition(q, &l, t).map_err(|e| syntax(no, e.to_string()))?;
    }
    Ok(())
}

fn parse_numeration_lines(lines: &[(usize, &str)]) -> Result<NumerationSystem, ParseError> {
    let body = split_automaton_body(lines)?;
    let (_, alphabet) = entry(&body, "alphabet")?;
    let alphabet = OrderedAlphabet::new(words(alphabet))?;
    let mut dfa = build_dfa(&body, alphabet.letters().to_vec())?;
    add_transitions(&mut dfa, &body, |l| {
        let s = Symbol::new(l);
        alphabet.contains(&s).then_some(s)
    })?;
    Ok(NumerationSystem::new(alphabet, dfa)?)
}

fn parse_tuple(label: &str, pad: &Symbol) -> Option<Tuple> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    Some(
        inner
            .split(',')
            .map(|s| {
                let s = s.trim();
                if s == PAD_TOKEN {
                    pad.clone()
                } else {
                    Symbol::new(s)
                }
            })
            .collect(),
    )
}

fn parse_dfao_lines(lines: &[(usize, &str)], pad: &Symbol) -> Result<DfaoFile, ParseError> {
    let body = split_automaton_body(lines)?;
    let (no, dim) = entry(&body, "dim")?;
    let dim: usize = dim
        .parse()
        .ok()
        .filter(|&d| d > 0)
        .ok_or_else(|| syntax(no, "dimension must be a positive integer"))?;
    let (_, alphabet) = entry(&body, "alphabet")?;
    let alphabet = words(alphabet);
    let mut letters = vec![pad.clone()];
    letters.extend(alphabet.iter().cloned());
    let labels = tuple_labels(&letters, dim);
    let mut dfa = build_dfa(&body, labels.clone())?;
    let known: std::collections::HashSet<Tuple> = labels.into_iter().collect();
    add_transitions(&mut dfa, &body, |l| parse_tuple(l, pad).filter(|t| known.contains(t)))?;
    let (no, outputs) = entry(&body, "outputs")?;
    let mut out: Vec<Option<Symbol>> = vec![None; dfa.num_states()];
    for pair in outputs.split_whitespace() {
        let (q, x) = pair
            .split_once('=')
            .ok_or_else(|| syntax(no, format!("output `{pair}` must read `state=letter`")))?;
        let qi = dfa.state_of(q).ok_or_else(|| syntax(no, format!("unknown state `{q}`")))?;
        out[qi] = Some(Symbol::new(x));
    }
    let outputs = out
        .into_iter()
        .enumerate()
        .map(|(q, o)| o.ok_or_else(|| syntax(no, format!("no output for state `{}`", dfa.state_name(q)))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DfaoFile {
        dim,
        alphabet,
        dfao: Dfao::new(dfa, outputs)?,
    })
}

fn parse_presentation_lines(lines: &[(usize, &str)], pad: &Symbol) -> Result<AutomaticPresentation, ParseError> {
    let mut sections: HashMap<&str, Vec<(usize, &str)>> = HashMap::new();
    let mut current: Option<&str> = None;
    for &(no, line) in lines {
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if !matches!(name, "numeration" | "dfao") || sections.contains_key(name) {
                return Err(syntax(no, format!("unexpected section `[{name}]`")));
            }
            sections.insert(name, Vec::new());
            current = Some(name);
        } else {
            let c = current.ok_or_else(|| syntax(no, "expected a `[numeration]` or `[dfao]` section"))?;
            sections.get_mut(c).unwrap().push((no, line));
        }
    }
    let system = parse_numeration_lines(sections.get("numeration").ok_or(ParseError::Missing("[numeration]"))?)?;
    let dfao = parse_dfao_lines(sections.get("dfao").ok_or(ParseError::Missing("[dfao]"))?, pad)?;
    Ok(AutomaticPresentation::new(system, dfao.dfao, pad.clone())?)
}

fn parse_morphism_lines(lines: &[(usize, &str)]) -> Result<MorphismFile, ParseError> {
    let mut dim: Option<usize> = None;
    let mut seed: Option<Symbol> = None;
    let mut coding_line: Option<(usize, &str)> = None;
    let mut entries: Vec<(Symbol, Picture<Symbol>)> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (no, line) = lines[i];
        i += 1;
        if let Some(rest) = line.strip_prefix("letter ") {
            let d = dim.ok_or_else(|| syntax(no, "`dim:` must precede the letters"))?;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != d + 2 || toks[1] != "shape" {
                return Err(syntax(no, format!("expected `letter <a> shape` with {d} extents")));
            }
            let shape: Vec<usize> = toks[2..]
                .iter()
                .map(|t| t.parse::<usize>().ok().filter(|&s| s > 0))
                .collect::<Option<_>>()
                .ok_or_else(|| syntax(no, "extents must be positive integers"))?;
            let rows: usize = shape[1..].iter().product();
            let mut cells = Vec::with_capacity(rows * shape[0]);
            for _ in 0..rows {
                let &(rno, row) = lines
                    .get(i)
                    .ok_or_else(|| syntax(no, "image ends before its last row"))?;
                i += 1;
                let row = words(row);
                if row.len() != shape[0] {
                    return Err(syntax(rno, format!("expected {} letters in this row", shape[0])));
                }
                cells.extend(row);
            }
            let pic = Picture::new(shape, cells).expect("cell count checked");
            entries.push((Symbol::new(toks[0]), pic));
        } else if let Some((k, v)) = key_value(line) {
            match k {
                "dim" => {
                    dim = Some(
                        v.parse()
                            .ok()
                            .filter(|&d: &usize| d > 0)
                            .ok_or_else(|| syntax(no, "dimension must be a positive integer"))?,
                    )
                }
                "seed" => seed = Some(Symbol::new(v)),
                "coding" => coding_line = Some((no, v)),
                _ => return Err(syntax(no, format!("unknown entry `{k}`"))),
            }
        } else {
            return Err(syntax(no, format!("cannot read `{line}`")));
        }
    }
    let dim = dim.ok_or(ParseError::Missing("dim"))?;
    let seed = seed.ok_or(ParseError::Missing("seed"))?;
    let morphism = MultiMorphism::new(dim, entries)?;
    morphism.require(&seed)?;
    let mut coding = morphism.letters().to_vec();
    if let Some((no, v)) = coding_line {
        for pair in v.split_whitespace() {
            let (a, x) = pair
                .split_once('=')
                .ok_or_else(|| syntax(no, format!("coding `{pair}` must read `letter=letter`")))?;
            let ai = morphism
                .index_of(a)
                .ok_or_else(|| syntax(no, format!("unknown letter `{a}`")))?;
            coding[ai] = Symbol::new(x);
        }
    }
    Ok(MorphismFile { morphism, seed, coding })
}

fn render_label_symbol(s: &Symbol, pad: &Symbol) -> String {
    if s == pad {
        PAD_TOKEN.to_string()
    } else {
        s.to_string()
    }
}

fn join(items: impl IntoIterator<Item = impl ToString>) -> String {
    items.into_iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_automaton_header<L: Label>(out: &mut String, dfa: &Dfa<L>) {
    let _ = writeln!(out, "states: {}", join(dfa.states()));
    let _ = writeln!(out, "initial: {}", dfa.state_name(dfa.initial()));
    let finals: Vec<&Symbol> = (0..dfa.num_states())
        .filter(|&q| dfa.is_final(q))
        .map(|q| dfa.state_name(q))
        .collect();
    let _ = writeln!(out, "finals: {}", join(finals));
}

fn write_numeration_body(out: &mut String, s: &NumerationSystem) {
    let dfa = s.dfa();
    let _ = writeln!(out, "alphabet: {}", join(s.alphabet().letters()));
    write_automaton_header(out, dfa);
    for (q, li, t) in dfa.transitions() {
        let _ = writeln!(out, "{} --{}--> {}", dfa.state_name(q), dfa.labels()[li], dfa.state_name(t));
    }
}

fn write_dfao_body(out: &mut String, dim: usize, alphabet: &[Symbol], m: &Dfao<Tuple>, pad: &Symbol) {
    let dfa = m.dfa();
    let _ = writeln!(out, "dim: {dim}");
    let _ = writeln!(out, "alphabet: {}", join(alphabet));
    write_automaton_header(out, dfa);
    let outputs: Vec<String> = (0..dfa.num_states())
        .map(|q| format!("{}={}", dfa.state_name(q), m.output(q)))
        .collect();
    let _ = writeln!(out, "outputs: {}", outputs.join(" "));
    for (q, li, t) in dfa.transitions() {
        let parts: Vec<String> = dfa.labels()[li].iter().map(|s| render_label_symbol(s, pad)).collect();
        let _ = writeln!(
            out,
            "{} --({})--> {}",
            dfa.state_name(q),
            parts.join(","),
            dfa.state_name(t)
        );
    }
}

pub fn print_numeration(s: &NumerationSystem) -> String {
    let mut out = String::from("kind: numeration\n");
    write_numeration_body(&mut out, s);
    out
}

pub fn print_dfao(f: &DfaoFile, pad: &Symbol) -> String {
    let mut out = String::from("kind: dfao\n");
    write_dfao_body(&mut out, f.dim, &f.alphabet, &f.dfao, pad);
    out
}

pub fn print_presentation(a: &AutomaticPresentation) -> String {
    let mut out = String::from("kind: presentation\n[numeration]\n");
    write_numeration_body(&mut out, a.system());
    out.push_str("[dfao]\n");
    write_dfao_body(&mut out, a.dim(), a.system().alphabet().letters(), a.dfao(), a.pad());
    out
}

pub fn print_morphism(m: &MorphismFile) -> String {
    let mu = &m.morphism;
    let mut out = String::from("kind: morphism\n");
    let _ = writeln!(out, "dim: {}", mu.dim());
    for (b, letter) in mu.letters().iter().enumerate() {
        let img = mu.image(b);
        let _ = writeln!(out, "letter {letter} shape {}", join(img.shape()));
        for row in img.cells().chunks(img.shape()[0]) {
            let _ = writeln!(out, "{}", join(row.iter().map(|&c| mu.letter(c))));
        }
    }
    let _ = writeln!(out, "seed: {}", m.seed);
    if m.coding.iter().zip(mu.letters()).any(|(x, a)| x != a) {
        let pairs: Vec<String> = mu
            .letters()
            .iter()
            .zip(&m.coding)
            .map(|(a, x)| format!("{a}={x}"))
            .collect();
        let _ = writeln!(out, "coding: {}", pairs.join(" "));
    }
    out
}
