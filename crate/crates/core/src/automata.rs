//! Deterministic automata, automata with output, and the constructions that
//! connect them to numeration systems and morphisms.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::morphisms::MultiMorphism;
use crate::numeration::{pad_tuple, NumerationError, NumerationSystem};
use crate::pictures::{BoxIter, Picture};
use crate::symbol::{render_tuple, Symbol, Tuple};

/// Transition labels: single letters or letter tuples.
pub trait Label: Clone + Eq + Hash + fmt::Debug {
    fn render(&self) -> String;
}

impl Label for Symbol {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Label for Vec<Symbol> {
    fn render(&self) -> String {
        render_tuple(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("duplicate state {0}")]
    DuplicateState(Symbol),
    #[error("unknown state {0}")]
    UnknownState(Symbol),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("conflicting transitions from {state} on {label}: {first} and {second}")]
    Conflict {
        state: Symbol,
        label: String,
        first: Symbol,
        second: Symbol,
    },
    #[error("no transition from {state} on {label} at position {position}")]
    Undefined {
        position: usize,
        state: Symbol,
        label: String,
    },
    #[error("state {state} already leaves to {target} on the all-padding label")]
    PadLoopConflict { state: Symbol, target: Symbol },
    #[error("label arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("outputs given for {found} states, automaton has {expected}")]
    OutputCount { expected: usize, found: usize },
    #[error("the automaton has no labels")]
    NoLabels,
    #[error("canonical morphism undefined: no transition from {state} on {label}")]
    NotComplete { state: Symbol, label: String },
    #[error(transparent)]
    Numeration(#[from] NumerationError),
}

/// A deterministic, possibly partial, finite automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa<L: Label> {
    states: Vec<Symbol>,
    state_index: HashMap<Symbol, usize>,
    initial: usize,
    labels: Vec<L>,
    label_index: HashMap<L, usize>,
    delta: Vec<Vec<Option<usize>>>,
    finals: Vec<bool>,
}

impl<L: Label> Dfa<L> {
    /// An automaton with the given states and labels and no transitions.
    /// All states start non-final.
    pub fn new(states: Vec<Symbol>, initial: usize, labels: Vec<L>) -> Result<Self, AutomatonError> {
        let mut state_index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if state_index.insert(s.clone(), i).is_some() {
                return Err(AutomatonError::DuplicateState(s.clone()));
            }
        }
        if initial >= states.len() {
            return Err(AutomatonError::UnknownState(Symbol::new(format!("#{initial}"))));
        }
        let mut label_index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(AutomatonError::DuplicateLabel(l.render()));
            }
        }
        let n = states.len();
        let m = labels.len();
        Ok(Dfa {
            states,
            state_index,
            initial,
            labels,
            label_index,
            delta: vec![vec![None; m]; n],
            finals: vec![false; n],
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Symbol] {
        &self.states
    }

    pub fn state_name(&self, q: usize) -> &Symbol {
        &self.states[q]
    }

    pub fn state_of(&self, name: &str) -> Option<usize> {
        self.state_index.get(name).copied()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label_of(&self, l: &L) -> Option<usize> {
        self.label_index.get(l).copied()
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn set_final(&mut self, q: usize, is_final: bool) {
        self.finals[q] = is_final;
    }

    /// Adds `from --l--> to`. Re-adding an identical transition is a no-op.
    pub fn add_transition(&mut self, from: usize, l: &L, to: usize) -> Result<(), AutomatonError> {
        let li = self
            .label_of(l)
            .ok_or_else(|| AutomatonError::UnknownLabel(l.render()))?;
        self.add_transition_idx(from, li, to)
    }

    pub fn add_transition_idx(&mut self, from: usize, li: usize, to: usize) -> Result<(), AutomatonError> {
        match self.delta[from][li] {
            Some(existing) if existing != to => Err(AutomatonError::Conflict {
                state: self.states[from].clone(),
                label: self.labels[li].render(),
                first: self.states[existing].clone(),
                second: self.states[to].clone(),
            }),
            _ => {
                self.delta[from][li] = Some(to);
                Ok(())
            }
        }
    }

    pub fn step_idx(&self, q: usize, li: usize) -> Option<usize> {
        self.delta[q][li]
    }

    pub fn step(&self, q: usize, l: &L) -> Option<usize> {
        self.label_of(l).and_then(|li| self.delta[q][li])
    }

    /// All transitions as `(from, label index, to)`.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(li, t)| t.map(|to| (q, li, to)))
        })
    }

    pub fn run_from(&self, q: usize, w: &[L]) -> Result<usize, AutomatonError> {
        let mut cur = q;
        for (position, l) in w.iter().enumerate() {
            cur = self.step(cur, l).ok_or_else(|| AutomatonError::Undefined {
                position,
                state: self.states[cur].clone(),
                label: l.render(),
            })?;
        }
        Ok(cur)
    }

    pub fn run(&self, w: &[L]) -> Result<usize, AutomatonError> {
        self.run_from(self.initial, w)
    }

    pub fn accepts(&self, w: &[L]) -> bool {
        self.run(w).map(|q| self.finals[q]).unwrap_or(false)
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for to in self.delta[q].iter().flatten() {
                if !seen[*to] {
                    seen[*to] = true;
                    stack.push(*to);
                }
            }
        }
        seen
    }

    pub fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds = vec![Vec::new(); n];
        for (q, _, to) in self.transitions() {
            preds[to].push(q);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// The sub-automaton on the kept states; the initial state is always kept.
    pub fn restrict(&self, keep: &[bool]) -> Dfa<L> {
        let mut map = vec![None; self.num_states()];
        let mut states = Vec::new();
        for q in 0..self.num_states() {
            if keep[q] || q == self.initial {
                map[q] = Some(states.len());
                states.push(self.states[q].clone());
            }
        }
        let mut out = Dfa::new(states, map[self.initial].unwrap(), self.labels.clone())
            .expect("restriction keeps distinct names");
        for q in 0..self.num_states() {
            if let Some(nq) = map[q] {
                out.finals[nq] = self.finals[q];
                for (li, t) in self.delta[q].iter().enumerate() {
                    if let Some(nt) = t.and_then(|t| map[t]) {
                        out.delta[nq][li] = Some(nt);
                    }
                }
            }
        }
        out
    }

    /// Keeps the states that are both reachable and co-reachable.
    pub fn trim(&self) -> Dfa<L> {
        let r = self.reachable();
        let c = self.coaccessible();
        let keep: Vec<bool> = r.iter().zip(&c).map(|(a, b)| *a && *b).collect();
        self.restrict(&keep)
    }

    /// A fresh state name derived from `base` that does not clash.
    pub fn fresh_name(&self, base: &str) -> Symbol {
        let mut name = base.to_string();
        while self.state_index.contains_key(name.as_str()) {
            name.push('\'');
        }
        Symbol::new(name)
    }

    /// Adds a state and returns its index.
    pub fn add_state(&mut self, name: Symbol, is_final: bool) -> Result<usize, AutomatonError> {
        if self.state_index.contains_key(&name) {
            return Err(AutomatonError::DuplicateState(name));
        }
        let q = self.states.len();
        self.state_index.insert(name.clone(), q);
        self.states.push(name);
        self.delta.push(vec![None; self.labels.len()]);
        self.finals.push(is_final);
        Ok(q)
    }

    /// Adds a label (no-op when present) and returns its index.
    pub fn add_label(&mut self, l: L) -> usize {
        if let Some(i) = self.label_of(&l) {
            return i;
        }
        let i = self.labels.len();
        self.label_index.insert(l.clone(), i);
        self.labels.push(l);
        for row in &mut self.delta {
            row.push(None);
        }
        i
    }

    pub fn set_initial(&mut self, q: usize) {
        self.initial = q;
    }

    /// Sends every missing transition to a fresh non-final sink.
    /// Returns the sink index, or `None` when already complete.
    pub fn complete_with_sink(&mut self, name: &str) -> Option<usize> {
        if self.is_complete() {
            return None;
        }
        let sink = self
            .add_state(self.fresh_name(name), false)
            .expect("fresh name");
        for row in &mut self.delta {
            for t in row.iter_mut() {
                if t.is_none() {
                    *t = Some(sink);
                }
            }
        }
        Some(sink)
    }

    /// Whether the trimmed automaton has a cycle, i.e. accepts infinitely many words.
    pub fn has_infinite_language(&self) -> bool {
        let t = self.trim();
        if !t.coaccessible()[t.initial] {
            return false;
        }
        // iterative three-colour depth-first search
        let n = t.num_states();
        let mut colour = vec![0u8; n];
        for start in 0..n {
            if colour[start] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            colour[start] = 1;
            while let Some(&mut (q, ref mut li)) = stack.last_mut() {
                if *li == t.labels.len() {
                    colour[q] = 2;
                    stack.pop();
                    continue;
                }
                let next = t.delta[q][*li];
                *li += 1;
                if let Some(to) = next {
                    match colour[to] {
                        0 => {
                            colour[to] = 1;
                            stack.push((to, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                }
            }
        }
        false
    }
}

/// Whether two automata over the same labels accept the same language.
pub fn equivalent<L: Label>(a: &Dfa<L>, b: &Dfa<L>) -> bool {
    let mut labels: Vec<L> = a.labels().to_vec();
    for l in b.labels() {
        if a.label_of(l).is_none() {
            labels.push(l.clone());
        }
    }
    let accept = |d: &Dfa<L>, q: Option<usize>| q.is_some_and(|q| d.is_final(q));
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    let start = (Some(a.initial()), Some(b.initial()));
    seen.insert(start);
    queue.push_back(start);
    while let Some((p, q)) = queue.pop_front() {
        if accept(a, p) != accept(b, q) {
            return false;
        }
        for l in &labels {
            let next = (p.and_then(|p| a.step(p, l)), q.and_then(|q| b.step(q, l)));
            if next != (None, None) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    true
}

/// A deterministic automaton with output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao<L: Label> {
    dfa: Dfa<L>,
    outputs: Vec<Symbol>,
}

impl<L: Label> Dfao<L> {
    pub fn new(dfa: Dfa<L>, outputs: Vec<Symbol>) -> Result<Self, AutomatonError> {
        if outputs.len() != dfa.num_states() {
            return Err(AutomatonError::OutputCount {
                expected: dfa.num_states(),
                found: outputs.len(),
            });
        }
        Ok(Dfao { dfa, outputs })
    }

    pub fn dfa(&self) -> &Dfa<L> {
        &self.dfa
    }

    pub fn dfa_mut(&mut self) -> &mut Dfa<L> {
        &mut self.dfa
    }

    pub fn output(&self, q: usize) -> &Symbol {
        &self.outputs[q]
    }

    pub fn outputs(&self) -> &[Symbol] {
        &self.outputs
    }

    /// Output of the state reached on `w`.
    pub fn eval(&self, w: &[L]) -> Result<Symbol, AutomatonError> {
        self.dfa.run(w).map(|q| self.outputs[q].clone())
    }

    pub fn add_state(&mut self, name: Symbol, is_final: bool, output: Symbol) -> Result<usize, AutomatonError> {
        let q = self.dfa.add_state(name, is_final)?;
        self.outputs.push(output);
        Ok(q)
    }

    pub fn into_parts(self) -> (Dfa<L>, Vec<Symbol>) {
        (self.dfa, self.outputs)
    }
}

/// The value of the S-automatic word generated by `m` at `coords`.
pub fn automatic_cell(
    m: &Dfao<Tuple>,
    system: &NumerationSystem,
    coords: &[u64],
    pad: &Symbol,
) -> Result<Symbol, AutomatonError> {
    let reps: Vec<_> = coords.iter().map(|&n| system.rep(n)).collect();
    let padded = pad_tuple(&reps, pad)?;
    m.eval(&padded.columns())
}

/// The window of the given shape of the S-automatic word generated by `m`.
pub fn automatic_window(
    m: &Dfao<Tuple>,
    system: &NumerationSystem,
    shape: &[usize],
    pad: &Symbol,
) -> Result<Picture<Symbol>, AutomatonError> {
    let d = shape.len();
    if let Some(l) = m.dfa().labels().first() {
        if l.len() != d {
            return Err(AutomatonError::Arity {
                expected: l.len(),
                found: d,
            });
        }
    }
    let longest = shape.iter().copied().max().unwrap_or(0);
    let reps: Vec<_> = (0..longest as u64).map(|n| system.rep(n)).collect();
    let mut cells = Vec::with_capacity(shape.iter().product());
    for n in BoxIter::new(shape) {
        let words: Vec<_> = n.iter().map(|&c| reps[c].clone()).collect();
        let padded = pad_tuple(&words, pad)?;
        cells.push(m.eval(&padded.columns())?);
    }
    Ok(Picture::new(shape.to_vec(), cells).expect("box iteration covers the shape"))
}

/// Adds `pad^d` self-loops on every state. Fails if some state already
/// leaves elsewhere on `pad^d`.
pub fn complete_pad_loops(m: &Dfao<Tuple>, pad: &Symbol) -> Result<Dfao<Tuple>, AutomatonError> {
    let d = m.dfa().labels().first().map(Vec::len).ok_or(AutomatonError::NoLabels)?;
    let mut out = m.clone();
    let li = out.dfa.add_label(vec![pad.clone(); d]);
    for q in 0..out.dfa.num_states() {
        match out.dfa.step_idx(q, li) {
            Some(t) if t != q => {
                return Err(AutomatonError::PadLoopConflict {
                    state: out.dfa.state_name(q).clone(),
                    target: out.dfa.state_name(t).clone(),
                })
            }
            _ => out.dfa.add_transition_idx(q, li, q)?,
        }
    }
    Ok(out)
}

/// An automaton for `pad* L`, completed with a non-final sink when partial.
pub fn pad_star_language(l: &Dfa<Symbol>, pad: &Symbol) -> Result<Dfa<Symbol>, AutomatonError> {
    if l.label_of(pad).is_some() {
        return Err(AutomatonError::DuplicateLabel(pad.to_string()));
    }
    let mut labels = vec![pad.clone()];
    labels.extend(l.labels().iter().cloned());
    let mut out = Dfa::new(l.states().to_vec(), l.initial(), labels)?;
    for q in 0..l.num_states() {
        out.set_final(q, l.is_final(q));
    }
    for (q, li, to) in l.transitions() {
        out.add_transition_idx(q, li + 1, to)?;
    }
    let has_incoming = l.transitions().any(|(_, _, to)| to == l.initial());
    if has_incoming {
        let name = out.fresh_name(l.state_name(l.initial()).as_str());
        let copy = out.add_state(name, l.is_final(l.initial()))?;
        for li in 0..l.labels().len() {
            if let Some(to) = l.step_idx(l.initial(), li) {
                out.add_transition_idx(copy, li + 1, to)?;
            }
        }
        out.set_initial(copy);
    }
    let init = out.initial();
    out.add_transition_idx(init, 0, init)?;
    let mut out = out.trim();
    out.complete_with_sink("sink");
    Ok(out)
}

/// A state of a product automaton.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductState {
    pub dfao_state: usize,
    pub language_states: Vec<usize>,
}

/// The synchronized product of a d-dimensional automaton with output and d
/// copies of a language automaton, restricted to reachable states.
#[derive(Debug, Clone)]
pub struct Product {
    pub dfao: Dfao<Tuple>,
    pub components: Vec<ProductState>,
}

impl Product {
    pub fn index_of(&self, s: &ProductState) -> Option<usize> {
        self.components.iter().position(|c| c == s)
    }
}

pub fn product(a: &Dfao<Tuple>, l: &Dfa<Symbol>, d: usize) -> Result<Product, AutomatonError> {
    let labels = a.dfa().labels().to_vec();
    for t in &labels {
        if t.len() != d {
            return Err(AutomatonError::Arity {
                expected: d,
                found: t.len(),
            });
        }
    }
    let label_steps: Vec<Vec<usize>> = labels
        .iter()
        .map(|t| {
            t.iter()
                .map(|s| l.label_of(s).ok_or_else(|| AutomatonError::UnknownLabel(s.to_string())))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let start = ProductState {
        dfao_state: a.dfa().initial(),
        language_states: vec![l.initial(); d],
    };
    let mut index = HashMap::new();
    let mut components = vec![start.clone()];
    index.insert(start, 0usize);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < components.len() {
        let cur = components[i].clone();
        for (li, steps) in label_steps.iter().enumerate() {
            let Some(q) = a.dfa().step_idx(cur.dfao_state, li) else { continue };
            let ks: Option<Vec<usize>> = cur
                .language_states
                .iter()
                .zip(steps)
                .map(|(&k, &s)| l.step_idx(k, s))
                .collect();
            let Some(ks) = ks else { continue };
            let next = ProductState {
                dfao_state: q,
                language_states: ks,
            };
            let j = *index.entry(next.clone()).or_insert_with(|| {
                components.push(next);
                components.len() - 1
            });
            edges.push((i, li, j));
        }
        i += 1;
    }
    let names: Vec<Symbol> = components
        .iter()
        .map(|c| {
            let mut parts = vec![a.dfa().state_name(c.dfao_state).to_string()];
            parts.extend(c.language_states.iter().map(|&k| l.state_name(k).to_string()));
            Symbol::new(format!("({})", parts.join(",")))
        })
        .collect();
    let mut dfa = Dfa::new(names, 0, labels)?;
    for (from, li, to) in edges {
        dfa.add_transition_idx(from, li, to)?;
    }
    for (q, c) in components.iter().enumerate() {
        let fin = c.language_states.iter().all(|&k| l.is_final(k));
        dfa.set_final(q, fin);
    }
    let outputs = components.iter().map(|c| a.output(c.dfao_state).clone()).collect();
    Ok(Product {
        dfao: Dfao::new(dfa, outputs)?,
        components,
    })
}

/// The canonical d-dimensional morphism of a complete automaton over
/// `digits^d`: state `q` maps to the square of side `|digits|` whose cell
/// `n` is `δ(q, (digits[n_0], ..., digits[n_{d-1}]))`.
pub fn canonical_morphism(m: &Dfa<Tuple>, digits: &[Symbol]) -> Result<MultiMorphism, AutomatonError> {
    let d = m.labels().first().map(Vec::len).ok_or(AutomatonError::NoLabels)?;
    let side = vec![digits.len(); d];
    let mut images = Vec::with_capacity(m.num_states());
    for q in 0..m.num_states() {
        let mut cells = Vec::new();
        for n in BoxIter::new(&side) {
            let label: Tuple = n.iter().map(|&i| digits[i].clone()).collect();
            let to = m.step(q, &label).ok_or_else(|| AutomatonError::NotComplete {
                state: m.state_name(q).clone(),
                label: render_tuple(&label),
            })?;
            cells.push(to);
        }
        images.push(Picture::new(side.clone(), cells).expect("square"));
    }
    Ok(MultiMorphism::from_indexed(d, m.states().to_vec(), images).expect("images use known letters"))
}
