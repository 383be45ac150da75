#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::Rng;
use shapesym::automata::{Dfa, Dfao};
use shapesym::cli::format::{self, MorphismFile, SpecFile};
use shapesym::morphisms::tuple_labels;
use shapesym::{AutomaticPresentation, MorphicPresentation, MultiMorphism, NumerationSystem, OrderedAlphabet, Picture};
use shapesym::{Symbol, Word};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn pad() -> Symbol {
    Symbol::new("#")
}

fn load(name: &str) -> SpecFile {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    format::parse(&text, &pad()).unwrap()
}

pub fn avoid_bb() -> NumerationSystem {
    match load("avoid_bb.num") {
        SpecFile::Numeration(s) => s,
        _ => unreachable!(),
    }
}

pub fn pqrs() -> AutomaticPresentation {
    match load("pqrs.pres") {
        SpecFile::Presentation(p) => p,
        _ => unreachable!(),
    }
}

pub fn morphism_file(name: &str) -> MorphismFile {
    match load(name) {
        SpecFile::Morphism(m) => m,
        _ => unreachable!(),
    }
}

pub fn shape_symmetric() -> MorphicPresentation {
    let f = morphism_file("shape_symmetric.morph");
    MorphicPresentation::new(f.morphism, &f.seed, f.coding).unwrap()
}

/// Rows separated by `/`, cells by whitespace.
pub fn rows(text: &str) -> Vec<Vec<String>> {
    text.split('/')
        .map(|r| r.split_whitespace().map(str::to_string).collect())
        .collect()
}

pub fn picture_rows(p: &Picture<Symbol>) -> Vec<Vec<String>> {
    assert_eq!(p.dim(), 2);
    p.cells()
        .chunks(p.shape()[0])
        .map(|r| r.iter().map(|s| s.as_str().to_string()).collect())
        .collect()
}

/// All accepted words of length at most `max_len`, in genealogical order.
pub fn brute_force_language(dfa: &Dfa<Symbol>, alphabet: &[Symbol], max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for len in 0..=max_len {
        for w in &layer {
            let mut q = Some(dfa.initial());
            for s in w {
                q = q.and_then(|q| dfa.step(q, s));
            }
            if q.is_some_and(|q| dfa.is_final(q)) {
                out.push(w.clone());
            }
        }
        if len < max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |a| {
                        let mut v = w.clone();
                        v.push(a.clone());
                        v
                    })
                })
                .collect();
        }
    }
    out
}

/// A random partial DFA over `letters` on `n` states, initial state 0.
fn random_dfa(rng: &mut StdRng, n: usize, letters: &[Symbol], density: f64) -> Dfa<Symbol> {
    let names = (0..n).map(|i| Symbol::new(format!("q{i}"))).collect();
    let mut dfa = Dfa::new(names, 0, letters.to_vec()).unwrap();
    for q in 0..n {
        for li in 0..letters.len() {
            if rng.gen_bool(density) {
                dfa.add_transition_idx(q, li, rng.gen_range(0..n)).unwrap();
            }
        }
        dfa.set_final(q, rng.gen_bool(0.6));
    }
    dfa
}

pub fn random_numeration(rng: &mut StdRng) -> NumerationSystem {
    loop {
        let k = rng.gen_range(2..=3);
        let letters: Vec<Symbol> = (0..k).map(|i| Symbol::new(((b'a' + i as u8) as char).to_string())).collect();
        let n = rng.gen_range(2..=4);
        let dfa = random_dfa(rng, n, &letters, 0.7);
        if let Ok(s) = NumerationSystem::new(OrderedAlphabet::new(letters).unwrap(), dfa) {
            return s;
        }
    }
}

/// A random language with the empty word in which every state has a
/// successor and can reach a final state.
pub fn random_language(rng: &mut StdRng, letters: &[Symbol]) -> NumerationSystem {
    loop {
        let n = rng.gen_range(1..=3);
        let mut dfa = random_dfa(rng, n, letters, 0.6);
        dfa.set_final(0, true);
        let co = dfa.coaccessible();
        let alive = (0..n).all(|q| co[q] && (0..letters.len()).any(|li| dfa.step_idx(q, li).is_some()));
        if !alive {
            continue;
        }
        if let Ok(s) = NumerationSystem::new(OrderedAlphabet::new(letters.to_vec()).unwrap(), dfa) {
            return s;
        }
    }
}

pub fn random_automatic(rng: &mut StdRng, d: usize) -> AutomaticPresentation {
    let k = rng.gen_range(1..=3);
    let letters: Vec<Symbol> = (0..k).map(|i| Symbol::new(((b'a' + i as u8) as char).to_string())).collect();
    let system = random_language(rng, &letters);
    let mut digits = vec![pad()];
    digits.extend(letters);
    let labels = tuple_labels(&digits, d);
    let n = rng.gen_range(1..=4);
    let names = (0..n).map(|i| Symbol::new(format!("s{i}"))).collect();
    let mut dfa = Dfa::new(names, 0, labels.clone()).unwrap();
    for q in 0..n {
        for (li, label) in labels.iter().enumerate() {
            if label.iter().all(|s| *s == pad()) {
                continue;
            }
            dfa.add_transition_idx(q, li, rng.gen_range(0..n)).unwrap();
        }
    }
    let outputs = (0..n).map(|_| Symbol::new(["x", "y", "z"][rng.gen_range(0..3)])).collect();
    AutomaticPresentation::new(system, Dfao::new(dfa, outputs).unwrap(), pad()).unwrap()
}

/// A product of copies of a random prolongable one-dimensional morphism,
/// with a random tag bit per cell and a random coding.
pub fn random_shape_symmetric(rng: &mut StdRng, d: usize) -> MorphicPresentation {
    let b = rng.gen_range(2..=3);
    let sigma: Vec<Vec<usize>> = (0..b)
        .map(|i| {
            let len = if i == 0 { rng.gen_range(2..=3) } else { rng.gen_range(1..=3) };
            let mut img: Vec<usize> = (0..len).map(|_| rng.gen_range(0..b)).collect();
            if i == 0 {
                img[0] = 0;
            }
            img
        })
        .collect();
    let name = |t: &[usize]| Symbol::new(t.iter().map(ToString::to_string).collect::<Vec<_>>().concat());
    // letters are (b_1, ..., b_d, tag)
    let mut shape = vec![b; d];
    shape.push(2);
    let letters: Vec<Vec<usize>> = shapesym::pictures::BoxIter::new(&shape).collect();
    let mut entries = Vec::new();
    for l in &letters {
        let ext: Vec<usize> = (0..d).map(|i| sigma[l[i]].len()).collect();
        let seed = l.iter().all(|&c| c == 0);
        let img = Picture::from_fn(ext, |n| {
            let mut c: Vec<usize> = (0..d).map(|i| sigma[l[i]][n[i]]).collect();
            let corner = n.iter().all(|&x| x == 0);
            c.push(if seed && corner { 0 } else { rng.gen_range(0..2) });
            name(&c)
        });
        entries.push((name(l), img));
    }
    let mu = MultiMorphism::new(d, entries).unwrap();
    let coding = (0..mu.letters().len())
        .map(|_| Symbol::new(["x", "y", "z"][rng.gen_range(0..3)]))
        .collect();
    MorphicPresentation::new(mu, &name(&vec![0; d + 1]), coding).unwrap()
}

/// A random two-dimensional morphism prolongable on letter 0, with no
/// guarantee of being a morphism.
pub fn random_2d(rng: &mut StdRng) -> MultiMorphism {
    let n = rng.gen_range(2..=4);
    let letters: Vec<Symbol> = (0..n).map(|i| Symbol::new(format!("l{i}"))).collect();
    let images = (0..n)
        .map(|i| {
            let shape = if i == 0 {
                vec![2, 2]
            } else {
                vec![rng.gen_range(1..=2), rng.gen_range(1..=2)]
            };
            let mut p = Picture::from_fn(shape, |_| rng.gen_range(0..n));
            if i == 0 {
                *p.get_mut(&[0, 0]).unwrap() = 0;
            }
            p
        })
        .collect();
    MultiMorphism::from_indexed(2, letters, images).unwrap()
}

/// Applies `mu` to `x` by direct concatenation, or `None` when two images in
/// a common hyperplane have different extents across it.
pub fn naive_apply(mu: &MultiMorphism, x: &Picture<usize>) -> Option<Picture<usize>> {
    let d = x.dim();
    let shape = x.shape().to_vec();
    let mut extents: Vec<Vec<Option<usize>>> = shape.iter().map(|&s| vec![None; s]).collect();
    for (n, &c) in x.indexed() {
        for axis in 0..d {
            let e = mu.image(c).shape()[axis];
            match extents[axis][n[axis]] {
                None => extents[axis][n[axis]] = Some(e),
                Some(s) if s != e => return None,
                _ => {}
            }
        }
    }
    let extents: Vec<Vec<usize>> = extents.into_iter().map(|e| e.into_iter().map(Option::unwrap).collect()).collect();
    let offsets: Vec<Vec<usize>> = extents
        .iter()
        .map(|e| {
            let mut acc = vec![0];
            for v in e {
                acc.push(acc.last().unwrap() + v);
            }
            acc
        })
        .collect();
    let out_shape: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut out = Picture::filled(out_shape, usize::MAX);
    for (n, &c) in x.indexed() {
        for (m, &v) in mu.image(c).indexed() {
            let at: Vec<usize> = (0..d).map(|i| offsets[i][n[i]] + m[i]).collect();
            *out.get_mut(&at).unwrap() = v;
        }
    }
    Some(out)
}

/// What direct iteration of a morphism on a letter shows.
pub struct Expansion {
    /// A prefix of the last computed iterate.
    pub window: Picture<usize>,
    /// The first iterate seen to be undefined.
    pub undefined: Option<usize>,
    /// Number of iterates computed in full before switching to prefixes.
    pub exact: usize,
}

/// Iterates `mu` on `a` by direct concatenation until every extent is at
/// least `limit`. Iterates are computed in full while they are small and
/// then cut to prefixes of side `limit`, so an undefined iterate reported
/// after the switch bounds the first undefined one from above.
pub fn expand(mu: &MultiMorphism, a: usize, limit: usize) -> Expansion {
    const FULL_CELLS: usize = 1 << 18;
    let mut x = Picture::singleton(mu.dim(), a);
    let mut exact = 0;
    let mut full = true;
    for n in 1..=4 * limit {
        let Some(y) = naive_apply(mu, &x) else {
            return Expansion {
                window: x,
                undefined: Some(n),
                exact,
            };
        };
        if full && y.len() <= FULL_CELLS {
            exact = n;
        } else {
            full = false;
        }
        let y = if full { y } else { y.prefix(&vec![limit; mu.dim()]) };
        let stalled = y.shape() == x.shape();
        x = y;
        if stalled || x.shape().iter().all(|&e| e >= limit) {
            break;
        }
    }
    Expansion {
        window: x,
        undefined: None,
        exact,
    }
}

/// Compares the direction-`i` extents of images along the axes of a window
/// of the fixed point. Returns the first index where the sequences differ.
pub fn shape_sequence_gap(mu: &MultiMorphism, w: &Picture<usize>, limit: usize) -> Option<usize> {
    let d = w.dim();
    (0..limit).find(|&k| {
        let ext = |axis: usize| {
            let mut n = vec![0; d];
            n[axis] = k;
            mu.image(*w.at(&n)).shape()[axis]
        };
        (1..d).any(|i| ext(i) != ext(0))
    })
}
