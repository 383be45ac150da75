//! A two-dimensional automatic word: the automaton of a presentation file
//! reads padded pairs of representations.

use shapesym::cli::format;
use shapesym::numeration::pad_tuple;
use shapesym::symbol::{render_tuple, render_word};
use shapesym::Symbol;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/pqrs.pres");
    let pad = Symbol::new("#");
    let a = format::parse_presentation(&std::fs::read_to_string(path)?, &pad)?;
    println!("{}\n", a.window(&[8, 8])?);

    let (m, n) = (6u32, 3u32);
    let (u, v) = (a.system().rep(m), a.system().rep(n));
    let padded = pad_tuple(&[u.clone(), v.clone()], &pad)?;
    let columns: Vec<String> = padded.columns().iter().map(|c| render_tuple(c)).collect();
    let dfa = a.dfao().dfa();
    let mut q = dfa.initial();
    let mut path = vec![dfa.state_name(q).to_string()];
    for c in padded.columns() {
        q = dfa.step(q, &c).expect("complete on padded input");
        path.push(dfa.state_name(q).to_string());
    }
    println!(
        "cell ({m},{n}): rep = ({}, {}), read {} along {}",
        render_word(&u),
        render_word(&v),
        columns.join(" "),
        path.join(" -> ")
    );
    Ok(())
}
