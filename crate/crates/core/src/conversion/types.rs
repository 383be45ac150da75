//! Dead, moribund and robust letters, and the stabilizing power.

use std::collections::HashMap;
use std::fmt;

use crate::automata::Dfa;
use crate::morphisms::MultiMorphism;
use crate::symbol::Symbol;

/// Behaviour of a letter relative to a set `Ψ` under iteration of a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterType {
    /// Every iterate stays inside `Ψ`.
    Dead,
    /// Some iterate leaves `Ψ`, but only finitely many do.
    Moribund,
    /// Infinitely many iterates leave `Ψ`, and the letter is in `Ψ`.
    RobustNonFinal,
    /// Infinitely many iterates leave `Ψ`, and the letter is outside `Ψ`.
    RobustFinal,
}

impl LetterType {
    pub fn is_robust(self) -> bool {
        matches!(self, LetterType::RobustNonFinal | LetterType::RobustFinal)
    }

    pub fn is_final(self) -> bool {
        matches!(self, LetterType::Moribund | LetterType::RobustFinal)
    }
}

impl fmt::Display for LetterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LetterType::Dead => "dead",
            LetterType::Moribund => "M",
            LetterType::RobustNonFinal => "R_Fc",
            LetterType::RobustFinal => "R_F",
        })
    }
}

/// Type of a letter from whether it is final and whether it can step into
/// the finals in one move.
fn type_from(is_final: bool, can_continue: bool) -> LetterType {
    match (is_final, can_continue) {
        (false, false) => LetterType::Dead,
        (true, false) => LetterType::Moribund,
        (false, true) => LetterType::RobustNonFinal,
        (true, true) => LetterType::RobustFinal,
    }
}

/// Type of a state of a language automaton from its one-letter transitions.
pub fn state_type(dfa: &Dfa<Symbol>, k: usize) -> LetterType {
    let cont = (0..dfa.labels().len()).any(|li| dfa.step_idx(k, li).is_some_and(|t| dfa.is_final(t)));
    type_from(dfa.is_final(k), cont)
}

/// Type of a state given the targets of its (block) transitions.
pub(crate) fn state_type_from_targets(dfa: &Dfa<Symbol>, k: usize, targets: &[usize]) -> LetterType {
    type_from(dfa.is_final(k), targets.iter().any(|&t| dfa.is_final(t)))
}

/// Type of a product letter from the types of its language components.
pub fn table_type(components: &[LetterType]) -> LetterType {
    if components.contains(&LetterType::Dead) {
        return LetterType::Dead;
    }
    let is_final = components.iter().all(|t| t.is_final());
    let cont = components.iter().all(|t| t.is_robust());
    if cont {
        type_from(is_final, true)
    } else if is_final {
        LetterType::Moribund
    } else {
        LetterType::Dead
    }
}

/// Classifies every letter of `μ` relative to `psi` (`psi[b]` iff `b ∈ Ψ`).
pub fn classify_letters(mu: &MultiMorphism, psi: &[bool]) -> Vec<LetterType> {
    let n = mu.letters().len();
    let g = mu.production_graph();
    let reach = transitive_closure(&g);
    let outside: Vec<usize> = (0..n).filter(|&b| !psi[b]).collect();
    let on_cycle: Vec<bool> = (0..n).map(|b| reach[b][b]).collect();
    // b reaches the complement of psi in zero or more steps
    let meets: Vec<bool> = (0..n)
        .map(|b| !psi[b] || outside.iter().any(|&c| reach[b][c]))
        .collect();
    (0..n)
        .map(|a| {
            if !meets[a] {
                return LetterType::Dead;
            }
            let robust = (0..n).any(|c| (c == a || reach[a][c]) && on_cycle[c] && meets[c]);
            if !robust {
                LetterType::Moribund
            } else if psi[a] {
                LetterType::RobustNonFinal
            } else {
                LetterType::RobustFinal
            }
        })
        .collect()
}

/// `reach[a][b]` iff there is a walk of length at least one from `a` to `b`.
fn transitive_closure(g: &[std::collections::BTreeSet<usize>]) -> Vec<Vec<bool>> {
    let n = g.len();
    let mut reach = vec![vec![false; n]; n];
    for a in 0..n {
        let mut stack: Vec<usize> = g[a].iter().copied().collect();
        while let Some(b) = stack.pop() {
            if !reach[a][b] {
                reach[a][b] = true;
                stack.extend(g[b].iter().copied());
            }
        }
    }
    reach
}

type BoolMatrix = Vec<Vec<bool>>;

fn multiply(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    if b[k][j] {
                        out[i][j] = true;
                    }
                }
            }
        }
    }
    out
}

/// The smallest `T ≥ 1` for which `φ = μ^T` satisfies: every
/// `(φ,Ψ)`-moribund letter lies outside `Ψ` and all its proper iterates are
/// inside `Ψ`, and every `(φ,Ψ)`-robust letter has every proper iterate
/// leaving `Ψ`.
///
/// The powers of the boolean production matrix are eventually periodic;
/// once the index and period are known, each condition is decided on
/// finitely many exponents.
pub fn stabilizing_power(mu: &MultiMorphism, psi: &[bool]) -> usize {
    let n = mu.letters().len();
    let g = mu.production_graph();
    let base: BoolMatrix = (0..n).map(|a| (0..n).map(|b| g[a].contains(&b)).collect()).collect();
    let identity: BoolMatrix = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
    // powers[e] = base^e, until a repeat
    let mut powers = vec![identity];
    let mut first_seen: HashMap<BoolMatrix, usize> = HashMap::new();
    first_seen.insert(powers[0].clone(), 0);
    let (index, period) = loop {
        let next = multiply(powers.last().unwrap(), &base);
        let e = powers.len();
        if let Some(&j) = first_seen.get(&next) {
            break (j, e - j);
        }
        first_seen.insert(next.clone(), e);
        powers.push(next);
    };
    let canonical = |e: usize| if e < index { e } else { index + (e - index) % period };
    let meets = |a: usize, e: usize| {
        let m = &powers[canonical(e)];
        (0..n).any(|b| m[a][b] && !psi[b])
    };
    let horizon = index + period;
    let verifies = |t: usize| {
        (0..n).all(|a| {
            // exponents t*j for j in [index, index+period) cover the periodic regime
            let robust = (index..horizon).any(|j| meets(a, t * j));
            let dead = !robust && (0..horizon).all(|j| !meets(a, t * j));
            if robust {
                (1..horizon).all(|j| meets(a, t * j))
            } else if dead {
                true
            } else {
                !psi[a] && (1..horizon).all(|j| !meets(a, t * j))
            }
        })
    };
    let mut bound = period;
    while bound < index.max(1) {
        bound += period;
    }
    (1..=bound).find(|&t| verifies(t)).unwrap_or(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pictures::Picture;
    use crate::symbol::{symbols, Symbol};

    fn uni(entries: &[(&str, &str)]) -> MultiMorphism {
        let e = entries
            .iter()
            .map(|(a, w)| {
                let cells = symbols(w);
                (Symbol::new(*a), Picture::new(vec![cells.len()], cells).unwrap())
            })
            .collect();
        MultiMorphism::new(1, e).unwrap()
    }

    #[test]
    fn table_matches_the_literal_table() {
        use LetterType::*;
        let order = [Dead, Moribund, RobustNonFinal, RobustFinal];
        // rows: type of the second component, columns: type of the first
        let table = [
            [Dead, Dead, Dead, Dead],
            [Dead, Moribund, Dead, Moribund],
            [Dead, Dead, RobustNonFinal, RobustNonFinal],
            [Dead, Moribund, RobustNonFinal, RobustFinal],
        ];
        for (r, &tl) in order.iter().enumerate() {
            for (c, &tk) in order.iter().enumerate() {
                assert_eq!(table_type(&[tk, tl]), table[r][c], "k={tk:?} l={tl:?}");
            }
        }
    }

    #[test]
    fn classification() {
        // a -> a b, b -> c, c -> c ; psi = {a, c}
        let mu = uni(&[("a", "a b"), ("b", "c"), ("c", "c")]);
        let psi = vec![true, false, true];
        let t = classify_letters(&mu, &psi);
        assert_eq!(t, vec![LetterType::RobustNonFinal, LetterType::Moribund, LetterType::Dead]);
        assert_eq!(stabilizing_power(&mu, &psi), 1);
    }

    #[test]
    fn two_cycle_needs_an_even_power() {
        // a -> b, b -> a with psi = {b}: a leaves psi at even steps only
        let mu = uni(&[("a", "b"), ("b", "a")]);
        let psi = vec![false, true];
        assert_eq!(stabilizing_power(&mu, &psi), 2);
        let phi = mu.power(2).unwrap();
        let t = classify_letters(&phi, &psi);
        assert_eq!(t, vec![LetterType::RobustFinal, LetterType::Dead]);
    }

    #[test]
    fn always_robust_gives_one() {
        let mu = uni(&[("a", "a b"), ("b", "b a")]);
        assert_eq!(stabilizing_power(&mu, &[false, false]), 1);
        assert_eq!(classify_letters(&mu, &[false, false]), vec![LetterType::RobustFinal; 2]);
    }

    #[test]
    fn moribund_outside_psi_after_delay() {
        // a -> b, b -> c, c -> c with psi = {b, c}: a moribund and outside psi
        let mu = uni(&[("a", "b"), ("b", "c"), ("c", "c")]);
        let psi = vec![false, true, true];
        assert_eq!(stabilizing_power(&mu, &psi), 1);
        // x -> y -> z -> w -> w with only z outside psi
        let mu = uni(&[("x", "y"), ("y", "z"), ("z", "w"), ("w", "w")]);
        let psi = vec![true, true, false, true];
        let t = stabilizing_power(&mu, &psi);
        let phi = mu.power(t).unwrap();
        let types = classify_letters(&phi, &psi);
        for (a, ty) in types.iter().enumerate() {
            if *ty == LetterType::Moribund {
                assert!(!psi[a]);
            }
        }
        assert_eq!(t, 3);
    }
}
