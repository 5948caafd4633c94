use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::stacking::{Oracle, PiecewiseRule, StackingStructure};
use crate::words::{Alphabet, Word};

/// Generator names `a, b, c, …` (then `x26, x27, …`).
pub fn generator_names(n: usize) -> Vec<String> {
    (0..n).map(|i| if i < 26 { String::from(char::from(b'a' + i as u8)) } else { format!("x{i}") }).collect()
}

/// Freely reduced words over `alphabet`.
pub fn freely_reduced(alphabet: &Alphabet) -> Fsa {
    let n = alphabet.len();
    // state 0 is the start, state i+1 remembers the last letter i
    let mut transitions = Vec::with_capacity((n + 1) * n);
    for q in 0..=n {
        for x in alphabet.letters() {
            if q > 0 && alphabet.inverse(x).index() == q - 1 {
                continue;
            }
            transitions.push((q, x.index(), x.index() + 1));
        }
    }
    let accepting: Vec<usize> = (0..=n).collect();
    Fsa::from_parts(n, n + 1, 0, &accepting, &transitions).expect("deterministic by construction")
}

/// The free group on the given generator names. Every edge lies in the
/// tree, so the stacking map is `φ(y, a) = a` and the bound is 1.
pub fn free_on(name: impl Into<String>, generators: &[&str]) -> Result<StackingStructure> {
    let alphabet = Alphabet::from_generators(generators)?;
    let n = freely_reduced(&alphabet);
    let rules = alphabet.letters().map(|a| PiecewiseRule::new(n.clone(), a, Word::letter(a))).collect();
    let oracle_alphabet = alphabet.clone();
    let oracle = Oracle::new("free reduction", move |w: &Word| oracle_alphabet.free_reduce(w));
    Ok(StackingStructure::new(name, alphabet, n, rules, 1)?.with_oracle(oracle))
}

/// The free group of rank `n` on `a, b, c, …`.
pub fn free(n: usize) -> Result<StackingStructure> {
    if n == 0 {
        return Err(Error::InvalidInput("free group of rank 0 has no generators; use the trivial group".into()));
    }
    let names = generator_names(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    free_on(format!("free{n}"), &refs)
}

/// The trivial group over an empty alphabet.
pub fn trivial() -> StackingStructure {
    StackingStructure::new("trivial", Alphabet::empty(), Fsa::epsilon(0), Vec::new(), 0)
        .expect("ε is a normal form")
        .with_oracle(Oracle::new("trivial", |_: &Word| Word::empty()))
}
