//! Acceptor documents.
//!
//! ```json
//! {"alphabet": ["a", "a^-1"], "states": 2, "start": 0, "accepting": [0, 1],
//!  "transitions": [[0, "a", 1], [1, "a", 1]]}
//! ```
//!
//! Symbols of padded alphabets are arrays of names with `"$"` for padding.
//! Transitions may name their symbol or give its index in `alphabet`. Missing
//! transitions go to a non-accepting sink, and exports leave out every state
//! that cannot reach acceptance.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use autostack_core::fsa::{Fsa, PaddedAlphabet};
use autostack_core::words::Alphabet;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const PAD_NAME: &str = "$";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Symbol {
    Name(String),
    Tuple(Vec<String>),
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Symbol::Name(n) => f.write_str(n),
            Symbol::Tuple(t) => write!(f, "({})", t.join(", ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SymbolRef {
    Index(usize),
    Symbol(Symbol),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsaDoc {
    pub alphabet: Vec<Symbol>,
    pub states: usize,
    pub start: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, SymbolRef, usize)>,
}

pub fn letter_symbols(alphabet: &Alphabet) -> Vec<Symbol> {
    alphabet.names().iter().cloned().map(Symbol::Name).collect()
}

/// Symbols of a padded alphabet over `alphabet`, in index order.
pub fn padded_symbols(alphabet: &Alphabet, padded: &PaddedAlphabet) -> Vec<Symbol> {
    (0..padded.len())
        .map(|s| {
            let names = padded
                .decode(s)
                .into_iter()
                .map(|c| c.map_or_else(|| PAD_NAME.to_string(), |x| alphabet.names()[x].clone()))
                .collect();
            Symbol::Tuple(names)
        })
        .collect()
}

impl FsaDoc {
    /// Export the live part of `fsa`; `symbols[i]` names symbol `i`.
    pub fn from_fsa(fsa: &Fsa, symbols: &[Symbol]) -> Self {
        assert_eq!(symbols.len(), fsa.num_symbols(), "one name per symbol");
        let (live, transitions) = fsa.live_transitions();
        let mut renum = vec![usize::MAX; fsa.num_states()];
        let mut next = 0;
        // the start state is kept even when the language is empty
        for q in std::iter::once(fsa.start() as usize).chain(0..fsa.num_states()) {
            if renum[q] == usize::MAX && (live[q] || q == fsa.start() as usize) {
                renum[q] = next;
                next += 1;
            }
        }
        let accepting = (0..fsa.num_states()).filter(|&q| fsa.is_accepting(q as u32)).map(|q| renum[q]).collect();
        let mut transitions: Vec<(usize, SymbolRef, usize)> = transitions
            .into_iter()
            .map(|(p, s, q)| (renum[p as usize], SymbolRef::Symbol(symbols[s].clone()), renum[q as usize]))
            .collect();
        transitions.sort_by_key(|t| (t.0, t.2));
        let mut accepting: Vec<usize> = accepting;
        accepting.sort_unstable();
        FsaDoc { alphabet: symbols.to_vec(), states: next, start: 0, accepting, transitions }
    }

    /// Rebuild the acceptor over `symbols`, which must list the same symbols as
    /// the document (in any order).
    pub fn to_fsa(&self, symbols: &[Symbol]) -> Result<Fsa> {
        let target: HashMap<&Symbol, usize> = symbols.iter().enumerate().map(|(i, s)| (s, i)).collect();
        if self.alphabet.len() != symbols.len() {
            return Err(Error::format(format!(
                "acceptor alphabet has {} symbols, expected {}",
                self.alphabet.len(),
                symbols.len()
            )));
        }
        let mut remap = Vec::with_capacity(self.alphabet.len());
        for s in &self.alphabet {
            let i = target.get(s).ok_or_else(|| Error::format(format!("unexpected symbol `{s}` in acceptor")))?;
            remap.push(*i);
        }
        let own: HashMap<&Symbol, usize> = self.alphabet.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for (p, s, q) in &self.transitions {
            let local = match s {
                SymbolRef::Index(i) if *i < self.alphabet.len() => *i,
                SymbolRef::Index(i) => return Err(Error::format(format!("symbol index {i} out of range"))),
                SymbolRef::Symbol(sym) => {
                    *own.get(sym).ok_or_else(|| Error::format(format!("transition on unknown symbol `{sym}`")))?
                }
            };
            transitions.push((*p, remap[local], *q));
        }
        Ok(Fsa::from_parts(symbols.len(), self.states, self.start, &self.accepting, &transitions)?)
    }
}

/// Graphviz rendering of the live part of `fsa`, with parallel edges merged.
pub fn to_dot(fsa: &Fsa, symbols: &[Symbol], name: &str) -> String {
    let doc = FsaDoc::from_fsa(fsa, symbols);
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", name.replace('"', "'")).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  init [shape=point];").unwrap();
    for q in 0..doc.states {
        let shape = if doc.accepting.contains(&q) { "doublecircle" } else { "circle" };
        writeln!(out, "  {q} [shape={shape}];").unwrap();
    }
    writeln!(out, "  init -> {};", doc.start).unwrap();
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (p, s, q) in &doc.transitions {
        let label = match s {
            SymbolRef::Symbol(sym) => sym.to_string(),
            SymbolRef::Index(i) => doc.alphabet[*i].to_string(),
        };
        edges.entry((*p, *q)).or_default().push(label);
    }
    for ((p, q), labels) in edges {
        writeln!(out, "  {p} -> {q} [label=\"{}\"];", labels.join(", ").replace('"', "'")).unwrap();
    }
    out.push_str("}\n");
    out
}
