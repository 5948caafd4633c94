//! Padded n-tuple alphabets and synchronously regular relations.
//!
//! A tuple of words `(u_1, …, u_n)` is read in lockstep: shorter coordinates
//! are right-padded with `$` and the columns become symbols of
//! `(A ∪ {$})ⁿ ∖ {($, …, $)}`.

use alloc::vec;
use alloc::vec::Vec;

use super::{Fsa, Nfa, State, TupleIndex};
use crate::error::{Error, Result};

/// The padding marker as a coordinate value.
pub const PAD: Option<usize> = None;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PaddedAlphabet {
    base: usize,
    arity: usize,
}

impl PaddedAlphabet {
    pub fn new(base: usize, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidAutomaton("padded alphabet arity must be at least 1".into()));
        }
        let size = (base + 1).checked_pow(arity as u32).filter(|&s| s <= u32::MAX as usize);
        if size.is_none() {
            return Err(Error::InvalidAutomaton("padded alphabet too large".into()));
        }
        Ok(PaddedAlphabet { base, arity })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `(|A| + 1)ⁿ − 1`.
    pub fn len(&self) -> usize {
        (self.base + 1).pow(self.arity as u32) - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of a column; `None` entries are `$`. The all-`$` column has no index.
    pub fn encode(&self, column: &[Option<usize>]) -> Option<usize> {
        debug_assert_eq!(column.len(), self.arity);
        let radix = self.base + 1;
        let mut code = 0;
        for c in column.iter().rev() {
            let digit = match c {
                Some(x) if *x < self.base => *x,
                Some(_) => return None,
                None => self.base,
            };
            code = code * radix + digit;
        }
        (code < self.len()).then_some(code)
    }

    pub fn decode(&self, mut symbol: usize) -> Vec<Option<usize>> {
        let radix = self.base + 1;
        let mut out = Vec::with_capacity(self.arity);
        for _ in 0..self.arity {
            let d = symbol % radix;
            symbol /= radix;
            out.push((d < self.base).then_some(d));
        }
        out
    }

    /// Well-formed padded words: in every coordinate `$` only occurs as a suffix.
    pub fn well_formed(&self) -> Fsa {
        let n = self.arity;
        let masks = 1usize << n;
        let dead = masks as State;
        let k = self.len();
        let mut delta = Vec::with_capacity((masks + 1) * k);
        for mask in 0..masks {
            for s in 0..k {
                let col = self.decode(s);
                let mut next = mask;
                let mut ok = true;
                for (i, c) in col.iter().enumerate() {
                    match c {
                        None => next |= 1 << i,
                        Some(_) if mask & (1 << i) != 0 => ok = false,
                        Some(_) => {}
                    }
                }
                delta.push(if ok { next as State } else { dead });
            }
        }
        delta.extend(core::iter::repeat_n(dead, k));
        let mut accepting = vec![true; masks];
        accepting.push(false);
        Fsa::from_table(k, 0, accepting, delta).minimize()
    }
}

/// `pad(u)`: right-pad each coordinate with `$` to the longest length and zip.
pub fn pad(alphabet: &PaddedAlphabet, words: &[&[usize]]) -> Vec<usize> {
    assert_eq!(words.len(), alphabet.arity, "tuple arity does not match the padded alphabet");
    let m = words.iter().map(|w| w.len()).max().unwrap_or(0);
    let mut column = vec![None; words.len()];
    (0..m)
        .map(|j| {
            for (c, w) in column.iter_mut().zip(words) {
                *c = w.get(j).copied();
            }
            alphabet.encode(&column).expect("letters must lie in the base alphabet")
        })
        .collect()
}

/// An acceptor over a padded alphabet whose language consists of well-formed padded words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncAcceptor {
    alphabet: PaddedAlphabet,
    fsa: Fsa,
}

impl SyncAcceptor {
    /// Wrap an acceptor, discarding any malformed padded words it accepts.
    pub fn new(alphabet: PaddedAlphabet, fsa: Fsa) -> Result<Self> {
        let fsa = fsa.intersect(&alphabet.well_formed())?;
        Ok(SyncAcceptor { alphabet, fsa })
    }

    pub fn alphabet(&self) -> &PaddedAlphabet {
        &self.alphabet
    }

    pub fn fsa(&self) -> &Fsa {
        &self.fsa
    }

    pub fn accepts(&self, words: &[&[usize]]) -> bool {
        self.fsa.accepts(&pad(&self.alphabet, words))
    }

    /// `pad(L_1 × ⋯ × L_n)` for acceptors over a common base alphabet.
    pub fn product(parts: &[&Fsa]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidAutomaton("product of zero acceptors".into()));
        };
        let base = first.num_symbols();
        for f in parts {
            if f.num_symbols() != base {
                return Err(Error::AlphabetMismatch { expected: base, found: f.num_symbols() });
            }
        }
        let alphabet = PaddedAlphabet::new(base, parts.len())?;
        // per coordinate: 0..n running, n = finished after accepting, n + 1 = dead
        let done = |f: &Fsa| f.num_states() as State;
        let dead = |f: &Fsa| f.num_states() as State + 1;
        let k = alphabet.len();
        let columns: Vec<Vec<Option<usize>>> = (0..k).map(|s| alphabet.decode(s)).collect();
        let sizes: Vec<usize> = parts.iter().map(|f| f.num_states() + 2).collect();
        let mut index = TupleIndex::new(&sizes);
        // every tuple with a dead coordinate is merged into one sink
        let live: Vec<Vec<bool>> = parts.iter().map(|f| f.live_states()).collect();
        let sink: Vec<State> = parts.iter().map(|f| dead(f)).collect();
        let start: Vec<State> = parts.iter().map(|f| f.start()).collect();
        index.insert(&start);
        let sink_id = index.insert(&sink);
        let mut delta = Vec::new();
        let mut next = vec![0; parts.len()];
        let mut i = 0;
        while i < index.len() {
            if i == sink_id as usize {
                delta.extend(core::iter::repeat_n(sink_id, k));
                i += 1;
                continue;
            }
            let current = index.tuple(i).to_vec();
            'columns: for col in &columns {
                for (j, f) in parts.iter().enumerate() {
                    let q = current[j];
                    let r = match (col[j], q == done(f)) {
                        (None, true) => q,
                        (Some(_), true) => dead(f),
                        (None, false) if f.is_accepting(q) => done(f),
                        (None, false) => dead(f),
                        (Some(x), false) => f.next(q, x),
                    };
                    if r == dead(f) || (r < done(f) && !live[j][r as usize]) {
                        delta.push(sink_id);
                        continue 'columns;
                    }
                    next[j] = r;
                }
                delta.push(index.insert(&next));
            }
            i += 1;
        }
        let accepting = (0..index.len())
            .map(|i| index.tuple(i).iter().zip(parts).all(|(&q, f)| q == done(f) || (q < done(f) && f.is_accepting(q))))
            .collect();
        let fsa = Fsa::from_table(k, 0, accepting, delta).minimize();
        Ok(SyncAcceptor { alphabet, fsa })
    }

    pub fn union_all(parts: &[&SyncAcceptor], alphabet: PaddedAlphabet) -> Result<Self> {
        for p in parts {
            if p.alphabet != alphabet {
                return Err(Error::AlphabetMismatch { expected: alphabet.len(), found: p.alphabet.len() });
            }
        }
        let fsas: Vec<&Fsa> = parts.iter().map(|p| &p.fsa).collect();
        Ok(SyncAcceptor { alphabet, fsa: Fsa::union_all(&fsas, alphabet.len())? })
    }

    /// `{u_i | (u_1, …, u_n) ∈ L}` over the base alphabet.
    pub fn project(&self, coordinate: usize) -> Result<Fsa> {
        if coordinate >= self.alphabet.arity {
            return Err(Error::InvalidAutomaton("projection coordinate out of range".into()));
        }
        let mut nfa = Nfa::new(self.alphabet.base);
        let offset = {
            let mut offset = 0;
            for q in 0..self.fsa.num_states() {
                let id = nfa.add_state(self.fsa.is_accepting(q as State));
                if q == 0 {
                    offset = id;
                }
            }
            offset
        };
        nfa.add_start(offset + self.fsa.start() as usize);
        for q in 0..self.fsa.num_states() {
            for s in 0..self.alphabet.len() {
                let r = offset + self.fsa.next(q as State, s) as usize;
                match self.alphabet.decode(s)[coordinate] {
                    Some(x) => nfa.add_move(offset + q, x, r),
                    // padding in the kept coordinate only occurs as a suffix of well-formed words
                    None => nfa.add_eps(offset + q, r),
                }
            }
        }
        Ok(nfa.determinize().minimize())
    }

    pub fn proj1(&self) -> Fsa {
        self.project(0).expect("arity is at least 1")
    }
}
