use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{Fsa, State};

/// Nondeterministic acceptor with ε-moves. Only used transiently.
#[derive(Clone, Debug)]
pub struct Nfa {
    num_symbols: usize,
    starts: Vec<usize>,
    accepting: Vec<bool>,
    moves: Vec<Vec<(usize, usize)>>,
    eps: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn new(num_symbols: usize) -> Self {
        Nfa { num_symbols, starts: Vec::new(), accepting: Vec::new(), moves: Vec::new(), eps: Vec::new() }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.moves.push(Vec::new());
        self.eps.push(Vec::new());
        self.accepting.len() - 1
    }

    pub fn add_start(&mut self, q: usize) {
        self.starts.push(q);
    }

    pub fn add_move(&mut self, p: usize, s: usize, q: usize) {
        self.moves[p].push((s, q));
    }

    pub fn add_eps(&mut self, p: usize, q: usize) {
        self.eps[p].push(q);
    }

    pub fn set_accepting(&mut self, q: usize, accepting: bool) {
        self.accepting[q] = accepting;
    }

    /// Copy a DFA in; returns the offset of its states.
    pub fn absorb(&mut self, f: &Fsa) -> usize {
        let offset = self.accepting.len();
        for q in 0..f.num_states() {
            self.add_state(f.is_accepting(q as State));
        }
        for q in 0..f.num_states() {
            for s in 0..f.num_symbols() {
                self.add_move(offset + q, s, offset + f.next(q as State, s) as usize);
            }
        }
        offset
    }

    /// Copy in only the live states of a DFA (those that can still reach
    /// acceptance); moves into dead states are dropped. Returns the start
    /// state, or `None` if the language is empty.
    pub fn absorb_live(&mut self, f: &Fsa) -> Option<usize> {
        let live = f.live_states();
        if !live[f.start() as usize] {
            return None;
        }
        let mut id = vec![usize::MAX; f.num_states()];
        for q in 0..f.num_states() {
            if live[q] {
                id[q] = self.add_state(f.is_accepting(q as State));
            }
        }
        for q in 0..f.num_states() {
            if !live[q] {
                continue;
            }
            for s in 0..f.num_symbols() {
                let r = f.next(q as State, s) as usize;
                if live[r] {
                    self.add_move(id[q], s, id[r]);
                }
            }
        }
        Some(id[f.start() as usize])
    }

    pub(crate) fn concat(f: &Fsa, g: &Fsa) -> Nfa {
        let mut n = Nfa::new(f.num_symbols());
        let fo = n.absorb(f);
        let go = n.absorb(g);
        n.add_start(fo + f.start() as usize);
        for q in 0..f.num_states() {
            if f.is_accepting(q as State) {
                n.set_accepting(fo + q, false);
                n.add_eps(fo + q, go + g.start() as usize);
            }
        }
        n
    }

    pub(crate) fn star(f: &Fsa) -> Nfa {
        let mut n = Nfa::new(f.num_symbols());
        let hub = n.add_state(true);
        let fo = n.absorb(f);
        n.add_start(hub);
        n.add_eps(hub, fo + f.start() as usize);
        for q in 0..f.num_states() {
            if f.is_accepting(q as State) {
                n.add_eps(fo + q, hub);
            }
        }
        n
    }

    fn closure(&self, set: &mut Vec<usize>, has_eps: bool) {
        if !has_eps || set.is_empty() {
            set.sort_unstable();
            set.dedup();
            return;
        }
        let mut seen = vec![false; self.accepting.len()];
        for &q in set.iter() {
            seen[q] = true;
        }
        let mut stack = set.clone();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if !seen[r] {
                    seen[r] = true;
                    set.push(r);
                    stack.push(r);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
    }

    /// Subset construction.
    pub fn determinize(&self) -> Fsa {
        let k = self.num_symbols;
        let has_eps = self.eps.iter().any(|e| !e.is_empty());
        let mut start = self.starts.clone();
        self.closure(&mut start, has_eps);
        let mut index: BTreeMap<Vec<usize>, State> = BTreeMap::new();
        let mut order: Vec<Vec<usize>> = vec![start.clone()];
        index.insert(start, 0);
        let mut delta: Vec<State> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let mut targets: Vec<Vec<usize>> = vec![Vec::new(); k];
            for &q in &order[i] {
                for &(s, r) in &self.moves[q] {
                    targets[s].push(r);
                }
            }
            for mut t in targets {
                self.closure(&mut t, has_eps);
                let id = match index.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = order.len() as State;
                        index.insert(t.clone(), id);
                        order.push(t);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = order.iter().map(|set| set.iter().any(|&q| self.accepting[q])).collect();
        Fsa::from_table(k, 0, accepting, delta)
    }
}
