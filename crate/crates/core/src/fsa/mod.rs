//! Deterministic finite-state acceptors over `0..num_symbols`.
//!
//! Transitions are total. Constructors that receive partial transition
//! tables route undefined moves to a non-accepting sink. Nondeterminism only
//! appears inside [`nfa`] and is determinized before anything is returned.
//!
//! Symbols are bare indices; the group alphabet, the `C_i = A_i ∪ {$, >}`
//! alphabets of graph products, and padded tuple alphabets all map onto them.

mod nfa;
mod padded;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use nfa::Nfa;
pub use padded::{pad, PaddedAlphabet, SyncAcceptor, PAD};

pub type State = u32;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fsa {
    num_symbols: usize,
    start: State,
    accepting: Vec<bool>,
    // row-major: delta[q * num_symbols + s]
    delta: Vec<State>,
}

impl Fsa {
    /// Build from a (possibly partial) deterministic transition list.
    pub fn from_parts(
        num_symbols: usize,
        num_states: usize,
        start: usize,
        accepting: &[usize],
        transitions: &[(usize, usize, usize)],
    ) -> Result<Fsa> {
        if num_states == 0 || start >= num_states {
            return Err(Error::InvalidAutomaton("start state out of range".into()));
        }
        let sink = num_states;
        let mut delta = vec![sink as State; (num_states + 1) * num_symbols];
        let mut set = vec![false; num_states * num_symbols];
        for &(p, s, q) in transitions {
            if p >= num_states || q >= num_states || s >= num_symbols {
                return Err(Error::InvalidAutomaton(alloc::format!("transition ({p}, {s}, {q}) out of range")));
            }
            let i = p * num_symbols + s;
            if set[i] && delta[i] != q as State {
                return Err(Error::InvalidAutomaton(alloc::format!(
                    "nondeterministic transitions from state {p} on symbol {s}"
                )));
            }
            set[i] = true;
            delta[i] = q as State;
        }
        let mut acc = vec![false; num_states + 1];
        for &q in accepting {
            if q >= num_states {
                return Err(Error::InvalidAutomaton(alloc::format!("accepting state {q} out of range")));
            }
            acc[q] = true;
        }
        Ok(Fsa { num_symbols, start: start as State, accepting: acc, delta }.trim())
    }

    /// Build from a total transition function given as a dense table.
    pub(crate) fn from_table(num_symbols: usize, start: State, accepting: Vec<bool>, delta: Vec<State>) -> Fsa {
        debug_assert_eq!(delta.len(), accepting.len() * num_symbols);
        Fsa { num_symbols, start, accepting, delta }
    }

    /// The empty language.
    pub fn empty(num_symbols: usize) -> Fsa {
        Fsa { num_symbols, start: 0, accepting: vec![false], delta: vec![0; num_symbols] }
    }

    /// All of `A*`.
    pub fn universal(num_symbols: usize) -> Fsa {
        Fsa { num_symbols, start: 0, accepting: vec![true], delta: vec![0; num_symbols] }
    }

    /// `{ε}`.
    pub fn epsilon(num_symbols: usize) -> Fsa {
        Fsa::from_words(num_symbols, &[&[]])
    }

    /// The one-letter words `{s | s ∈ symbols}`.
    pub fn symbols(num_symbols: usize, symbols: &[usize]) -> Fsa {
        let words: Vec<[usize; 1]> = symbols.iter().map(|&s| [s]).collect();
        let refs: Vec<&[usize]> = words.iter().map(|w| &w[..]).collect();
        Fsa::from_words(num_symbols, &refs)
    }

    pub fn word(num_symbols: usize, word: &[usize]) -> Fsa {
        Fsa::from_words(num_symbols, &[word])
    }

    /// A finite language, built as a trie.
    pub fn from_words(num_symbols: usize, words: &[&[usize]]) -> Fsa {
        // state 0 is the sink, state 1 the root
        let mut delta = vec![0 as State; 2 * num_symbols];
        let mut accepting = vec![false, false];
        for w in words {
            let mut q = 1usize;
            for &s in w.iter() {
                assert!(s < num_symbols, "symbol out of range");
                let next = delta[q * num_symbols + s];
                q = if next == 0 {
                    let fresh = accepting.len();
                    accepting.push(false);
                    delta.extend(core::iter::repeat_n(0, num_symbols));
                    delta[q * num_symbols + s] = fresh as State;
                    fresh
                } else {
                    next as usize
                };
            }
            accepting[q] = true;
        }
        Fsa { num_symbols, start: 1, accepting, delta }
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> State {
        self.start
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q as usize]
    }

    #[inline]
    pub fn next(&self, q: State, s: usize) -> State {
        self.delta[q as usize * self.num_symbols + s]
    }

    pub fn run_from(&self, q: State, word: &[usize]) -> State {
        word.iter().fold(q, |q, &s| self.next(q, s))
    }

    pub fn run(&self, word: &[usize]) -> State {
        self.run_from(self.start, word)
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        word.iter().all(|&s| s < self.num_symbols) && self.is_accepting(self.run(word))
    }

    /// Membership for words over a group alphabet.
    pub fn accepts_letters(&self, word: &[crate::Letter]) -> bool {
        let mut q = self.start;
        for x in word {
            let s = x.index();
            if s >= self.num_symbols {
                return false;
            }
            q = self.next(q, s);
        }
        self.is_accepting(q)
    }

    fn check_same(&self, other: &Fsa) -> Result<()> {
        if self.num_symbols != other.num_symbols {
            return Err(Error::AlphabetMismatch { expected: self.num_symbols, found: other.num_symbols });
        }
        Ok(())
    }

    /// Reachable product of several acceptors, accepting where `accept` says so.
    fn product_many(parts: &[&Fsa], accept: impl Fn(&[bool]) -> bool) -> Fsa {
        let n = parts[0].num_symbols;
        let sizes: Vec<usize> = parts.iter().map(|f| f.num_states()).collect();
        let mut index = TupleIndex::new(&sizes);
        let start: Vec<State> = parts.iter().map(|f| f.start).collect();
        index.insert(&start);
        let mut delta = Vec::new();
        let mut next = vec![0; parts.len()];
        let mut i = 0;
        while i < index.len() {
            let current = index.tuple(i).to_vec();
            for s in 0..n {
                for ((slot, &q), f) in next.iter_mut().zip(&current).zip(parts) {
                    *slot = f.next(q, s);
                }
                delta.push(index.insert(&next));
            }
            i += 1;
        }
        let accepting = (0..index.len())
            .map(|i| {
                let flags: Vec<bool> = index.tuple(i).iter().zip(parts).map(|(&q, f)| f.is_accepting(q)).collect();
                accept(&flags)
            })
            .collect();
        Fsa { num_symbols: n, start: 0, accepting, delta }
    }

    pub fn union(&self, other: &Fsa) -> Result<Fsa> {
        self.check_same(other)?;
        Ok(Fsa::product_many(&[self, other], |f| f[0] || f[1]).minimize())
    }

    pub fn intersect(&self, other: &Fsa) -> Result<Fsa> {
        self.check_same(other)?;
        Ok(Fsa::product_many(&[self, other], |f| f[0] && f[1]).minimize())
    }

    /// `L(self) ∖ L(other)`.
    pub fn difference(&self, other: &Fsa) -> Result<Fsa> {
        self.check_same(other)?;
        Ok(Fsa::product_many(&[self, other], |f| f[0] && !f[1]).minimize())
    }

    /// Union of any number of acceptors over the same alphabet.
    ///
    /// The live parts are joined nondeterministically and determinized, which
    /// stays small when the parts accept mostly disjoint languages.
    pub fn union_all(parts: &[&Fsa], num_symbols: usize) -> Result<Fsa> {
        for f in parts {
            if f.num_symbols != num_symbols {
                return Err(Error::AlphabetMismatch { expected: num_symbols, found: f.num_symbols });
            }
        }
        let mut nfa = Nfa::new(num_symbols);
        for f in parts {
            if let Some(start) = nfa.absorb_live(f) {
                nfa.add_start(start);
            }
        }
        Ok(nfa.determinize().minimize())
    }

    /// Complement relative to `A*`.
    pub fn complement(&self) -> Fsa {
        let mut out = self.clone();
        for a in out.accepting.iter_mut() {
            *a = !*a;
        }
        out
    }

    pub fn concat(&self, other: &Fsa) -> Result<Fsa> {
        self.check_same(other)?;
        Ok(Nfa::concat(self, other).determinize().minimize())
    }

    pub fn star(&self) -> Fsa {
        Nfa::star(self).determinize().minimize()
    }

    /// `{w ∈ B* | h(w) ∈ L}` where `h` sends source symbol `b` to `images[b]`.
    pub fn hom_preimage(&self, images: &[Vec<usize>]) -> Result<Fsa> {
        for img in images {
            if let Some(&s) = img.iter().find(|&&s| s >= self.num_symbols) {
                return Err(Error::AlphabetMismatch { expected: self.num_symbols, found: s + 1 });
            }
        }
        let m = images.len();
        let mut delta = Vec::with_capacity(self.num_states() * m);
        for q in 0..self.num_states() as State {
            for img in images {
                delta.push(self.run_from(q, img));
            }
        }
        Ok(Fsa { num_symbols: m, start: self.start, accepting: self.accepting.clone(), delta }.trim())
    }

    /// Image under an injective letter-to-letter renaming into a larger alphabet:
    /// symbol `s` becomes `map[s]`; symbols outside the image lead to rejection.
    pub fn embed(&self, num_symbols: usize, map: &[usize]) -> Result<Fsa> {
        if map.len() != self.num_symbols {
            return Err(Error::AlphabetMismatch { expected: self.num_symbols, found: map.len() });
        }
        let sink = self.num_states() as State;
        let mut delta = vec![sink; (self.num_states() + 1) * num_symbols];
        for q in 0..self.num_states() {
            for (s, &t) in map.iter().enumerate() {
                if t >= num_symbols {
                    return Err(Error::AlphabetMismatch { expected: num_symbols, found: t + 1 });
                }
                delta[q * num_symbols + t] = self.next(q as State, s);
            }
        }
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Ok(Fsa { num_symbols, start: self.start, accepting, delta }.minimize())
    }

    /// `L/w = {x | xw ∈ L}`: keep the automaton, retarget acceptance.
    pub fn quotient(&self, w: &[usize]) -> Fsa {
        let accepting = (0..self.num_states() as State).map(|q| self.is_accepting(self.run_from(q, w))).collect();
        Fsa { num_symbols: self.num_symbols, start: self.start, accepting, delta: self.delta.clone() }.minimize()
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(q) = stack.pop() {
            for s in 0..self.num_symbols {
                let r = self.next(q, s);
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<State>> = vec![Vec::new(); n];
        for q in 0..n {
            for s in 0..self.num_symbols {
                rev[self.next(q as State, s) as usize].push(q as State);
            }
        }
        let mut live: Vec<bool> = self.accepting.clone();
        let mut stack: Vec<State> = (0..n as State).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Drop unreachable states.
    fn trim(self) -> Fsa {
        let seen = self.reachable();
        if seen.iter().all(|&b| b) {
            return self;
        }
        let mut renum = vec![State::MAX; self.num_states()];
        let mut next_id = 0;
        for (q, &keep) in seen.iter().enumerate() {
            if keep {
                renum[q] = next_id;
                next_id += 1;
            }
        }
        let mut delta = Vec::with_capacity(next_id as usize * self.num_symbols);
        let mut accepting = Vec::with_capacity(next_id as usize);
        for (q, &keep) in seen.iter().enumerate() {
            if keep {
                accepting.push(self.accepting[q]);
                for s in 0..self.num_symbols {
                    delta.push(renum[self.next(q as State, s) as usize]);
                }
            }
        }
        Fsa { num_symbols: self.num_symbols, start: renum[self.start as usize], accepting, delta }
    }

    /// Minimal equivalent acceptor (reachable part, Hopcroft partition refinement).
    pub fn minimize(&self) -> Fsa {
        let f = self.clone().trim();
        let k = f.num_symbols;
        let (class, num_classes) = hopcroft(&f);
        // renumber classes in BFS order from the start for a canonical layout
        let mut renum = vec![State::MAX; num_classes];
        let mut rep = Vec::with_capacity(num_classes);
        let mut queue = VecDeque::new();
        renum[class[f.start as usize] as usize] = 0;
        rep.push(f.start as usize);
        queue.push_back(f.start as usize);
        while let Some(q) = queue.pop_front() {
            for s in 0..k {
                let r = f.delta[q * k + s] as usize;
                let c = class[r] as usize;
                if renum[c] == State::MAX {
                    renum[c] = rep.len() as State;
                    rep.push(r);
                    queue.push_back(r);
                }
            }
        }
        let mut delta = Vec::with_capacity(rep.len() * k);
        let mut accepting = Vec::with_capacity(rep.len());
        for &q in &rep {
            accepting.push(f.accepting[q]);
            for s in 0..k {
                delta.push(renum[class[f.delta[q * k + s] as usize] as usize]);
            }
        }
        Fsa { num_symbols: k, start: 0, accepting, delta }
    }

    pub fn is_empty(&self) -> bool {
        let seen = self.reachable();
        !seen.iter().zip(&self.accepting).any(|(&r, &a)| r && a)
    }

    /// Shortest word (shortlex-least) accepted, if any.
    pub fn shortest_word(&self) -> Option<Vec<usize>> {
        let n = self.num_states();
        let mut parent: Vec<Option<(State, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[self.start as usize] = true;
        queue.push_back(self.start);
        while let Some(q) = queue.pop_front() {
            if self.is_accepting(q) {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur as usize] {
                    w.push(s);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            for s in 0..self.num_symbols {
                let r = self.next(q, s);
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    parent[r as usize] = Some((q, s));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// A shortest word in the symmetric difference, or `None` when the languages agree.
    pub fn distinguishing_word(&self, other: &Fsa) -> Result<Option<Vec<usize>>> {
        self.check_same(other)?;
        Ok(Fsa::product_many(&[self, other], |f| f[0] != f[1]).shortest_word())
    }

    /// Language equality.
    pub fn equivalent(&self, other: &Fsa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// Language inclusion `L(self) ⊆ L(other)`.
    pub fn is_subset_of(&self, other: &Fsa) -> Result<bool> {
        self.check_same(other)?;
        Ok(Fsa::product_many(&[self, other], |f| f[0] && !f[1]).is_empty())
    }

    /// Every prefix of an accepted word is accepted.
    pub fn is_prefix_closed(&self) -> bool {
        let seen = self.reachable();
        let live = self.live_states();
        (0..self.num_states()).all(|q| !seen[q] || self.accepting[q] || !live[q])
    }

    /// Accepted words of length at most `max_len`, in shortlex order.
    pub fn enumerate(&self, max_len: usize) -> Vec<Vec<usize>> {
        // can_finish[r][q]: some word of length exactly r leads from q to acceptance
        let n = self.num_states();
        let mut can_finish = vec![self.accepting.clone()];
        for r in 1..=max_len {
            let prev = &can_finish[r - 1];
            let row = (0..n).map(|q| (0..self.num_symbols).any(|s| prev[self.next(q as State, s) as usize])).collect();
            can_finish.push(row);
        }
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for len in 0..=max_len {
            self.enumerate_exact(self.start, len, &can_finish, &mut buf, &mut out);
        }
        out
    }

    fn enumerate_exact(
        &self,
        q: State,
        remaining: usize,
        can_finish: &[Vec<bool>],
        buf: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !can_finish[remaining][q as usize] {
            return;
        }
        if remaining == 0 {
            out.push(buf.clone());
            return;
        }
        for s in 0..self.num_symbols {
            buf.push(s);
            self.enumerate_exact(self.next(q, s), remaining - 1, can_finish, buf, out);
            buf.pop();
        }
    }

    /// Transitions not leading into dead states, for compact export.
    pub fn live_transitions(&self) -> (Vec<bool>, Vec<(State, usize, State)>) {
        let live = self.live_states();
        let mut out = Vec::new();
        for q in 0..self.num_states() {
            if !live[q] {
                continue;
            }
            for s in 0..self.num_symbols {
                let r = self.next(q as State, s);
                if live[r as usize] {
                    out.push((q as State, s, r));
                }
            }
        }
        (live, out)
    }
}

/// Coarsest partition of the states of a complete, reachable acceptor that
/// respects acceptance and transitions. Returns the class of each state and
/// the number of classes.
fn hopcroft(f: &Fsa) -> (Vec<u32>, usize) {
    let n = f.num_states();
    let k = f.num_symbols;
    // predecessors grouped by (symbol, target)
    let mut heads = vec![0u32; k * n + 1];
    for q in 0..n {
        for s in 0..k {
            heads[s * n + f.delta[q * k + s] as usize + 1] += 1;
        }
    }
    for i in 1..heads.len() {
        heads[i] += heads[i - 1];
    }
    let mut fill = heads.clone();
    let mut preds = vec![0u32; k * n];
    for q in 0..n {
        for s in 0..k {
            let slot = &mut fill[s * n + f.delta[q * k + s] as usize];
            preds[*slot as usize] = q as u32;
            *slot += 1;
        }
    }

    let mut elems: Vec<u32> = Vec::with_capacity(n);
    elems.extend((0..n as u32).filter(|&q| f.accepting[q as usize]));
    let split_at = elems.len();
    elems.extend((0..n as u32).filter(|&q| !f.accepting[q as usize]));
    let mut pos = vec![0u32; n];
    for (i, &q) in elems.iter().enumerate() {
        pos[q as usize] = i as u32;
    }
    let mut block_of = vec![0u32; n];
    let mut bounds: Vec<(u32, u32)> = Vec::new();
    for (lo, hi) in [(0, split_at), (split_at, n)] {
        if lo < hi {
            let id = bounds.len() as u32;
            bounds.push((lo as u32, hi as u32));
            for &q in &elems[lo..hi] {
                block_of[q as usize] = id;
            }
        }
    }
    let mut marked = vec![0u32; bounds.len()];
    let mut work = Vec::new();
    if bounds.len() == 2 {
        work.push(if split_at <= n - split_at { 0 } else { 1 });
    }
    let mut splitter = Vec::new();
    let mut touched = Vec::new();
    while let Some(a) = work.pop() {
        let (lo, hi) = bounds[a as usize];
        splitter.clear();
        splitter.extend_from_slice(&elems[lo as usize..hi as usize]);
        for s in 0..k {
            for &q in &splitter {
                let at = s * n + q as usize;
                for &p in &preds[heads[at] as usize..heads[at + 1] as usize] {
                    let b = block_of[p as usize] as usize;
                    if marked[b] == 0 {
                        touched.push(b);
                    }
                    // move p to the marked front of its block
                    let target = bounds[b].0 + marked[b];
                    let from = pos[p as usize];
                    let other = elems[target as usize];
                    elems.swap(target as usize, from as usize);
                    pos[other as usize] = from;
                    pos[p as usize] = target;
                    marked[b] += 1;
                }
            }
            for b in touched.drain(..) {
                let m = core::mem::take(&mut marked[b]);
                let (lo, hi) = bounds[b];
                if m == hi - lo {
                    continue;
                }
                let (fresh, kept) =
                    if m <= hi - lo - m { ((lo, lo + m), (lo + m, hi)) } else { ((lo + m, hi), (lo, lo + m)) };
                let nb = bounds.len() as u32;
                bounds[b] = kept;
                bounds.push(fresh);
                marked.push(0);
                for &q in &elems[fresh.0 as usize..fresh.1 as usize] {
                    block_of[q as usize] = nb;
                }
                // the fresh block is never the larger half, so it always joins the worklist
                work.push(nb);
            }
        }
    }
    (block_of, bounds.len())
}

/// Interning table for state tuples: a dense array when the tuple space is
/// small, an ordered map otherwise.
pub(crate) struct TupleIndex {
    sizes: Vec<usize>,
    flat: Vec<State>,
    dense: Option<Vec<State>>,
    sparse: BTreeMap<Vec<State>, State>,
}

const DENSE_LIMIT: usize = 1 << 20;

impl TupleIndex {
    pub(crate) fn new(sizes: &[usize]) -> Self {
        assert!(!sizes.is_empty(), "tuples need at least one coordinate");
        let space = sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n)).filter(|&s| s <= DENSE_LIMIT);
        TupleIndex {
            sizes: sizes.to_vec(),
            flat: Vec::new(),
            dense: space.map(|s| vec![State::MAX; s]),
            sparse: BTreeMap::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.flat.len() / self.sizes.len()
    }

    pub(crate) fn tuple(&self, i: usize) -> &[State] {
        let n = self.sizes.len();
        &self.flat[i * n..(i + 1) * n]
    }

    /// Id of `tuple`, adding it if new.
    pub(crate) fn insert(&mut self, tuple: &[State]) -> State {
        let fresh = self.len() as State;
        let id = match &mut self.dense {
            Some(table) => {
                let code = tuple.iter().zip(&self.sizes).fold(0usize, |acc, (&q, &n)| acc * n + q as usize);
                if table[code] == State::MAX {
                    table[code] = fresh;
                }
                table[code]
            }
            None => *self.sparse.entry(tuple.to_vec()).or_insert(fresh),
        };
        if id == fresh {
            self.flat.extend_from_slice(tuple);
        }
        id
    }
}

#[cfg(test)]
mod tests;
