//! Stacking structures: normal forms plus a bounded flow on the Cayley graph.
//!
//! The normal forms `N` form a prefix-closed regular language, so they label
//! the geodesics of a maximal tree `T` rooted at the identity. An edge
//! `(y, a)` (source normal form `y`, label `a`) lies in `T` exactly when
//! `y·a ∈ N` or `y` ends in `a⁻¹`. Every other edge is replaced by the path
//! labelled `stack(y, a)`; iterating these replacements reaches the tree,
//! which is what [`StackingStructure::normalize_step`] does.

mod chain;
mod verify;

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::fsa::{Fsa, PaddedAlphabet, State, SyncAcceptor};
use crate::words::{Alphabet, Letter, Word};

pub use chain::ChainLengths;
pub use verify::{Check, CheckResult, VerifyReport};

/// `guard × {letter} × {output}`: the stacking map is constant on the guard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseRule {
    pub guard: Fsa,
    pub letter: Letter,
    pub output: Word,
}

impl PiecewiseRule {
    pub fn new(guard: Fsa, letter: Letter, output: Word) -> Self {
        PiecewiseRule { guard, letter, output }
    }
}

/// A stacking map given only as a function; returns `None` off its domain.
pub type StackFn = Arc<dyn Fn(&Word, Letter) -> Option<Word> + Send + Sync>;

/// An independent word-to-normal-form procedure used to cross-check a structure.
#[derive(Clone)]
pub struct Oracle {
    pub name: String,
    pub normalize: Arc<dyn Fn(&Word) -> Word + Send + Sync>,
}

impl Oracle {
    pub fn new(name: impl Into<String>, f: impl Fn(&Word) -> Word + Send + Sync + 'static) -> Self {
        Oracle { name: name.into(), normalize: Arc::new(f) }
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oracle({})", self.name)
    }
}

#[derive(Clone)]
pub enum StackMap {
    Rules(Vec<PiecewiseRule>),
    Opaque(StackFn),
}

impl fmt::Debug for StackMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackMap::Rules(r) => write!(f, "Rules({} rules)", r.len()),
            StackMap::Opaque(_) => f.write_str("Opaque"),
        }
    }
}

/// A directed Cayley-graph edge, named by its source normal form and label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEdge {
    pub source: Word,
    pub letter: Letter,
}

impl DirectedEdge {
    pub fn new(source: Word, letter: Letter) -> Self {
        DirectedEdge { source, letter }
    }
}

/// Radius used to size the default recursion budget.
pub const DEFAULT_BUDGET_RADIUS: u32 = 3;

/// `10 · k^(r+2)`, saturating.
pub fn default_budget(bound: usize, radius: u32) -> usize {
    bound.max(1).saturating_pow(radius + 2).saturating_mul(10)
}

#[derive(Clone, Debug)]
pub struct StackingStructure {
    name: String,
    alphabet: Alphabet,
    normal_forms: Fsa,
    stack: StackMap,
    by_letter: Vec<Vec<usize>>,
    bound: usize,
    relators: Vec<Word>,
    oracle: Option<Oracle>,
    budget: Option<usize>,
}

impl StackingStructure {
    /// A structure whose stacking map is a finite union of piecewise rules.
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        normal_forms: Fsa,
        rules: Vec<PiecewiseRule>,
        bound: usize,
    ) -> Result<Self> {
        let mut s = Self::build(name.into(), alphabet, normal_forms, StackMap::Rules(Vec::new()), bound)?;
        for r in &rules {
            if !s.alphabet.contains(r.letter) {
                return Err(Error::InvalidStructure("rule letter outside the alphabet".into()));
            }
            if r.guard.num_symbols() != s.alphabet.len() {
                return Err(Error::AlphabetMismatch { expected: s.alphabet.len(), found: r.guard.num_symbols() });
            }
            if r.output.iter().any(|&x| !s.alphabet.contains(x)) {
                return Err(Error::InvalidStructure("rule output outside the alphabet".into()));
            }
        }
        let mut by_letter = vec![Vec::new(); s.alphabet.len()];
        for (i, r) in rules.iter().enumerate() {
            by_letter[r.letter.index()].push(i);
        }
        s.by_letter = by_letter;
        s.stack = StackMap::Rules(rules);
        Ok(s)
    }

    /// A structure whose stacking map is only available as a function
    /// (algorithmically stackable, no regular description).
    pub fn opaque(
        name: impl Into<String>,
        alphabet: Alphabet,
        normal_forms: Fsa,
        stack: StackFn,
        bound: usize,
    ) -> Result<Self> {
        Self::build(name.into(), alphabet, normal_forms, StackMap::Opaque(stack), bound)
    }

    fn build(name: String, alphabet: Alphabet, normal_forms: Fsa, stack: StackMap, bound: usize) -> Result<Self> {
        if normal_forms.num_symbols() != alphabet.len() {
            return Err(Error::AlphabetMismatch { expected: alphabet.len(), found: normal_forms.num_symbols() });
        }
        if !normal_forms.accepts(&[]) {
            return Err(Error::InvalidStructure("the empty word must be a normal form".into()));
        }
        Ok(StackingStructure {
            name,
            by_letter: vec![Vec::new(); alphabet.len()],
            alphabet,
            normal_forms,
            stack,
            bound,
            relators: Vec::new(),
            oracle: None,
            budget: None,
        })
    }

    pub fn with_relators(mut self, relators: Vec<Word>) -> Self {
        self.relators = relators;
        self
    }

    pub fn with_oracle(mut self, oracle: Oracle) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replace the rule list, keeping everything else.
    pub fn with_rules(self, rules: Vec<PiecewiseRule>) -> Result<Self> {
        let StackingStructure { name, alphabet, normal_forms, bound, relators, oracle, budget, .. } = self;
        let mut s = StackingStructure::new(name, alphabet, normal_forms, rules, bound)?;
        s.relators = relators;
        s.oracle = oracle;
        s.budget = budget;
        Ok(s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn normal_forms(&self) -> &Fsa {
        &self.normal_forms
    }

    pub fn stack_map(&self) -> &StackMap {
        &self.stack
    }

    pub fn rules(&self) -> Option<&[PiecewiseRule]> {
        match &self.stack {
            StackMap::Rules(r) => Some(r),
            StackMap::Opaque(_) => None,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn oracle(&self) -> Option<&Oracle> {
        self.oracle.as_ref()
    }

    pub fn budget(&self) -> usize {
        self.budget.unwrap_or_else(|| default_budget(self.bound, DEFAULT_BUDGET_RADIUS))
    }

    pub fn explicit_budget(&self) -> Option<usize> {
        self.budget
    }

    pub fn is_normal_form(&self, y: &[Letter]) -> bool {
        self.normal_forms.accepts_letters(y)
    }

    fn require_normal_form(&self, y: &[Letter]) -> Result<()> {
        if self.is_normal_form(y) {
            Ok(())
        } else {
            Err(Error::NotNormalForm(self.alphabet.display(y)))
        }
    }

    fn require_letter(&self, a: Letter) -> Result<()> {
        if self.alphabet.contains(a) {
            Ok(())
        } else {
            Err(Error::UnknownLetter(alloc::format!("#{}", a.0)))
        }
    }

    /// The edge `(y, a)` lies in the maximal tree.
    pub fn is_tree_edge(&self, y: &Word, a: Letter) -> Result<bool> {
        self.require_normal_form(y)?;
        self.require_letter(a)?;
        Ok(self.tree_edge_unchecked(y, self.state_of(y), a))
    }

    fn state_of(&self, y: &[Letter]) -> State {
        y.iter().fold(self.normal_forms.start(), |q, x| self.normal_forms.next(q, x.index()))
    }

    fn tree_edge_unchecked(&self, y: &[Letter], state: State, a: Letter) -> bool {
        self.normal_forms.is_accepting(self.normal_forms.next(state, a.index()))
            || y.last().is_some_and(|&l| l == self.alphabet.inverse(a))
    }

    fn rule_output(&self, y: &[Letter], a: Letter) -> Result<Word> {
        match &self.stack {
            StackMap::Rules(rules) => {
                let mut found: Option<&Word> = None;
                for &i in &self.by_letter[a.index()] {
                    if rules[i].guard.accepts_letters(y) {
                        if found.is_some() {
                            return Err(Error::Overlap {
                                word: self.alphabet.display(y),
                                letter: self.alphabet.name(a).to_string(),
                            });
                        }
                        found = Some(&rules[i].output);
                    }
                }
                found.cloned().ok_or_else(|| Error::Uncovered {
                    word: self.alphabet.display(y),
                    letter: self.alphabet.name(a).to_string(),
                })
            }
            StackMap::Opaque(f) => f(&Word::from_letters(y), a).ok_or_else(|| Error::Uncovered {
                word: self.alphabet.display(y),
                letter: self.alphabet.name(a).to_string(),
            }),
        }
    }

    /// `φ(y, a)`: the label of the flow path replacing edge `(y, a)`.
    pub fn stack(&self, y: &Word, a: Letter) -> Result<Word> {
        self.require_normal_form(y)?;
        self.require_letter(a)?;
        self.rule_output(y, a)
    }

    /// Normal form of `y·a`, following flow paths until they reach the tree.
    pub fn normalize_step(&self, y: &Word, a: Letter) -> Result<Word> {
        self.require_normal_form(y)?;
        self.require_letter(a)?;
        self.run_letters(y, core::slice::from_ref(&a), self.budget())
    }

    /// Normal form of the element represented by `w`.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        if let Some(&x) = w.iter().find(|&&x| !self.alphabet.contains(x)) {
            self.require_letter(x)?;
        }
        let budget = self.budget();
        let mut cur = Word::empty();
        for &a in w.iter() {
            cur = self.run_letters(&cur, core::slice::from_ref(&a), budget)?;
        }
        Ok(cur)
    }

    /// Normal form of `y·w` for a normal form `y`.
    pub fn normalize_from(&self, y: &Word, w: &[Letter]) -> Result<Word> {
        self.require_normal_form(y)?;
        let budget = self.budget();
        let mut cur = y.clone();
        for &a in w {
            self.require_letter(a)?;
            cur = self.run_letters(&cur, core::slice::from_ref(&a), budget)?;
        }
        Ok(cur)
    }

    /// Feed `letters` through the flow starting at normal form `y`; each
    /// top-level letter gets its own budget of `budget` elementary steps.
    pub(crate) fn run_letters(&self, y: &Word, letters: &[Letter], budget: usize) -> Result<Word> {
        let mut cur: Vec<Letter> = y.to_vec();
        let mut states: Vec<State> = Vec::with_capacity(cur.len() + 1);
        states.push(self.normal_forms.start());
        for &x in &cur {
            let q = *states.last().unwrap();
            states.push(self.normal_forms.next(q, x.index()));
        }
        for &top in letters {
            let mut steps = 0usize;
            // each frame is a pending output word, consumed left to right
            let mut frames: Vec<(Word, usize)> = vec![(Word::letter(top), 0)];
            while let Some((word, pos)) = frames.last_mut() {
                if *pos == word.len() {
                    frames.pop();
                    continue;
                }
                let x = word[*pos];
                *pos += 1;
                steps += 1;
                if steps > budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        word: self.alphabet.display(y),
                        letter: self.alphabet.name(top).to_string(),
                    });
                }
                let q = *states.last().unwrap();
                let qx = self.normal_forms.next(q, x.index());
                if self.normal_forms.is_accepting(qx) {
                    cur.push(x);
                    states.push(qx);
                } else if cur.last().is_some_and(|&l| l == self.alphabet.inverse(x)) {
                    cur.pop();
                    states.pop();
                } else {
                    let out = self.rule_output(&cur, x)?;
                    frames.push((out, 0));
                }
            }
        }
        Ok(Word(cur))
    }

    /// The directed edges traversed by the flow path of `(y, a)`, with their
    /// source normal forms.
    pub fn flow_path(&self, y: &Word, a: Letter) -> Result<Vec<DirectedEdge>> {
        let label = self.stack(y, a)?;
        let budget = self.budget();
        let mut cur = y.clone();
        let mut out = Vec::with_capacity(label.len());
        for &x in label.iter() {
            out.push(DirectedEdge::new(cur.clone(), x));
            cur = self.run_letters(&cur, core::slice::from_ref(&x), budget)?;
        }
        Ok(out)
    }

    /// Normal forms of all elements at word distance at most `r`, in shortlex order.
    pub fn ball(&self, r: usize) -> Result<BTreeSet<Word>> {
        Ok(self.ball_layers(r)?.into_iter().flatten().collect())
    }

    /// `layers[d]` holds the normal forms at distance exactly `d`.
    pub fn ball_layers(&self, r: usize) -> Result<Vec<Vec<Word>>> {
        let budget = self.budget();
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        seen.insert(Word::empty());
        let mut layers = vec![vec![Word::empty()]];
        for _ in 0..r {
            let mut next = BTreeSet::new();
            for y in layers.last().unwrap() {
                for a in self.alphabet.letters() {
                    let z = self.run_letters(y, &[a], budget)?;
                    if !seen.contains(&z) {
                        next.insert(z);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            seen.extend(next.iter().cloned());
            layers.push(next.into_iter().collect());
        }
        Ok(layers)
    }

    /// The padded acceptor of `{(y, a, φ(y, a))}` assembled from the rules.
    pub fn graph_automaton(&self) -> Result<SyncAcceptor> {
        let rules =
            self.rules().ok_or_else(|| Error::Unsupported("graph automaton of an opaque stacking map".into()))?;
        let n = self.alphabet.len();
        let alphabet = PaddedAlphabet::new(n, 3)?;
        let mut parts = Vec::with_capacity(rules.len());
        for r in rules {
            let guard = r.guard.intersect(&self.normal_forms)?;
            let letter = Fsa::word(n, &[r.letter.index()]);
            let out: Vec<usize> = r.output.iter().map(|x| x.index()).collect();
            let output = Fsa::word(n, &out);
            parts.push(SyncAcceptor::product(&[&guard, &letter, &output])?);
        }
        let refs: Vec<&SyncAcceptor> = parts.iter().collect();
        SyncAcceptor::union_all(&refs, alphabet)
    }

    /// Rules `y·a -> y·φ(y, a)` of the bounded prefix-rewriting system, for
    /// the non-tree edges with source in `ball(r)`.
    pub fn to_prefix_rules(&self, r: usize) -> Result<Vec<PrefixRule>> {
        let mut out = Vec::new();
        for y in self.ball(r)? {
            let q = self.state_of(&y);
            for a in self.alphabet.letters() {
                if self.tree_edge_unchecked(&y, q, a) {
                    continue;
                }
                let t = self.rule_output(&y, a)?;
                out.push(PrefixRule { prefix: y.clone(), left: Word::letter(a), right: t });
            }
        }
        Ok(out)
    }

    pub fn verify(&self, r: usize) -> VerifyReport {
        verify::verify(self, r)
    }
}

/// `w·s -> w·t`, the bounded shape of a prefix-rewriting rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixRule {
    pub prefix: Word,
    pub left: Word,
    pub right: Word,
}

impl PrefixRule {
    pub fn lhs(&self) -> Word {
        self.prefix.concat(&self.left)
    }

    pub fn rhs(&self) -> Word {
        self.prefix.concat(&self.right)
    }

    /// `l(s) + l(t)`.
    pub fn width(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Right-hand side after free cancellation, for display.
    pub fn reduced_rhs(&self, alphabet: &Alphabet) -> Word {
        alphabet.free_reduce(&self.rhs())
    }
}

#[cfg(test)]
mod tests;
