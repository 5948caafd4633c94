use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::stacking::{Oracle, PiecewiseRule, StackingStructure};
use crate::words::{Alphabet, Letter, Word};

/// A finite group given by its multiplication table, `table[g][h] = g·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    /// Checks closure, associativity, an identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput("multiplication table must be square over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidInput("multiplication table has no identity".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| table[g][h] == identity) {
                return Err(Error::InvalidInput(format!("element {g} has no inverse")));
            }
            for h in 0..n {
                for k in 0..n {
                    if table[table[g][h]][k] != table[g][table[h][k]] {
                        return Err(Error::InvalidInput(format!("not associative at ({g}, {h}, {k})")));
                    }
                }
            }
        }
        Ok(GroupTable { table, identity })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == self.identity).expect("checked in new")
    }

    /// The symmetric group on three points; elements are permutations of
    /// `{0, 1, 2}` in lexicographic order, composed left to right.
    pub fn s3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms.iter().map(|p| perms.iter().map(|q| index([q[p[0]], q[p[1]], q[p[2]]])).collect()).collect();
        GroupTable::new(table).expect("S3 is a group")
    }
}

/// A finite group with generators `(name, element)`. Generators of order 2
/// become self-inverse letters. Normal forms are the shortlex-least words,
/// found breadth first; a non-tree edge `(y, x)` flows back to the root
/// along `y` and out again along the normal form of `y·x`.
pub fn finite(name: impl Into<String>, group: GroupTable, generators: &[(&str, usize)]) -> Result<StackingStructure> {
    let spec: Vec<(&str, bool)> = generators.iter().map(|&(g, e)| (g, group.mul(e, e) == group.identity())).collect();
    if generators.iter().any(|&(_, e)| e >= group.order()) {
        return Err(Error::InvalidInput("generator outside the group".into()));
    }
    let alphabet = Alphabet::from_generators_with_involutions(&spec)?;
    let mut value = Vec::with_capacity(alphabet.len());
    for &(_, e) in generators {
        value.push(e);
        if group.mul(e, e) != group.identity() {
            value.push(group.inverse(e));
        }
    }

    let n = group.order();
    let mut nf: Vec<Option<Word>> = vec![None; n];
    nf[group.identity()] = Some(Word::empty());
    let mut queue = VecDeque::from([group.identity()]);
    let mut transitions = Vec::new();
    while let Some(g) = queue.pop_front() {
        for x in alphabet.letters() {
            let h = group.mul(g, value[x.index()]);
            if nf[h].is_none() {
                nf[h] = Some(nf[g].as_ref().unwrap().with(x));
                transitions.push((g, x.index(), h));
                queue.push_back(h);
            }
        }
    }
    if nf.iter().any(Option::is_none) {
        return Err(Error::InvalidInput("generators do not generate the group".into()));
    }
    let nf: Vec<Word> = nf.into_iter().map(Option::unwrap).collect();
    let accepting: Vec<usize> = (0..n).collect();
    let normal_forms = Fsa::from_parts(alphabet.len(), n, group.identity(), &accepting, &transitions)?;

    let mut rules = Vec::new();
    let mut bound = 1;
    for x in alphabet.letters() {
        let mut tree_sources: Vec<&[usize]> = Vec::new();
        let sources: Vec<Vec<usize>> = nf.iter().map(|w| w.iter().map(|l| l.index()).collect()).collect();
        for g in 0..n {
            let y = &nf[g];
            let gx = group.mul(g, value[x.index()]);
            let tree = nf[gx] == y.with(x) || y.last() == Some(&alphabet.inverse(x));
            if tree {
                tree_sources.push(&sources[g]);
            } else {
                let out = alphabet.formal_inverse(y).concat(&nf[gx]);
                bound = bound.max(out.len());
                rules.push(PiecewiseRule::new(Fsa::word(alphabet.len(), &sources[g]), x, out));
            }
        }
        rules.push(PiecewiseRule::new(Fsa::from_words(alphabet.len(), &tree_sources), x, Word::letter(x)));
    }

    let oracle_alphabet: Arc<Vec<usize>> = Arc::new(value);
    let oracle_nf = nf;
    let oracle = Oracle::new("multiplication table", move |w: &Word| {
        let g = w.iter().fold(group.identity(), |g, x: &Letter| group.mul(g, oracle_alphabet[x.index()]));
        oracle_nf[g].clone()
    });
    Ok(StackingStructure::new(name, alphabet, normal_forms, rules, bound)?.with_oracle(oracle))
}

/// `S₃` on a transposition `t` and a 3-cycle `r`.
pub fn s3() -> StackingStructure {
    let group = GroupTable::s3();
    // (0 1) and (0 1 2) in the element order of GroupTable::s3
    let s = finite("s3", group, &[("t", 2), ("r", 3)]).expect("S3 data is valid");
    let rel = |text: &str| s.alphabet().parse(text).expect("relator letters exist");
    let relators = vec![rel("t t"), rel("r r r"), rel("t r t r")];
    s.with_relators(relators)
}
