use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{guards_by_output, join_alphabets, rules_of, ChiCache, PsiCertificate};
use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::stacking::{Oracle, PiecewiseRule, StackingStructure};
use crate::words::{Alphabet, Letter, Word};

/// `u·t` with `u` a normal form of `H` and `t` a transversal letter or ε.
pub type Coset = (Word, Option<Letter>);

/// Input for a group `G` containing `H` with finite index.
///
/// The alphabet of `G` is `C = A ∪ B`, where `A` is `H`'s alphabet and
/// `B = (S ∖ {1})^±`. Letters of `B` and table keys refer to `C`.
#[derive(Clone, Debug)]
pub struct IndexData {
    pub h: StackingStructure,
    alphabet: Alphabet,
    /// `x ∈ B ∖ S ↦ (u_x, t_x)`.
    pub table1: BTreeMap<Letter, Coset>,
    /// `(x, y) ∈ B × C ↦ (u_xy, t_xy)`.
    pub table2: BTreeMap<(Letter, Letter), Coset>,
    pub oracle: Option<Oracle>,
}

impl IndexData {
    /// `transversal` lists `S ∖ {1}`; `true` marks a representative that is its own inverse.
    pub fn new(h: StackingStructure, transversal: &[(&str, bool)]) -> Result<Self> {
        let b = Alphabet::from_generators_with_involutions(transversal)?;
        let (alphabet, _, renamed) = join_alphabets(&[h.alphabet(), &b], &[String::from("h"), String::from("s")])?;
        if !renamed.is_empty() {
            return Err(Error::InvalidAlphabet("transversal names collide with H's letters".into()));
        }
        Ok(IndexData { h, alphabet, table1: BTreeMap::new(), table2: BTreeMap::new(), oracle: None })
    }

    /// Build both tables from products: `product(w)` for `w = x` (`x ∈ B ∖ S`)
    /// or `w = x y` returns an `H`-word (normalized here) and a coset representative.
    pub fn from_products(
        h: StackingStructure,
        transversal: &[(&str, bool)],
        product: impl Fn(&[Letter]) -> (Word, Option<Letter>),
    ) -> Result<Self> {
        let mut data = IndexData::new(h, transversal)?;
        let b_letters: Vec<Letter> = data.b_letters().collect();
        for &x in &b_letters {
            if !data.in_s(x) {
                let (u, t) = product(&[x]);
                data.table1.insert(x, (data.h.normalize(&u)?, t));
            }
            for y in data.alphabet.letters() {
                let (u, t) = product(&[x, y]);
                data.table2.insert((x, y), (data.h.normalize(&u)?, t));
            }
        }
        Ok(data)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn a_len(&self) -> usize {
        self.h.alphabet().len()
    }

    pub fn b_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (self.a_len()..self.alphabet.len()).map(|i| Letter(i as u32))
    }

    /// Transversal letters are the first letter of each generator of `B`.
    pub fn in_s(&self, x: Letter) -> bool {
        x.index() >= self.a_len() && x <= self.alphabet.inverse(x)
    }

    fn parse_coset(&self, u: &str, t: &str) -> Result<Coset> {
        let u = self.h.alphabet().parse(u)?;
        let t = t.trim();
        let t = if t.is_empty() || t == "ε" { None } else { Some(self.alphabet.letter(t)?) };
        Ok((u, t))
    }

    pub fn set_table1(&mut self, x: &str, u: &str, t: &str) -> Result<&mut Self> {
        let key = self.alphabet.letter(x)?;
        let v = self.parse_coset(u, t)?;
        self.table1.insert(key, v);
        Ok(self)
    }

    pub fn set_table2(&mut self, x: &str, y: &str, u: &str, t: &str) -> Result<&mut Self> {
        let key = (self.alphabet.letter(x)?, self.alphabet.letter(y)?);
        let v = self.parse_coset(u, t)?;
        self.table2.insert(key, v);
        Ok(self)
    }

    pub fn with_oracle(mut self, oracle: Oracle) -> Self {
        self.oracle = Some(oracle);
        self
    }

    fn coset_word(&self, (u, t): &Coset) -> Word {
        let mut w = u.clone();
        if let Some(t) = t {
            w.push(*t);
        }
        w
    }

    fn check_coset(&self, what: &str, c: &Coset) -> Result<()> {
        if !self.h.is_normal_form(&c.0) {
            return Err(Error::InvalidStructure(format!("{what}: u is not a normal form of H")));
        }
        if let Some(t) = c.1 {
            if !self.in_s(t) {
                return Err(Error::InvalidStructure(format!(
                    "{what}: {} is not a transversal letter",
                    self.alphabet.name(t)
                )));
            }
        }
        Ok(())
    }

    /// `y_x`: the normal form of a letter of `B`.
    fn y_letter(&self, x: Letter) -> Result<Word> {
        if self.in_s(x) {
            return Ok(Word::letter(x));
        }
        let c = self.table1.get(&x).ok_or_else(|| Error::MissingEntry(format!("table1({})", self.alphabet.name(x))))?;
        Ok(self.coset_word(c))
    }

    fn y_pair(&self, x: Letter, y: Letter) -> Result<Word> {
        let c = self.table2.get(&(x, y)).ok_or_else(|| {
            Error::MissingEntry(format!("table2({}, {})", self.alphabet.name(x), self.alphabet.name(y)))
        })?;
        Ok(self.coset_word(c))
    }
}

#[derive(Clone, Debug)]
pub struct FiniteIndex {
    pub structure: StackingStructure,
    pub data: IndexData,
}

impl FiniteIndex {
    fn a_len(&self) -> usize {
        self.data.a_len()
    }

    fn in_a(&self, y: &[Letter]) -> bool {
        y.iter().all(|x| x.index() < self.a_len())
    }

    /// The stacking map from its case split, independent of the rules.
    pub fn stack_by_cases(&self, y: &Word, c: Letter) -> Result<Word> {
        if !self.in_a(y) {
            let last = *y.last().unwrap();
            let mut out = Word::letter(self.structure.alphabet().inverse(last));
            out = out.concat(&self.data.y_pair(last, c)?);
            return Ok(out);
        }
        if c.index() < self.a_len() {
            return self.data.h.stack(y, c);
        }
        self.data.y_letter(c)
    }
}

/// The supergroup `G ⊇ H` over `C = A ∪ B`, normal forms `N_H ∪ N_H·(S ∖ {1})`.
pub fn finite_index(data: IndexData) -> Result<FiniteIndex> {
    let h = &data.h;
    rules_of(h, "subgroup")?;
    let alphabet = data.alphabet.clone();
    let size = alphabet.len();
    let a_len = h.alphabet().len();
    let a_map: Vec<usize> = (0..a_len).collect();
    let b_letters: Vec<Letter> = data.b_letters().collect();
    let s_letters: Vec<Letter> = b_letters.iter().copied().filter(|&x| data.in_s(x)).collect();

    for &x in &b_letters {
        if !data.in_s(x) {
            let c = data.table1.get(&x).ok_or_else(|| Error::MissingEntry(format!("table1({})", alphabet.name(x))))?;
            data.check_coset(&format!("table1({})", alphabet.name(x)), c)?;
        }
        for y in alphabet.letters() {
            let what = format!("table2({}, {})", alphabet.name(x), alphabet.name(y));
            let c = data.table2.get(&(x, y)).ok_or_else(|| Error::MissingEntry(what.clone()))?;
            data.check_coset(&what, c)?;
        }
    }

    let nh = h.normal_forms().embed(size, &a_map)?;
    let s_syms: Vec<usize> = s_letters.iter().map(|x| x.index()).collect();
    let nf = nh.union(&nh.concat(&Fsa::symbols(size, &s_syms))?)?;

    let mut rules = Vec::new();
    let mut bound = h.bound();
    for a in h.alphabet().letters() {
        for (z, guard) in guards_by_output(h, a)? {
            rules.push(PiecewiseRule::new(guard.embed(size, &a_map)?, a, z));
        }
    }
    for &c in &b_letters {
        let out = data.y_letter(c)?;
        bound = bound.max(out.len());
        rules.push(PiecewiseRule::new(nh.clone(), c, out));
    }
    for &s in &s_letters {
        let guard = nh.concat(&Fsa::word(size, &[s.index()]))?;
        for c in alphabet.letters() {
            let out = Word::letter(alphabet.inverse(s)).concat(&data.y_pair(s, c)?);
            bound = bound.max(out.len());
            rules.push(PiecewiseRule::new(guard.clone(), c, out));
        }
    }

    let mut relators: Vec<Word> = h.relators().to_vec();
    for &x in &b_letters {
        if !data.in_s(x) {
            relators.push(Word::letter(x).concat(&alphabet.formal_inverse(&data.y_letter(x)?)));
        }
        for y in alphabet.letters() {
            relators.push(Word(vec![x, y]).concat(&alphabet.formal_inverse(&data.y_pair(x, y)?)));
        }
    }

    let name = format!("finite_index({})", h.name());
    let mut structure = StackingStructure::new(name, alphabet, nf, rules, bound)?.with_relators(relators);
    if let Some(o) = &data.oracle {
        structure = structure.with_oracle(o.clone());
    }
    Ok(FiniteIndex { structure, data })
}

impl PsiCertificate for FiniteIndex {
    fn structure(&self) -> &StackingStructure {
        &self.structure
    }

    fn dimension(&self) -> usize {
        2
    }

    fn new_cache(&self, radius: usize) -> ChiCache {
        ChiCache::new(1, 4 * (radius + self.structure.bound()))
    }

    fn psi(&self, y: &Word, c: Letter, cache: &mut ChiCache) -> Option<Vec<u32>> {
        if !self.in_a(y) {
            return Some(vec![1, 1]);
        }
        if c.index() >= self.a_len() {
            return Some(vec![1, 0]);
        }
        let chi = cache.part(0).chain_length(&self.data.h, y, c)?;
        Some(vec![0, chi])
    }
}
