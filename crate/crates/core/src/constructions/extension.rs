use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{guards_by_output, join_alphabets, rules_of, shift, ChiCache, PsiCertificate};
use crate::error::{Error, Result};
use crate::stacking::{Oracle, PiecewiseRule, StackingStructure};
use crate::words::{Alphabet, Letter, Word};

/// Input for the extension `1 → K → G → Q → 1`.
///
/// Tables are keyed by letters of `Q`'s alphabet `B`; `b` stands for the
/// lifted letter `b̂`. Entries are words over `K`'s alphabet `A`.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub k: StackingStructure,
    pub q: StackingStructure,
    /// Names for the lifted letters, in the order of `B`; defaults to `B`'s names.
    pub hat_names: Option<Vec<String>>,
    /// `(b, a) ↦` normal form in `K` of `b̂ a b̂⁻¹`.
    pub conj: BTreeMap<(Letter, Letter), Word>,
    /// `(b, z) ↦` normal form in `K` of `b̂ ẑ⁻¹`, for `z` an output of `Q`'s rules for `b`.
    /// Missing entries with `z = b` default to ε.
    pub corr: BTreeMap<(Letter, Word), Word>,
    /// For each relator `s` of `Q`, the normal form in `K` of `ŝ`.
    pub relator_values: Vec<Word>,
    pub oracle: Option<Oracle>,
}

impl ExtensionData {
    pub fn new(k: StackingStructure, q: StackingStructure) -> Self {
        ExtensionData {
            k,
            q,
            hat_names: None,
            conj: BTreeMap::new(),
            corr: BTreeMap::new(),
            relator_values: Vec::new(),
            oracle: None,
        }
    }

    /// Set `b̂ a b̂⁻¹ = u` using letter names.
    pub fn set_conj(&mut self, b: &str, a: &str, u: &str) -> Result<&mut Self> {
        let key = (self.q.alphabet().letter(b)?, self.k.alphabet().letter(a)?);
        self.conj.insert(key, self.k.alphabet().parse(u)?);
        Ok(self)
    }

    /// Set `b̂ ẑ⁻¹ = u` using letter names.
    pub fn set_corr(&mut self, b: &str, z: &str, u: &str) -> Result<&mut Self> {
        let key = (self.q.alphabet().letter(b)?, self.q.alphabet().parse(z)?);
        self.corr.insert(key, self.k.alphabet().parse(u)?);
        Ok(self)
    }

    pub fn with_hat_names(mut self, names: Vec<String>) -> Self {
        self.hat_names = Some(names);
        self
    }

    pub fn with_relator_values(mut self, values: Vec<Word>) -> Self {
        self.relator_values = values;
        self
    }

    pub fn with_oracle(mut self, oracle: Oracle) -> Self {
        self.oracle = Some(oracle);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub structure: StackingStructure,
    pub k: StackingStructure,
    pub q: StackingStructure,
    /// Offset of the lifted letters `B̂` in the alphabet `C = A ∪ B̂`.
    pub hat_offset: usize,
    pub renamed: Vec<(String, String)>,
    pub conj: BTreeMap<(Letter, Letter), Word>,
    pub corr: BTreeMap<(Letter, Word), Word>,
    /// `M`, the longest conjugation entry.
    pub conj_max: usize,
    /// `m`, the longest correction entry.
    pub corr_max: usize,
}

impl Extension {
    pub fn hat(&self, w: &[Letter]) -> Word {
        shift(w, self.hat_offset)
    }

    /// `w̄` for a word over `B̂`.
    pub fn bar(&self, w: &[Letter]) -> Word {
        w.iter().map(|x| Letter(x.0 - self.hat_offset as u32)).collect()
    }

    pub fn is_lifted(&self, x: Letter) -> bool {
        x.index() >= self.hat_offset
    }

    /// Split a normal form `y = u t` with `u` over `A` and `t` over `B̂`.
    pub fn split<'y>(&self, y: &'y [Letter]) -> (&'y [Letter], &'y [Letter]) {
        let p = y.iter().position(|&x| self.is_lifted(x)).unwrap_or(y.len());
        y.split_at(p)
    }

    /// The stacking map from its case split, independent of the rules.
    pub fn stack_by_cases(&self, y: &Word, c: Letter) -> Result<Word> {
        let (u, t) = self.split(y);
        if !self.is_lifted(c) {
            if t.is_empty() {
                return self.k.stack(&Word::from_letters(u), c);
            }
            let last = *t.last().unwrap();
            let b = Letter(last.0 - self.hat_offset as u32);
            let conj = self.conj.get(&(b, c)).ok_or_else(|| missing_conj(&self.q, &self.k, b, c))?;
            let mut out = vec![self.structure.alphabet().inverse(last)];
            out.extend(conj.iter().copied());
            out.push(last);
            return Ok(Word(out));
        }
        let b = Letter(c.0 - self.hat_offset as u32);
        let z = self.q.stack(&self.bar(t), b)?;
        let corr = corr_entry(&self.corr, b, &z).ok_or_else(|| missing_corr(&self.q, b, &z))?;
        Ok(corr.concat(&self.hat(&z)))
    }
}

fn corr_entry<'m>(corr: &'m BTreeMap<(Letter, Word), Word>, b: Letter, z: &Word) -> Option<&'m Word> {
    const EMPTY: &Word = &Word::empty();
    match corr.get(&(b, z.clone())) {
        Some(u) => Some(u),
        None if z.len() == 1 && z[0] == b => Some(EMPTY),
        None => None,
    }
}

fn missing_conj(q: &StackingStructure, k: &StackingStructure, b: Letter, a: Letter) -> Error {
    Error::MissingEntry(format!("conj({}, {})", q.alphabet().name(b), k.alphabet().name(a)))
}

fn missing_corr(q: &StackingStructure, b: Letter, z: &Word) -> Error {
    Error::MissingEntry(format!("corr({}, {})", q.alphabet().name(b), q.alphabet().display(z)))
}

/// The extension of `K` by `Q` over `C = A ∪ B̂`, normal forms `N_K · N̂_Q`.
pub fn extension(data: ExtensionData) -> Result<Extension> {
    let ExtensionData { k, q, hat_names, conj, corr, relator_values, oracle } = data;
    rules_of(&k, "kernel")?;
    rules_of(&q, "quotient")?;
    let a_len = k.alphabet().len();
    let b_len = q.alphabet().len();

    let lifted = match hat_names {
        None => q.alphabet().clone(),
        Some(names) => {
            let inverse = q.alphabet().letters().map(|x| q.alphabet().inverse(x).index()).collect();
            Alphabet::new(names, inverse)?
        }
    };
    let (alphabet, offsets, renamed) =
        join_alphabets(&[k.alphabet(), &lifted], &[String::from("k"), String::from("hat")])?;
    let hat_offset = offsets[1];
    let size = alphabet.len();
    let a_map: Vec<usize> = (0..a_len).collect();
    let b_map: Vec<usize> = (0..b_len).map(|i| i + hat_offset).collect();

    // validate tables
    for b in q.alphabet().letters() {
        for a in k.alphabet().letters() {
            let u = conj.get(&(b, a)).ok_or_else(|| missing_conj(&q, &k, b, a))?;
            if !k.is_normal_form(u) {
                return Err(Error::InvalidStructure(format!(
                    "conj({}, {}) = {} is not a normal form of K",
                    q.alphabet().name(b),
                    k.alphabet().name(a),
                    k.alphabet().display(u)
                )));
            }
        }
    }
    let mut corr_full = BTreeMap::new();
    for b in q.alphabet().letters() {
        for (z, _) in guards_by_output(&q, b)? {
            let u = corr_entry(&corr, b, &z).ok_or_else(|| missing_corr(&q, b, &z))?.clone();
            if !k.is_normal_form(&u) {
                return Err(Error::InvalidStructure(format!(
                    "corr({}, {}) is not a normal form of K",
                    q.alphabet().name(b),
                    q.alphabet().display(&z)
                )));
            }
            if z.len() == 1 && z[0] == b && !u.is_empty() {
                return Err(Error::InvalidStructure(format!("corr({0}, {0}) must be empty", q.alphabet().name(b))));
            }
            corr_full.insert((b, z), u);
        }
    }
    if relator_values.len() != q.relators().len() {
        return Err(Error::MissingEntry(format!(
            "values in K for the {} relators of Q ({} given)",
            q.relators().len(),
            relator_values.len()
        )));
    }

    let nk = k.normal_forms().embed(size, &a_map)?;
    let nq = q.normal_forms().embed(size, &b_map)?;
    let nf = nk.concat(&nq)?;

    let conj_max = conj.values().map(|u| u.len()).max().unwrap_or(0);
    let corr_max = corr_full.values().map(|u| u.len()).max().unwrap_or(0);
    let bound = k.bound().max(2 + conj_max).max(q.bound() + corr_max);
    let mut rules = Vec::new();
    for a in k.alphabet().letters() {
        for (z, guard) in guards_by_output(&k, a)? {
            rules.push(PiecewiseRule::new(guard.embed(size, &a_map)?, a, z));
        }
        for b in q.alphabet().letters() {
            let bh = Letter((b.index() + hat_offset) as u32);
            let guard = nf.intersect(&super::ending_in(size, &[bh.index()]))?;
            let mut out = vec![alphabet.inverse(bh)];
            out.extend(conj[&(b, a)].iter().copied());
            out.push(bh);
            rules.push(PiecewiseRule::new(guard, a, Word(out)));
        }
    }
    for b in q.alphabet().letters() {
        let bh = Letter((b.index() + hat_offset) as u32);
        for (z, guard) in guards_by_output(&q, b)? {
            let guard = nk.concat(&guard.embed(size, &b_map)?)?;
            let out = corr_full[&(b, z.clone())].concat(&shift(&z, hat_offset));
            rules.push(PiecewiseRule::new(guard, bh, out));
        }
    }

    let mut relators: Vec<Word> = k.relators().to_vec();
    for (s, u) in q.relators().iter().zip(&relator_values) {
        relators.push(shift(s, hat_offset).concat(&k.alphabet().formal_inverse(u)));
    }
    let mut seen = BTreeSet::new();
    for b in q.alphabet().letters() {
        let bh = Letter((b.index() + hat_offset) as u32);
        for a in k.alphabet().letters() {
            let w = Word(vec![bh, a, alphabet.inverse(bh)]).concat(&k.alphabet().formal_inverse(&conj[&(b, a)]));
            if seen.insert(w.clone()) {
                relators.push(w);
            }
        }
    }

    let name = format!("extension({}, {})", k.name(), q.name());
    let mut structure = StackingStructure::new(name, alphabet, nf, rules, bound)?.with_relators(relators);
    if let Some(o) = oracle {
        structure = structure.with_oracle(o);
    }
    Ok(Extension { structure, k, q, hat_offset, renamed, conj, corr: corr_full, conj_max, corr_max })
}

impl PsiCertificate for Extension {
    fn structure(&self) -> &StackingStructure {
        &self.structure
    }

    fn dimension(&self) -> usize {
        2
    }

    fn new_cache(&self, radius: usize) -> ChiCache {
        ChiCache::new(2, 4 * (radius + self.structure.bound()))
    }

    fn psi(&self, y: &Word, c: Letter, cache: &mut ChiCache) -> Option<Vec<u32>> {
        let (u, t) = self.split(y);
        if !self.is_lifted(c) {
            if t.is_empty() {
                let chi = cache.part(0).chain_length(&self.k, &Word::from_letters(u), c)?;
                return Some(vec![1, chi]);
            }
            return Some(vec![2, t.len() as u32]);
        }
        let b = Letter(c.0 - self.hat_offset as u32);
        let chi = cache.part(1).chain_length(&self.q, &self.bar(t), b)?;
        Some(vec![3, chi])
    }
}
