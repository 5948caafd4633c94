//! Alphabets with formal inverses and words over them.
//!
//! Words print as whitespace-separated letter names. Generators created
//! through [`Alphabet::from_generators`] name their inverses with a `^-1`
//! suffix, so `a b^-1` is the word `a b⁻¹`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// Position of a letter in its alphabet's declared order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(pub u32);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Suffix used for the names of formal inverses.
pub const INVERSE_SUFFIX: &str = "^-1";

/// A finite ordered set of letters with an involution `x -> x⁻¹`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    names: Vec<String>,
    inverse: Vec<Letter>,
}

impl Alphabet {
    /// Build from explicit names and, for each letter, the index of its inverse.
    pub fn new(names: Vec<String>, inverse: Vec<usize>) -> Result<Self> {
        if names.len() != inverse.len() {
            return Err(Error::InvalidAlphabet("names and inverses differ in length".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name == "$" || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(alloc::format!("bad letter name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(alloc::format!("duplicate letter `{name}`")));
            }
            let j = inverse[i];
            if j >= names.len() || inverse[j] != i {
                return Err(Error::InvalidAlphabet(alloc::format!("inverse of `{name}` is not an involution")));
            }
        }
        Ok(Alphabet { names, inverse: inverse.into_iter().map(|j| Letter(j as u32)).collect() })
    }

    /// Letters `x, x^-1` for every generator `x`, in the given order.
    pub fn from_generators<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        let mut names = Vec::with_capacity(2 * generators.len());
        let mut inverse = Vec::with_capacity(2 * generators.len());
        for (i, g) in generators.iter().enumerate() {
            names.push(g.as_ref().to_string());
            names.push(alloc::format!("{}{}", g.as_ref(), INVERSE_SUFFIX));
            inverse.push(2 * i + 1);
            inverse.push(2 * i);
        }
        Alphabet::new(names, inverse)
    }

    /// Generators where `true` marks a self-inverse letter (an involution of the group).
    pub fn from_generators_with_involutions<S: AsRef<str>>(generators: &[(S, bool)]) -> Result<Self> {
        let mut names = Vec::new();
        let mut inverse = Vec::new();
        for (g, self_inverse) in generators {
            let i = names.len();
            names.push(g.as_ref().to_string());
            if *self_inverse {
                inverse.push(i);
            } else {
                names.push(alloc::format!("{}{}", g.as_ref(), INVERSE_SUFFIX));
                inverse.push(i + 1);
                inverse.push(i);
            }
        }
        Alphabet::new(names, inverse)
    }

    pub fn empty() -> Self {
        Alphabet { names: Vec::new(), inverse: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len() as u32).map(Letter)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Letter) -> &str {
        &self.names[x.index()]
    }

    pub fn inverse(&self, x: Letter) -> Letter {
        self.inverse[x.index()]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u32))
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn contains(&self, x: Letter) -> bool {
        x.index() < self.names.len()
    }

    /// Letterwise-inverted reversal of `w`.
    pub fn formal_inverse(&self, w: &Word) -> Word {
        w.iter().rev().map(|&x| self.inverse(x)).collect()
    }

    /// Cancel adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &x in w.iter() {
            match out.last() {
                Some(&y) if self.inverse(y) == x => {
                    out.pop();
                }
                _ => out.push(x),
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self, w: &[Letter]) -> bool {
        w.windows(2).all(|p| self.inverse(p[0]) != p[1])
    }

    /// Parse whitespace-separated letter names. The empty string is ε.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "ε" {
            return Ok(Word::empty());
        }
        text.split_whitespace().map(|t| self.letter(t)).collect()
    }

    /// Inverse of [`Alphabet::parse`]; ε formats as the empty string.
    pub fn format(&self, w: &[Letter]) -> String {
        let mut s = String::new();
        for (i, &x) in w.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(self.name(x));
        }
        s
    }

    /// Like [`Alphabet::format`] but renders ε visibly, for diagnostics.
    pub fn display(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else {
            self.format(w)
        }
    }
}

/// A finite sequence of letters. Ordered shortlex: by length, then by letter index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letter(x: Letter) -> Self {
        Word(alloc::vec![x])
    }

    pub fn push(&mut self, x: Letter) {
        self.0.push(x)
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn with(&self, x: Letter) -> Word {
        let mut w = self.clone();
        w.push(x);
        w
    }

    /// All but the last letter (ε stays ε).
    pub fn without_last(&self) -> Word {
        let mut w = self.clone();
        w.pop();
        w
    }

    pub fn into_inner(self) -> Vec<Letter> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(|x| x.0)).finish()
    }
}

/// Last letter of `w`, or `None` for ε.
pub fn last_letter(w: &[Letter]) -> Option<Letter> {
    w.last().copied()
}

/// Longest suffix of `w` whose letters all lie in `z`.
pub fn max_suffix<'w>(w: &'w [Letter], z: &[Letter]) -> &'w [Letter] {
    max_suffix_by(w, |x| z.contains(&x))
}

pub fn max_suffix_by(w: &[Letter], mut in_z: impl FnMut(Letter) -> bool) -> &[Letter] {
    let start = w.iter().rposition(|&x| !in_z(x)).map_or(0, |p| p + 1);
    &w[start..]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn abcd() -> Alphabet {
        Alphabet::from_generators(&["a", "b", "c", "d"]).unwrap()
    }

    #[test]
    fn formal_inverse_examples() {
        let al = abcd();
        assert_eq!(al.formal_inverse(&Word::empty()), Word::empty());
        let ab = al.parse("a b").unwrap();
        assert_eq!(al.format(&al.formal_inverse(&ab)), "b^-1 a^-1");
        let w = al.parse("a c^-1 d").unwrap();
        assert_eq!(al.formal_inverse(&al.formal_inverse(&w)), w);
    }

    #[test]
    fn last_letter_examples() {
        let al = Alphabet::from_generators(&["a", "b", "s"]).unwrap();
        assert_eq!(last_letter(&al.parse("a b").unwrap()), Some(al.letter("b").unwrap()));
        assert_eq!(last_letter(&Word::empty()), None);
        assert_eq!(last_letter(&al.parse("s a^-1").unwrap()), Some(al.letter("a^-1").unwrap()));
    }

    #[test]
    fn max_suffix_examples() {
        let al = abcd();
        let z: Vec<Letter> = ["c", "d", "c^-1", "d^-1"].iter().map(|n| al.letter(n).unwrap()).collect();
        let w = al.parse("a b d c").unwrap();
        assert_eq!(al.format(max_suffix(&w, &z)), "d c");
        assert!(max_suffix(&al.parse("c a").unwrap(), &z).is_empty());
        assert!(max_suffix(&[], &z).is_empty());
    }

    #[test]
    fn free_reduce_examples() {
        let al = abcd();
        let r = |s: &str| al.format(&al.free_reduce(&al.parse(s).unwrap()));
        assert_eq!(r("a a^-1"), "");
        assert_eq!(r("a b b^-1 a"), "a a");
        assert_eq!(r("b a^-1 a b^-1 c"), "c");
    }

    #[test]
    fn alphabet_rejects_bad_involution() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(Alphabet::new(names.clone(), vec![1, 1]).is_err());
        assert!(Alphabet::new(names.clone(), vec![0, 1]).is_ok());
        assert!(Alphabet::new(vec!["a".into(), "a".into()], vec![1, 0]).is_err());
        assert!(Alphabet::new(vec!["$".into()], vec![0]).is_err());
    }

    #[test]
    fn self_inverse_letters() {
        let al = Alphabet::from_generators_with_involutions(&[("t", true), ("r", false)]).unwrap();
        assert_eq!(al.len(), 3);
        let t = al.letter("t").unwrap();
        assert_eq!(al.inverse(t), t);
        assert_eq!(al.free_reduce(&al.parse("t t r").unwrap()), al.parse("r").unwrap());
    }

    #[test]
    fn parse_format_round_trip_and_errors() {
        let al = abcd();
        assert_eq!(al.parse("").unwrap(), Word::empty());
        assert_eq!(al.parse("ε").unwrap(), Word::empty());
        assert_eq!(al.format(&al.parse("  a   d^-1 ").unwrap()), "a d^-1");
        assert_eq!(al.parse("a e"), Err(Error::UnknownLetter("e".into())));
    }

    #[test]
    fn shortlex_order() {
        let al = abcd();
        let mut v = [al.parse("b").unwrap(), al.parse("a a").unwrap(), Word::empty(), al.parse("a").unwrap()];
        v.sort();
        let shown: Vec<String> = v.iter().map(|w| al.format(w)).collect();
        assert_eq!(shown, ["", "a", "b", "a a"]);
    }
}
