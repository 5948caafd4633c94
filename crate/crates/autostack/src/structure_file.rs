//! Structure documents.
//!
//! ```json
//! {"name": "free1", "alphabet": ["a", "a^-1"], "inverses": ["a^-1", "a"],
//!  "normal_forms": {...acceptor...},
//!  "rules": [{"guard": {...acceptor...}, "letter": "a", "output": "a"}],
//!  "bound": 1, "relators": [], "oracle": "builtin:free1"}
//! ```
//!
//! Acceptors may be inline documents or paths to acceptor files, relative to
//! the structure file. Words are space-separated letter names; `""` is ε.

use std::fs;
use std::path::{Path, PathBuf};

use autostack_core::instances::{builtin, BUILTIN_NAMES};
use autostack_core::stacking::{PiecewiseRule, StackingStructure};
use autostack_core::words::{Alphabet, Word};
use serde::{Deserialize, Serialize};

use crate::fsa_file::{letter_symbols, FsaDoc};
use crate::{Error, Result};

pub const BUILTIN_PREFIX: &str = "builtin:";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FsaRef {
    Inline(FsaDoc),
    File(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub guard: FsaRef,
    pub letter: String,
    pub output: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub alphabet: Vec<String>,
    pub inverses: Vec<String>,
    pub normal_forms: FsaRef,
    pub rules: Vec<RuleDoc>,
    pub bound: usize,
    #[serde(default)]
    pub relators: Vec<String>,
    #[serde(default = "no_oracle")]
    pub oracle: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

fn no_oracle() -> String {
    "none".into()
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| Error::Json { path: path.to_path_buf(), source })
}

pub fn write_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Resolve `builtin:<name>` or a path to a structure file.
pub fn load(reference: &str) -> Result<StackingStructure> {
    load_relative(reference, Path::new("."))
}

/// Like [`load`], with relative paths taken from `base`.
pub fn load_relative(reference: &str, base: &Path) -> Result<StackingStructure> {
    if let Some(name) = reference.strip_prefix(BUILTIN_PREFIX) {
        return Ok(builtin(name)?);
    }
    let path = base.join(reference);
    let doc: StructureDoc = read_json(&path)?;
    doc.to_structure(path.parent().unwrap_or(Path::new(".")))
}

/// The catalog name of a structure, if it is (a copy of) a catalog instance.
fn catalog_name(s: &StackingStructure) -> Option<&str> {
    let name = s.name();
    let known = BUILTIN_NAMES.contains(&name) || name.strip_prefix("free").is_some_and(|n| n.parse::<usize>().is_ok());
    (known && s.oracle().is_some()).then_some(name)
}

fn oracle_for(label: &str, alphabet: &Alphabet) -> Result<Option<autostack_core::stacking::Oracle>> {
    if label == "none" {
        return Ok(None);
    }
    let name = label
        .strip_prefix(BUILTIN_PREFIX)
        .ok_or_else(|| Error::format(format!("oracle must be \"none\" or \"builtin:<name>\", found `{label}`")))?;
    let source = builtin(name)?;
    if source.alphabet().names() != alphabet.names() {
        return Err(Error::format(format!("oracle `{label}` is defined over a different alphabet")));
    }
    Ok(source.oracle().cloned())
}

fn resolve(r: &FsaRef, base: &Path) -> Result<FsaDoc> {
    match r {
        FsaRef::Inline(doc) => Ok(doc.clone()),
        FsaRef::File(p) => read_json(&base.join(p)),
    }
}

fn format_word(alphabet: &Alphabet, w: &Word) -> String {
    alphabet.format(w)
}

impl StructureDoc {
    /// Export a rule-based structure.
    pub fn from_structure(s: &StackingStructure) -> Result<Self> {
        let rules = s.rules().ok_or_else(|| {
            Error::format(format!("`{}` has an opaque stacking map and cannot be exported", s.name()))
        })?;
        let a = s.alphabet();
        let symbols = letter_symbols(a);
        let inverses = a.letters().map(|x| a.name(a.inverse(x)).to_string()).collect();
        let rules = rules
            .iter()
            .map(|r| RuleDoc {
                guard: FsaRef::Inline(FsaDoc::from_fsa(&r.guard.minimize(), &symbols)),
                letter: a.name(r.letter).to_string(),
                output: format_word(a, &r.output),
            })
            .collect();
        let oracle = match catalog_name(s) {
            Some(name) => format!("{BUILTIN_PREFIX}{name}"),
            None => no_oracle(),
        };
        Ok(StructureDoc {
            name: Some(s.name().to_string()),
            alphabet: a.names().to_vec(),
            inverses,
            normal_forms: FsaRef::Inline(FsaDoc::from_fsa(s.normal_forms(), &symbols)),
            rules,
            bound: s.bound(),
            relators: s.relators().iter().map(|w| format_word(a, w)).collect(),
            oracle,
            budget: s.explicit_budget(),
        })
    }

    /// Build the structure; acceptor paths are relative to `base`.
    pub fn to_structure(&self, base: &Path) -> Result<StackingStructure> {
        let index_of = |name: &str| {
            self.alphabet
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::format(format!("unknown letter `{name}` in inverses")))
        };
        if self.inverses.len() != self.alphabet.len() {
            return Err(Error::format("`inverses` must list one name per letter"));
        }
        let inverse = self.inverses.iter().map(|n| index_of(n)).collect::<Result<Vec<_>>>()?;
        let alphabet = Alphabet::new(self.alphabet.clone(), inverse)?;
        let symbols = letter_symbols(&alphabet);
        let normal_forms = resolve(&self.normal_forms, base)?.to_fsa(&symbols)?;
        let mut rules = Vec::with_capacity(self.rules.len());
        for r in &self.rules {
            let guard = resolve(&r.guard, base)?.to_fsa(&symbols)?;
            rules.push(PiecewiseRule::new(guard, alphabet.letter(&r.letter)?, alphabet.parse(&r.output)?));
        }
        let relators = self.relators.iter().map(|w| alphabet.parse(w)).collect::<Result<Vec<_>, _>>()?;
        let oracle = oracle_for(&self.oracle, &alphabet)?;
        let name = self.name.clone().unwrap_or_else(|| "structure".into());
        let mut s = StackingStructure::new(name, alphabet, normal_forms, rules, self.bound)?.with_relators(relators);
        if let Some(o) = oracle {
            s = s.with_oracle(o);
        }
        if let Some(b) = self.budget {
            s = s.with_budget(b);
        }
        Ok(s)
    }
}

/// Write `s` as a structure document to `path`.
pub fn save(s: &StackingStructure, path: &PathBuf) -> Result<()> {
    let doc = StructureDoc::from_structure(s)?;
    fs::write(path, write_json(&doc)).map_err(|source| Error::Io { path: path.clone(), source })
}
