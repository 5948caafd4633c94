//! Closure constructions: graph products, extensions and finite-index
//! supergroups. Each consumes rule-based structures and emits a structure
//! whose rules are assembled from the inputs' guards, together with a
//! lexicographic certificate `ψ` for well-foundedness of the flow order.

mod extension;
mod finite_index;
mod graph_product;
mod psi;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::stacking::{PiecewiseRule, StackingStructure};
use crate::words::{Alphabet, Letter, Word};

pub use extension::{extension, Extension, ExtensionData};
pub use finite_index::{finite_index, FiniteIndex, IndexData};
pub use graph_product::{graph_product, pi, CSymbol, GraphProduct, GraphSpec};
pub use psi::{check_psi_monotone, ChiCache, MonotonicityReport, PsiCertificate, PsiViolation};

/// `C*·{x}` for any `x` in `symbols`.
fn ending_in(num_symbols: usize, symbols: &[usize]) -> Fsa {
    Fsa::universal(num_symbols).concat(&Fsa::symbols(num_symbols, symbols)).expect("same alphabet")
}

fn rules_of<'s>(s: &'s StackingStructure, role: &str) -> Result<&'s [PiecewiseRule]> {
    s.rules().ok_or_else(|| {
        Error::Unsupported(format!("{role} `{}` has an opaque stacking map; constructions need rules", s.name()))
    })
}

/// Group the rules of `s` for letter `a` by output, each guard cut down to
/// the normal forms: `output -> {y ∈ N | φ(y, a) = output}`.
fn guards_by_output(s: &StackingStructure, a: Letter) -> Result<Vec<(Word, Fsa)>> {
    let rules = rules_of(s, "input")?;
    let outputs: BTreeSet<&Word> = rules.iter().filter(|r| r.letter == a).map(|r| &r.output).collect();
    let mut out = Vec::with_capacity(outputs.len());
    for x in outputs {
        let parts: Vec<&Fsa> = rules.iter().filter(|r| r.letter == a && r.output == *x).map(|r| &r.guard).collect();
        let guard = Fsa::union_all(&parts, s.alphabet().len())?.intersect(s.normal_forms())?;
        if !guard.is_empty() {
            out.push((x.clone(), guard));
        }
    }
    Ok(out)
}

/// A joint alphabet, block offsets and `(old, new)` renamings.
type Joined = (Alphabet, Vec<usize>, Vec<(String, String)>);

/// Concatenate alphabets, renaming whole blocks that collide with earlier
/// names. Returns the joint alphabet, the offset of each block and the
/// renamings `(old, new)` applied.
fn join_alphabets(blocks: &[&Alphabet], tags: &[String]) -> Result<Joined> {
    let mut names: Vec<String> = Vec::new();
    let mut inverse: Vec<usize> = Vec::new();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut renamed = Vec::new();
    for (block, tag) in blocks.iter().zip(tags) {
        let offset = names.len();
        offsets.push(offset);
        let clash = |candidate: &[String]| candidate.iter().any(|n| names.contains(n));
        let mut chosen: Vec<String> = block.names().to_vec();
        let mut attempt = 0usize;
        while clash(&chosen) {
            let suffix = if attempt == 0 { format!("_{tag}") } else { format!("_{tag}_{attempt}") };
            chosen = block.names().iter().map(|n| rename(n, &suffix)).collect();
            attempt += 1;
        }
        for (old, new) in block.names().iter().zip(&chosen) {
            if old != new {
                renamed.push((old.clone(), new.clone()));
            }
        }
        names.extend(chosen);
        inverse.extend(block.letters().map(|x| block.inverse(x).index() + offset));
    }
    Ok((Alphabet::new(names, inverse)?, offsets, renamed))
}

/// `a^-1` with suffix `_2` becomes `a_2^-1`, so inverse names stay paired.
fn rename(name: &str, suffix: &str) -> String {
    match name.strip_suffix(crate::words::INVERSE_SUFFIX) {
        Some(base) => format!("{base}{suffix}{}", crate::words::INVERSE_SUFFIX),
        None => format!("{name}{suffix}"),
    }
}

fn shift(w: &[Letter], offset: usize) -> Word {
    w.iter().map(|x| Letter(x.0 + offset as u32)).collect()
}

/// Letters `x` with `x ≤ x⁻¹`, one per generator.
fn representatives(alphabet: &Alphabet) -> impl Iterator<Item = Letter> + '_ {
    alphabet.letters().filter(move |&x| x <= alphabet.inverse(x))
}

fn commutator(alphabet: &Alphabet, x: Letter, y: Letter) -> Word {
    Word(alloc::vec![x, y, alphabet.inverse(x), alphabet.inverse(y)])
}
