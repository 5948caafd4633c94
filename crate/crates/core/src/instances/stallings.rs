//! Stallings' group: the HNN extension of `F₂ × F₂ = ⟨a, b⟩ × ⟨c, d⟩` whose
//! stable letter `s` centralizes `ab⁻¹`, `ac⁻¹` and `ad⁻¹`.

use alloc::vec;
use alloc::vec::Vec;

use crate::fsa::Fsa;
use crate::stacking::{Oracle, PiecewiseRule, StackingStructure};
use crate::words::{max_suffix_by, Alphabet, Letter, Word};

const A: Letter = Letter(0);
const A_INV: Letter = Letter(1);
const B: Letter = Letter(2);
const B_INV: Letter = Letter(3);
const C: Letter = Letter(4);
const C_INV: Letter = Letter(5);
const D: Letter = Letter(6);
const D_INV: Letter = Letter(7);
const S: Letter = Letter(8);
const S_INV: Letter = Letter(9);
const SIZE: usize = 10;

const AB: [Letter; 4] = [A, A_INV, B, B_INV];
const CD: [Letter; 4] = [C, C_INV, D, D_INV];
const Z: [Letter; 8] = [A, A_INV, B, B_INV, C, C_INV, D, D_INV];

/// Rewriting steps allowed before the oracle gives up.
const REWRITE_BUDGET: usize = 1 << 20;

/// Letters `a, a^-1, b, b^-1, c, c^-1, d, d^-1, s, s^-1`, in that order.
pub fn stallings_alphabet() -> Alphabet {
    Alphabet::from_generators(&["a", "b", "c", "d", "s"]).expect("valid generator names")
}

fn inv(x: Letter) -> Letter {
    Letter(x.0 ^ 1)
}

fn is_s(x: Letter) -> bool {
    x == S || x == S_INV
}

fn is_a(x: Letter) -> bool {
    x == A || x == A_INV
}

fn is_cd(x: Letter) -> bool {
    CD.contains(&x)
}

/// `+1` for a positive letter, `-1` for an inverse.
fn sign(x: Letter) -> i64 {
    if x.0 & 1 == 0 {
        1
    } else {
        -1
    }
}

fn with_sign(x: Letter, eta: i64) -> Letter {
    if eta > 0 {
        Letter(x.0 & !1)
    } else {
        Letter(x.0 | 1)
    }
}

fn a_power(i: i64) -> impl Iterator<Item = Letter> {
    let x = if i >= 0 { A } else { A_INV };
    core::iter::repeat_n(x, i.unsigned_abs() as usize)
}

fn idx(xs: &[Letter]) -> Vec<usize> {
    xs.iter().map(|x| x.index()).collect()
}

/// The factors excluded from normal forms:
/// `xx⁻¹`, `{c,d}^±{a,b}^±` and `s^± (a* ∪ (a⁻¹)*) {b,c,d}^±`.
fn forbidden_factors() -> Fsa {
    let all: Vec<Letter> = (0..SIZE as u32).map(Letter).collect();
    let cancel: Vec<Vec<usize>> = all.iter().map(|&x| vec![x.index(), inv(x).index()]).collect();
    let cancel_refs: Vec<&[usize]> = cancel.iter().map(Vec::as_slice).collect();
    let cancel = Fsa::from_words(SIZE, &cancel_refs);
    let swap = Fsa::symbols(SIZE, &idx(&CD)).concat(&Fsa::symbols(SIZE, &idx(&AB))).unwrap();
    let a_block = Fsa::symbols(SIZE, &[A.index()]).star().union(&Fsa::symbols(SIZE, &[A_INV.index()]).star()).unwrap();
    let s_rule = Fsa::symbols(SIZE, &idx(&[S, S_INV]))
        .concat(&a_block)
        .unwrap()
        .concat(&Fsa::symbols(SIZE, &idx(&[B, B_INV, C, C_INV, D, D_INV])))
        .unwrap();
    cancel.union(&swap).unwrap().union(&s_rule).unwrap()
}

/// `N_G = A* ∖ A* M A*`, the words containing no forbidden factor.
pub fn stallings_nf_automaton() -> Fsa {
    let all = Fsa::universal(SIZE);
    all.concat(&forbidden_factors()).unwrap().concat(&all).unwrap().complement().minimize()
}

fn ends_with(x: Letter) -> Fsa {
    Fsa::universal(SIZE).concat(&Fsa::word(SIZE, &[x.index()])).unwrap()
}

/// The five families of rules, with explicit guards.
fn stallings_rules(n: &Fsa) -> Vec<PiecewiseRule> {
    let z_star = Fsa::symbols(SIZE, &idx(&Z)).star();
    let mut rules = Vec::new();
    for x in (0..SIZE as u32).map(Letter) {
        // tree edges
        let forward = n.quotient(&[x.index()]);
        let back = n.intersect(&ends_with(inv(x))).unwrap();
        rules.push(PiecewiseRule::new(forward.union(&back).unwrap().minimize(), x, Word::letter(x)));

        if AB.contains(&x) {
            for z in CD {
                let guard = n.intersect(&z_star).unwrap().intersect(&ends_with(z)).unwrap();
                rules.push(PiecewiseRule::new(guard.minimize(), x, Word(vec![inv(z), x, z])));
            }
        }
        if is_cd(x) {
            for z in [A, A_INV] {
                let guard = n.intersect(&ends_with(z)).unwrap().difference(&z_star).unwrap();
                rules.push(PiecewiseRule::new(guard.minimize(), x, Word(vec![inv(z), x, z])));
            }
        }
        if x == B || x == B_INV {
            for z in [A, A_INV] {
                let eta = sign(z);
                let guard = n.intersect(&ends_with(z)).unwrap().difference(&z_star).unwrap();
                let c = with_sign(C, eta);
                rules.push(PiecewiseRule::new(guard.minimize(), x, Word(vec![inv(c), x, c])));
            }
        }
        if [B, B_INV, C, C_INV, D, D_INV].contains(&x) {
            let eta = sign(x);
            for z in [S, S_INV] {
                let guard = n.intersect(&ends_with(z)).unwrap();
                let out = vec![inv(z), x, with_sign(A, -eta), z, with_sign(A, eta)];
                rules.push(PiecewiseRule::new(guard.minimize(), x, Word(out)));
            }
        }
    }
    rules
}

fn commutator(x: &[Letter], y: &[Letter]) -> Word {
    let inverse = |w: &[Letter]| -> Vec<Letter> { w.iter().rev().map(|&l| inv(l)).collect() };
    let mut w = x.to_vec();
    w.extend_from_slice(y);
    w.extend(inverse(x));
    w.extend(inverse(y));
    Word(w)
}

/// `[a,c], [a,d], [b,c], [b,d], [s,ab⁻¹], [s,ac⁻¹], [s,ad⁻¹]`.
pub fn stallings_relators() -> Vec<Word> {
    vec![
        commutator(&[A], &[C]),
        commutator(&[A], &[D]),
        commutator(&[B], &[C]),
        commutator(&[B], &[D]),
        commutator(&[S], &[A, B_INV]),
        commutator(&[S], &[A, C_INV]),
        commutator(&[S], &[A, D_INV]),
    ]
}

/// The explicit autostackable structure, bound 5, with the rewriting oracle attached.
pub fn stallings_structure() -> StackingStructure {
    let n = stallings_nf_automaton();
    let rules = stallings_rules(&n);
    StackingStructure::new("stallings", stallings_alphabet(), n, rules, 5)
        .expect("rules are over the Stallings alphabet")
        .with_relators(stallings_relators())
        .with_oracle(Oracle::new("stallings rewriting", stallings_rewrite))
}

/// One rewriting step at the leftmost redex, or `None` if `w` is irreducible.
fn rewrite_once(w: &[Letter]) -> Option<Vec<Letter>> {
    for i in 0..w.len() {
        let x = w[i];
        if let Some(&y) = w.get(i + 1) {
            if y == inv(x) {
                let mut out = w[..i].to_vec();
                out.extend_from_slice(&w[i + 2..]);
                return Some(out);
            }
            if is_cd(x) && AB.contains(&y) {
                let mut out = w.to_vec();
                out.swap(i, i + 1);
                return Some(out);
            }
        }
        if is_s(x) {
            // s^ε a^k followed by a letter of {b, c, d}^±
            let mut j = i + 1;
            if j < w.len() && is_a(w[j]) {
                let first = w[j];
                while j < w.len() && w[j] == first {
                    j += 1;
                }
            }
            let Some(&y) = w.get(j) else { continue };
            if is_a(y) || is_s(y) {
                continue;
            }
            let k = w[i + 1..j].iter().map(|&l| sign(l)).sum::<i64>();
            let eta = sign(y);
            let mut out = w[..i].to_vec();
            if y == B || y == B_INV {
                out.extend(a_power(k));
                out.push(y);
                out.extend(a_power(-eta - k));
            } else {
                out.extend(a_power(-eta));
                out.push(y);
            }
            out.push(x);
            out.extend(a_power(eta + k));
            out.extend_from_slice(&w[j + 1..]);
            return Some(out);
        }
    }
    None
}

/// Rewrite to the irreducible word, giving up after `budget` steps.
pub fn stallings_rewrite_bounded(w: &Word, budget: usize) -> Option<Word> {
    let mut cur: Vec<Letter> = w.to_vec();
    for _ in 0..budget {
        match rewrite_once(&cur) {
            Some(next) => cur = next,
            None => return Some(Word(cur)),
        }
    }
    None
}

/// The normal form of `w` computed by the complete rewriting system,
/// independently of the stacking map.
pub fn stallings_rewrite(w: &Word) -> Word {
    // a runaway rewrite returns the input, which then shows up as a mismatch
    stallings_rewrite_bounded(w, REWRITE_BUDGET).unwrap_or_else(|| w.clone())
}

/// The lexicographic well-foundedness certificate on directed edges.
pub fn psi_stallings(s: &StackingStructure, y: &Word, x: Letter) -> [u32; 3] {
    if s.is_tree_edge(y, x).unwrap_or(true) {
        return [0, 0, 0];
    }
    let in_z = y.iter().all(|l| Z.contains(l));
    let n_s = y.iter().filter(|&&l| is_s(l)).count() as u32;
    let suf_a = max_suffix_by(y, is_a).len() as u32;
    if AB.contains(&x) && in_z {
        [0, 0, max_suffix_by(y, is_cd).len() as u32]
    } else if is_cd(x) && !in_z {
        [n_s, suf_a, 0]
    } else {
        [n_s, suf_a, 1]
    }
}
