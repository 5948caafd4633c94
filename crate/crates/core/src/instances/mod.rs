//! Shipped structures and the catalog behind `builtin:<name>`.

mod finite;
mod free;
mod stallings;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::{
    extension, finite_index, graph_product, ChiCache, Extension, ExtensionData, FiniteIndex, GraphProduct, GraphSpec,
    IndexData, PsiCertificate,
};
use crate::error::{Error, Result};
use crate::stacking::{Oracle, StackingStructure};
use crate::words::{Alphabet, Letter, Word};

pub use finite::{finite, s3, GroupTable};
pub use free::{free, free_on, freely_reduced, generator_names, trivial};
pub use stallings::{
    psi_stallings, stallings_alphabet, stallings_nf_automaton, stallings_relators, stallings_rewrite,
    stallings_rewrite_bounded, stallings_structure,
};

/// Names accepted by [`builtin`], besides `free<n>` for any rank `n ≥ 1`.
pub const BUILTIN_NAMES: &[&str] =
    &["trivial", "free1", "free2", "z", "z2", "f2xf2", "z_free_z", "s3", "heisenberg", "index2z", "stallings"];

pub fn builtin(name: &str) -> Result<StackingStructure> {
    let s = match name {
        "trivial" => trivial(),
        "z" => free_on("z", &["a"])?,
        "z2" => z2().structure,
        "f2xf2" => f2xf2().structure,
        "z_free_z" => z_free_z().structure,
        "s3" => s3(),
        "heisenberg" => heisenberg().structure,
        "index2z" => index2z().structure,
        "stallings" => stallings_structure(),
        _ => match name.strip_prefix("free").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 1 => free(n)?,
            _ => return Err(Error::UnknownInstance(String::from(name))),
        },
    };
    Ok(s)
}

fn exponent_sums(alphabet: &Alphabet, w: &[Letter]) -> Vec<i64> {
    // one counter per generator, indexed by its first letter
    let mut sums = vec![0i64; alphabet.len()];
    for &x in w {
        let inv = alphabet.inverse(x);
        if x <= inv {
            sums[x.index()] += 1;
        } else {
            sums[inv.index()] -= 1;
        }
    }
    sums
}

fn power(x: Letter, inv: Letter, n: i64) -> impl Iterator<Item = Letter> {
    core::iter::repeat_n(if n >= 0 { x } else { inv }, n.unsigned_abs() as usize)
}

/// `Z × Z = ⟨a⟩ × ⟨b⟩` with normal forms `a^i b^j`.
pub fn z2() -> GraphProduct {
    z2_on("a", "b")
}

fn z2_on(x: &str, y: &str) -> GraphProduct {
    let vertices = vec![free_on("z", &[x]).unwrap(), free_on("z", &[y]).unwrap()];
    let mut p = graph_product(&GraphSpec::complete(2), vertices).expect("valid graph product");
    let alphabet = p.structure.alphabet().clone();
    let oracle = Oracle::new("exponent sums", move |w: &Word| {
        let e = exponent_sums(&alphabet, w);
        power(Letter(0), Letter(1), e[0]).chain(power(Letter(2), Letter(3), e[2])).collect()
    });
    p.structure = p.structure.clone().with_name("z2").with_oracle(oracle);
    p
}

/// `F₂ × F₂ = ⟨a, b⟩ × ⟨c, d⟩`: a freely reduced `{a,b}`-word then a freely reduced `{c,d}`-word.
pub fn f2xf2() -> GraphProduct {
    let vertices = vec![free_on("f2", &["a", "b"]).unwrap(), free_on("f2", &["c", "d"]).unwrap()];
    let mut p = graph_product(&GraphSpec::complete(2), vertices).expect("valid graph product");
    let alphabet = p.structure.alphabet().clone();
    let oracle = Oracle::new("free reduction per factor", move |w: &Word| {
        let left: Word = w.iter().copied().filter(|x| x.index() < 4).collect();
        let right: Word = w.iter().copied().filter(|x| x.index() >= 4).collect();
        alphabet.free_reduce(&left).concat(&alphabet.free_reduce(&right))
    });
    p.structure = p.structure.clone().with_name("f2xf2").with_oracle(oracle);
    p
}

/// `Z * Z`, which is free of rank 2.
pub fn z_free_z() -> GraphProduct {
    let vertices = vec![free_on("z", &["a"]).unwrap(), free_on("z", &["b"]).unwrap()];
    let mut p = graph_product(&GraphSpec::discrete(2), vertices).expect("valid graph product");
    let alphabet = p.structure.alphabet().clone();
    let oracle = Oracle::new("free reduction", move |w: &Word| alphabet.free_reduce(w));
    p.structure = p.structure.clone().with_name("z_free_z").with_oracle(oracle);
    p
}

/// A unitriangular integer matrix `[[1, p, r], [0, 1, q], [0, 0, 1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unitriangular {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl Unitriangular {
    pub const IDENTITY: Unitriangular = Unitriangular { p: 0, q: 0, r: 0 };
}

impl core::ops::Mul for Unitriangular {
    type Output = Unitriangular;

    fn mul(self, o: Unitriangular) -> Unitriangular {
        Unitriangular { p: self.p + o.p, q: self.q + o.q, r: self.r + o.r + self.p * o.q }
    }
}

/// Matrices of the Heisenberg letters `a1, a1^-1, a2, a2^-1, b, b^-1`.
/// `a2` and `b` are the elementary matrices just above the diagonal; `a1`
/// is the central element with `b a2 b⁻¹ = a1 a2`.
pub fn heisenberg_matrices() -> [Unitriangular; 6] {
    let m = |p, q, r| Unitriangular { p, q, r };
    [m(0, 0, -1), m(0, 0, 1), m(1, 0, 0), m(-1, 0, 0), m(0, 1, 0), m(0, -1, 0)]
}

/// The normal form `a1^i a2^k b^j` read off a matrix.
pub fn heisenberg_normal_form(m: Unitriangular) -> Word {
    // a1^i a2^k b^j has p = k, q = j, r = k·j − i
    let (k, j) = (m.p, m.q);
    let i = k * j - m.r;
    power(Letter(0), Letter(1), i).chain(power(Letter(2), Letter(3), k)).chain(power(Letter(4), Letter(5), j)).collect()
}

/// The discrete Heisenberg group as an extension of `Z² = ⟨a1, a2⟩` by `Z = ⟨b⟩`.
pub fn heisenberg() -> Extension {
    let k = z2_on("a1", "a2").structure;
    let q = free_on("z", &["b"]).unwrap();
    let mut data = ExtensionData::new(k, q);
    let table = [
        ("b", "a1", "a1"),
        ("b", "a1^-1", "a1^-1"),
        ("b", "a2", "a1 a2"),
        ("b", "a2^-1", "a1^-1 a2^-1"),
        ("b^-1", "a1", "a1"),
        ("b^-1", "a1^-1", "a1^-1"),
        ("b^-1", "a2", "a1^-1 a2"),
        ("b^-1", "a2^-1", "a1 a2^-1"),
    ];
    for (b, a, u) in table {
        data.set_conj(b, a, u).expect("table letters exist");
    }
    let matrices = heisenberg_matrices();
    let oracle = Oracle::new("3x3 integer matrices", move |w: &Word| {
        heisenberg_normal_form(w.iter().fold(Unitriangular::IDENTITY, |m, x| m * matrices[x.index()]))
    });
    let mut e = extension(data.with_oracle(oracle)).expect("Heisenberg data is complete");
    e.structure = e.structure.clone().with_name("heisenberg");
    e
}

/// `Z = ⟨g⟩` over `H = ⟨h⟩ = 2Z` with transversal `{1, g}`, where `g² = h`.
pub fn index2z() -> FiniteIndex {
    let h = free_on("z", &["h"]).unwrap();
    let mut data = IndexData::new(h, &[("g", false)]).expect("fresh letter g");
    data.set_table1("g^-1", "h^-1", "g").unwrap();
    let table2 = [
        ("g", "g", "h", ""),
        ("g", "g^-1", "", ""),
        ("g", "h", "h", "g"),
        ("g", "h^-1", "h^-1", "g"),
        ("g^-1", "g", "", ""),
        ("g^-1", "g^-1", "h^-1", ""),
        ("g^-1", "h", "", "g"),
        ("g^-1", "h^-1", "h^-1 h^-1", "g"),
    ];
    for (x, y, u, t) in table2 {
        data.set_table2(x, y, u, t).unwrap();
    }
    let alphabet = data.alphabet().clone();
    let oracle = Oracle::new("integer sum", move |w: &Word| index2z_normal_form(&alphabet, w));
    let mut f = finite_index(data.with_oracle(oracle)).expect("index-2 tables are complete");
    f.structure = f.structure.clone().with_name("index2z");
    f
}

/// Value of a word over `h, h^-1, g, g^-1` in `Z` with `g = 1`, `h = 2`.
pub fn index2z_value(alphabet: &Alphabet, w: &[Letter]) -> i64 {
    w.iter()
        .map(|&x| match alphabet.name(x) {
            "h" => 2,
            "h^-1" => -2,
            "g" => 1,
            "g^-1" => -1,
            other => panic!("unexpected letter {other}"),
        })
        .sum()
}

fn index2z_normal_form(alphabet: &Alphabet, w: &[Letter]) -> Word {
    let n = index2z_value(alphabet, w);
    let mut out: Word = power(Letter(0), Letter(1), n.div_euclid(2)).collect();
    if n.rem_euclid(2) == 1 {
        out.push(Letter(2));
    }
    out
}

/// `ψ` for the Stallings structure, viewed as a certificate.
#[derive(Clone, Debug)]
pub struct StallingsPsi {
    pub structure: StackingStructure,
}

impl StallingsPsi {
    pub fn new() -> Self {
        StallingsPsi { structure: stallings_structure() }
    }
}

impl Default for StallingsPsi {
    fn default() -> Self {
        Self::new()
    }
}

impl PsiCertificate for StallingsPsi {
    fn structure(&self) -> &StackingStructure {
        &self.structure
    }

    fn dimension(&self) -> usize {
        3
    }

    fn new_cache(&self, _radius: usize) -> ChiCache {
        ChiCache::new(0, 0)
    }

    fn psi(&self, y: &Word, a: Letter, _cache: &mut ChiCache) -> Option<Vec<u32>> {
        Some(psi_stallings(&self.structure, y, a).to_vec())
    }
}

/// A short human-readable description of each catalog entry.
pub fn describe(name: &str) -> Option<String> {
    let text = match name {
        "trivial" => "the trivial group over the empty alphabet",
        "free1" | "z" => "the infinite cyclic group <a>",
        "free2" => "the free group <a, b>",
        "z2" => "Z x Z = <a> x <b> as a graph product",
        "f2xf2" => "F2 x F2 = <a, b> x <c, d> as a graph product",
        "z_free_z" => "Z * Z = <a> * <b> as a graph product with no edges",
        "s3" => "the symmetric group S3 on a transposition t and a 3-cycle r",
        "heisenberg" => "the discrete Heisenberg group as an extension of Z^2 by Z",
        "index2z" => "Z = <g> over its index-2 subgroup <h>, h = g^2",
        "stallings" => "Stallings' group, an HNN extension of F2 x F2",
        _ => return name.strip_prefix("free").map(|n| format!("the free group of rank {n}")),
    };
    Some(String::from(text))
}
