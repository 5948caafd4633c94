use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{commutator, guards_by_output, join_alphabets, representatives, rules_of, shift, ChiCache, PsiCertificate};
use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::stacking::{PiecewiseRule, StackingStructure};
use crate::words::{max_suffix_by, Letter, Word};

/// A finite simplicial graph on vertices `0..n`, ordered by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    n: usize,
    adjacent: Vec<Vec<bool>>,
}

impl GraphSpec {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacent = vec![vec![false; n]; n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!("edge ({i}, {j}) outside 0..{n}")));
            }
            if i == j {
                return Err(Error::InvalidInput(format!("loop at vertex {i}")));
            }
            adjacent[i][j] = true;
            adjacent[j][i] = true;
        }
        Ok(GraphSpec { n, adjacent })
    }

    /// No edges: the free product.
    pub fn discrete(n: usize) -> Self {
        GraphSpec { n, adjacent: vec![vec![false; n]; n] }
    }

    /// All edges: the direct product.
    pub fn complete(n: usize) -> Self {
        GraphSpec { n, adjacent: (0..n).map(|i| (0..n).map(|j| i != j).collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacent[i][j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adjacent[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A letter of `C_i = A_i ∪ {$, >}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CSymbol {
    Letter(Letter),
    Dollar,
    Greater,
}

#[derive(Clone, Debug)]
pub struct GraphProduct {
    pub structure: StackingStructure,
    pub spec: GraphSpec,
    pub vertices: Vec<StackingStructure>,
    /// First product letter of each vertex alphabet.
    pub offsets: Vec<usize>,
    /// Letter renamings applied to keep vertex alphabets disjoint.
    pub renamed: Vec<(String, String)>,
}

/// `π_i(w)`: letters of `A_i` are kept, letters of adjacent vertices `k > i`
/// become `>`, of adjacent `k < i` are erased, of other vertices become `$`.
pub fn pi(product: &GraphProduct, i: usize, w: &[Letter]) -> Result<Vec<CSymbol>> {
    let mut out = Vec::with_capacity(w.len());
    for &x in w {
        if !product.structure.alphabet().contains(x) {
            return Err(Error::UnknownLetter(format!("#{}", x.0)));
        }
        let (k, local) = product.vertex_of(x);
        if k == i {
            out.push(CSymbol::Letter(local));
        } else if product.spec.adjacent(i, k) {
            if k > i {
                out.push(CSymbol::Greater);
            }
        } else {
            out.push(CSymbol::Dollar);
        }
    }
    Ok(out)
}

impl GraphProduct {
    /// The vertex and vertex-local letter of a product letter.
    pub fn vertex_of(&self, x: Letter) -> (usize, Letter) {
        let k = self.offsets.iter().rposition(|&o| o <= x.index()).expect("offsets start at 0");
        (k, Letter(x.0 - self.offsets[k] as u32))
    }

    pub fn to_product(&self, vertex: usize, w: &[Letter]) -> Word {
        shift(w, self.offsets[vertex])
    }

    /// `suf_k(y)` translated to the vertex alphabet.
    pub fn suffix_in(&self, k: usize, y: &[Letter]) -> Word {
        let suf = max_suffix_by(y, |x| self.vertex_of(x).0 == k);
        suf.iter().map(|&x| self.vertex_of(x).1).collect()
    }

    fn pi_ends_in_greater(&self, k: usize, y: &[Letter]) -> bool {
        // the last letter of y not erased by π_k decides
        y.iter()
            .rev()
            .find_map(|&x| {
                let (j, _) = self.vertex_of(x);
                if j != k && self.spec.adjacent(k, j) && j < k {
                    None
                } else {
                    Some(j != k && self.spec.adjacent(k, j))
                }
            })
            .unwrap_or(false)
    }

    /// The stacking map evaluated straight from its case split, independent of the rules.
    pub fn stack_by_cases(&self, y: &Word, a: Letter) -> Result<Word> {
        let (k, local) = self.vertex_of(a);
        if self.pi_ends_in_greater(k, y) {
            let last = *y.last().expect("π_k(y) is nonempty");
            let inv = self.structure.alphabet().inverse(last);
            return Ok(Word(vec![inv, a, last]));
        }
        let out = self.vertices[k].stack(&self.suffix_in(k, y), local)?;
        Ok(self.to_product(k, &out))
    }
}

fn vertex_name(i: usize) -> String {
    format!("{}", i + 1)
}

/// The graph product of `vertices` over `spec`, bound `max{3, bd_i}`.
pub fn graph_product(spec: &GraphSpec, vertices: Vec<StackingStructure>) -> Result<GraphProduct> {
    if vertices.len() != spec.len() {
        return Err(Error::InvalidInput(format!(
            "graph has {} vertices but {} structures were given",
            spec.len(),
            vertices.len()
        )));
    }
    for v in &vertices {
        rules_of(v, "vertex group")?;
    }
    let blocks: Vec<_> = vertices.iter().map(|v| v.alphabet()).collect();
    let tags: Vec<String> = (0..vertices.len()).map(vertex_name).collect();
    let (alphabet, offsets, renamed) = join_alphabets(&blocks, &tags)?;
    let size = alphabet.len();
    let n = spec.len();

    // π_k as a homomorphism into C_k, with $ = |A_k| and > = |A_k| + 1
    let images: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|k| {
            let dollar = vertices[k].alphabet().len();
            alphabet
                .letters()
                .map(|x| {
                    let j = offsets.iter().rposition(|&o| o <= x.index()).unwrap();
                    if j == k {
                        vec![x.index() - offsets[k]]
                    } else if spec.adjacent(k, j) {
                        if j > k {
                            vec![dollar + 1]
                        } else {
                            vec![]
                        }
                    } else {
                        vec![dollar]
                    }
                })
                .collect()
        })
        .collect();

    let mut blocks_k = Vec::with_capacity(n); // (N_k >* $)* over C_k
    let mut greater_k = Vec::with_capacity(n); // C_k* >
    let mut nf = Fsa::universal(size);
    for (k, v) in vertices.iter().enumerate() {
        let m = v.alphabet().len();
        let c = m + 2;
        let nk = v.normal_forms().embed(c, &(0..m).collect::<Vec<_>>())?;
        let gts = Fsa::symbols(c, &[m + 1]).star();
        let block = nk.concat(&gts)?.concat(&Fsa::word(c, &[m]))?.star();
        let cll = block.concat(&nk)?.concat(&gts)?;
        nf = nf.intersect(&cll.hom_preimage(&images[k])?)?;
        blocks_k.push(block.hom_preimage(&images[k])?);
        greater_k.push(Fsa::universal(c).concat(&Fsa::word(c, &[m + 1]))?.hom_preimage(&images[k])?);
    }
    let nf = nf.minimize();

    let mut rules = Vec::new();
    let mut bound = 3;
    for (k, v) in vertices.iter().enumerate() {
        bound = bound.max(v.bound());
        let map: Vec<usize> = (0..v.alphabet().len()).map(|i| i + offsets[k]).collect();
        let base = nf.intersect(&greater_k[k].complement())?;
        let tails = nf.intersect(&greater_k[k])?;
        for local in v.alphabet().letters() {
            let a = Letter((local.index() + offsets[k]) as u32);
            for (x, guard) in guards_by_output(v, local)? {
                let guard = base.intersect(&blocks_k[k].concat(&guard.embed(size, &map)?)?)?;
                if !guard.is_empty() {
                    rules.push(PiecewiseRule::new(guard, a, shift(&x, offsets[k])));
                }
            }
            for j in (0..n).filter(|&j| spec.adjacent(k, j)) {
                for b in vertices[j].alphabet().letters() {
                    let b = Letter((b.index() + offsets[j]) as u32);
                    let guard = tails.intersect(&super::ending_in(size, &[b.index()]))?;
                    if !guard.is_empty() {
                        rules.push(PiecewiseRule::new(guard, a, Word(vec![alphabet.inverse(b), a, b])));
                    }
                }
            }
        }
    }

    let mut relators = Vec::new();
    for (k, v) in vertices.iter().enumerate() {
        relators.extend(v.relators().iter().map(|r| shift(r, offsets[k])));
    }
    for (i, j) in spec.edges() {
        for x in representatives(vertices[i].alphabet()) {
            for y in representatives(vertices[j].alphabet()) {
                let x = Letter((x.index() + offsets[i]) as u32);
                let y = Letter((y.index() + offsets[j]) as u32);
                relators.push(commutator(&alphabet, x, y));
            }
        }
    }

    let names: Vec<&str> = vertices.iter().map(|v| v.name()).collect();
    let name = format!("graph_product({})", names.join(", "));
    let structure = StackingStructure::new(name, alphabet, nf, rules, bound)?.with_relators(relators);
    Ok(GraphProduct { structure, spec: spec.clone(), vertices, offsets, renamed })
}

impl PsiCertificate for GraphProduct {
    fn structure(&self) -> &StackingStructure {
        &self.structure
    }

    fn dimension(&self) -> usize {
        2
    }

    fn new_cache(&self, radius: usize) -> ChiCache {
        ChiCache::new(self.vertices.len(), 4 * (radius + self.structure.bound()))
    }

    fn psi(&self, y: &Word, a: Letter, cache: &mut ChiCache) -> Option<Vec<u32>> {
        let (k, local) = self.vertex_of(a);
        if self.pi_ends_in_greater(k, y) {
            return Some(vec![y.len() as u32, 0]);
        }
        let suf = self.suffix_in(k, y);
        let chi = cache.part(k).chain_length(&self.vertices[k], &suf, local)?;
        Some(vec![0, chi])
    }
}

impl fmt::Display for CSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CSymbol::Letter(x) => write!(f, "#{}", x.0),
            CSymbol::Dollar => f.write_str("$"),
            CSymbol::Greater => f.write_str(">"),
        }
    }
}
