use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::stacking::{ChainLengths, DirectedEdge, StackingStructure};
use crate::words::{Letter, Word};

/// Memoized `χ` tables for the input structures a certificate refers to.
#[derive(Clone, Debug)]
pub struct ChiCache {
    parts: Vec<ChainLengths>,
}

impl ChiCache {
    pub fn new(parts: usize, max_len: usize) -> Self {
        ChiCache { parts: (0..parts).map(|_| ChainLengths::new(max_len)).collect() }
    }

    pub fn part(&mut self, i: usize) -> &mut ChainLengths {
        &mut self.parts[i]
    }
}

/// A map from directed edges to tuples of naturals that strictly decreases
/// (lexicographically) along flow paths on non-tree edges.
pub trait PsiCertificate {
    fn structure(&self) -> &StackingStructure;

    fn dimension(&self) -> usize;

    /// A cache sized for a ball of the given radius.
    fn new_cache(&self, radius: usize) -> ChiCache;

    /// `None` when a `χ` value it depends on is not determined within the cache's region.
    fn psi(&self, y: &Word, a: Letter, cache: &mut ChiCache) -> Option<Vec<u32>>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiViolation {
    pub edge: DirectedEdge,
    pub psi: Vec<u32>,
    pub later: DirectedEdge,
    pub later_psi: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub non_tree_edges: usize,
    /// Pairs `(e, e')` with `e'` a non-tree edge on the flow path of `e`.
    pub dependencies: usize,
    pub indeterminate: usize,
    pub violations: Vec<PsiViolation>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, s: &StackingStructure) -> String {
        let mut out = alloc::format!(
            "{} non-tree edges, {} dependencies, {} indeterminate, {} violations",
            self.non_tree_edges,
            self.dependencies,
            self.indeterminate,
            self.violations.len()
        );
        let show =
            |e: &DirectedEdge| alloc::format!("({}, {})", s.alphabet().display(&e.source), s.alphabet().name(e.letter));
        for v in self.violations.iter().take(8) {
            out.push_str(&alloc::format!(
                "\n  ψ{} = {:?} but ψ{} = {:?}",
                show(&v.edge),
                v.psi,
                show(&v.later),
                v.later_psi
            ));
        }
        out
    }
}

/// For every non-tree edge `e` with source in `ball(radius)` and every
/// non-tree edge `e'` on its flow path, check `ψ(e') < ψ(e)`.
pub fn check_psi_monotone<P: PsiCertificate + ?Sized>(p: &P, radius: usize) -> Result<MonotonicityReport> {
    let s = p.structure();
    let mut cache = p.new_cache(radius);
    let mut report = MonotonicityReport::default();
    for y in s.ball(radius)? {
        for a in s.alphabet().letters() {
            if s.is_tree_edge(&y, a)? {
                continue;
            }
            report.non_tree_edges += 1;
            let Some(top) = p.psi(&y, a, &mut cache) else {
                report.indeterminate += 1;
                continue;
            };
            for e in s.flow_path(&y, a)? {
                if s.is_tree_edge(&e.source, e.letter)? {
                    continue;
                }
                report.dependencies += 1;
                match p.psi(&e.source, e.letter, &mut cache) {
                    None => report.indeterminate += 1,
                    Some(v) if v < top => {}
                    Some(v) => report.violations.push(PsiViolation {
                        edge: DirectedEdge::new(y.clone(), a),
                        psi: top.clone(),
                        later: e,
                        later_psi: v,
                    }),
                }
            }
        }
    }
    Ok(report)
}
