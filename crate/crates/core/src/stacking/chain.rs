use alloc::collections::{BTreeMap, BTreeSet};

use super::StackingStructure;
use crate::words::{Letter, Word};

/// Memoized descending-chain lengths `χ(e)` for the flow order of one structure.
///
/// `χ(e) = 0` when no non-tree edge lies on the flow path of `e` (in
/// particular for tree edges), otherwise one more than the largest `χ` of a
/// non-tree edge on that path. Values are only computed inside the region of
/// edges whose source normal form has length at most `max_len`; a chain that
/// leaves the region (or runs into a cycle) yields `None`.
#[derive(Clone, Debug)]
pub struct ChainLengths {
    max_len: usize,
    memo: BTreeMap<(Word, Letter), Option<u32>>,
    active: BTreeSet<(Word, Letter)>,
}

impl ChainLengths {
    pub fn new(max_len: usize) -> Self {
        ChainLengths { max_len, memo: BTreeMap::new(), active: BTreeSet::new() }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn chain_length(&mut self, s: &StackingStructure, y: &Word, a: Letter) -> Option<u32> {
        if s.is_tree_edge(y, a).ok()? {
            return Some(0);
        }
        if y.len() > self.max_len {
            return None;
        }
        let key = (y.clone(), a);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        if !self.active.insert(key.clone()) {
            return None;
        }
        let value = (|| {
            let mut best = 0;
            for e in s.flow_path(y, a).ok()? {
                if s.is_tree_edge(&e.source, e.letter).ok()? {
                    continue;
                }
                best = best.max(self.chain_length(s, &e.source, e.letter)? + 1);
            }
            Some(best)
        })();
        self.active.remove(&key);
        self.memo.insert(key, value);
        value
    }
}
