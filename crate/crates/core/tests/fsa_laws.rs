use std::collections::BTreeSet;

use autostack_core::fsa::{pad, Fsa, PaddedAlphabet, SyncAcceptor};
use proptest::prelude::*;

/// All words over `0..k` of length at most `n`, shortest first.
fn words_upto(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..k {
                let mut v: Vec<usize> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A random partial DFA; missing moves go to the sink.
fn arb_fsa(k: usize) -> impl Strategy<Value = Fsa> {
    (1usize..=5).prop_flat_map(move |n| {
        (prop::collection::vec(prop::option::weighted(0.8, 0..n), n * k), prop::collection::vec(any::<bool>(), n))
            .prop_map(move |(moves, acc)| {
                let transitions: Vec<(usize, usize, usize)> =
                    moves.iter().enumerate().filter_map(|(i, m)| m.map(|q| (i / k, i % k, q))).collect();
                let accepting: Vec<usize> = (0..n).filter(|&q| acc[q]).collect();
                Fsa::from_parts(k, n, 0, &accepting, &transitions).unwrap()
            })
    })
}

fn lang(f: &Fsa, n: usize) -> BTreeSet<Vec<usize>> {
    words_upto(f.num_symbols(), n).into_iter().filter(|w| f.accepts(w)).collect()
}

/// Number of states of the minimal complete DFA, by brute-force comparison of
/// the words of length < n accepted from each reachable state.
fn minimal_state_count(f: &Fsa) -> usize {
    let k = f.num_symbols();
    let n = f.num_states();
    let probes = words_upto(k, n);
    let mut reachable = BTreeSet::new();
    let mut stack = vec![f.start()];
    while let Some(q) = stack.pop() {
        if reachable.insert(q) {
            stack.extend((0..k).map(|s| f.next(q, s)));
        }
    }
    reachable
        .iter()
        .map(|&q| probes.iter().map(|w| f.is_accepting(f.run_from(q, w))).collect::<Vec<bool>>())
        .collect::<BTreeSet<_>>()
        .len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boolean_laws(f in arb_fsa(2), g in arb_fsa(2), h in arb_fsa(2)) {
        let u = Fsa::universal(2);
        prop_assert!(f.intersect(&u).unwrap().equivalent(&f).unwrap());
        // De Morgan
        let lhs = f.union(&g).unwrap().complement();
        let rhs = f.complement().intersect(&g.complement()).unwrap();
        prop_assert!(lhs.equivalent(&rhs).unwrap());
        // distributivity
        let lhs = f.intersect(&g.union(&h).unwrap()).unwrap();
        let rhs = f.intersect(&g).unwrap().union(&f.intersect(&h).unwrap()).unwrap();
        prop_assert!(lhs.equivalent(&rhs).unwrap());
        prop_assert!(f.difference(&g).unwrap().equivalent(&f.intersect(&g.complement()).unwrap()).unwrap());
    }

    #[test]
    fn operations_match_enumeration(f in arb_fsa(2), g in arb_fsa(2)) {
        let (lf, lg) = (lang(&f, 4), lang(&g, 4));
        prop_assert_eq!(lang(&f.union(&g).unwrap(), 4), &lf | &lg);
        prop_assert_eq!(lang(&f.intersect(&g).unwrap(), 4), &lf & &lg);
        let concat = lang(&f.concat(&g).unwrap(), 4);
        for w in words_upto(2, 4) {
            let split = (0..=w.len()).any(|i| f.accepts(&w[..i]) && g.accepts(&w[i..]));
            prop_assert_eq!(concat.contains(&w), split);
        }
        let all = Fsa::union_all(&[&f, &g, &f.complement()], 2).unwrap();
        prop_assert!(all.equivalent(&Fsa::universal(2)).unwrap());
    }

    #[test]
    fn star_matches_factorization(f in arb_fsa(2)) {
        let star = f.star();
        let words = words_upto(2, 4);
        // w ∈ L* iff w splits into factors from L; nonempty factors suffice
        let mut in_star: BTreeSet<Vec<usize>> = BTreeSet::new();
        for w in &words {
            let member = w.is_empty()
                || (1..=w.len()).any(|i| f.accepts(&w[..i]) && in_star.contains(&w[i..]));
            if member {
                in_star.insert(w.clone());
            }
            prop_assert_eq!(star.accepts(w), member, "word {:?}", w);
        }
    }

    #[test]
    fn minimize_is_minimal_and_equivalent(f in arb_fsa(3)) {
        let m = f.minimize();
        prop_assert!(m.equivalent(&f).unwrap());
        prop_assert_eq!(m.num_states(), minimal_state_count(&f));
        prop_assert_eq!(m.minimize(), m);
    }

    #[test]
    fn enumerate_agrees_with_membership(f in arb_fsa(3)) {
        let listed = f.enumerate(3);
        let expected: Vec<Vec<usize>> = words_upto(3, 3).into_iter().filter(|w| f.accepts(w)).collect();
        // words_upto already yields length-lex order
        prop_assert_eq!(listed, expected);
    }

    #[test]
    fn quotient_matches_definition(f in arb_fsa(3), w in prop::collection::vec(0usize..3, 0..3)) {
        let q = f.quotient(&w);
        for x in words_upto(3, 4) {
            let xw: Vec<usize> = x.iter().chain(&w).copied().collect();
            prop_assert_eq!(q.accepts(&x), f.accepts(&xw));
        }
        let with_w = f.concat(&Fsa::word(3, &w)).unwrap();
        prop_assert!(f.is_subset_of(&with_w.quotient(&w)).unwrap());
    }

    #[test]
    fn hom_preimage_matches_definition(
        f in arb_fsa(2),
        images in prop::collection::vec(prop::collection::vec(0usize..2, 0..3), 3),
    ) {
        let pre = f.hom_preimage(&images).unwrap();
        for w in words_upto(3, 4) {
            let image: Vec<usize> = w.iter().flat_map(|&x| images[x].iter().copied()).collect();
            prop_assert_eq!(pre.accepts(&w), f.accepts(&image));
        }
    }

    #[test]
    fn product_membership_is_componentwise(f in arb_fsa(2), g in arb_fsa(2)) {
        let p = SyncAcceptor::product(&[&f, &g]).unwrap();
        let words = words_upto(2, 4);
        for u in &words {
            for v in &words {
                prop_assert_eq!(p.accepts(&[u, v]), f.accepts(u) && g.accepts(v));
            }
        }
    }

    #[test]
    fn proj1_of_product_is_first_factor(f in arb_fsa(2), g in arb_fsa(2), h in arb_fsa(2)) {
        prop_assume!(!g.is_empty() && !h.is_empty());
        let p = SyncAcceptor::product(&[&f, &g, &h]).unwrap();
        prop_assert!(p.proj1().equivalent(&f).unwrap());
    }

    #[test]
    fn proj1_of_finite_relation(pairs in prop::collection::vec(
        (prop::collection::vec(0usize..2, 0..4), prop::collection::vec(0usize..2, 0..4)), 0..6)
    ) {
        let alphabet = PaddedAlphabet::new(2, 2).unwrap();
        let padded: Vec<Vec<usize>> = pairs.iter().map(|(u, v)| pad(&alphabet, &[u, v])).collect();
        let refs: Vec<&[usize]> = padded.iter().map(|w| w.as_slice()).collect();
        let s = SyncAcceptor::new(alphabet, Fsa::from_words(alphabet.len(), &refs)).unwrap();
        let expected: BTreeSet<Vec<usize>> = pairs.iter().map(|(u, _)| u.clone()).collect();
        prop_assert_eq!(lang(&s.proj1(), 4), expected);
        let seconds: BTreeSet<Vec<usize>> = pairs.iter().map(|(_, v)| v.clone()).collect();
        prop_assert_eq!(lang(&s.project(1).unwrap(), 4), seconds);
    }
}

#[test]
fn product_membership_exhaustive_arity_three() {
    let a_star = Fsa::symbols(2, &[0]).star();
    let ends_b = Fsa::universal(2).concat(&Fsa::word(2, &[1])).unwrap();
    let even = Fsa::from_parts(2, 2, 0, &[0], &[(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)]).unwrap();
    let p = SyncAcceptor::product(&[&a_star, &ends_b, &even]).unwrap();
    let words = words_upto(2, 3);
    for u in &words {
        for v in &words {
            for w in &words {
                let expected = a_star.accepts(u) && ends_b.accepts(v) && even.accepts(w);
                assert_eq!(p.accepts(&[u, v, w]), expected, "{u:?} {v:?} {w:?}");
            }
        }
    }
}

#[test]
fn well_formed_padded_words() {
    let alphabet = PaddedAlphabet::new(2, 2).unwrap();
    assert_eq!(alphabet.len(), 8);
    let wf = alphabet.well_formed();
    for w in words_upto(alphabet.len(), 3) {
        let cols: Vec<Vec<Option<usize>>> = w.iter().map(|&s| alphabet.decode(s)).collect();
        let ok = (0..2).all(|i| {
            let first_pad = cols.iter().position(|c| c[i].is_none()).unwrap_or(cols.len());
            cols[first_pad..].iter().all(|c| c[i].is_none())
        });
        assert_eq!(wf.accepts(&w), ok, "{cols:?}");
    }
}
