use super::*;
use alloc::vec;

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

/// a* over {a, b, c}
fn a_star() -> Fsa {
    Fsa::symbols(3, &[A]).star()
}

#[test]
fn union_intersect_complement() {
    let f = Fsa::word(3, &[A]);
    let g = Fsa::word(3, &[B]);
    let u = f.union(&g).unwrap();
    assert_eq!(u.enumerate(3), vec![vec![A], vec![B]]);
    let l = a_star();
    assert!(l.intersect(&l.complement()).unwrap().is_empty());
    assert!(Fsa::universal(3).intersect(&l).unwrap().equivalent(&l).unwrap());
}

#[test]
fn concat_star() {
    let abc = Fsa::word(3, &[A, B]).concat(&Fsa::word(3, &[C])).unwrap().star();
    assert!(abc.accepts(&[]));
    assert!(abc.accepts(&[A, B, C, A, B, C]));
    assert!(!abc.accepts(&[A, B, C, A, B]));
}

#[test]
fn alphabet_mismatch_is_an_error() {
    assert_eq!(Fsa::universal(2).union(&Fsa::universal(3)), Err(Error::AlphabetMismatch { expected: 2, found: 3 }));
}

#[test]
fn hom_preimage_examples() {
    // over C = {a, >}: a*>*; h(a) = a, h(b) = >
    let target = Fsa::symbols(2, &[0]).star().concat(&Fsa::symbols(2, &[1]).star()).unwrap();
    let pre = target.hom_preimage(&[vec![0], vec![1]]).unwrap();
    let expected = Fsa::symbols(2, &[0]).star().concat(&Fsa::symbols(2, &[1]).star()).unwrap();
    assert!(pre.equivalent(&expected).unwrap());
    // everything erased: ε ∈ L gives A*
    let erase = Fsa::epsilon(2).hom_preimage(&[vec![], vec![], vec![]]).unwrap();
    assert!(erase.equivalent(&Fsa::universal(3)).unwrap());
    let l = a_star();
    let id = l.hom_preimage(&[vec![A], vec![B], vec![C]]).unwrap();
    assert!(id.equivalent(&l).unwrap());
}

#[test]
fn quotient_examples() {
    let ab = Fsa::word(3, &[A, B]);
    assert!(ab.quotient(&[B]).equivalent(&Fsa::word(3, &[A])).unwrap());
    assert!(ab.quotient(&[]).equivalent(&ab).unwrap());
    let a_star_b = a_star().concat(&Fsa::word(3, &[B])).unwrap();
    assert!(a_star_b.quotient(&[B]).equivalent(&a_star()).unwrap());
}

#[test]
fn pad_examples() {
    let p = PaddedAlphabet::new(3, 2).unwrap();
    assert_eq!(p.len(), 15);
    let s = |x: Option<usize>, y: Option<usize>| p.encode(&[x, y]).unwrap();
    assert_eq!(pad(&p, &[&[A, B], &[C]]), vec![s(Some(A), Some(C)), s(Some(B), None)]);
    assert_eq!(pad(&p, &[&[A], &[A]]), vec![s(Some(A), Some(A))]);
    assert_eq!(pad(&p, &[&[], &[A, B]]), vec![s(None, Some(A)), s(None, Some(B))]);
    assert_eq!(pad(&p, &[&[], &[]]), Vec::<usize>::new());
    assert_eq!(p.encode(&[None, None]), None);
    for sym in 0..p.len() {
        assert_eq!(p.encode(&p.decode(sym)), Some(sym));
    }
}

#[test]
fn product_examples() {
    let b_star = Fsa::symbols(3, &[B]).star();
    let prod = SyncAcceptor::product(&[&a_star(), &b_star]).unwrap();
    assert!(prod.accepts(&[&[A, A], &[B]]));
    assert!(!prod.accepts(&[&[A, B], &[B]]));
    let empty = SyncAcceptor::product(&[&Fsa::empty(3), &a_star()]).unwrap();
    assert!(empty.fsa().is_empty());
    let eps_both = SyncAcceptor::product(&[&a_star(), &b_star]).unwrap();
    assert!(eps_both.accepts(&[&[], &[]]));
    let no_eps = SyncAcceptor::product(&[&Fsa::word(3, &[A]), &b_star]).unwrap();
    assert!(!no_eps.accepts(&[&[], &[]]));
}

#[test]
fn proj1_examples() {
    let l1 = Fsa::word(3, &[A]).concat(&Fsa::symbols(3, &[B]).star()).unwrap();
    let l2 = Fsa::symbols(3, &[C]).star();
    let prod = SyncAcceptor::product(&[&l1, &l2]).unwrap();
    assert!(prod.proj1().equivalent(&l1).unwrap());

    let p = PaddedAlphabet::new(3, 2).unwrap();
    let w = pad(&p, &[&[A, B], &[C]]);
    let single = SyncAcceptor::new(p, Fsa::word(p.len(), &w)).unwrap();
    assert!(single.proj1().equivalent(&Fsa::word(3, &[A, B])).unwrap());

    let w = pad(&p, &[&[], &[A]]);
    let single = SyncAcceptor::new(p, Fsa::word(p.len(), &w)).unwrap();
    assert!(single.proj1().equivalent(&Fsa::epsilon(3)).unwrap());
}

#[test]
fn sync_acceptor_discards_malformed_words() {
    let p = PaddedAlphabet::new(2, 2).unwrap();
    let bad = [p.encode(&[None, Some(0)]).unwrap(), p.encode(&[Some(0), Some(0)]).unwrap()];
    let s = SyncAcceptor::new(p, Fsa::word(p.len(), &bad)).unwrap();
    assert!(s.fsa().is_empty());
}

#[test]
fn equivalence_examples() {
    let l = a_star();
    assert!(l.equivalent(&l).unwrap());
    let with_b = l.union(&Fsa::word(3, &[B])).unwrap();
    assert!(!l.equivalent(&with_b).unwrap());
    assert_eq!(l.distinguishing_word(&with_b).unwrap(), Some(vec![B]));
    assert!(l.complement().complement().equivalent(&l).unwrap());
}

#[test]
fn enumerate_examples() {
    assert_eq!(a_star().enumerate(2), vec![vec![], vec![A], vec![A, A]]);
    assert!(Fsa::empty(3).enumerate(5).is_empty());
    assert!(Fsa::word(3, &[A, B]).enumerate(1).is_empty());
    let two = Fsa::symbols(2, &[0, 1]).star();
    assert_eq!(two.enumerate(2), vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
}

#[test]
fn from_parts_fills_sink_and_rejects_nondeterminism() {
    let f = Fsa::from_parts(2, 2, 0, &[1], &[(0, 0, 1), (1, 1, 1)]).unwrap();
    assert!(f.accepts(&[0, 1, 1]));
    assert!(!f.accepts(&[1]));
    assert!(Fsa::from_parts(2, 2, 0, &[1], &[(0, 0, 1), (0, 0, 0)]).is_err());
    assert!(Fsa::from_parts(2, 2, 3, &[1], &[]).is_err());
}

#[test]
fn embed_and_prefix_closure() {
    let l = a_star();
    let e = l.embed(5, &[0, 3, 4]).unwrap();
    assert!(e.accepts(&[0, 0]));
    assert!(!e.accepts(&[1]));
    assert!(l.is_prefix_closed());
    assert!(!Fsa::word(3, &[A, B]).is_prefix_closed());
}
