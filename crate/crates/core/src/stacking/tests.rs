use super::*;
use crate::instances::{free, stallings_structure};

fn w(s: &StackingStructure, text: &str) -> Word {
    s.alphabet().parse(text).unwrap()
}

fn l(s: &StackingStructure, name: &str) -> Letter {
    s.alphabet().letter(name).unwrap()
}

#[test]
fn tree_edges_in_stallings() {
    let s = stallings_structure();
    assert!(s.is_tree_edge(&w(&s, "a"), l(&s, "b")).unwrap());
    assert!(s.is_tree_edge(&w(&s, "a"), l(&s, "a^-1")).unwrap());
    assert!(!s.is_tree_edge(&w(&s, "c"), l(&s, "a")).unwrap());
    assert!(s.is_tree_edge(&w(&s, "c a"), l(&s, "b")).is_err());
}

#[test]
fn stack_examples() {
    let s = stallings_structure();
    assert_eq!(s.stack(&w(&s, "c"), l(&s, "a")).unwrap(), w(&s, "c^-1 a c"));
    assert_eq!(s.stack(&w(&s, "s"), l(&s, "b")).unwrap(), w(&s, "s^-1 b a^-1 s a"));
    assert_eq!(s.stack(&w(&s, "a"), l(&s, "b")).unwrap(), w(&s, "b"));
}

#[test]
fn normalize_examples() {
    let s = stallings_structure();
    assert_eq!(s.normalize_step(&w(&s, "c"), l(&s, "a")).unwrap(), w(&s, "a c"));
    assert_eq!(s.normalize_step(&w(&s, "a"), l(&s, "a^-1")).unwrap(), Word::empty());
    assert_eq!(s.normalize_step(&w(&s, "s"), l(&s, "c")).unwrap(), w(&s, "a^-1 c s a"));
    assert_eq!(s.normalize(&Word::empty()).unwrap(), Word::empty());
    assert_eq!(s.normalize(&w(&s, "s a b")).unwrap(), w(&s, "a b a^-1 a^-1 s a a"));
    assert_eq!(s.normalize(&w(&s, "b a")).unwrap(), w(&s, "b a"));
}

#[test]
fn ball_examples() {
    let f1 = free(1).unwrap();
    assert_eq!(f1.ball(0).unwrap().len(), 1);
    let b2: Vec<Word> = f1.ball(2).unwrap().into_iter().collect();
    let expected: Vec<Word> = ["", "a", "a^-1", "a a", "a^-1 a^-1"].iter().map(|t| w(&f1, t)).collect();
    assert_eq!(b2, expected);
    assert_eq!(stallings_structure().ball(1).unwrap().len(), 11);
}

#[test]
fn graph_automaton_membership() {
    let s = stallings_structure();
    let g = s.graph_automaton().unwrap();
    let idx = |t: &str| -> alloc::vec::Vec<usize> { w(&s, t).iter().map(|x| x.index()).collect() };
    assert!(g.accepts(&[&idx("c"), &idx("a"), &idx("c^-1 a c")]));
    assert!(!g.accepts(&[&idx("c a"), &idx("b"), &idx("b")]));
    assert!(g.proj1().equivalent(s.normal_forms()).unwrap());
}

#[test]
fn budget_exhaustion_is_reported() {
    let f = free(1).unwrap();
    // a map that sends a non-tree edge back to itself never terminates
    let looping: StackFn = Arc::new(|_y: &Word, a: Letter| Some(Word(alloc::vec![a, a, Letter(a.0 ^ 1)])));
    let odd = StackingStructure::opaque("loop", f.alphabet().clone(), Fsa::epsilon(2), looping, 3).unwrap();
    assert!(matches!(odd.normalize(&w(&f, "a")), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn verify_free_group_passes() {
    let report = free(2).unwrap().verify(3);
    assert!(report.passed(), "{report}");
    assert_eq!(report.max_flow_length, 1);
}

#[test]
fn negative_controls_fail_with_witnesses() {
    let s = stallings_structure();
    let lowered = s.clone().with_bound(4).verify(2);
    let b = lowered.check(Check::Boundedness);
    assert!(!b.passed && !b.witnesses.is_empty());

    let mut rules = s.rules().unwrap().to_vec();
    let i = rules.iter().position(|r| r.output.len() == 3).unwrap();
    let x = rules[i].output[1];
    rules[i].output = Word(alloc::vec![rules[i].output[0], s.alphabet().inverse(x), rules[i].output[2]]);
    let corrupted = s.with_rules(rules).unwrap().verify(2);
    let f1 = corrupted.check(Check::Endpoints);
    assert!(!f1.passed && !f1.witnesses.is_empty(), "{corrupted}");
}

#[test]
fn prefix_rules_have_bounded_shape() {
    let s = stallings_structure();
    for r in s.to_prefix_rules(2).unwrap() {
        assert!(r.width() <= s.bound() + 1);
        assert_eq!(s.normalize(&r.lhs()).unwrap(), s.normalize(&r.rhs()).unwrap());
    }
}

#[test]
fn verify_stallings_small_ball() {
    let report = stallings_structure().verify(2);
    assert!(report.passed(), "{report}");
    assert_eq!(report.max_flow_length, 5);
}
