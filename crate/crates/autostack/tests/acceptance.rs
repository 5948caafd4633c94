//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! report is always printed; exits non-zero if any criterion fails.

use std::collections::{BTreeSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use autostack::cli::{all_words, random_words};
use autostack_core::constructions::check_psi_monotone;
use autostack_core::fsa::pad;
use autostack_core::instances::{
    builtin, f2xf2, heisenberg, index2z, index2z_value, stallings_nf_automaton, stallings_rewrite, stallings_structure,
    z2, z_free_z, StallingsPsi,
};
use autostack_core::stacking::Check;
use autostack_core::{Fsa, Letter, PaddedAlphabet, StackingStructure, SyncAcceptor, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criterion 1 wall-clock limit.
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_WORDS: usize = 10_000;
const RANDOM_MAX_LEN: usize = 12;
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn parse(s: &StackingStructure, text: &str) -> Word {
    s.alphabet().parse(text).expect("fixture words use known letters")
}

fn show(s: &StackingStructure, w: &[Letter]) -> String {
    s.alphabet().display(w)
}

fn max_flow_length(s: &StackingStructure, radius: usize) -> Result<usize, String> {
    let mut longest = 0;
    for y in s.ball(radius).map_err(err)? {
        for a in s.alphabet().letters() {
            longest = longest.max(s.flow_path(&y, a).map_err(err)?.len());
        }
    }
    Ok(longest)
}

fn oracle_equivalence() -> Outcome {
    let s = stallings_structure();
    let start = Instant::now();
    let exhaustive = all_words(&s, 5);
    let random = random_words(&s, SEED, RANDOM_WORDS, RANDOM_MAX_LEN);
    // 111,110 nonempty words plus ε
    ensure(exhaustive.len() == 111_111, || format!("{} words of length <= 5", exhaustive.len()))?;
    let mut mismatches = 0;
    let mut first = None;
    for w in exhaustive.iter().chain(&random) {
        let nf = s.normalize(w).map_err(err)?;
        if nf != stallings_rewrite(w) {
            mismatches += 1;
            first.get_or_insert_with(|| show(&s, w));
        }
    }
    let elapsed = start.elapsed();
    ensure(mismatches == 0, || format!("{mismatches} mismatches, first on {}", first.unwrap_or_default()))?;
    ensure(elapsed < ORACLE_TIME_LIMIT, || format!("took {elapsed:.1?}, limit {ORACLE_TIME_LIMIT:?}"))?;
    Ok(format!("{} exhaustive + {} random words, 0 mismatches in {elapsed:.1?}", exhaustive.len(), random.len()))
}

fn bound_constants() -> Outcome {
    let s = stallings_structure();
    let observed = max_flow_length(&s, 3)?;
    ensure(s.bound() == 5 && observed == 5, || format!("stallings declared {} observed {observed}", s.bound()))?;

    let p = z2();
    let observed_gp = max_flow_length(&p.structure, 3)?;
    let vertex_bound = builtin("z").map_err(err)?.bound();
    let declared_gp = 3.max(vertex_bound).max(vertex_bound);
    ensure(p.structure.bound() == declared_gp && observed_gp <= declared_gp, || {
        format!("graph product declared {} observed {observed_gp}", p.structure.bound())
    })?;

    // the conjugation table has entries of length at most 2 and there are no
    // correction words
    let h = heisenberg();
    let (conj_max, corr_max) = (2, 0);
    let declared_h = h.k.bound().max(2 + conj_max).max(h.q.bound() + corr_max);
    let observed_h = max_flow_length(&h.structure, 3)?;
    ensure(h.structure.bound() == declared_h && observed_h <= declared_h, || {
        format!("heisenberg declared {} (formula {declared_h}) observed {observed_h}", h.structure.bound())
    })?;
    Ok(format!("stallings k = 5 attained; graph product {observed_gp} <= 3; heisenberg {observed_h} <= {declared_h}"))
}

fn shipped_instances_verify() -> Outcome {
    let names = ["free1", "free2", "z2", "f2xf2", "heisenberg", "index2z", "stallings"];
    for name in names {
        let report = builtin(name).map_err(err)?.verify(3);
        ensure(report.passed(), || format!("{name} failed:\n{report}"))?;
    }

    let s = stallings_structure();
    let lowered = s.clone().with_bound(4).verify(3);
    let b = lowered.check(Check::Boundedness);
    ensure(!b.passed && !b.witnesses.is_empty(), || "lowered bound was not caught".into())?;

    let mut rules = s.rules().expect("rule-based").to_vec();
    let i = rules.iter().position(|r| r.output.len() == 3).expect("a conjugation rule");
    let out = &rules[i].output;
    rules[i].output = [out[0], s.alphabet().inverse(out[1]), out[2]].into_iter().collect();
    let corrupted = s.with_rules(rules).map_err(err)?.verify(3);
    let f1 = corrupted.check(Check::Endpoints);
    ensure(!f1.passed && !f1.witnesses.is_empty(), || "corrupted rule was not caught".into())?;
    Ok(format!(
        "{} instances pass; negative controls fail with {} and {} witnesses",
        names.len(),
        b.witnesses.len(),
        f1.witnesses.len()
    ))
}

fn psi_monotonicity() -> Outcome {
    let mut summary = Vec::new();
    let stallings = check_psi_monotone(&StallingsPsi::new(), 4).map_err(err)?;
    let reports = [
        ("stallings", stallings),
        ("z2", check_psi_monotone(&z2(), 3).map_err(err)?),
        ("f2xf2", check_psi_monotone(&f2xf2(), 3).map_err(err)?),
        ("z_free_z", check_psi_monotone(&z_free_z(), 3).map_err(err)?),
        ("heisenberg", check_psi_monotone(&heisenberg(), 3).map_err(err)?),
        ("index2z", check_psi_monotone(&index2z(), 3).map_err(err)?),
    ];
    for (name, r) in &reports {
        ensure(r.violations.is_empty() && r.indeterminate == 0, || {
            format!("{name}: {} violations, {} indeterminate", r.violations.len(), r.indeterminate)
        })?;
        summary.push(format!("{name} {}", r.dependencies));
    }
    Ok(format!("0 violations; dependencies checked: {}", summary.join(", ")))
}

fn automata_identity() -> Outcome {
    let s = stallings_structure();
    let n = stallings_nf_automaton();
    let proj = s.graph_automaton().map_err(err)?.proj1();
    ensure(n.equivalent(&proj).map_err(err)?, || "nf automaton differs from proj1 of the graph automaton".into())?;
    let words = all_words(&s, 6);
    let mut irreducible = 0;
    for w in &words {
        let is_irreducible = stallings_rewrite(w) == *w;
        irreducible += usize::from(is_irreducible);
        ensure(n.accepts_letters(w) == is_irreducible, || format!("disagreement on {}", show(&s, w)))?;
    }
    Ok(format!("exact equivalence; {irreducible} irreducible among {} words of length <= 6", words.len()))
}

/// Ball sizes of the Heisenberg group from unitriangular integer matrices.
fn matrix_ball_sizes(max_radius: usize) -> Vec<usize> {
    type M = (i64, i64, i64);
    let mul = |x: M, y: M| (x.0 + y.0, x.1 + y.1, x.2 + y.2 + x.0 * y.1);
    let gens: [M; 6] = [(0, 0, -1), (0, 0, 1), (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)];
    let mut seen = BTreeSet::from([(0, 0, 0)]);
    let mut queue = VecDeque::from([((0, 0, 0), 0)]);
    let mut at = vec![0usize; max_radius + 1];
    while let Some((m, d)) = queue.pop_front() {
        at[d] += 1;
        if d == max_radius {
            continue;
        }
        for g in gens {
            let next = mul(m, g);
            if seen.insert(next) {
                queue.push_back((next, d + 1));
            }
        }
    }
    at.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

fn construction_sanity() -> Outcome {
    let zz = z2().structure;
    let got = zz.alphabet().format(&zz.normalize(&parse(&zz, "b a")).map_err(err)?);
    ensure(got == "a b", || format!("Z x Z normalize(b a) = {got:?}"))?;
    let zfz = z_free_z().structure;
    let got = zfz.alphabet().format(&zfz.normalize(&parse(&zfz, "b a")).map_err(err)?);
    ensure(got == "b a", || format!("Z * Z normalize(b a) = {got:?}"))?;

    let h = heisenberg().structure;
    let expected = matrix_ball_sizes(4);
    for (r, &want) in expected.iter().enumerate().skip(1) {
        let size = h.ball(r).map_err(err)?.len();
        ensure(size == want, || format!("heisenberg ball({r}) = {size}, matrices give {want}"))?;
    }

    let f = index2z().structure;
    let a = f.alphabet();
    let ball = f.ball(4).map_err(err)?;
    let values: BTreeSet<i64> = ball.iter().map(|y| index2z_value(a, y)).collect();
    ensure(values.len() == ball.len() && values == (-8..=8).collect(), || "index-2 ball(4) values".into())?;
    for y in &ball {
        let body = if y.last().is_some_and(|&x| a.name(x) == "g") { &y[..y.len() - 1] } else { &y[..] };
        let h_power = body.iter().all(|&x| x == body[0]) && body.first().is_none_or(|&x| a.name(x).starts_with('h'));
        ensure(h_power, || format!("{} is not of the form h^i or h^i g", a.display(y)))?;
    }
    Ok(format!(
        "Z x Z and Z * Z words agree; heisenberg balls {:?}; index-2 ball(4) = {} forms",
        &expected[1..],
        ball.len()
    ))
}

fn prefix_rules() -> Outcome {
    let s = stallings_structure();
    let a = s.alphabet();
    let rules = s.to_prefix_rules(3).map_err(err)?;
    let in_z = |x: Letter| !a.name(x).starts_with('s');
    let named = |x: Letter, set: &[&str]| set.iter().any(|n| a.name(x).trim_end_matches("^-1") == *n);
    let mut commutations = 0;
    for r in &rules {
        ensure(r.width() <= 6, || format!("rule {} -> {} too wide", show(&s, &r.lhs()), show(&s, &r.rhs())))?;
        let (l, rr) = (s.normalize(&r.lhs()).map_err(err)?, s.normalize(&r.rhs()).map_err(err)?);
        ensure(l == rr, || format!("sides of {} differ", show(&s, &r.lhs())))?;
        let y = &r.prefix;
        let x = r.left[0];
        let Some(&last) = y.last() else { continue };
        let commutes = (y.iter().all(|&c| in_z(c)) && named(last, &["c", "d"]) && named(x, &["a", "b"]))
            || (!y.iter().all(|&c| in_z(c)) && named(last, &["a"]) && named(x, &["c", "d"]));
        if commutes {
            // z y x -> z x y
            let mut zxy = Word::from_letters(&y[..y.len() - 1]);
            zxy.push(x);
            zxy.push(last);
            let expected = a.free_reduce(&zxy);
            let got = r.reduced_rhs(a);
            ensure(got[..] == expected[..], || {
                format!("{} -> {}, expected {}", show(&s, &r.lhs()), show(&s, &got), show(&s, &expected))
            })?;
            commutations += 1;
        }
    }
    ensure(commutations > 0, || "no commutation rules found".into())?;
    Ok(format!("{} rules of width <= 6 with matching sides, {commutations} of shape zyx -> zxy", rules.len()))
}

fn random_dfa(rng: &mut ChaCha8Rng, k: usize) -> Fsa {
    let n = rng.random_range(1..=4);
    let accepting: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    let mut transitions = Vec::new();
    for p in 0..n {
        for s in 0..k {
            if rng.random_bool(0.85) {
                transitions.push((p, s, rng.random_range(0..n)));
            }
        }
    }
    Fsa::from_parts(k, n, 0, &accepting, &transitions).expect("well-formed random acceptor")
}

fn words(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..n {
        layer = layer.iter().flat_map(|w: &Vec<usize>| (0..k).map(move |x| [w.as_slice(), &[x]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn lang(f: &Fsa, n: usize) -> BTreeSet<Vec<usize>> {
    words(f.num_symbols(), n).into_iter().filter(|w| f.accepts(w)).collect()
}

fn automata_laws() -> Outcome {
    const LEN: usize = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    for k in [2, 3] {
        let all = words(k, LEN);
        for _ in 0..40 {
            let (l, m, n) = (random_dfa(&mut rng, k), random_dfa(&mut rng, k), random_dfa(&mut rng, k));
            let eq = |x: &Fsa, y: &Fsa| x.equivalent(y).expect("same alphabet");
            let union = |x: &Fsa, y: &Fsa| x.union(y).expect("same alphabet");
            let meet = |x: &Fsa, y: &Fsa| x.intersect(y).expect("same alphabet");
            ensure(eq(&meet(&l, &m).complement(), &union(&l.complement(), &m.complement())), || "De Morgan".into())?;
            ensure(eq(&meet(&l, &union(&m, &n)), &union(&meet(&l, &m), &meet(&l, &n))), || "distributivity".into())?;
            ensure(eq(&meet(&l, &Fsa::universal(k)), &l), || "L ∩ A* = L".into())?;

            // quotient: L/w = {x | xw ∈ L}
            for w in words(k, 2) {
                let q = l.quotient(&w);
                for x in &all {
                    let xw = [x.as_slice(), &w].concat();
                    ensure(q.accepts(x) == l.accepts(&xw), || format!("quotient by {w:?} at {x:?}"))?;
                }
            }

            // projection: proj_i of a product is the i-th factor when the others are nonempty
            let parts = [&l, &m];
            let prod = SyncAcceptor::product(&parts).map_err(err)?;
            if !m.is_empty() {
                ensure(eq(&prod.proj1(), &l), || "proj1 of product".into())?;
            }
            if !l.is_empty() {
                ensure(eq(&prod.project(1).map_err(err)?, &m), || "proj2 of product".into())?;
            }
            cases += 1;
        }
    }

    // product membership over a 2-letter base, exhaustive for pairs and triples
    let all = words(2, LEN);
    for _ in 0..12 {
        let fs: Vec<Fsa> = (0..3).map(|_| random_dfa(&mut rng, 2)).collect();
        let p2 = SyncAcceptor::product(&[&fs[0], &fs[1]]).map_err(err)?;
        for u in &all {
            for v in &all {
                let expected = fs[0].accepts(u) && fs[1].accepts(v);
                ensure(p2.accepts(&[u, v]) == expected, || format!("pair product at ({u:?}, {v:?})"))?;
            }
        }
        let p3 = SyncAcceptor::product(&[&fs[0], &fs[1], &fs[2]]).map_err(err)?;
        let short = words(2, 3);
        for u in &short {
            for v in &short {
                for w in &short {
                    let expected = fs[0].accepts(u) && fs[1].accepts(v) && fs[2].accepts(w);
                    ensure(p3.accepts(&[u, v, w]) == expected, || "triple product".into())?;
                }
            }
        }
        cases += 1;
    }

    // projection of a finite relation against its enumeration
    for _ in 0..12 {
        let alphabet = PaddedAlphabet::new(3, 2).map_err(err)?;
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = (0..6)
            .map(|_| {
                let word = |rng: &mut ChaCha8Rng| {
                    let n = rng.random_range(0..=LEN);
                    (0..n).map(|_| rng.random_range(0..3)).collect::<Vec<usize>>()
                };
                (word(&mut rng), word(&mut rng))
            })
            .collect();
        let padded: Vec<Vec<usize>> = pairs.iter().map(|(u, v)| pad(&alphabet, &[u, v])).collect();
        let refs: Vec<&[usize]> = padded.iter().map(Vec::as_slice).collect();
        let rel = SyncAcceptor::new(alphabet, Fsa::from_words(alphabet.len(), &refs)).map_err(err)?;
        for (i, coord) in [0, 1].into_iter().enumerate() {
            let expected: BTreeSet<Vec<usize>> =
                pairs.iter().map(|(u, v)| if i == 0 { u.clone() } else { v.clone() }).collect();
            ensure(lang(&rel.project(coord).map_err(err)?, LEN) == expected, || {
                "projection of a finite relation".into()
            })?;
        }
        cases += 1;
    }
    Ok(format!("{cases} seeded cases: boolean laws, quotient, product and projection agree with enumeration"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("stallings oracle equivalence", oracle_equivalence),
        ("bound constants", bound_constants),
        ("verify(·, 3) on shipped instances", shipped_instances_verify),
        ("ψ-monotonicity", psi_monotonicity),
        ("automata-level identity", automata_identity),
        ("construction sanity", construction_sanity),
        ("prefix-rewriting display", prefix_rules),
        ("automata laws", automata_laws),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match check() {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        println!("criterion {} [{status}] {name}: {detail} ({:.1?})", i + 1, start.elapsed());
    }
    if failed == 0 {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria fail", criteria.len());
        ExitCode::FAILURE
    }
}
